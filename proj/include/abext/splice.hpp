#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "abext/fibre_sequence.hpp"
#include "abext/six_term.hpp"

namespace abext {

/// Short exact sequences spliced end to end: each link's base group is the
/// next link's kernel group, literally the same presentation. A chain of
/// degree n presents an n-fold extension of its base by its coefficients.
class ESChain {
public:
  explicit ESChain(std::vector<Ses> links) : links_(std::move(links)) {
    if (links_.empty())
      throw InputError("chain: at least one link is required");
    for (std::size_t i = 0; i + 1 < links_.size(); ++i)
      if (!links_[i].right().same_presentation(links_[i + 1].left()))
        throw InputError("chain: link " + std::to_string(i) +
                         " does not splice onto its successor");
  }

  const std::vector<Ses>& links() const noexcept { return links_; }
  std::size_t degree() const noexcept { return links_.size(); }
  const AbGroup& coeff() const noexcept { return links_.front().left(); }
  const AbGroup& base() const noexcept { return links_.back().right(); }

  ESChain prefix() const {
    if (links_.size() < 2)
      throw InputError("chain: no prefix below degree two");
    return ESChain(std::vector<Ses>(links_.begin(), links_.end() - 1));
  }

private:
  std::vector<Ses> links_;
};

inline bool chain_same(const ESChain& c1, const ESChain& c2) {
  if (c1.degree() != c2.degree()) return false;
  for (std::size_t i = 0; i < c1.degree(); ++i)
    if (!ses_same(c1.links()[i], c2.links()[i])) return false;
  return true;
}

inline ESChain splice(const ESChain& head, const ESChain& tail) {
  std::vector<Ses> links = head.links();
  links.insert(links.end(), tail.links().begin(), tail.links().end());
  return ESChain(std::move(links));
}

inline ESChain splice(const Ses& first, const Ses& second) {
  return ESChain({first, second});
}

/// The zero chain of a window: trivial links threaded through zero groups.
inline ESChain basepoint_chain(std::size_t degree, const AbGroup& base,
                               const AbGroup& coeff) {
  if (degree == 0)
    throw InputError("basepoint_chain: degree must be positive");
  if (degree == 1) return ESChain({trivial_ses(base, coeff)});
  std::vector<Ses> links;
  links.push_back(trivial_ses(AbGroup::zero(), coeff));
  for (std::size_t i = 2; i < degree; ++i)
    links.push_back(trivial_ses(AbGroup::zero(), AbGroup::zero()));
  links.push_back(trivial_ses(base, AbGroup::zero()));
  return ESChain(std::move(links));
}

/// Base change of a chain: pull the last link back.
inline ESChain es_pullback(const Hom& g, const ESChain& c) {
  std::vector<Ses> links = c.links();
  links.back() = pullback(g, links.back()).ses;
  return ESChain(std::move(links));
}

/// Coefficient change of a chain: push the first link out.
inline ESChain es_pushout(const Hom& f, const ESChain& c) {
  std::vector<Ses> links = c.links();
  links.front() = pushout(f, links.front()).ses;
  return ESChain(std::move(links));
}

/// One wrong-way comparison between chains of the same window: a map of the
/// connecting groups at the last splice point, path data moving it out of
/// the last link by pushout, and nested data moving it into the rest of the
/// chain by pullback. Content is verified by check_zig, not on construction,
/// so deliberately broken witnesses can be represented and rejected.
class Zig {
public:
  Zig(ESChain src, ESChain tgt, Hom f, PathData push_path, PathData nested)
      : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(f)),
        push_path_(std::move(push_path)), nested_path_(std::move(nested)) {
    check_shape();
    if (src_.degree() != 2)
      throw InputError("zig: nested path data only fits degree two");
  }

  Zig(ESChain src, ESChain tgt, Hom f, PathData push_path, Zig nested)
      : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(f)),
        push_path_(std::move(push_path)),
        nested_zig_(std::make_shared<Zig>(std::move(nested))) {
    check_shape();
    if (src_.degree() < 3)
      throw InputError("zig: nested zig requires degree three or more");
  }

  const ESChain& src() const noexcept { return src_; }
  const ESChain& tgt() const noexcept { return tgt_; }
  const Hom& f() const noexcept { return f_; }
  const PathData& push_path() const noexcept { return push_path_; }
  std::size_t degree() const noexcept { return src_.degree(); }

  const PathData& nested_path() const {
    if (!nested_path_)
      throw InputError("zig: no nested path data above degree two");
    return *nested_path_;
  }
  const Zig& nested_zig() const {
    if (!nested_zig_)
      throw InputError("zig: no nested zig at degree two");
    return *nested_zig_;
  }

private:
  void check_shape() const {
    if (src_.degree() != tgt_.degree())
      throw InputError("zig: chains have different degrees");
    if (src_.degree() < 2)
      throw InputError("zig: chains must have degree at least two");
    if (!src_.coeff().same_presentation(tgt_.coeff()) ||
        !src_.base().same_presentation(tgt_.base()))
      throw InputError("zig: chains have different windows");
    if (!f_.src().same_presentation(src_.links().back().left()) ||
        !f_.tgt().same_presentation(tgt_.links().back().left()))
      throw InputError("zig: map does not join the connecting groups");
  }

  ESChain src_, tgt_;
  Hom f_;
  PathData push_path_;
  std::optional<PathData> nested_path_;
  std::shared_ptr<const Zig> nested_zig_;
};

/// Recomputes everything a zig claims: the pushed-out last link reaches the
/// target's last link, and the source prefix is the pullback of the target
/// prefix, recursively.
inline bool check_zig(const Zig& z) {
  const Ses& s_last = z.src().links().back();
  const Ses& t_last = z.tgt().links().back();
  if (!ses_same(z.push_path().src(), pushout(z.f(), s_last).ses))
    return false;
  if (!ses_same(z.push_path().tgt(), t_last)) return false;
  if (!z.push_path().valid()) return false;
  if (z.degree() == 2) {
    const PathData& n = z.nested_path();
    if (!ses_same(n.src(), z.src().links().front())) return false;
    if (!ses_same(n.tgt(), pullback(z.f(), z.tgt().links().front()).ses))
      return false;
    return n.valid();
  }
  const Zig& n = z.nested_zig();
  if (!chain_same(n.src(), z.src().prefix())) return false;
  if (!chain_same(n.tgt(), es_pullback(z.f(), z.tgt().prefix())))
    return false;
  return check_zig(n);
}

/// Moving a connecting-group map across a splice point is the canonical
/// zig: both path components are identities by construction.
inline Zig splice_swap(const Hom& f, const Ses& first, const Ses& last) {
  if (!first.right().same_presentation(f.tgt()) ||
      !last.left().same_presentation(f.src()))
    throw InputError("splice_swap: map does not sit between the sequences");
  PullbackResult pb = pullback(f, first);
  PushoutResult po = pushout(f, last);
  return Zig(splice(pb.ses, last), splice(first, po.ses), f,
             PathData::identity(po.ses), PathData::identity(pb.ses));
}

namespace detail {

/// Zig from a chain to the same chain with the last link pulled back along
/// the identity; grounds the recursion of identity_zig.
inline Zig pullback_identity_zig(const ESChain& pre) {
  const Ses& last = pre.links().back();
  Hom f = Hom::identity(last.left());
  PathData push = compose(pullback_id(last).reverse(), pushout_id(last));
  ESChain tgt = es_pullback(Hom::identity(pre.base()), pre);
  if (pre.degree() == 2) {
    PathData nested = pullback_id(pre.links().front()).reverse();
    return Zig(pre, tgt, f, push, nested);
  }
  return Zig(pre, tgt, f, push, pullback_identity_zig(pre.prefix()));
}

}  // namespace detail

/// The identity comparison of a chain with itself.
inline Zig identity_zig(const ESChain& c) {
  const Ses& last = c.links().back();
  Hom f = Hom::identity(last.left());
  PathData push = pushout_id(last);
  if (c.degree() == 2) {
    PathData nested = pullback_id(c.links().front()).reverse();
    return Zig(c, c, f, push, nested);
  }
  return Zig(c, c, f, push, detail::pullback_identity_zig(c.prefix()));
}

struct ZigStep {
  bool forward;  // false walks the zig from target to source
  Zig zig;
};

/// A walk between chains through zigs, each usable in either direction.
class ZigZag {
public:
  ZigZag(ESChain from, ESChain to, std::vector<ZigStep> steps)
      : from_(std::move(from)), to_(std::move(to)),
        steps_(std::move(steps)) {
    if (!from_.coeff().same_presentation(to_.coeff()) ||
        !from_.base().same_presentation(to_.base()))
      throw InputError("zigzag: endpoints have different windows");
  }

  const ESChain& from() const noexcept { return from_; }
  const ESChain& to() const noexcept { return to_; }
  const std::vector<ZigStep>& steps() const noexcept { return steps_; }

private:
  ESChain from_, to_;
  std::vector<ZigStep> steps_;
};

inline bool check_zigzag(const ZigZag& zz) {
  const ESChain* cur = &zz.from();
  for (const ZigStep& step : zz.steps()) {
    const ESChain& in = step.forward ? step.zig.src() : step.zig.tgt();
    const ESChain& out = step.forward ? step.zig.tgt() : step.zig.src();
    if (!chain_same(*cur, in)) return false;
    if (!check_zig(step.zig)) return false;
    cur = &out;
  }
  return chain_same(*cur, zz.to());
}

/// Every degree-two chain walks to the basepoint of its window: resolve the
/// base by a free cover, swap the induced kernel map across the splice
/// point, then collapse the free-kernel side, whose links both split.
inline ZigZag trivialize_splice(const Ses& first, const Ses& last) {
  if (!first.right().same_presentation(last.left()))
    throw InputError("trivialize_splice: sequences do not splice");
  const AbGroup& a = first.left();
  const AbGroup& b = last.right();
  const AbGroup& c = last.left();

  FreePresentation fp = free_presentation(b);
  Ses fc(fp.kernel_incl, fp.proj);
  const std::size_t n = fp.free_cover.gens();
  const std::size_t k = fp.kernel.gens();

  auto lam = solve_mat_congruences(
      last.middle().gens(), n,
      {{last.projection().mat(), IntMatrix::identity(n), fp.proj.mat(),
        b.rels()}});
  if (!lam)
    throw Error("trivialize_splice: free cover failed to lift through a "
                "surjection");
  IntMatrix lifted = *lam * fp.kernel_incl.mat();
  auto kt = solve_mat_congruences(
      c.gens(), k,
      {{last.inclusion().mat(), IntMatrix::identity(k), lifted,
        last.middle().rels()}});
  if (!kt)
    throw Error("trivialize_splice: lifted kernel misses the inclusion "
                "image");
  Hom kappa(fp.kernel, c, *kt);

  PullbackResult pf = pullback(kappa, first);
  ESChain orig = splice(first, last);
  ESChain middle = splice(pf.ses, fc);
  SesMorphism cover(fc, last, kappa,
                    Hom(fp.free_cover, last.middle(), *lam),
                    Hom::identity(b));
  Zig to_orig(middle, orig, kappa, pushout_char(cover),
              PathData::identity(pf.ses));

  ESChain bp = basepoint_chain(2, b, a);
  Hom to_zero(fp.kernel, AbGroup::zero(), IntMatrix(0, k));
  auto push2 = find_path_data(pushout(to_zero, fc).ses, bp.links().back());
  if (!push2)
    throw Error("trivialize_splice: collapsed cover is not the zero "
                "extension");
  PathData split = split_over_free(pf.ses);
  auto tau = find_path_data(trivial_ses(fp.kernel, a),
                            pullback(to_zero, bp.links().front()).ses);
  if (!tau)
    throw Error("trivialize_splice: split extensions failed to compare");
  Zig to_base(middle, bp, to_zero, std::move(*push2),
              compose(std::move(*tau), split));

  return ZigZag(orig, bp,
                {{false, std::move(to_orig)}, {true, std::move(to_base)}});
}

struct LesReport {
  SixTermReport six_term;
  bool trivializations_walk = false;
  bool swaps_check = false;

  bool all() const noexcept {
    return six_term.all() && trivializations_walk && swaps_check;
  }
};

/// Degree-one exactness plus the degree-two tail: the six-term report of
/// the window, sampled trivialisations of spliced chains walking to the
/// basepoint, and sampled swap zigs checking out.
inline LesReport les_check(const Ses& s, const AbGroup& coeff,
                           unsigned seed = 1, std::size_t samples = 3) {
  std::mt19937_64 rng(seed);
  auto rand_coords = [&rng](std::size_t m) {
    IntVec v(m);
    for (auto& x : v) x = Integer(static_cast<long>(rng() % 11)) - 5;
    return v;
  };
  auto rand_ext = [&rand_coords](const AbGroup& base, const AbGroup& cf) {
    ExtGroup xg(base, cf);
    return xg.extension_from_class(
        xg.class_from_coords(rand_coords(xg.group().gens())));
  };

  LesReport r{six_term(s, coeff).report(), true, true};
  std::vector<AbGroup> pool = {s.left(), s.middle(), s.right(), coeff};
  for (std::size_t it = 0; it < samples; ++it) {
    const AbGroup& mid = pool[rng() % pool.size()];
    const AbGroup& base = pool[rng() % pool.size()];
    Ses first = rand_ext(mid, coeff);
    Ses last = rand_ext(base, mid);
    ZigZag zz = trivialize_splice(first, last);
    r.trivializations_walk &= check_zigzag(zz);
    r.trivializations_walk &= chain_same(zz.from(), splice(first, last));
    r.trivializations_walk &=
        chain_same(zz.to(), basepoint_chain(2, base, coeff));

    const AbGroup& other = pool[rng() % pool.size()];
    HomGroup hg(mid, other);
    Hom f = hg.from_coords(rand_coords(hg.base().gens()));
    Ses first2 = rand_ext(other, coeff);
    r.swaps_check &= check_zig(splice_swap(f, first2, last));
  }
  return r;
}

}  // namespace abext
