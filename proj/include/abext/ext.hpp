#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "abext/hom_group.hpp"
#include "abext/pull_push.hpp"

namespace abext {

/// The class of one extension in the group of extensions of a fixed window:
/// coordinates in the quotient presentation together with the representative
/// map off the resolution kernel that produced them.
struct ExtClass {
  AbGroup base;         // right-hand group of the window
  AbGroup coeff;        // left-hand group of the window
  AbGroup group;        // presentation of the extension group
  GroupElement coords;  // this class inside `group`
  Hom rep;              // kernel of the free cover -> coeff
};

inline bool ext_class_equal(const ExtClass& c1, const ExtClass& c2) {
  if (!c1.base.same_presentation(c2.base) ||
      !c1.coeff.same_presentation(c2.coeff))
    throw InputError("ext_class_equal: classes live over different windows");
  return element_equal(c1.coords, c2.coords);
}

/// Extension group of a window, computed once from the canonical free
/// resolution of the base: maps off the resolution kernel into the
/// coefficients, divided by those extending over the cover. Generators are
/// the elementary matrices of that hom group; the two relation blocks are
/// the literal "zero map" and "restricted from the cover" lattices.
class ExtGroup {
public:
  ExtGroup(AbGroup base, AbGroup coeff)
      : base_(std::move(base)), coeff_(std::move(coeff)),
        fp_(free_presentation(base_)) {
    const std::size_t q = coeff_.gens();
    const std::size_t k = fp_.kernel.gens();
    IntMatrix zero_block = kron(IntMatrix::identity(k), coeff_.rels());
    IntMatrix res_block =
        kron(fp_.kernel_incl.mat().transpose(), IntMatrix::identity(q));
    group_ = AbGroup(q * k, hstack(zero_block, res_block));
    coord_form_ = hnf(hstack(zero_block, res_block));
  }

  const AbGroup& base() const noexcept { return base_; }
  const AbGroup& coeff() const noexcept { return coeff_; }
  const FreePresentation& resolution() const noexcept { return fp_; }

  /// Presentation of the extension group itself.
  const AbGroup& group() const noexcept { return group_; }

  /// The resolution rewritten as a short exact sequence.
  Ses resolution_ses() const {
    return Ses(fp_.kernel_incl, fp_.proj);
  }

  /// Classifies with a caller-chosen lift of the free cover through the
  /// extension's projection. Different lifts must land in the same class;
  /// exposing the choice lets tests check exactly that.
  ExtClass classify_with_lift(const Ses& e, const Hom& lift) const {
    check_window(e, "classify");
    if (!lift.src().same_presentation(fp_.free_cover) ||
        !lift.tgt().same_presentation(e.middle()))
      throw InputError("classify: lift endpoints must join the free cover "
                       "to the middle group");
    if (!hom_compose(e.projection(), lift).equal_to(fp_.proj))
      throw InputError("classify: lift does not cover the base projection");

    // The lifted kernel lands in the image of the inclusion; pull it back.
    const std::size_t k = fp_.kernel.gens();
    IntMatrix lifted = lift.mat() * fp_.kernel_incl.mat();
    auto rep_mat = solve_mat_congruences(
        coeff_.gens(), k,
        {{e.inclusion().mat(), IntMatrix::identity(k), lifted,
          e.middle().rels()}});
    if (!rep_mat)
      throw Error("classify: lifted kernel misses the inclusion image; "
                  "exactness was violated");
    Hom rep(fp_.kernel, coeff_, *rep_mat);
    return {base_, coeff_, group_, GroupElement(group_, vec(*rep_mat)),
            rep};
  }

  ExtClass classify(const Ses& e) const {
    check_window(e, "classify");
    const std::size_t n = fp_.free_cover.gens();
    auto lift_mat = solve_mat_congruences(
        e.middle().gens(), n,
        {{e.projection().mat(), IntMatrix::identity(n), fp_.proj.mat(),
          base_.rels()}});
    if (!lift_mat)
      throw Error("classify: free cover failed to lift through a "
                  "surjection");
    return classify_with_lift(e, Hom(fp_.free_cover, e.middle(), *lift_mat));
  }

  /// The class of a representative map, without building any extension.
  ExtClass class_of_rep(const Hom& rep) const {
    if (!rep.src().same_presentation(fp_.kernel) ||
        !rep.tgt().same_presentation(coeff_))
      throw InputError("class_of_rep: map must join the resolution kernel "
                       "to the coefficients");
    return {base_, coeff_, group_, GroupElement(group_, vec(rep.mat())), rep};
  }

  ExtClass class_from_coords(const IntVec& coords) const {
    if (coords.size() != group_.gens())
      throw InputError("class_from_coords: wrong coordinate length");
    Hom rep(fp_.kernel, coeff_,
            unvec(coords, coeff_.gens(), fp_.kernel.gens()));
    return {base_, coeff_, group_, GroupElement(group_, coords), rep};
  }

  /// Realises a class as an extension: push the resolution out along the
  /// representative.
  Ses extension_from_class(const ExtClass& c) const {
    if (!c.base.same_presentation(base_) ||
        !c.coeff.same_presentation(coeff_))
      throw InputError("extension_from_class: class belongs to a different "
                       "window");
    return pushout(c.rep, resolution_ses()).ses;
  }

  /// One extension per generator of group().
  std::vector<Ses> generator_extensions() const {
    std::vector<Ses> out;
    out.reserve(group_.gens());
    for (std::size_t i = 0; i < group_.gens(); ++i) {
      IntVec e(group_.gens(), Integer(0));
      e[i] = 1;
      out.push_back(extension_from_class(class_from_coords(e)));
    }
    return out;
  }

private:
  void check_window(const Ses& e, const char* what) const {
    if (!e.right().same_presentation(base_) ||
        !e.left().same_presentation(coeff_))
      throw InputError(std::string(what) +
                       ": extension window does not match this group "
                       "(classes over other presentations need transporting "
                       "along an explicit comparison first)");
  }

  AbGroup base_, coeff_;
  FreePresentation fp_;
  AbGroup group_;
  HNFResult coord_form_;
};

inline ExtGroup ext_group(const AbGroup& base, const AbGroup& coeff) {
  return ExtGroup(base, coeff);
}

inline ExtClass classify(const Ses& e) {
  return ExtGroup(e.right(), e.left()).classify(e);
}

/// Sum of extensions: glue the coefficients of the direct sum, then restrict
/// to the diagonal of the base.
inline Ses baer_sum(const Ses& e, const Ses& f) {
  if (!e.same_window(f))
    throw InputError("baer_sum: extensions have different windows");
  Ses sum = direct_sum(e, f);
  PushoutResult glued = pushout(codiagonal_hom(e.left()), sum);
  PullbackResult restricted =
      pullback(diagonal_hom(e.right()), glued.ses);
  return restricted.ses;
}

/// Additive inverse: push out along negation of the coefficients.
inline Ses baer_inverse(const Ses& e) {
  Hom neg(e.left(), e.left(), -IntMatrix::identity(e.left().gens()));
  return pushout(neg, e).ses;
}

/// Matrix of the base-change map between extension groups, one classified
/// pullback per generator extension of the domain.
inline Hom ext_pullback(const Hom& g, const ExtGroup& dom,
                        const ExtGroup& cod) {
  if (!g.tgt().same_presentation(dom.base()) ||
      !g.src().same_presentation(cod.base()) ||
      !dom.coeff().same_presentation(cod.coeff()))
    throw InputError("ext_pullback: group windows do not match the map");
  IntMatrix m(cod.group().gens(), dom.group().gens());
  std::vector<Ses> gens = dom.generator_extensions();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    ExtClass c = cod.classify(pullback(g, gens[j]).ses);
    m.set_col(j, c.coords.coords);
  }
  return Hom(dom.group(), cod.group(), m);
}

inline Hom ext_pullback(const Hom& g, const AbGroup& coeff) {
  return ext_pullback(g, ExtGroup(g.tgt(), coeff), ExtGroup(g.src(), coeff));
}

/// Matrix of the coefficient-change map between extension groups.
inline Hom ext_pushout(const Hom& f, const ExtGroup& dom,
                       const ExtGroup& cod) {
  if (!f.src().same_presentation(dom.coeff()) ||
      !f.tgt().same_presentation(cod.coeff()) ||
      !dom.base().same_presentation(cod.base()))
    throw InputError("ext_pushout: group windows do not match the map");
  IntMatrix m(cod.group().gens(), dom.group().gens());
  std::vector<Ses> gens = dom.generator_extensions();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    ExtClass c = cod.classify(pushout(f, gens[j]).ses);
    m.set_col(j, c.coords.coords);
  }
  return Hom(dom.group(), cod.group(), m);
}

inline Hom ext_pushout(const Hom& f, const AbGroup& base) {
  return ext_pushout(f, ExtGroup(base, f.src()), ExtGroup(base, f.tgt()));
}

/// Every extension of a free group splits; produce the path data to the
/// split extension by solving for a section of the projection.
inline PathData split_over_free(const Ses& e) {
  if (!e.right().is_free())
    throw InputError("split_over_free: base group is not free");
  const std::size_t nb = e.right().gens();
  auto section = solve_mat_congruences(
      e.middle().gens(), nb,
      {{e.projection().mat(), IntMatrix::identity(nb),
        IntMatrix::identity(nb), e.right().rels()}});
  if (!section)
    throw Error("split_over_free: surjection onto a free group has no "
                "section");
  Ses t = trivial_ses(e.right(), e.left());
  Hom from_split(t.middle(), e.middle(),
                 hstack(e.inclusion().mat(), *section));
  return PathData(t, e, from_split, solve_middle_inverse(t, e, from_split))
      .reverse();
}

}  // namespace abext
