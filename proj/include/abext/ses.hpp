#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "abext/congruence.hpp"
#include "abext/hom.hpp"

namespace abext {

/// Short exact sequence left -> middle -> right. Construction validates, in
/// order: endpoint wiring, injectivity of the inclusion, surjectivity of the
/// projection, vanishing of the composite, and exactness at the middle, each
/// failure reported with its own defect kind.
class Ses {
public:
  Ses(Hom inclusion, Hom projection)
      : inclusion_(std::move(inclusion)), projection_(std::move(projection)) {
    if (!inclusion_.tgt().same_presentation(projection_.src()))
      throw SesValidationError(
          SesDefect::IllFormed,
          "Ses: inclusion target and projection source differ");
    if (!is_injective(inclusion_))
      throw SesValidationError(SesDefect::NotInjective,
                               "Ses: inclusion has a nonzero kernel");
    if (!is_surjective(projection_))
      throw SesValidationError(SesDefect::NotSurjective,
                               "Ses: projection has a nonzero cokernel");
    if (!hom_compose(projection_, inclusion_).is_zero_map())
      throw SesValidationError(SesDefect::NotComplex,
                               "Ses: projection o inclusion is nonzero");
    if (!is_exact_at(inclusion_, projection_))
      throw SesValidationError(
          SesDefect::NotExact,
          "Ses: kernel of the projection exceeds the image of the inclusion");
  }

  const AbGroup& left() const noexcept { return inclusion_.src(); }
  const AbGroup& middle() const noexcept { return inclusion_.tgt(); }
  const AbGroup& right() const noexcept { return projection_.tgt(); }
  const Hom& inclusion() const noexcept { return inclusion_; }
  const Hom& projection() const noexcept { return projection_; }

  /// Same endpoint pair (left and right presentations).
  bool same_window(const Ses& o) const {
    return left().same_presentation(o.left()) &&
           right().same_presentation(o.right());
  }

private:
  Hom inclusion_, projection_;
};

inline Ses make_ses(Hom inclusion, Hom projection) {
  return Ses(std::move(inclusion), std::move(projection));
}

/// Literal structural identity: same presentations and the same matrices.
/// This is the notion used when recomputed constructions are compared
/// against stored ones.
inline bool ses_same(const Ses& e, const Ses& f) {
  return e.left().same_presentation(f.left()) &&
         e.middle().same_presentation(f.middle()) &&
         e.right().same_presentation(f.right()) &&
         e.inclusion().mat() == f.inclusion().mat() &&
         e.projection().mat() == f.projection().mat();
}

/// The split extension left -> left (+) right -> right.
inline Ses trivial_ses(const AbGroup& right, const AbGroup& left) {
  Biproduct bp = biproduct(left, right);
  return Ses(bp.in_first, bp.pr_second);
}

/// A path between two extensions of the same window: a middle map phi that
/// commutes with both legs, packaged with an explicit exact inverse. The
/// short five lemma makes any such phi invertible; storing the inverse keeps
/// reversal and composition free of fresh solver calls.
class PathData {
public:
  PathData(Ses src, Ses tgt, Hom phi, Hom inverse)
      : src_(std::move(src)), tgt_(std::move(tgt)), phi_(std::move(phi)),
        inverse_(std::move(inverse)) {
    std::string why;
    if (!check(src_, tgt_, phi_, inverse_, &why))
      throw ValidationError("PathData: " + why);
  }

  /// Builds without validating. For adversarial tests and deserialization;
  /// pair with valid().
  static PathData unchecked(Ses src, Ses tgt, Hom phi, Hom inverse) {
    return PathData(std::move(src), std::move(tgt), std::move(phi),
                    std::move(inverse), 0);
  }

  static PathData identity(const Ses& e) {
    return PathData(e, e, Hom::identity(e.middle()), Hom::identity(e.middle()));
  }

  const Ses& src() const noexcept { return src_; }
  const Ses& tgt() const noexcept { return tgt_; }
  const Hom& phi() const noexcept { return phi_; }
  const Hom& inverse() const noexcept { return inverse_; }

  PathData reverse() const {
    return PathData(tgt_, src_, inverse_, phi_);
  }

  /// Full recheck of every invariant; false instead of throwing.
  bool valid() const {
    std::string why;
    return check(src_, tgt_, phi_, inverse_, &why);
  }

private:
  PathData(Ses src, Ses tgt, Hom phi, Hom inverse, int)
      : src_(std::move(src)), tgt_(std::move(tgt)), phi_(std::move(phi)),
        inverse_(std::move(inverse)) {}

  static bool check(const Ses& src, const Ses& tgt, const Hom& phi,
                    const Hom& inv, std::string* why) {
    if (!src.same_window(tgt)) {
      *why = "endpoint groups differ";
      return false;
    }
    if (!phi.src().same_presentation(src.middle()) ||
        !phi.tgt().same_presentation(tgt.middle()) ||
        !inv.src().same_presentation(tgt.middle()) ||
        !inv.tgt().same_presentation(src.middle())) {
      *why = "middle map endpoints do not match the sequences";
      return false;
    }
    if (!hom_compose(phi, src.inclusion()).equal_to(tgt.inclusion())) {
      *why = "inclusion triangle does not commute";
      return false;
    }
    if (!hom_compose(tgt.projection(), phi).equal_to(src.projection())) {
      *why = "projection triangle does not commute";
      return false;
    }
    if (!hom_compose(inv, phi).equal_to(Hom::identity(src.middle()))) {
      *why = "stored inverse is not a left inverse";
      return false;
    }
    if (!hom_compose(phi, inv).equal_to(Hom::identity(tgt.middle()))) {
      *why = "stored inverse is not a right inverse";
      return false;
    }
    return true;
  }

  Ses src_, tgt_;
  Hom phi_, inverse_;
};

/// Two parallel path data are compared by their underlying maps; no higher
/// coherence data exists at this scale.
inline bool path_data_equal(const PathData& a, const PathData& b) {
  if (!ses_same(a.src(), b.src()) || !ses_same(a.tgt(), b.tgt()))
    throw InputError("path_data_equal: paths are not parallel");
  return a.phi().equal_to(b.phi());
}

inline PathData compose(const PathData& later, const PathData& earlier) {
  if (!ses_same(earlier.tgt(), later.src()))
    throw InputError("compose: path endpoints do not meet");
  return PathData(earlier.src(), later.tgt(),
                  hom_compose(later.phi(), earlier.phi()),
                  hom_compose(earlier.inverse(), later.inverse()));
}

/// Solves for the exact inverse of a middle map whose triangles commute.
/// The short five lemma makes phi invertible, so the system is always
/// consistent; inconsistency would mean the caller's triangles were wrong.
inline Hom solve_middle_inverse(const Ses& src, const Ses& tgt,
                                const Hom& phi) {
  const std::size_t ne = src.middle().gens(), nf = tgt.middle().gens();
  auto inv_mat = solve_mat_congruences(
      ne, nf,
      {
          {IntMatrix::identity(ne), phi.mat(), IntMatrix::identity(ne),
           src.middle().rels()},
          {IntMatrix::identity(ne), tgt.middle().rels(),
           IntMatrix(ne, tgt.middle().rels().cols()), src.middle().rels()},
      });
  if (!inv_mat)
    throw Error("solve_middle_inverse: no inverse found for a triangle map; "
                "the five-lemma guarantee was violated");
  return Hom(tgt.middle(), src.middle(), *inv_mat);
}

/// Decides whether two extensions of the same window are connected by path
/// data, and produces it. One simultaneous integer solve finds the middle
/// map (both triangles plus well-definedness); a second solve finds its
/// inverse against the first, which pins the inverse of this particular map
/// rather than some unrelated isomorphism.
inline std::optional<PathData> find_path_data(const Ses& e, const Ses& f) {
  if (!e.same_window(f))
    throw InputError("find_path_data: sequences have different windows");
  const std::size_t ne = e.middle().gens(), nf = f.middle().gens();

  auto phi_mat = solve_mat_congruences(
      nf, ne,
      {
          {IntMatrix::identity(nf), e.inclusion().mat(), f.inclusion().mat(),
           f.middle().rels()},
          {f.projection().mat(), IntMatrix::identity(ne),
           e.projection().mat(), e.right().rels()},
          {IntMatrix::identity(nf), e.middle().rels(),
           IntMatrix(nf, e.middle().rels().cols()), f.middle().rels()},
      });
  if (!phi_mat) return std::nullopt;

  Hom phi(e.middle(), f.middle(), *phi_mat);
  return PathData(e, f, phi, solve_middle_inverse(e, f, phi));
}

/// A loop: path data from the split extension of a window to itself. Every
/// loop's middle map is upper unitriangular, which is exactly the Retakh
/// correspondence with Hom(right, left).
class LoopElement {
public:
  LoopElement(AbGroup right, AbGroup left, PathData path)
      : right_(std::move(right)), left_(std::move(left)),
        path_(std::move(path)) {
    Ses t = trivial_ses(right_, left_);
    if (!ses_same(path_.src(), t) || !ses_same(path_.tgt(), t))
      throw InputError("LoopElement: path is not a loop at the split "
                       "extension of this window");
  }

  const AbGroup& right() const noexcept { return right_; }
  const AbGroup& left() const noexcept { return left_; }
  const PathData& path() const noexcept { return path_; }

private:
  AbGroup right_, left_;
  PathData path_;
};

/// Reads the off-diagonal block of the loop's middle map.
inline Hom retakh_to_hom(const LoopElement& l) {
  Biproduct bp = biproduct(l.left(), l.right());
  return hom_compose(bp.pr_first, hom_compose(l.path().phi(), bp.in_second));
}

/// Builds the unitriangular loop carrying f in its corner.
inline LoopElement retakh_from_hom(const Hom& f) {
  const AbGroup& b = f.src();
  const AbGroup& a = f.tgt();
  const std::size_t na = a.gens(), nb = b.gens();
  Ses t = trivial_ses(b, a);

  IntMatrix up = hstack(IntMatrix::identity(na), f.mat());
  IntMatrix lo = hstack(IntMatrix(nb, na), IntMatrix::identity(nb));
  IntMatrix dn = hstack(IntMatrix::identity(na), -f.mat());
  Hom phi(t.middle(), t.middle(), vstack(up, lo));
  Hom inv(t.middle(), t.middle(), vstack(dn, lo));
  return LoopElement(b, a, PathData(t, t, phi, inv));
}

inline LoopElement compose_loops(const LoopElement& l1, const LoopElement& l2) {
  return LoopElement(l1.right(), l1.left(), compose(l1.path(), l2.path()));
}

inline LoopElement reverse_loop(const LoopElement& l) {
  return LoopElement(l.right(), l.left(), l.path().reverse());
}

}  // namespace abext
