#pragma once

#include <cstddef>
#include <utility>

#include "abext/ext.hpp"

namespace abext {

struct SixTermReport {
  bool head_injective = false;
  bool exact_at_hom_middle = false;
  bool exact_at_hom_left = false;
  bool exact_at_ext_right = false;
  bool exact_at_ext_middle = false;
  bool tail_surjective = false;

  bool all() const noexcept {
    return head_injective && exact_at_hom_middle && exact_at_hom_left &&
           exact_at_ext_right && exact_at_ext_middle && tail_surjective;
  }
};

/// Mapping a short exact sequence into a coefficient group yields six
/// presented groups joined by five maps: restriction along the projection
/// and the inclusion, the connecting map through pushouts, and base change
/// of extension groups along both structure maps. All six nodes and five
/// matrices are materialised, so exactness is a finite computation.
class SixTerm {
public:
  SixTerm(Ses s, AbGroup coeff)
      : s_(std::move(s)), coeff_(std::move(coeff)),
        hom_right_(s_.right(), coeff_),
        hom_middle_(s_.middle(), coeff_),
        hom_left_(s_.left(), coeff_),
        ext_right_(s_.right(), coeff_),
        ext_middle_(s_.middle(), coeff_),
        ext_left_(s_.left(), coeff_),
        restrict_proj_(hom_restriction(hom_right_, hom_middle_,
                                       s_.projection())),
        restrict_incl_(hom_restriction(hom_middle_, hom_left_,
                                       s_.inclusion())),
        connecting_(connecting_map()),
        ext_proj_(ext_pullback(s_.projection(), ext_right_, ext_middle_)),
        ext_incl_(ext_pullback(s_.inclusion(), ext_middle_, ext_left_)) {}

  const Ses& ses() const noexcept { return s_; }
  const AbGroup& coeff() const noexcept { return coeff_; }

  const HomGroup& hom_right() const noexcept { return hom_right_; }
  const HomGroup& hom_middle() const noexcept { return hom_middle_; }
  const HomGroup& hom_left() const noexcept { return hom_left_; }
  const ExtGroup& ext_right() const noexcept { return ext_right_; }
  const ExtGroup& ext_middle() const noexcept { return ext_middle_; }
  const ExtGroup& ext_left() const noexcept { return ext_left_; }

  const Hom& restrict_proj() const noexcept { return restrict_proj_; }
  const Hom& restrict_incl() const noexcept { return restrict_incl_; }
  const Hom& connecting() const noexcept { return connecting_; }
  const Hom& ext_proj() const noexcept { return ext_proj_; }
  const Hom& ext_incl() const noexcept { return ext_incl_; }

  /// Connecting map on an actual element: push the sequence out along it.
  ExtClass connect(const Hom& phi) const {
    if (!phi.src().same_presentation(s_.left()) ||
        !phi.tgt().same_presentation(coeff_))
      throw InputError("connect: map must join the kernel group to the "
                       "coefficients");
    return ext_right_.classify(pushout(phi, s_).ses);
  }

  SixTermReport report() const {
    SixTermReport r;
    r.head_injective = is_injective(restrict_proj_);
    r.exact_at_hom_middle = is_exact_at(restrict_proj_, restrict_incl_);
    r.exact_at_hom_left = is_exact_at(restrict_incl_, connecting_);
    r.exact_at_ext_right = is_exact_at(connecting_, ext_proj_);
    r.exact_at_ext_middle = is_exact_at(ext_proj_, ext_incl_);
    r.tail_surjective = is_surjective(ext_incl_);
    return r;
  }

private:
  Hom connecting_map() const {
    IntMatrix m(ext_right_.group().gens(), hom_left_.base().gens());
    for (std::size_t j = 0; j < hom_left_.base().gens(); ++j) {
      ExtClass c =
          ext_right_.classify(pushout(hom_left_.gen_reps()[j], s_).ses);
      m.set_col(j, c.coords.coords);
    }
    return Hom(hom_left_.base(), ext_right_.group(), m);
  }

  Ses s_;
  AbGroup coeff_;
  HomGroup hom_right_, hom_middle_, hom_left_;
  ExtGroup ext_right_, ext_middle_, ext_left_;
  Hom restrict_proj_, restrict_incl_, connecting_, ext_proj_, ext_incl_;
};

inline SixTerm six_term(const Ses& s, const AbGroup& coeff) {
  return SixTerm(s, coeff);
}

/// Moves a loop at the split extension to a smaller base: conjugate the
/// pulled-back loop by the comparison of the split extension with the
/// pullback of the split extension. Under the loop-to-hom correspondence
/// this realises precomposition with the base map.
inline LoopElement transport_loop_along_base(const Hom& g,
                                             const LoopElement& l) {
  const AbGroup& b = l.right();
  const AbGroup& a = l.left();
  if (!g.tgt().same_presentation(b))
    throw InputError("transport_loop_along_base: map does not land in the "
                     "loop's base group");
  Ses t_new = trivial_ses(g.src(), a);
  Ses t_old = trivial_ses(b, a);
  Hom mid(t_new.middle(), t_old.middle(),
          block_diag(IntMatrix::identity(a.gens()), g.mat()));
  SesMorphism compare(t_new, t_old, Hom::identity(a), mid, g);
  PathData sigma = pullback_char(compare);
  PathData moved = pullback_path(g, l.path());
  return LoopElement(g.src(), a,
                     compose(sigma.reverse(), compose(moved, sigma)));
}

}  // namespace abext
