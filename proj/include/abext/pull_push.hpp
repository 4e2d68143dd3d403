#pragma once

#include <cstddef>
#include <utility>

#include "abext/ses.hpp"

namespace abext {

/// Map of short exact sequences: three legs making both squares commute.
class SesMorphism {
public:
  SesMorphism(Ses src, Ses tgt, Hom left, Hom mid, Hom right)
      : src_(std::move(src)), tgt_(std::move(tgt)), left_(std::move(left)),
        mid_(std::move(mid)), right_(std::move(right)) {
    if (!left_.src().same_presentation(src_.left()) ||
        !left_.tgt().same_presentation(tgt_.left()) ||
        !mid_.src().same_presentation(src_.middle()) ||
        !mid_.tgt().same_presentation(tgt_.middle()) ||
        !right_.src().same_presentation(src_.right()) ||
        !right_.tgt().same_presentation(tgt_.right()))
      throw InputError("SesMorphism: leg endpoints do not match the "
                       "sequences");
    if (!hom_compose(mid_, src_.inclusion())
             .equal_to(hom_compose(tgt_.inclusion(), left_)))
      throw ValidationError("SesMorphism: inclusion square does not commute");
    if (!hom_compose(tgt_.projection(), mid_)
             .equal_to(hom_compose(right_, src_.projection())))
      throw ValidationError("SesMorphism: projection square does not commute");
  }

  static SesMorphism identity(const Ses& e) {
    return SesMorphism(e, e, Hom::identity(e.left()),
                       Hom::identity(e.middle()), Hom::identity(e.right()));
  }

  const Ses& src() const noexcept { return src_; }
  const Ses& tgt() const noexcept { return tgt_; }
  const Hom& left() const noexcept { return left_; }
  const Hom& mid() const noexcept { return mid_; }
  const Hom& right() const noexcept { return right_; }

private:
  Ses src_, tgt_;
  Hom left_, mid_, right_;
};

inline SesMorphism compose_morphisms(const SesMorphism& m2,
                                     const SesMorphism& m1) {
  if (!ses_same(m1.tgt(), m2.src()))
    throw InputError("compose_morphisms: endpoints do not meet");
  return SesMorphism(m1.src(), m2.tgt(), hom_compose(m2.left(), m1.left()),
                     hom_compose(m2.mid(), m1.mid()),
                     hom_compose(m2.right(), m1.right()));
}

/// Path data regarded as a morphism with identity outer legs.
inline SesMorphism as_morphism(const PathData& pd) {
  return SesMorphism(pd.src(), pd.tgt(), Hom::identity(pd.src().left()),
                     pd.phi(), Hom::identity(pd.src().right()));
}

/// Base change along g: the fibre product of the projection with g. The
/// middle is the kernel of the difference map out of the biproduct, so this
/// construction rides entirely on kernel_image_cokernel.
struct PullbackResult {
  Ses ses;              // lives over (g.src(), e.left())
  SesMorphism to_base;  // ses -> e, legs (id, fibre coordinates, g)
};

inline PullbackResult pullback(const Hom& g, const Ses& e) {
  if (!g.tgt().same_presentation(e.right()))
    throw InputError("pullback: map does not land in the base of the "
                     "sequence");
  const AbGroup& nb = g.src();
  const AbGroup& mid = e.middle();
  Biproduct bp = biproduct(mid, nb);

  Hom difference(bp.group, e.right(), hstack(e.projection().mat(), -g.mat()));
  KernelImageCokernel kic = kernel_image_cokernel(difference);
  const IntMatrix& embed = kic.kernel_incl.mat();  // fibre gens in mid (+) nb

  // (incl(a), 0) lies in the fibre lattice exactly; the new projection just
  // reads off the second block of the embedding.
  IntMatrix incl_target =
      vstack(e.inclusion().mat(), IntMatrix(nb.gens(), e.left().gens()));
  Hom incl(e.left(), kic.kernel,
           express_in_lattice(embed, incl_target, "pullback inclusion"));
  Hom proj(kic.kernel, nb, embed.block(mid.gens(), 0, nb.gens(), embed.cols()));
  Ses fibre(incl, proj);

  Hom to_mid(kic.kernel, mid, embed.block(0, 0, mid.gens(), embed.cols()));
  SesMorphism morphism(fibre, e, Hom::identity(e.left()), to_mid, g);
  return {std::move(fibre), std::move(morphism)};
}

/// Cobase change along f: the middle is the cokernel of the twisted
/// inclusion a -> (f a, -incl a), again through kernel_image_cokernel.
struct PushoutResult {
  Ses ses;                // lives over (e.right(), f.tgt())
  SesMorphism from_base;  // e -> ses, legs (f, corner coordinates, id)
};

inline PushoutResult pushout(const Hom& f, const Ses& e) {
  if (!f.src().same_presentation(e.left()))
    throw InputError("pushout: map does not start at the kernel of the "
                     "sequence");
  const AbGroup& na = f.tgt();
  const AbGroup& mid = e.middle();
  Biproduct bp = biproduct(na, mid);

  Hom twisted(e.left(), bp.group, vstack(f.mat(), -e.inclusion().mat()));
  KernelImageCokernel kic = kernel_image_cokernel(twisted);
  const AbGroup& corner = kic.cokernel;  // na (+) mid gens, extra relations

  Hom incl(na, corner,
           vstack(IntMatrix::identity(na.gens()),
                  IntMatrix(mid.gens(), na.gens())));
  Hom proj(corner, e.right(),
           hstack(IntMatrix(e.right().gens(), na.gens()),
                  e.projection().mat()));
  Ses quotient(incl, proj);

  Hom from_mid(mid, corner,
               vstack(IntMatrix(na.gens(), mid.gens()),
                      IntMatrix::identity(mid.gens())));
  SesMorphism morphism(e, quotient, f, from_mid, Hom::identity(e.right()));
  return {std::move(quotient), std::move(morphism)};
}

/// Blockwise direct sum of two sequences.
inline Ses direct_sum(const Ses& e, const Ses& f) {
  AbGroup left(e.left().gens() + f.left().gens(),
               block_diag(e.left().rels(), f.left().rels()));
  AbGroup mid(e.middle().gens() + f.middle().gens(),
              block_diag(e.middle().rels(), f.middle().rels()));
  AbGroup right(e.right().gens() + f.right().gens(),
                block_diag(e.right().rels(), f.right().rels()));
  Hom incl(left, mid, block_diag(e.inclusion().mat(), f.inclusion().mat()));
  Hom proj(mid, right,
           block_diag(e.projection().mat(), f.projection().mat()));
  return Ses(std::move(incl), std::move(proj));
}

/// A morphism with identity kernel leg factors its source through the
/// pullback of its base leg: path data src = (right)^*(tgt). The middle map
/// is the universal map into the fibre, solved exactly in the fibre lattice.
inline PathData pullback_char(const SesMorphism& m) {
  if (!m.left().equal_to(Hom::identity(m.src().left())))
    throw InputError("pullback_char: kernel leg must be the identity");
  PullbackResult pb = pullback(m.right(), m.tgt());
  IntMatrix embed =
      vstack(pb.to_base.mid().mat(), pb.ses.projection().mat());
  IntMatrix stacked = vstack(m.mid().mat(), m.src().projection().mat());
  Hom phi(m.src().middle(), pb.ses.middle(),
          express_in_lattice(embed, stacked, "pullback_char"));
  return PathData(m.src(), pb.ses, phi,
                  solve_middle_inverse(m.src(), pb.ses, phi));
}

/// A morphism with identity base leg factors through the pushout of its
/// kernel leg: path data pushout(left, src) = tgt. The middle map glues the
/// target inclusion with the morphism's own middle leg.
inline PathData pushout_char(const SesMorphism& m) {
  if (!m.right().equal_to(Hom::identity(m.src().right())))
    throw InputError("pushout_char: base leg must be the identity");
  PushoutResult po = pushout(m.left(), m.src());
  Hom phi(po.ses.middle(), m.tgt().middle(),
          hstack(m.tgt().inclusion().mat(), m.mid().mat()));
  return PathData(po.ses, m.tgt(), phi,
                  solve_middle_inverse(po.ses, m.tgt(), phi));
}

/// Any morphism factors as pushout of its kernel leg followed by pullback of
/// its base leg: path data pushout(left, src) = pullback(right, tgt).
inline PathData mixed_char(const SesMorphism& m) {
  PullbackResult pb = pullback(m.right(), m.tgt());
  IntMatrix embed =
      vstack(pb.to_base.mid().mat(), pb.ses.projection().mat());
  IntMatrix stacked = vstack(m.mid().mat(), m.src().projection().mat());
  Hom to_fibre(m.src().middle(), pb.ses.middle(),
               express_in_lattice(embed, stacked, "mixed_char"));
  SesMorphism through(m.src(), pb.ses, m.left(), to_fibre,
                      Hom::identity(m.src().right()));
  return pushout_char(through);
}

/// pullback(id, e) = e.
inline PathData pullback_id(const Ses& e) {
  return pullback_char(SesMorphism::identity(e)).reverse();
}

/// pushout(id, e) = e.
inline PathData pushout_id(const Ses& e) {
  return pushout_char(SesMorphism::identity(e));
}

/// pullback(g o h, e) = pullback(h, pullback(g, e)).
inline PathData pullback_comp(const Hom& g, const Hom& h, const Ses& e) {
  PullbackResult outer = pullback(g, e);
  PullbackResult inner = pullback(h, outer.ses);
  SesMorphism whole =
      compose_morphisms(outer.to_base, inner.to_base);  // right leg g o h
  return pullback_char(whole).reverse();
}

/// pushout(f2 o f1, e) = pushout(f2, pushout(f1, e)).
inline PathData pushout_comp(const Hom& f2, const Hom& f1, const Ses& e) {
  PushoutResult first = pushout(f1, e);
  PushoutResult second = pushout(f2, first.ses);
  SesMorphism whole = compose_morphisms(second.from_base, first.from_base);
  return pushout_char(whole);
}

/// Transport of path data through base change: pd : e = f over the same
/// window gives pullback(g, e) = pullback(g, f).
inline PathData pullback_path(const Hom& g, const PathData& pd) {
  PullbackResult pe = pullback(g, pd.src());
  SesMorphism to_f = compose_morphisms(as_morphism(pd), pe.to_base);
  return pullback_char(to_f);
}

/// Transport of path data through cobase change: pushout(f, e) = pushout(f, f').
inline PathData pushout_path(const Hom& f, const PathData& pd) {
  PushoutResult pf = pushout(f, pd.tgt());
  SesMorphism from_e =
      compose_morphisms(pf.from_base, as_morphism(pd));
  return pushout_char(from_e);
}

}  // namespace abext
