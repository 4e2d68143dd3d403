#pragma once

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "abext/ext.hpp"

namespace abext {

/// A point of the fibre of restriction-to-the-kernel-group over the split
/// extension: an extension of the middle group together with path data
/// splitting its restriction. The split is genuine data, not a property;
/// two points with the same extension but different splits can differ.
class FibrePoint {
public:
  FibrePoint(Ses ambient, AbGroup coeff, Ses fibre, PathData split)
      : ambient_(std::move(ambient)), coeff_(std::move(coeff)),
        fibre_(std::move(fibre)), split_(std::move(split)) {
    if (!fibre_.right().same_presentation(ambient_.middle()) ||
        !fibre_.left().same_presentation(coeff_))
      throw InputError("fibre point: extension does not sit over the "
                       "middle group with these coefficients");
    Ses restricted = pullback(ambient_.inclusion(), fibre_).ses;
    if (!ses_same(split_.src(), restricted) ||
        !ses_same(split_.tgt(), trivial_ses(ambient_.left(), coeff_)))
      throw InputError("fibre point: split does not join the restricted "
                       "extension to the split extension");
  }

  const Ses& ambient() const noexcept { return ambient_; }
  const AbGroup& coeff() const noexcept { return coeff_; }
  const Ses& fibre() const noexcept { return fibre_; }
  const PathData& split() const noexcept { return split_; }

private:
  Ses ambient_;
  AbGroup coeff_;
  Ses fibre_;
  PathData split_;
};

/// The fibre point of a pulled-back extension. The split is the universal
/// map of the double fibre, solved exactly in both fibre lattices; it exists
/// because the two structure maps compose to zero.
inline FibrePoint canonical_point(const Ses& s, const Ses& x) {
  if (!x.right().same_presentation(s.right()))
    throw InputError("canonical_point: extension does not sit over the "
                     "base group");
  const AbGroup& g = x.left();
  const AbGroup& a = s.left();
  PullbackResult f = pullback(s.projection(), x);
  PullbackResult rf = pullback(s.inclusion(), f.ses);

  IntMatrix into_y = hstack(x.inclusion().mat(),
                            IntMatrix(x.middle().gens(), a.gens()));
  IntMatrix into_m =
      hstack(IntMatrix(s.middle().gens(), g.gens()), s.inclusion().mat());
  IntMatrix embed_f =
      vstack(f.to_base.mid().mat(), f.ses.projection().mat());
  IntMatrix u1 = express_in_lattice(embed_f, vstack(into_y, into_m),
                                    "canonical_point");
  IntMatrix embed_rf =
      vstack(rf.to_base.mid().mat(), rf.ses.projection().mat());
  IntMatrix in_a =
      hstack(IntMatrix(a.gens(), g.gens()), IntMatrix::identity(a.gens()));
  IntMatrix phi_mat =
      express_in_lattice(embed_rf, vstack(u1, in_a), "canonical_point");

  Ses t = trivial_ses(a, g);
  Hom phi(t.middle(), rf.ses.middle(), phi_mat);
  PathData split =
      PathData(t, rf.ses, phi, solve_middle_inverse(t, rf.ses, phi))
          .reverse();
  return FibrePoint(s, g, f.ses, std::move(split));
}

/// A fibre point for any extension whose restriction happens to split,
/// carrying a found split rather than a constructed one.
inline FibrePoint split_fibre_point(const Ses& s, const AbGroup& coeff,
                                    const Ses& fibre) {
  if (!fibre.right().same_presentation(s.middle()) ||
      !fibre.left().same_presentation(coeff))
    throw InputError("split_fibre_point: extension does not sit over the "
                     "middle group with these coefficients");
  Ses restricted = pullback(s.inclusion(), fibre).ses;
  auto split = find_path_data(restricted, trivial_ses(s.left(), coeff));
  if (!split)
    throw ValidationError("split_fibre_point: restriction to the kernel "
                          "group does not split");
  return FibrePoint(s, coeff, fibre, std::move(*split));
}

/// Same extension, split twisted by a loop at the split extension.
inline FibrePoint twist_point(const FibrePoint& fp, const Hom& phi) {
  LoopElement loop = retakh_from_hom(phi);
  return FibrePoint(fp.ambient(), fp.coeff(), fp.fibre(),
                    compose(loop.path(), fp.split()));
}

/// Collapses a fibre point to an extension of the base group: divide the
/// middle by the copy of the kernel group embedded through the split.
inline Ses point_quotient(const FibrePoint& fp) {
  const Ses& s = fp.ambient();
  PullbackResult rf = pullback(s.inclusion(), fp.fibre());
  const std::size_t ng = fp.coeff().gens();
  const std::size_t na = s.left().gens();
  IntMatrix in_a = vstack(IntMatrix(ng, na), IntMatrix::identity(na));
  IntMatrix embedded =
      rf.to_base.mid().mat() * fp.split().inverse().mat() * in_a;
  AbGroup qmid(fp.fibre().middle().gens(),
               hstack(fp.fibre().middle().rels(), embedded));
  Hom incl(fp.coeff(), qmid, fp.fibre().inclusion().mat());
  Hom proj(qmid, s.right(),
           s.projection().mat() * fp.fibre().projection().mat());
  return Ses(std::move(incl), std::move(proj));
}

/// Whether two fibre points agree as points of the fibre. Path data between
/// the extensions alone is not enough: the compared splits leave a loop at
/// the split extension, well defined up to loops of the extensions
/// themselves, and those reach exactly the restrictions of maps off the
/// middle group. The points agree when the discrepancy lies in that image.
inline bool fibre_points_equal(const FibrePoint& fp1, const FibrePoint& fp2) {
  if (!ses_same(fp1.ambient(), fp2.ambient()) ||
      !fp1.coeff().same_presentation(fp2.coeff()))
    throw InputError("fibre_points_equal: points live over different data");
  auto psi = find_path_data(fp1.fibre(), fp2.fibre());
  if (!psi) return false;

  const Ses& s = fp1.ambient();
  PathData moved = pullback_path(s.inclusion(), *psi);
  PathData u =
      compose(fp2.split(), compose(moved, fp1.split().reverse()));
  Hom defect = retakh_to_hom(LoopElement(s.left(), fp1.coeff(), u));

  HomGroup hom_mid(s.middle(), fp1.coeff());
  HomGroup hom_sub(s.left(), fp1.coeff());
  Hom restr = hom_restriction(hom_mid, hom_sub, s.inclusion());
  return lattice_member(hstack(restr.mat(), hom_sub.base().rels()),
                        element_coords(hom_sub, defect));
}

struct FibreSequenceReport {
  bool canonical_splits = false;
  bool section_roundtrip = false;
  bool point_roundtrip = false;
  bool quotient_separates = false;
  bool ext_exact = false;

  bool all() const noexcept {
    return canonical_splits && section_roundtrip && point_roundtrip &&
           quotient_separates && ext_exact;
  }
};

/// Exercises the fibre sequence over one short exact sequence and one
/// coefficient group: quotient and canonical point are mutually inverse on
/// sampled data, the quotient identifies points exactly up to fibre-point
/// equality, and the class groups are exact at the middle node.
inline FibreSequenceReport fibre_sequence_check(const Ses& s,
                                                const AbGroup& coeff,
                                                unsigned seed = 1,
                                                std::size_t samples = 3) {
  std::mt19937_64 rng(seed);
  auto rand_coords = [&rng](std::size_t n) {
    IntVec c(n);
    for (auto& v : c) v = Integer(static_cast<long>(rng() % 11)) - 5;
    return c;
  };

  FibreSequenceReport r;
  ExtGroup ext_b(s.right(), coeff);
  ExtGroup ext_m(s.middle(), coeff);
  ExtGroup ext_a(s.left(), coeff);
  Hom proj_star = ext_pullback(s.projection(), ext_b, ext_m);
  Hom incl_star = ext_pullback(s.inclusion(), ext_m, ext_a);
  r.ext_exact = is_exact_at(proj_star, incl_star);

  r.canonical_splits = true;
  r.section_roundtrip = true;
  r.point_roundtrip = true;

  std::vector<Ses> xs;
  xs.push_back(trivial_ses(s.right(), coeff));
  for (std::size_t k = 0; k + 1 < samples; ++k)
    xs.push_back(ext_b.extension_from_class(
        ext_b.class_from_coords(rand_coords(ext_b.group().gens()))));
  for (const Ses& x : xs) {
    try {
      FibrePoint fp = canonical_point(s, x);
      Ses q = point_quotient(fp);
      r.section_roundtrip &= find_path_data(q, x).has_value();
      r.point_roundtrip &= fibre_points_equal(canonical_point(s, q), fp);
    } catch (const Error&) {
      r.canonical_splits = false;
    }
  }

  // Points beyond the canonical image: extensions whose class restricts to
  // zero, with both found and twisted splits.
  std::vector<FibrePoint> pts;
  KernelImageCokernel kic = kernel_image_cokernel(incl_star);
  HomGroup hom_sub(s.left(), coeff);
  for (std::size_t k = 0; k < samples; ++k) {
    IntVec in_kernel =
        kic.kernel_incl.mat() * rand_coords(kic.kernel.gens());
    Ses f =
        ext_m.extension_from_class(ext_m.class_from_coords(in_kernel));
    FibrePoint base = split_fibre_point(s, coeff, f);
    pts.push_back(base);
    if (hom_sub.base().gens() > 0)
      pts.push_back(twist_point(
          base,
          hom_sub.from_coords(rand_coords(hom_sub.base().gens()))));
  }
  r.quotient_separates = true;
  std::vector<Ses> quotients;
  quotients.reserve(pts.size());
  for (const FibrePoint& fp : pts) quotients.push_back(point_quotient(fp));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r.point_roundtrip &=
        fibre_points_equal(canonical_point(s, quotients[i]), pts[i]);
    for (std::size_t j = 0; j < i; ++j) {
      bool same_point = fibre_points_equal(pts[i], pts[j]);
      bool same_quotient =
          find_path_data(quotients[i], quotients[j]).has_value();
      r.quotient_separates &= (same_point == same_quotient);
    }
  }
  return r;
}

}  // namespace abext
