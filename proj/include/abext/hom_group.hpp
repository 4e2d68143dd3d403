#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "abext/hom.hpp"

namespace abext {

/// The group of homomorphisms src -> tgt, presented on finitely many
/// generator maps. Internally a map is its column-stacked matrix vec; the
/// well-defined matrices form the lattice spanned by w_, and maps equal to
/// zero form the sublattice zero_lat_. Generators are the columns of w_ and
/// the presentation divides them by zero_lat_.
class HomGroup {
public:
  HomGroup(AbGroup src, AbGroup tgt)
      : src_(std::move(src)), tgt_(std::move(tgt)) {
    const std::size_t n = src_.gens(), q = tgt_.gens();
    // vec(F * rels) = (rels^T kron I) vec F must be expressible by target
    // relations columnwise; project that kernel onto the vec(F) block.
    IntMatrix well_defined_sys =
        hstack(kron(src_.rels().transpose(), IntMatrix::identity(q)),
               kron(IntMatrix::identity(src_.rels().cols()), tgt_.rels()));
    IntMatrix k = kernel_basis(well_defined_sys);
    w_ = k.block(0, 0, n * q, k.cols());
    zero_lat_ = kron(IntMatrix::identity(n), tgt_.rels());
    base_ = AbGroup(w_.cols(), preimage_lattice(w_, zero_lat_));
    coord_form_ = hnf(hstack(w_, zero_lat_));
    gen_reps_.reserve(w_.cols());
    for (std::size_t j = 0; j < w_.cols(); ++j)
      gen_reps_.emplace_back(src_, tgt_, unvec(w_.col(j), q, n));
  }

  const AbGroup& src() const noexcept { return src_; }
  const AbGroup& tgt() const noexcept { return tgt_; }

  /// Presentation of the hom group itself.
  const AbGroup& base() const noexcept { return base_; }

  /// One representative map per generator of base().
  const std::vector<Hom>& gen_reps() const noexcept { return gen_reps_; }

  /// Integer combination of the generator representatives.
  Hom from_coords(const IntVec& c) const {
    if (c.size() != base_.gens())
      throw InputError("HomGroup::from_coords: wrong coordinate length");
    IntVec v(w_.rows(), Integer(0));
    for (std::size_t j = 0; j < w_.cols(); ++j)
      for (std::size_t i = 0; i < w_.rows(); ++i) v[i] += w_(i, j) * c[j];
    return Hom(src_, tgt_, unvec(v, tgt_.gens(), src_.gens()));
  }

  /// Coordinates of a map in base(). Every well-defined map is reachable,
  /// so failure here means the map does not belong to this hom group.
  IntVec coords_of(const Hom& f) const {
    if (!f.src().same_presentation(src_) || !f.tgt().same_presentation(tgt_))
      throw InputError("HomGroup::coords_of: map has different endpoints");
    auto sol = hnf_solve(coord_form_, vec(f.mat()));
    if (!sol)
      throw Error("HomGroup::coords_of: well-defined map not in generator "
                  "span; hom group construction is broken");
    return IntVec(sol->begin(), sol->begin() + base_.gens());
  }

private:
  AbGroup src_, tgt_;
  AbGroup base_;
  IntMatrix w_;
  IntMatrix zero_lat_;
  HNFResult coord_form_;
  std::vector<Hom> gen_reps_;
};

inline HomGroup hom_group(const AbGroup& src, const AbGroup& tgt) {
  return HomGroup(src, tgt);
}

inline IntVec element_coords(const HomGroup& hg, const Hom& f) {
  return hg.coords_of(f);
}

/// Matrix of precomposition with `along` between two presented hom groups.
inline Hom hom_restriction(const HomGroup& dom, const HomGroup& cod,
                           const Hom& along) {
  if (!along.tgt().same_presentation(dom.src()) ||
      !along.src().same_presentation(cod.src()) ||
      !dom.tgt().same_presentation(cod.tgt()))
    throw InputError("hom_restriction: hom groups do not fit the map");
  IntMatrix m(cod.base().gens(), dom.base().gens());
  for (std::size_t j = 0; j < dom.base().gens(); ++j)
    m.set_col(j, cod.coords_of(hom_compose(dom.gen_reps()[j], along)));
  return Hom(dom.base(), cod.base(), m);
}

/// Two-stage free presentation of a group: free_cover surjects onto the
/// target with its generators, and the kernel of that surjection is free on
/// the canonical Hermite basis of the relation lattice.
struct FreePresentation {
  AbGroup target;
  AbGroup free_cover;  // free on target.gens() generators
  AbGroup kernel;      // free on the relation-lattice basis
  Hom proj;            // free_cover -> target, generator to generator
  Hom kernel_incl;     // kernel -> free_cover, injective
};

inline FreePresentation free_presentation(const AbGroup& g) {
  const std::size_t n = g.gens();
  const HNFResult& f = g.rel_hnf();
  const std::size_t k = f.rank();
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < k; ++j) nonzero.push_back(j);
  IntMatrix basis = f.h.select_cols(nonzero);

  AbGroup cover = AbGroup::free(n);
  AbGroup kernel = AbGroup::free(k);
  Hom proj(cover, g, IntMatrix::identity(n));
  Hom incl(kernel, cover, basis);
  return {g, std::move(cover), std::move(kernel), std::move(proj),
          std::move(incl)};
}

}  // namespace abext
