#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "abext/group.hpp"

namespace abext {

/// Generating set of the preimage lattice {x : mat * x lies in the lattice
/// spanned by the columns of lat}. Computed by projecting a kernel basis of
/// the stacked system [mat | lat] onto the x block.
inline IntMatrix preimage_lattice(const IntMatrix& mat, const IntMatrix& lat) {
  if (mat.rows() != lat.rows())
    throw InputError("preimage_lattice: row counts differ");
  IntMatrix k = kernel_basis(hstack(mat, lat));
  return k.block(0, 0, mat.cols(), k.cols());
}

/// Homomorphism between finitely presented groups, stored as an integer
/// matrix on generators (one column per source generator, target
/// coordinates). Construction validates well-definedness: the matrix must
/// send every source relation into the target relation lattice. Two homs are
/// equal iff they differ by target relations columnwise.
class Hom {
public:
  Hom(AbGroup src, AbGroup tgt, IntMatrix mat)
      : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(mat)) {
    if (mat_.rows() != tgt_.gens() || mat_.cols() != src_.gens())
      throw InputError("Hom: matrix is " + std::to_string(mat_.rows()) + "x" +
                       std::to_string(mat_.cols()) + ", expected " +
                       std::to_string(tgt_.gens()) + "x" +
                       std::to_string(src_.gens()));
    IntMatrix sent = mat_ * src_.rels();
    for (std::size_t j = 0; j < sent.cols(); ++j)
      if (!tgt_.in_relation_lattice(sent.col(j)))
        throw ValidationError(
            "Hom: matrix does not respect source relation " +
            std::to_string(j) + "; the map is not well defined");
  }

  static Hom identity(const AbGroup& g) {
    return Hom(g, g, IntMatrix::identity(g.gens()));
  }

  static Hom zero(const AbGroup& src, const AbGroup& tgt) {
    return Hom(src, tgt, IntMatrix(tgt.gens(), src.gens()));
  }

  const AbGroup& src() const noexcept { return src_; }
  const AbGroup& tgt() const noexcept { return tgt_; }
  const IntMatrix& mat() const noexcept { return mat_; }

  GroupElement apply(const GroupElement& x) const {
    if (!x.group.same_presentation(src_))
      throw InputError("Hom::apply: element lives in a different group");
    return GroupElement(tgt_, mat_ * x.coords);
  }

  bool same_endpoints(const Hom& o) const {
    return src_.same_presentation(o.src_) && tgt_.same_presentation(o.tgt_);
  }

  /// Equality as maps: matrices agree columnwise modulo target relations.
  bool equal_to(const Hom& o) const {
    if (!same_endpoints(o))
      throw InputError("Hom::equal_to: endpoint groups differ");
    IntMatrix diff = mat_ - o.mat_;
    for (std::size_t j = 0; j < diff.cols(); ++j)
      if (!tgt_.in_relation_lattice(diff.col(j))) return false;
    return true;
  }

  bool is_zero_map() const {
    for (std::size_t j = 0; j < mat_.cols(); ++j)
      if (!tgt_.in_relation_lattice(mat_.col(j))) return false;
    return true;
  }

private:
  AbGroup src_, tgt_;
  IntMatrix mat_;
};

inline Hom hom_compose(const Hom& g, const Hom& f) {
  if (!g.src().same_presentation(f.tgt()))
    throw InputError("hom_compose: middle groups differ");
  return Hom(f.src(), g.tgt(), g.mat() * f.mat());
}

inline Hom hom_add(const Hom& f, const Hom& g) {
  if (!f.same_endpoints(g)) throw InputError("hom_add: endpoint groups differ");
  return Hom(f.src(), f.tgt(), f.mat() + g.mat());
}

inline Hom hom_neg(const Hom& f) {
  return Hom(f.src(), f.tgt(), -f.mat());
}

inline Hom hom_sub(const Hom& f, const Hom& g) {
  if (!f.same_endpoints(g)) throw InputError("hom_sub: endpoint groups differ");
  return Hom(f.src(), f.tgt(), f.mat() - g.mat());
}

/// Kernel, image, and cokernel of one map, with the connecting homs.
/// The three construction routes share preimage_lattice so subgroup
/// membership is always decided by the same Hermite solves.
struct KernelImageCokernel {
  AbGroup kernel;
  Hom kernel_incl;   // kernel -> src
  AbGroup image;
  Hom image_incl;    // image -> tgt
  Hom image_proj;    // src -> image, the factored corestriction
  AbGroup cokernel;
  Hom cokernel_proj;  // tgt -> cokernel
};

inline KernelImageCokernel kernel_image_cokernel(const Hom& f) {
  const AbGroup& src = f.src();
  const AbGroup& tgt = f.tgt();

  // Columns of pre generate every x with f(x) = 0 in the target group.
  IntMatrix pre = preimage_lattice(f.mat(), tgt.rels());
  AbGroup kernel(pre.cols(), preimage_lattice(pre, src.rels()));
  Hom kernel_incl(kernel, src, pre);

  // The image keeps one generator per source generator; its relations are
  // exactly the kernel lattice of f.
  AbGroup image(src.gens(), pre);
  Hom image_incl(image, tgt, f.mat());
  Hom image_proj(src, image, IntMatrix::identity(src.gens()));

  AbGroup cokernel(tgt.gens(), hstack(tgt.rels(), f.mat()));
  Hom cokernel_proj(tgt, cokernel, IntMatrix::identity(tgt.gens()));

  return {std::move(kernel), std::move(kernel_incl), std::move(image),
          std::move(image_incl), std::move(image_proj), std::move(cokernel),
          std::move(cokernel_proj)};
}

inline bool is_injective(const Hom& f) {
  IntMatrix pre = preimage_lattice(f.mat(), f.tgt().rels());
  for (std::size_t j = 0; j < pre.cols(); ++j)
    if (!f.src().in_relation_lattice(pre.col(j))) return false;
  return true;
}

inline bool is_surjective(const Hom& f) {
  return AbGroup(f.tgt().gens(), hstack(f.tgt().rels(), f.mat())).is_zero();
}

/// Exactness of src -f-> mid -g-> tgt at mid: the composite vanishes and
/// every kernel generator of g is hit by f.
inline bool is_exact_at(const Hom& f, const Hom& g) {
  if (!g.src().same_presentation(f.tgt()))
    throw InputError("is_exact_at: maps do not compose");
  if (!hom_compose(g, f).is_zero_map()) return false;
  IntMatrix ker_g = preimage_lattice(g.mat(), g.tgt().rels());
  IntMatrix hit = hstack(f.mat(), f.tgt().rels());
  HNFResult hit_form = hnf(hit);
  for (std::size_t j = 0; j < ker_g.cols(); ++j)
    if (!lattice_member(hit_form, ker_g.col(j))) return false;
  return true;
}

/// Direct sum with its four structure maps. Injections and projections are
/// coordinate block maps; the summands keep their own presentations.
struct Biproduct {
  AbGroup group;
  Hom in_first;    // left summand  -> sum
  Hom in_second;   // right summand -> sum
  Hom pr_first;    // sum -> left summand
  Hom pr_second;   // sum -> right summand
};

inline Biproduct biproduct(const AbGroup& a, const AbGroup& b) {
  const std::size_t na = a.gens(), nb = b.gens();
  AbGroup sum(na + nb, block_diag(a.rels(), b.rels()));
  IntMatrix ia = vstack(IntMatrix::identity(na), IntMatrix(nb, na));
  IntMatrix ib = vstack(IntMatrix(na, nb), IntMatrix::identity(nb));
  IntMatrix pa = hstack(IntMatrix::identity(na), IntMatrix(na, nb));
  IntMatrix pb = hstack(IntMatrix(nb, na), IntMatrix::identity(nb));
  return {sum, Hom(a, sum, ia), Hom(b, sum, ib), Hom(sum, a, pa),
          Hom(sum, b, pb)};
}

/// x -> (x, x) into the biproduct of g with itself.
inline Hom diagonal_hom(const AbGroup& g) {
  Biproduct bp = biproduct(g, g);
  IntMatrix m = vstack(IntMatrix::identity(g.gens()),
                       IntMatrix::identity(g.gens()));
  return Hom(g, bp.group, m);
}

/// (x, y) -> x + y out of the biproduct of g with itself.
inline Hom codiagonal_hom(const AbGroup& g) {
  Biproduct bp = biproduct(g, g);
  IntMatrix m = hstack(IntMatrix::identity(g.gens()),
                       IntMatrix::identity(g.gens()));
  return Hom(bp.group, g, m);
}

}  // namespace abext
