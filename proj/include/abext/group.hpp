#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abext/normal_form.hpp"

namespace abext {

/// Finitely presented abelian group: `gens` generators subject to the
/// columns of `rels` (one relation per column, `gens` rows). The Smith and
/// Hermite data of the relation matrix are computed eagerly and cached, so
/// membership tests and invariants never recompute normal forms.
class AbGroup {
public:
  /// The zero group.
  AbGroup() : AbGroup(0, IntMatrix(0, 0)) {}

  AbGroup(std::size_t gens, IntMatrix rels)
      : gens_(gens), rels_(std::move(rels)) {
    if (rels_.rows() != gens_)
      throw InputError("AbGroup: relation matrix must have one row per "
                       "generator (got " + std::to_string(rels_.rows()) +
                       " rows for " + std::to_string(gens_) + " generators)");
    rel_hnf_ = hnf(rels_);
    SNFResult s = snf(rels_);
    snf_u_ = s.u;
    IntVec diag = s.diagonal();
    std::size_t torsion_rank = 0;
    for (std::size_t i = 0; i < gens_; ++i) {
      Integer d = i < diag.size() ? diag[i] : Integer(0);
      snf_diag_.push_back(d);
      if (d == 0) continue;
      ++torsion_rank;
      if (d > 1) factors_.push_back(d);
    }
    free_rank_ = gens_ - torsion_rank;
  }

  static AbGroup zero() { return AbGroup(); }

  static AbGroup free(std::size_t rank) {
    return AbGroup(rank, IntMatrix(rank, 0));
  }

  /// Z/n for n >= 1 on one generator; n = 0 gives Z.
  static AbGroup cyclic(const Integer& n) {
    if (n < 0) throw InputError("cyclic: modulus must be nonnegative");
    if (n == 0) return free(1);
    IntMatrix r(1, 1);
    r(0, 0) = n;
    return AbGroup(1, r);
  }

  /// Z^rank + Z/f1 + Z/f2 + ... on rank + #factors generators.
  static AbGroup from_factors(std::size_t rank, const IntVec& factors) {
    const std::size_t n = rank + factors.size();
    IntMatrix r(n, factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i] < 1)
        throw InputError("from_factors: torsion factors must be positive");
      r(rank + i, i) = factors[i];
    }
    return AbGroup(n, r);
  }

  std::size_t gens() const noexcept { return gens_; }
  const IntMatrix& rels() const noexcept { return rels_; }
  const HNFResult& rel_hnf() const noexcept { return rel_hnf_; }

  std::size_t free_rank() const noexcept { return free_rank_; }

  /// Invariant factors d1 | d2 | ..., each > 1; unit factors dropped.
  const IntVec& invariant_factors() const noexcept { return factors_; }

  bool is_zero() const noexcept {
    return free_rank_ == 0 && factors_.empty();
  }
  bool is_free() const noexcept { return factors_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }

  /// Number of elements, if finite.
  std::optional<Integer> order() const {
    if (!is_finite()) return std::nullopt;
    Integer n = 1;
    for (const auto& d : factors_) n *= d;
    return n;
  }

  /// Smallest e >= 1 with e*x = 0 for all x, if finite exponent.
  std::optional<Integer> exponent() const {
    if (!is_finite()) return std::nullopt;
    return factors_.empty() ? Integer(1) : factors_.back();
  }

  /// Structural identity of presentations: same generator count and literal
  /// relation matrix. This is the notion of "same group object" everywhere
  /// maps are composed; isomorphic groups with different presentations are
  /// distinct objects.
  bool same_presentation(const AbGroup& o) const {
    return gens_ == o.gens_ && rels_ == o.rels_;
  }

  /// True iff v is a consequence of the relations (the zero element).
  bool in_relation_lattice(const IntVec& v) const {
    if (v.size() != gens_)
      throw InputError("in_relation_lattice: wrong coordinate length");
    return lattice_member(rel_hnf_, v);
  }

  /// Canonical coset representative: coordinates reduced against the pivots
  /// of the cached relation Hermite form. Cosmetic; equality goes through
  /// in_relation_lattice on differences.
  IntVec reduce(IntVec v) const {
    if (v.size() != gens_) throw InputError("reduce: wrong coordinate length");
    const IntMatrix& h = rel_hnf_.h;
    for (std::size_t j = rel_hnf_.rank(); j-- > 0;) {
      const std::size_t r = rel_hnf_.pivot_rows[j];
      Integer q = floor_div(v[r], h(r, j));
      if (q == 0) continue;
      for (std::size_t i = 0; i <= r; ++i) v[i] -= q * h(i, j);
    }
    return v;
  }

  std::string describe() const {
    std::string s;
    if (free_rank_ > 0) {
      s += "Z";
      if (free_rank_ > 1) s += "^" + std::to_string(free_rank_);
    }
    for (const auto& d : factors_) {
      if (!s.empty()) s += " + ";
      s += "Z/" + d.str();
    }
    return s.empty() ? "0" : s;
  }

  /// Row transform of the cached Smith form of rels: u * rels * v = d.
  const IntMatrix& snf_row_transform() const noexcept { return snf_u_; }
  /// Per-generator Smith diagonal padded with zeros to gens() entries.
  const IntVec& snf_padded_diagonal() const noexcept { return snf_diag_; }

private:
  std::size_t gens_;
  IntMatrix rels_;
  HNFResult rel_hnf_;
  IntMatrix snf_u_;
  IntVec snf_diag_;
  IntVec factors_;
  std::size_t free_rank_ = 0;
};

inline AbGroup make_group(std::size_t gens, IntMatrix rels) {
  return AbGroup(gens, std::move(rels));
}

/// Element of a finitely presented group, stored as an exact coordinate
/// vector over the generators. Two elements are equal iff their difference
/// lies in the relation lattice.
struct GroupElement {
  AbGroup group;
  IntVec coords;

  GroupElement(AbGroup g, IntVec c) : group(std::move(g)), coords(std::move(c)) {
    if (coords.size() != group.gens())
      throw InputError("GroupElement: coordinate length differs from "
                       "generator count");
  }

  static GroupElement zero(const AbGroup& g) {
    return GroupElement(g, IntVec(g.gens(), Integer(0)));
  }

  bool is_zero() const { return group.in_relation_lattice(coords); }
};

inline void check_same_group(const GroupElement& a, const GroupElement& b,
                             const char* op) {
  if (!a.group.same_presentation(b.group))
    throw InputError(std::string(op) + ": elements of different groups");
}

inline bool element_equal(const GroupElement& a, const GroupElement& b) {
  check_same_group(a, b, "element_equal");
  IntVec diff(a.coords.size());
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] = a.coords[i] - b.coords[i];
  return a.group.in_relation_lattice(diff);
}

inline GroupElement element_add(const GroupElement& a, const GroupElement& b) {
  check_same_group(a, b, "element_add");
  IntVec c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  return GroupElement(a.group, std::move(c));
}

inline GroupElement element_neg(const GroupElement& a) {
  IntVec c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
  return GroupElement(a.group, std::move(c));
}

inline GroupElement element_scale(const Integer& n, const GroupElement& a) {
  IntVec c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = n * a.coords[i];
  return GroupElement(a.group, std::move(c));
}

/// All elements of a finite group, one representative per coset, reached by
/// walking Smith coordinates. Throws on infinite groups; `limit` guards
/// against accidental blowups.
inline std::vector<GroupElement> enumerate_elements(const AbGroup& g,
                                                    std::size_t limit = 4096) {
  auto ord = g.order();
  if (!ord)
    throw InputError("enumerate_elements: group is infinite");
  if (*ord > limit)
    throw InputError("enumerate_elements: order " + ord->str() +
                     " exceeds limit " + std::to_string(limit));

  // Smith coordinates y = u * x range over the diagonal boxes; map each box
  // point back through u^{-1} by exact solving.
  const IntVec& diag = g.snf_padded_diagonal();
  HNFResult u_form = hnf(g.snf_row_transform());
  std::vector<GroupElement> out;
  out.reserve(ord->convert_to<std::size_t>());
  IntVec y(g.gens(), Integer(0));
  for (;;) {
    auto x = hnf_solve(u_form, y);
    if (!x)
      throw Error("enumerate_elements: Smith transform failed to invert");
    out.emplace_back(g, *x);
    std::size_t i = 0;
    for (; i < g.gens(); ++i) {
      ++y[i];
      if (y[i] < diag[i]) break;
      y[i] = 0;
    }
    if (i == g.gens()) break;
  }
  return out;
}

}  // namespace abext
