#pragma once

// Shared corpus of small groups, maps, and short exact sequences used by the
// mid-level and top-level test suites.

#include <vector>

#include "abext/hom_group.hpp"
#include "abext/ses.hpp"
#include "gen.hpp"

namespace corpus {

using namespace abext;

inline const std::vector<AbGroup>& small_groups() {
  static const std::vector<AbGroup> gs = {
      AbGroup::zero(),
      AbGroup::cyclic(2),
      AbGroup::cyclic(3),
      AbGroup::cyclic(4),
      AbGroup::cyclic(6),
      AbGroup::cyclic(8),
      AbGroup::from_factors(0, {2, 2}),
      AbGroup::from_factors(0, {2, 4}),
      AbGroup::free(1),
      AbGroup::from_factors(1, {2}),
      AbGroup(2, IntMatrix{{2, 1}, {0, 2}}),  // Z/4 presented off-diagonal
  };
  return gs;
}

/// Small groups that are finite (safe to enumerate).
inline const std::vector<AbGroup>& small_finite_groups() {
  static const std::vector<AbGroup> gs = [] {
    std::vector<AbGroup> out;
    for (const auto& g : small_groups())
      if (g.is_finite()) out.push_back(g);
    return out;
  }();
  return gs;
}

inline AbGroup rand_group(gen::Rng& rng) {
  const auto& gs = small_groups();
  return gs[rng() % gs.size()];
}

inline AbGroup rand_finite_group(gen::Rng& rng) {
  const auto& gs = small_finite_groups();
  return gs[rng() % gs.size()];
}

inline Hom rand_hom(gen::Rng& rng, const AbGroup& src, const AbGroup& tgt) {
  HomGroup hg(src, tgt);
  IntVec c(hg.base().gens());
  for (auto& v : c) v = gen::rand_int(rng, -6, 6);
  return hg.from_coords(c);
}

/// Change of coordinates on the middle group by a unimodular pair; the
/// result is the same extension wearing a different presentation, with the
/// witnessing path data returned alongside.
struct RepresentedSes {
  Ses ses;
  PathData to_original;  // re-presented -> original
};

inline RepresentedSes represent_middle(gen::Rng& rng, const Ses& e) {
  const std::size_t n = e.middle().gens();
  auto p = gen::rand_unimodular_pair(rng, n);
  AbGroup mid(n, p.u * e.middle().rels());
  Ses re(Hom(e.left(), mid, p.u * e.inclusion().mat()),
         Hom(mid, e.right(), e.projection().mat() * p.u_inv));
  PathData back(re, e, Hom(mid, e.middle(), p.u_inv),
                Hom(e.middle(), mid, p.u));
  return {re, back};
}

/// Hand-built exact sequences exercising distinct windows.
inline std::vector<Ses> sample_sess() {
  std::vector<Ses> out;
  AbGroup z = AbGroup::free(1);
  AbGroup z2 = AbGroup::cyclic(2), z4 = AbGroup::cyclic(4);
  AbGroup z8 = AbGroup::cyclic(8), z3 = AbGroup::cyclic(3);
  AbGroup z9 = AbGroup::cyclic(9);
  AbGroup z2z2 = AbGroup::from_factors(0, {2, 2});
  AbGroup z2z4 = AbGroup::from_factors(0, {2, 4});

  out.push_back(Ses(Hom(z2, z4, IntMatrix{{2}}), Hom(z4, z2, IntMatrix{{1}})));
  out.push_back(Ses(Hom(z3, z9, IntMatrix{{3}}), Hom(z9, z3, IntMatrix{{1}})));
  out.push_back(Ses(Hom(z2, z8, IntMatrix{{4}}), Hom(z8, z4, IntMatrix{{1}})));
  out.push_back(Ses(Hom(z, z, IntMatrix{{2}}), Hom(z, z2, IntMatrix{{1}})));
  out.push_back(
      Ses(Hom(z2z2, z2z4, IntMatrix{{1, 0}, {0, 2}}),
          Hom(z2z4, z2, IntMatrix{{0, 1}})));
  out.push_back(trivial_ses(z4, z2));
  out.push_back(trivial_ses(z2, AbGroup::zero()));
  return out;
}

}  // namespace corpus
