#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/cone.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/permutohedron.hpp"
#include "ranktest/structural.hpp"
#include "ranktest/submodular.hpp"

namespace ranktest {

// Reference constants the self-check censuses are pinned against.
namespace expected {
inline constexpr long kPartitionsS3 = 203;
inline constexpr long kPreconvexS3 = 40;
inline constexpr long kConvexS3 = 22;
inline constexpr long kStructuralS3 = 22;
inline constexpr long kMssModelsN3 = 15;
inline constexpr long kMssModelsN4 = 1218;
inline constexpr long kRaysN3 = 5;
inline constexpr long kRaysN4 = 37;
inline constexpr long kFacesN3 = 22;
inline constexpr long kFacesN4 = 22108;
inline const std::vector<long long> kFVectorN3 = {1, 5, 9, 6, 1};
inline const std::vector<long long> kFVectorN4 = {1,    37,   356,  1596,
                                                  3985, 5980, 5560, 3212,
                                                  1128, 228,  24,   1};
inline constexpr long kRaysN5 = 117978;
inline constexpr long kRayOrbitsN5 = 1319;
inline const std::vector<long> kPathClassCounts = {5, 14, 42, 132, 429};  // n=3..7
inline const std::vector<long> kCycleClassCounts = {6, 20, 70, 252};      // n=3..6
}  // namespace expected

// Set partitions of {0,...,k-1} as restricted growth strings.
template <class F>
void for_each_set_partition(int k, F&& visit) {
  std::vector<int> block(k, 0);
  auto rec = [&](auto&& self, int i, int max_used) -> void {
    if (i == k) {
      visit(block);
      return;
    }
    for (int b = 0; b <= max_used + 1; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(max_used, b));
    }
  };
  rec(rec, 0, -1);
}

struct PartitionCensus {
  long total = 0;
  long preconvex = 0;
  long convex = 0;
  long convex_not_preconvex = 0;  // stays 0: convexity refines (PC)
  long structural = 0;
  std::vector<CIModel> convex_models;
};

// Walks all 203 set partitions of S_3 through the test hierarchy.
inline PartitionCensus partition_census_s3() {
  const int n = 3;
  std::vector<Permutation> perms;
  for_each_permutation(n, [&](const Permutation& p) { perms.push_back(p); });

  PartitionCensus out;
  for_each_set_partition(static_cast<int>(perms.size()), [&](const std::vector<int>& block) {
    ++out.total;
    int blocks = 1 + *std::max_element(block.begin(), block.end());
    std::vector<std::vector<Permutation>> classes(blocks);
    for (std::size_t i = 0; i < perms.size(); ++i)
      classes[block[i]].push_back(perms[i]);
    RankTestPartition t = RankTestPartition::from_classes(n, std::move(classes));
    bool pc = is_preconvex(t);
    if (pc) ++out.preconvex;
    if (is_convex(t)) {
      ++out.convex;
      if (!pc) ++out.convex_not_preconvex;
      out.convex_models.push_back(model_from_partition(t));
    }
  });
  for (const CIModel& M : out.convex_models)
    if (is_structural(M)) ++out.structural;
  return out;
}

// Number of distinct tight models over every family of nonempty subsets of
// [n] (2^(2^n - 1) families).
inline long mss_census(int n) {
  if (n < 2 || n > 4)
    throw UnsupportedN("MSS census supported for n = 2, 3, 4");
  const int members = (1 << n) - 1;  // candidate sets 1..2^n-1
  const int nstmts = statement_count(n);
  std::vector<CIStatement> universe = statement_universe(n);

  // meets[I] = which candidate members intersect I.
  std::vector<std::uint32_t> meets(std::size_t{1} << n, 0);
  for (Subset I = 0; I < (Subset{1} << n); ++I)
    for (int t = 0; t < members; ++t)
      if (static_cast<Subset>(t + 1) & I) meets[I] |= std::uint32_t{1} << t;

  std::set<std::uint32_t> models;
  std::vector<int> w(std::size_t{1} << n);
  for (std::uint32_t fam = 0; fam < (std::uint32_t{1} << members); ++fam) {
    for (Subset I = 0; I < (Subset{1} << n); ++I)
      w[I] = __builtin_popcount(fam & meets[I]);
    std::uint32_t key = 0;
    for (int s = 0; s < nstmts; ++s) {
      const CIStatement& st = universe[s];
      Subset K = st.cond;
      if (w[with_element(K, st.i)] + w[with_element(K, st.j)] ==
          w[with_element(with_element(K, st.i), st.j)] + w[K])
        key |= std::uint32_t{1} << s;
    }
    models.insert(key);
  }
  return static_cast<long>(models.size());
}

struct ConeCensus {
  int n = 0;
  std::vector<std::vector<long long>> rays;
  std::vector<long long> f_vector;
  long face_count = 0;
  std::vector<long> orbit_sizes;
};

inline ConeCensus cone_census(int n, bool with_faces, bool with_orbits) {
  ConeDescription cone = elementary_facets(n);
  ConeCensus out;
  out.n = n;
  out.rays = extreme_rays(cone);
  if (with_faces) {
    FaceCensus faces = face_lattice(cone);
    out.f_vector = faces.f_vector;
    out.face_count = static_cast<long>(faces.faces.size());
  }
  if (with_orbits) out.orbit_sizes = ray_orbit_sizes(cone, out.rays);
  return out;
}

}  // namespace ranktest
