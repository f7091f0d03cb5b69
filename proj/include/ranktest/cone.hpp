#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/subset.hpp"

namespace ranktest {

// Fixed 128-bit set; wide enough for the 80 elementary facets at n = 5.
struct Bits128 {
  std::uint64_t lo = 0, hi = 0;

  void set(int b) { (b < 64 ? lo : hi) |= std::uint64_t{1} << (b & 63); }
  bool test(int b) const {
    return ((b < 64 ? lo : hi) >> (b & 63)) & 1u;
  }
  Bits128 operator&(const Bits128& o) const { return {lo & o.lo, hi & o.hi}; }
  bool subset_of(const Bits128& o) const {
    return (lo & ~o.lo) == 0 && (hi & ~o.hi) == 0;
  }
  int count() const {
    return __builtin_popcountll(lo) + __builtin_popcountll(hi);
  }
  bool operator==(const Bits128&) const = default;
};

// The cone of submodular functions in the modular gauge w(empty) = w({i}) = 0:
// coordinates are the subsets with at least two elements, one facet per
// elementary inequality (indexing matches statement_index).
struct ConeDescription {
  int n = 0;
  int dim = 0;
  std::vector<Subset> coords;
  std::vector<int> coord_of;  // mask -> coordinate, -1 for gauged-out sets
  std::vector<std::vector<long long>> facet_normals;
};

inline ConeDescription elementary_facets(int n) {
  if (n < 2 || n > 5)
    throw UnsupportedN("submodular cone supported for 2 <= n <= 5");
  ConeDescription cone;
  cone.n = n;
  cone.coord_of.assign(std::size_t{1} << n, -1);
  for (Subset S = 0; S < (Subset{1} << n); ++S)
    if (set_size(S) >= 2) {
      cone.coord_of[S] = static_cast<int>(cone.coords.size());
      cone.coords.push_back(S);
    }
  cone.dim = static_cast<int>(cone.coords.size());
  for (const CIStatement& s : statement_universe(n)) {
    std::vector<long long> row(cone.dim, 0);
    auto add = [&](Subset S, long long v) {
      if (cone.coord_of[S] >= 0) row[cone.coord_of[S]] += v;
    };
    add(with_element(s.cond, s.i), +1);
    add(with_element(s.cond, s.j), +1);
    add(with_element(with_element(s.cond, s.i), s.j), -1);
    add(s.cond, -1);
    cone.facet_normals.push_back(std::move(row));
  }
  return cone;
}

namespace detail {

using int128 = __int128;

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a), b = abs128(b);
  while (b) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline int128 dot128(const std::vector<long long>& a,
                     const std::vector<long long>& b) {
  int128 s = 0;
  for (std::size_t t = 0; t < a.size(); ++t)
    s += static_cast<int128>(a[t]) * b[t];
  return s;
}

inline std::vector<long long> primitive(std::vector<int128> v) {
  int128 g = 0;
  for (int128 x : v) g = gcd128(g, x);
  if (g == 0) g = 1;
  std::vector<long long> out(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    int128 q = v[t] / g;
    if (q > INT64_MAX || q < INT64_MIN)
      throw Error("extreme ray coordinate overflowed 64 bits");
    out[t] = static_cast<long long>(q);
  }
  return out;
}

// Exact rank by fraction-free elimination.
inline int integer_rank(std::vector<std::vector<BigInt>> M) {
  if (M.empty()) return 0;
  std::size_t rows = M.size(), cols = M[0].size();
  std::size_t rank = 0;
  BigInt denom = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && M[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(M[rank], M[pivot]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k)
        M[r][k] = (M[rank][c] * M[r][k] - M[r][c] * M[rank][k]) / denom;
      M[r][c] = 0;
    }
    denom = M[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

inline int rank_of_rows(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<BigInt>> M;
  M.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    row.reserve(r.size());
    for (long long x : r) row.emplace_back(static_cast<long>(x));
    M.push_back(std::move(row));
  }
  return integer_rank(std::move(M));
}

struct Ray {
  std::vector<long long> x;
  Bits128 zero;  // tight facets, processed ones only
};

}  // namespace detail

// Progress hook for long runs: (facets done, facets total, current ray count).
using ConeProgress = std::function<void(int, int, std::size_t)>;

// Extreme rays of the pointed cone {x : Ax >= 0} by incremental double
// description in exact integer arithmetic: seed with a simplicial subcone
// from dim independent facets, insert the remaining facets ordered by how
// many seed rays they cut, and combine only combinatorially adjacent pairs.
// Rays come out gcd-reduced and sorted.
inline std::vector<std::vector<long long>> extreme_rays(
    const ConeDescription& cone, const ConeProgress& progress = {}) {
  using namespace detail;
  const int d = cone.dim;
  const int m = static_cast<int>(cone.facet_normals.size());

  // Simplicial seed: pick d independent rows and invert them over Q.
  std::vector<std::vector<Rational>> elim;
  std::vector<int> basis_rows;
  for (int f = 0; f < m && static_cast<int>(basis_rows.size()) < d; ++f) {
    std::vector<Rational> reduced(d);
    for (int c = 0; c < d; ++c)
      reduced[c] = Rational(static_cast<long>(cone.facet_normals[f][c]));
    for (std::size_t b = 0; b < elim.size(); ++b) {
      int lead = -1;
      for (int c = 0; c < d; ++c)
        if (elim[b][c] != 0) {
          lead = c;
          break;
        }
      if (reduced[lead] != 0) {
        Rational factor = reduced[lead] / elim[b][lead];
        for (int c = 0; c < d; ++c) reduced[c] -= factor * elim[b][c];
      }
    }
    bool zero = std::all_of(reduced.begin(), reduced.end(),
                            [](const Rational& q) { return q == 0; });
    if (!zero) {
      elim.push_back(std::move(reduced));
      basis_rows.push_back(f);
    }
  }
  if (static_cast<int>(basis_rows.size()) < d)
    throw Error("cone is not pointed: facet normals do not span");

  // Invert the basis block by Gauss-Jordan; column j solves A_B x = e_j.
  std::vector<std::vector<Rational>> aug(d, std::vector<Rational>(2 * d, 0));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c)
      aug[r][c] = Rational(static_cast<long>(cone.facet_normals[basis_rows[r]][c]));
    aug[r][d + r] = 1;
  }
  for (int c = 0; c < d; ++c) {
    int pivot = c;
    while (aug[pivot][c] == 0) ++pivot;
    std::swap(aug[c], aug[pivot]);
    Rational pv = aug[c][c];
    for (int k = 0; k < 2 * d; ++k) aug[c][k] /= pv;
    for (int r = 0; r < d; ++r) {
      if (r == c || aug[r][c] == 0) continue;
      Rational f = aug[r][c];
      for (int k = 0; k < 2 * d; ++k) aug[r][k] -= f * aug[c][k];
    }
  }

  std::vector<Ray> rays(d);
  for (int j = 0; j < d; ++j) {
    BigInt scale = 1;
    for (int r = 0; r < d; ++r) scale = lcm(scale, aug[r][d + j].get_den());
    std::vector<int128> v(d);
    for (int r = 0; r < d; ++r) {
      BigInt num = BigInt(aug[r][d + j].get_num()) * scale /
                   BigInt(aug[r][d + j].get_den());
      if (!num.fits_slong_p()) throw Error("seed ray overflow");
      v[r] = num.get_si();
    }
    rays[j].x = primitive(std::move(v));
  }

  std::vector<bool> processed(m, false);
  for (int f : basis_rows) processed[f] = true;
  auto compute_zero = [&](Ray& r) {
    r.zero = Bits128{};
    for (int f = 0; f < m; ++f)
      if (processed[f] && dot128(cone.facet_normals[f], r.x) == 0) r.zero.set(f);
  };
  for (Ray& r : rays) compute_zero(r);

  // Remaining facets, ordered by the number of seed rays they cut.
  std::vector<std::pair<int, int>> order;
  for (int f = 0; f < m; ++f) {
    if (processed[f]) continue;
    int violated = 0;
    for (const Ray& r : rays)
      if (dot128(cone.facet_normals[f], r.x) < 0) ++violated;
    order.emplace_back(violated, f);
  }
  std::sort(order.begin(), order.end());

  int done = 0;
  for (auto [ignored, f] : order) {
    if (progress) progress(++done, static_cast<int>(order.size()), rays.size());
    const std::vector<long long>& a = cone.facet_normals[f];
    std::vector<int128> dots(rays.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t t = 0; t < rays.size(); ++t) {
      dots[t] = dot128(a, rays[t].x);
      if (dots[t] > 0)
        plus.push_back(t);
      else if (dots[t] < 0)
        minus.push_back(t);
    }
    processed[f] = true;
    if (minus.empty()) {
      for (std::size_t t = 0; t < rays.size(); ++t)
        if (dots[t] == 0) rays[t].zero.set(f);
      continue;
    }

    std::vector<Ray> fresh;
    for (std::size_t p : plus)
      for (std::size_t q : minus) {
        Bits128 common = rays[p].zero & rays[q].zero;
        if (common.count() < d - 2) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size(); ++t) {
          if (t == p || t == q) continue;
          if (common.subset_of(rays[t].zero)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        std::vector<int128> v(d);
        for (int c = 0; c < d; ++c)
          v[c] = dots[p] * rays[q].x[c] - dots[q] * rays[p].x[c];
        Ray child;
        child.x = primitive(std::move(v));
        fresh.push_back(std::move(child));
      }

    std::vector<Ray> kept;
    kept.reserve(plus.size() + rays.size() - minus.size() + fresh.size());
    for (std::size_t t = 0; t < rays.size(); ++t) {
      if (dots[t] < 0) continue;
      if (dots[t] == 0) rays[t].zero.set(f);
      kept.push_back(std::move(rays[t]));
    }
    for (Ray& r : fresh) {
      compute_zero(r);
      kept.push_back(std::move(r));
    }
    rays = std::move(kept);
  }

  std::vector<std::vector<long long>> out;
  out.reserve(rays.size());
  for (Ray& r : rays) out.push_back(std::move(r.x));
  std::sort(out.begin(), out.end());
  for (const auto& r : out)
    for (int f = 0; f < m; ++f)
      if (dot128(cone.facet_normals[f], r) < 0)
        throw Error("double description produced an infeasible ray");
  return out;
}

// A face, recorded by the extreme rays on it and the facets tight on it.
struct Face {
  std::uint64_t ray_mask = 0;
  Bits128 tight;
  int dim = 0;
};

struct FaceCensus {
  std::vector<std::vector<long long>> rays;
  std::vector<Face> faces;
  std::vector<long long> f_vector;  // counts by cone dimension 0..dim
};

// Every face of a pointed cone is an intersection of facets and is spanned by
// the extreme rays it contains, so closing the full ray set under
// intersection with facet incidence sets enumerates the face lattice.
inline FaceCensus face_lattice(const ConeDescription& cone,
                               bool allow_large = false) {
  if (cone.n > 4 && !allow_large)
    throw UnsupportedN("face lattice beyond n = 4 must be requested explicitly");
  FaceCensus census;
  census.rays = extreme_rays(cone);
  const int m = static_cast<int>(cone.facet_normals.size());
  const std::size_t R = census.rays.size();
  if (R > 64) throw UnsupportedN("face lattice supports at most 64 rays");

  std::vector<std::uint64_t> rays_on(m, 0);
  std::vector<Bits128> ray_tight(R);
  for (std::size_t t = 0; t < R; ++t)
    for (int f = 0; f < m; ++f)
      if (detail::dot128(cone.facet_normals[f], census.rays[t]) == 0) {
        rays_on[f] |= std::uint64_t{1} << t;
        ray_tight[t].set(f);
      }

  std::uint64_t whole = R == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << R) - 1;
  std::map<std::uint64_t, int> seen;
  std::vector<std::uint64_t> queue{whole};
  seen[whole] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint64_t mask = queue[head];
    for (int f = 0; f < m; ++f) {
      std::uint64_t child = mask & rays_on[f];
      if (child == mask) continue;
      if (seen.emplace(child, static_cast<int>(queue.size())).second)
        queue.push_back(child);
    }
  }

  for (std::uint64_t mask : queue) {
    Face face;
    face.ray_mask = mask;
    face.tight = Bits128{};
    bool first = true;
    std::vector<std::vector<long long>> span;
    for (std::size_t t = 0; t < R; ++t)
      if ((mask >> t) & 1) {
        face.tight = first ? ray_tight[t] : (face.tight & ray_tight[t]);
        first = false;
        span.push_back(census.rays[t]);
      }
    if (first) {  // apex
      for (int f = 0; f < m; ++f) face.tight.set(f);
    }
    face.dim = detail::rank_of_rows(span);
    census.faces.push_back(face);
  }

  census.f_vector.assign(cone.dim + 1, 0);
  for (const Face& face : census.faces) ++census.f_vector[face.dim];
  return census;
}

inline CIModel face_to_model(const Face& face, const ConeDescription& cone) {
  CIModel M(cone.n);
  for (int f = 0; f < static_cast<int>(cone.facet_normals.size()); ++f)
    if (face.tight.test(f)) M.insert(statement_from_index(cone.n, f));
  return M;
}

// The ground-set action: sigma permutes elements, hence subsets, hence the
// gauged coordinates.
inline std::vector<long long> permute_ray(const ConeDescription& cone,
                                          const std::vector<long long>& ray,
                                          const std::vector<int>& sigma) {
  std::vector<long long> out(cone.dim);
  for (int c = 0; c < cone.dim; ++c) {
    Subset S = cone.coords[c];
    Subset image = 0;
    for (int e : set_elements(S)) image = with_element(image, sigma[e]);
    out[cone.coord_of[image]] = ray[c];
  }
  return out;
}

inline std::vector<long long> canonical_ray(const ConeDescription& cone,
                                            const std::vector<long long>& ray) {
  std::vector<int> sigma(cone.n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<long long> best = ray;
  do {
    std::vector<long long> image = permute_ray(cone, ray, sigma);
    if (image < best) best = image;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

// Orbit sizes of the ray set under the coordinate action, via canonical forms.
inline std::vector<long> ray_orbit_sizes(
    const ConeDescription& cone,
    const std::vector<std::vector<long long>>& rays) {
  std::map<std::vector<long long>, long> orbits;
  for (const auto& r : rays) ++orbits[canonical_ray(cone, r)];
  std::vector<long> sizes;
  sizes.reserve(orbits.size());
  for (const auto& [key, count] : orbits) sizes.push_back(count);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Independent route for the same partition: expand each ray's orbit inside
// the ray set. Every image must itself be an extreme ray.
inline std::vector<long> ray_orbit_sizes_by_expansion(
    const ConeDescription& cone,
    const std::vector<std::vector<long long>>& rays) {
  std::map<std::vector<long long>, int> index;
  for (std::size_t t = 0; t < rays.size(); ++t)
    index[rays[t]] = static_cast<int>(t);
  std::vector<bool> done(rays.size(), false);
  std::vector<long> sizes;
  std::vector<int> sigma(cone.n);
  for (std::size_t t = 0; t < rays.size(); ++t) {
    if (done[t]) continue;
    long size = 0;
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      auto it = index.find(permute_ray(cone, rays[t], sigma));
      if (it == index.end())
        throw Error("ray orbit left the extreme-ray set");
      if (!done[it->second]) {
        done[it->second] = true;
        ++size;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace ranktest
