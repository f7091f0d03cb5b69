#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "ranktest/cone.hpp"
#include "ranktest/structural.hpp"
#include "ranktest/submodular.hpp"

using namespace ranktest;

namespace {

// A gauged coordinate vector read back as a set function.
SetFunction ray_function(const ConeDescription& cone,
                         const std::vector<long long>& ray) {
  std::vector<Rational> v(std::size_t{1} << cone.n, 0);
  for (int c = 0; c < cone.dim; ++c)
    v[cone.coords[c]] = Rational(static_cast<long>(ray[c]));
  return SetFunction(cone.n, std::move(v));
}

}  // namespace

TEST_CASE("elementary facet counts") {
  ConeDescription c2 = elementary_facets(2);
  CHECK(c2.dim == 1);
  CHECK(c2.facet_normals.size() == 1);

  ConeDescription c3 = elementary_facets(3);
  CHECK(c3.dim == 4);
  CHECK(c3.facet_normals.size() == 6);

  ConeDescription c4 = elementary_facets(4);
  CHECK(c4.dim == 11);
  CHECK(c4.facet_normals.size() == 24);

  CHECK_THROWS_AS(elementary_facets(6), UnsupportedN);
  CHECK_THROWS_AS(elementary_facets(1), UnsupportedN);
}

TEST_CASE("extreme ray counts") {
  CHECK(extreme_rays(elementary_facets(2)).size() == 1);
  CHECK(extreme_rays(elementary_facets(3)).size() == 5);
  CHECK(extreme_rays(elementary_facets(4)).size() == 37);
}

TEST_CASE("rays are submodular directions") {
  for (int n : {2, 3, 4}) {
    ConeDescription cone = elementary_facets(n);
    for (const auto& ray : extreme_rays(cone)) {
      SetFunction w = ray_function(cone, ray);
      CHECK(is_submodular(w));
      CHECK(is_semigraphoid(tight_model(w)));
    }
  }
}

TEST_CASE("face lattice at small n") {
  ConeDescription c2 = elementary_facets(2);
  FaceCensus f2 = face_lattice(c2);
  CHECK(f2.faces.size() == 2);
  CHECK(f2.f_vector == std::vector<long long>{1, 1});

  ConeDescription c3 = elementary_facets(3);
  FaceCensus f3 = face_lattice(c3);
  CHECK(f3.faces.size() == 22);
  CHECK(f3.f_vector == std::vector<long long>{1, 5, 9, 6, 1});
}

TEST_CASE("two-dimensional faces pass the algebraic adjacency test") {
  for (int n : {3, 4}) {
    ConeDescription cone = elementary_facets(n);
    FaceCensus census = face_lattice(cone);
    int two_faces = 0;
    for (const Face& face : census.faces) {
      if (face.dim != 2) continue;
      ++two_faces;
      CHECK(__builtin_popcountll(face.ray_mask) == 2);
      std::vector<std::vector<long long>> tight_rows;
      for (int f = 0; f < static_cast<int>(cone.facet_normals.size()); ++f)
        if (face.tight.test(f)) tight_rows.push_back(cone.facet_normals[f]);
      CHECK(detail::rank_of_rows(tight_rows) == cone.dim - 2);
    }
    CHECK(two_faces == census.f_vector[2]);
  }
}

TEST_CASE("face models") {
  ConeDescription cone = elementary_facets(3);
  FaceCensus census = face_lattice(cone);

  std::set<std::set<CIStatement>> models;
  for (const Face& face : census.faces) {
    CIModel M = face_to_model(face, cone);
    if (face.dim == cone.dim) CHECK(M.size() == 0);
    if (face.dim == 0) CHECK(M == full_model(3));
    CHECK(is_semigraphoid(M));
    auto witness = is_structural(M);
    REQUIRE(witness.has_value());
    CHECK(tight_model(*witness) == M);
    models.insert(M.statements);
  }
  CHECK(models.size() == 22);  // faces carry pairwise distinct models
}

TEST_CASE("ray functions sit on one-dimensional faces") {
  ConeDescription cone = elementary_facets(3);
  FaceCensus census = face_lattice(cone);
  for (const Face& face : census.faces) {
    if (face.dim != 1) continue;
    int ray_id = __builtin_ctzll(face.ray_mask);
    SetFunction w = ray_function(cone, census.rays[ray_id]);
    CHECK(tight_model(w) == face_to_model(face, cone));
  }
}

TEST_CASE("ray orbits: canonical forms agree with orbit expansion") {
  for (int n : {3, 4}) {
    ConeDescription cone = elementary_facets(n);
    auto rays = extreme_rays(cone);
    std::vector<long> a = ray_orbit_sizes(cone, rays);
    std::vector<long> b = ray_orbit_sizes_by_expansion(cone, rays);
    CHECK(a == b);
    CHECK(std::accumulate(a.begin(), a.end(), 0L) ==
          static_cast<long>(rays.size()));
    for (long s : a) CHECK(factorial_long(n) % s == 0);
  }

  // frozen decompositions: two singleton orbits over the triangle orbit at
  // n=3 (the bipyramid apexes), ten orbits at n=4
  ConeDescription c3 = elementary_facets(3);
  CHECK(ray_orbit_sizes(c3, extreme_rays(c3)) == std::vector<long>{1, 1, 3});
  ConeDescription c4 = elementary_facets(4);
  CHECK(ray_orbit_sizes(c4, extreme_rays(c4)) ==
        std::vector<long>{1, 1, 1, 4, 4, 4, 4, 6, 6, 6});
}
