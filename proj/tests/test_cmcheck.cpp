#include <doctest.h>

#include "cosetcx/cmcheck.hpp"
#include "cosetcx/errors.hpp"

using namespace cosetcx;

namespace {

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                         {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
}

// Cone over RP^2: acyclic over F_3 and Q, but the links of the cone point's
// neighbours carry 2-torsion.
SimplicialComplex cone_over_projective_plane() {
  std::vector<Simplex> f;
  const auto base = projective_plane();
  for (auto s : base.facets()) {
    s.push_back(9);
    f.push_back(s);
  }
  return SimplicialComplex::from_facets(f);
}

}  // namespace

TEST_CASE("CM over a ring") {
  CHECK(cm_over(simplex_boundary(3)).verdict.is_verified());
  CHECK(cm_over(full_simplex(3)).verdict.is_verified());
  CHECK(cm_over(simplex_boundary(2)).verdict.is_verified());
  CHECK(cm_over(SimplicialComplex{}).verdict.is_verified());

  auto bowtie = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3, 4}});
  auto c = cm_over(bowtie);
  REQUIRE(c.verdict.is_refuted());
  REQUIRE(c.witness.has_value());
  CHECK(*c.witness == Simplex{2});
  CHECK(c.verdict.certificate["witness"] == bowtie.simplex_name({2}));

  auto impure = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}});
  CHECK(cm_over(impure).verdict.is_refuted());

  auto two_points = SimplicialComplex::from_facets({{0}, {1}});
  CHECK(cm_over(two_points).verdict.is_verified());
  auto edge_and_point = SimplicialComplex::from_facets({{0, 1}, {2}});
  auto e = cm_over(edge_and_point);
  CHECK(e.verdict.is_refuted());
  CHECK(e.witness == Simplex{});
}

TEST_CASE("CM depends on the coefficients") {
  auto x = cone_over_projective_plane();
  CHECK(cm_over(x, Coefficients::field(3)).verdict.is_verified());
  CHECK(cm_over(x, Coefficients::field(2)).verdict.is_refuted());
  CHECK(cm_over(x).verdict.is_refuted());
  auto rp2 = projective_plane();
  CHECK(cm_over(rp2, Coefficients::field(3)).verdict.is_verified());
  CHECK(cm_over(rp2).verdict.is_refuted());
}

TEST_CASE("homotopy CM") {
  CHECK(homotopy_cm(full_simplex(3)).verdict.is_verified());
  CHECK(homotopy_cm(simplex_boundary(3)).verdict.is_verified());
  CHECK(homotopy_cm(simplex_boundary(4)).verdict.is_verified());
  CHECK(homotopy_cm(simplex_boundary(2)).verdict.is_verified());
  CHECK(homotopy_cm(projective_plane()).verdict.is_refuted());
}

TEST_CASE("implication audit") {
  for (const auto& x : {simplex_boundary(3), simplex_boundary(2), projective_plane(), cone_over_projective_plane()}) {
    auto audit = implication_audit(x, {2, 3, 5});
    CHECK(audit.fields.size() == 3);
    if (audit.homotopy.verdict.is_verified()) CHECK(audit.integers.verdict.is_verified());
    auto j = audit.to_json(x);
    CHECK(j.contains("F5"));
  }
  auto sphere = implication_audit(simplex_boundary(3), {2, 3, 5});
  CHECK(sphere.homotopy.verdict.is_verified());
  for (const auto& f : sphere.fields) CHECK(f.verdict.is_verified());
}

TEST_CASE("skeleton complements") {
  auto rows = skeleton_complement_check(simplex_boundary(4), Coefficients::integers());
  REQUIRE(rows.size() == 4);  // s = -1, 0, 1, 2
  for (const auto& r : rows) {
    CHECK(r.expected_degree == 3 - r.s - 1);
    CHECK(r.concentration.is_verified());
  }
  CHECK(rows[2].s == 1);
  CHECK(rows[2].homology.concentrated_in(1));
  CHECK(rows.back().model_f_vector == std::vector<std::size_t>{5});

  auto with_h = skeleton_complement_check(simplex_boundary(3), Coefficients::integers(), {true, {}});
  for (const auto& r : with_h) {
    REQUIRE(r.connectivity.has_value());
    CHECK(r.connectivity->is_verified());
  }
  CHECK_THROWS_AS(skeleton_complement_check(projective_plane(), Coefficients::integers()), PreconditionFailed);
}

TEST_CASE("colored criterion") {
  // The hollow square is balanced with two colors.
  auto square = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Coloring c{{{0, 0}, {1, 1}, {2, 0}, {3, 1}}};
  auto r = walker_colored_check(square, c);
  CHECK(r.verdict.is_verified());
  CHECK(r.rows.size() == 3);
  CHECK(r.rows[0].required == -1);

  // Two disjoint edges: the full color set is disconnected.
  auto two = SimplicialComplex::from_facets({{0, 1}, {2, 3}});
  Coloring c2{{{0, 0}, {1, 1}, {2, 0}, {3, 1}}};
  auto r2 = walker_colored_check(two, c2);
  CHECK(r2.verdict.is_refuted());
  CHECK(r2.verdict.certificate["colors"] == std::vector<int>{0, 1});

  auto tri = barycentric_subdivision(simplex_boundary(3));
  Coloring dimc;
  for (Vertex v : tri.complex.vertices()) dimc.color[v] = static_cast<int>(tri.barycenter_of[v].size()) - 1;
  CHECK(walker_colored_check(tri.complex, dimc).verdict.is_verified());

  Coloring bad{{{0, 0}, {1, 0}, {2, 0}, {3, 1}}};
  CHECK_THROWS_AS(walker_colored_check(square, bad), InvalidColoring);
  CHECK_THROWS_AS(walker_colored_check(SimplicialComplex::from_facets({{0, 1}, {2}}), c), NotPure);
}

TEST_CASE("shelling search") {
  auto v = shelling_search(simplex_boundary(3));
  REQUIRE(v.is_verified());
  CHECK(v.certificate["order"].size() == 4);
  CHECK(shelling_search(SimplicialComplex::from_facets({{0, 1, 2}, {1, 2, 3}})).is_verified());
  CHECK(shelling_search(barycentric_subdivision(simplex_boundary(3)).complex).is_verified());

  // Two triangles sharing one vertex: exhaustively not shellable.
  auto bowtie = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3, 4}});
  auto b = shelling_search(bowtie);
  CHECK(b.is_refuted());
  CHECK(b.certificate["exhaustive"] == true);

  // Never verified for a complex that is not homotopy CM.
  auto rp2 = shelling_search(projective_plane(), 2000);
  CHECK_FALSE(rp2.is_verified());

  CHECK_THROWS_AS(shelling_search(SimplicialComplex::from_facets({{0, 1, 2}, {3, 4}})), NotPure);
}

TEST_CASE("shelling certificates are valid orderings") {
  auto x = barycentric_subdivision(simplex_boundary(4)).complex;
  auto v = shelling_search(x);
  REQUIRE(v.is_verified());
  // Oracle: replay the order and check the shelling condition with sets.
  std::map<std::string, Simplex> by_name;
  for (const auto& f : x.facets()) by_name[x.simplex_name(f)] = f;
  std::vector<Simplex> placed;
  for (const auto& name : v.certificate["order"]) {
    const Simplex& f = by_name.at(name.get<std::string>());
    if (!placed.empty()) {
      std::vector<Simplex> ridges;
      for (std::size_t omit = 0; omit < f.size(); ++omit) {
        Simplex r = f;
        r.erase(r.begin() + static_cast<long>(omit));
        for (const auto& p : placed) {
          if (std::includes(p.begin(), p.end(), r.begin(), r.end())) {
            ridges.push_back(r);
            break;
          }
        }
      }
      CHECK_FALSE(ridges.empty());
      for (const auto& p : placed) {
        Simplex meet;
        std::set_intersection(f.begin(), f.end(), p.begin(), p.end(), std::back_inserter(meet));
        bool covered = false;
        for (const auto& r : ridges) covered = covered || std::includes(r.begin(), r.end(), meet.begin(), meet.end());
        CHECK(covered);
      }
    }
    placed.push_back(f);
  }
  CHECK(placed.size() == x.facets().size());
}
