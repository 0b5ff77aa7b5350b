#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cosetcx/catalog.hpp"
#include "cosetcx/errors.hpp"

using namespace cosetcx;

TEST_CASE("example ids") {
  auto id = ExampleId::parse("building_A(3,2)");
  CHECK(id.name == "building_A");
  CHECK(id.params == std::vector<int>{3, 2});
  CHECK(id.to_string() == "building_A(3,2)");
  CHECK(ExampleId::parse("alt5_acyclic").params.empty());
  CHECK(ExampleId::parse("facets:x.txt").path == "x.txt");
  CHECK_THROWS_AS(ExampleId::parse("building_A(3,x)"), UnknownExample);
  CHECK_THROWS_AS(ExampleId::parse("building_A(3,2"), UnknownExample);
  CHECK_THROWS_AS(ExampleId::parse(""), UnknownExample);
}

TEST_CASE("building named examples") {
  CHECK_THROWS_AS(build_named("nonsense"), UnknownExample);
  CHECK_THROWS_AS(build_named("building_A(3)"), UnknownExample);
  CHECK_THROWS_AS(build_named("building_A(5,2)"), CapExceeded);
  CHECK_THROWS_AS(build_named("simplex_boundary(40)"), CapExceeded);
  CHECK_THROWS_AS(build_named("facets:/nonexistent/file"), ParseError);

  auto alt5 = build_named("alt5_acyclic");
  CHECK(alt5.complex.f_vector() == std::vector<std::size_t>{21, 80, 60});
  CHECK(alt5.group->order() == 60);
  CHECK(alt5.family->name(0) == "H1");
  CHECK(build_named("building_A(3,2)").complex.f_vector() == std::vector<std::size_t>{14, 21});
  CHECK(build_named("simplex_boundary(3)").complex == simplex_boundary(3));
  CHECK(build_named("opp_A(3,2)").family->members()[0].order() == 6);

  // Same name and parameters give identical complexes.
  CHECK(build_named("opp_A(3,2)").complex == build_named("opp_A(3,2)").complex);
  CHECK(build_named("alt5_acyclic").complex.names() == alt5.complex.names());

  for (const auto& kv : known_values(alt5)) CHECK(kv.ok());
  for (const auto& kv : known_values(build_named("building_A(4,2)"))) CHECK(kv.ok());
}

TEST_CASE("facet files") {
  const char* path = "catalog_test_facets.txt";
  {
    std::ofstream out(path);
    out << "# hollow triangle\na b\nb c\na c\n";
  }
  auto x = build_named(std::string("facets:") + path);
  CHECK(x.complex.f_vector() == std::vector<std::size_t>{3, 3});
  CHECK_FALSE(check_applies(x, "generation"));
  CHECK(check_applies(x, "cm"));
  auto r = run_check(x, "cm", {});
  CHECK(r.verdict.is_verified());
  CHECK(r.expected == Expectation::None);
  CHECK_THROWS_AS(run_check(x, "weyl", {}), PreconditionFailed);
  std::remove(path);
}

TEST_CASE("checks and expectations") {
  auto alt5 = build_named("alt5_acyclic");
  CheckOptions o;
  auto h = run_check(alt5, "homotopy-cm", o);
  CHECK(h.verdict.is_refuted());
  CHECK(h.as_expected());
  CHECK(h.exit_code() == 0);

  o.m = 2;
  CHECK(expected_outcome(alt5, "generation", o) == Expectation::Refuted);
  o.connectivity.quotient.node_budget = 1;
  auto starved = run_check(alt5, "generation", o);
  CHECK(starved.verdict.is_unknown());
  CHECK(starved.exit_code() == 2);

  CheckResult wrong;
  wrong.expected = Expectation::Verified;
  wrong.verdict = Verdict::refuted({{"x", 1}});
  CHECK(wrong.exit_code() == 1);
  wrong.expected = Expectation::NotVerified;
  CHECK(wrong.exit_code() == 0);
  wrong.verdict = Verdict::verified({{"x", 1}});
  CHECK(wrong.exit_code() == 1);

  auto opp = build_named("opp_A(3,2)");
  CheckOptions levi;
  levi.m = 1;
  auto l = run_check(opp, "levi", levi);
  CHECK(l.verdict.is_verified());
  CHECK(l.details["levis"].size() == 2);
  levi.m = 2;
  CHECK_THROWS_AS(run_check(opp, "levi", levi), PreconditionFailed);
}

TEST_CASE("reports are reproducible and certified") {
  auto x = build_named("building_A(3,2)");
  CheckOptions o;
  auto a = build_report(x, o, {}, 1).to_json();
  auto b = build_report(build_named("building_A(3,2)"), o, {}, 99).to_json();
  CHECK(a.dump() == b.dump());
  CHECK(a["schema"] == "cosetcx-report/1");
  CHECK(a["exit_code"] == 0);
  CHECK_FALSE(a["checks"][0].contains("seconds"));
  CHECK(build_report(x, o, {"cm"}).to_json(true)["checks"][0].contains("seconds"));
  for (const auto& c : a["checks"]) {
    if (c["status"] == "Verified") CHECK_FALSE(c["certificate"].empty());
  }
  std::vector<std::string> names;
  for (const auto& c : a["checks"]) names.push_back(c["check"]);
  CHECK(std::is_sorted(names.begin(), names.end()));

  auto alt5 = build_report(build_named("alt5_acyclic"), o, {"cm", "homotopy-cm", "subfamilies"});
  CHECK(alt5.exit_code() == 0);
  for (const auto& kv : alt5.known) CHECK(kv.basis == "reference");
}
