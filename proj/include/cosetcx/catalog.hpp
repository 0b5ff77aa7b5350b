#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cosetcx/buildings.hpp"
#include "cosetcx/cmcheck.hpp"
#include "cosetcx/cosetcomplex.hpp"

namespace cosetcx {

/// `name` or `name(p1,p2,...)`; `facets:<path>` loads a facet list.
struct ExampleId {
  std::string name;
  std::vector<int> params;
  std::string path;  // facet-list file for name == "facets"

  /// Throws UnknownExample on malformed text.
  static ExampleId parse(std::string_view text);
  std::string to_string() const;
};

/// Catalog names:
///   alt5_acyclic           Alt5 with the stabilizer of 1 and the normalizers
///                          of <(0 1 2 3 4)> and <(0 2 4)> (points are 0-based)
///   s3_bipartite           S3 with <(0 1)> and <(0 1 2)>
///   simplex_boundary(k)    boundary of the k-simplex (no group)
///   building_A(n,p)        flag complex of F_p^n with GL_n(F_p)
///   opp_A(n,p)             its opposition complex
std::vector<std::string> example_names();

struct CatalogOptions {
  std::size_t group_cap = FiniteGroup::kDefaultCap;
};

struct NamedExample {
  ExampleId id;
  std::string description;
  SimplicialComplex complex;
  GroupPtr group;  // null for facet-list input
  std::optional<SubgroupFamily> family;
  std::optional<GroupAction> action;
  std::optional<Simplex> fundamental_facet;
  std::optional<Coloring> coloring;
  std::shared_ptr<const Building> building;  // building_A and opp_A only
};

/// Throws UnknownExample, CapExceeded, or ParseError for bad facet files.
NamedExample build_named(const ExampleId& id, const CatalogOptions& options = {});
NamedExample build_named(std::string_view id, const CatalogOptions& options = {});

/// What a check is expected to return on a catalog example.
enum class Expectation { Verified, Refuted, NotVerified, None };
std::string_view to_string(Expectation e);

struct CheckOptions {
  Coefficients coeff = Coefficients::integers();
  ConnectivityOptions connectivity;
  int m = 1;  // generation degree for `generation` and `levi`
  std::size_t shelling_budget = 1'000'000;
};

/// cm, homotopy-cm, generation, higher-generation, subfamilies, levi, weyl,
/// skeleton, walker, shelling.
std::vector<std::string> check_names();
bool check_applies(const NamedExample& x, const std::string& check);
Expectation expected_outcome(const NamedExample& x, const std::string& check, const CheckOptions& options);

struct CheckResult {
  std::string check;
  Expectation expected = Expectation::None;
  Verdict verdict;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0.0;

  bool as_expected() const;
  /// 0 when as expected, 1 for a definite verdict against the expectation,
  /// 2 for Unknown where a definite verdict was expected.
  int exit_code() const;
  nlohmann::json to_json(bool timings) const;
};

/// Throws PreconditionFailed when the check does not apply. A Verified
/// verdict without a certificate throws InvariantViolation.
CheckResult run_check(const NamedExample& x, const std::string& check, const CheckOptions& options);

/// A quantity with an independently known value.
struct KnownValue {
  std::string quantity;
  nlohmann::json expected;
  nlohmann::json actual;
  std::string basis;  // "reference", "derived" or "elementary"
  bool ok() const { return expected == actual; }
};

std::vector<KnownValue> known_values(const NamedExample& x);

struct Report {
  static constexpr std::string_view kSchema = "cosetcx-report/1";

  std::string example;
  Coefficients coeff;
  nlohmann::json summary;  // f-vector, group and family data
  HomologyProfile homology;
  std::vector<KnownValue> known;
  std::vector<CheckResult> checks;  // sorted by name

  int exit_code() const;
  nlohmann::json to_json(bool timings = false) const;
};

/// Runs `checks` (all applicable ones when empty). `seed` shuffles the run
/// order only; results are merged by check name.
Report build_report(const NamedExample& x, const CheckOptions& options, std::vector<std::string> checks = {},
                    unsigned seed = 0);

/// f-vector, group order and family data.
nlohmann::json example_summary(const NamedExample& x);

}  // namespace cosetcx
