// cosetcx: build catalog examples, compute homology, run certified checks.
//
// Exit codes: 0 all verdicts as expected, 1 a definite verdict against the
// expectation, 2 Unknown where a definite verdict was expected, 3 usage or
// input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cosetcx/catalog.hpp"
#include "cosetcx/errors.hpp"

using namespace cosetcx;

namespace {

struct Common {
  std::string example;
  std::string coeff = "z";
  std::string json_path;
  std::size_t budget = 0;
  std::size_t cap = FiniteGroup::kDefaultCap;
  unsigned seed = 0;
  bool timings = false;
  int m = 1;
};

void add_common(CLI::App* app, Common& c, bool with_checks) {
  app->add_option("example", c.example, "catalog name, e.g. alt5_acyclic, building_A(3,2), facets:file.txt")
      ->required();
  app->add_option("--coeff", c.coeff, "coefficients: z, f2, f3, f5, ...");
  app->add_option("--json", c.json_path, "write the result as JSON to this file");
  app->add_option("--cap", c.cap, "largest group to enumerate");
  if (with_checks) {
    app->add_option("--budget", c.budget, "search budget for quotient and shelling searches");
    app->add_option("--seed", c.seed, "run-order seed; never changes results");
    app->add_option("--m", c.m, "generation degree for the generation and levi checks");
    app->add_flag("--timings", c.timings, "include wall-clock timings in the JSON output");
  }
}

CheckOptions check_options(const Common& c) {
  CheckOptions o;
  o.coeff = Coefficients::parse(c.coeff);
  o.m = c.m;
  if (c.budget > 0) {
    o.connectivity.quotient.node_budget = c.budget;
    o.shelling_budget = c.budget;
  }
  return o;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string fvec(const std::vector<std::size_t>& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + std::to_string(f[i]);
  return s + ")";
}

void print_homology(const HomologyProfile& h) {
  std::cout << "reduced homology over " << h.coefficients.name() << ":\n";
  for (const auto& d : h.degrees) {
    std::cout << "  H~_" << d.degree << " : ";
    std::string group;
    if (d.betti > 0) group = h.coefficients.is_integers() ? "Z^" + std::to_string(d.betti)
                                                         : h.coefficients.name() + "^" + std::to_string(d.betti);
    for (const auto& t : d.torsion) group += (group.empty() ? "" : " + ") + ("Z/" + to_string(t));
    std::cout << (group.empty() ? "0" : group) << "\n";
  }
}

void print_check(const CheckResult& r) {
  std::cout << "  " << r.check << ": " << to_string(r.verdict.status);
  if (!r.verdict.reason.empty()) std::cout << " (" << r.verdict.reason << ")";
  std::cout << "  [expected " << to_string(r.expected) << (r.as_expected() ? ", ok" : ", MISMATCH") << "]\n";
}

int cmd_build(const Common& c) {
  auto x = build_named(c.example, {c.cap});
  auto summary = example_summary(x);
  std::cout << x.id.to_string() << ": " << x.description << "\n";
  std::cout << "  f-vector " << fvec(x.complex.f_vector()) << ", dimension " << x.complex.dimension() << "\n";
  if (x.group) std::cout << "  group order " << x.group->order() << "\n";
  if (x.family) {
    for (std::size_t i = 0; i < x.family->size(); ++i) {
      std::cout << "  " << x.family->name(i) << ": order " << x.family->members()[i].order() << "\n";
    }
  }
  summary["facets"] = write_facet_list(x.complex);
  int code = 0;
  nlohmann::json known = nlohmann::json::array();
  for (const auto& kv : known_values(x)) {
    std::cout << "  " << kv.quantity << " = " << kv.actual.dump() << (kv.ok() ? "" : "  MISMATCH, expected " + kv.expected.dump())
              << "\n";
    known.push_back({{"quantity", kv.quantity}, {"expected", kv.expected}, {"actual", kv.actual},
                     {"basis", kv.basis}, {"ok", kv.ok()}});
    if (!kv.ok()) code = 1;
  }
  summary["known_values"] = known;
  write_json(c.json_path, summary);
  return code;
}

int cmd_homology(const Common& c) {
  auto x = build_named(c.example, {c.cap});
  auto h = reduced_homology(x.complex, Coefficients::parse(c.coeff));
  std::cout << x.id.to_string() << "  f-vector " << fvec(x.complex.f_vector()) << "\n";
  print_homology(h);
  write_json(c.json_path, {{"example", x.id.to_string()}, {"f_vector", x.complex.f_vector()}, {"homology", h.to_json()}});
  return 0;
}

int cmd_verify(const Common& c, const std::string& check) {
  auto x = build_named(c.example, {c.cap});
  auto r = run_check(x, check, check_options(c));
  std::cout << x.id.to_string() << "\n";
  print_check(r);
  auto j = r.to_json(c.timings);
  j["example"] = x.id.to_string();
  write_json(c.json_path, j);
  return r.exit_code();
}

int cmd_report(const Common& c, const std::vector<std::string>& checks) {
  auto x = build_named(c.example, {c.cap});
  auto report = build_report(x, check_options(c), checks, c.seed);
  std::cout << report.example << ": " << x.description << "\n";
  std::cout << "  f-vector " << fvec(x.complex.f_vector()) << "\n";
  print_homology(report.homology);
  for (const auto& kv : report.known) {
    std::cout << "  " << kv.quantity << " = " << kv.actual.dump() << " (" << kv.basis << ")"
              << (kv.ok() ? "" : "  MISMATCH, expected " + kv.expected.dump()) << "\n";
  }
  std::cout << "checks:\n";
  for (const auto& r : report.checks) print_check(r);
  write_json(c.json_path, report.to_json(c.timings));
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coset complexes, Cohen-Macaulay certificates and higher generation"};
  app.require_subcommand(1);

  Common build_opts, hom_opts, verify_opts, report_opts;
  std::string check;
  std::vector<std::string> checks;

  auto* build = app.add_subcommand("build", "construct a catalog example and print its invariants");
  add_common(build, build_opts, false);
  auto* hom = app.add_subcommand("homology", "reduced homology of an example");
  add_common(hom, hom_opts, false);
  auto* verify = app.add_subcommand("verify", "run one check");
  add_common(verify, verify_opts, true);
  verify->add_option("check", check, "one of: cm homotopy-cm generation higher-generation subfamilies levi weyl "
                                     "skeleton walker shelling")
      ->required()
      ->check(CLI::IsMember(check_names()));
  auto* report = app.add_subcommand("report", "run every applicable check and collect a report");
  add_common(report, report_opts, true);
  report->add_option("--checks", checks, "restrict to these checks")->delimiter(',')->check(CLI::IsMember(check_names()));
  app.add_subcommand("list", "list catalog names and checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*build) return cmd_build(build_opts);
    if (*hom) return cmd_homology(hom_opts);
    if (*verify) return cmd_verify(verify_opts, check);
    if (*report) return cmd_report(report_opts, checks);
    std::cout << "examples:\n";
    for (const auto& n : example_names()) std::cout << "  " << n << "\n";
    std::cout << "checks:\n";
    for (const auto& n : check_names()) std::cout << "  " << n << "\n";
    return 0;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal cross-check failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
