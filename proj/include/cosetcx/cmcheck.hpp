#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosetcx/fundgroup.hpp"
#include "cosetcx/homology.hpp"
#include "cosetcx/simplicial.hpp"
#include "cosetcx/verdict.hpp"

namespace cosetcx {

/// One link condition: link(X, simplex) must be `required`-acyclic (or
/// -connected for the homotopy variant).
struct LinkCheck {
  Simplex simplex;
  int required = 0;
  Status status = Status::Verified;
  std::string reason;
};

/// Result of a Cohen-Macaulay test. The global condition is the link of the
/// empty simplex, i.e. X itself must be (d-1)-acyclic/connected.
struct CMCertificate {
  std::string variant;  // "Z", "F<p>" or "homotopy"
  Verdict verdict;
  Status global = Status::Verified;
  std::vector<LinkCheck> links;
  /// First failing simplex; the empty simplex stands for the global condition.
  std::optional<Simplex> witness;

  nlohmann::json to_json(const SimplicialComplex& x) const;
};

/// Exact: X is (d-1)-acyclic over `coeff` and every s-simplex has a
/// (d-s-2)-acyclic link. Facet links (required -2) pass automatically.
CMCertificate cm_over(const SimplicialComplex& x, Coefficients coeff = Coefficients::integers());

/// Three-valued: X is (d-1)-connected and every s-simplex has a
/// (d-s-2)-connected link. Any Unknown without a Refuted makes the whole
/// verdict Unknown.
CMCertificate homotopy_cm(const SimplicialComplex& x, const ConnectivityOptions& options = {});

struct ImplicationAudit {
  CMCertificate homotopy;
  CMCertificate integers;
  std::vector<CMCertificate> fields;

  nlohmann::json to_json(const SimplicialComplex& x) const;
};

/// Runs every variant and throws InvariantViolation if a verified stronger
/// property meets a refuted weaker one (homotopy => Z => F_p).
ImplicationAudit implication_audit(const SimplicialComplex& x, const std::vector<std::uint32_t>& primes,
                                   const ConnectivityOptions& options = {});

struct SkeletonComplementRow {
  int s = 0;                 // the removed skeleton's dimension
  int expected_degree = 0;   // d - s - 1
  std::vector<std::size_t> model_f_vector;
  HomologyProfile homology;
  Verdict concentration;
  std::optional<Verdict> connectivity;  // homotopy variant only
};

struct SkeletonComplementOptions {
  bool homotopy = false;
  ConnectivityOptions connectivity;
};

/// For each -1 <= s < d, the complement of the s-skeleton (modelled on the
/// barycentric subdivision) must have homology concentrated in degree
/// d - s - 1; s = -1 is X itself. With `homotopy`, and when X is verified
/// homotopy CM, each model is also checked to be (d - s - 2)-connected.
/// Throws PreconditionFailed unless X is CM over `coeff`.
std::vector<SkeletonComplementRow> skeleton_complement_check(const SimplicialComplex& x, Coefficients coeff,
                                                             const SkeletonComplementOptions& options = {});

struct ColorSubsetRow {
  std::vector<int> colors;
  std::vector<std::size_t> f_vector;
  int required = 0;  // |J| - 2
  bool acyclic = false;
};

struct WalkerReport {
  Verdict verdict;
  std::vector<ColorSubsetRow> rows;
};

/// X_J is (|J|-2)-acyclic for every nonempty set J of colors. Must agree with
/// cm_over; disagreement throws InvariantViolation. Throws NotPure and
/// InvalidColoring.
WalkerReport walker_colored_check(const SimplicialComplex& x, const Coloring& c,
                                  Coefficients coeff = Coefficients::integers());

/// Searches for a shelling: an ordering in which each facet meets the union
/// of its predecessors in a nonempty union of its own codimension-1 faces.
/// Greedy pass first, then backtracking; `budget` bounds the number of
/// partial orderings visited. Refuted only after an exhaustive search.
Verdict shelling_search(const SimplicialComplex& x, std::size_t budget = 1'000'000);

}  // namespace cosetcx
