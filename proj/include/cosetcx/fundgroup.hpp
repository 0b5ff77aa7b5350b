#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cosetcx/bigint.hpp"
#include "cosetcx/homology.hpp"
#include "cosetcx/permgroup.hpp"
#include "cosetcx/simplicial.hpp"
#include "cosetcx/verdict.hpp"

namespace cosetcx {

/// Letter +(i+1) is generator i, -(i+1) its inverse.
using Letter = int;
using Word = std::vector<Letter>;

/// Finitely presented group. Relators are freely reduced.
struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<Word> relators;

  /// Throws std::invalid_argument on a letter outside the generator range.
  void validate() const;
  std::size_t total_length() const;

  /// `gens: n` followed by one relator per line. Generator i is written as
  /// the i-th lowercase letter (or `x<i>` beyond 26), inverses in uppercase;
  /// the empty relator is written `1`.
  std::string to_text() const;
  static GroupPresentation from_text(std::string_view text);

  bool operator==(const GroupPresentation&) const = default;
};

std::string letter_name(Letter letter);
Word free_reduce(const Word& w);
Word inverse_word(const Word& w);

/// Edge-path group of the 2-skeleton. The spanning tree is a BFS from
/// `basepoint` visiting neighbours in ascending vertex order; the remaining
/// edges u < v, in lexicographic order, become generators oriented u -> v.
/// There is one relator per triangle. Throws Disconnected.
struct EdgePathPresentation {
  GroupPresentation presentation;
  std::vector<Simplex> generator_edges;
  Vertex basepoint = 0;
};

EdgePathPresentation edge_path_presentation(const SimplicialComplex& x, Vertex basepoint);
EdgePathPresentation edge_path_presentation(const SimplicialComplex& x);

struct TietzeOptions {
  std::size_t max_steps = 1'000'000;
  std::size_t max_relator_length = 10'000;
};

struct TietzeResult {
  GroupPresentation presentation;
  bool capped = false;
  std::size_t steps = 0;
  /// Original indices of the surviving generators.
  std::vector<std::size_t> surviving;
  /// One entry per elimination or rewrite, in application order.
  nlohmann::json trace = nlohmann::json::array();
};

/// Greedy Tietze simplification: drop trivial and duplicate relators,
/// eliminate a generator occurring exactly once in a shortest possible
/// relator, and shorten relators by overlap rewriting. Deterministic.
TietzeResult tietze_simplify(const GroupPresentation& p, const TietzeOptions& options = {});

struct Abelianization {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  bool operator==(const Abelianization&) const = default;
};

Abelianization abelianization(const GroupPresentation& p);
/// Throws InvariantViolation unless `ab` matches H~_1 of `h` (integer coefficients).
void require_matches_first_homology(const Abelianization& ab, const HomologyProfile& h);

struct QuotientOptions {
  std::size_t max_generators = 4;
  std::size_t node_budget = 50'000'000;
};

struct QuotientTarget {
  std::string name;
  GroupPtr group;
};

/// S_2, S_3, S_4, Alt_5, S_5 in increasing order.
const std::vector<QuotientTarget>& default_quotient_targets();

/// Backtracking over generator images in canonical element order, checking
/// each relator as soon as its last generator is assigned. The verdict is
/// about the claim "every homomorphism P -> target is trivial" (or "is not
/// onto" when `require_surjective`): a homomorphism found refutes it, an
/// exhausted search verifies it, an exhausted budget leaves it Unknown.
Verdict find_finite_quotient(const GroupPresentation& p, const QuotientTarget& target,
                             bool require_surjective, const QuotientOptions& options = {});

/// Presentation of pi_1 after simplification, with the abelianization
/// checked against H_1 before and after.
struct FundamentalGroup {
  EdgePathPresentation raw;
  TietzeResult simplified;
  Abelianization abelian;
};

FundamentalGroup fundamental_group(const SimplicialComplex& x, const TietzeOptions& options = {});

struct ConnectivityOptions {
  TietzeOptions tietze;
  QuotientOptions quotient;
};

/// Is X k-connected? Decidable for k <= 0. For k >= 1, Verified needs a
/// trivialized pi_1 and vanishing H~_i(Z) for 2 <= i <= k; a nonzero homology
/// group or a nontrivial finite quotient of pi_1 refutes. Throws
/// PreconditionFailed for k < -1.
Verdict connectivity_certificate(const SimplicialComplex& x, int k,
                                 const ConnectivityOptions& options = {});

}  // namespace cosetcx
