#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cosetcx/bigint.hpp"
#include "cosetcx/simplicial.hpp"
#include "cosetcx/verdict.hpp"

namespace cosetcx {

/// Sparse integer matrix with arbitrary-precision entries. Rows are stored as
/// column-sorted (column, value) lists without explicit zeros.
class IntegerMatrix {
 public:
  using Entry = std::pair<std::size_t, BigInt>;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  static IntegerMatrix from_dense(const std::vector<std::vector<long long>>& rows);
  static IntegerMatrix from_dense(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  const std::vector<Entry>& row(std::size_t r) const { return data_[r]; }

  BigInt get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const BigInt& value);

  std::vector<std::vector<BigInt>> to_dense() const;
  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  bool operator==(const IntegerMatrix& rhs) const;

  /// "rows cols nnz" header followed by one "row col value" line per entry.
  std::string to_triplets() const;
  static IntegerMatrix from_triplets(const std::string& text);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Invariant factors d_1 | d_2 | ... padded with zeros to min(rows, cols).
struct SmithForm {
  std::vector<BigInt> diagonal;
  std::size_t rank = 0;

  /// Invariant factors greater than one.
  std::vector<BigInt> torsion() const;
};

/// SNF together with unimodular U, V such that U * M * V = D.
struct SmithDecomposition {
  IntegerMatrix u;
  IntegerMatrix d;
  IntegerMatrix v;
  SmithForm form;
};

/// Matrices with at most this many rows and columns go through the dense
/// transform-tracking route, and the transforms are checked on every call.
inline constexpr std::size_t kVerifiedSmithThreshold = 24;

/// Deterministic SNF. Pivot: nonzero entry of least absolute value, ties
/// broken by (row, column). Runs in 64-bit arithmetic and restarts in
/// arbitrary precision if any intermediate overflows.
SmithForm smith_normal_form(const IntegerMatrix& m);

/// The sparse elimination route alone (no transform tracking).
SmithForm smith_normal_form_sparse(const IntegerMatrix& m);

/// Dense route with transform tracking; throws InvariantViolation when
/// U * M * V != D or when U, V are not unimodular.
SmithDecomposition smith_decomposition(const IntegerMatrix& m);

/// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(const IntegerMatrix& m);

/// Rank over F_p by Gaussian elimination modulo p.
std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p);

/// Coefficient ring: prime == 0 means the integers, otherwise F_prime.
struct Coefficients {
  std::uint32_t prime = 0;

  static Coefficients integers() { return {0}; }
  static Coefficients field(std::uint32_t p) { return {p}; }
  bool is_integers() const { return prime == 0; }
  std::string name() const;
  /// Accepts "z", "Z", "f2", "f3", "f5", ...
  static Coefficients parse(const std::string& text);
};

/// Simplicial boundary map C_k -> C_{k-1} in the sorted-vertex orientation.
/// For k = 0 this is the augmentation C_0 -> Z (a single row of ones).
IntegerMatrix boundary_matrix(const SimplicialComplex& x, int k);

struct DegreeHomology {
  int degree = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;

  bool vanishes() const { return betti == 0 && torsion.empty(); }
};

/// Reduced homology in degrees -1 .. dim X.
struct HomologyProfile {
  Coefficients coefficients;
  std::vector<DegreeHomology> degrees;

  const DegreeHomology& at(int degree) const;
  bool vanishes_through(int k) const;
  /// True when every degree other than `degree` vanishes.
  bool concentrated_in(int degree) const;
  long long euler_characteristic() const;
  nlohmann::json to_json() const;
};

/// Reduced homology over Z or F_p. Always checks the Euler characteristic
/// identity between face counts and Betti numbers.
HomologyProfile reduced_homology(const SimplicialComplex& x,
                                 Coefficients coeff = Coefficients::integers());

/// Reduced homology over F_p derived from integral invariant factors by the
/// universal coefficient theorem (an independent route to the direct one).
HomologyProfile homology_via_universal_coefficients(const SimplicialComplex& x, std::uint32_t p);

/// H~_i(X) = 0 for every i <= k. Every complex is (-2)-acyclic, and a complex
/// is (-1)-acyclic iff it is nonempty.
bool is_k_acyclic(const SimplicialComplex& x, int k, Coefficients coeff = Coefficients::integers());
bool is_k_acyclic(const HomologyProfile& h, int k);

/// Homological shadow of sphericity: reduced homology vanishes below the top
/// dimension and (over Z) the top group is free.
Verdict sphericity_certificate(const SimplicialComplex& x,
                               Coefficients coeff = Coefficients::integers());

/// Same shape test against an explicit degree, for complexes that are only
/// homotopy equivalent to a lower-dimensional one.
Verdict concentration_certificate(const HomologyProfile& h, int degree);

std::string to_string(const BigInt& value);

}  // namespace cosetcx
