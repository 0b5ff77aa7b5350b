#include <algorithm>
#include <climits>
#include <random>
#include <sstream>

#include "cosetcx/errors.hpp"
#include "cosetcx/homology.hpp"

namespace cosetcx {

namespace {

struct Overflow {};

// Arithmetic policies for the elimination kernel. Int64Ops throws Overflow
// instead of wrapping; the caller then restarts with BigIntOps.
struct Int64Ops {
  using Int = long long;

  static Int from(const BigInt& v) {
    if (v > LLONG_MAX || v < -LLONG_MAX) throw Overflow{};
    return static_cast<Int>(v);
  }
  static BigInt to_big(Int v) { return BigInt(v); }
  static bool is_zero(Int v) { return v == 0; }
  static Int abs(Int v) {
    if (v == LLONG_MIN) throw Overflow{};
    return v < 0 ? -v : v;
  }
  static Int mul(Int a, Int b) {
    Int out;
    if (__builtin_mul_overflow(a, b, &out)) throw Overflow{};
    return out;
  }
  static Int sub(Int a, Int b) {
    Int out;
    if (__builtin_sub_overflow(a, b, &out)) throw Overflow{};
    return out;
  }
  static Int div(Int a, Int b) {
    if (a == LLONG_MIN && b == -1) throw Overflow{};
    return a / b;
  }
  static bool less(Int a, Int b) { return a < b; }
};

struct BigIntOps {
  using Int = BigInt;

  static Int from(const BigInt& v) { return v; }
  static BigInt to_big(const Int& v) { return v; }
  static bool is_zero(const Int& v) { return v.is_zero(); }
  static Int abs(const Int& v) { return v < 0 ? Int(-v) : v; }
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static Int sub(const Int& a, const Int& b) { return a - b; }
  static Int div(const Int& a, const Int& b) { return a / b; }  // truncates toward zero
  static bool less(const Int& a, const Int& b) { return a < b; }
};

// Diagonalizes a sparse matrix with elementary row and column operations and
// returns the absolute values of the resulting nonzero diagonal entries.
template <class Ops>
std::vector<BigInt> sparse_diagonal(const IntegerMatrix& m) {
  using Int = typename Ops::Int;
  struct Cell {
    std::uint32_t col;
    Int val;
  };
  using Row = std::vector<Cell>;

  std::vector<Row> rows(m.rows());
  std::vector<std::vector<std::uint32_t>> col_rows(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      rows[r].push_back({static_cast<std::uint32_t>(c), Ops::from(v)});
      col_rows[c].push_back(static_cast<std::uint32_t>(r));
    }
  }
  std::vector<std::uint32_t> active;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].empty()) active.push_back(static_cast<std::uint32_t>(r));
  }

  auto find_cell = [](Row& row, std::uint32_t col) -> Cell* {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const Cell& cell, std::uint32_t c) { return cell.col < c; });
    return (it != row.end() && it->col == col) ? &*it : nullptr;
  };

  // target -= q * source, recording fill-in columns.
  auto axpy = [&](std::uint32_t target_index, const Int& q, const Row& source) {
    Row& target = rows[target_index];
    Row merged;
    merged.reserve(target.size() + source.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < target.size() || j < source.size()) {
      if (j == source.size() || (i < target.size() && target[i].col < source[j].col)) {
        merged.push_back(std::move(target[i++]));
      } else if (i == target.size() || source[j].col < target[i].col) {
        merged.push_back({source[j].col, Ops::sub(Int(0), Ops::mul(q, source[j].val))});
        col_rows[source[j].col].push_back(target_index);
        ++j;
      } else {
        Int v = Ops::sub(target[i].val, Ops::mul(q, source[j].val));
        if (!Ops::is_zero(v)) merged.push_back({target[i].col, std::move(v)});
        ++i;
        ++j;
      }
    }
    target = std::move(merged);
  };

  std::vector<BigInt> diagonal;
  for (;;) {
    // Pivot: least |a|, ties by (row, col). Rows are scanned in ascending
    // order, so the first unit found is already the winner.
    std::uint32_t pr = 0;
    std::uint32_t pc = 0;
    Int best{};
    bool found = false;
    bool saw_empty = false;
    for (std::uint32_t r : active) {
      if (rows[r].empty()) {
        saw_empty = true;
        continue;
      }
      for (const auto& cell : rows[r]) {
        Int a = Ops::abs(cell.val);
        if (!found || Ops::less(a, best)) {
          best = a;
          pr = r;
          pc = cell.col;
          found = true;
        }
      }
      if (found && best == Int(1)) break;
    }
    if (saw_empty) {
      active.erase(std::remove_if(active.begin(), active.end(),
                                  [&](std::uint32_t r) { return rows[r].empty(); }),
                   active.end());
    }
    if (!found) break;

    const Int pivot = find_cell(rows[pr], pc)->val;
    const Row pivot_row = rows[pr];
    bool column_clean = true;
    std::vector<std::uint32_t> pending = std::move(col_rows[pc]);
    col_rows[pc].clear();
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    std::vector<std::uint32_t> kept;
    for (std::uint32_t r2 : pending) {
      if (r2 == pr) {
        kept.push_back(r2);
        continue;
      }
      Cell* cell = find_cell(rows[r2], pc);
      if (!cell) continue;
      Int q = Ops::div(cell->val, pivot);
      if (!Ops::is_zero(q)) axpy(r2, q, pivot_row);
      if (find_cell(rows[r2], pc)) {
        column_clean = false;
        kept.push_back(r2);
      }
    }
    col_rows[pc] = std::move(kept);
    if (!column_clean) continue;

    // Column pc now holds only the pivot, so column operations touch row pr
    // alone: reduce its other entries modulo the pivot.
    bool row_clean = true;
    Row reduced;
    for (auto& cell : rows[pr]) {
      if (cell.col == pc) continue;
      Int rem = Ops::sub(cell.val, Ops::mul(Ops::div(cell.val, pivot), pivot));
      if (!Ops::is_zero(rem)) {
        row_clean = false;
        reduced.push_back({cell.col, std::move(rem)});
      }
    }
    if (row_clean) {
      diagonal.push_back(Ops::to_big(Ops::abs(pivot)));
      rows[pr].clear();
      col_rows[pc].clear();
      active.erase(std::find(active.begin(), active.end(), pr));
    } else {
      reduced.push_back({pc, pivot});
      std::sort(reduced.begin(), reduced.end(),
                [](const Cell& a, const Cell& b) { return a.col < b.col; });
      rows[pr] = std::move(reduced);
    }
  }
  return diagonal;
}

// Turns an arbitrary nonzero diagonal into the divisibility chain.
SmithForm normalize_diagonal(std::vector<BigInt> values, std::size_t rows, std::size_t cols) {
  SmithForm form;
  form.rank = values.size();
  std::size_t ones = 0;
  std::vector<BigInt> big;
  for (auto& v : values) {
    if (v == 1) {
      ++ones;
    } else {
      big.push_back(std::move(v));
    }
  }
  std::sort(big.begin(), big.end());
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      BigInt g = boost::multiprecision::gcd(big[i], big[j]);
      BigInt l = big[i] / g * big[j];
      big[i] = g;
      big[j] = l;
    }
  }
  form.diagonal.assign(ones, BigInt(1));
  for (auto& v : big) {
    if (v == 1) {
      form.diagonal.insert(form.diagonal.begin(), BigInt(1));
    } else {
      form.diagonal.push_back(std::move(v));
    }
  }
  form.diagonal.resize(std::min(rows, cols), BigInt(0));
  return form;
}

using Dense = std::vector<std::vector<BigInt>>;

Dense identity_dense(std::size_t n) {
  Dense out(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

// Spot checks for results of the sparse route: rank modulo a large prime and
// divisibility of random minors by the matching determinantal divisor.
void spot_check(const IntegerMatrix& m, const SmithForm& form) {
  constexpr std::uint32_t kPrime = 2147483647u;
  bool prime_divides = false;
  for (const auto& d : form.diagonal) {
    if (!d.is_zero() && d % kPrime == 0) prime_divides = true;
  }
  if (!prime_divides && rank_mod_p(m, kPrime) != form.rank) {
    throw InvariantViolation("SNF rank disagrees with modular rank");
  }
  if (form.rank == 0) return;
  std::mt19937_64 rng(m.rows() * 1000003u + m.cols());
  for (int trial = 0; trial < 4; ++trial) {
    std::size_t k = 1 + rng() % std::min<std::size_t>(form.rank, 3);
    std::vector<std::size_t> rs(m.rows());
    std::vector<std::size_t> cs(m.cols());
    for (std::size_t i = 0; i < rs.size(); ++i) rs[i] = i;
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = i;
    std::shuffle(rs.begin(), rs.end(), rng);
    std::shuffle(cs.begin(), cs.end(), rng);
    IntegerMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) minor.set(i, j, m.get(rs[i], cs[j]));
    }
    BigInt divisor = 1;
    for (std::size_t i = 0; i < k; ++i) divisor *= form.diagonal[i];
    if (determinant(minor) % divisor != 0) {
      throw InvariantViolation("a random minor is not divisible by its determinantal divisor");
    }
  }
}

}  // namespace

std::vector<BigInt> SmithForm::torsion() const {
  std::vector<BigInt> out;
  for (const auto& d : diagonal) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

SmithForm smith_normal_form_sparse(const IntegerMatrix& m) {
  std::vector<BigInt> diag;
  try {
    diag = sparse_diagonal<Int64Ops>(m);
  } catch (const Overflow&) {
    diag = sparse_diagonal<BigIntOps>(m);
  }
  return normalize_diagonal(std::move(diag), m.rows(), m.cols());
}

SmithDecomposition smith_decomposition(const IntegerMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  Dense d = m.to_dense();
  Dense u = identity_dense(nr);
  Dense v = identity_dense(nc);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(d[a], d[b]);
    std::swap(u[a], u[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
  };
  auto add_row = [&](std::size_t target, const BigInt& q, std::size_t source) {
    for (std::size_t c = 0; c < nc; ++c) d[target][c] -= q * d[source][c];
    for (std::size_t c = 0; c < nr; ++c) u[target][c] -= q * u[source][c];
  };
  auto add_col = [&](std::size_t target, const BigInt& q, std::size_t source) {
    for (std::size_t r = 0; r < nr; ++r) d[r][target] -= q * d[r][source];
    for (std::size_t r = 0; r < nc; ++r) v[r][target] -= q * v[r][source];
  };
  auto abs_less = [](const BigInt& a, const BigInt& b) { return abs(a) < abs(b); };

  const std::size_t limit = std::min(nr, nc);
  std::size_t t = 0;
  for (; t < limit; ++t) {
    bool found = false;
    std::size_t br = 0;
    std::size_t bc = 0;
    for (std::size_t r = t; r < nr; ++r) {
      for (std::size_t c = t; c < nc; ++c) {
        if (!d[r][c].is_zero() && (!found || abs_less(d[r][c], d[br][bc]))) {
          found = true;
          br = r;
          bc = c;
        }
      }
    }
    if (!found) break;
    swap_rows(t, br);
    swap_cols(t, bc);
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (d[r][t].is_zero()) continue;
        add_row(r, d[r][t] / d[t][t], t);
        if (!d[r][t].is_zero()) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (d[t][c].is_zero()) continue;
        add_col(c, d[t][c] / d[t][t], t);
        if (!d[t][c].is_zero()) clean = false;
      }
      if (!clean) {
        // Move the smallest leftover in row/column t onto the diagonal.
        std::size_t sr = t;
        std::size_t sc = t;
        for (std::size_t r = t + 1; r < nr; ++r) {
          if (!d[r][t].is_zero() && abs_less(d[r][t], d[sr][sc])) {
            sr = r;
            sc = t;
          }
        }
        for (std::size_t c = t + 1; c < nc; ++c) {
          if (!d[t][c].is_zero() && abs_less(d[t][c], d[sr][sc])) {
            sr = t;
            sc = c;
          }
        }
        swap_rows(t, sr);
        swap_cols(t, sc);
        continue;
      }
      // Divisibility: fold an offending row into row t and go again.
      bool divides = true;
      for (std::size_t r = t + 1; r < nr && divides; ++r) {
        for (std::size_t c = t + 1; c < nc; ++c) {
          if (d[r][c] % d[t][t] != 0) {
            add_row(t, BigInt(-1), r);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }

  SmithDecomposition out;
  out.u = IntegerMatrix::from_dense(u);
  out.d = IntegerMatrix::from_dense(d);
  out.v = IntegerMatrix::from_dense(v);
  if (nr == 0 || nc == 0) {
    out.d = IntegerMatrix(nr, nc);
  }
  out.form.diagonal.resize(limit, BigInt(0));
  for (std::size_t i = 0; i < limit; ++i) {
    out.form.diagonal[i] = d[i][i];
    if (!d[i][i].is_zero()) ++out.form.rank;
  }

  if (!(out.u * m * out.v == out.d)) throw InvariantViolation("U * M * V != D");
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (r != c && !d[r][c].is_zero()) throw InvariantViolation("SNF result is not diagonal");
    }
  }
  for (std::size_t i = 0; i + 1 < out.form.rank; ++i) {
    if (out.form.diagonal[i + 1] % out.form.diagonal[i] != 0) {
      throw InvariantViolation("SNF divisibility chain broken");
    }
  }
  if (abs(determinant(out.u)) != 1 || abs(determinant(out.v)) != 1) {
    throw InvariantViolation("SNF transforms are not unimodular");
  }
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  if (m.rows() <= kVerifiedSmithThreshold && m.cols() <= kVerifiedSmithThreshold) {
    return smith_decomposition(m).form;
  }
  SmithForm form = smith_normal_form_sparse(m);
  spot_check(m, form);
  return form;
}

BigInt determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return BigInt(1);
  Dense a = m.to_dense();
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return BigInt(0);
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p) {
  using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  const std::uint64_t mod = p;
  auto reduce = [mod](const BigInt& v) {
    BigInt r = v % BigInt(mod);
    if (r < 0) r += mod;
    return static_cast<std::uint64_t>(r);
  };
  auto inverse = [mod](std::uint64_t a) {
    std::uint64_t result = 1;
    std::uint64_t base = a % mod;
    std::uint64_t e = mod - 2;
    while (e) {
      if (e & 1) result = result * base % mod;
      base = base * base % mod;
      e >>= 1;
    }
    return result;
  };
  std::vector<Row> pivots(m.cols());
  std::vector<bool> has_pivot(m.cols(), false);
  std::size_t rank = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Row row;
    for (const auto& [c, v] : m.row(r)) {
      std::uint64_t x = reduce(v);
      if (x) row.emplace_back(static_cast<std::uint32_t>(c), x);
    }
    while (!row.empty()) {
      std::uint32_t lead = row.front().first;
      if (!has_pivot[lead]) {
        std::uint64_t inv = inverse(row.front().second);
        for (auto& cell : row) cell.second = cell.second * inv % mod;
        pivots[lead] = std::move(row);
        has_pivot[lead] = true;
        ++rank;
        break;
      }
      const Row& piv = pivots[lead];
      std::uint64_t factor = row.front().second;
      Row merged;
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || piv[j].first < row[i].first) {
          merged.emplace_back(piv[j].first, (mod - factor * piv[j].second % mod) % mod);
          ++j;
        } else {
          std::uint64_t x = (row[i].second + mod - factor * piv[j].second % mod) % mod;
          if (x) merged.emplace_back(row[i].first, x);
          ++i;
          ++j;
        }
      }
      row = std::move(merged);
    }
  }
  return rank;
}

}  // namespace cosetcx
