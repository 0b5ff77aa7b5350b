#include "cosetcx/homology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cosetcx/errors.hpp"

namespace cosetcx {

std::string to_string(const BigInt& value) { return value.str(); }

namespace {

nlohmann::json bigint_json(const BigInt& v) {
  if (v <= BigInt(INT64_MAX) && v >= BigInt(INT64_MIN)) return static_cast<long long>(v);
  return v.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] != 0) m.data_[r].emplace_back(c, BigInt(rows[r][c]));
    }
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<BigInt>>& rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (!rows[r][c].is_zero()) m.data_[r].emplace_back(c, rows[r][c]);
    }
  }
  return m;
}

std::size_t IntegerMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

BigInt IntegerMatrix::get(std::size_t r, std::size_t c) const {
  const auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it == row.end() || it->first != c) return BigInt(0);
  return it->second;
}

void IntegerMatrix::set(std::size_t r, std::size_t c, const BigInt& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("IntegerMatrix::set");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value.is_zero()) {
      row.erase(it);
    } else {
      it->second = value;
    }
  } else if (!value.is_zero()) {
    row.insert(it, Entry{c, value});
  }
}

std::vector<std::vector<BigInt>> IntegerMatrix::to_dense() const {
  std::vector<std::vector<BigInt>> out(rows_, std::vector<BigInt>(cols_, BigInt(0)));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) out[r][c] = v;
  }
  return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  }
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntegerMatrix out(rows_, rhs.cols_);
  std::vector<BigInt> acc(rhs.cols_);
  std::vector<bool> touched(rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::fill(acc.begin(), acc.end(), BigInt(0));
    std::fill(touched.begin(), touched.end(), false);
    for (const auto& [k, a] : data_[r]) {
      for (const auto& [c, b] : rhs.data_[k]) {
        acc[c] += a * b;
        touched[c] = true;
      }
    }
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      if (touched[c] && !acc[c].is_zero()) out.data_[r].emplace_back(c, acc[c]);
    }
  }
  return out;
}

bool IntegerMatrix::operator==(const IntegerMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::string IntegerMatrix::to_triplets() const {
  std::ostringstream out;
  out << rows_ << ' ' << cols_ << ' ' << nonzeros() << '\n';
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) out << r << ' ' << c << ' ' << v << '\n';
  }
  return out.str();
}

IntegerMatrix IntegerMatrix::from_triplets(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw ParseError("triplet header missing");
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t r = 0;
    std::size_t c = 0;
    std::string value;
    if (!(in >> r >> c >> value)) throw ParseError("truncated triplet list");
    if (r >= rows || c >= cols) throw ParseError("triplet index out of range: " + std::to_string(r) + " " + std::to_string(c));
    try {
      m.set(r, c, BigInt(value));
    } catch (const std::runtime_error&) {
      throw ParseError("bad triplet value: " + value);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

std::string Coefficients::name() const {
  return is_integers() ? "Z" : "F" + std::to_string(prime);
}

Coefficients Coefficients::parse(const std::string& text) {
  if (text == "z" || text == "Z") return integers();
  if (text.size() >= 2 && (text[0] == 'f' || text[0] == 'F')) {
    int p = std::stoi(text.substr(1));
    bool prime = p >= 2;
    for (int d = 2; d * d <= p; ++d) {
      if (p % d == 0) prime = false;
    }
    if (prime) return field(static_cast<std::uint32_t>(p));
  }
  throw ParseError("unknown coefficient ring '" + text + "' (use z, f2, f3, f5, ...)");
}

IntegerMatrix boundary_matrix(const SimplicialComplex& x, int k) {
  if (k < 0) return IntegerMatrix(0, 1);
  const std::size_t rows = k == 0 ? 1 : x.face_count(k - 1);
  const auto& cols = x.faces(k);
  IntegerMatrix m(rows, cols.size());
  if (k == 0) {
    for (std::size_t c = 0; c < cols.size(); ++c) m.set(0, c, BigInt(1));
    return m;
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Simplex& s = cols[c];
    for (std::size_t omit = 0; omit < s.size(); ++omit) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(omit));
      std::size_t r = *x.face_index(face);
      m.set(r, c, BigInt(omit % 2 == 0 ? 1 : -1));
    }
  }
  return m;
}

const DegreeHomology& HomologyProfile::at(int degree) const {
  static const DegreeHomology kZero{};
  for (const auto& d : degrees) {
    if (d.degree == degree) return d;
  }
  return kZero;
}

bool HomologyProfile::vanishes_through(int k) const {
  for (const auto& d : degrees) {
    if (d.degree <= k && !d.vanishes()) return false;
  }
  return true;
}

bool HomologyProfile::concentrated_in(int degree) const {
  for (const auto& d : degrees) {
    if (d.degree != degree && !d.vanishes()) return false;
  }
  return true;
}

long long HomologyProfile::euler_characteristic() const {
  long long chi = 0;
  for (const auto& d : degrees) {
    long long b = static_cast<long long>(d.betti);
    chi += (d.degree % 2 == 0) ? b : -b;
  }
  return chi;
}

nlohmann::json HomologyProfile::to_json() const {
  nlohmann::json out;
  out["coefficients"] = coefficients.name();
  out["degrees"] = nlohmann::json::array();
  for (const auto& d : degrees) {
    nlohmann::json entry;
    entry["degree"] = d.degree;
    entry["betti"] = d.betti;
    entry["torsion"] = nlohmann::json::array();
    for (const auto& t : d.torsion) entry["torsion"].push_back(bigint_json(t));
    out["degrees"].push_back(entry);
  }
  return out;
}

namespace {

long long reduced_face_euler(const SimplicialComplex& x) {
  long long chi = -1;  // the empty face in degree -1
  for (int d = 0; d <= x.dimension(); ++d) {
    long long f = static_cast<long long>(x.face_count(d));
    chi += (d % 2 == 0) ? f : -f;
  }
  return chi;
}

HomologyProfile assemble(const SimplicialComplex& x, Coefficients coeff,
                         const std::vector<std::size_t>& ranks,
                         const std::vector<std::vector<BigInt>>& torsion) {
  // ranks[k] = rank of boundary k for k = 0 .. dim + 1 (boundary dim+1 is 0).
  const int dim = x.dimension();
  HomologyProfile h;
  h.coefficients = coeff;
  for (int i = -1; i <= dim; ++i) {
    std::size_t faces = i < 0 ? 1 : x.face_count(i);
    std::size_t out_rank = i < 0 ? 0 : ranks[static_cast<std::size_t>(i)];
    std::size_t in_rank = ranks[static_cast<std::size_t>(i + 1)];
    DegreeHomology dh;
    dh.degree = i;
    dh.betti = faces - out_rank - in_rank;
    dh.torsion = torsion[static_cast<std::size_t>(i + 1)];
    h.degrees.push_back(std::move(dh));
  }
  if (h.euler_characteristic() != reduced_face_euler(x)) {
    throw InvariantViolation("Euler characteristic of Betti numbers disagrees with face counts");
  }
  return h;
}

}  // namespace

HomologyProfile reduced_homology(const SimplicialComplex& x, Coefficients coeff) {
  const int dim = x.dimension();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(dim + 2), 0);
  std::vector<std::vector<BigInt>> torsion(static_cast<std::size_t>(dim + 2));
  for (int k = 0; k <= dim; ++k) {
    IntegerMatrix b = boundary_matrix(x, k);
    if (coeff.is_integers()) {
      SmithForm f = smith_normal_form(b);
      ranks[static_cast<std::size_t>(k)] = f.rank;
      // Torsion of boundary k lives in degree k - 1, stored at index k.
      torsion[static_cast<std::size_t>(k)] = f.torsion();
    } else {
      ranks[static_cast<std::size_t>(k)] = rank_mod_p(b, coeff.prime);
    }
  }
  return assemble(x, coeff, ranks, torsion);
}

HomologyProfile homology_via_universal_coefficients(const SimplicialComplex& x, std::uint32_t p) {
  HomologyProfile z = reduced_homology(x, Coefficients::integers());
  HomologyProfile h;
  h.coefficients = Coefficients::field(p);
  auto p_count = [p](const std::vector<BigInt>& t) {
    std::size_t n = 0;
    for (const auto& v : t) {
      if (v % p == 0) ++n;
    }
    return n;
  };
  for (const auto& d : z.degrees) {
    DegreeHomology out;
    out.degree = d.degree;
    out.betti = d.betti + p_count(d.torsion) + p_count(z.at(d.degree - 1).torsion);
    h.degrees.push_back(out);
  }
  return h;
}

bool is_k_acyclic(const HomologyProfile& h, int k) { return h.vanishes_through(k); }

bool is_k_acyclic(const SimplicialComplex& x, int k, Coefficients coeff) {
  if (k <= -2) return true;
  if (k == -1) return !x.empty();
  if (x.empty()) return false;
  return reduced_homology(x, coeff).vanishes_through(k);
}

Verdict concentration_certificate(const HomologyProfile& h, int degree) {
  nlohmann::json cert;
  cert["degree"] = degree;
  cert["homology"] = h.to_json();
  for (const auto& d : h.degrees) {
    if (d.degree != degree && !d.vanishes()) {
      cert["witness_degree"] = d.degree;
      return Verdict::refuted(cert, "nonzero homology in degree " + std::to_string(d.degree));
    }
  }
  const auto& top = h.at(degree);
  if (!top.torsion.empty()) {
    cert["witness_degree"] = degree;
    return Verdict::refuted(cert, "torsion in degree " + std::to_string(degree));
  }
  cert["rank"] = top.betti;
  return Verdict::verified(cert, "homology free and concentrated in degree " +
                                     std::to_string(degree) + " (homology only)");
}

Verdict sphericity_certificate(const SimplicialComplex& x, Coefficients coeff) {
  auto h = reduced_homology(x, coeff);
  Verdict v = concentration_certificate(h, x.dimension());
  v.certificate["scope"] = "homology-only";
  return v;
}

}  // namespace cosetcx
