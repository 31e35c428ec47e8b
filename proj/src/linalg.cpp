#include "ordercone/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ordercone/errors.hpp"

namespace ordercone {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : data_(rows, RatVector(cols)), cols_(cols) {}

RatMatrix::RatMatrix(std::vector<RatVector> rows, std::size_t cols)
    : data_(std::move(rows)), cols_(cols) {
  for (const auto& r : data_) require_same_size(r.size(), cols_, "matrix row");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector c;
  c.reserve(rows());
  for (const auto& r : data_) c.push_back(r[j]);
  return c;
}

RatVector RatMatrix::apply(std::span<const Rational> x) const {
  require_same_size(x.size(), cols_, "matrix-vector product");
  RatVector y;
  y.reserve(rows());
  for (const auto& r : data_) y.push_back(dot(r, x));
  return y;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = data_[i][j];
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  require_same_size(cols_, o.rows(), "matrix product");
  RatMatrix p(rows(), o.cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (data_[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < o.cols(); ++j) p(i, j) += data_[i][k] * o(k, j);
    }
  return p;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a.size(), b.size(), "dot product");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    acc += a[i].raw() * b[i].raw();
  }
  return Rational(acc);
}

RatVector add(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a.size(), b.size(), "vector sum");
  RatVector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RatVector sub(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a.size(), b.size(), "vector difference");
  RatVector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

RatVector scale(std::span<const Rational> a, const Rational& s) {
  RatVector r;
  r.reserve(a.size());
  for (const auto& v : a) r.push_back(v * s);
  return r;
}

RatVector negate(std::span<const Rational> a) { return scale(a, Rational(-1)); }

RatVector zeros(std::size_t n) { return RatVector(n); }

RatVector unit(std::size_t n, std::size_t i) {
  RatVector e(n);
  e.at(i) = 1;
  return e;
}

bool is_zero(std::span<const Rational> a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v.is_zero(); });
}

RatVector primitive(std::span<const Rational> v) {
  mpz_class den_lcm = 1;
  for (const auto& x : v) {
    if (!x.is_zero()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.den().get_mpz_t());
  }
  mpz_class num_gcd = 0;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    mpz_class scaled = x.num() * (den_lcm / x.den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  if (num_gcd == 0) return RatVector(v.begin(), v.end());
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) {
    mpz_class scaled = x.num() * (den_lcm / x.den());
    r.emplace_back(mpz_class(scaled / num_gcd), mpz_class(1));
  }
  return r;
}

std::string to_string(std::span<const Rational> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

RatVector from_ints(std::initializer_list<long> values) {
  RatVector r;
  for (long v : values) r.emplace_back(v);
  return r;
}

namespace {

// Integer echelon form produced by Bareiss elimination on an augmented matrix.
struct Echelon {
  std::vector<std::vector<mpz_class>> m;
  std::vector<std::size_t> pivot_cols;
};

std::vector<mpz_class> integer_row(std::span<const Rational> row, const Rational* extra) {
  mpz_class l = 1;
  auto fold = [&](const Rational& x) {
    if (!x.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  };
  for (const auto& x : row) fold(x);
  if (extra) fold(*extra);
  std::vector<mpz_class> out;
  out.reserve(row.size() + 1);
  for (const auto& x : row) out.push_back(x.num() * (l / x.den()));
  if (extra) out.push_back(extra->num() * (l / extra->den()));
  return out;
}

Echelon bareiss(std::vector<std::vector<mpz_class>> m, std::size_t pivot_limit) {
  Echelon e;
  const std::size_t rows = m.size();
  const std::size_t width = rows ? m[0].size() : 0;
  mpz_class prev = 1;
  std::size_t pr = 0;
  for (std::size_t col = 0; col < pivot_limit && pr < rows; ++col) {
    std::size_t p = pr;
    while (p < rows && m[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[pr]);
    for (std::size_t i = pr + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < width; ++j) {
        mpz_class t = m[pr][col] * m[i][j] - m[i][col] * m[pr][j];
        if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t())) {
          throw InternalError("Bareiss elimination lost exact divisibility");
        }
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[pr][col];
    e.pivot_cols.push_back(col);
    ++pr;
  }
  e.m = std::move(m);
  return e;
}

// Back substitution on the echelon form; free variables take the given values.
RatVector back_substitute(const Echelon& e, std::size_t n, bool homogeneous,
                          const std::vector<std::pair<std::size_t, Rational>>& free_values) {
  RatVector x(n);
  for (const auto& [idx, val] : free_values) x[idx] = val;
  for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
    const std::size_t pc = e.pivot_cols[k];
    const auto& row = e.m[k];
    Rational acc = homogeneous ? Rational(0) : Rational(row[n], mpz_class(1));
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (row[j] != 0 && !x[j].is_zero()) acc -= Rational(row[j], mpz_class(1)) * x[j];
    }
    x[pc] = acc / Rational(row[pc], mpz_class(1));
  }
  return x;
}

}  // namespace

LinearSolution solve_linear_system(const RatMatrix& A, std::span<const Rational> b) {
  require_same_size(b.size(), A.rows(), "linear system right-hand side");
  const std::size_t n = A.cols();
  std::vector<std::vector<mpz_class>> m;
  m.reserve(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) m.push_back(integer_row(A.row(i), &b[i]));
  const Echelon e = bareiss(std::move(m), n);

  LinearSolution sol;
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    sol.kernel.push_back(back_substitute(e, n, true, {{f, Rational(1)}}));
  }
  for (std::size_t i = e.pivot_cols.size(); i < e.m.size(); ++i) {
    if (e.m[i][n] != 0) return sol;
  }
  sol.particular = back_substitute(e, n, false, {});
  return sol;
}

std::vector<RatVector> nullspace(const RatMatrix& A) {
  return solve_linear_system(A, zeros(A.rows())).kernel;
}

std::size_t rank(const RatMatrix& A) { return rank(A.row_list(), A.cols()); }

std::size_t rank(const std::vector<RatVector>& rows, std::size_t cols) {
  std::vector<std::vector<mpz_class>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    require_same_size(r.size(), cols, "rank row");
    m.push_back(integer_row(r, nullptr));
  }
  if (m.empty()) return 0;
  return bareiss(std::move(m), cols).pivot_cols.size();
}

std::vector<std::size_t> independent_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  std::vector<std::size_t> picked;
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    basis.push_back(rows[i]);
    if (rank(basis, cols) == basis.size()) {
      picked.push_back(i);
    } else {
      basis.pop_back();
    }
    if (basis.size() == cols) break;
  }
  return picked;
}

std::optional<RatMatrix> inverse(const RatMatrix& A) {
  require_same_size(A.rows(), A.cols(), "matrix inverse");
  const std::size_t n = A.rows();
  RatMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto sol = solve_linear_system(A, unit(n, j));
    if (!sol.particular || !sol.kernel.empty()) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*sol.particular)[i];
  }
  return inv;
}

}  // namespace ordercone
