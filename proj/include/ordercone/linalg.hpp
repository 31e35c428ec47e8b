#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordercone/rational.hpp"

namespace ordercone {

using RatVector = std::vector<Rational>;

/// Dense row-major rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  /// Builds from explicit rows; all rows must have `cols` entries.
  RatMatrix(std::vector<RatVector> rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return data_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const RatVector& row(std::size_t i) const { return data_[i]; }
  [[nodiscard]] RatVector& row(std::size_t i) { return data_[i]; }
  [[nodiscard]] const std::vector<RatVector>& row_list() const { return data_; }
  [[nodiscard]] RatVector column(std::size_t j) const;

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i][j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i][j]; }

  [[nodiscard]] RatVector apply(std::span<const Rational> x) const;
  [[nodiscard]] RatMatrix transpose() const;
  [[nodiscard]] RatMatrix operator*(const RatMatrix& o) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::vector<RatVector> data_;
  std::size_t cols_ = 0;
};

// Vector helpers. All of them throw DimensionMismatch on length mismatch.
[[nodiscard]] Rational dot(std::span<const Rational> a, std::span<const Rational> b);
[[nodiscard]] RatVector add(std::span<const Rational> a, std::span<const Rational> b);
[[nodiscard]] RatVector sub(std::span<const Rational> a, std::span<const Rational> b);
[[nodiscard]] RatVector scale(std::span<const Rational> a, const Rational& s);
[[nodiscard]] RatVector negate(std::span<const Rational> a);
[[nodiscard]] RatVector zeros(std::size_t n);
[[nodiscard]] RatVector unit(std::size_t n, std::size_t i);
[[nodiscard]] bool is_zero(std::span<const Rational> a);
void require_same_size(std::size_t a, std::size_t b, const char* what);

/// Positive multiple of `v` with coprime integer entries (zero stays zero).
[[nodiscard]] RatVector primitive(std::span<const Rational> v);

[[nodiscard]] std::string to_string(std::span<const Rational> v);
[[nodiscard]] RatVector from_ints(std::initializer_list<long> values);

struct LinearSolution {
  std::optional<RatVector> particular;  ///< nullopt iff the system is inconsistent
  std::vector<RatVector> kernel;        ///< basis of {x : A x = 0}
};

/// Solves A x = b exactly: fraction-free (Bareiss) forward elimination
/// followed by back substitution. Free variables of the particular
/// solution are set to zero.
[[nodiscard]] LinearSolution solve_linear_system(const RatMatrix& A, std::span<const Rational> b);

[[nodiscard]] std::vector<RatVector> nullspace(const RatMatrix& A);
[[nodiscard]] std::size_t rank(const RatMatrix& A);
[[nodiscard]] std::size_t rank(const std::vector<RatVector>& rows, std::size_t cols);

/// Indices of a maximal linearly independent subset of `rows`, greedily in order.
[[nodiscard]] std::vector<std::size_t> independent_rows(const std::vector<RatVector>& rows,
                                                        std::size_t cols);

/// Inverse of a square matrix, nullopt when singular.
[[nodiscard]] std::optional<RatMatrix> inverse(const RatMatrix& A);

}  // namespace ordercone
