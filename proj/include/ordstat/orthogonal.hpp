#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

namespace ordstat {

/// Square matrix T with ‖TᵀT − I‖_max ≤ tolerance (default 1e-10).
class OrthogonalMatrix {
 public:
  explicit OrthogonalMatrix(Eigen::MatrixXd entries, double tolerance = 1e-10);

  static OrthogonalMatrix identity(std::size_t n);

  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// ‖TᵀT − I‖_max
  double orthogonality_error() const;

 private:
  Eigen::MatrixXd entries_;
};

/// Haar-distributed orthogonal matrix: QR of an iid Gaussian matrix with the
/// signs of R's diagonal normalized positive.
OrthogonalMatrix random_orthogonal(std::size_t n, std::uint64_t seed);

/// Dense text format: first line n, then n rows of n decimals with 17
/// significant digits, row-major.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in);

}  // namespace ordstat
