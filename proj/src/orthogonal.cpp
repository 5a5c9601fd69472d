#include "ordstat/orthogonal.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "ordstat/errors.hpp"
#include "ordstat/rng.hpp"

namespace ordstat {

namespace {

double max_abs_deviation_from_identity(const Eigen::MatrixXd& gram) {
  const auto n = gram.rows();
  return (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

OrthogonalMatrix::OrthogonalMatrix(Eigen::MatrixXd entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw UsageError("orthogonal matrix must be square and nonempty");
  if (!entries_.allFinite()) throw DomainError("orthogonal matrix has non-finite entries");
  const double err = orthogonality_error();
  if (!(err <= tolerance))
    throw DomainError(fmt::format("matrix is not orthogonal: |T'T - I|_max = {:.3g}", err));
}

OrthogonalMatrix OrthogonalMatrix::identity(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  return OrthogonalMatrix(Eigen::MatrixXd::Identity(size, size));
}

double OrthogonalMatrix::orthogonality_error() const {
  return max_abs_deviation_from_identity(entries_.transpose() * entries_);
}

OrthogonalMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw UsageError("dimension must be at least 1");
  const auto size = static_cast<Eigen::Index>(n);
  RandomStream stream(seed, 0);
  Eigen::MatrixXd g(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) g(i, j) = stream.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(size, size);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < size; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return OrthogonalMatrix(std::move(q));
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw UsageError("only square matrices are serialized");
  out << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << fmt::format("{:.17g}", m(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 1) throw UsageError("matrix file: expected a positive dimension header");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(in >> m(i, j)))
        throw UsageError(fmt::format("matrix file: missing entry ({}, {})", i, j));
  std::string extra;
  if (in >> extra) throw UsageError("matrix file: trailing data after n*n entries");
  return m;
}

}  // namespace ordstat
