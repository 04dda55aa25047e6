#pragma once

// Passive readout mitigation: characterize the response matrix
// R(i, j) = Pr(measure i | prepared j) and undo it by a linear solve.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arem/bits.hpp"

namespace arem {

template <typename Scalar>
struct ResponseMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int num_logical = 0;
  Matrix values;  // column j: outcome distribution when preparing basis state j

  Eigen::Index dim() const { return values.rows(); }

  void validate(Scalar tolerance = Scalar(1e-12)) const {
    const auto expected = static_cast<Eigen::Index>(basis_size(num_logical));
    if (values.rows() != expected || values.cols() != expected) {
      throw std::invalid_argument("response matrix must be 2^k x 2^k");
    }
    if ((values.array() < Scalar(0)).any() || (values.array() > Scalar(1)).any()) {
      throw std::domain_error("response matrix entries outside [0,1]");
    }
    using std::abs;
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const Scalar s = values.col(j).sum();
      if (abs(s - Scalar(1)) > tolerance) {
        throw std::domain_error("response matrix column " + to_bitstring(static_cast<BasisIndex>(j), num_logical) +
                                " sums to " + std::to_string(static_cast<double>(s)));
      }
    }
  }
};

using ResponseMatrixD = ResponseMatrix<double>;

/// Builds R column by column; system(j) returns the outcome distribution over
/// 2^k logical states when basis state j is prepared.
template <typename Scalar>
ResponseMatrix<Scalar> build_response_matrix(
    const std::function<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(BasisIndex)>& system, int num_logical) {
  ResponseMatrix<Scalar> r;
  r.num_logical = num_logical;
  const auto dim = static_cast<Eigen::Index>(basis_size(num_logical));
  r.values.resize(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto column = system(static_cast<BasisIndex>(j));
    if (column.size() != dim) throw std::invalid_argument("response column has the wrong length");
    r.values.col(j) = column;
  }
  r.validate();
  return r;
}

/// R itself when the readout is a single symmetric flip channel.
template <typename Scalar>
ResponseMatrix<Scalar> symmetric_single_qubit_response(Scalar q) {
  ResponseMatrix<Scalar> r;
  r.num_logical = 1;
  r.values.resize(2, 2);
  r.values << Scalar(1) - q, q, q, Scalar(1) - q;
  return r;
}

class IllConditionedError : public std::domain_error {
 public:
  IllConditionedError(double condition_number, double cap)
      : std::domain_error(message(condition_number, cap)), condition_number_(condition_number) {}

  double condition_number() const { return condition_number_; }

 private:
  static std::string message(double cond, double cap) {
    std::ostringstream os;
    os << "response matrix is ill-conditioned: condition number " << cond << " exceeds cap " << cap;
    return os.str();
  }
  double condition_number_;
};

/// 2-norm condition number, infinite for a singular matrix.
template <typename Derived>
typename Derived::Scalar condition_number(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
  const auto& sv = svd.singularValues();
  const Scalar smallest = sv(sv.size() - 1);
  if (!(smallest > Scalar(0))) return std::numeric_limits<Scalar>::infinity();
  return sv(0) / smallest;
}

struct InversionOptions {
  double condition_cap = 1e8;
};

/// Result of R^-1 m. Entries may be negative; they are reported as-is.
template <typename Scalar>
struct CorrectedEstimate {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
  Scalar condition_number = Scalar(0);

  bool has_negative() const { return (values.array() < Scalar(0)).any(); }
};

template <typename Scalar>
CorrectedEstimate<Scalar> invert_correct(const ResponseMatrix<Scalar>& r,
                                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& measured,
                                         const InversionOptions& options = {}) {
  if (measured.size() != r.dim()) throw std::invalid_argument("measured distribution length does not match R");
  const Scalar cond = condition_number(r.values);
  if (!(cond <= Scalar(options.condition_cap))) {
    throw IllConditionedError(static_cast<double>(cond), options.condition_cap);
  }
  CorrectedEstimate<Scalar> out;
  out.values = r.values.partialPivLu().solve(measured);
  out.condition_number = cond;
  return out;
}

/// Euclidean projection onto the probability simplex (sort-and-threshold).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> project_to_simplex(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sorted = v;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<Scalar>());
  Scalar running = Scalar(0);
  Scalar theta = Scalar(0);
  for (Eigen::Index i = 0; i < sorted.size(); ++i) {
    running += sorted(i);
    const Scalar candidate = (running - Scalar(1)) / Scalar(i + 1);
    if (sorted(i) - candidate > Scalar(0)) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(Scalar(0)).matrix();
}

}  // namespace arem
