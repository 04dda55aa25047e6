#include "arem/density_oracle.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace arem {
namespace {

using Complex = std::complex<double>;

constexpr double kTraceTolerance = 1e-9;

Eigen::Matrix4cd cnot_unitary() {
  // Pair basis ordered |control target> = 00, 01, 10, 11.
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

Eigen::Matrix2cd x_unitary() {
  Eigen::Matrix2cd u;
  u << 0.0, 1.0, 1.0, 0.0;
  return u;
}

// Indices of the 2^m group members that share every bit outside the given
// wires. sub[k] enumerates bit patterns with the first listed wire most
// significant.
template <std::size_t M>
std::array<Eigen::Index, (1u << M)> group(BasisIndex base, const std::array<BasisIndex, M>& masks) {
  std::array<Eigen::Index, (1u << M)> out{};
  for (std::size_t k = 0; k < (1u << M); ++k) {
    BasisIndex idx = base;
    for (std::size_t b = 0; b < M; ++b) {
      if (k & (1u << (M - 1 - b))) idx |= masks[b];
    }
    out[k] = static_cast<Eigen::Index>(idx);
  }
  return out;
}

template <std::size_t M, typename Unitary>
void conjugate_local(Eigen::MatrixXcd& rho, const std::array<BasisIndex, M>& masks, const Unitary& u) {
  BasisIndex covered = 0;
  for (BasisIndex m : masks) covered |= m;
  const auto dim = static_cast<BasisIndex>(rho.rows());
  constexpr std::size_t kLocal = 1u << M;

  // rho <- U rho
  for (Eigen::Index col = 0; col < rho.cols(); ++col) {
    for (BasisIndex base = 0; base < dim; ++base) {
      if (base & covered) continue;
      const auto idx = group<M>(base, masks);
      Eigen::Matrix<Complex, kLocal, 1> local;
      for (std::size_t k = 0; k < kLocal; ++k) local(static_cast<Eigen::Index>(k)) = rho(idx[k], col);
      local = u * local;
      for (std::size_t k = 0; k < kLocal; ++k) rho(idx[k], col) = local(static_cast<Eigen::Index>(k));
    }
  }
  // rho <- rho U^dagger
  const Unitary u_adj = u.adjoint();
  for (Eigen::Index row = 0; row < rho.rows(); ++row) {
    for (BasisIndex base = 0; base < dim; ++base) {
      if (base & covered) continue;
      const auto idx = group<M>(base, masks);
      Eigen::Matrix<Complex, 1, kLocal> local;
      for (std::size_t k = 0; k < kLocal; ++k) local(static_cast<Eigen::Index>(k)) = rho(row, idx[k]);
      local = local * u_adj;
      for (std::size_t k = 0; k < kLocal; ++k) rho(row, idx[k]) = local(static_cast<Eigen::Index>(k));
    }
  }
}

// rho -> (1 - eps) rho + eps * (I_pair / 4) (x) Tr_pair(rho)
void depolarize_pair(Eigen::MatrixXcd& rho, BasisIndex mask_a, BasisIndex mask_b, double eps) {
  if (eps == 0.0) return;
  const BasisIndex pair = mask_a | mask_b;
  const auto dim = static_cast<BasisIndex>(rho.rows());
  const std::array<BasisIndex, 2> masks{mask_a, mask_b};
  Eigen::MatrixXcd out = (1.0 - eps) * rho;
  for (BasisIndex r = 0; r < dim; ++r) {
    if (r & pair) continue;
    const auto ri = group<2>(r, masks);
    for (BasisIndex c = 0; c < dim; ++c) {
      if (c & pair) continue;
      const auto ci = group<2>(c, masks);
      Complex reduced = 0.0;
      for (std::size_t k = 0; k < 4; ++k) reduced += rho(ri[k], ci[k]);
      for (std::size_t k = 0; k < 4; ++k) out(ri[k], ci[k]) += eps / 4.0 * reduced;
    }
  }
  rho = std::move(out);
}

void check_trace(const Eigen::MatrixXcd& rho, const char* stage) {
  const Complex tr = rho.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTolerance || std::abs(tr.imag()) > kTraceTolerance) {
    throw std::runtime_error(std::string("density matrix trace drifted after ") + stage + ": " +
                             std::to_string(tr.real()));
  }
}

}  // namespace

Eigen::MatrixXcd evolve_density_matrix(const StatePrep& prep, const GateList& gates, const NoiseModel& noise) {
  prep.validate();
  gates.validate();
  const int n = gates.num_wires;
  if (n > kDensityOracleMaxWires) {
    throw std::invalid_argument("density-matrix oracle supports at most " + std::to_string(kDensityOracleMaxWires) +
                                " wires, got " + std::to_string(n));
  }
  if (prep.num_wires() != n) throw std::invalid_argument("state preparation and gate list disagree on wire count");
  noise.validate(n, gates.cnot_count());

  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (double p : prep.zero_weight) {
    Eigen::Vector2cd local(std::sqrt(p), std::sqrt(1.0 - p));
    Eigen::VectorXcd next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * local(0);
      next(2 * i + 1) = psi(i) * local(1);
    }
    psi = std::move(next);
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  check_trace(rho, "preparation");

  const Eigen::Matrix4cd cnot = cnot_unitary();
  const Eigen::Matrix2cd x = x_unitary();
  std::size_t cnot_ordinal = 0;
  for (const Gate& g : gates.gates) {
    if (g.kind == GateKind::X) {
      conjugate_local<1>(rho, {wire_mask(g.target, n)}, x);
      check_trace(rho, "X gate");
      continue;
    }
    const BasisIndex c = wire_mask(g.control, n);
    const BasisIndex t = wire_mask(g.target, n);
    conjugate_local<2>(rho, {c, t}, cnot);
    depolarize_pair(rho, c, t, noise.eps_for(cnot_ordinal++));
    check_trace(rho, "CNOT");
  }
  return rho;
}

ProbVectorD density_matrix_oracle(const StatePrep& prep, const GateList& gates, const NoiseModel& noise) {
  const Eigen::MatrixXcd rho = evolve_density_matrix(prep, gates, noise);
  const int n = gates.num_wires;
  const Eigen::Index dim = rho.rows();
  const Eigen::VectorXd diag = rho.diagonal().real();

  // Readout as the Kronecker product of the per-wire 2x2 stochastic maps.
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      double weight = 1.0;
      for (int w = 0; w < n && weight != 0.0; ++w) {
        const BitflipChannel& ch = noise.readout[static_cast<std::size_t>(w)];
        const bool from = wire_bit(static_cast<BasisIndex>(j), w, n);
        const bool to = wire_bit(static_cast<BasisIndex>(i), w, n);
        const double flip = from ? ch.one_to_zero() : ch.zero_to_one();
        weight *= (from == to) ? 1.0 - flip : flip;
      }
      out(i) += weight * diag(j);
    }
  }
  return ProbVectorD(n, std::move(out));
}

}  // namespace arem
