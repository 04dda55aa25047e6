#pragma once

#include <Eigen/Dense>

#include "arem/noise.hpp"

namespace arem {

inline constexpr int kDensityOracleMaxWires = 10;

/// Full density-matrix reference simulation. Amplitudes (sqrt p, sqrt(1-p))
/// are prepared per wire, each CNOT is applied as a 4x4 unitary on its pair
/// followed by rho -> (1-eps) rho + eps * (I/4 (x) Tr_pair rho), and the
/// readout channels act on the final diagonal. Limited to 10 wires.
ProbVectorD density_matrix_oracle(const StatePrep& prep, const GateList& gates, const NoiseModel& noise);

/// The final density matrix before readout. Exposed for tests that inspect
/// coherences.
Eigen::MatrixXcd evolve_density_matrix(const StatePrep& prep, const GateList& gates, const NoiseModel& noise);

}  // namespace arem
