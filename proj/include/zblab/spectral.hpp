#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zblab/model.hpp"

// Exact dispersion, analytic eigenspinors, helicity operator, and energy
// projectors, with a sweep harness that cross-checks everything against the
// Jacobi eigendecomposition.

namespace zblab {

struct ZeroMomentum : std::runtime_error {
    explicit ZeroMomentum(const std::string& w) : std::runtime_error(w) {}
};
struct GaplessPoint : std::runtime_error {
    explicit GaplessPoint(const std::string& w) : std::runtime_error(w) {}
};

struct EnergyPair {
    double e_plus = 0.0;   // +sqrt(eta^2 + c^2 hbar^2 k^2)
    double e_minus = 0.0;  // -e_plus
    double eta = 0.0;      // hbar^2 k^2 / 2m - mu
};

EnergyPair dispersion(const MediumParams& params, const MomentumPoint& kp);

// hbar * k.Sigma; commutes with the Hamiltonian
Mat4 helicity_operator(const DiracAlgebra& algebra, const MomentumPoint& kp,
                       double hbar = 1.0);

struct EigenState {
    int energy_sign = +1;    // +-1
    int helicity_sign = +1;  // +-1
    Spinor4 spinor;          // normalized, gauge-fixed
    MomentumPoint k;
    double epsilon = 0.0;    // lower/upper amplitude ratio magnitude
};

// One of the four simultaneous eigensolutions of (H, Sigma.p). Throws
// ZeroMomentum when k = 0 (helicity undefined). Axis-aligned k is handled
// by picking the non-vanishing branch of the helicity 2-spinor.
EigenState analytic_eigenstate(const MediumParams& params, const MomentumPoint& kp,
                               int energy_sign, int helicity_sign);

struct Projectors {
    Mat4 gamma_plus;
    Mat4 gamma_minus;
};

// Gamma_+- = (1 +- H/E_p)/2. Throws GaplessPoint when E_p vanishes.
Projectors projectors(const MediumParams& params, const MomentumPoint& kp);

struct SweepPoint {
    MomentumPoint k;
    double e_plus = 0.0;
    double eig_residual = 0.0;   // analytic vs Jacobi eigenvalues, relative
    double proj_residual = 0.0;  // analytic vs oracle eigenspace projector, max-norm
};

struct SweepReport {
    std::vector<SweepPoint> points;
    double max_eig_residual = 0.0;
    double max_proj_residual = 0.0;
};

// Batch cross-validation of the analytic spectrum and eigenspaces over a
// k-grid. Throws std::invalid_argument on an empty grid; per-point errors
// propagate annotated with the grid index.
SweepReport verify_spectrum_sweep(const MediumParams& params,
                                  const std::vector<MomentumPoint>& k_grid);

// CSV with columns k1,k2,k3,E_plus,eig_residual,proj_residual
std::string sweep_to_csv(const SweepReport& report);

}  // namespace zblab
