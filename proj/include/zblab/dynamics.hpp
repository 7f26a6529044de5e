#pragma once

#include <utility>
#include <vector>

#include "zblab/spectral.hpp"

// Closed-form Heisenberg evolution of alpha, beta, position, and spin in a
// fixed-momentum sector, plus extraction of the oscillatory (Zitterbewegung)
// part of expectation-value trajectories.

namespace zblab {

struct NotNormalized : std::runtime_error {
    explicit NotNormalized(const std::string& w) : std::runtime_error(w) {}
};

// alpha_axis(t) = c p H^-1 + (alpha_axis - c p H^-1) exp(-2iHt/hbar)
Mat4 alpha_t(const MediumParams& params, const MomentumPoint& kp, int axis, double t);

// beta(t) = m(p) H^-1 + (beta - m(p) H^-1) exp(-2iHt/hbar)
Mat4 beta_t(const MediumParams& params, const MomentumPoint& kp, double t);

// v_i(t) = (hbar k_i / m) beta(t) + c alpha_i(t)
std::array<Mat4, 3> velocity_op(const MediumParams& params, const MomentumPoint& kp,
                                double t);

// drift velocity (c^2 + m(p)/m) hbar k / E_plus, equal to dE_plus/d(hbar k)
std::array<double, 3> group_velocity(const MediumParams& params, const MomentumPoint& kp);

// x_axis(t) - x_axis(0) as an operator; Hermitian, zero at t = 0
Mat4 displacement_op(const MediumParams& params, const MomentumPoint& kp, int axis,
                     double t);

// S_axis(t) = (hbar/2) Sigma_axis - (i hbar/2) c (alpha x p)_axis H^-1 (exp(-2iHt/hbar) - 1)
Mat4 spin_t(const MediumParams& params, const MomentumPoint& kp, int axis, double t);

// time-independent amplitude operator of the oscillating spin part,
// (i hbar/2) c (alpha x p)_axis H^-1; Hermitian since (alpha x p) anticommutes with H
Mat4 spin_zb_op(const MediumParams& params, const MomentumPoint& kp, int axis);

struct TrajectorySample {
    double t = 0.0;
    std::array<double, 3> displacement{};
    std::array<double, 3> spin{};
};

std::vector<TrajectorySample> expected_trajectory(const Spinor4& state,
                                                  const MediumParams& params,
                                                  const MomentumPoint& kp,
                                                  const std::vector<double>& times);

struct ZBCharacter {
    std::array<double, 3> drift_velocity{};
    std::array<double, 3> amplitude{};  // half peak-to-peak per axis over one period
    double angular_frequency = 0.0;     // 2 E_plus / hbar
};

ZBCharacter zb_character(const Spinor4& state, const MediumParams& params,
                         const MomentumPoint& kp, int samples_per_period = 256);

struct SuperpositionState {
    double theta = 0.0;
    EigenState plus_state;
    EigenState minus_state;
    Spinor4 spinor;  // sin(theta) psi_+ + cos(theta) psi_-
};

SuperpositionState make_superposition(const MediumParams& params, const MomentumPoint& kp,
                                      double theta, int helicity_plus, int helicity_minus);

struct ZFit {
    std::array<double, 3> amplitude{};  // A_i in Z_i = A_i sin(2 theta) sin(2 E_plus t / hbar)
    double angular_frequency = 0.0;     // exact 2 E_plus / hbar
    double fitted_frequency = 0.0;      // three-point phase fit on the theta = pi/4 trace
    double max_residual = 0.0;          // max |Z - model| over the (theta, t) grid
    double amplitude_norm = 0.0;        // euclidean |A|
};

// Fits the oscillatory displacement of sin(theta) psi_+ + cos(theta) psi_- to the
// separable form above, over a uniform (theta, t) grid covering one period.
ZFit superposition_zb(const MediumParams& params, const MomentumPoint& kp,
                      std::pair<int, int> helicity_pair, int theta_samples = 8,
                      int time_samples = 256);

// Estimates the angular frequency of a uniformly sampled single-harmonic
// signal from the three-term recurrence x_{n+1} + x_{n-1} = 2 cos(w dt) x_n.
double fit_frequency(const std::vector<double>& samples, double dt);

struct SpinElement {
    std::array<cplx, 3> value{};  // <psi_i| spin_zb_op |psi_j> per axis
    double magnitude = 0.0;       // max component modulus
    bool nonzero = false;
};

using SpinTable = std::array<std::array<SpinElement, 4>, 4>;

// Matrix elements of the oscillating spin amplitude between the four
// analytic eigenstates (paper order: (+,+), (+,-), (-,+), (-,-)), classified
// zero below zero_tol and nonzero above nonzero_tol (both in units of hbar).
SpinTable spin_matrix_elements(const MediumParams& params, const MomentumPoint& kp,
                               double zero_tol = 1e-10, double nonzero_tol = 1e-3);

}  // namespace zblab
