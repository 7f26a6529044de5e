#include "zblab/dynamics.hpp"

#include <cmath>

namespace zblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Everything needed to evaluate functions of H at one momentum.
struct Sector {
    MediumParams params;
    MomentumPoint kp;
    Mat4 H;
    HermitianEig eig;
    EnergyPair en;
    DiracAlgebra alg;

    Sector(const MediumParams& p, const MomentumPoint& k)
        : params(p), kp(k), H(hamiltonian(p, k)), eig(hermitian_eig(H)),
          en(dispersion(p, k)), alg(build_algebra()) {
        if (!(en.e_plus > 1e-300))
            throw GaplessPoint("dynamics: E_p vanishes, H not invertible");
    }

    Mat4 func(const std::function<cplx(double)>& f) const {
        Mat4 d = Mat4::diag(f(eig.eigenvalues[0]), f(eig.eigenvalues[1]),
                            f(eig.eigenvalues[2]), f(eig.eigenvalues[3]));
        return eig.eigenvectors * d * eig.eigenvectors.adjoint();
    }

    Mat4 h_inv() const {
        return func([](double lam) { return 1.0 / lam; });
    }

    // exp(-2iHt/hbar)
    Mat4 phase(double t) const {
        const cplx mi(0.0, -1.0);
        const double s = 2.0 * t / params.hbar;
        return func([&](double lam) { return std::exp(mi * s * lam); });
    }

    double p(int axis) const { return params.hbar * kp.k[axis]; }

    Mat4 alpha_coeff(int axis) const {
        // alpha_axis - c p_axis H^-1, the part that anticommutes with H
        return alg.alpha[axis] - (params.c_eff * p(axis)) * h_inv();
    }

    Mat4 beta_coeff() const { return alg.beta - en.eta * h_inv(); }

    double drift_scalar() const { return params.c_eff * params.c_eff + en.eta / params.mass; }

    // x_axis(t) - x_axis(0)
    Mat4 displacement(int axis, double t) const {
        Mat4 hinv = h_inv();
        Mat4 drift = (drift_scalar() * p(axis) * t) * hinv;
        Mat4 osc_coeff = (cplx(params.c_eff)) * alg.alpha[axis] +
                         (cplx(p(axis) / params.mass)) * alg.beta -
                         (cplx(drift_scalar() * p(axis))) * hinv;
        const cplx ih2(0.0, 0.5 * params.hbar);
        return drift + ih2 * (osc_coeff * (phase(t) - Mat4::identity()) * hinv);
    }

    // (alpha x p)_axis
    Mat4 alpha_cross_p(int axis) const {
        int j = (axis + 1) % 3, k = (axis + 2) % 3;
        return p(k) * alg.alpha[j] - p(j) * alg.alpha[k];
    }

    Mat4 spin_zb(int axis) const {
        const cplx ih2(0.0, 0.5 * params.hbar);
        return ih2 * (cplx(params.c_eff) * (alpha_cross_p(axis) * h_inv()));
    }
};

void check_axis(int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1, or 2");
}

}  // namespace

Mat4 alpha_t(const MediumParams& params, const MomentumPoint& kp, int axis, double t) {
    check_axis(axis);
    Sector s(params, kp);
    Mat4 drift = (params.c_eff * s.p(axis)) * s.h_inv();
    return drift + s.alpha_coeff(axis) * s.phase(t);
}

Mat4 beta_t(const MediumParams& params, const MomentumPoint& kp, double t) {
    Sector s(params, kp);
    Mat4 drift = s.en.eta * s.h_inv();
    return drift + s.beta_coeff() * s.phase(t);
}

std::array<Mat4, 3> velocity_op(const MediumParams& params, const MomentumPoint& kp,
                                double t) {
    Sector s(params, kp);
    Mat4 ph = s.phase(t);
    Mat4 hinv = s.h_inv();
    std::array<Mat4, 3> v;
    Mat4 bt = s.en.eta * hinv + s.beta_coeff() * ph;
    for (int i = 0; i < 3; ++i) {
        Mat4 at = (params.c_eff * s.p(i)) * hinv + s.alpha_coeff(i) * ph;
        v[i] = (s.p(i) / params.mass) * bt + cplx(params.c_eff) * at;
    }
    return v;
}

std::array<double, 3> group_velocity(const MediumParams& params, const MomentumPoint& kp) {
    EnergyPair e = dispersion(params, kp);
    if (!(e.e_plus > 1e-300)) throw GaplessPoint("group_velocity: E_plus vanishes");
    double scale = (params.c_eff * params.c_eff + e.eta / params.mass) / e.e_plus;
    return {scale * params.hbar * kp.k[0], scale * params.hbar * kp.k[1],
            scale * params.hbar * kp.k[2]};
}

Mat4 displacement_op(const MediumParams& params, const MomentumPoint& kp, int axis,
                     double t) {
    check_axis(axis);
    Sector s(params, kp);
    return s.displacement(axis, t);
}

Mat4 spin_t(const MediumParams& params, const MomentumPoint& kp, int axis, double t) {
    check_axis(axis);
    Sector s(params, kp);
    Mat4 s0 = (0.5 * params.hbar) * s.alg.sigma_big[axis];
    return s0 - s.spin_zb(axis) * (s.phase(t) - Mat4::identity());
}

Mat4 spin_zb_op(const MediumParams& params, const MomentumPoint& kp, int axis) {
    check_axis(axis);
    Sector s(params, kp);
    return s.spin_zb(axis);
}

namespace {

void check_normalized(const Spinor4& state) {
    if (std::abs(state.norm() - 1.0) > 1e-8)
        throw NotNormalized("state spinor is not normalized");
}

}  // namespace

std::vector<TrajectorySample> expected_trajectory(const Spinor4& state,
                                                  const MediumParams& params,
                                                  const MomentumPoint& kp,
                                                  const std::vector<double>& times) {
    check_normalized(state);
    Sector s(params, kp);
    std::vector<TrajectorySample> out;
    out.reserve(times.size());
    for (double t : times) {
        TrajectorySample samp;
        samp.t = t;
        for (int axis = 0; axis < 3; ++axis) {
            cplx d = inner(state, s.displacement(axis, t) * state);
            if (std::abs(d.imag()) > 1e-10)
                throw std::runtime_error("expected_trajectory: displacement not real");
            samp.displacement[axis] = d.real();

            Mat4 st = (0.5 * params.hbar) * s.alg.sigma_big[axis] -
                      s.spin_zb(axis) * (s.phase(t) - Mat4::identity());
            cplx sp = inner(state, st * state);
            if (std::abs(sp.imag()) > 1e-10)
                throw std::runtime_error("expected_trajectory: spin not real");
            samp.spin[axis] = sp.real();
        }
        out.push_back(samp);
    }
    return out;
}

ZBCharacter zb_character(const Spinor4& state, const MediumParams& params,
                         const MomentumPoint& kp, int samples_per_period) {
    check_normalized(state);
    if (samples_per_period < 4)
        throw std::invalid_argument("zb_character: need at least 4 samples per period");
    Sector s(params, kp);

    ZBCharacter zb;
    zb.angular_frequency = 2.0 * s.en.e_plus / params.hbar;

    // the drift is the expectation of the exact time-linear operator
    Mat4 hinv = s.h_inv();
    for (int axis = 0; axis < 3; ++axis) {
        cplx d = inner(state, ((s.drift_scalar() * s.p(axis)) * hinv) * state);
        zb.drift_velocity[axis] = d.real();
    }

    const double period = 2.0 * kPi / zb.angular_frequency;
    std::array<double, 3> lo{}, hi{};
    lo.fill(0.0);
    hi.fill(0.0);
    for (int n = 0; n < samples_per_period; ++n) {
        double t = period * n / samples_per_period;
        for (int axis = 0; axis < 3; ++axis) {
            cplx d = inner(state, s.displacement(axis, t) * state);
            double r = d.real() - zb.drift_velocity[axis] * t;
            lo[axis] = std::min(lo[axis], r);
            hi[axis] = std::max(hi[axis], r);
        }
    }
    for (int axis = 0; axis < 3; ++axis) zb.amplitude[axis] = 0.5 * (hi[axis] - lo[axis]);
    return zb;
}

SuperpositionState make_superposition(const MediumParams& params, const MomentumPoint& kp,
                                      double theta, int helicity_plus, int helicity_minus) {
    SuperpositionState st;
    st.theta = theta;
    st.plus_state = analytic_eigenstate(params, kp, +1, helicity_plus);
    st.minus_state = analytic_eigenstate(params, kp, -1, helicity_minus);
    st.spinor = cplx(std::sin(theta)) * st.plus_state.spinor +
                cplx(std::cos(theta)) * st.minus_state.spinor;
    return st;
}

double fit_frequency(const std::vector<double>& samples, double dt) {
    if (samples.size() < 3) throw std::invalid_argument("fit_frequency: need >= 3 samples");
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(samples.size());

    double num = 0.0, den = 0.0;
    for (size_t n = 1; n + 1 < samples.size(); ++n) {
        double x0 = samples[n - 1] - mean;
        double x1 = samples[n] - mean;
        double x2 = samples[n + 1] - mean;
        num += x1 * (x0 + x2);
        den += 2.0 * x1 * x1;
    }
    if (den == 0.0) throw std::runtime_error("fit_frequency: signal has no oscillation");
    double c = num / den;
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c) / dt;
}

ZFit superposition_zb(const MediumParams& params, const MomentumPoint& kp,
                      std::pair<int, int> helicity_pair, int theta_samples,
                      int time_samples) {
    if (!(kp.norm() > 0.0)) throw ZeroMomentum("superposition_zb: k = 0");
    if (theta_samples < 2 || time_samples < 8)
        throw std::invalid_argument("superposition_zb: grid too small");
    Sector s(params, kp);

    ZFit fit;
    fit.angular_frequency = 2.0 * s.en.e_plus / params.hbar;
    const double period = 2.0 * kPi / fit.angular_frequency;
    const double dt = period / time_samples;
    Mat4 hinv = s.h_inv();

    // Z_i(theta, t): oscillatory displacement after removing the exact drift
    std::vector<double> thetas(theta_samples);
    for (int a = 0; a < theta_samples; ++a)
        thetas[a] = kPi * (a + 0.5) / (2.0 * theta_samples);  // interior of [0, pi/2]

    // accumulate least squares per axis and keep the theta = pi/4 trace
    std::array<double, 3> num{}, den{};
    std::vector<std::vector<std::array<double, 3>>> z(theta_samples);
    for (int a = 0; a < theta_samples; ++a) {
        SuperpositionState st = make_superposition(params, kp, thetas[a],
                                                   helicity_pair.first, helicity_pair.second);
        std::array<double, 3> drift;
        for (int axis = 0; axis < 3; ++axis)
            drift[axis] =
                inner(st.spinor, ((s.drift_scalar() * s.p(axis)) * hinv) * st.spinor).real();

        z[a].resize(time_samples);
        double s2t = std::sin(2.0 * thetas[a]);
        for (int n = 0; n < time_samples; ++n) {
            double t = n * dt;
            double basis = s2t * std::sin(fit.angular_frequency * t);
            for (int axis = 0; axis < 3; ++axis) {
                double val =
                    inner(st.spinor, s.displacement(axis, t) * st.spinor).real() -
                    drift[axis] * t;
                z[a][n][axis] = val;
                num[axis] += val * basis;
                den[axis] += basis * basis;
            }
        }
    }
    for (int axis = 0; axis < 3; ++axis)
        fit.amplitude[axis] = (den[axis] > 0.0) ? num[axis] / den[axis] : 0.0;
    fit.amplitude_norm = std::sqrt(fit.amplitude[0] * fit.amplitude[0] +
                                   fit.amplitude[1] * fit.amplitude[1] +
                                   fit.amplitude[2] * fit.amplitude[2]);

    for (int a = 0; a < theta_samples; ++a) {
        double s2t = std::sin(2.0 * thetas[a]);
        for (int n = 0; n < time_samples; ++n) {
            double basis = s2t * std::sin(fit.angular_frequency * n * dt);
            for (int axis = 0; axis < 3; ++axis)
                fit.max_residual = std::max(
                    fit.max_residual, std::abs(z[a][n][axis] - fit.amplitude[axis] * basis));
        }
    }

    // frequency from the trace on the dominant axis at theta closest to pi/4
    int a_mid = 0;
    for (int a = 1; a < theta_samples; ++a)
        if (std::abs(thetas[a] - kPi / 4.0) < std::abs(thetas[a_mid] - kPi / 4.0)) a_mid = a;
    int axis_max = 0;
    for (int axis = 1; axis < 3; ++axis)
        if (std::abs(fit.amplitude[axis]) > std::abs(fit.amplitude[axis_max])) axis_max = axis;
    std::vector<double> trace(time_samples);
    for (int n = 0; n < time_samples; ++n) trace[n] = z[a_mid][n][axis_max];
    fit.fitted_frequency = fit_frequency(trace, dt);
    return fit;
}

SpinTable spin_matrix_elements(const MediumParams& params, const MomentumPoint& kp,
                               double zero_tol, double nonzero_tol) {
    if (!(kp.norm() > 0.0)) throw ZeroMomentum("spin_matrix_elements: k = 0");
    Sector s(params, kp);

    // paper order: psi_1 (+,+), psi_2 (+,-), psi_3 (-,+), psi_4 (-,-)
    std::array<EigenState, 4> psi = {
        analytic_eigenstate(params, kp, +1, +1), analytic_eigenstate(params, kp, +1, -1),
        analytic_eigenstate(params, kp, -1, +1), analytic_eigenstate(params, kp, -1, -1)};

    std::array<Mat4, 3> ops = {s.spin_zb(0), s.spin_zb(1), s.spin_zb(2)};

    SpinTable table{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            SpinElement& el = table[i][j];
            for (int axis = 0; axis < 3; ++axis) {
                el.value[axis] = inner(psi[i].spinor, ops[axis] * psi[j].spinor);
                el.magnitude = std::max(el.magnitude, std::abs(el.value[axis]));
            }
            if (el.magnitude > nonzero_tol * params.hbar)
                el.nonzero = true;
            else if (el.magnitude > zero_tol * params.hbar)
                throw std::runtime_error(
                    "spin_matrix_elements: element in the ambiguous band between "
                    "zero_tol and nonzero_tol");
        }
    return table;
}

}  // namespace zblab
