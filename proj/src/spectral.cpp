#include "zblab/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace zblab {

EnergyPair dispersion(const MediumParams& params, const MomentumPoint& kp) {
    EnergyPair e;
    e.eta = mass_term(params, kp);
    double chk = params.c_eff * params.hbar * kp.norm();
    e.e_plus = std::hypot(e.eta, chk);
    e.e_minus = -e.e_plus;
    return e;
}

Mat4 helicity_operator(const DiracAlgebra& algebra, const MomentumPoint& kp, double hbar) {
    Mat4 h;
    for (int i = 0; i < 3; ++i) h = h + (hbar * kp.k[i]) * algebra.sigma_big[i];
    return h;
}

namespace {

// epsilon_1 = (E - eta)/(c hbar k), epsilon_3 = (E + eta)/(c hbar k),
// each via the cancellation-free of its two algebraically equal forms.
double epsilon_coeff(double e_plus, double eta, double chk, int energy_sign) {
    if (energy_sign > 0)
        return (eta > 0.0) ? chk / (e_plus + eta) : (e_plus - eta) / chk;
    return (eta < 0.0) ? chk / (e_plus - eta) : (e_plus + eta) / chk;
}

// 2-spinor with sigma.k chi = h k chi; the branch choice keeps the
// components away from the vanishing 0/0 limit on the k_3 axis.
std::array<cplx, 2> helicity_two_spinor(const MomentumPoint& kp, int h) {
    const double k1 = kp.k[0], k2 = kp.k[1], k3 = kp.k[2];
    const double k = kp.norm();
    const cplx km(k1, -k2);  // k1 - i k2
    const cplx kp_(k1, k2);  // k1 + i k2
    if (h > 0) {
        if (k3 >= 0.0) return {cplx(k3 + k), kp_};
        return {km, cplx(k - k3)};
    }
    if (k3 >= 0.0) return {km, cplx(-(k + k3))};
    return {cplx(k3 - k), kp_};
}

}  // namespace

EigenState analytic_eigenstate(const MediumParams& params, const MomentumPoint& kp,
                               int energy_sign, int helicity_sign) {
    if (energy_sign != 1 && energy_sign != -1)
        throw std::invalid_argument("energy_sign must be +-1");
    if (helicity_sign != 1 && helicity_sign != -1)
        throw std::invalid_argument("helicity_sign must be +-1");
    const double k = kp.norm();
    if (!(k > 0.0)) throw ZeroMomentum("analytic_eigenstate: helicity undefined at k = 0");

    EnergyPair e = dispersion(params, kp);
    const double chk = params.c_eff * params.hbar * k;
    const double eps = epsilon_coeff(e.e_plus, e.eta, chk, energy_sign);

    // lower/upper ratio g: psi = (chi, g chi)
    double g;
    if (energy_sign > 0)
        g = (helicity_sign > 0) ? eps : -eps;
    else
        g = (helicity_sign > 0) ? -eps : eps;

    auto chi = helicity_two_spinor(kp, helicity_sign);
    Spinor4 psi;
    psi[0] = chi[0];
    psi[1] = chi[1];
    psi[2] = g * chi[0];
    psi[3] = g * chi[1];
    psi = psi.normalized();

    // gauge: first component of significant modulus made real positive
    for (int i = 0; i < 4; ++i) {
        double m = std::abs(psi[i]);
        if (m > 1e-8) {
            cplx phase = std::conj(psi[i]) / m;
            psi = phase * psi;
            break;
        }
    }

    return EigenState{energy_sign, helicity_sign, psi, kp, eps};
}

Projectors projectors(const MediumParams& params, const MomentumPoint& kp) {
    EnergyPair e = dispersion(params, kp);
    if (!(e.e_plus > 1e-300))
        throw GaplessPoint("projectors: E_p vanishes (c_eff = 0 and eta = 0)");
    Mat4 lambda = (1.0 / e.e_plus) * hamiltonian(params, kp);
    Projectors p;
    p.gamma_plus = 0.5 * (Mat4::identity() + lambda);
    p.gamma_minus = 0.5 * (Mat4::identity() - lambda);
    return p;
}

SweepReport verify_spectrum_sweep(const MediumParams& params,
                                  const std::vector<MomentumPoint>& k_grid) {
    if (k_grid.empty()) throw std::invalid_argument("verify_spectrum_sweep: empty k grid");
    SweepReport rep;
    rep.points.reserve(k_grid.size());
    for (size_t idx = 0; idx < k_grid.size(); ++idx) {
        const MomentumPoint& kp = k_grid[idx];
        try {
            EnergyPair e = dispersion(params, kp);
            HermitianEig eig = hermitian_eig(hamiltonian(params, kp));

            const std::array<double, 4> expected{e.e_minus, e.e_minus, e.e_plus, e.e_plus};
            double eig_res = 0.0;
            for (int i = 0; i < 4; ++i)
                eig_res = std::max(eig_res,
                                   std::abs(eig.eigenvalues[i] - expected[i]) / e.e_plus);

            // rank-2 positive-energy projector, analytic spinors vs oracle columns
            EigenState s1 = analytic_eigenstate(params, kp, +1, +1);
            EigenState s2 = analytic_eigenstate(params, kp, +1, -1);
            Mat4 p_analytic = outer(s1.spinor, s1.spinor) + outer(s2.spinor, s2.spinor);
            Mat4 p_oracle;
            for (int j = 0; j < 4; ++j) {
                if (eig.eigenvalues[j] <= 0.0) continue;
                Spinor4 v;
                for (int i = 0; i < 4; ++i) v[i] = eig.eigenvectors(i, j);
                p_oracle = p_oracle + outer(v, v);
            }
            double proj_res = max_abs_diff(p_analytic, p_oracle);

            rep.points.push_back(SweepPoint{kp, e.e_plus, eig_res, proj_res});
            rep.max_eig_residual = std::max(rep.max_eig_residual, eig_res);
            rep.max_proj_residual = std::max(rep.max_proj_residual, proj_res);
        } catch (const std::exception& ex) {
            throw std::runtime_error("verify_spectrum_sweep: grid point " +
                                     std::to_string(idx) + ": " + ex.what());
        }
    }
    return rep;
}

std::string sweep_to_csv(const SweepReport& report) {
    std::string out = "k1,k2,k3,E_plus,eig_residual,proj_residual\n";
    char buf[160];
    for (const SweepPoint& p : report.points) {
        std::snprintf(buf, sizeof(buf), "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n",
                      p.k.k[0], p.k.k[1], p.k.k[2], p.e_plus, p.eig_residual,
                      p.proj_residual);
        out += buf;
    }
    return out;
}

}  // namespace zblab
