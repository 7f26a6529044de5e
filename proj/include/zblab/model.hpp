#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "zblab/linalg.hpp"

// Physical parameterization and construction of the quasiparticle
// Hamiltonian H = m(p) beta + c p.alpha in the fixed-momentum sector,
// plus the unit bookkeeping that maps internal (hbar = 1) numbers to SI.

namespace zblab {

inline constexpr double kHbarSI = 1.054571817e-34;  // J s

struct UnknownDimension : std::runtime_error {
    explicit UnknownDimension(const std::string& w) : std::runtime_error(w) {}
};
struct InvalidPreset : std::runtime_error {
    explicit InvalidPreset(const std::string& w) : std::runtime_error(w) {}
};

enum class Dimension { Length, Time, Energy, Mass, Velocity, Wavevector };

struct UnitSystem {
    double hbar_internal = 1.0;
    double length_m_per_unit = 1.0;
    double time_s_per_unit = 1.0;
    double energy_J_per_unit = 1.0;
    double mass_kg_per_unit = 1.0;

    // Derive a consistent system from a mass scale and an energy scale.
    // time is fixed by hbar_SI = hbar_internal * energy_unit * time_unit,
    // length by energy = mass * (length/time)^2.
    static UnitSystem from_mass_energy(double mass_kg, double energy_J,
                                       double hbar_internal = 1.0);

    // energy_unit * time_unit * hbar_internal == hbar_SI, to 1e-12 relative
    bool consistent(double rel_tol = 1e-12) const;

    double si_factor(Dimension d) const;
    double to_si(double internal_value, Dimension d) const { return internal_value * si_factor(d); }
    double from_si(double value_si, Dimension d) const { return value_si / si_factor(d); }
};

enum class DispersionMode { Bogoliubov, Dirac };

// Parameters in internal units. mass and c_eff must be positive; mu is
// ignored in Dirac mode.
struct MediumParams {
    double mass = 1.0;
    double mu = 0.0;
    double c_eff = 1.0;
    DispersionMode mode = DispersionMode::Bogoliubov;
    double hbar = 1.0;

    void validate() const;
};

struct MomentumPoint {
    std::array<double, 3> k{};

    double norm() const;
};

struct DiracAlgebra {
    std::array<Mat4, 3> alpha;
    Mat4 beta;
    std::array<Mat4, 3> sigma_big;  // block-diagonal Pauli vector
};

// Exact Pauli-representation matrices; entries in {0, +-1, +-i}.
DiracAlgebra build_algebra();

// m(p) = hbar^2 k^2 / 2m - mu (Bogoliubov) or m c^2 (Dirac)
double mass_term(const MediumParams& params, const MomentumPoint& kp);

// H = m(p) beta + c hbar k.alpha
Mat4 hamiltonian(const MediumParams& params, const MomentumPoint& kp);

// Preset file handling: plain key=value lines, '#' comments.
// Keys: name, mode, mass_kg, mu_J, and either c_eff_m_per_s or the pair
// (delta_B_J, k_F_per_m); optional reference_k_per_m.
struct Preset {
    std::string name;
    DispersionMode mode = DispersionMode::Bogoliubov;
    double mass_kg = 0.0;
    double mu_J = 0.0;
    double c_eff_m_per_s = 0.0;
    double reference_k_per_m = 0.0;

    UnitSystem units() const;
    MediumParams params_internal() const;
    MomentumPoint reference_k_internal() const;
};

Preset load_preset(const std::string& path);
Preset parse_preset(const std::string& text, const std::string& origin = "<string>");

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& origin);

}  // namespace zblab
