#include "zblab/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace zblab {

UnitSystem UnitSystem::from_mass_energy(double mass_kg, double energy_J, double hbar_internal) {
    if (!(mass_kg > 0.0) || !(energy_J > 0.0) || !(hbar_internal > 0.0))
        throw InvalidPreset("unit scales must be positive");
    UnitSystem u;
    u.hbar_internal = hbar_internal;
    u.mass_kg_per_unit = mass_kg;
    u.energy_J_per_unit = energy_J;
    u.time_s_per_unit = kHbarSI / (hbar_internal * energy_J);
    u.length_m_per_unit = u.time_s_per_unit * std::sqrt(energy_J / mass_kg);
    return u;
}

bool UnitSystem::consistent(double rel_tol) const {
    if (!(length_m_per_unit > 0.0 && time_s_per_unit > 0.0 && energy_J_per_unit > 0.0 &&
          mass_kg_per_unit > 0.0 && hbar_internal > 0.0))
        return false;
    double lhs = energy_J_per_unit * time_s_per_unit * hbar_internal;
    if (std::abs(lhs - kHbarSI) > rel_tol * kHbarSI) return false;
    // energy = mass length^2 / time^2
    double e = mass_kg_per_unit * length_m_per_unit * length_m_per_unit /
               (time_s_per_unit * time_s_per_unit);
    return std::abs(e - energy_J_per_unit) <= rel_tol * energy_J_per_unit;
}

double UnitSystem::si_factor(Dimension d) const {
    switch (d) {
        case Dimension::Length: return length_m_per_unit;
        case Dimension::Time: return time_s_per_unit;
        case Dimension::Energy: return energy_J_per_unit;
        case Dimension::Mass: return mass_kg_per_unit;
        case Dimension::Velocity: return length_m_per_unit / time_s_per_unit;
        case Dimension::Wavevector: return 1.0 / length_m_per_unit;
    }
    throw UnknownDimension("si_factor: bad dimension tag");
}

void MediumParams::validate() const {
    if (!(mass > 0.0)) throw InvalidPreset("mass must be positive");
    if (!(c_eff > 0.0)) throw InvalidPreset("c_eff must be positive");
    if (!(hbar > 0.0)) throw InvalidPreset("hbar must be positive");
    if (!std::isfinite(mu)) throw InvalidPreset("mu must be finite");
}

double MomentumPoint::norm() const {
    return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

DiracAlgebra build_algebra() {
    const cplx i(0.0, 1.0);
    Mat4 s1, s2, s3;  // block-diagonal sigma_i
    // sigma_1
    s1(0, 1) = 1.0; s1(1, 0) = 1.0; s1(2, 3) = 1.0; s1(3, 2) = 1.0;
    // sigma_2
    s2(0, 1) = -i; s2(1, 0) = i; s2(2, 3) = -i; s2(3, 2) = i;
    // sigma_3
    s3(0, 0) = 1.0; s3(1, 1) = -1.0; s3(2, 2) = 1.0; s3(3, 3) = -1.0;

    DiracAlgebra alg;
    alg.sigma_big = {s1, s2, s3};

    // alpha_i = off-diagonal sigma_i blocks
    auto offdiag = [](const Mat4& s) {
        Mat4 a;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a(r, c + 2) = s(r, c);
                a(r + 2, c) = s(r, c);
            }
        return a;
    };
    alg.alpha = {offdiag(s1), offdiag(s2), offdiag(s3)};

    alg.beta = Mat4::diag(1.0, 1.0, -1.0, -1.0);
    return alg;
}

double mass_term(const MediumParams& params, const MomentumPoint& kp) {
    if (params.mode == DispersionMode::Dirac)
        return params.mass * params.c_eff * params.c_eff;
    double k2 = kp.k[0] * kp.k[0] + kp.k[1] * kp.k[1] + kp.k[2] * kp.k[2];
    return params.hbar * params.hbar * k2 / (2.0 * params.mass) - params.mu;
}

Mat4 hamiltonian(const MediumParams& params, const MomentumPoint& kp) {
    DiracAlgebra alg = build_algebra();
    Mat4 h = mass_term(params, kp) * alg.beta;
    for (int i = 0; i < 3; ++i)
        h = h + (params.c_eff * params.hbar * kp.k[i]) * alg.alpha[i];
    return h;
}

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        size_t b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        size_t e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidPreset(origin + ":" + std::to_string(lineno) +
                                ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw InvalidPreset(origin + ":" + std::to_string(lineno) + ": empty key or value");
        kv[key] = val;
    }
    return kv;
}

namespace {

double parse_double(const std::map<std::string, std::string>& kv, const std::string& key,
                    const std::string& origin) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidPreset(origin + ": missing key '" + key + "'");
    try {
        size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw InvalidPreset(origin + ": key '" + key + "' is not a number: " + it->second);
    }
}

}  // namespace

Preset parse_preset(const std::string& text, const std::string& origin) {
    auto kv = parse_key_values(text, origin);
    Preset p;
    if (auto it = kv.find("name"); it != kv.end()) p.name = it->second;

    auto mit = kv.find("mode");
    if (mit == kv.end()) throw InvalidPreset(origin + ": missing key 'mode'");
    if (mit->second == "bogoliubov")
        p.mode = DispersionMode::Bogoliubov;
    else if (mit->second == "dirac")
        p.mode = DispersionMode::Dirac;
    else
        throw InvalidPreset(origin + ": mode must be 'bogoliubov' or 'dirac'");

    p.mass_kg = parse_double(kv, "mass_kg", origin);
    if (kv.count("mu_J")) p.mu_J = parse_double(kv, "mu_J", origin);

    if (kv.count("c_eff_m_per_s")) {
        p.c_eff_m_per_s = parse_double(kv, "c_eff_m_per_s", origin);
    } else if (kv.count("delta_B_J") && kv.count("k_F_per_m")) {
        double delta = parse_double(kv, "delta_B_J", origin);
        double kf = parse_double(kv, "k_F_per_m", origin);
        if (!(kf > 0.0)) throw InvalidPreset(origin + ": k_F_per_m must be positive");
        p.c_eff_m_per_s = delta / (kf * kHbarSI);
    } else {
        throw InvalidPreset(origin + ": need c_eff_m_per_s or (delta_B_J, k_F_per_m)");
    }
    if (!(p.mass_kg > 0.0)) throw InvalidPreset(origin + ": mass_kg must be positive");
    if (!(p.c_eff_m_per_s > 0.0)) throw InvalidPreset(origin + ": effective speed must be positive");

    if (kv.count("reference_k_per_m"))
        p.reference_k_per_m = parse_double(kv, "reference_k_per_m", origin);
    return p;
}

Preset load_preset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidPreset("cannot open preset file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_preset(ss.str(), path);
}

UnitSystem Preset::units() const {
    // mass unit = particle mass, velocity unit = c_eff
    return UnitSystem::from_mass_energy(mass_kg, mass_kg * c_eff_m_per_s * c_eff_m_per_s);
}

MediumParams Preset::params_internal() const {
    UnitSystem u = units();
    MediumParams p;
    p.mass = u.from_si(mass_kg, Dimension::Mass);
    p.mu = u.from_si(mu_J, Dimension::Energy);
    p.c_eff = u.from_si(c_eff_m_per_s, Dimension::Velocity);
    p.mode = mode;
    p.hbar = u.hbar_internal;
    p.validate();
    return p;
}

MomentumPoint Preset::reference_k_internal() const {
    UnitSystem u = units();
    double kz = u.from_si(reference_k_per_m, Dimension::Wavevector);
    return MomentumPoint{{0.0, 0.0, kz}};
}

}  // namespace zblab
