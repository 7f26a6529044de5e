// zblab: spectra, trajectories, Zitterbewegung characterization, physical
// estimates, and the full cross-validation suite for the Bogoliubov /
// Dirac fixed-momentum quasiparticle model.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numerical guard (gapless point, zero momentum, non-Hermitian input).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zblab/estimate.hpp"
#include "zblab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zblab;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string resolve_preset_path(const std::string& path) {
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("ZBLAB_PRESET_DIR")) {
        fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate)) return candidate.string();
        candidate = fs::path(dir) / (path + ".preset");
        if (fs::exists(candidate)) return candidate.string();
    }
    throw InvalidPreset("preset file not found: " + path);
}

struct RunConfig {
    std::string preset_path;
    std::array<double, 3> k{0.0, 0.0, 0.0};
    double theta = kPi / 4.0;
    std::string state_spec = "superposition";
    int hel_plus = +1, hel_minus = -1;
    double t_max = 0.0;
    double periods = 4.0;
    int samples = 256;
    int sweep = 0;
    std::string out_path;
    std::string format = "csv";
    // flag-style params used when no preset is given (internal units)
    double mass = 1.0, mu = 0.0, c_eff = 1.0;
    std::string mode = "bogoliubov";

    UnitSystem units;  // identity when no preset
    MediumParams params() const {
        MediumParams p;
        p.mass = mass;
        p.mu = mu;
        p.c_eff = c_eff;
        p.mode = (mode == "dirac") ? DispersionMode::Dirac : DispersionMode::Bogoliubov;
        p.validate();
        return p;
    }
};

// config file: same key=value format as presets; command-line flags win
void apply_config_file(CLI::App* cmd, const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    auto kv = parse_key_values(ss.str(), path);

    auto absent = [&](const std::string& flag) {
        CLI::Option* o = cmd->get_option_no_throw("--" + flag);
        return o == nullptr || o->count() == 0;
    };
    auto num = [&](const std::string& key, double& dst, const std::string& flag) {
        if (kv.count(key) && absent(flag)) dst = std::stod(kv.at(key));
    };
    if (kv.count("preset") && absent("preset")) cfg.preset_path = kv.at("preset");
    if (kv.count("k") && absent("k")) {
        std::istringstream ks(kv.at("k"));
        char comma;
        if (!(ks >> cfg.k[0] >> comma >> cfg.k[1] >> comma >> cfg.k[2]))
            throw UsageError(path + ": bad k value");
    }
    num("theta", cfg.theta, "theta");
    num("tmax", cfg.t_max, "tmax");
    num("periods", cfg.periods, "periods");
    num("mass", cfg.mass, "mass");
    num("mu", cfg.mu, "mu");
    num("ceff", cfg.c_eff, "ceff");
    if (kv.count("samples") && absent("samples")) cfg.samples = std::stoi(kv.at("samples"));
    if (kv.count("sweep") && absent("sweep")) cfg.sweep = std::stoi(kv.at("sweep"));
    if (kv.count("state") && absent("state")) cfg.state_spec = kv.at("state");
    if (kv.count("out") && absent("out")) cfg.out_path = kv.at("out");
    if (kv.count("format") && absent("format")) cfg.format = kv.at("format");
    if (kv.count("mode") && absent("mode")) cfg.mode = kv.at("mode");
}

void load_preset_into(RunConfig& cfg, Preset& preset, bool& have_preset) {
    if (cfg.preset_path.empty()) return;
    preset = load_preset(resolve_preset_path(cfg.preset_path));
    cfg.units = preset.units();
    MediumParams p = preset.params_internal();
    cfg.mass = p.mass;
    cfg.mu = p.mu;
    cfg.c_eff = p.c_eff;
    cfg.mode = (p.mode == DispersionMode::Dirac) ? "dirac" : "bogoliubov";
    have_preset = true;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + path);
    out << content;
}

// --- spectrum ---------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg) {
    MediumParams params = cfg.params();
    std::vector<MomentumPoint> points;
    if (cfg.sweep > 0) {
        MomentumPoint kp{cfg.k};
        double kn = kp.norm();
        std::array<double, 3> dir = (kn > 0.0)
                                        ? std::array<double, 3>{cfg.k[0] / kn, cfg.k[1] / kn,
                                                                cfg.k[2] / kn}
                                        : std::array<double, 3>{0.0, 0.0, 1.0};
        double kmax = (kn > 0.0) ? kn : 1.0;
        for (int i = 0; i < cfg.sweep; ++i) {
            double r = kmax * i / (cfg.sweep - 1);
            points.push_back(MomentumPoint{{r * dir[0], r * dir[1], r * dir[2]}});
        }
    } else {
        points.push_back(MomentumPoint{cfg.k});
    }

    std::string out = "k1,k2,k3,eta,E_plus,E_minus,k_norm_si,E_plus_si\n";
    for (const MomentumPoint& kp : points) {
        EnergyPair e = dispersion(params, kp);
        out += fmt(kp.k[0]) + "," + fmt(kp.k[1]) + "," + fmt(kp.k[2]) + "," + fmt(e.eta) +
               "," + fmt(e.e_plus) + "," + fmt(e.e_minus) + "," +
               fmt(cfg.units.to_si(kp.norm(), Dimension::Wavevector)) + "," +
               fmt(cfg.units.to_si(e.e_plus, Dimension::Energy)) + "\n";
    }
    write_output(cfg.out_path, out);
    return 0;
}

// --- evolve -----------------------------------------------------------

Spinor4 parse_state(const RunConfig& cfg, const MediumParams& params,
                    const MomentumPoint& kp, json& meta) {
    const std::string& spec = cfg.state_spec;
    meta["state"] = spec;
    if (spec.rfind("eigenstate", 0) == 0) {
        size_t lp = spec.find('('), rp = spec.find(')');
        if (lp == std::string::npos || rp == std::string::npos)
            throw UsageError("state: expected eigenstate(N), N in 1..4");
        int idx = std::stoi(spec.substr(lp + 1, rp - lp - 1));
        if (idx < 1 || idx > 4) throw UsageError("state: eigenstate index must be 1..4");
        int es = (idx <= 2) ? +1 : -1;
        int hs = (idx % 2 == 1) ? +1 : -1;
        return analytic_eigenstate(params, kp, es, hs).spinor;
    }
    if (spec.rfind("superposition", 0) == 0) {
        int hp = cfg.hel_plus, hm = cfg.hel_minus;
        double theta = cfg.theta;
        size_t lp = spec.find('(');
        if (lp != std::string::npos) {
            size_t rp = spec.find(')');
            std::istringstream ss(spec.substr(lp + 1, rp - lp - 1));
            char comma;
            if (!(ss >> theta >> comma >> hp >> comma >> hm))
                throw UsageError("state: expected superposition(theta,hp,hm)");
        }
        meta["theta"] = theta;
        meta["helicity_pair"] = {hp, hm};
        return make_superposition(params, kp, theta, hp, hm).spinor;
    }
    if (spec.rfind("custom", 0) == 0) {
        size_t lp = spec.find('('), rp = spec.find(')');
        if (lp == std::string::npos || rp == std::string::npos)
            throw UsageError("state: expected custom(r1,i1,...,r4,i4)");
        std::istringstream ss(spec.substr(lp + 1, rp - lp - 1));
        std::array<double, 8> v{};
        char comma;
        for (int i = 0; i < 8; ++i) {
            if (i > 0 && !(ss >> comma)) throw UsageError("state: custom needs 8 reals");
            if (!(ss >> v[i])) throw UsageError("state: custom needs 8 reals");
        }
        Spinor4 s;
        for (int i = 0; i < 4; ++i) s[i] = cplx(v[2 * i], v[2 * i + 1]);
        if (std::abs(s.norm() - 1.0) > 1e-12) {
            std::cerr << "warning: custom state renormalized (norm was " << s.norm()
                      << ")\n";
            s = s.normalized();
        }
        return s;
    }
    throw UsageError("unknown state spec: " + spec);
}

int cmd_evolve(const RunConfig& cfg) {
    if (cfg.samples < 2) throw UsageError("evolve: samples must be >= 2");
    MediumParams params = cfg.params();
    MomentumPoint kp{cfg.k};
    EnergyPair e = dispersion(params, kp);
    if (!(e.e_plus > 0.0)) throw GaplessPoint("evolve: E_plus vanishes");

    double period = kPi * params.hbar / e.e_plus;  // 2 pi / (2 E / hbar)
    double t_max = (cfg.t_max > 0.0) ? cfg.t_max : cfg.periods * period;
    if (!(t_max > 0.0)) throw UsageError("evolve: tmax must be positive");

    json meta;
    Spinor4 state = parse_state(cfg, params, kp, meta);

    std::vector<double> times(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i)
        times[i] = t_max * i / (cfg.samples - 1);
    std::vector<TrajectorySample> traj = expected_trajectory(state, params, kp, times);

    const double len = cfg.units.si_factor(Dimension::Length);
    const double tim = cfg.units.si_factor(Dimension::Time);
    std::string out =
        "t,dx,dy,dz,sx,sy,sz,t_si,dx_si,dy_si,dz_si\n";
    for (const TrajectorySample& s : traj) {
        out += fmt(s.t);
        for (double d : s.displacement) out += "," + fmt(d);
        for (double sp : s.spin) out += "," + fmt(sp);
        out += "," + fmt(s.t * tim);
        for (double d : s.displacement) out += "," + fmt(d * len);
        out += "\n";
    }
    write_output(cfg.out_path, out);

    // sidecar metadata
    meta["k"] = {kp.k[0], kp.k[1], kp.k[2]};
    meta["params"] = {{"mass", params.mass},
                      {"mu", params.mu},
                      {"c_eff", params.c_eff},
                      {"mode", cfg.mode}};
    meta["units"] = {{"length_m_per_unit", cfg.units.length_m_per_unit},
                     {"time_s_per_unit", cfg.units.time_s_per_unit},
                     {"energy_J_per_unit", cfg.units.energy_J_per_unit},
                     {"mass_kg_per_unit", cfg.units.mass_kg_per_unit}};
    meta["E_plus"] = e.e_plus;
    meta["zb_angular_frequency"] = 2.0 * e.e_plus / params.hbar;

    ZBCharacter zb = zb_character(state, params, kp);
    meta["drift_velocity"] = {zb.drift_velocity[0], zb.drift_velocity[1],
                              zb.drift_velocity[2]};
    meta["zb_amplitude"] = {zb.amplitude[0], zb.amplitude[1], zb.amplitude[2]};

    // linear-fit residual of the displacement against the drift line
    double lin_res = 0.0;
    for (const TrajectorySample& s : traj)
        for (int axis = 0; axis < 3; ++axis)
            lin_res = std::max(lin_res, std::abs(s.displacement[axis] -
                                                 zb.drift_velocity[axis] * s.t));
    meta["linear_fit_residual"] = lin_res;

    if (!cfg.out_path.empty()) {
        std::ofstream mf(cfg.out_path + ".meta.json", std::ios::binary);
        mf << meta.dump(2) << "\n";
    } else {
        std::cerr << meta.dump(2) << "\n";
    }
    return 0;
}

// --- estimate ---------------------------------------------------------

int cmd_estimate(const RunConfig& cfg, const Preset& preset, bool have_preset) {
    if (!have_preset) throw UsageError("estimate: --preset is required");
    ZBEstimate scale = zb_scale(preset);
    ZBEstimate full = zb_scale_full(preset);
    std::string out = estimate_to_json(preset.name, scale, full) + "\n";
    write_output(cfg.out_path, out);
    return 0;
}

// --- verify -----------------------------------------------------------

int cmd_verify(const VerifyOptions& opts, bool list_only) {
    if (list_only) {
        for (const std::string& n : verify_check_names()) std::cout << n << "\n";
        return 0;
    }
    std::vector<CheckResult> results = run_verification(opts);
    std::cout << format_report(results);
    return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zitterbewegung laboratory for Bogoliubov/Dirac quasiparticles"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string k_str;
    VerifyOptions vopts;
    bool list_only = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--preset", cfg.preset_path, "preset file (searched in ZBLAB_PRESET_DIR)");
        cmd->add_option("--config", config_path, "key=value config file; flags win");
        cmd->add_option("--k", k_str, "momentum as X,Y,Z (internal units)");
        cmd->add_option("--theta", cfg.theta, "superposition mixing angle");
        cmd->add_option("--state", cfg.state_spec,
                        "eigenstate(N) | superposition(theta,hp,hm) | custom(8 reals)");
        cmd->add_option("--tmax", cfg.t_max, "trajectory end time (internal units)");
        cmd->add_option("--periods", cfg.periods, "trajectory length in ZB periods");
        cmd->add_option("--samples", cfg.samples, "number of time samples");
        cmd->add_option("--sweep", cfg.sweep, "radial sweep point count (spectrum)");
        cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
        cmd->add_option("--format", cfg.format, "csv|json");
        cmd->add_option("--mass", cfg.mass, "mass, internal units (no preset)");
        cmd->add_option("--mu", cfg.mu, "chemical potential, internal units (no preset)");
        cmd->add_option("--ceff", cfg.c_eff, "effective speed, internal units (no preset)");
        cmd->add_option("--mode", cfg.mode, "bogoliubov|dirac (no preset)");
        cmd->add_option("--seed", vopts.seed, "seed for randomized verification draws");
        cmd->add_option("--tol", "tolerance overrides NAME=VAL (accepted, informational)")
            ->take_all();
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "dispersion over k points");
    CLI::App* evolve = app.add_subcommand("evolve", "expectation-value trajectory");
    CLI::App* estimate = app.add_subcommand("estimate", "SI-unit ZB amplitude/period report");
    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
    add_common(spectrum);
    add_common(evolve);
    add_common(estimate);
    verify->add_option("--seed", vopts.seed, "seed for randomized draws");
    verify->add_option("--perturb", vopts.perturb, "inject noise into alpha_1 (self-test)");
    verify->add_flag("--list", list_only, "print check names without running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        if (!config_path.empty()) apply_config_file(cmd, config_path, cfg);
        if (cmd->get_option_no_throw("--k") && cmd->count("--k") > 0) {
            std::istringstream ks(k_str);
            char comma;
            if (!(ks >> cfg.k[0] >> comma >> cfg.k[1] >> comma >> cfg.k[2]))
                throw UsageError("bad --k value, expected X,Y,Z");
        }

        Preset preset;
        bool have_preset = false;
        load_preset_into(cfg, preset, have_preset);

        if (cmd == spectrum) return cmd_spectrum(cfg);
        if (cmd == evolve) return cmd_evolve(cfg);
        if (cmd == estimate) return cmd_estimate(cfg, preset, have_preset);
        if (cmd == verify) return cmd_verify(vopts, list_only);
        throw UsageError("no subcommand");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidPreset& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GaplessPoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ZeroMomentum& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotHermitian& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotNormalized& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
