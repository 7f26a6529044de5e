#include "zblab/estimate.hpp"

#include <cmath>

#include <json.hpp>

namespace zblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_reference(const Preset& preset) {
    if (!(preset.reference_k_per_m > 0.0))
        throw InvalidPreset("preset '" + preset.name + "' has no positive reference_k_per_m");
}

}  // namespace

ZBEstimate zb_scale(const Preset& preset) {
    check_reference(preset);
    UnitSystem u = preset.units();
    MediumParams params = preset.params_internal();
    MomentumPoint kref = preset.reference_k_internal();

    EnergyPair e = dispersion(params, kref);
    double v = (params.mode == DispersionMode::Dirac)
                   ? params.c_eff
                   : params.hbar * kref.norm() / params.mass;

    ZBEstimate est;
    est.amplitude_m = u.to_si(v * params.hbar / (2.0 * e.e_plus), Dimension::Length);
    est.period_s = u.to_si(params.hbar / e.e_plus, Dimension::Time);
    est.frequency_hz = 1.0 / est.period_s;
    return est;
}

ZBEstimate zb_scale_full(const Preset& preset) {
    check_reference(preset);
    UnitSystem u = preset.units();
    MediumParams params = preset.params_internal();
    MomentumPoint kref = preset.reference_k_internal();

    SuperpositionState st = make_superposition(params, kref, kPi / 4.0, +1, +1);
    ZBCharacter zb = zb_character(st.spinor, params, kref);

    double amp = std::sqrt(zb.amplitude[0] * zb.amplitude[0] +
                           zb.amplitude[1] * zb.amplitude[1] +
                           zb.amplitude[2] * zb.amplitude[2]);
    ZBEstimate est;
    est.amplitude_m = u.to_si(amp, Dimension::Length);
    est.period_s = u.to_si(2.0 * kPi / zb.angular_frequency, Dimension::Time);
    est.frequency_hz = 1.0 / est.period_s;
    return est;
}

double frequency_ratio(const Preset& preset_a, const Preset& preset_b) {
    return zb_scale(preset_a).frequency_hz / zb_scale(preset_b).frequency_hz;
}

std::string estimate_to_json(const std::string& name, const ZBEstimate& scale,
                             const ZBEstimate& full) {
    nlohmann::json j;
    j["name"] = name;
    j["amplitude_m"] = scale.amplitude_m;
    j["period_s"] = scale.period_s;
    j["frequency_hz"] = scale.frequency_hz;
    j["full"] = {{"amplitude_m", full.amplitude_m},
                 {"period_s", full.period_s},
                 {"frequency_hz", full.frequency_hz}};
    return j.dump(2);
}

}  // namespace zblab
