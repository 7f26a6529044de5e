#pragma once

#include <string>

#include "zblab/dynamics.hpp"

// Headline SI-unit numbers: Zitterbewegung amplitude, period, and frequency
// for a physical preset, from the order-of-magnitude formula and from the
// full expectation-value machinery.

namespace zblab {

struct ZBEstimate {
    double amplitude_m = 0.0;
    double period_s = 0.0;
    double frequency_hz = 0.0;  // 1/period_s by construction
};

// amplitude = v hbar / (2E) with v the Fermi velocity hbar k_ref / m
// (Bogoliubov) or the effective speed c (Dirac), E = E_plus(k_ref);
// period = hbar / E. Throws InvalidPreset when reference_k is missing.
ZBEstimate zb_scale(const Preset& preset);

// amplitude from zb_character of the theta = pi/4 equal superposition at the
// reference momentum; period = one full cycle 2 pi hbar / (2 E_plus).
ZBEstimate zb_scale_full(const Preset& preset);

// ratio of ZB frequencies, preset_a over preset_b
double frequency_ratio(const Preset& preset_a, const Preset& preset_b);

// {"name":..., "amplitude_m":..., "period_s":..., "frequency_hz":...}
std::string estimate_to_json(const std::string& name, const ZBEstimate& scale,
                             const ZBEstimate& full);

}  // namespace zblab
