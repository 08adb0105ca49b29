#pragma once

#include <string>

#include "jastrow_dyn/eta.hpp"
#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/protocol.hpp"
#include "jastrow_dyn/quench.hpp"
#include "jastrow_dyn/units.hpp"

namespace jastrow_dyn {

// All parsers throw ConfigError on malformed input. Schemas are in README.md.

// {"preset": "zero" | "constant" | "sine" | "step", ...} or {"t": [...], "eta": [...]}.
EtaSchedule eta_from_json(const std::string& text);
std::string eta_to_json(const EtaSchedule& eta);

Units units_from_json(const std::string& text);

// {"family", "n_particles", "omega0", "lambda0", "c0", "eta", "pair", "units"}.
ModelSpec model_from_json(const std::string& text);
std::string model_to_json(const ModelSpec& model);

// {"kind": "constant" | "piecewise_constant" | "sigmoid" | "tabulated", ...}.
FrequencyProtocol protocol_from_json(const std::string& text);

// {"scenario": "trap_release" | "interaction_sigmoid" | "logcs_phase_slip", ...}.
QuenchScenario scenario_from_json(const std::string& text);

}  // namespace jastrow_dyn
