#include "jastrow_dyn/json_io.hpp"

#include "json.hpp"

#include "jastrow_dyn/errors.hpp"

namespace jastrow_dyn {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

template <typename T>
T get(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? get<T>(j, key) : fallback;
}

EtaSchedule eta_from(const json& j) {
    if (j.is_number()) return EtaSchedule::constant(j.get<double>());
    if (j.contains("t")) return EtaSchedule::tabulated(get<std::vector<double>>(j, "t"), get<std::vector<double>>(j, "eta"));
    const auto preset = get<std::string>(j, "preset");
    if (preset == "zero") return EtaSchedule::zero();
    if (preset == "constant") return EtaSchedule::constant(get<double>(j, "value"));
    if (preset == "sine") {
        return EtaSchedule::sine(get<double>(j, "amplitude"), get_or(j, "frequency", 1.0), get_or(j, "phase", 0.0));
    }
    if (preset == "step") return EtaSchedule::step_down(get<double>(j, "value"));
    throw ConfigError("unknown eta preset '" + preset + "'");
}

Units units_from(const json& j) {
    Units u;
    u.hbar = get_or(j, "hbar", 1.0);
    u.mass = get_or(j, "mass", 1.0);
    try {
        u.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return u;
}

json eta_json(const EtaSchedule& eta) {
    const auto& p = eta.parameters();
    const std::string& name = eta.name();
    if (name == "zero") return {{"preset", "zero"}};
    if (name == "constant") return {{"preset", "constant"}, {"value", p.at(0)}};
    if (name == "sine") return {{"preset", "sine"}, {"amplitude", p.at(0)}, {"frequency", p.at(1)}, {"phase", p.at(2)}};
    if (name == "step") return {{"preset", "step"}, {"value", p.at(0)}};
    if (name == "table") {
        const std::size_t n = p.size() / 2;
        return {{"t", std::vector<double>(p.begin(), p.begin() + static_cast<long>(n))},
                {"eta", std::vector<double>(p.begin() + static_cast<long>(n), p.end())}};
    }
    return {{"preset", name}};
}

}  // namespace

EtaSchedule eta_from_json(const std::string& text) { return eta_from(parse(text)); }

std::string eta_to_json(const EtaSchedule& eta) { return eta_json(eta).dump(); }

Units units_from_json(const std::string& text) { return units_from(parse(text)); }

ModelSpec model_from_json(const std::string& text) {
    const json j = parse(text);
    const Family family = family_from_string(get<std::string>(j, "family"));
    const int n = get<int>(j, "n_particles");
    const double w0 = get_or(j, "omega0", 1.0);
    const Units units = j.contains("units") ? units_from(j.at("units")) : Units{};
    const EtaSchedule eta = j.contains("eta") ? eta_from(j.at("eta")) : EtaSchedule::zero();
    if (!eta.is_zero() && family != Family::LogCS && family != Family::LogHyperbolic) {
        throw ConfigError("family " + to_string(family) + " requires eta = 0");
    }
    try {
        switch (family) {
            case Family::PowerLawCS: return ModelSpec::power_law_cs(n, w0, get<double>(j, "lambda0"), units);
            case Family::LogCS: return ModelSpec::log_cs(n, w0, eta, units);
            case Family::Hyperbolic:
                return ModelSpec::hyperbolic(n, w0, get<double>(j, "lambda0"), get<double>(j, "c0"), units);
            case Family::LogHyperbolic: return ModelSpec::log_hyperbolic(n, w0, get<double>(j, "c0"), eta, units);
            case Family::ExpLL: return ModelSpec::exp_ll(n, w0, get<double>(j, "c0"), units);
            case Family::GenericEven: {
                const json& pj = j.at("pair");
                const GenericPair pair = GenericPair::from_preset(get<std::string>(pj, "preset"), get_or(pj, "strength", 1.0));
                return ModelSpec::generic_even(n, w0, get<double>(j, "c0"), pair, units);
            }
        }
    } catch (const InvalidModel& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unhandled family");
}

std::string model_to_json(const ModelSpec& model) {
    json j;
    j["family"] = to_string(model.family());
    j["n_particles"] = model.n_particles();
    j["omega0"] = model.omega0();
    j["units"] = {{"hbar", model.units().hbar}, {"mass", model.units().mass}};
    switch (model.family()) {
        case Family::PowerLawCS: j["lambda0"] = model.lambda(); break;
        case Family::LogCS: j["eta"] = eta_json(model.eta()); break;
        case Family::Hyperbolic:
            j["lambda0"] = model.lambda();
            j["c0"] = model.c0();
            break;
        case Family::LogHyperbolic:
            j["c0"] = model.c0();
            j["eta"] = eta_json(model.eta());
            break;
        case Family::ExpLL: j["c0"] = model.c0(); break;
        case Family::GenericEven:
            j["c0"] = model.c0();
            j["pair"] = {{"preset", model.generic().name},
                         {"strength", model.generic().parameters.empty() ? 1.0 : model.generic().parameters[0]}};
            break;
    }
    return j.dump();
}

FrequencyProtocol protocol_from_json(const std::string& text) {
    const json j = parse(text);
    const auto kind = get<std::string>(j, "kind");
    try {
        if (kind == "constant") return FrequencyProtocol::constant(get<double>(j, "omega"));
        if (kind == "piecewise_constant") {
            return FrequencyProtocol::piecewise_constant(get<std::vector<double>>(j, "breaks"),
                                                         get<std::vector<double>>(j, "omega_sq"));
        }
        if (kind == "sigmoid") return FrequencyProtocol::sigmoid(get<double>(j, "omega0"), get<double>(j, "kappa"));
        if (kind == "tabulated") {
            return FrequencyProtocol::tabulated(get<std::vector<double>>(j, "t"), get<std::vector<double>>(j, "omega_sq"));
        }
    } catch (const InadmissibleProtocol& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown protocol kind '" + kind + "'");
}

QuenchScenario scenario_from_json(const std::string& text) {
    const json j = parse(text);
    const auto name = get<std::string>(j, "scenario");
    const double w0 = get_or(j, "omega0", 1.0);
    try {
        if (name == "trap_release") return QuenchScenario::trap_release(w0, get_or(j, "t_start", 0.0));
        if (name == "interaction_sigmoid") {
            const double kappa = get<double>(j, "kappa");
            double t_start = get_or(j, "t_start", -50.0 / kappa);
            if (j.contains("kappa_t_start")) t_start = get<double>(j, "kappa_t_start") / kappa;
            return QuenchScenario::interaction_sigmoid(w0, kappa, t_start);
        }
        if (name == "logcs_phase_slip") {
            return QuenchScenario::logcs_phase_slip(w0, get<double>(j, "eta0"), get_or(j, "t_start", -1.0));
        }
    } catch (const InadmissibleProtocol& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace jastrow_dyn
