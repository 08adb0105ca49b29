#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jastrow_dyn/consistency.hpp"
#include "jastrow_dyn/ermakov.hpp"
#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/hamiltonian.hpp"
#include "jastrow_dyn/json_io.hpp"
#include "jastrow_dyn/quench.hpp"
#include "jastrow_dyn/sampling.hpp"
#include "jastrow_dyn/survival.hpp"
#include "jastrow_dyn/wavefunction.hpp"

#ifndef JASTROW_DYN_VERSION
#define JASTROW_DYN_VERSION "0.0.0"
#endif

namespace jastrow_dyn::cli {

using nlohmann::json;

namespace {

// Validation failure with the name of the violated rule.
struct RuleError : Error {
    std::string rule;
    RuleError(std::string r, const std::string& message)
        : Error("InvalidModel", ErrorCategory::Validation, message), rule(std::move(r)) {}
};

// Flag values; unset ones leave the config untouched.
struct Overrides {
    std::string config_path;
    std::optional<std::string> model, protocol, out, grid, t_list, sampler, gauge;
    std::optional<double> t0, b_dot0;
    std::optional<long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads, configs;
};

json load_json(const std::string& text_or_path, const std::string& what) {
    std::string text = text_or_path;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) {
        std::ifstream in(text_or_path);
        if (!in) throw ConfigError("cannot read " + what + " file '" + text_or_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(what + " is not valid JSON: " + e.what());
    }
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "' in list '" + s + "'");
        }
    }
    return out;
}

// Effective configuration: file, then flags on top.
json merge(const Overrides& o) {
    json cfg = o.config_path.empty() ? json::object() : load_json(o.config_path, "config");
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    if (o.model) cfg["model"] = load_json(*o.model, "model");
    if (o.protocol) cfg["protocol"] = load_json(*o.protocol, "protocol");
    if (o.t0) cfg["t0"] = *o.t0;
    if (o.b_dot0) cfg["b_dot0"] = *o.b_dot0;
    if (o.t_list) cfg["t_list"] = parse_list(*o.t_list);
    if (o.grid) {
        std::string g = *o.grid;
        std::replace(g.begin(), g.end(), ':', ',');
        const auto v = parse_list(g);
        if (v.size() != 3) throw ConfigError("--grid expects start:stop:step");
        cfg["grid"] = {{"start", v[0]}, {"stop", v[1]}, {"step", v[2]}};
    }
    if (o.samples) cfg["sampler"]["samples"] = *o.samples;
    if (o.seed) cfg["sampler"]["seed"] = *o.seed;
    if (o.sampler) cfg["sampler"]["kind"] = *o.sampler;
    if (o.configs) cfg["checks"]["configs"] = *o.configs;
    if (o.gauge) cfg["gauge"] = *o.gauge;
    if (o.out) cfg["output"]["path"] = *o.out;
    return cfg;
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

struct Setup {
    json cfg;
    std::string hash;
    ModelSpec model = ModelSpec::exp_ll(1, 1.0, -1.0);
    std::optional<QuenchScenario> scenario;
    FrequencyProtocol protocol = FrequencyProtocol::constant(1.0);
    std::vector<double> grid;
    double t0 = 0.0;
    std::vector<double> t_list;
    Gauge gauge = Gauge::ZeroOffset;
    int threads = 0;
};

int resolve_threads(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("JASTROW_DYN_THREADS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("JASTROW_DYN_THREADS is not an integer: ") + env);
        }
    }
    return 0;
}

Setup prepare(const Overrides& o) {
    Setup s;
    s.cfg = merge(o);
    s.hash = config_hash(s.cfg.dump());
    s.threads = resolve_threads(o.threads);
    if (!s.cfg.contains("model")) throw ConfigError("config has no model block");
    if (!s.cfg.contains("protocol")) throw ConfigError("config has no protocol block");

    s.model = model_from_json(s.cfg["model"].dump());
    const ValidityReport v = check_normalizable(s.model);
    if (!v.valid) throw RuleError(v.rule, v.message);
    const auto cases = valid_eta_cases(s.model.family());
    const bool eta_allowed =
        std::any_of(cases.begin(), cases.end(), [](const EtaCase& c) { return c.eta != "eta = 0"; });
    if (s.model.carries_eta() && !s.model.eta().is_zero() && !eta_allowed) {
        throw RuleError("eta_admissibility", "this family admits only eta = 0");
    }

    const json& pj = s.cfg["protocol"];
    if (pj.contains("scenario")) {
        s.scenario = scenario_from_json(pj.dump());
        s.model = s.scenario->adapt(s.model);
        s.protocol = s.scenario->protocol();
    } else {
        s.protocol = protocol_from_json(pj.dump());
    }

    s.t0 = value_or(s.cfg, "t0", s.scenario ? s.scenario->t_start : 0.0);
    s.t_list = value_or(s.cfg, "t_list", std::vector<double>{});
    const std::string gauge = value_or<std::string>(s.cfg, "gauge", "zero_offset");
    if (gauge == "natural") {
        s.gauge = Gauge::Natural;
    } else if (gauge != "zero_offset") {
        throw ConfigError("gauge must be zero_offset or natural, got '" + gauge + "'");
    }

    double lo = s.scenario ? std::min(s.scenario->t_start, s.t0) : 0.0;
    double hi = 10.0 / std::max(s.model.omega0(), 1e-300);
    for (double t : s.t_list) hi = std::max(hi, t);
    double step = 0.01;
    if (s.cfg.contains("grid")) {
        const json& g = s.cfg["grid"];
        lo = value_or(g, "start", lo);
        hi = value_or(g, "stop", hi);
        step = value_or(g, "step", step);
    }
    if (!(hi > lo) || !(step > 0.0)) throw ConfigError("grid needs stop > start and step > 0");
    s.grid = uniform_grid(lo, hi, step);
    return s;
}

ScalingSolution scaling_of(const Setup& s) {
    if (s.scenario) return scenario_scaling(*s.scenario, s.grid);
    return solve_forward(s.protocol, s.model.omega0(), value_or(s.cfg, "b_dot0", 0.0), s.grid);
}

std::string num(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string header(const Setup& s, const std::string& sub) {
    return "# jastrow_dyn " JASTROW_DYN_VERSION " " + sub + " config_hash=" + s.hash + "\n";
}

json stamp(const Setup& s, const std::string& sub) {
    return {{"version", JASTROW_DYN_VERSION}, {"subcommand", sub}, {"config_hash", s.hash}};
}

std::string row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t k = 0; k < values.size(); ++k) line += (k ? "," : "") + num(values[k]);
    return line + "\n";
}

std::string join(const std::vector<std::string>& cols) {
    std::string line;
    for (std::size_t k = 0; k < cols.size(); ++k) line += (k ? "," : "") + cols[k];
    return line + "\n";
}

SamplerOptions sampler_of(const Setup& s) {
    SamplerOptions o;
    const json sj = s.cfg.value("sampler", json::object());
    o.n_samples = value_or(sj, "samples", o.n_samples);
    o.seed = value_or(sj, "seed", o.seed);
    o.batches = value_or(sj, "batches", o.batches);
    const std::string kind = value_or<std::string>(sj, "kind", "sobol");
    if (kind == "mc") {
        o.kind = SamplerKind::Pseudo;
    } else if (kind == "sobol") {
        o.kind = SamplerKind::Sobol;
    } else {
        throw ConfigError("sampler kind must be mc or sobol, got '" + kind + "'");
    }
    if (o.n_samples < 1) throw ConfigError("sampler samples must be positive");
    o.threads = s.threads;
    return o;
}

std::vector<double> check_times(const Setup& s) {
    const json cj = s.cfg.value("checks", json::object());
    if (cj.contains("times")) return value_or(cj, "times", std::vector<double>{});
    std::vector<double> times;
    const double lo = s.grid.front(), hi = s.grid.back();
    for (int k = 1; k <= 10; ++k) times.push_back(lo + (hi - lo) * (k - 0.5) / 10.0);
    return times;
}

std::vector<ParticleConfig> check_configs(const Setup& s, const ScalingSolution& scaling, double t,
                                          std::uint64_t salt) {
    const json cj = s.cfg.value("checks", json::object());
    MetropolisOptions m;
    m.n_samples = value_or(cj, "configs", 100);
    m.seed = value_or<std::uint64_t>(cj, "seed", 1) + salt;
    return sample_phi(s.model, scaling, t, m).samples;
}

std::string cmd_ermakov(const Setup& s) {
    const auto scaling = scaling_of(s);
    std::string text = header(s, "ermakov");
    text += "# ermakov_residual=" + num(ermakov_residual(scaling, s.protocol)) + "\n";
    text += join({"t", "b", "b_dot", "omega_sq"});
    for (double t : s.grid) {
        const ScalingState st = scaling.state(t);
        text += row({t, st.b, st.b_dot, s.protocol.omega_sq(t)});
    }
    return text;
}

std::vector<std::string> coeff_columns() {
    auto cols = HamiltonianCoeffs::csv_columns();
    cols.erase(cols.begin());
    return cols;
}

std::vector<double> coeff_values(const HamiltonianCoeffs& h) {
    auto v = h.csv_row();
    v.erase(v.begin());
    return v;
}

std::string cmd_coeffs(const Setup& s) {
    const auto scaling = scaling_of(s);
    const double w0sq = s.model.omega0() * s.model.omega0();
    std::vector<std::string> cols = {"t", "omega_sq_ratio", "b", "a"};
    for (const auto& c : coeff_columns()) cols.push_back(c);
    std::string text = header(s, "coeffs") + join(cols);
    const double hbar = s.model.units().hbar;
    for (double t : s.grid) {
        const double b = scaling.b(t);
        std::vector<double> v = {t, w0sq > 0.0 ? s.protocol.omega_sq(t) / w0sq : s.protocol.omega_sq(t), b,
                                 hbar * s.model.omega0() * s.model.c0() / (b * b * b)};
        for (double x : coeff_values(parent_coeffs(s.model, scaling, t, s.gauge))) v.push_back(x);
        text += row(v);
    }
    return text;
}

std::string cmd_sta(const Setup& s) {
    const auto scaling = scaling_of(s);
    std::string text = header(s, "sta");
    text += "# kernel=" + sta_control(s.model, scaling, s.grid.front()).kernel + "\n";
    text += join({"t", "b", "squeeze", "pair_momentum", "pair_kernel"});
    for (double t : s.grid) {
        const STAControl c = sta_control(s.model, scaling, t);
        text += row({t, scaling.b(t), c.squeeze, c.pair_momentum, c.pair_kernel});
    }
    return text;
}

std::string cmd_consistency(const Setup& s) {
    const auto scaling = scaling_of(s);
    const auto times = check_times(s);
    const double mid = times[times.size() / 2];
    const EtaSchedule eta = s.model.carries_eta() ? s.model.eta() : EtaSchedule::zero();
    const ConsistencyReport rep = hermiticity_check(s.model, eta, scaling, check_configs(s, scaling, mid, 0), times);
    json j = stamp(s, "consistency");
    j["model"] = s.model.describe();
    j["passed"] = rep.passed();
    j["report"] = json::parse(rep.to_json());
    return j.dump(2) + "\n";
}

std::string cmd_residual(const Setup& s) {
    const auto scaling = scaling_of(s);
    TdseOptions opts;
    opts.gauge = s.gauge;
    double worst = 0.0;
    std::size_t count = 0;
    json per_time = json::array();
    const auto times = check_times(s);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto cfgs = check_configs(s, scaling, times[k], k);
        const double r = tdse_residual(s.model, scaling, cfgs, times[k], opts);
        worst = std::max(worst, r);
        count += cfgs.size();
        per_time.push_back({{"t", times[k]}, {"residual", r}});
    }
    json j = stamp(s, "residual");
    j["model"] = s.model.describe();
    j["protocol"] = s.scenario ? s.scenario->name() : s.protocol.name();
    j["max_residual"] = worst;
    j["config_count"] = count;
    j["times"] = per_time;
    return j.dump(2) + "\n";
}

std::string cmd_survival(const Setup& s) {
    if (s.t_list.empty()) throw ConfigError("survival needs t_list (or --t-list)");
    const auto scaling = scaling_of(s);
    const SamplerOptions sampler = sampler_of(s);
    const int n = s.model.n_particles();
    const bool logcs = s.model.family() == Family::LogCS;
    const bool shifted = !s.model.carries_eta() || s.model.eta().is_zero();

    std::vector<SPResult> results;
    if (shifted) results = sp_montecarlo_series(s.model, scaling, s.t_list, s.t0, sampler);

    std::optional<AsymptoteModel> asym;
    std::string note;
    if (shifted) {
        AsymptoteOptions ao;
        ao.sampler = sampler;
        if (s.scenario) ao.r0 = s.scenario->r0();
        try {
            asym = sp_asymptote(s.model, scaling, s.t0, ao);
        } catch (const NoAsymptote& e) {
            note = e.what();
        }
    } else {
        note = "eta != 0: no contour shift, only the upper bound is reported";
    }

    std::string text = header(s, "survival");
    text += "# sampler=" + to_string(sampler.kind) + " samples=" + std::to_string(sampler.n_samples) +
            " seed=" + std::to_string(sampler.seed) + " t0=" + num(s.t0) + "\n";
    if (asym) text += "# asymptote_prefactor=" + num(asym->prefactor) + " stderr=" + num(asym->prefactor_stderr) + "\n";
    if (!note.empty()) text += "# note: " + note + "\n";
    text += join({"t", "sp", "stderr", "asymptote", "bound"});
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < s.t_list.size(); ++k) {
        const double t = s.t_list[k];
        const double sp = shifted ? results[k].estimate : nan;
        const double se = shifted ? results[k].stderr_ : nan;
        const double as = asym ? asym->at(scaling, t) : nan;
        const double bound = logcs ? sp_upper_bound_logcs(n, scaling, t, s.t0, s.model.units()) : nan;
        text += row({t, sp, se, as, bound});
    }
    return text;
}

std::string cmd_scenario(const Setup& s) {
    if (!s.scenario) throw ConfigError("scenario needs a protocol block with a \"scenario\" key");
    const auto sched = scenario_schedule(*s.scenario, s.model, s.grid, s.gauge);
    const auto scaling = scenario_scaling(*s.scenario, s.grid);
    std::string text = header(s, "scenario");
    text += "# scenario=" + s.scenario->name() + " model=" + s.model.describe() + "\n";
    for (const Impulse& i : sched.impulses) {
        text += "# impulse t=" + num(i.time) + " weight=" + num(i.weight) + " kernel=" + i.kernel + "\n";
    }
    std::vector<std::string> cols = {"t", "b", "tau_exact", "tau_approx"};
    for (const auto& c : coeff_columns()) cols.push_back(c);
    text += join(cols);
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        const double t = s.grid[k];
        const ScenarioTau tau = scenario_tau(*s.scenario, s.model, t);
        std::vector<double> v = {t, scaling.b(t), tau.exact,
                                 tau.approximation ? *tau.approximation : std::numeric_limits<double>::quiet_NaN()};
        for (double x : coeff_values(sched.coeffs[k])) v.push_back(x);
        text += row(v);
    }
    return text;
}

void emit(const Setup& s, const std::string& text, std::ostream& out) {
    const std::string path = s.cfg.contains("output") ? value_or<std::string>(s.cfg["output"], "path", "") : "";
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
    f << text;
}

void report(std::ostream& err, const std::string& kind, const std::string& category, const std::string& message,
            const std::string& rule = "") {
    json j = {{"error", kind}, {"category", category}, {"message", message}};
    if (!rule.empty()) j["rule"] = rule;
    err << j.dump() << "\n";
}

}  // namespace

std::string config_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact dynamics of time-dependent Jastrow states", "jastrow_dyn"};
    app.require_subcommand(1);
    Overrides o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration");
        sub->add_option("--model", o.model, "model block: inline JSON or a file");
        sub->add_option("--protocol", o.protocol, "protocol or scenario block: inline JSON or a file");
        sub->add_option("--grid", o.grid, "time grid start:stop:step");
        sub->add_option("--b-dot0", o.b_dot0, "initial b'(0) for integrated protocols");
        sub->add_option("--gauge", o.gauge, "zero_offset or natural");
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--threads", o.threads, "worker threads (env JASTROW_DYN_THREADS, default all)");
    };
    using Command = std::string (*)(const Setup&);
    std::vector<std::pair<CLI::App*, Command>> commands;
    auto add = [&](const char* name, const char* help, Command fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        commands.emplace_back(sub, fn);
        return sub;
    };
    add("ermakov", "scaling factor b(t) as CSV", cmd_ermakov);
    add("coeffs", "parent Hamiltonian coefficients as CSV", cmd_coeffs);
    add("sta", "counterdiabatic control as CSV", cmd_sta);
    add("consistency", "Hermiticity report as JSON", cmd_consistency)
        ->add_option("--configs", o.configs, "Metropolis configurations");
    add("residual", "Schroedinger residual report as JSON", cmd_residual)
        ->add_option("--configs", o.configs, "Metropolis configurations per time");
    CLI::App* surv = add("survival", "survival probability as CSV", cmd_survival);
    surv->add_option("--t0", o.t0, "initial time");
    surv->add_option("--t-list", o.t_list, "comma-separated times");
    surv->add_option("--samples", o.samples, "samples per time");
    surv->add_option("--seed", o.seed, "sampler seed");
    surv->add_option("--sampler", o.sampler, "mc or sobol")->check(CLI::IsMember({"mc", "sobol"}));
    add("scenario", "quench preset schedule as CSV", cmd_scenario);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        report(err, "UsageError", "validation", e.what());
        return 1;
    }

    for (const auto& [sub, fn] : commands) {
        if (!sub->parsed()) continue;
        try {
            const Setup setup = prepare(o);
            emit(setup, fn(setup), out);
            return 0;
        } catch (const RuleError& e) {
            report(err, e.kind(), "validation", e.what(), e.rule);
            return 1;
        } catch (const Error& e) {
            const bool validation = e.category() == ErrorCategory::Validation;
            report(err, e.kind(), validation ? "validation" : "numerical", e.what());
            return validation ? 1 : 2;
        } catch (const std::exception& e) {
            report(err, "InternalError", "numerical", e.what());
            return 2;
        }
    }
    return 1;
}

}  // namespace jastrow_dyn::cli
