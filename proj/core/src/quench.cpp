#include "jastrow_dyn/quench.hpp"

#include <cmath>
#include <sstream>

#include "jastrow_dyn/errors.hpp"

namespace jastrow_dyn {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::TrapRelease: return "trap_release";
        case ScenarioKind::InteractionSigmoid: return "interaction_sigmoid";
        case ScenarioKind::LogCSPhaseSlip: return "logcs_phase_slip";
    }
    return "unknown";
}

QuenchScenario QuenchScenario::trap_release(double omega0, double t_start) {
    if (!(omega0 > 0.0)) throw InadmissibleProtocol("trap release needs omega0 > 0");
    QuenchScenario s;
    s.kind = ScenarioKind::TrapRelease;
    s.omega0 = omega0;
    s.t_start = t_start;
    return s;
}

QuenchScenario QuenchScenario::interaction_sigmoid(double omega0, double kappa, double t_start) {
    if (!(omega0 > 0.0) || !(kappa > 0.0)) throw InadmissibleProtocol("sigmoid quench needs omega0 > 0 and kappa > 0");
    QuenchScenario s;
    s.kind = ScenarioKind::InteractionSigmoid;
    s.omega0 = omega0;
    s.kappa = kappa;
    s.t_start = t_start;
    return s;
}

QuenchScenario QuenchScenario::logcs_phase_slip(double omega0, double eta0, double t_start) {
    if (!(omega0 > 0.0)) throw InadmissibleProtocol("phase slip needs omega0 > 0");
    QuenchScenario s;
    s.kind = ScenarioKind::LogCSPhaseSlip;
    s.omega0 = omega0;
    s.eta0 = eta0;
    s.t_start = t_start;
    return s;
}

std::string QuenchScenario::name() const { return to_string(kind); }

ScalingState QuenchScenario::state(double t) const {
    switch (kind) {
        case ScenarioKind::TrapRelease: {
            if (t < 0.0) return {1.0, 0.0, 0.0};
            const double w2 = omega0 * omega0;
            const double b = std::sqrt(1.0 + w2 * t * t);
            return {b, w2 * t / b, w2 / (b * b * b)};
        }
        case ScenarioKind::InteractionSigmoid: {
            const double e = std::exp(kappa * t);
            return {0.5 * (1.0 + e), 0.5 * kappa * e, 0.5 * kappa * kappa * e};
        }
        case ScenarioKind::LogCSPhaseSlip:
            return {1.0, 0.0, 0.0};
    }
    return {};
}

FrequencyProtocol QuenchScenario::protocol() const {
    switch (kind) {
        case ScenarioKind::TrapRelease:
            return FrequencyProtocol::piecewise_constant({0.0}, {omega0 * omega0, 0.0});
        case ScenarioKind::InteractionSigmoid:
            return FrequencyProtocol::sigmoid(omega0, kappa);
        case ScenarioKind::LogCSPhaseSlip:
            return FrequencyProtocol::constant(omega0);
    }
    return FrequencyProtocol::constant(omega0);
}

double QuenchScenario::r0() const { return kind == ScenarioKind::InteractionSigmoid ? kappa : 0.0; }

ModelSpec QuenchScenario::adapt(const ModelSpec& model) const {
    if (kind == ScenarioKind::LogCSPhaseSlip) {
        if (model.family() != Family::LogCS) {
            throw IncompatibleScenario("logcs_phase_slip needs the LogCS family, got " + to_string(model.family()));
        }
        return ModelSpec::log_cs(model.n_particles(), omega0, EtaSchedule::step_down(eta0), model.units());
    }
    if (model.carries_eta() && !model.eta().is_zero()) {
        throw IncompatibleScenario(name() + " needs an eta = 0 family, got " + model.describe());
    }
    if (model.omega0() != omega0) {
        std::ostringstream os;
        os << name() << " has omega0 = " << omega0 << " but the model has " << model.omega0();
        throw IncompatibleScenario(os.str());
    }
    return model;
}

ScalingSolution scenario_scaling(const QuenchScenario& s, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw OutOfGrid("scenario grid is empty");
    return ScalingSolution::analytic(
        s.omega0, [s](double t) { return s.state(t); }, t_grid, t_grid.front(), t_grid.back(), s.name());
}

ScenarioSchedule scenario_schedule(const QuenchScenario& s, const ModelSpec& model, const std::vector<double>& t_grid,
                                   Gauge gauge) {
    const ModelSpec m = s.adapt(model);
    const ScalingSolution scaling = scenario_scaling(s, t_grid);
    ScenarioSchedule out;
    for (double t : t_grid) out.coeffs.push_back(parent_coeffs(m, scaling, t, gauge));
    out.impulses = eta_impulses(m, scaling, t_grid.front(), t_grid.back());
    return out;
}

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Antiderivative of (1 + e^{k s})^{-2}.
double sigmoid_primitive(double kappa, double s) {
    const double x = kappa * s;
    const double inv = x > 0.0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
    return (x - softplus(x) + inv) / kappa;
}

}  // namespace

ScenarioTau scenario_tau(const QuenchScenario& s, const ModelSpec& model, double t) {
    const ModelSpec m = s.adapt(model);
    // For eta = 0 families (and the phase slip, where b = 1) tau_dot b^2 is constant.
    TimeSlice sl;
    sl.t = t;
    sl.b = 1.0;
    sl.omega = s.omega0;
    sl.lambda = m.lambda();
    sl.c = m.c0();
    const double k = gauge_tau_dot(m, sl);
    ScenarioTau out;
    switch (s.kind) {
        case ScenarioKind::TrapRelease:
            out.exact = k * (t < 0.0 ? t : std::atan(s.omega0 * t) / s.omega0);
            break;
        case ScenarioKind::InteractionSigmoid:
            out.exact = 4.0 * k * (sigmoid_primitive(s.kappa, t) - sigmoid_primitive(s.kappa, s.t_start));
            out.approximation = 4.0 * k * (-s.t_start);
            break;
        case ScenarioKind::LogCSPhaseSlip:
            out.exact = k * t;
            break;
    }
    return out;
}

}  // namespace jastrow_dyn
