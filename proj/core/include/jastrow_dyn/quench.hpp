#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jastrow_dyn/hamiltonian.hpp"
#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/protocol.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

enum class ScenarioKind { TrapRelease, InteractionSigmoid, LogCSPhaseSlip };

std::string to_string(ScenarioKind kind);

// Preset quenches with closed-form scaling factors.
//   TrapRelease:        b = 1 for t < 0, sqrt(1 + omega0^2 t^2) after.
//   InteractionSigmoid: b = (1 + e^{kappa t})/2, starting at t_start.
//   LogCSPhaseSlip:     b = 1, eta = eta0 for t < 0 and 0 after.
struct QuenchScenario {
    ScenarioKind kind = ScenarioKind::TrapRelease;
    double omega0 = 1.0;
    double kappa = 0.0;
    double eta0 = 0.0;
    double t_start = 0.0;

    static QuenchScenario trap_release(double omega0, double t_start = 0.0);
    static QuenchScenario interaction_sigmoid(double omega0, double kappa, double t_start);
    static QuenchScenario logcs_phase_slip(double omega0, double eta0, double t_start = -1.0);

    std::string name() const;
    ScalingState state(double t) const;
    FrequencyProtocol protocol() const;
    // lim b'/b.
    double r0() const;
    // The model the scenario acts on: the phase slip swaps in the step schedule.
    ModelSpec adapt(const ModelSpec& model) const;
};

ScalingSolution scenario_scaling(const QuenchScenario& s, const std::vector<double>& t_grid);

struct ScenarioSchedule {
    std::vector<HamiltonianCoeffs> coeffs;
    std::vector<Impulse> impulses;
};

// Throws IncompatibleScenario unless the phase slip meets LogCS and the
// other scenarios meet an eta = 0 family.
ScenarioSchedule scenario_schedule(const QuenchScenario& s, const ModelSpec& model, const std::vector<double>& t_grid,
                                   Gauge gauge = Gauge::ZeroOffset);

struct ScenarioTau {
    double exact = 0.0;
    // Late-time approximation for the sigmoid (int (1+e^{ks})^-2 ~ -t_start).
    std::optional<double> approximation;
};

// tau(t) from the Ebar = 0 gauge, closed forms throughout; tau = 0 at t = 0
// (trap release, phase slip) or at t = t_start (sigmoid).
ScenarioTau scenario_tau(const QuenchScenario& s, const ModelSpec& model, double t);

}  // namespace jastrow_dyn
