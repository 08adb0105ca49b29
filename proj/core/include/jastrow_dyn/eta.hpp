#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace jastrow_dyn {

// Time dependence of the two-body phase angle theta_ij = eta(t) Gamma_ij.
class EtaSchedule {
public:
    using Function = std::function<double(double)>;

    EtaSchedule();

    static EtaSchedule zero();
    static EtaSchedule constant(double value);
    // amplitude * sin(frequency * t + phase)
    static EtaSchedule sine(double amplitude, double frequency = 1.0, double phase = 0.0);
    // value for t < 0, zero for t >= 0; the jump is an impulse, eta_dot excludes it.
    static EtaSchedule step_down(double value);
    // Monotone piecewise-cubic interpolation of samples (at least 4 points).
    static EtaSchedule tabulated(std::vector<double> t, std::vector<double> eta);
    static EtaSchedule custom(Function eta, Function eta_dot, std::string name);

    double eta(double t) const;
    double eta_dot(double t) const;

    bool is_zero() const;
    const std::string& name() const;
    // Parameters that reproduce the schedule through from_json.
    const std::vector<double>& parameters() const;
    // Times where eta jumps; eta_dot carries no delta there.
    const std::vector<double>& breakpoints() const;

private:
    struct Impl;
    explicit EtaSchedule(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace jastrow_dyn
