#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace jastrow_dyn {

enum class ProtocolKind { Constant, PiecewiseConstant, Sigmoid, Tabulated, Custom };

std::string to_string(ProtocolKind kind);

// Lab-frame trap frequency squared Omega^2(t). Negative values describe an
// inverted trap.
class FrequencyProtocol {
public:
    using Function = std::function<double(double)>;

    static FrequencyProtocol constant(double omega);
    // values[k] holds on [breaks[k-1], breaks[k]); values.size() == breaks.size() + 1.
    static FrequencyProtocol piecewise_constant(std::vector<double> breaks, std::vector<double> omega_sq);
    // Omega^2 that produces b = (1 + e^{kappa t}) / 2 for the given omega0.
    static FrequencyProtocol sigmoid(double omega0, double kappa);
    static FrequencyProtocol tabulated(std::vector<double> t, std::vector<double> omega_sq);
    static FrequencyProtocol custom(Function omega_sq, std::string name, std::vector<double> breaks = {});

    ProtocolKind kind() const;
    const std::string& name() const;
    double omega_sq(double t) const;
    // Value on the open interval (lo, hi); at a breakpoint this picks the
    // branch belonging to the interval, so integrators never straddle a jump.
    double omega_sq_within(double t, double lo, double hi) const;
    const std::vector<double>& breakpoints() const;
    bool constant_on(double lo, double hi) const;

private:
    struct Impl;
    explicit FrequencyProtocol(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace jastrow_dyn
