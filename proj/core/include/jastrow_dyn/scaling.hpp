#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace jastrow_dyn {

struct ScalingState {
    double b = 1.0;
    double b_dot = 0.0;
    double b_ddot = 0.0;
};

// Scaling factor b(t) of the Gaussian width, omega(t) = omega0 / b(t)^2.
// Either analytic (closed form on a declared domain, sampled on t_grid for
// output) or tabulated from an integrator. Tabulated solutions interpolate
// with quintic Hermite splines built from (b, b_dot, b_ddot); segments are
// split at protocol jumps, where b_ddot is discontinuous.
class ScalingSolution {
public:
    using StateFunction = std::function<ScalingState(double)>;

    static ScalingSolution analytic(double omega0, StateFunction state, std::vector<double> t_grid,
                                    double domain_lo, double domain_hi, std::string name);
    // b_ddot_left[k] / b_ddot_right[k] are the one-sided second derivatives at
    // node k; they differ only at jumps of Omega^2.
    static ScalingSolution tabulated(double omega0, std::vector<double> t, std::vector<double> b,
                                     std::vector<double> b_dot, std::vector<double> b_ddot_left,
                                     std::vector<double> b_ddot_right, std::string name = "tabulated");

    double omega0() const;
    const std::string& name() const;
    bool is_analytic() const;
    const std::vector<double>& t_grid() const;
    const std::vector<double>& b_samples() const;
    const std::vector<double>& b_dot_samples() const;
    double t_min() const;
    double t_max() const;
    bool covers(double t) const;

    // Throws OutOfGrid outside [t_min, t_max].
    ScalingState state(double t) const;
    double b(double t) const { return state(t).b; }
    double b_dot(double t) const { return state(t).b_dot; }
    double omega(double t) const;
    // d omega / dt = -2 omega b_dot / b
    double omega_dot(double t) const;

    void write_csv(std::ostream& os) const;
    std::string to_json() const;

private:
    struct Impl;
    explicit ScalingSolution(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace jastrow_dyn
