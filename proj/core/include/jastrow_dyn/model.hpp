#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "jastrow_dyn/eta.hpp"
#include "jastrow_dyn/units.hpp"

namespace jastrow_dyn {

enum class Family { PowerLawCS, LogCS, Hyperbolic, LogHyperbolic, ExpLL, GenericEven };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// Even pair function G(u) of the dimensionless argument u = c0 x / b(t).
// Missing derivatives fall back to central differences with step 1e-5.
// `continued` is G on the complex plane near the positive real axis; the
// survival estimator needs it for the contour shift.
struct GenericPair {
    std::string name = "custom";
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;
    std::function<std::complex<double>(std::complex<double>)> continued;
    std::vector<double> parameters;

    static GenericPair log_cosh(double strength);
    static GenericPair lorentzian(double strength);
    static GenericPair from_preset(const std::string& name, double strength);
};

class ModelSpec {
public:
    static ModelSpec power_law_cs(int n, double omega0, double lambda0, Units units = {});
    static ModelSpec log_cs(int n, double omega0, EtaSchedule eta, Units units = {});
    static ModelSpec hyperbolic(int n, double omega0, double lambda0, double c0, Units units = {});
    static ModelSpec log_hyperbolic(int n, double omega0, double c0, EtaSchedule eta, Units units = {});
    static ModelSpec exp_ll(int n, double omega0, double c0, Units units = {});
    static ModelSpec generic_even(int n, double omega0, double c0, GenericPair pair, Units units = {});

    Family family() const { return family_; }
    int n_particles() const { return n_; }
    double omega0() const { return omega0_; }
    // lambda0 for the power-law families, 1/2 for the logarithmic ones.
    double lambda() const { return lambda_; }
    double c0() const { return c0_; }
    const EtaSchedule& eta() const { return eta_; }
    const Units& units() const { return units_; }
    const GenericPair& generic() const;

    bool carries_eta() const;
    // Model with a different particle number, everything else unchanged.
    ModelSpec with_particles(int n) const;
    // Copy with a new coupling; used to corrupt Hamiltonians in checks.
    ModelSpec with_lambda(double lambda) const;

    std::string describe() const;

private:
    ModelSpec() = default;
    void validate_common() const;

    Family family_ = Family::PowerLawCS;
    int n_ = 1;
    double omega0_ = 1.0;
    double lambda_ = 0.0;
    double c0_ = 0.0;
    EtaSchedule eta_;
    Units units_;
    std::optional<GenericPair> generic_;
};

struct ValidityReport {
    bool valid = true;
    std::string rule;
    std::string message;
};

// Never throws; names the violated rule on rejection.
ValidityReport check_normalizable(const ModelSpec& model);

}  // namespace jastrow_dyn
