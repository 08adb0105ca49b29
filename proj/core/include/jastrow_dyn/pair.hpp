#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

// Ordered particle positions.
using ParticleConfig = std::vector<double>;

// True if two positions coincide exactly.
bool has_contact(std::span<const double> x);

// Every time-dependent scalar the pair function and the Hamiltonian need.
struct TimeSlice {
    double t = 0.0;
    double b = 1.0;
    double b_dot = 0.0;
    double b_ddot = 0.0;
    double omega = 1.0;
    double omega_dot = 0.0;
    double eta = 0.0;
    double eta_dot = 0.0;
    double lambda = 0.0;
    // Argument scale of the pair function and its rate (zero for CS families).
    double c = 0.0;
    double c_dot = 0.0;
};

// For LogHyperbolic, c(t) = (c0/b) exp(omega0 * int_0^t eta/b^2).
TimeSlice time_slice(const ModelSpec& model, const ScalingSolution& scaling, double t);

struct PairDerivatives {
    double gamma = 0.0;
    double gamma_p = 0.0;
    double gamma_pp = 0.0;
    double gamma_t = 0.0;
};

// Throws ContactSingularity at x = 0 for the CS, log and hyperbolic families.
// ExpLL at contact returns the regular part (gamma_p = 0, no delta).
PairDerivatives pair_derivatives(const ModelSpec& model, const TimeSlice& slice, double x);
PairDerivatives gamma_eval(const ModelSpec& model, const ScalingSolution& scaling, double x, double t);

// Gamma at a complex separation z with Re z > 0, for the overlap contour shift.
std::complex<double> gamma_continued(const ModelSpec& model, double lambda, double c, std::complex<double> z);

// Coordinate-independent three-body term, or nullopt for GenericEven.
std::optional<double> w3_value(const ModelSpec& model, const TimeSlice& slice);
std::optional<double> w3_value(const ModelSpec& model, const ScalingSolution& scaling, double t);

// -sum_{i<j<k} (G'_ij G'_jk + G'_ij G'_ki + G'_ki G'_jk) by direct summation.
double w3_direct(const ModelSpec& model, const TimeSlice& slice, std::span<const double> x);

// ln|sinh z| without overflow.
double log_abs_sinh(double z);

}  // namespace jastrow_dyn
