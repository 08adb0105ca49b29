#include "jastrow_dyn/survival.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/pair.hpp"
#include "jastrow_dyn/quadrature.hpp"

namespace jastrow_dyn {

using cd = std::complex<double>;

AlphaFactor alpha(const ScalingSolution& scaling, double t, double t0, const Units& units) {
    const ScalingState s = scaling.state(t);
    const ScalingState s0 = scaling.state(t0);
    const double w0 = scaling.omega0();
    const double pref = units.mass * w0 / (2.0 * units.hbar);
    AlphaFactor a;
    if (t == t0) {
        a.alpha_sq = 2.0 * pref / (s0.b * s0.b);
    } else {
        const double imag = w0 > 0.0 ? -(s0.b_dot / s0.b - s.b_dot / s.b) / w0 : 0.0;
        a.alpha_sq = pref * cd(1.0 / (s.b * s.b) + 1.0 / (s0.b * s0.b), imag);
    }
    if (!(a.alpha_sq.real() > 0.0)) throw NonPositiveScaling("Re alpha^2 must be positive");
    a.alpha = std::sqrt(a.alpha_sq);
    a.abs_alpha = std::abs(a.alpha);
    return a;
}

namespace {

double cs_base(const ScalingSolution& scaling, double t, double t0, const Units& units) {
    const AlphaFactor a = alpha(scaling, t, t0, units);
    return units.mass * scaling.omega0() / (units.hbar * scaling.b(t) * scaling.b(t0) * std::abs(a.alpha_sq));
}

}  // namespace

double sp_closed_form_cs(int n, double lambda0, const ScalingSolution& scaling, double t, double t0, const Units& units) {
    if (t == t0) return 1.0;
    return std::pow(cs_base(scaling, t, t0, units), n + lambda0 * n * (n - 1.0));
}

double sp_upper_bound_logcs(int n, const ScalingSolution& scaling, double t, double t0, const Units& units) {
    return sp_closed_form_cs(n, 0.5, scaling, t, t0, units);
}

std::string to_string(SamplerKind kind) { return kind == SamplerKind::Sobol ? "sobol" : "mc"; }

SamplerKind sampler_from_string(const std::string& name) {
    if (name == "sobol") return SamplerKind::Sobol;
    if (name == "mc") return SamplerKind::Pseudo;
    throw ConfigError("unknown sampler '" + name + "' (expected mc or sobol)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Pair-factor evaluation along one side of the overlap: sum_ij G(c0 |y_ij| * scale).
struct Side {
    cd scale;
};

struct Accumulator {
    std::vector<cd> num;  // one per time
    double den = 0.0;
    double den_sq = 0.0;
    long count = 0;
};

class Integrand {
public:
    Integrand(const ModelSpec& model, double den_scale) : model_(model), den_scale_(den_scale) {
        exp_ll_ = model.family() == Family::ExpLL;
    }

    double pair_sum_real(const std::vector<double>& d, double scale) const {
        if (exp_ll_) return model_.c0() * scale * sum(d);
        double s = 0.0;
        for (double v : d) s += gamma_continued(model_, model_.lambda(), model_.c0(), cd(v * scale, 0.0)).real();
        return s;
    }

    cd pair_sum(const std::vector<double>& d, cd scale) const {
        if (exp_ll_) return model_.c0() * scale * sum(d);
        cd s = 0.0;
        for (double v : d) s += gamma_continued(model_, model_.lambda(), model_.c0(), v * scale);
        return s;
    }

    double den_scale() const { return den_scale_; }

private:
    static double sum(const std::vector<double>& d) {
        double s = 0.0;
        for (double v : d) s += v;
        return s;
    }
    const ModelSpec& model_;
    double den_scale_;
    bool exp_ll_ = false;
};

struct TimeTerm {
    cd scale_t;
    cd scale_t0;
    bool limiting = false;  // t-side factor replaced by its b -> infinity limit
    cd limit_value = 0.0;
};

// Runs all batches; returns per-batch accumulators.
std::vector<Accumulator> run_batches(const ModelSpec& model, const Integrand& f, const std::vector<TimeTerm>& terms,
                                     const SamplerOptions& opt) {
    const int n = model.n_particles();
    const int batches = std::max(1, opt.batches);
    const long per_batch = std::max(1L, opt.n_samples / batches);
    std::vector<Accumulator> acc(static_cast<std::size_t>(batches));
    int workers = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, batches);

    auto run_batch = [&](int b) {
        Accumulator& a = acc[static_cast<std::size_t>(b)];
        a.num.assign(terms.size(), 0.0);
        const std::uint64_t stream = splitmix64(opt.seed ^ splitmix64(static_cast<std::uint64_t>(b) + 1));
        std::mt19937_64 rng(stream);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        std::vector<std::uint64_t> shift(static_cast<std::size_t>(n));
        for (auto& s : shift) s = rng();
        std::optional<boost::random::sobol> sobol;
        if (opt.kind == SamplerKind::Sobol) sobol.emplace(static_cast<std::size_t>(n));
        std::vector<double> y(static_cast<std::size_t>(n));
        std::vector<double> d(static_cast<std::size_t>(n * (n - 1) / 2));
        for (long k = 0; k < per_batch; ++k) {
            for (int i = 0; i < n; ++i) {
                if (sobol) {
                    const std::uint64_t bits = (*sobol)() ^ shift[static_cast<std::size_t>(i)];
                    const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
                    y[static_cast<std::size_t>(i)] = -boost::math::erfc_inv(2.0 * u);
                } else {
                    y[static_cast<std::size_t>(i)] = normal(rng);
                }
            }
            std::size_t p = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) d[p++] = std::abs(y[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(j)]);
            }
            const double s0 = 2.0 * f.pair_sum_real(d, f.den_scale());
            a.den += std::exp(s0);
            a.den_sq += std::exp(2.0 * s0);
            for (std::size_t q = 0; q < terms.size(); ++q) {
                const TimeTerm& term = terms[q];
                const cd st = term.limiting ? term.limit_value : f.pair_sum(d, term.scale_t);
                a.num[q] += std::exp(st + f.pair_sum(d, term.scale_t0));
            }
            ++a.count;
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int b = w; b < batches; b += workers) run_batch(b);
        });
    }
    for (auto& th : pool) th.join();
    return acc;
}

struct RatioEstimate {
    double value;
    double stderr_;
};

// base^N |mean num|^2 / mean den^2, pooled and per batch.
std::vector<RatioEstimate> combine(const std::vector<Accumulator>& acc, const std::vector<double>& bases, int n) {
    std::vector<RatioEstimate> out;
    const std::size_t nb = acc.size();
    for (std::size_t q = 0; q < bases.size(); ++q) {
        cd num = 0.0;
        double den = 0.0;
        long count = 0;
        std::vector<double> per;
        for (const Accumulator& a : acc) {
            num += a.num[q];
            den += a.den;
            count += a.count;
            const cd mn = a.num[q] / static_cast<double>(a.count);
            const double md = a.den / static_cast<double>(a.count);
            per.push_back(std::pow(bases[q], n) * std::norm(mn) / (md * md));
        }
        const cd mn = num / static_cast<double>(count);
        const double md = den / static_cast<double>(count);
        const double value = std::pow(bases[q], n) * std::norm(mn) / (md * md);
        double mean = 0.0;
        for (double v : per) mean += v;
        mean /= static_cast<double>(nb);
        double var = 0.0;
        for (double v : per) var += (v - mean) * (v - mean);
        const double se = nb > 1 ? std::sqrt(var / static_cast<double>(nb - 1) / static_cast<double>(nb)) : 0.0;
        if (!std::isfinite(value) || !std::isfinite(se)) {
            throw SamplerDivergence("survival estimator produced a non-finite value; the pair function may not be integrable");
        }
        out.push_back({value, se});
    }
    return out;
}

void require_real_family(const ModelSpec& model) {
    if (model.carries_eta()) {
        throw InadmissibleProtocol("the contour-shifted estimator needs an eta = 0 family; use the log-CS bound instead");
    }
    if (model.omega0() <= 0.0) throw InadmissibleProtocol("the survival estimator needs omega0 > 0");
}

cd side_scale(const AlphaFactor& a, double b, Continuation c) {
    return c == Continuation::Exact ? 1.0 / (a.alpha * b) : cd(1.0 / (a.abs_alpha * b), 0.0);
}

}  // namespace

std::vector<SPResult> sp_montecarlo_series(const ModelSpec& model, const ScalingSolution& scaling,
                                           const std::vector<double>& times, double t0, const SamplerOptions& options) {
    require_real_family(model);
    const Units& u = model.units();
    const double b0 = scaling.b(t0);
    const AlphaFactor a0 = alpha(scaling, t0, t0, u);
    const Integrand f(model, 1.0 / (a0.abs_alpha * b0));
    std::vector<TimeTerm> terms;
    std::vector<double> bases;
    std::vector<std::size_t> index(times.size(), SIZE_MAX);
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] == t0) continue;
        const AlphaFactor a = alpha(scaling, times[k], t0, u);
        const double b = scaling.b(times[k]);
        index[k] = terms.size();
        terms.push_back({side_scale(a, b, options.continuation), side_scale(a, b0, options.continuation)});
        bases.push_back(u.mass * scaling.omega0() / (u.hbar * b * b0 * a.abs_alpha * a.abs_alpha));
    }
    std::vector<RatioEstimate> est;
    double ess_fraction = 1.0;
    if (!terms.empty()) {
        const auto acc = run_batches(model, f, terms, options);
        double sum = 0.0, sum_sq = 0.0;
        long count = 0;
        for (const Accumulator& a : acc) {
            sum += a.den;
            sum_sq += a.den_sq;
            count += a.count;
        }
        ess_fraction = sum * sum / sum_sq / static_cast<double>(count);
        const double ess = ess_fraction * static_cast<double>(count);
        if (model.family() != Family::PowerLawCS &&
            (ess_fraction < options.min_effective_fraction || ess < options.min_effective_samples)) {
            std::ostringstream os;
            os << "importance weights degenerate (effective samples " << ess << " of " << count
               << "); the Gaussian proposal does not cover this pair function";
            throw SamplerDivergence(os.str());
        }
        est = combine(acc, bases, model.n_particles());
    }
    std::vector<SPResult> out;
    const long used = std::max(1L, options.n_samples / std::max(1, options.batches)) * std::max(1, options.batches);
    for (std::size_t k = 0; k < times.size(); ++k) {
        SPResult r;
        r.t = times[k];
        r.t0 = t0;
        r.n_samples = used;
        r.seed = options.seed;
        r.sampler = options.kind;
        r.effective_fraction = ess_fraction;
        if (index[k] == SIZE_MAX) {
            r.estimate = 1.0;
            r.stderr_ = 0.0;
        } else {
            r.estimate = est[index[k]].value;
            r.stderr_ = est[index[k]].stderr_;
        }
        out.push_back(r);
    }
    return out;
}

SPResult sp_montecarlo(const ModelSpec& model, const ScalingSolution& scaling, double t, double t0,
                       const SamplerOptions& options) {
    return sp_montecarlo_series(model, scaling, {t}, t0, options).front();
}

namespace {

// int over the ordered sector of exp(sum G(x_ij/b1) + G(x_ij/b2) - (A/N) sum x_ij^2), times N!
// and the centre-of-mass factor sqrt(pi/(N A)).
cd overlap_integral(const ModelSpec& model, cd a, double b1, double b2, const DirectOptions& opt) {
    const int n = model.n_particles();
    auto log_pair = [&](double d) {
        return gamma_continued(model, model.lambda(), model.c0(), cd(d / b1, 0.0)).real() +
               gamma_continued(model, model.lambda(), model.c0(), cd(d / b2, 0.0)).real();
    };
    const double ra = a.real() / n;
    // Cut-off where the real log-integrand along the slowest direction drops by 80.
    auto profile = [&](double d) {
        const double pairs = n == 2 ? log_pair(d) : log_pair(d) + log_pair(d) + log_pair(2.0 * d);
        const double quad = n == 2 ? ra * d * d : ra * 6.0 * d * d;
        return pairs - quad;
    };
    auto single = [&](double d) { return n == 2 ? profile(d) : 2.0 * log_pair(d) - ra * 2.0 * d * d; };
    double cut = 0.0;
    for (auto fn : {std::function<double(double)>(profile), std::function<double(double)>(single)}) {
        double peak = -INFINITY;
        const double step = 0.01 / std::sqrt(ra);
        double d = step;
        double last_above = step;
        for (int k = 0; k < 200000; ++k, d += step) {
            const double v = fn(d);
            if (!std::isfinite(v)) continue;
            peak = std::max(peak, v);
            if (v > peak - 80.0) last_above = d;
            if (v < peak - 90.0 && d > 2.0 * last_above) break;
        }
        cut = std::max(cut, last_above * 1.05);
    }

    const GaussRule gl = gauss_legendre(opt.nodes_per_panel);
    std::vector<double> u_nodes, u_weights;
    for (int p = 0; p < opt.panels; ++p) {
        const double lo = static_cast<double>(p) / opt.panels;
        const double hi = static_cast<double>(p + 1) / opt.panels;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            u_nodes.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[i]);
            u_weights.push_back(0.5 * (hi - lo) * gl.weights[i]);
        }
    }
    // d = cut * u^2, dd = 2 cut u du
    std::vector<double> d_nodes, d_weights;
    for (std::size_t i = 0; i < u_nodes.size(); ++i) {
        d_nodes.push_back(cut * u_nodes[i] * u_nodes[i]);
        d_weights.push_back(2.0 * cut * u_nodes[i] * u_weights[i]);
    }
    const cd coef = a / static_cast<double>(n);
    cd sum = 0.0;
    if (n == 1) {
        sum = 1.0;
    } else if (n == 2) {
        for (std::size_t i = 0; i < d_nodes.size(); ++i) {
            const double d = d_nodes[i];
            sum += d_weights[i] * std::exp(log_pair(d) - coef * d * d);
        }
        sum *= 2.0;
    } else {
        std::vector<double> lp(d_nodes.size());
        for (std::size_t i = 0; i < d_nodes.size(); ++i) lp[i] = log_pair(d_nodes[i]);
        for (std::size_t i = 0; i < d_nodes.size(); ++i) {
            for (std::size_t j = 0; j < d_nodes.size(); ++j) {
                const double d1 = d_nodes[i];
                const double d2 = d_nodes[j];
                const double d3 = d1 + d2;
                const double q = d1 * d1 + d2 * d2 + d3 * d3;
                sum += d_weights[i] * d_weights[j] * std::exp(lp[i] + lp[j] + log_pair(d3) - coef * q);
            }
        }
        sum *= 6.0;
    }
    return sum * std::sqrt(std::numbers::pi / (static_cast<double>(n) * a));
}

}  // namespace

double sp_direct_quadrature(const ModelSpec& model, const ScalingSolution& scaling, double t, double t0,
                            const DirectOptions& options) {
    if (model.n_particles() > 3) throw DimensionTooLarge("direct quadrature supports N <= 3");
    require_real_family(model);
    if (t == t0) return 1.0;
    const Units& u = model.units();
    const double w0 = scaling.omega0();
    const double b = scaling.b(t);
    const double b0 = scaling.b(t0);
    const AlphaFactor a = alpha(scaling, t, t0, u);
    const double k = u.mass * w0 / u.hbar;
    const cd overlap = overlap_integral(model, a.alpha_sq, b, b0, options);
    const cd norm_t = overlap_integral(model, k / (b * b), b, b, options);
    const cd norm_0 = overlap_integral(model, k / (b0 * b0), b0, b0, options);
    return std::norm(overlap) / (norm_t.real() * norm_0.real());
}

double AsymptoteModel::at(const ScalingSolution& scaling, double t) const {
    if (kind == AsymptoteKind::Exact) return sp_closed_form_cs(n_particles, lambda0, scaling, t, t0, units);
    return evaluate(scaling.b(t));
}

namespace {

double estimate_r0(const ScalingSolution& scaling) {
    const double t2 = scaling.t_max();
    const double span = t2 - scaling.t_min();
    auto rate = [&](double t) {
        const ScalingState s = scaling.state(t);
        return s.b_dot / s.b;
    };
    // r = r0 + a/t fitted on two pairs of late times; they must agree.
    auto fit = [&](double ta, double tb) {
        if (ta <= 0.0) return rate(tb);
        return (tb * rate(tb) - ta * rate(ta)) / (tb - ta);
    };
    const double f1 = fit(t2 - 0.2 * span, t2 - 0.1 * span);
    const double f2 = fit(t2 - 0.1 * span, t2);
    const double scale = std::max({std::abs(f2), scaling.omega0(), 1e-12});
    if (std::abs(f1 - f2) > 1e-2 * scale) {
        std::ostringstream os;
        os << "b'/b does not converge on the grid (estimates " << f1 << " and " << f2 << ")";
        throw NoAsymptote(os.str());
    }
    return f2;
}

}  // namespace

AsymptoteModel sp_asymptote(const ModelSpec& model, const ScalingSolution& scaling, double t0,
                            const AsymptoteOptions& options) {
    const Units& u = model.units();
    const int n = model.n_particles();
    const double w0 = scaling.omega0();
    AsymptoteModel am;
    am.t0 = t0;
    am.n_particles = n;
    am.lambda0 = model.lambda();
    am.units = u;
    am.r0 = options.r0 ? *options.r0 : estimate_r0(scaling);
    const ScalingState s0 = scaling.state(t0);
    const double b0 = s0.b;
    am.alpha_inf_sq = (u.mass * w0 / (2.0 * u.hbar)) * cd(1.0 / (b0 * b0), -(s0.b_dot / b0 - am.r0) / w0);
    am.abs_alpha_inf = std::sqrt(std::abs(am.alpha_inf_sq));
    const double base = u.mass * w0 / (u.hbar * b0 * am.abs_alpha_inf * am.abs_alpha_inf);
    switch (model.family()) {
        case Family::PowerLawCS:
            am.kind = AsymptoteKind::Exact;
            am.exponent = n + model.lambda() * n * (n - 1.0);
            am.prefactor = std::pow(base, am.exponent);
            return am;
        case Family::LogHyperbolic: {
            const double integral = integrate(
                [&](double s) {
                    const double bs = scaling.b(s);
                    return model.eta().eta(s) / (bs * bs);
                },
                t0, scaling.t_max());
            if (std::abs(w0 * integral) > options.eta_premise) {
                std::ostringstream os;
                os << "omega0 * int eta/b^2 = " << w0 * integral << " is not small; no late-time form available";
                throw NoAsymptote(os.str());
            }
            [[fallthrough]];
        }
        case Family::Hyperbolic:
            am.kind = AsymptoteKind::PowerLaw;
            am.exponent = n + model.lambda() * n * (n - 1.0);
            am.prefactor = std::pow(base, am.exponent);
            return am;
        case Family::LogCS:
            throw NoAsymptote("the log-CS family has only an upper bound");
        case Family::ExpLL:
        case Family::GenericEven: {
            am.kind = AsymptoteKind::Limiting;
            am.exponent = n;
            const AlphaFactor a0 = alpha(scaling, t0, t0, u);
            const Integrand f(model, 1.0 / (a0.abs_alpha * b0));
            const cd alpha_inf = std::sqrt(am.alpha_inf_sq);
            // G at zero separation: the t-side factor for b -> infinity.
            const double g0 = model.family() == Family::ExpLL ? 0.0 : model.generic().value(0.0);
            TimeTerm term;
            term.limiting = true;
            term.limit_value = g0 * n * (n - 1) / 2.0;
            term.scale_t0 = options.sampler.continuation == Continuation::Exact ? 1.0 / (alpha_inf * b0)
                                                                                 : cd(1.0 / (am.abs_alpha_inf * b0), 0.0);
            const auto est = combine(run_batches(model, f, {term}, options.sampler), {base}, n);
            am.prefactor = est[0].value;
            am.prefactor_stderr = est[0].stderr_;
            return am;
        }
    }
    return am;
}

}  // namespace jastrow_dyn
