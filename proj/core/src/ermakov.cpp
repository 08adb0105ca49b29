#include "jastrow_dyn/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/quadrature.hpp"

namespace jastrow_dyn {

namespace {

struct Phase {
    double b;
    double v;
};

// n RK4 steps across [lo, hi] with the protocol branch of that interval.
Phase rk4(const FrequencyProtocol& proto, double w0sq, Phase y, double lo, double hi, long n) {
    const double h = (hi - lo) / static_cast<double>(n);
    auto accel = [&](double t, double b) { return w0sq / (b * b * b) - proto.omega_sq_within(t, lo, hi) * b; };
    for (long k = 0; k < n; ++k) {
        const double t = lo + static_cast<double>(k) * h;
        const double k1b = y.v;
        const double k1v = accel(t, y.b);
        const double k2b = y.v + 0.5 * h * k1v;
        const double k2v = accel(t + 0.5 * h, y.b + 0.5 * h * k1b);
        const double k3b = y.v + 0.5 * h * k2v;
        const double k3v = accel(t + 0.5 * h, y.b + 0.5 * h * k2b);
        const double k4b = y.v + h * k3v;
        const double k4v = accel(t + h, y.b + h * k3b);
        y.b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        y.v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(y.b > 1e-8 && y.b < 1e8)) {
            std::ostringstream os;
            os << "scaling factor left (1e-8, 1e8) near t = " << t + h << " (b = " << y.b << ")";
            throw BlowUp(os.str());
        }
    }
    return y;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, double step) {
    std::vector<double> grid;
    const auto n = static_cast<long>(std::llround((hi - lo) / step));
    for (long k = 0; k <= n; ++k) grid.push_back(lo + static_cast<double>(k) * step);
    if (grid.empty() || std::abs(grid.back() - hi) > 1e-9 * std::max(1.0, std::abs(hi))) grid.push_back(hi);
    grid.back() = hi;
    return grid;
}

ScalingSolution solve_forward(const FrequencyProtocol& proto, double omega0, double b_dot0,
                              const std::vector<double>& t_grid, const SolveOptions& options) {
    if (t_grid.size() < 2 || t_grid.front() != 0.0) {
        throw InadmissibleProtocol("solve_forward needs a grid of at least two times starting at 0");
    }
    if (!(omega0 >= 0.0)) throw InadmissibleProtocol("omega0 must be >= 0");
    std::vector<double> t = t_grid;
    for (double bp : proto.breakpoints()) {
        if (bp > t.front() && bp < t.back()) t.push_back(bp);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw InadmissibleProtocol("time grid must be strictly increasing");
    }

    const double w0sq = omega0 * omega0;
    const std::size_t n = t.size();
    std::vector<double> b(n), v(n), acc_left(n), acc_right(n);
    Phase y{1.0, b_dot0};
    b[0] = y.b;
    v[0] = y.v;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double lo = t[k];
        const double hi = t[k + 1];
        long steps = 1;
        Phase coarse = rk4(proto, w0sq, y, lo, hi, steps);
        Phase fine{};
        int halvings = 0;
        while (true) {
            fine = rk4(proto, w0sq, y, lo, hi, 2 * steps);
            const double err = std::max(std::abs(fine.b - coarse.b) / std::max(1.0, std::abs(fine.b)),
                                        std::abs(fine.v - coarse.v) / std::max(1.0, std::abs(fine.v)));
            if (err < options.tolerance) break;
            if (++halvings > options.max_halvings) {
                std::ostringstream os;
                os << "RK4 could not reach tolerance " << options.tolerance << " on [" << lo << ", " << hi << "]";
                throw StepFailure(os.str());
            }
            steps *= 2;
            coarse = fine;
        }
        y = fine;
        b[k + 1] = y.b;
        v[k + 1] = y.v;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double lo_l = k > 0 ? t[k - 1] : t[k];
        const double hi_r = k + 1 < n ? t[k + 1] : t[k];
        const double core = w0sq / (b[k] * b[k] * b[k]);
        acc_left[k] = core - proto.omega_sq_within(t[k], lo_l, t[k]) * b[k];
        acc_right[k] = core - proto.omega_sq_within(t[k], t[k], hi_r) * b[k];
        if (k == 0) acc_left[k] = acc_right[k];
        if (k + 1 == n) acc_right[k] = acc_left[k];
    }
    return ScalingSolution::tabulated(omega0, std::move(t), std::move(b), std::move(v), std::move(acc_left),
                                      std::move(acc_right), "ermakov:" + proto.name());
}

namespace {

// Five-point derivative of b_dot at node k, staying inside [seg_lo, seg_hi].
double second_derivative_fd(const std::vector<double>& t, const std::vector<double>& v, std::size_t k,
                            std::size_t seg_lo, std::size_t seg_hi) {
    const std::size_t width = std::min<std::size_t>(5, seg_hi - seg_lo + 1);
    if (width < 2) return 0.0;
    std::size_t start = k >= width / 2 ? k - width / 2 : 0;
    start = std::max(start, seg_lo);
    if (start + width - 1 > seg_hi) start = seg_hi + 1 - width;
    std::vector<double> stencil(t.begin() + static_cast<long>(start), t.begin() + static_cast<long>(start + width));
    const auto w = fd_weights(t[k], stencil, 1);
    double d = 0.0;
    for (std::size_t i = 0; i < width; ++i) d += w[i] * v[start + i];
    return d;
}

// Segments between protocol breakpoints, as inclusive node index ranges.
std::vector<std::pair<std::size_t, std::size_t>> segments(const std::vector<double>& t, const std::vector<double>& breaks) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t lo = 0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const bool at_break = std::find(breaks.begin(), breaks.end(), t[k]) != breaks.end();
        if (at_break || k + 1 == t.size()) {
            out.emplace_back(lo, k);
            lo = k;
        }
    }
    if (out.empty()) out.emplace_back(0, t.size() - 1);
    return out;
}

}  // namespace

FrequencyProtocol frequency_from_scaling(const ScalingSolution& scaling, double omega0) {
    const double w0sq = omega0 * omega0;
    if (scaling.is_analytic()) {
        return FrequencyProtocol::custom(
            [scaling, w0sq](double t) {
                const ScalingState s = scaling.state(t);
                if (!(s.b > 0.0)) throw NonPositiveScaling("scaling factor is not positive");
                const double b2 = s.b * s.b;
                return w0sq / (b2 * b2) - s.b_ddot / s.b;
            },
            "from-scaling:" + scaling.name());
    }
    const auto& t = scaling.t_grid();
    const auto& b = scaling.b_samples();
    const auto& v = scaling.b_dot_samples();
    std::vector<double> w2(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(b[k] > 0.0)) throw NonPositiveScaling("scaling factor is not positive");
        const double bdd = second_derivative_fd(t, v, k, 0, t.size() - 1);
        const double b2 = b[k] * b[k];
        w2[k] = w0sq / (b2 * b2) - bdd / b[k];
    }
    return FrequencyProtocol::tabulated(t, std::move(w2));
}

double ermakov_residual(const ScalingSolution& scaling, const FrequencyProtocol& proto) {
    const double w0sq = scaling.omega0() * scaling.omega0();
    const auto& t = scaling.t_grid();
    const auto& b = scaling.b_samples();
    const auto& v = scaling.b_dot_samples();
    double worst = 0.0;
    for (const auto& [lo, hi] : segments(t, proto.breakpoints())) {
        for (std::size_t k = lo; k <= hi; ++k) {
            // Analytic b'' is one-sided at a jump; nudge segment ends inward.
            double te = t[k];
            const auto& br = proto.breakpoints();
            if (std::find(br.begin(), br.end(), te) != br.end()) {
                te += (k == lo ? 1e-13 : -1e-13) * std::max(1.0, std::abs(te));
            }
            const double bdd = scaling.is_analytic() ? scaling.state(te).b_ddot : second_derivative_fd(t, v, k, lo, hi);
            const double w2 = proto.omega_sq_within(t[k], t[lo], t[hi]);
            const double r = std::abs(bdd + w2 * b[k] - w0sq / (b[k] * b[k] * b[k]));
            worst = std::max(worst, r);
        }
    }
    return worst;
}

double conserved_energy_drift(const ScalingSolution& scaling, const FrequencyProtocol& proto, double lo, double hi) {
    if (!proto.constant_on(lo, hi)) throw InadmissibleProtocol("energy drift needs a constant Omega segment");
    const double w0sq = scaling.omega0() * scaling.omega0();
    const auto& t = scaling.t_grid();
    const auto& b = scaling.b_samples();
    const auto& v = scaling.b_dot_samples();
    double e0 = 0.0;
    bool first = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < lo || t[k] > hi) continue;
        const double w2 = proto.omega_sq_within(t[k], lo, hi);
        const double e = 0.5 * v[k] * v[k] + 0.5 * w2 * b[k] * b[k] + 0.5 * w0sq / (b[k] * b[k]);
        if (first) {
            e0 = e;
            first = false;
        }
        worst = std::max(worst, std::abs(e - e0));
    }
    return e0 != 0.0 ? worst / std::abs(e0) : worst;
}

}  // namespace jastrow_dyn
