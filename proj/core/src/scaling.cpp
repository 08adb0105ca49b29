#include "jastrow_dyn/scaling.hpp"

#include <boost/math/interpolators/quintic_hermite.hpp>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "jastrow_dyn/errors.hpp"

namespace jastrow_dyn {

namespace {

using Quintic = boost::math::interpolators::quintic_hermite<std::vector<double>>;

struct Segment {
    double lo;
    double hi;
    std::shared_ptr<Quintic> spline;
};

}  // namespace

struct ScalingSolution::Impl {
    double omega0 = 1.0;
    std::string name;
    std::vector<double> t;
    std::vector<double> b;
    std::vector<double> b_dot;
    StateFunction analytic;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Segment> segments;
};

ScalingSolution::ScalingSolution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ScalingSolution ScalingSolution::analytic(double omega0, StateFunction state, std::vector<double> t_grid,
                                          double domain_lo, double domain_hi, std::string name) {
    if (t_grid.empty()) throw OutOfGrid("analytic scaling needs a non-empty sampling grid");
    auto impl = std::make_shared<Impl>();
    impl->omega0 = omega0;
    impl->name = std::move(name);
    impl->analytic = std::move(state);
    impl->lo = domain_lo;
    impl->hi = domain_hi;
    impl->t = std::move(t_grid);
    for (double t : impl->t) {
        if (t < domain_lo || t > domain_hi) throw OutOfGrid("sampling grid exceeds the analytic domain");
        const ScalingState s = impl->analytic(t);
        if (!(s.b > 0.0)) throw NonPositiveScaling("analytic scaling factor is not positive");
        impl->b.push_back(s.b);
        impl->b_dot.push_back(s.b_dot);
    }
    return ScalingSolution(std::move(impl));
}

ScalingSolution ScalingSolution::tabulated(double omega0, std::vector<double> t, std::vector<double> b,
                                           std::vector<double> b_dot, std::vector<double> b_ddot_left,
                                           std::vector<double> b_ddot_right, std::string name) {
    const std::size_t n = t.size();
    if (n < 2 || b.size() != n || b_dot.size() != n || b_ddot_left.size() != n || b_ddot_right.size() != n) {
        throw OutOfGrid("tabulated scaling needs at least two nodes and matching arrays");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(b[i] > 0.0)) throw NonPositiveScaling("tabulated scaling factor is not positive");
        if (i > 0 && !(t[i] > t[i - 1])) throw OutOfGrid("scaling grid must be strictly increasing");
    }
    auto impl = std::make_shared<Impl>();
    impl->omega0 = omega0;
    impl->name = std::move(name);
    impl->lo = t.front();
    impl->hi = t.back();

    std::size_t start = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const bool jump = b_ddot_left[k] != b_ddot_right[k];
        if (!jump && k + 1 < n) continue;
        std::vector<double> ts(t.begin() + start, t.begin() + k + 1);
        std::vector<double> bs(b.begin() + start, b.begin() + k + 1);
        std::vector<double> ds(b_dot.begin() + start, b_dot.begin() + k + 1);
        std::vector<double> dds(b_ddot_right.begin() + start, b_ddot_right.begin() + k + 1);
        dds.back() = b_ddot_left[k];
        const double lo = ts.front();
        const double hi = ts.back();
        impl->segments.push_back(
            {lo, hi, std::make_shared<Quintic>(std::move(ts), std::move(bs), std::move(ds), std::move(dds))});
        start = k;
    }
    impl->t = std::move(t);
    impl->b = std::move(b);
    impl->b_dot = std::move(b_dot);
    return ScalingSolution(std::move(impl));
}

double ScalingSolution::omega0() const { return impl_->omega0; }
const std::string& ScalingSolution::name() const { return impl_->name; }
bool ScalingSolution::is_analytic() const { return static_cast<bool>(impl_->analytic); }
const std::vector<double>& ScalingSolution::t_grid() const { return impl_->t; }
const std::vector<double>& ScalingSolution::b_samples() const { return impl_->b; }
const std::vector<double>& ScalingSolution::b_dot_samples() const { return impl_->b_dot; }
double ScalingSolution::t_min() const { return impl_->lo; }
double ScalingSolution::t_max() const { return impl_->hi; }

bool ScalingSolution::covers(double t) const {
    const double slack = 1e-12 * std::max(1.0, std::abs(t));
    return t >= impl_->lo - slack && t <= impl_->hi + slack;
}

ScalingState ScalingSolution::state(double t) const {
    if (!covers(t)) {
        std::ostringstream os;
        os << "time " << t << " outside scaling support [" << impl_->lo << ", " << impl_->hi << "]";
        throw OutOfGrid(os.str());
    }
    if (impl_->analytic) return impl_->analytic(t);
    const double tc = std::clamp(t, impl_->lo, impl_->hi);
    const auto& segs = impl_->segments;
    auto it = std::upper_bound(segs.begin(), segs.end(), tc, [](double v, const Segment& s) { return v < s.hi; });
    if (it == segs.end()) it = std::prev(segs.end());
    const Quintic& q = *it->spline;
    return {q(tc), q.prime(tc), q.double_prime(tc)};
}

double ScalingSolution::omega(double t) const {
    const double b = state(t).b;
    return impl_->omega0 / (b * b);
}

double ScalingSolution::omega_dot(double t) const {
    const ScalingState s = state(t);
    return -2.0 * impl_->omega0 / (s.b * s.b) * s.b_dot / s.b;
}

void ScalingSolution::write_csv(std::ostream& os) const {
    os << "t,b,b_dot\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < impl_->t.size(); ++i) {
        os << impl_->t[i] << ',' << impl_->b[i] << ',' << impl_->b_dot[i] << '\n';
    }
}

std::string ScalingSolution::to_json() const {
    nlohmann::json j;
    j["omega0"] = impl_->omega0;
    j["name"] = impl_->name;
    j["t"] = impl_->t;
    j["b"] = impl_->b;
    j["b_dot"] = impl_->b_dot;
    return j.dump();
}

}  // namespace jastrow_dyn
