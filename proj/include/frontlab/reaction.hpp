#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontlab/quadrature.hpp"

namespace frontlab {

enum class ReactionKind { logistic, power_kpp, ignition, bistable, tristable, tabulated };

/// Reaction term f on [0,1] with f(0)=f(1)=0, extended by 0 outside [0,1].
/// Parameters are validated at construction; evaluation never throws.
class ReactionSpec {
  public:
    static ReactionSpec logistic(double scale = 1.0) {
        ReactionSpec r(ReactionKind::logistic, scale);
        r.finish();
        return r;
    }
    static ReactionSpec power_kpp(double p, double scale = 1.0) {
        if (p < 1.0) throw std::invalid_argument("power_kpp: p must be >= 1");
        ReactionSpec r(ReactionKind::power_kpp, scale);
        r.p_ = p;
        r.finish();
        return r;
    }
    static ReactionSpec ignition(double alpha, double scale = 1.0) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ignition: alpha must be in (0,1)");
        ReactionSpec r(ReactionKind::ignition, scale);
        r.a_ = alpha;
        r.finish();
        return r;
    }
    static ReactionSpec bistable(double a, double scale = 1.0) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("bistable: a must be in (0,1)");
        ReactionSpec r(ReactionKind::bistable, scale);
        r.a_ = a;
        r.finish();
        return r;
    }
    /// Quintic with sign pattern f<0 on (0,a)u(b,g), f>0 on (a,b)u(g,1).
    /// amp1/amp2 modulate the lower/upper stages through a smooth blend at b,
    /// so the two stage front speeds can be tuned independently.
    static ReactionSpec tristable(double a, double b, double g, double amp1 = 1.0, double amp2 = 1.0,
                                  double scale = 1.0) {
        if (!(0.0 < a && a < b && b < g && g < 1.0))
            throw std::invalid_argument("tristable: need 0 < a < b < g < 1");
        if (!(amp1 > 0.0 && amp2 > 0.0)) throw std::invalid_argument("tristable: amplitudes must be positive");
        ReactionSpec r(ReactionKind::tristable, scale);
        r.a_ = a;
        r.b_ = b;
        r.g_ = g;
        r.amp1_ = amp1;
        r.amp2_ = amp2;
        r.blend_w_ = 0.5 * std::min(b - a, g - b);
        r.finish();
        return r;
    }
    /// Uniform samples of f on [0,1]; endpoints are pinned to 0, evaluation is
    /// piecewise linear.
    static ReactionSpec tabulated(std::vector<double> samples, double scale = 1.0) {
        if (samples.size() < 3) throw std::invalid_argument("tabulated: need at least 3 samples");
        samples.front() = 0.0;
        samples.back() = 0.0;
        ReactionSpec r(ReactionKind::tabulated, scale);
        r.table_ = std::move(samples);
        r.finish();
        return r;
    }

    ReactionKind kind() const { return kind_; }
    double scale() const { return scale_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    double param_g() const { return g_; }
    double param_p() const { return p_; }
    double amp1() const { return amp1_; }
    double amp2() const { return amp2_; }
    const std::vector<double>& table() const { return table_; }

    /// f(s); returns 0 outside [0,1].
    double operator()(double s) const {
        if (s <= 0.0 || s >= 1.0) return 0.0;
        switch (kind_) {
            case ReactionKind::logistic:
                return scale_ * s * (1.0 - s);
            case ReactionKind::power_kpp:
                return scale_ * std::pow(s, p_) * (1.0 - s);
            case ReactionKind::ignition:
                return s <= a_ ? 0.0 : scale_ * (s - a_) * (1.0 - s);
            case ReactionKind::bistable:
                return scale_ * s * (1.0 - s) * (s - a_);
            case ReactionKind::tristable: {
                const double base = s * (s - a_) * (s - b_) * (s - g_) * (1.0 - s);
                return scale_ * blend(s) * base;
            }
            case ReactionKind::tabulated: {
                const double n = static_cast<double>(table_.size() - 1);
                const double x = s * n;
                const auto i = static_cast<std::size_t>(x);
                const std::size_t i0 = std::min(i, table_.size() - 2);
                const double w = x - static_cast<double>(i0);
                return scale_ * ((1.0 - w) * table_[i0] + w * table_[i0 + 1]);
            }
        }
        return 0.0;
    }

    /// f'(0+): analytic for parametric kinds, first-segment slope for tabulated.
    double derivative_at_zero() const {
        switch (kind_) {
            case ReactionKind::logistic:
                return scale_;
            case ReactionKind::power_kpp:
                return p_ == 1.0 ? scale_ : 0.0;
            case ReactionKind::ignition:
                return 0.0;
            case ReactionKind::bistable:
                return -scale_ * a_;
            case ReactionKind::tristable:
                return -scale_ * amp1_ * a_ * b_ * g_;
            case ReactionKind::tabulated: {
                // Piecewise linear: one-sided difference with Richardson
                // extrapolation collapses to the first-segment slope.
                const double h = 0.5 / static_cast<double>(table_.size() - 1);
                const double d1 = (*this)(h) / h;
                const double d2 = (*this)(0.5 * h) / (0.5 * h);
                return 2.0 * d2 - d1;
            }
        }
        return 0.0;
    }

    /// Lipschitz constant of f on [0,1] (finite by construction).
    double lipschitz() const { return lip_; }

  private:
    explicit ReactionSpec(ReactionKind k, double scale) : kind_(k), scale_(scale) {
        if (!(scale > 0.0)) throw std::invalid_argument("reaction scale must be positive");
    }

    double blend(double s) const {
        const double x = std::clamp((s - b_) / blend_w_ * 0.5 + 0.5, 0.0, 1.0);
        const double t = x * x * (3.0 - 2.0 * x);
        return amp1_ + (amp2_ - amp1_) * t;
    }

    void finish() { lip_ = estimate_lipschitz(); }

    double estimate_lipschitz() const {
        if (kind_ == ReactionKind::logistic) return scale_;
        if (kind_ == ReactionKind::tabulated) {
            const double n = static_cast<double>(table_.size() - 1);
            double m = 0.0;
            for (std::size_t i = 0; i + 1 < table_.size(); ++i)
                m = std::max(m, std::abs(table_[i + 1] - table_[i]) * n);
            return scale_ * m;
        }
        const int n = 20000;
        double m = 0.0;
        double prev = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double cur = (*this)(static_cast<double>(i) / n);
            m = std::max(m, std::abs(cur - prev) * n);
            prev = cur;
        }
        return m * 1.05;
    }

    ReactionKind kind_;
    double scale_ = 1.0;
    double a_ = 0.0, b_ = 0.0, g_ = 0.0;
    double p_ = 1.0;
    double amp1_ = 1.0, amp2_ = 1.0, blend_w_ = 0.0;
    double lip_ = 0.0;
    std::vector<double> table_;
};

/// Outcome of the structural checks on f. invasion_holds is true exactly when
/// a theta with f>0 on [theta,1) exists and every trailing integral int_t^1 f
/// is strictly positive beyond the quadrature error bound.
struct HypothesisReport {
    bool invasion_holds = false;
    std::optional<double> theta;
    bool trailing_integrals_positive = false;
    bool indeterminate = false; // some trailing integral within quadrature error of 0
    bool kpp0_holds = false;
    bool fkpp_holds = false;
    bool hair_trigger_ok = false;
};

/// Scan for the invasion conditions on a uniform grid of grid_n points.
inline HypothesisReport check_invasion(const ReactionSpec& f, int grid_n = 1000) {
    if (grid_n < 100) throw std::invalid_argument("check_invasion: grid_n must be >= 100");
    HypothesisReport rep;
    const double margin = 1e-12 * std::max(1.0, f.lipschitz());

    // Smallest grid theta with f > 0 on [theta, 1 - 1/grid_n].
    const int last = grid_n - 1;
    int first_bad_from_top = grid_n; // smallest i such that f > 0 on [i, last]
    for (int i = last; i >= 1; --i) {
        if (f(static_cast<double>(i) / grid_n) > margin)
            first_bad_from_top = i;
        else
            break;
    }
    if (first_bad_from_top <= last) rep.theta = static_cast<double>(first_bad_from_top) / grid_n;

    // Trailing integrals int_t^1 f for t on the same grid, accumulated from the
    // right so the whole scan costs one pass of adaptive panels.
    const double tol = 1e-10;
    bool all_positive = true;
    double tail = 0.0, tail_err = 0.0;
    for (int i = grid_n - 1; i >= 0; --i) {
        const double a = static_cast<double>(i) / grid_n;
        const double b = static_cast<double>(i + 1) / grid_n;
        QuadResult q = integrate([&f](double s) { return f(s); }, a, b, tol / grid_n);
        tail += q.value;
        tail_err += q.error_bound;
        const double err = tail_err + tol;
        if (tail <= err) {
            all_positive = false;
            if (tail > -err) rep.indeterminate = true;
        }
    }
    rep.trailing_integrals_positive = all_positive;
    rep.invasion_holds = rep.theta.has_value() && all_positive;
    return rep;
}

/// KPP-class checks: f>0 on the interior grid, f(s) <= f'(0)s, monotone f(s)/s,
/// and the hair-trigger condition liminf f(s)/s^{1+2/N} > 0 sampled near 0.
inline HypothesisReport check_kpp_class(const ReactionSpec& f, int grid_n = 1000, int dim_n = 1) {
    if (grid_n < 100) throw std::invalid_argument("check_kpp_class: grid_n must be >= 100");
    HypothesisReport rep;
    const double fp0 = f.derivative_at_zero();
    const double margin = 1e-12 * std::max(1.0, f.lipschitz());

    bool positive = true, below_linear = true, ratio_monotone = true;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (int i = 1; i < grid_n; ++i) {
        const double s = static_cast<double>(i) / grid_n;
        const double v = f(s);
        if (v <= margin) positive = false;
        if (v > fp0 * s + margin) below_linear = false;
        const double ratio = v / s;
        if (ratio > prev_ratio + margin) ratio_monotone = false;
        prev_ratio = ratio;
    }
    rep.kpp0_holds = positive && below_linear && fp0 > 0.0;
    rep.fkpp_holds = positive && ratio_monotone;

    const double expo = 1.0 + 2.0 / dim_n;
    double liminf = std::numeric_limits<double>::infinity();
    for (double s = 1e-1; s >= 1e-9; s *= 0.5) liminf = std::min(liminf, f(s) / std::pow(s, expo));
    rep.hair_trigger_ok = positive && liminf > margin;
    return rep;
}

} // namespace frontlab
