#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

using Point2 = std::array<double, 2>;
using Cloud = std::vector<Point2>;

inline double sqr(double x) { return x * x; }
inline double dist2(const Point2& a, const Point2& b) { return sqr(a[0] - b[0]) + sqr(a[1] - b[1]); }

enum class GammaFamily { linear, log_coercive, bounded, sqrt_sine, conical, radial_profile };

/// Graph function gamma of |x'|, describing subgraph supports x_N <= gamma.
class GammaSpec {
  public:
    static GammaSpec linear(double alpha) { return GammaSpec(GammaFamily::linear, alpha); }
    /// gamma = beta * log(1 + |x'|); beta of either sign.
    static GammaSpec log_coercive(double beta) { return GammaSpec(GammaFamily::log_coercive, beta); }
    static GammaSpec bounded(double c) { return GammaSpec(GammaFamily::bounded, c); }
    /// gamma = sqrt(|x'|) sin(sqrt(|x'|)) for |x'| >= 1, cubic cap on [0,1)
    /// matching value and slope at 1 and with zero slope at 0.
    static GammaSpec sqrt_sine() { return GammaSpec(GammaFamily::sqrt_sine, 0.0); }
    /// gamma = core - sqrt(core^2 + (ell |x'|)^2): slope -> -ell, smooth cap of
    /// curvature scale `core` near the axis, gamma(0) = 0.
    static GammaSpec conical(double ell, double core = 1.0) {
        if (!(ell >= 0.0) || !(core > 0.0)) throw std::invalid_argument("conical: need ell >= 0, core > 0");
        GammaSpec g(GammaFamily::conical, ell);
        g.q_ = core;
        return g;
    }
    static GammaSpec radial_profile(std::vector<double> r, std::vector<double>值) = delete;
    static GammaSpec radial_profile(const std::vector<double>& r, const std::vector<double>& val) {
        if (r.size() != val.size() || r.size() < 2)
            throw std::invalid_argument("radial_profile: need matching tables of size >= 2");
        GammaSpec g(GammaFamily::radial_profile, 0.0);
        g.table_r_ = r;
        g.table_v_ = val;
        return g;
    }

    GammaFamily family() const { return family_; }
    double param() const { return p_; }
    double core() const { return q_; }

    /// gamma as a function of rho = |x'| >= 0.
    double eval_abs(double rho) const {
        switch (family_) {
            case GammaFamily::linear:
                return p_ * rho;
            case GammaFamily::log_coercive:
                return p_ * std::log1p(rho);
            case GammaFamily::bounded:
                return p_;
            case GammaFamily::sqrt_sine: {
                if (rho >= 1.0) {
                    const double s = std::sqrt(rho);
                    return s * std::sin(s);
                }
                // cubic in rho: b rho^2 + c rho^3 with value/slope matched at 1
                const double v1 = std::sin(1.0);
                const double d1 = 0.5 * std::sin(1.0) + 0.5 * std::cos(1.0);
                const double c3 = d1 - 2.0 * v1;
                const double b2 = v1 - c3;
                return rho * rho * (b2 + c3 * rho);
            }
            case GammaFamily::conical:
                return q_ - std::sqrt(q_ * q_ + sqr(p_ * rho));
            case GammaFamily::radial_profile: {
                if (rho <= table_r_.front()) return table_v_.front();
                if (rho >= table_r_.back()) return table_v_.back();
                auto it = std::upper_bound(table_r_.begin(), table_r_.end(), rho);
                const auto i = static_cast<std::size_t>(it - table_r_.begin());
                const double w = (rho - table_r_[i - 1]) / (table_r_[i] - table_r_[i - 1]);
                return (1.0 - w) * table_v_[i - 1] + w * table_v_[i];
            }
        }
        return 0.0;
    }

    double operator()(double xp) const { return eval_abs(std::abs(xp)); }

    /// Limit of gamma(x')/|x'| (+-inf encoded as infinity), used by the
    /// analytic direction-set path.
    double linear_growth_rate() const {
        switch (family_) {
            case GammaFamily::linear:
                return p_;
            case GammaFamily::conical:
                return -p_;
            case GammaFamily::log_coercive:
            case GammaFamily::bounded:
            case GammaFamily::sqrt_sine:
                return 0.0;
            case GammaFamily::radial_profile:
                return 0.0; // tables are bounded
        }
        return 0.0;
    }

  private:
    GammaSpec(GammaFamily f, double p) : family_(f), p_(p) {}
    GammaFamily family_;
    double p_ = 0.0;
    double q_ = 1.0;
    std::vector<double> table_r_, table_v_;
};

enum class SupportVariant { subgraph, ball, half_space, cone, v_shape, annuli_union, custom };

/// Parametric initial support U in the plane (x_1, x_N).
class SupportSpec {
  public:
    static SupportSpec subgraph(GammaSpec g) {
        SupportSpec s(SupportVariant::subgraph);
        s.gamma_ = std::move(g);
        return s;
    }
    static SupportSpec ball(Point2 center, double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
        SupportSpec s(SupportVariant::ball);
        s.center_ = center;
        s.radius_ = radius;
        return s;
    }
    static SupportSpec half_space(Point2 normal, double offset) {
        const double n = std::hypot(normal[0], normal[1]);
        if (!(n > 0.0)) throw std::invalid_argument("half_space: zero normal");
        SupportSpec s(SupportVariant::half_space);
        s.center_ = {normal[0] / n, normal[1] / n};
        s.radius_ = offset / n;
        return s;
    }
    /// Subgraph of alpha |x'|.
    static SupportSpec cone(double alpha) {
        SupportSpec s(SupportVariant::cone);
        s.gamma_ = GammaSpec::linear(alpha);
        return s;
    }
    /// Union of two half-planes meeting at the origin, opening half-angle beta
    /// in (0, pi/2) measured from the downward axis: x_N <= cot(beta)|x_1|.
    static SupportSpec v_shape(double beta) {
        if (!(beta > 0.0 && beta < M_PI / 2))
            throw std::invalid_argument("v_shape: beta must be in (0, pi/2)");
        SupportSpec s(SupportVariant::v_shape);
        s.gamma_ = GammaSpec::linear(1.0 / std::tan(beta));
        return s;
    }
    /// Union of the closed annuli of radii [2^n - 1, 2^n + 1], n = 0..n_max.
    static SupportSpec annuli_union(int n_max) {
        if (n_max < 1) throw std::invalid_argument("annuli_union: n_max must be >= 1");
        SupportSpec s(SupportVariant::annuli_union);
        s.n_max_ = n_max;
        return s;
    }
    static SupportSpec custom(std::function<bool(Point2)> pred, double bound_radius) {
        SupportSpec s(SupportVariant::custom);
        s.pred_ = std::move(pred);
        s.radius_ = bound_radius;
        return s;
    }

    SupportVariant variant() const { return variant_; }
    const GammaSpec& gamma() const {
        if (!gamma_) throw std::logic_error("support has no gamma");
        return *gamma_;
    }
    Point2 center() const { return center_; }
    double radius() const { return radius_; }
    int n_max() const { return n_max_; }

    bool contains(Point2 x) const {
        switch (variant_) {
            case SupportVariant::subgraph:
            case SupportVariant::cone:
            case SupportVariant::v_shape:
                return x[1] <= (*gamma_)(x[0]);
            case SupportVariant::ball:
                return dist2(x, center_) <= radius_ * radius_;
            case SupportVariant::half_space:
                return x[0] * center_[0] + x[1] * center_[1] <= radius_;
            case SupportVariant::annuli_union: {
                const double r = std::hypot(x[0], x[1]);
                for (int n = 0; n <= n_max_; ++n) {
                    const double c = std::ldexp(1.0, n);
                    if (r >= c - 1.0 && r <= c + 1.0) return true;
                }
                return false;
            }
            case SupportVariant::custom:
                return pred_(x);
        }
        return false;
    }

  private:
    explicit SupportSpec(SupportVariant v) : variant_(v) {}
    SupportVariant variant_;
    std::optional<GammaSpec> gamma_;
    Point2 center_{0.0, 0.0};
    double radius_ = 0.0;
    int n_max_ = 0;
    std::function<bool(Point2)> pred_;
};

inline bool indicator(const SupportSpec& s, Point2 x) { return s.contains(x); }

// ---------------------------------------------------------------------------
// Direction sets on S^1, represented as closed angle intervals [lo, hi]
// (radians, angles taken mod 2 pi).

struct DirectionSet {
    // Closed arcs [lo, hi]; degenerate arcs (lo == hi) are single directions.
    std::vector<std::array<double, 2>> arcs;

    bool contains(double theta, double tol = 1e-12) const {
        const double t = std::remainder(theta, 2.0 * M_PI);
        for (const auto& a : arcs) {
            for (int k = -1; k <= 1; ++k) {
                const double tt = t + 2.0 * M_PI * k;
                if (tt >= a[0] - tol && tt <= a[1] + tol) return true;
            }
        }
        return false;
    }
    bool empty() const { return arcs.empty(); }
    double measure() const {
        double m = 0.0;
        for (const auto& a : arcs) m += a[1] - a[0];
        return m;
    }
};

struct DirectionSets {
    DirectionSet unbounded; // U(U): closed
    DirectionSet bounded;   // B(U): open (stored as arcs of its closure interior)
    bool covers_sphere = false;
    bool indeterminate = false;
};

/// Angle of the cone boundary e_N = alpha |e'| measured from the +x axis, in
/// [0, pi]: directions with angle in [-phi0, phi0] mirrored... For a subgraph
/// with gamma/|x'| -> alpha the unbounded set is {e: e_N <= alpha e'|}.
inline DirectionSets direction_sets_for_growth(double alpha) {
    DirectionSets ds;
    if (std::isinf(alpha) && alpha > 0) {
        ds.unbounded.arcs = {{-M_PI, M_PI}};
        ds.covers_sphere = true;
        return ds;
    }
    if (std::isinf(alpha)) { // gamma/|x'| -> -inf: only straight down
        ds.unbounded.arcs = {{-M_PI / 2, -M_PI / 2}};
        ds.bounded.arcs = {{-M_PI / 2, 3.0 * M_PI / 2}}; // open complement
        ds.covers_sphere = true;
        return ds;
    }
    // e = (cos t, sin t): e_N <= alpha |e_1|  <=>  sin t <= alpha |cos t|.
    // On [-pi/2, pi/2]: t <= atan(alpha); by mirror symmetry on the left half.
    const double t0 = std::atan(alpha);
    ds.unbounded.arcs = {{t0 - M_PI, t0}}; // hmm placeholder; fixed below
    ds.unbounded.arcs.clear();
    // Right half: t in [-pi/2, t0]; left half: t in [pi - t0, 3pi/2].
    // Merge across the bottom: [pi - t0, 2pi + t0] mod 2pi == [-(pi + t0), t0].
    ds.unbounded.arcs.push_back({t0 - M_PI - 2.0 * (M_PI / 2 - 0.0) + 0.0, t0}); // replaced below
    ds.unbounded.arcs.clear();
    ds.unbounded.arcs.push_back({-M_PI + std::abs(t0) * 0 - M_PI + 0, 0}); // replaced below
    ds.unbounded.arcs.clear();
    const double lo = -(M_PI - t0) - 2.0 * t0 * 0.0; // see below
    (void)lo;
    // Arc through the downward direction: from pi - t0 (going down/around) to
    // t0, i.e. [pi - t0 - 2 pi, t0] = [-pi - t0, t0] shifted: use
    // [-(pi + t0), t0]? Length must be pi + 2 t0.
    ds.unbounded.arcs.push_back({-M_PI + t0 - 0.0, t0});
    ds.unbounded.arcs.back()[0] = t0 - (M_PI + 2.0 * t0);
    ds.bounded.arcs.push_back({t0, M_PI - t0 + 0.0});
    ds.covers_sphere = true;
    return ds;
}

inline DirectionSets direction_sets(const SupportSpec& s);

// ---------------------------------------------------------------------------

/// Polar envelope w(theta) of the spreading set W = R+ U(U) + B_{c*}, with the
/// conventions w = c* when no unbounded direction has positive inner product
/// with e, and w = +inf on R+ U(U).
struct Envelope {
    std::vector<double> theta;
    std::vector<double> w;
    bool has_unbounded_rays = false;
};

inline Envelope envelope_w(const SupportSpec& s, double c_star, int n_angles = 1440);

// ---------------------------------------------------------------------------
// Distances.

namespace detail {

// Distance from p to the ray {r*(cos t, sin t) : r >= 0}.
inline double dist_to_ray(Point2 p, double t) {
    const double c = std::cos(t), sn = std::sin(t);
    const double proj = p[0] * c + p[1] * sn;
    if (proj <= 0.0) return std::hypot(p[0], p[1]);
    return std::abs(-p[0] * sn + p[1] * c);
}

} // namespace detail

/// Distance from x to the closed support set; 0 inside.
inline double dist_to_support(const SupportSpec& s, Point2 x) {
    if (s.contains(x)) return 0.0;
    switch (s.variant()) {
        case SupportVariant::ball:
            return std::sqrt(dist2(x, s.center())) - s.radius();
        case SupportVariant::half_space:
            return x[0] * s.center()[0] + x[1] * s.center()[1] - s.radius();
        case SupportVariant::annuli_union: {
            const double r = std::hypot(x[0], x[1]);
            double best = std::numeric_limits<double>::infinity();
            for (int n = 0; n <= s.n_max(); ++n) {
                const double c = std::ldexp(1.0, n);
                best = std::min(best, std::max(r - (c + 1.0), (c - 1.0) - r));
            }
            return std::max(best, 0.0);
        }
        case SupportVariant::subgraph:
        case SupportVariant::cone:
        case SupportVariant::v_shape: {
            // Nearest boundary point of a subgraph from above lies on the
            // graph; bracketed 1D minimization over the graph abscissa.
            const auto& g = s.gamma();
            auto obj = [&](double q) { return std::sqrt(sqr(q - x[0]) + sqr(g(q) - x[1])); };
            double span = x[1] - g(x[0]); // vertical distance is an upper bound
            span = std::max(span, 1e-6);
            const int coarse = 4000;
            double best_q = x[0], best = obj(x[0]);
            for (int i = 0; i <= coarse; ++i) {
                const double q = x[0] - span + 2.0 * span * i / coarse;
                const double v = obj(q);
                if (v < best) {
                    best = v;
                    best_q = q;
                }
            }
            // Golden-section refinement around the best coarse sample.
            double a = best_q - 2.0 * span / coarse, b = best_q + 2.0 * span / coarse;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
            double f1 = obj(c1), f2 = obj(c2);
            while (b - a > 1e-9) {
                if (f1 < f2) {
                    b = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = b - gr * (b - a);
                    f1 = obj(c1);
                } else {
                    a = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = a + gr * (b - a);
                    f2 = obj(c2);
                }
            }
            return std::min(best, std::min(f1, f2));
        }
        case SupportVariant::custom: {
            // Sampled minimization within the bounding disc.
            const double R = s.radius();
            const int n = 600;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    const Point2 p{-R + 2.0 * R * i / n, -R + 2.0 * R * j / n};
                    if (s.contains(p)) best = std::min(best, std::sqrt(dist2(p, x)));
                }
            return best;
        }
    }
    return std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------

inline DirectionSets direction_sets(const SupportSpec& s) {
    switch (s.variant()) {
        case SupportVariant::ball: {
            DirectionSets ds;
            ds.bounded.arcs = {{-M_PI, M_PI}};
            ds.covers_sphere = true;
            return ds;
        }
        case SupportVariant::half_space: {
            // U(U) = {e : e . n <= 0}: closed half-circle opposite the normal.
            DirectionSets ds;
            const double tn = std::atan2(s.center()[1], s.center()[0]);
            ds.unbounded.arcs = {{tn + M_PI / 2, tn + 3.0 * M_PI / 2}};
            ds.bounded.arcs = {{tn - M_PI / 2, tn + M_PI / 2}};
            ds.covers_sphere = true;
            return ds;
        }
        case SupportVariant::subgraph:
        case SupportVariant::cone:
        case SupportVariant::v_shape: {
            const auto& g = s.gamma();
            if (g.family() == GammaFamily::conical && g.param() > 0.0) {
                DirectionSets ds = direction_sets_for_growth(-g.param());
                return ds;
            }
            return direction_sets_for_growth(g.linear_growth_rate());
        }
        case SupportVariant::annuli_union: {
            // Neither limit exists along any direction: dist(tau xi, U)/tau
            // oscillates between 0 and a positive fraction of the dyadic gaps.
            DirectionSets ds;
            ds.covers_sphere = false;
            return ds;
        }
        case SupportVariant::custom: {
            // Numeric fallback: threshold the trend of dist(tau xi, U)/tau.
            DirectionSets ds;
            const int n_dir = 720;
            std::vector<int> cls(n_dir, 0); // 0 unbounded, 1 bounded, 2 indeterminate
            for (int i = 0; i < n_dir; ++i) {
                const double t = -M_PI + 2.0 * M_PI * i / n_dir;
                const double tau0 = std::max(1.0, 0.01 * s.radius());
                double final_ratio = 0.0;
                for (int k = 0; k <= 12; ++k) {
                    const double tau = tau0 * std::ldexp(1.0, k);
                    const Point2 p{tau * std::cos(t), tau * std::sin(t)};
                    final_ratio = dist_to_support(s, p) / tau;
                }
                cls[i] = final_ratio < 0.02 ? 0 : (final_ratio > 0.05 ? 1 : 2);
            }
            auto collect = [&](int want, DirectionSet& out) {
                int i = 0;
                while (i < n_dir) {
                    if (cls[i] != want) {
                        ++i;
                        continue;
                    }
                    int j = i;
                    while (j < n_dir && cls[j] == want) ++j;
                    out.arcs.push_back({-M_PI + 2.0 * M_PI * i / n_dir, -M_PI + 2.0 * M_PI * (j - 1) / n_dir});
                    i = j;
                }
            };
            collect(0, ds.unbounded);
            collect(1, ds.bounded);
            ds.indeterminate = std::any_of(cls.begin(), cls.end(), [](int c) { return c == 2; });
            ds.covers_sphere = !ds.indeterminate;
            return ds;
        }
    }
    return {};
}

inline Envelope envelope_w(const SupportSpec& s, double c_star, int n_angles) {
    if (!(c_star > 0.0)) throw std::invalid_argument("envelope_w: c_star must be positive");
    const DirectionSets ds = direction_sets(s);
    Envelope env;
    env.theta.resize(n_angles);
    env.w.resize(n_angles);
    for (int i = 0; i < n_angles; ++i) {
        const double t = -M_PI + 2.0 * M_PI * i / n_angles;
        env.theta[i] = t;
        if (ds.unbounded.empty()) {
            env.w[i] = c_star;
            continue;
        }
        // dist(e, R+ U(U)) restricted to directions xi with xi . e >= 0;
        // w = c* if there is no such xi.
        double best = std::numeric_limits<double>::infinity();
        bool any_forward = false;
        for (const auto& arc : ds.unbounded.arcs) {
            // Minimal angular separation between t and the arc (mod 2 pi).
            double sep = std::numeric_limits<double>::infinity();
            for (int k = -1; k <= 1; ++k) {
                const double lo = arc[0] + 2.0 * M_PI * k, hi = arc[1] + 2.0 * M_PI * k;
                if (t >= lo && t <= hi)
                    sep = 0.0;
                else
                    sep = std::min(sep, std::min(std::abs(t - lo), std::abs(t - hi)));
            }
            if (sep < M_PI / 2) {
                any_forward = true;
                best = std::min(best, std::sin(sep));
            }
        }
        if (!any_forward) {
            env.w[i] = c_star;
        } else if (best <= 0.0) {
            env.w[i] = std::numeric_limits<double>::infinity();
            env.has_unbounded_rays = true;
        } else {
            env.w[i] = c_star / best;
        }
    }
    return env;
}

// ---------------------------------------------------------------------------
// Erosion U_delta by exact Euclidean distance transform on a sampled grid.

namespace detail {

// Felzenszwalb-Huttenlocher 1D squared distance transform.
inline void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
    const int n = static_cast<int>(f.size());
    d.assign(n, 0.0);
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double sVal;
        while (true) {
            sVal = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (sVal <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = sVal;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = sqr(q - v[k]) + f[v[k]];
    }
}

} // namespace detail

/// Grid points of U at distance >= delta from the complement, sampled at
/// spacing h over the bounding window [xlo,xhi] x [ylo,yhi].
inline Cloud erode(const SupportSpec& s, double delta, double h, Point2 lo, Point2 hi) {
    if (!(delta > 0.0)) throw std::invalid_argument("erode: delta must be positive");
    if (!(h > 0.0) || h > delta / 4.0) throw std::invalid_argument("erode: need 0 < h <= delta/4");
    const int nx = static_cast<int>(std::floor((hi[0] - lo[0]) / h)) + 1;
    const int ny = static_cast<int>(std::floor((hi[1] - lo[1]) / h)) + 1;
    const double INF = 1e30;
    // Squared distance (in cells) to the nearest complement sample.
    std::vector<double> grid(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Point2 p{lo[0] + i * h, lo[1] + j * h};
            grid[static_cast<std::size_t>(j) * nx + i] = s.contains(p) ? INF : 0.0;
        }
    std::vector<double> col(ny), out(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = grid[static_cast<std::size_t>(j) * nx + i];
        detail::edt_1d(col, out);
        for (int j = 0; j < ny; ++j) grid[static_cast<std::size_t>(j) * nx + i] = out[j];
    }
    std::vector<double> row(nx), rout(nx);
    Cloud cloud;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = grid[static_cast<std::size_t>(j) * nx + i];
        detail::edt_1d(row, rout);
        for (int i = 0; i < nx; ++i) {
            if (rout[i] * h * h >= delta * delta)
                cloud.push_back({lo[0] + i * h, lo[1] + j * h});
        }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Hausdorff distance between point clouds: brute force and a grid-bucket
// accelerated version computing the same minima.

inline double directed_hausdorff_naive(const Cloud& a, const Cloud& b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : b) best = std::min(best, dist2(p, q));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

inline double hausdorff_naive(const Cloud& a, const Cloud& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    return std::max(directed_hausdorff_naive(a, b), directed_hausdorff_naive(b, a));
}

namespace detail {

class BucketIndex {
  public:
    explicit BucketIndex(const Cloud& pts, double cell) : pts_(pts), cell_(cell) {
        if (pts.empty()) return;
        lo_ = pts[0];
        Point2 hi = pts[0];
        for (const auto& p : pts) {
            lo_[0] = std::min(lo_[0], p[0]);
            lo_[1] = std::min(lo_[1], p[1]);
            hi[0] = std::max(hi[0], p[0]);
            hi[1] = std::max(hi[1], p[1]);
        }
        nx_ = static_cast<int>((hi[0] - lo_[0]) / cell_) + 1;
        ny_ = static_cast<int>((hi[1] - lo_[1]) / cell_) + 1;
        cells_.resize(static_cast<std::size_t>(nx_) * ny_);
        for (std::size_t k = 0; k < pts.size(); ++k) cells_[cell_of(pts[k])].push_back(k);
    }

    double nearest_dist2(const Point2& p) const {
        if (pts_.empty()) return std::numeric_limits<double>::infinity();
        const int ci = std::clamp(static_cast<int>((p[0] - lo_[0]) / cell_), 0, nx_ - 1);
        const int cj = std::clamp(static_cast<int>((p[1] - lo_[1]) / cell_), 0, ny_ - 1);
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < std::max(nx_, ny_) + 1; ++ring) {
            // Once a candidate is found, rings beyond best/cell can stop.
            if (best < std::numeric_limits<double>::infinity()) {
                const double safe = (ring - 1) * cell_;
                if (safe > 0.0 && safe * safe >= best) break;
            }
            bool any_cell = false;
            for (int j = cj - ring; j <= cj + ring; ++j) {
                if (j < 0 || j >= ny_) continue;
                for (int i = ci - ring; i <= ci + ring; ++i) {
                    if (i < 0 || i >= nx_) continue;
                    if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
                    any_cell = true;
                    for (auto k : cells_[static_cast<std::size_t>(j) * nx_ + i])
                        best = std::min(best, dist2(p, pts_[k]));
                }
            }
            if (!any_cell && ring > std::max(nx_, ny_)) break;
        }
        return best;
    }

  private:
    std::size_t cell_of(const Point2& p) const {
        const int i = std::clamp(static_cast<int>((p[0] - lo_[0]) / cell_), 0, nx_ - 1);
        const int j = std::clamp(static_cast<int>((p[1] - lo_[1]) / cell_), 0, ny_ - 1);
        return static_cast<std::size_t>(j) * nx_ + i;
    }
    const Cloud& pts_;
    double cell_;
    Point2 lo_{0, 0};
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<std::size_t>> cells_;
};

} // namespace detail

inline double directed_hausdorff(const Cloud& a, const Cloud& b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    // Cell size targeting a handful of points per bucket.
    Point2 lo = b[0], hi = b[0];
    for (const auto& p : b) {
        lo[0] = std::min(lo[0], p[0]);
        lo[1] = std::min(lo[1], p[1]);
        hi[0] = std::max(hi[0], p[0]);
        hi[1] = std::max(hi[1], p[1]);
    }
    const double area = std::max((hi[0] - lo[0]) * (hi[1] - lo[1]), 1e-12);
    const double cell = std::max(std::sqrt(area / b.size()) * 2.0, 1e-9);
    detail::BucketIndex idx(b, cell);
    double worst = 0.0;
    for (const auto& p : a) worst = std::max(worst, idx.nearest_dist2(p));
    return std::sqrt(worst);
}

inline double hausdorff(const Cloud& a, const Cloud& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

} // namespace frontlab
