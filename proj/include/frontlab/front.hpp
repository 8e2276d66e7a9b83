#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontlab/reaction.hpp"

namespace frontlab {

/// Sampled monotone front profile phi with its speed c, normalized so that
/// phi = 1/2 at z = 0. phi solves phi'' + c phi' + f(phi) = 0.
struct FrontProfile {
    double speed = 0.0;
    std::vector<double> z;
    std::vector<double> phi;
    bool limit_one_ok = false;  // first sample within 1e-6 of 1
    bool limit_zero_ok = false; // last sample within 1e-6 of 0
};

struct SpeedBracket {
    double c_low = 0.0;
    double c_high = 0.0;
    // Classification of the trajectory at each endpoint.
    enum class Exit { overshoot, undershoot, none };
    Exit low_exit = Exit::none;
    Exit high_exit = Exit::none;
};

struct ShootResult {
    double speed = 0.0;
    FrontProfile profile;
    SpeedBracket bracket;
};

struct ShootOptions {
    double dz = 1e-3;         // RK4 step on the phase plane
    double eps = 1e-6;        // launch offset along the unstable eigenvector at phi=1
    double c_min = -10.0;     // initial bracket scan range
    double c_max = 10.0;
    double c_scan_step = 0.5;
    double z_max = 400.0;     // abort integration beyond this length
};

/// Minimal front speed 2 sqrt(f'(0)) for KPP-class reactions.
inline double kpp_minimal_speed(const ReactionSpec& f) {
    const double fp0 = f.derivative_at_zero();
    if (!(fp0 > 0.0))
        throw std::invalid_argument("kpp_minimal_speed: requires f'(0) > 0");
    return 2.0 * std::sqrt(fp0);
}

namespace detail {

// Reaction rescaled to the sub-interval [lo,hi]: g(v) = f(lo + (hi-lo)v)/(hi-lo).
// Front speeds on [lo,hi] for f equal front speeds on [0,1] for g.
struct SubReaction {
    const ReactionSpec* f;
    double lo, hi;
    double operator()(double v) const { return (*f)(lo + (hi - lo) * v) / (hi - lo); }
    double fprime_at_one() const {
        const double h = 1e-6;
        return ((*this)(1.0) - (*this)(1.0 - h)) / h;
    }
};

struct Traj {
    std::vector<double> z, phi, psi;
    SpeedBracket::Exit exit = SpeedBracket::Exit::none;
};

// Integrate (phi, psi) forward from the unstable manifold of (1, 0) until the
// trajectory either crosses phi=0 with psi<0 (overshoot) or psi=0 with phi>0
// (undershoot), recording samples when keep is set.
template <typename G>
inline Traj shoot_once(const G& g, double c, const ShootOptions& opt, bool keep) {
    const double fp1 = g.fprime_at_one();
    // Eigenvalue of the linearization at (1,0): mu^2 + c mu + f'(1) = 0.
    const double disc = c * c - 4.0 * fp1;
    const double mu = 0.5 * (-c + std::sqrt(std::max(disc, 0.0)));
    double phi = 1.0 - opt.eps;
    double psi = -opt.eps * std::max(mu, 1e-8);

    auto rhs = [&](double p, double q, double& dp, double& dq) {
        dp = q;
        dq = -c * q - g(p);
    };

    Traj t;
    double z = 0.0;
    const double dz = opt.dz;
    const auto max_steps = static_cast<long>(opt.z_max / dz);
    if (keep) {
        t.z.reserve(4096);
        t.phi.reserve(4096);
        t.psi.reserve(4096);
    }
    for (long n = 0; n < max_steps; ++n) {
        if (keep) {
            t.z.push_back(z);
            t.phi.push_back(phi);
            t.psi.push_back(psi);
        }
        double k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
        rhs(phi, psi, k1p, k1q);
        rhs(phi + 0.5 * dz * k1p, psi + 0.5 * dz * k1q, k2p, k2q);
        rhs(phi + 0.5 * dz * k2p, psi + 0.5 * dz * k2q, k3p, k3q);
        rhs(phi + dz * k3p, psi + dz * k3q, k4p, k4q);
        const double nphi = phi + dz / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        const double npsi = psi + dz / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        z += dz;
        if (nphi <= 0.0 && npsi < 0.0) {
            t.exit = SpeedBracket::Exit::overshoot;
            if (keep) {
                t.z.push_back(z);
                t.phi.push_back(nphi);
                t.psi.push_back(npsi);
            }
            return t;
        }
        if (npsi >= 0.0 && nphi > 0.0 && nphi < 1.0) {
            t.exit = SpeedBracket::Exit::undershoot;
            if (keep) {
                t.z.push_back(z);
                t.phi.push_back(nphi);
                t.psi.push_back(npsi);
            }
            return t;
        }
        phi = nphi;
        psi = npsi;
        if (phi < 1e-15 && phi > 0.0) break; // decayed to the 0 state
    }
    t.exit = SpeedBracket::Exit::none;
    return t;
}

} // namespace detail

/// Shooting-bisection for the unique front speed of ignition/bistable (and
/// tristable sub-interval) reactions, on the level range [lo,hi].
inline ShootResult shoot_front_speed_on(const ReactionSpec& f, double lo, double hi, double tol,
                                        ShootOptions opt = {}) {
    if (!(tol > 0.0)) throw std::invalid_argument("shoot_front_speed: tol must be positive");
    detail::SubReaction g{&f, lo, hi};

    // Bracket scan: find speeds with differing trajectory exits. Trajectories
    // that time out ('none', near-heteroclinic) are bridged over.
    double c_real = 0.0;
    auto exit_real = SpeedBracket::Exit::none;
    std::optional<SpeedBracket> bracket;
    for (double c = opt.c_min; c <= opt.c_max + 1e-12; c += opt.c_scan_step) {
        const auto e = detail::shoot_once(g, c, opt, false).exit;
        if (e == SpeedBracket::Exit::none) continue;
        if (exit_real != SpeedBracket::Exit::none && e != exit_real) {
            bracket = SpeedBracket{c_real, c, exit_real, e};
            break;
        }
        c_real = c;
        exit_real = e;
    }
    if (!bracket)
        throw std::runtime_error(
            "shoot_front_speed: no overshoot/undershoot bracket in the scanned speed range; "
            "the reaction does not admit an invading front on this level range");

    SpeedBracket b = *bracket;
    while (b.c_high - b.c_low > tol) {
        const double mid = 0.5 * (b.c_low + b.c_high);
        const auto e = detail::shoot_once(g, mid, opt, false).exit;
        if (e == b.low_exit) {
            b.c_low = mid;
        } else if (e == b.high_exit) {
            b.c_high = mid;
        } else {
            // Connection hit within integrator resolution; shrink both sides.
            const double w = b.c_high - b.c_low;
            b.c_low = mid - 0.25 * w;
            b.c_high = mid + 0.25 * w;
        }
    }
    const double c0 = 0.5 * (b.c_low + b.c_high);

    ShootResult res;
    res.speed = c0;
    res.bracket = b;
    auto traj = detail::shoot_once(g, c0, opt, true);
    // Map back to [lo,hi] levels and normalize phi(0)=midpoint.
    FrontProfile prof;
    prof.speed = c0;
    prof.z = traj.z;
    prof.phi.resize(traj.phi.size());
    for (std::size_t i = 0; i < traj.phi.size(); ++i)
        prof.phi[i] = lo + (hi - lo) * std::clamp(traj.phi[i], 0.0, 1.0);
    const double mid_level = 0.5 * (lo + hi);
    double zmid = 0.0;
    for (std::size_t i = 1; i < prof.phi.size(); ++i) {
        if (prof.phi[i] <= mid_level && prof.phi[i - 1] > mid_level) {
            const double w = (prof.phi[i - 1] - mid_level) / (prof.phi[i - 1] - prof.phi[i]);
            zmid = prof.z[i - 1] + w * (prof.z[i] - prof.z[i - 1]);
            break;
        }
    }
    for (auto& zz : prof.z) zz -= zmid;
    prof.limit_one_ok = !prof.phi.empty() && std::abs(prof.phi.front() - hi) <= 1e-6 + (hi - lo) * 2e-6;
    prof.limit_zero_ok = !prof.phi.empty() && std::abs(prof.phi.back() - lo) <= 1e-4;
    res.profile = std::move(prof);
    return res;
}

inline ShootResult shoot_front_speed(const ReactionSpec& f, double tol, ShootOptions opt = {}) {
    return shoot_front_speed_on(f, 0.0, 1.0, tol, opt);
}

/// Sampled profile at a prescribed admissible speed on [z0, z1] with n samples,
/// normalized by phi(0) = 1/2. Throws if the trajectory leaves (0,1) before
/// the span is covered (inadmissible speed).
inline FrontProfile front_profile(const ReactionSpec& f, double c, double z0, double z1, int n,
                                  ShootOptions opt = {}) {
    if (n < 2 || !(z1 > z0)) throw std::invalid_argument("front_profile: bad span");
    detail::SubReaction g{&f, 0.0, 1.0};
    auto traj = detail::shoot_once(g, c, opt, true);
    if (traj.exit == SpeedBracket::Exit::overshoot)
        throw std::runtime_error("front_profile: profile oscillates below 0; speed inadmissible");
    if (traj.exit == SpeedBracket::Exit::undershoot)
        throw std::runtime_error("front_profile: profile turns back above 0; speed inadmissible");
    if (traj.phi.empty() || traj.phi.back() > 1e-4)
        throw std::runtime_error("front_profile: trajectory did not reach the 0 state in span");

    // Locate phi = 1/2 on the raw trajectory.
    double zmid = 0.0;
    bool found = false;
    for (std::size_t i = 1; i < traj.phi.size(); ++i) {
        if (traj.phi[i] <= 0.5 && traj.phi[i - 1] > 0.5) {
            const double w = (traj.phi[i - 1] - 0.5) / (traj.phi[i - 1] - traj.phi[i]);
            zmid = traj.z[i - 1] + w * (traj.z[i] - traj.z[i - 1]);
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("front_profile: trajectory never crosses 1/2");

    // The raw trajectory starts at phi = 1 - eps. The far tail toward 1 on the
    // negative-z side is reattached analytically through the unstable
    // eigenvalue mu: 1 - phi ~ eps * exp(mu (z - z_launch)).
    const double fp1 = g.fprime_at_one();
    const double mu = 0.5 * (-c + std::sqrt(std::max(c * c - 4.0 * fp1, 0.0)));
    const double z_launch = -zmid; // launch point in normalized coordinates

    FrontProfile prof;
    prof.speed = c;
    prof.z.resize(n);
    prof.phi.resize(n);
    const double dz_out = (z1 - z0) / (n - 1);
    std::size_t cursor = 1;
    for (int i = 0; i < n; ++i) {
        const double zq = z0 + i * dz_out;
        prof.z[i] = zq;
        const double zr = zq + zmid; // position on the raw trajectory
        if (zr <= traj.z.front()) {
            prof.phi[i] = 1.0 - opt.eps * std::exp(mu * (zq - z_launch));
        } else if (zr >= traj.z.back()) {
            prof.phi[i] = traj.phi.back() * std::exp(-0.5 * c * (zr - traj.z.back()));
        } else {
            while (cursor < traj.z.size() && traj.z[cursor] < zr) ++cursor;
            const double w = (zr - traj.z[cursor - 1]) / (traj.z[cursor] - traj.z[cursor - 1]);
            prof.phi[i] = (1.0 - w) * traj.phi[cursor - 1] + w * traj.phi[cursor];
        }
    }
    prof.limit_one_ok = std::abs(prof.phi.front() - 1.0) <= 1e-6;
    prof.limit_zero_ok = std::abs(prof.phi.back()) <= 1e-6;
    return prof;
}

/// Empirical limit of phi(z) / (z e^{-c* z / 2}) over the trailing decade of
/// the sample grid. A minimal-speed KPP profile stabilizes to a finite
/// positive constant; any other decay rate drifts and is flagged.
struct DecayDiagnostic {
    double amplitude = 0.0; // ratio at the last sample
    double drift = 0.0;     // relative drift across the trailing decade
    bool stable = false;    // drift <= 10%
};

inline DecayDiagnostic decay_diagnostic(const FrontProfile& prof, double c_star) {
    DecayDiagnostic d;
    if (prof.z.empty()) return d;
    const double z_end = prof.z.back();
    const double z_begin = z_end / 10.0;
    double first = 0.0, last = 0.0;
    bool have_first = false;
    for (std::size_t i = 0; i < prof.z.size(); ++i) {
        const double z = prof.z[i];
        if (z < z_begin || z <= 0.0) continue;
        const double ratio = prof.phi[i] / (z * std::exp(-0.5 * c_star * z));
        if (!have_first) {
            first = ratio;
            have_first = true;
        }
        last = ratio;
    }
    if (!have_first || !(last > 0.0)) return d;
    d.amplitude = last;
    d.drift = std::abs(first - last) / std::max(std::abs(last), 1e-300);
    d.stable = d.drift <= 0.10;
    return d;
}

/// Stage speeds of a tristable reaction: c1 for the 0<->b sub-front, c2 for
/// the b<->1 sub-front. The minimal-speed hypothesis for the full reaction
/// holds iff c1 < c2 and the total integral of f is positive.
struct StageSpeeds {
    double c1 = 0.0;
    double c2 = 0.0;
    bool hypothesis2 = false;
};

inline StageSpeeds tristable_stage_speeds(const ReactionSpec& f, double tol = 1e-6) {
    if (f.kind() != ReactionKind::tristable)
        throw std::invalid_argument("tristable_stage_speeds: reaction must be tristable");
    StageSpeeds s;
    s.c1 = shoot_front_speed_on(f, 0.0, f.param_b(), tol).speed;
    s.c2 = shoot_front_speed_on(f, f.param_b(), 1.0, tol).speed;
    const auto q = integrate([&f](double x) { return f(x); }, 0.0, 1.0, 1e-10);
    s.hypothesis2 = (s.c1 < s.c2) && (q.value > q.error_bound + 1e-10);
    return s;
}

} // namespace frontlab
