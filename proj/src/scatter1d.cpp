#include "dirac/scatter1d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dirac::scatter1d {

namespace {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

double sgn_energy(double E) { return E < 0.0 ? -1.0 : 1.0; }

// cos(kw) and sin(kw)/k for k2 = k^2 of either sign; entire in k2, so no threshold special cases.
std::pair<double, double> propagator_coeffs(double k2, double w) {
    if (k2 > 0.0) {
        const double k = std::sqrt(k2);
        return {std::cos(k * w), std::sin(k * w) / k};
    }
    if (k2 < 0.0) {
        const double kap = std::sqrt(-k2);
        return {std::cosh(kap * w), std::sinh(kap * w) / kap};
    }
    return {1.0, w};
}

// exp(G w) with G = i [[0, d+m], [d-m, 0]], from psi' = i sigma_x (E - V - m sigma_z) psi.
Mat2 region_propagator(double d, double m, double w) {
    const auto [cs, sn] = propagator_coeffs(d * d - m * m, w);
    Mat2 g;
    g << 0.0, cplx(0.0, d + m), cplx(0.0, d - m), 0.0;
    return cs * Mat2::Identity() + sn * g;
}

ScatterResult blocked() { return {0.0, 1.0, Classification::gap_blocked}; }

// Signed wavenumber of the right-moving mode: group velocity dE/dk = k/(E-V) > 0.
double right_moving_q(double d, double k) { return d > 0.0 ? k : -k; }

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::propagating: return "propagating";
        case Regime::evanescent: return "evanescent";
        case Regime::forbidden: return "forbidden";
    }
    return "?";
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::classical: return "classical";
        case Classification::klein_zone: return "klein_zone";
        case Classification::gap_blocked: return "gap_blocked";
        case Classification::evanescent_tunneling: return "evanescent_tunneling";
    }
    return "?";
}

PotentialProfile PotentialProfile::step(double v0) {
    return PotentialProfile({{-std::numeric_limits<double>::infinity(), 0.0}, {0.0, v0}});
}

PotentialProfile PotentialProfile::square(double v0, double width) {
    if (!(width > 0.0)) throw ValidationError("barrier width must be positive");
    return PotentialProfile({{-std::numeric_limits<double>::infinity(), 0.0}, {0.0, v0}, {width, 0.0}});
}

PotentialProfile PotentialProfile::from_regions(std::vector<Region> regions) {
    if (regions.empty()) throw ValidationError("profile needs at least one region");
    if (!std::isinf(regions.front().left_edge) || regions.front().left_edge > 0)
        throw ValidationError("first region must start at -infinity");
    for (size_t i = 1; i < regions.size(); ++i) {
        if (!std::isfinite(regions[i].left_edge)) throw ValidationError("region edges must be finite");
        if (!(regions[i].left_edge > regions[i - 1].left_edge))
            throw ValidationError("region edges must be strictly increasing");
    }
    for (const auto& r : regions)
        if (!std::isfinite(r.potential)) throw ValidationError("region potential must be finite");
    return PotentialProfile(std::move(regions));
}

RegionMode dispersion(Alternative alt, double v0, double E, const Constants& c) {
    const double m = c.electron_rest_energy;
    RegionMode mode;
    mode.effective_potential = alt == Alternative::D1 ? v0 : sgn_energy(E) * v0;
    if (alt == Alternative::D2 && std::abs(E) <= v0) {
        mode.regime = Regime::forbidden;
        return mode;
    }
    const double d = E - mode.effective_potential;
    const double k2 = d * d - m * m;
    if (k2 > 0.0) {
        mode.regime = Regime::propagating;
        mode.k = std::sqrt(k2);
        mode.spinor_ratio = right_moving_q(d, mode.k) / (d + m);
    } else {
        mode.regime = Regime::evanescent;
        mode.kappa = std::sqrt(-k2);
        mode.spinor_ratio = (d + m) != 0.0 ? cplx(0.0, mode.kappa / (d + m)) : cplx(0.0, 0.0);
    }
    return mode;
}

ScatterResult step_transmission(Alternative alt, double v0, double E, const Constants& c) {
    const double m = c.electron_rest_energy;
    if (!(E > m)) throw ValidationError("step_transmission: need E > m for an incident propagating mode");
    const RegionMode mode = dispersion(alt, v0, E, c);
    if (mode.regime != Regime::propagating) return blocked();
    const double d = E - mode.effective_potential;
    const double rho1 = std::sqrt(E * E - m * m) / (E + m);
    const double rho2 = mode.spinor_ratio.real();
    const double r = rho2 / rho1;
    ScatterResult res;
    res.T = 4.0 * r / ((1.0 + r) * (1.0 + r));
    res.R = ((1.0 - r) / (1.0 + r)) * ((1.0 - r) / (1.0 + r));
    res.classification = d < -m ? Classification::klein_zone : Classification::classical;
    return res;
}

ScatterResult barrier_transmission(Alternative alt, const PotentialProfile& profile, double E, const Constants& c) {
    const double m = c.electron_rest_energy;
    const auto& regs = profile.regions();
    std::vector<RegionMode> modes;
    modes.reserve(regs.size());
    for (const auto& r : regs) modes.push_back(dispersion(alt, r.potential, E, c));

    if (modes.front().regime != Regime::propagating)
        throw ValidationError("barrier_transmission: no incident propagating mode at E = " + std::to_string(E));
    for (const auto& md : modes)
        if (md.regime == Regime::forbidden) return blocked();
    if (modes.back().regime != Regime::propagating) return blocked();
    if (regs.size() == 1) return {1.0, 0.0, Classification::classical};

    Mat2 P = Mat2::Identity();
    bool klein = false, tunnel = false;
    for (size_t j = 0; j < regs.size(); ++j) {
        const double d = E - modes[j].effective_potential;
        if (modes[j].regime == Regime::propagating && d < -m) klein = true;
        if (j == 0 || j + 1 == regs.size()) continue;
        if (modes[j].regime == Regime::evanescent) tunnel = true;
        P = region_propagator(d, m, regs[j + 1].left_edge - regs[j].left_edge) * P;
    }

    const double dl = E - modes.front().effective_potential, dr = E - modes.back().effective_potential;
    const double ql = right_moving_q(dl, modes.front().k), qr = right_moving_q(dr, modes.back().k);
    const Vec2 in(dl + m, ql), refl(dl + m, -ql), out(dr + m, qr);

    Mat2 sys;
    sys.col(0) = P * refl;
    sys.col(1) = -out;
    const Vec2 sol = sys.fullPivLu().solve(Vec2(-(P * in)));
    if (!sol.allFinite()) return {0.0, 1.0, Classification::evanescent_tunneling};

    ScatterResult res;
    res.R = std::norm(sol(0));
    res.T = std::norm(sol(1)) * ((dr + m) * qr) / ((dl + m) * ql);
    res.classification = klein ? Classification::klein_zone
                               : (tunnel ? Classification::evanescent_tunneling : Classification::classical);
    return res;
}

double well_matching_function(Alternative alt, double depth, double width, double E, const Constants& c) {
    const double m = c.electron_rest_energy;
    // Real form with psi2 = i phi: psi1' = -(d+m) phi, phi' = (d-m) psi1.
    const double v_in = alt == Alternative::D1 ? -depth : sgn_energy(E) * -depth;
    const double d = E - v_in;
    const double kap = std::sqrt(std::max(0.0, m * m - E * E));
    const auto [cs, sn] = propagator_coeffs(d * d - m * m, width);
    // Left solution growing to the right (decays toward -infinity).
    const double v1 = -(E + m), v2 = kap;
    const double x1 = cs * v1 + sn * (-(d + m) * v2);
    const double x2 = cs * v2 + sn * ((d - m) * v1);
    // Determinant against the right solution (E+m, kappa) decaying toward +infinity.
    return x1 * kap - x2 * (E + m);
}

std::vector<double> square_well_bound_states(Alternative alt, double depth, double width, const Constants& c,
                                             const BoundStateOptions& opt) {
    if (!(depth >= 0.0)) throw ValidationError("well depth must be non-negative");
    if (!(width > 0.0)) throw ValidationError("well width must be positive");
    if (opt.grid_points < 2) throw ValidationError("bound-state grid needs at least 2 points");
    std::vector<double> levels;
    if (depth == 0.0) return levels;

    const double m = c.electron_rest_energy;
    const double lo = alt == Alternative::D1 ? -m : 0.0, hi = m;
    const int n = opt.grid_points;
    auto f = [&](double e) { return well_matching_function(alt, depth, width, e, c); };
    auto grid = [&](int i) { return lo + (hi - lo) * (i + 1) / (n + 1); };

    double e0 = grid(0), f0 = f(e0);
    if (f0 == 0.0) levels.push_back(e0);
    for (int i = 1; i < n; ++i) {
        const double e1 = grid(i), f1 = f(e1);
        if (f1 == 0.0) {
            levels.push_back(e1);
        } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
            double a = e0, b = e1, fa = f0;
            while (b - a > opt.tolerance_in_m * m) {
                const double mid = 0.5 * (a + b), fm = f(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            levels.push_back(0.5 * (a + b));
        }
        e0 = e1;
        f0 = f1;
    }
    return levels;
}

}  // namespace dirac::scatter1d
