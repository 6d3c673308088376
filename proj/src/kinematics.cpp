#include "dirac/kinematics.hpp"

#include <cmath>
#include <numbers>

namespace dirac::kinematics {

IonBoost boost_from_beam_energy(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("beam energy x must be positive (MeV/u)");
    IonBoost b;
    b.x_mev_per_nucleon = x;
    b.gamma_I = 1.0 + 0.001 * x;
    b.beta_I = std::sqrt(1.0 - 1.0 / (b.gamma_I * b.gamma_I));
    return b;
}

Branch parse_branch(std::string_view s) {
    if (s == "+" || s == "plus") return Branch::plus;
    if (s == "-" || s == "minus") return Branch::minus;
    throw ValidationError("unknown branch '" + std::string(s) + "' (expected + or -)");
}

std::string to_string(Branch b) { return b == Branch::plus ? "+" : "-"; }

GammaRoots gamma_e_solutions(double delta_eps, double R, const Constants& c) {
    if (!(delta_eps >= 0.0)) throw ValidationError("delta_eps must be non-negative");
    if (!(R >= 0.0) || !(R < 1.0)) throw ValidationError("R must lie in [0, 1)");
    const double q = delta_eps / (2.0 * c.electron_rest_energy);
    const double den = 1.0 - R * R;
    const double root = std::sqrt(q * (2.0 + q) + R * R);
    return {(1.0 + q) / den + R / den * root, (1.0 + q) / den - R / den * root};
}

double defining_residual(double delta_eps, double R, double gamma_e, Branch b, const Constants& c) {
    const double q = delta_eps / (2.0 * c.electron_rest_energy);
    return q + 1.0 - gamma_e + branch_sign(b) * R * std::sqrt(std::max(0.0, gamma_e * gamma_e - 1.0));
}

PairSolution lab_pair_energy(const IonBoost& boost, double delta_eps, Angle theta_e, Branch b, const Constants& c) {
    const double th = theta_e.rad();
    if (!(th > 0.0) || th > std::numbers::pi / 2 + 1e-15)
        throw ValidationError("theta_e must lie in (0, 90] degrees");
    const double m = c.electron_rest_energy;
    const double gI = boost.gamma_I, bI = boost.beta_I;
    const double cth = std::cos(th);
    PairSolution s;
    s.branch = b;
    s.theta_e = theta_e;
    s.R = bI / gI * cth;
    const auto roots = gamma_e_solutions(delta_eps, s.R, c);
    s.gamma_e = b == Branch::plus ? roots.plus : roots.minus;
    const double pe = std::sqrt(std::max(0.0, s.gamma_e * s.gamma_e - 1.0));  // gamma_e beta_e
    s.T_lab = (gI - 1.0) * 2.0 * m + gI * (delta_eps - 2.0 * m * ((1.0 + gI) / gI) * pe * bI * cth);
    s.E_cm = 2.0 * m * s.gamma_e;
    s.P_cm = -2.0 * m * pe * cth;
    const double total = 2.0 * m + s.T_lab;
    s.lorentz_residual = std::abs(total - gI * (s.E_cm + bI * s.P_cm)) / total;
    return s;
}

std::vector<Angle> solve_theta(const IonBoost& boost, double delta_eps, Branch b, double T_target, const Constants& c,
                               const ThetaScan& scan) {
    if (!(T_target > 0.0)) throw ValidationError("target energy must be positive");
    if (!(scan.step_deg > 0.0) || !(scan.tolerance_deg > 0.0)) throw ValidationError("bad theta scan settings");
    auto g = [&](double deg) {
        return lab_pair_energy(boost, delta_eps, Angle::degrees(deg), b, c).T_lab - T_target;
    };
    std::vector<Angle> out;
    const int n = static_cast<int>(std::lround(90.0 / scan.step_deg));
    double a = scan.step_deg, ga = g(a);
    if (ga == 0.0) out.push_back(Angle::degrees(a));
    for (int i = 2; i <= n; ++i) {
        const double bdeg = i == n ? 90.0 : i * scan.step_deg;
        const double gb = g(bdeg);
        if (gb == 0.0) {
            out.push_back(Angle::degrees(bdeg));
        } else if (ga != 0.0 && (ga < 0.0) != (gb < 0.0)) {
            double lo = a, hi = bdeg, glo = ga;
            while (hi - lo > scan.tolerance_deg) {
                const double mid = 0.5 * (lo + hi), gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm < 0.0) == (glo < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(Angle::degrees(0.5 * (lo + hi)));
        }
        a = bdeg;
        ga = gb;
    }
    return out;
}

}  // namespace dirac::kinematics
