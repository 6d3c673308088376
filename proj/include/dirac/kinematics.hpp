#pragma once

// Free e-e+ pair emission from a moving ion carrying a bound-pair excitation:
// gamma_e branches, lab-frame pair kinetic energy and inversion for the opening half-angle.

#include "dirac/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dirac::kinematics {

struct IonBoost {
    double x_mev_per_nucleon = 0.0;
    double gamma_I = 1.0;
    double beta_I = 0.0;
};

// gamma_I = 1 + 0.001 x
IonBoost boost_from_beam_energy(double x_mev_per_nucleon);

enum class Branch { plus, minus };

Branch parse_branch(std::string_view s);
std::string to_string(Branch b);
inline double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

struct GammaRoots {
    double plus = 1.0;
    double minus = 1.0;
};

// Roots of delta_eps/2m + 1 - gamma_e + s R sqrt(gamma_e^2 - 1) = 0 (s = +1 for plus, -1 for minus).
GammaRoots gamma_e_solutions(double delta_eps, double R, const Constants& c = default_constants());
double defining_residual(double delta_eps, double R, double gamma_e, Branch b,
                         const Constants& c = default_constants());

struct PairSolution {
    Branch branch = Branch::plus;
    Angle theta_e;
    double R = 0.0;
    double gamma_e = 1.0;
    double T_lab = 0.0;  // keV
    double E_cm = 0.0;   // 2 m gamma_e
    double P_cm = 0.0;   // -2 m gamma_e beta_e cos(theta_e)
    double K_cm = 0.0;   // CM kinetic energy of the ion, neglected
    double delta_KE = 0.0;
    // |2m + T_lab - gamma_I (E_cm + beta_I P_cm)| / (2m + T_lab); zero only for the minus branch.
    double lorentz_residual = 0.0;
};

// theta_e in (0, pi/2].
PairSolution lab_pair_energy(const IonBoost& boost, double delta_eps, Angle theta_e, Branch b,
                             const Constants& c = default_constants());

struct ThetaScan {
    double step_deg = 0.1;
    double tolerance_deg = 1e-6;
};

// All theta in (0, 90] deg where T_lab(theta) = T_target; empty if unattainable.
std::vector<Angle> solve_theta(const IonBoost& boost, double delta_eps, Branch b, double T_target,
                               const Constants& c = default_constants(), const ThetaScan& scan = {});

}  // namespace dirac::kinematics
