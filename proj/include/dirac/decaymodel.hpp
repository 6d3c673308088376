#pragma once

// Metastable-decay counting-time model and the pair-threshold line shape.

#include "dirac/core.hpp"

#include <string>
#include <string_view>

namespace dirac::decaymodel {

struct DecayParams {
    double sigma0 = 1.0;    // pair cross-section scale
    double x0 = 1.0;        // (R_phi + R_ep)/R_ep
    double eta = 1.0;       // per unit current
    double sigma_bg = 1.0;  // background cross section
    double z = 3.0;         // significance threshold

    void validate() const;
};

// sigma0 / (x0 + eta J)
double pair_cross_section(double J, const DecayParams& p);

enum class CountingMode { baseline, metastable };

CountingMode parse_counting_mode(std::string_view s);

// baseline: 1/x; metastable: (x0 + x)^2 / x
double counting_time(double x, double x0, CountingMode mode);

struct OptimalCurrent {
    double x_min = 0.0;
    double tau_min = 0.0;
};

OptimalCurrent optimal_current(double x0);

// Time to reach z sigma for a peak with cross section sigma_ep over background sigma_bg at current J:
// z^2 sigma_bg / (sigma_ep^2 J).
double time_to_significance(double sigma_ep, double sigma_bg, double J, double z);
// eta z^2 sigma_bg / sigma0^2, the scale relating time_to_significance to the metastable counting time.
double time_scale(const DecayParams& p);

struct LineShapeParams {
    double density_scale = 1.0;
    double delta_eps_shift = 0.0;  // keV
    double regularization = 1.0;   // keV

    void validate() const;
};

// density_scale / sqrt(x) for x = T_sum - delta_eps + shift > regularization; the bin average
// 2 density_scale / sqrt(regularization) on [0, regularization]; 0 below threshold.
double threshold_lineshape(double T_sum, double delta_eps, const LineShapeParams& p);

}  // namespace dirac::decaymodel
