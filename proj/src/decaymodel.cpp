#include "dirac/decaymodel.hpp"

#include <cmath>

namespace dirac::decaymodel {

void DecayParams::validate() const {
    if (!(sigma0 > 0.0)) throw ValidationError("sigma0 must be positive");
    if (!(x0 >= 1.0)) throw ValidationError("x0 must be >= 1");
    if (!(eta > 0.0)) throw ValidationError("eta must be positive");
    if (!(sigma_bg > 0.0)) throw ValidationError("sigma_bg must be positive");
    if (!(z > 0.0)) throw ValidationError("z must be positive");
}

double pair_cross_section(double J, const DecayParams& p) {
    p.validate();
    if (!(J >= 0.0)) throw ValidationError("current J must be non-negative");
    return p.sigma0 / (p.x0 + p.eta * J);
}

CountingMode parse_counting_mode(std::string_view s) {
    if (s == "baseline") return CountingMode::baseline;
    if (s == "metastable") return CountingMode::metastable;
    throw ValidationError("unknown counting mode '" + std::string(s) + "'");
}

double counting_time(double x, double x0, CountingMode mode) {
    if (!(x > 0.0)) throw ValidationError("x must be positive");
    if (mode == CountingMode::baseline) return 1.0 / x;
    if (!(x0 > 0.0)) throw ValidationError("x0 must be positive");
    return (x0 + x) * (x0 + x) / x;
}

OptimalCurrent optimal_current(double x0) {
    if (!(x0 > 0.0)) throw ValidationError("x0 must be positive");
    return {x0, 4.0 * x0};
}

double time_to_significance(double sigma_ep, double sigma_bg, double J, double z) {
    if (!(sigma_ep > 0.0) || !(J > 0.0)) throw ValidationError("sigma_ep and J must be positive");
    return z * z * sigma_bg / (sigma_ep * sigma_ep * J);
}

double time_scale(const DecayParams& p) {
    p.validate();
    return p.eta * p.z * p.z * p.sigma_bg / (p.sigma0 * p.sigma0);
}

void LineShapeParams::validate() const {
    if (!(density_scale > 0.0)) throw ValidationError("density_scale must be positive");
    if (!(regularization > 0.0)) throw ValidationError("regularization width must be positive");
}

double threshold_lineshape(double T_sum, double delta_eps, const LineShapeParams& p) {
    p.validate();
    const double x = T_sum - delta_eps + p.delta_eps_shift;
    if (x < 0.0) return 0.0;
    if (x <= p.regularization) return 2.0 * p.density_scale / std::sqrt(p.regularization);
    return p.density_scale / std::sqrt(x);
}

}  // namespace dirac::decaymodel
