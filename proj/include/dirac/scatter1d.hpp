#pragma once

// One-dimensional two-component Dirac scattering on piecewise-constant potentials,
// H = k sigma_x + m sigma_z + V (D1) or with V weighted by sgn(E) (D2).

#include "dirac/core.hpp"

#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace dirac::scatter1d {

struct Region {
    double left_edge;  // 1/keV; -infinity for the first region
    double potential;  // keV
};

class PotentialProfile {
public:
    static PotentialProfile step(double v0);
    // Barrier of height v0 on [0, width].
    static PotentialProfile square(double v0, double width);
    static PotentialProfile from_regions(std::vector<Region> regions);

    const std::vector<Region>& regions() const { return regions_; }

private:
    explicit PotentialProfile(std::vector<Region> r) : regions_(std::move(r)) {}
    std::vector<Region> regions_;
};

enum class Regime { propagating, evanescent, forbidden };
enum class Classification { classical, klein_zone, gap_blocked, evanescent_tunneling };

std::string to_string(Regime r);
std::string to_string(Classification c);

struct RegionMode {
    Regime regime = Regime::forbidden;
    double k = 0.0;      // propagating wavenumber
    double kappa = 0.0;  // evanescent decay constant
    // Lower over upper component of the right-moving (propagating) or right-decaying mode.
    std::complex<double> spinor_ratio{};
    // Potential seen by the positive/negative branch: V (D1) or sgn(E) V (D2).
    double effective_potential = 0.0;
};

struct ScatterResult {
    double T = 0.0;
    double R = 0.0;
    Classification classification = Classification::classical;
};

RegionMode dispersion(Alternative alt, double v0, double E, const Constants& c = default_constants());

// Closed form; E > m.
ScatterResult step_transmission(Alternative alt, double v0, double E, const Constants& c = default_constants());

// Transfer-matrix evaluation; requires a propagating mode in the first region.
ScatterResult barrier_transmission(Alternative alt, const PotentialProfile& profile, double E,
                                   const Constants& c = default_constants());

struct BoundStateOptions {
    int grid_points = 2000;
    double tolerance_in_m = 1e-9;
};

// Gap levels of a well of the given depth on [0, width]: |E| < m for D1, 0 < E < m for D2.
std::vector<double> square_well_bound_states(Alternative alt, double depth, double width,
                                             const Constants& c = default_constants(),
                                             const BoundStateOptions& opt = {});

// Matching function whose zeros are the bound levels (exposed for diagnostics).
double well_matching_function(Alternative alt, double depth, double width, double E,
                              const Constants& c = default_constants());

}  // namespace dirac::scatter1d
