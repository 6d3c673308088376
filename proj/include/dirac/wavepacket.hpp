#pragma once

// Free one-dimensional wave packets in momentum space (p along x): probability current with
// zitterbewegung versus the time-independent charge current.

#include "dirac/core.hpp"

#include <complex>
#include <vector>

namespace dirac::wavepacket {

using cplx = std::complex<double>;

struct GaussianSpec {
    double d_width = 1.0;  // confinement width, 1/keV
    double p0 = 0.0;       // packet centre, keV

    void validate() const;
};

// At momentum p the state is b(p) u(p,up) e^{-iEt} + d*(-p) v(p,down) e^{+iEt}.
struct Packet {
    std::vector<double> p_grid;  // uniform, symmetric about 0
    std::vector<cplx> b;
    std::vector<cplx> d;  // d*(p) on the grid
    double dp = 0.0;
    double norm = 0.0;  // sum (|b|^2 + |d|^2) dp
};

// n points on [-P, P] with P = |p0| + 8 max(m, 1/d_width).
std::vector<double> default_grid(const GaussianSpec& spec, const Constants& c = default_constants(), int n = 4096);

// p / (E_p + m)
double negative_amplitude_ratio(double p, const Constants& c = default_constants());

// b(p) ~ exp(-(p - p0)^2 d^2 / 2), d*(p) = b(-p) p/(E_p + m) (the spin-up Gaussian at rest when p0 = 0),
// normalized. Throws if the grid is not uniform and symmetric or truncates more than 1e-6 of the norm.
Packet gaussian_amplitudes(const GaussianSpec& spec, const std::vector<double>& grid,
                           const Constants& c = default_constants());

// Packet from explicit amplitudes on a symmetric uniform grid; normalized.
Packet make_packet(std::vector<double> grid, std::vector<cplx> b, std::vector<cplx> d);

// Multiply d by `factor` and renormalize.
Packet scale_negative(const Packet& p, double factor);

// Free evolution: b -> b e^{-iEt}, d -> d e^{+iEt}.
Packet evolve(const Packet& p, double t, const Constants& c = default_constants());

double negative_energy_fraction(const Packet& p);

// <alpha_1>(t): sum (|b|^2 + |d|^2) p/E dp plus the interference term.
double probability_current(const Packet& p, double t, const Constants& c = default_constants());
// Interference part alone: 2 Re sum b*(p) d*(-p) u(p,up)^dag alpha_1 v(p,down) e^{2iEt} dp.
double zitterbewegung_term(const Packet& p, double t, const Constants& c = default_constants());
// probability_current at each time; spinor matrix elements are computed once.
std::vector<double> probability_current_series(const Packet& p, const std::vector<double>& times,
                                               const Constants& c = default_constants());

// e sum (|b|^2 + |d|^2) p/E dp; e = -1 in units of the elementary charge.
double charge_current(const Packet& p, const Constants& c = default_constants(), double e_charge = -1.0);

}  // namespace dirac::wavepacket
