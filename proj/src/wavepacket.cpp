#include "dirac/wavepacket.hpp"

#include "dirac/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace dirac::wavepacket {

namespace {

void check_grid(const std::vector<double>& g) {
    if (g.size() < 3) throw ValidationError("momentum grid needs at least 3 points");
    const size_t n = g.size();
    const double dp = (g.back() - g.front()) / static_cast<double>(n - 1);
    if (!(dp > 0.0)) throw ValidationError("momentum grid must be increasing");
    const double scale = std::max(std::abs(g.front()), std::abs(g.back()));
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(g[i] + g[n - 1 - i]) > 1e-9 * scale) throw ValidationError("momentum grid must be symmetric about 0");
        if (i > 0 && std::abs((g[i] - g[i - 1]) - dp) > 1e-6 * dp) throw ValidationError("momentum grid must be uniform");
    }
}

void require_normalized(const Packet& p) {
    if (std::abs(p.norm - 1.0) > 1e-9) throw ValidationError("packet is not normalized");
}

// u(p,up)^dag alpha_1 v(p,down) for p along x.
std::vector<cplx> cross_elements(const std::vector<double>& grid, const Constants& c) {
    const auto m = algebra::build_matrices();
    std::vector<cplx> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto s = algebra::free_spinors(m, algebra::Vec3(grid[i], 0.0, 0.0), c);
        out[i] = s.u[0].dot(m.alpha[0] * s.v[1]);
    }
    return out;
}

}  // namespace

void GaussianSpec::validate() const {
    if (!(d_width > 0.0) || !std::isfinite(d_width)) throw ValidationError("d_width must be positive");
    if (!std::isfinite(p0)) throw ValidationError("p0 must be finite");
}

std::vector<double> default_grid(const GaussianSpec& spec, const Constants& c, int n) {
    spec.validate();
    if (n < 3) throw ValidationError("grid needs at least 3 points");
    const double span = std::abs(spec.p0) + 8.0 * std::max(c.electron_rest_energy, 1.0 / spec.d_width);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = -span + 2.0 * span * i / (n - 1);
    for (int i = 0; i < n / 2; ++i) g[n - 1 - i] = -g[i];
    if (n % 2 == 1) g[n / 2] = 0.0;
    return g;
}

double negative_amplitude_ratio(double p, const Constants& c) {
    return p / (energy_of_momentum(p, c) + c.electron_rest_energy);
}

Packet make_packet(std::vector<double> grid, std::vector<cplx> b, std::vector<cplx> d) {
    check_grid(grid);
    if (b.size() != grid.size() || d.size() != grid.size()) throw ValidationError("amplitude size mismatch");
    Packet p;
    p.dp = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    double s = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) s += std::norm(b[i]) + std::norm(d[i]);
    s *= p.dp;
    if (!(s > 0.0)) throw ValidationError("packet has zero norm");
    const double f = 1.0 / std::sqrt(s);
    for (auto& x : b) x *= f;
    for (auto& x : d) x *= f;
    p.p_grid = std::move(grid);
    p.b = std::move(b);
    p.d = std::move(d);
    p.norm = 1.0;
    return p;
}

Packet gaussian_amplitudes(const GaussianSpec& spec, const std::vector<double>& grid, const Constants& c) {
    spec.validate();
    check_grid(grid);
    const double dw = spec.d_width;
    const double span = grid.back();
    // |b|^2 ~ exp(-(p-p0)^2 d^2) loses 1/2 erfc(d (P -+ p0)) of its weight beyond each edge;
    // |d|^2 <= |b(-p)|^2 so the same bound covers it.
    const double loss = 0.5 * std::erfc(dw * (span - spec.p0)) + 0.5 * std::erfc(dw * (span + spec.p0));
    if (loss > 1e-6) throw ValidationError("momentum grid too narrow: normalization loss " + std::to_string(loss));
    const size_t n = grid.size();
    std::vector<cplx> b(n), d(n);
    for (size_t i = 0; i < n; ++i) {
        const double x = (grid[i] - spec.p0) * dw;
        b[i] = std::exp(-0.5 * x * x);
    }
    for (size_t i = 0; i < n; ++i) d[i] = b[n - 1 - i] * negative_amplitude_ratio(grid[i], c);
    return make_packet(grid, std::move(b), std::move(d));
}

Packet scale_negative(const Packet& p, double factor) {
    std::vector<cplx> d = p.d;
    for (auto& x : d) x *= factor;
    return make_packet(p.p_grid, p.b, std::move(d));
}

Packet evolve(const Packet& p, double t, const Constants& c) {
    Packet q = p;
    for (size_t i = 0; i < p.p_grid.size(); ++i) {
        const double e = energy_of_momentum(p.p_grid[i], c);
        const cplx ph = std::polar(1.0, -e * t);
        q.b[i] *= ph;
        q.d[i] *= std::conj(ph);
    }
    return q;
}

double negative_energy_fraction(const Packet& p) {
    require_normalized(p);
    double neg = 0.0, tot = 0.0;
    for (size_t i = 0; i < p.p_grid.size(); ++i) {
        neg += std::norm(p.d[i]);
        tot += std::norm(p.b[i]) + std::norm(p.d[i]);
    }
    return neg / tot;
}

namespace {

struct CurrentTerms {
    double diagonal = 0.0;
    std::vector<double> energy;
    std::vector<cplx> weight;  // b*(p) d*(-p) u^dag alpha_1 v dp
};

CurrentTerms current_terms(const Packet& p, const Constants& c) {
    require_normalized(p);
    const auto me = cross_elements(p.p_grid, c);
    const size_t n = p.p_grid.size();
    CurrentTerms t;
    t.energy.resize(n);
    t.weight.resize(n);
    for (size_t i = 0; i < n; ++i) {
        t.energy[i] = energy_of_momentum(p.p_grid[i], c);
        t.diagonal += (std::norm(p.b[i]) + std::norm(p.d[i])) * p.p_grid[i] / t.energy[i];
        t.weight[i] = std::conj(p.b[i]) * p.d[n - 1 - i] * me[i] * p.dp;
    }
    t.diagonal *= p.dp;
    return t;
}

double interference(const CurrentTerms& t, double time) {
    cplx s = 0.0;
    for (size_t i = 0; i < t.energy.size(); ++i) s += t.weight[i] * std::polar(1.0, 2.0 * t.energy[i] * time);
    return 2.0 * s.real();
}

}  // namespace

double zitterbewegung_term(const Packet& p, double t, const Constants& c) {
    return interference(current_terms(p, c), t);
}

double probability_current(const Packet& p, double t, const Constants& c) {
    const auto terms = current_terms(p, c);
    return terms.diagonal + interference(terms, t);
}

std::vector<double> probability_current_series(const Packet& p, const std::vector<double>& times,
                                               const Constants& c) {
    const auto terms = current_terms(p, c);
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(terms.diagonal + interference(terms, t));
    return out;
}

double charge_current(const Packet& p, const Constants& c, double e_charge) {
    require_normalized(p);
    double s = 0.0;
    for (size_t i = 0; i < p.p_grid.size(); ++i)
        s += (std::norm(p.b[i]) + std::norm(p.d[i])) * p.p_grid[i] / energy_of_momentum(p.p_grid[i], c);
    return e_charge * s * p.dp;
}

}  // namespace dirac::wavepacket
