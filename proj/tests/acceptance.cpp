// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.

#include "dirac/algebra.hpp"
#include "dirac/decaymodel.hpp"
#include "dirac/hydrogenic.hpp"
#include "dirac/kinematics.hpp"
#include "dirac/matcher.hpp"
#include "dirac/scatter1d.hpp"
#include "dirac/wavepacket.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dirac;

namespace {

const Constants consts = default_constants();
const double m = consts.electron_rest_energy;
const std::string data_dir = DIRAC_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += why;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome levels() {
    Outcome o;
    const hydrogenic::IonSpecies pb{"Pb", 82};
    const std::pair<const char*, double> want[] = {{"K", 409.4}, {"L1", 484.9}, {"L2", 487.6}};
    for (const auto& [label, e] : want) {
        const double got = hydrogenic::level_energy(pb, hydrogenic::Shell::from_label(label), hydrogenic::EnergySign::positive);
        if (std::abs(got - e) > 0.1) fail(o, std::string(label) + fmt(" %.4f vs %.1f", got, e));
    }
    if (o.pass) o.detail = "Pb K/L1/L2 within 0.1 keV";
    return o;
}

Outcome transitions() {
    Outcome o;
    const auto table = hydrogenic::transition_table({"Pb", 82}, {hydrogenic::Shell::from_label("K"),
                                                                 hydrogenic::Shell::from_label("L1"),
                                                                 hydrogenic::Shell::from_label("L2")});
    const double want[] = {818.8, 894.3, 897.0, 969.8, 975.2};
    if (table.size() != 5) {
        fail(o, "expected 5 transitions");
        return o;
    }
    for (int i = 0; i < 5; ++i)
        if (std::abs(table[i].delta_eps - want[i]) > 0.2) fail(o, table[i].label() + fmt(" %.3f vs %.1f", table[i].delta_eps, want[i]));
    if (o.pass) o.detail = "5 Pb transitions within 0.2 keV";
    return o;
}

Outcome table_regression(const matcher::TablesReport& rep, const std::string& table) {
    Outcome o;
    int headline = 0, marginal_fail = 0;
    for (const auto& r : rep.rows) {
        if (r.table != table) continue;
        if (!r.headline) {
            marginal_fail += !r.passed();
            continue;
        }
        ++headline;
        if (!r.passed()) {
            std::ostringstream s;
            s << "row " << r.record.row << " " << r.record.system.label() << " " << r.record.tabulated->printed << " ("
              << kinematics::to_string(r.record.tabulated->branch) << ")";
            if (!r.theory_pass) s << fmt(" theory %.1f vs %.1f", r.computed_theory, r.record.tabulated->theory_keV);
            if (!r.theta_pass) {
                if (r.computed_theta_deg)
                    s << fmt(" theta %.2f vs %.1f deg", *r.computed_theta_deg, r.record.tabulated->theta_deg);
                else
                    s << " no theta solution";
            }
            fail(o, s.str());
        }
    }
    if (o.pass) o.detail = std::to_string(headline) + " headline records within 0.5% / 0.5 deg";
    if (marginal_fail) o.detail += "; " + std::to_string(marginal_fail) + " marginal row(s) outside tolerance (excluded)";
    return o;
}

Outcome scattering() {
    using namespace scatter1d;
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uv(0.0, 5 * m), ue(1.0001, 12.0);
    double worst = 0;
    int n = 0;
    while (n < 1000) {
        const double v0 = uv(rng), E = ue(rng) * m;
        for (auto alt : {Alternative::D1, Alternative::D2}) {
            if (dispersion(alt, v0, E).regime != Regime::propagating) continue;
            const auto r = barrier_transmission(alt, PotentialProfile::step(v0), E);
            const auto s = step_transmission(alt, v0, E);
            worst = std::max({worst, std::abs(r.R + r.T - 1), std::abs(s.R + s.T - 1)});
            ++n;
        }
    }
    if (worst > 1e-9) fail(o, fmt("(a) max |R+T-1| = %.2e", worst));

    const double v0 = 3 * m;
    for (int i = 1; i <= 200; ++i) {
        const double E = m + 2 * m * i / 200.0;
        if (step_transmission(Alternative::D2, v0, E).T != 0.0 ||
            barrier_transmission(Alternative::D2, PotentialProfile::step(v0), E).T != 0.0) {
            fail(o, fmt("(b) D2 T != 0 at E = %.4g m", E / m));
            break;
        }
    }

    double hump = 0;
    for (int i = 1; i < 1000; ++i) hump = std::max(hump, step_transmission(Alternative::D1, v0, m + m * i / 1000.0).T);
    if (!(hump > 0)) fail(o, "(c) no Klein transmission in (m, 2m)");
    const double t50 = step_transmission(Alternative::D1, v0, 50 * m).T;
    if (std::abs(t50 - 1) > 0.01) fail(o, fmt("(c) T(50m) = %.4f", t50));

    double diff = 0;
    for (int i = 1; i <= 500; ++i) {
        const double E = v0 + m + 60 * m * i / 500.0;
        diff = std::max(diff, std::abs(step_transmission(Alternative::D1, v0, E).T - step_transmission(Alternative::D2, v0, E).T));
    }
    if (diff > 1e-12) fail(o, fmt("(d) max |T_D1 - T_D2| = %.2e", diff));
    if (o.pass)
        o.detail = fmt("(a) max|R+T-1| %.1e over 1000; (b) T=0 on 200 energies; (c) peak %.3f, T(50m) %.4f", worst, hump, t50) +
                   fmt("; (d) %.1e", diff);
    return o;
}

Outcome bound_states() {
    using namespace scatter1d;
    Outcome o;
    const double w = 2.0 / m;
    double prev = m, first = 0, last = 0;
    for (int i = 0; i < 60; ++i) {
        const double depth = (0.05 + 2.65 * i / 59.0) * m;
        const auto d1 = square_well_bound_states(Alternative::D1, depth, w);
        if (d1.empty()) {
            fail(o, fmt("no D1 level at depth %.3f m", depth / m));
            break;
        }
        if (!(d1.front() < prev)) fail(o, fmt("D1 lowest level not decreasing at depth %.3f m", depth / m));
        prev = d1.front();
        if (i == 0) first = prev;
        last = prev;
        for (double e : square_well_bound_states(Alternative::D2, depth, w))
            if (!(e > 0 && e < m)) fail(o, fmt("D2 level %.4f m outside (0, m)", e / m));
    }
    if (!(first > 0 && last < 0)) fail(o, fmt("D1 lowest level does not cross 0 (%.3f m to %.3f m)", first / m, last / m));
    if (o.pass) o.detail = fmt("D1 lowest level %.3f m -> %.3f m monotone; D2 levels in (0, m)", first / m, last / m);
    return o;
}

Outcome algebra_identities() {
    using namespace algebra;
    Outcome o;
    const auto d = build_matrices();
    const auto c = find_conjugation_matrix(d);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Report all = clifford_checks(d);
    for (int i = 0; i < 100; ++i) {
        const Vec3 p = Vec3(u(rng), u(rng), u(rng)) * m;
        FieldConfig f;
        f.A = Vec3(u(rng), u(rng), u(rng)) * (0.5 * m);
        f.Phi = 0.5 * m * u(rng);
        all.append(conjugation_checks(d, c, p));
        all.append(projector_checks(d, p));
        all.append(transformation_checks(d, c, p, f));
        all.append(appendix_identities(d, p, f));
        for (int ax = 0; ax < 3; ++ax)
            all.checks.push_back({"charge current", charge_current_identity(d, p, ax), charge_current_identity(d, p, ax) < 1e-10});
    }
    const double worst = all.max_residual();
    if (!all.all_passed() || worst >= 1e-10) {
        for (const auto& chk : all.checks)
            if (!chk.passed || chk.residual >= 1e-10) {
                fail(o, chk.name + fmt(" residual %.2e", chk.residual));
                break;
            }
    }
    if (o.pass) o.detail = std::to_string(all.checks.size()) + fmt(" checks, max residual %.1e", worst);
    return o;
}

Outcome wave_packet() {
    using namespace wavepacket;
    Outcome o;

    // Positive-only packet.
    {
        const GaussianSpec spec{2.0 / m, 0.5 * m};
        auto pk = gaussian_amplitudes(spec, default_grid(spec));
        pk = make_packet(pk.p_grid, pk.b, std::vector<cplx>(pk.b.size()));
        std::vector<double> ts;
        for (int i = 0; i <= 1000; ++i) ts.push_back(100.0 / m * i / 1000.0);
        const auto j = probability_current_series(pk, ts);
        const auto [lo, hi] = std::minmax_element(j.begin(), j.end());
        if (*hi - *lo > 1e-9) fail(o, fmt("positive-only current varies by %.2e", *hi - *lo));
    }

    // Mixed packet: spectral peak of the current.
    double peak = 0, target = 0;
    {
        const double p0 = m;
        const GaussianSpec spec{20.0 / m, p0};
        const auto pk = gaussian_amplitudes(spec, default_grid(spec));
        const int n = 8192;
        const double tmax = 400.0 / m;
        std::vector<double> ts(n);
        for (int i = 0; i < n; ++i) ts[i] = tmax * i / n;
        const auto j = probability_current_series(pk, ts);
        double mean = 0;
        for (double x : j) mean += x / n;
        auto power = [&](double w) {
            std::complex<double> s{};
            for (int i = 0; i < n; ++i)
                s += (j[i] - mean) * (0.5 - 0.5 * std::cos(2 * std::numbers::pi * i / (n - 1))) *
                     std::exp(std::complex<double>(0, -w * ts[i]));
            return std::norm(s);
        };
        const double dw = 2 * std::numbers::pi / tmax / 4;
        double best_w = 0, best = -1;
        for (double w = 0.5 * m; w < 6 * m; w += dw)
            if (const double pw = power(w); pw > best) {
                best = pw;
                best_w = w;
            }
        const double a = power(best_w - dw), b = power(best_w + dw);
        peak = best_w + 0.5 * dw * (a - b) / (a - 2 * best + b);
        target = 2 * std::hypot(p0, m);
        if (std::abs(peak - target) > 0.01 * target) fail(o, fmt("peak %.4f m vs 2E = %.4f m", peak / m, target / m));
    }

    // Charge current at t = 0 and t = 1000/m.
    {
        const GaussianSpec spec{1.0 / m, 0.8 * m};
        const auto pk = gaussian_amplitudes(spec, default_grid(spec));
        const double c0 = charge_current(pk), c1 = charge_current(evolve(pk, 1000.0 / m));
        if (std::abs(c0 - c1) > 1e-12 * std::abs(c0)) fail(o, fmt("charge current %.12g vs %.12g", c0, c1));
    }

    const double ratio = negative_amplitude_ratio(m);
    if (std::abs(ratio - 1 / (1 + std::sqrt(2.0))) > 1e-12) fail(o, fmt("d*/b at p = m is %.15f", ratio));
    if (o.pass) o.detail = fmt("current const to 1e-9; peak %.4f m vs %.4f m; d*/b = %.12f", peak / m, target / m, ratio);
    return o;
}

Outcome kinematics_checks() {
    using namespace kinematics;
    Outcome o;
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> ue(0.0, 2000.0), ur(0.0, 0.99);
    double worst = 0, worst_res = 0;
    for (int i = 0; i < 1000; ++i) {
        const double de = ue(rng), R = ur(rng), q = de / (2 * m);
        const auto g = gamma_e_solutions(de, R);
        for (double s : {1.0, -1.0}) {
            auto f = [&](double x) { return q + 1 - x + s * R * std::sqrt(x * x - 1); };
            double hi = 2 * (q + 2) / (1 - R);
            while (f(hi) > 0) hi *= 2;
            double root = 1.0;
            if (f(1.0) != 0.0) {
                const auto br = boost::math::tools::bisect(f, 1.0, hi, [](double a, double b) { return b - a < 1e-14 * b; });
                root = 0.5 * (br.first + br.second);
            }
            const double closed = s > 0 ? g.plus : g.minus;
            worst = std::max(worst, std::abs(closed - root));
            worst_res = std::max(worst_res, std::abs(defining_residual(de, R, closed, s > 0 ? Branch::plus : Branch::minus)));
        }
    }
    if (worst > 1e-9 || worst_res > 1e-9) fail(o, fmt("closed form vs bisection %.2e, residual %.2e", worst, worst_res));

    const auto b6 = boost_from_beam_energy(6.0);
    double trip = 0;
    for (int i = 0; i < 30; ++i) {
        const double de = 100.0 + 1800.0 * i / 29.0;
        for (auto br : {Branch::plus, Branch::minus})
            for (double th = 5.0; th <= 85.0; th += 5.0) {
                const double T = lab_pair_energy(b6, de, Angle::degrees(th), br).T_lab;
                if (T <= 0) continue;
                double best = 1e9;
                for (const auto& a : solve_theta(b6, de, br, T)) best = std::min(best, std::abs(a.deg() - th));
                trip = std::max(trip, best);
            }
    }
    if (trip > 1e-3) fail(o, fmt("round trip error %.2e deg", trip));
    if (o.pass) o.detail = fmt("gamma vs bisection %.1e, residual %.1e; round trip %.1e deg", worst, worst_res, trip);
    return o;
}

Outcome decay() {
    using namespace decaymodel;
    Outcome o;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> ux(0.1, 10.0), ur(0.01, 100.0);
    for (int t = 0; t < 10; ++t) {
        const double x0 = ux(rng);
        const int n = 100000;
        const double lo = 0.01 * x0, hi = 10 * x0, h = (hi - lo) / (n - 1);
        double bx = lo, bt = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            if (const double tau = counting_time(lo + i * h, x0, CountingMode::metastable); tau < bt) {
                bt = tau;
                bx = lo + i * h;
            }
        const auto opt = optimal_current(x0);
        if (std::abs(bx - opt.x_min) > h || std::abs(bt - opt.tau_min) > 1e-6 * opt.tau_min || opt.tau_min != 4 * x0)
            fail(o, fmt("x0 = %.4f: grid minimum (%.6f, %.6f)", x0, bx, bt));
    }
    double sym = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x0 = ux(rng), r = ur(rng);
        const double a = counting_time(x0 * r, x0, CountingMode::metastable), b = counting_time(x0 / r, x0, CountingMode::metastable);
        sym = std::max(sym, std::abs(a - b) / a);
    }
    if (sym > 1e-12) fail(o, fmt("symmetry %.2e", sym));
    for (double x0 : {0.5, 1.0, 3.0})
        for (double x = 1.2 * x0; x < 10 * x0; x *= 1.3) {
            const double h = 1e-4 * x;
            const bool meta_up = counting_time(x + h, x0, CountingMode::metastable) > counting_time(x, x0, CountingMode::metastable);
            const bool base_down = counting_time(x + h, x0, CountingMode::baseline) < counting_time(x, x0, CountingMode::baseline);
            if (!meta_up || !base_down) fail(o, fmt("crossover sign at x = %.3f, x0 = %.3f", x, x0));
        }
    if (o.pass) o.detail = fmt("grid minimum matches (x0, 4 x0); symmetry %.1e; crossover signs ok", sym);
    return o;
}

}  // namespace

int main() {
    const auto db = hydrogenic::IonDatabase::from_file(data_dir + "/ions.json");
    const auto t1 = matcher::load_catalog_file(data_dir + "/table1.json", db);
    const auto t2 = matcher::load_catalog_file(data_dir + "/table2.json", db);
    const auto rep = matcher::reproduce_tables({t1, t2}, db);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"hydrogenic levels", levels},
        {"Pb transition table", transitions},
        {"table 1 regression", [&] { return table_regression(rep, "1"); }},
        {"table 2 regression", [&] { return table_regression(rep, "2"); }},
        {"scattering", scattering},
        {"bound states", bound_states},
        {"algebra identities", algebra_identities},
        {"wave packet", wave_packet},
        {"kinematics", kinematics_checks},
        {"decay model", decay},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
