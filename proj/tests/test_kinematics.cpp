#include "dirac/hydrogenic.hpp"
#include "dirac/kinematics.hpp"

#include "doctest.h"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace dirac;
using namespace dirac::kinematics;

namespace {

const double m = default_constants().electron_rest_energy;

double k_to_k(const char* symbol, int Z) {
    const auto k = hydrogenic::Shell::from_label("K");
    return hydrogenic::pair_transition_energy({symbol, Z}, k, k).delta_eps;
}

// Bisection on the defining equation. The function is concave with f(1) >= 0, so each
// branch has a single crossing in [1, upper).
double bisect_gamma(double delta_eps, double R, double s) {
    const double q = delta_eps / (2 * m);
    auto f = [&](double g) { return q + 1 - g + s * R * std::sqrt(g * g - 1); };
    if (f(1.0) == 0.0) return 1.0;
    double hi = 2.0 * (q + 2) / (1 - R);
    while (f(hi) > 0) hi *= 2;
    auto tol = [](double a, double b) { return std::abs(b - a) < 1e-13 * b; };
    const auto r = boost::math::tools::bisect(f, 1.0, hi, tol);
    return 0.5 * (r.first + r.second);
}

double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

TEST_CASE("ion boost") {
    const auto b = boost_from_beam_energy(6.0);
    CHECK(b.gamma_I == doctest::Approx(1.006).epsilon(1e-15));
    CHECK(b.beta_I == doctest::Approx(0.10906).epsilon(1e-4));
    CHECK(boost_from_beam_energy(1e-9).beta_I < 1e-5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 1000.0);
    for (int i = 0; i < 200; ++i) {
        const auto r = boost_from_beam_energy(u(rng));
        CHECK(r.gamma_I * r.gamma_I * (1 - r.beta_I * r.beta_I) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(boost_from_beam_energy(0.0), ValidationError);
    CHECK_THROWS_AS(boost_from_beam_energy(-1.0), ValidationError);
}

TEST_CASE("branch labels") {
    CHECK(parse_branch("+") == Branch::plus);
    CHECK(parse_branch("minus") == Branch::minus);
    CHECK(to_string(Branch::minus) == "-");
    CHECK(branch_sign(Branch::plus) == 1.0);
    CHECK_THROWS_AS(parse_branch("0"), ValidationError);
}

TEST_CASE("gamma_e roots") {
    const auto r0 = gamma_e_solutions(500.0, 0.0);
    CHECK(r0.plus == doctest::Approx(1 + 500.0 / (2 * m)).epsilon(1e-15));
    CHECK(r0.minus == doctest::Approx(1 + 500.0 / (2 * m)).epsilon(1e-15));
    CHECK(gamma_e_solutions(0.0, 0.05).minus == 1.0);

    const auto b = boost_from_beam_energy(6.0);
    const double R = b.beta_I / b.gamma_I * std::cos(deg(45));
    const auto g = gamma_e_solutions(818.8, R);
    CHECK(g.plus == doctest::Approx(1.9275).epsilon(1e-4));
    CHECK(g.minus == doctest::Approx(1.6962).epsilon(1e-4));

    CHECK_THROWS_AS(gamma_e_solutions(500.0, 1.0), ValidationError);
    CHECK_THROWS_AS(gamma_e_solutions(500.0, -0.1), ValidationError);
    CHECK_THROWS_AS(gamma_e_solutions(-1.0, 0.1), ValidationError);
}

TEST_CASE("closed form agrees with a bisection oracle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ue(0.0, 2000.0), ur(0.0, 0.99);
    for (int i = 0; i < 1000; ++i) {
        const double de = ue(rng), R = ur(rng);
        const auto g = gamma_e_solutions(de, R);
        CHECK(std::abs(defining_residual(de, R, g.plus, Branch::plus)) < 1e-9);
        CHECK(std::abs(defining_residual(de, R, g.minus, Branch::minus)) < 1e-9);
        CHECK(g.minus >= 1.0);
        CHECK(g.plus >= g.minus);
        CHECK(std::abs(g.plus - bisect_gamma(de, R, +1)) < 1e-9 * g.plus);
        CHECK(std::abs(g.minus - bisect_gamma(de, R, -1)) < 1e-9 * g.minus);
    }
}

TEST_CASE("lab pair energy") {
    const auto b6 = boost_from_beam_energy(6.0);
    const double pb = k_to_k("Pb", 82), u = k_to_k("U", 92);
    CHECK(pb == doctest::Approx(818.8).epsilon(2e-4));
    CHECK(u == doctest::Approx(757.5).epsilon(1e-3));

    const auto spb = lab_pair_energy(b6, pb, Angle::degrees(45), Branch::plus);
    CHECK(spb.T_lab == doctest::Approx(571.0).epsilon(0.005));
    const auto su = lab_pair_energy(b6, u, Angle::degrees(45), Branch::plus);
    CHECK(su.T_lab == doctest::Approx(521.4).epsilon(0.005));

    // Fields and the T_lab formula.
    for (auto br : {Branch::plus, Branch::minus}) {
        const auto s = lab_pair_energy(b6, pb, Angle::degrees(30), br);
        const double ct = std::cos(deg(30)), be = std::sqrt(1 - 1 / (s.gamma_e * s.gamma_e));
        CHECK(s.R == doctest::Approx(b6.beta_I / b6.gamma_I * ct).epsilon(1e-14));
        CHECK(s.E_cm == doctest::Approx(2 * m * s.gamma_e).epsilon(1e-14));
        CHECK(s.P_cm == doctest::Approx(-2 * m * s.gamma_e * be * ct).epsilon(1e-12));
        CHECK(s.K_cm == 0.0);
        CHECK(s.delta_KE == 0.0);
        const double T = (b6.gamma_I - 1) * 2 * m +
                         b6.gamma_I * (pb - 2 * m * (1 + b6.gamma_I) / b6.gamma_I * std::sqrt(s.gamma_e * s.gamma_e - 1) *
                                                b6.beta_I * ct);
        CHECK(s.T_lab == doctest::Approx(T).epsilon(1e-12));
    }

    // No boost: no recoil term.
    IonBoost rest;
    for (double th : {10.0, 45.0, 90.0}) CHECK(lab_pair_energy(rest, 700.0, Angle::degrees(th), Branch::plus).T_lab == 700.0);

    // 90 degrees: R = 0.
    const auto e90 = lab_pair_energy(b6, pb, Angle::degrees(90), Branch::minus);
    CHECK(std::abs(e90.R) < 1e-16);
    CHECK(e90.T_lab == doctest::Approx((b6.gamma_I - 1) * 2 * m + b6.gamma_I * pb).epsilon(1e-12));

    CHECK_THROWS_AS(lab_pair_energy(b6, pb, Angle::degrees(0), Branch::plus), ValidationError);
    CHECK_THROWS_AS(lab_pair_energy(b6, pb, Angle::degrees(91), Branch::plus), ValidationError);
}

TEST_CASE("Lorentz consistency") {
    const auto b6 = boost_from_beam_energy(6.0);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ue(100.0, 1900.0), ut(1.0, 89.0);
    for (int i = 0; i < 300; ++i) {
        const double de = ue(rng), th = ut(rng);
        const auto mi = lab_pair_energy(b6, de, Angle::degrees(th), Branch::minus);
        CHECK(mi.lorentz_residual < 1e-12);
        // The + branch misses by the recoil term with its sign reversed.
        const auto pl = lab_pair_energy(b6, de, Angle::degrees(th), Branch::plus);
        const double be = std::sqrt(1 - 1 / (pl.gamma_e * pl.gamma_e));
        const double expected = 4 * m * pl.gamma_e * be * b6.beta_I * std::cos(deg(th)) / (2 * m + pl.T_lab);
        CHECK(pl.lorentz_residual == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("minus branch is monotone in cos theta") {
    const auto b6 = boost_from_beam_energy(6.0);
    for (double de : {200.0, 818.8, 1500.0}) {
        double prev = -1;
        for (int i = 1; i <= 900; ++i) {
            const double t = lab_pair_energy(b6, de, Angle::degrees(0.1 * i), Branch::minus).T_lab;
            CHECK(t > prev);
            prev = t;
        }
    }
}

TEST_CASE("solve_theta") {
    const auto b6 = boost_from_beam_energy(6.0);
    const auto pb = solve_theta(b6, k_to_k("Pb", 82), Branch::plus, 576.0);
    REQUIRE(pb.size() == 1);
    CHECK(pb[0].deg() == doctest::Approx(46.4).epsilon(0.5 / 46.4));
    const auto u = solve_theta(b6, k_to_k("U", 92), Branch::plus, 576.0);
    REQUIRE(u.size() == 1);
    CHECK(std::abs(u[0].deg() - 56.0) < 0.5);

    const double at45 = lab_pair_energy(b6, 818.8, Angle::degrees(45), Branch::plus).T_lab;
    const auto back = solve_theta(b6, 818.8, Branch::plus, at45);
    REQUIRE(back.size() == 1);
    CHECK(std::abs(back[0].deg() - 45.0) < 1e-5);

    const double at90 = lab_pair_energy(b6, 818.8, Angle::degrees(90), Branch::plus).T_lab;
    const auto end = solve_theta(b6, 818.8, Branch::plus, at90);
    REQUIRE(!end.empty());
    CHECK(end.back().deg() == doctest::Approx(90.0).epsilon(1e-8));

    CHECK(solve_theta(b6, 818.8, Branch::plus, 5000.0).empty());
    CHECK(solve_theta(b6, 818.8, Branch::minus, 1.0).empty());
    CHECK_THROWS_AS(solve_theta(b6, 818.8, Branch::plus, 0.0), ValidationError);
}

TEST_CASE("round trip over random transitions") {
    const auto b6 = boost_from_beam_energy(6.0);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ue(100.0, 1900.0);
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        const double de = ue(rng);
        for (auto br : {Branch::plus, Branch::minus})
            for (double th = 5.0; th <= 85.0; th += 8.0) {
                const double T = lab_pair_energy(b6, de, Angle::degrees(th), br).T_lab;
                if (T <= 0.0) continue;  // recoil exceeds the excitation on the + branch
                ++checked;
                const auto sols = solve_theta(b6, de, br, T);
                REQUIRE(!sols.empty());
                double best = 1e9;
                for (const auto& a : sols) best = std::min(best, std::abs(a.deg() - th));
                CHECK(best < 1e-3);
                for (const auto& a : sols)
                    CHECK(lab_pair_energy(b6, de, a, br).T_lab == doctest::Approx(T).epsilon(1e-9));
            }
    }
    CHECK(checked > 350);
}
