#include "dirac/cli.hpp"

#include "dirac/algebra.hpp"
#include "dirac/core.hpp"
#include "dirac/decaymodel.hpp"
#include "dirac/hydrogenic.hpp"
#include "dirac/kinematics.hpp"
#include "dirac/matcher.hpp"
#include "dirac/scatter1d.hpp"
#include "dirac/wavepacket.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#ifndef DIRAC_DEFAULT_DATA_DIR
#define DIRAC_DEFAULT_DATA_DIR "data"
#endif

namespace dirac::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using Cell = std::variant<double, long, std::string, bool>;

std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double round10(double v) {
    if (!std::isfinite(v)) return v;
    return std::stod(fmt10(v));
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> notes;  // summary fields

    void add(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

std::string csv_cell(const Cell& c) {
    struct V {
        std::string operator()(double d) const { return fmt10(d); }
        std::string operator()(long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(V{}, c);
}

ojson json_cell(const Cell& c) {
    struct V {
        ojson operator()(double d) const { return std::isfinite(d) ? ojson(round10(d)) : ojson(nullptr); }
        ojson operator()(long i) const { return i; }
        ojson operator()(bool b) const { return b; }
        ojson operator()(const std::string& s) const { return s.empty() ? ojson(nullptr) : ojson(s); }
    };
    return std::visit(V{}, c);
}

struct Context {
    Constants constants;
    std::string format = "csv";
    fs::path data_dir = DIRAC_DEFAULT_DATA_DIR;
    std::optional<double> mev_per_u;
    std::string command;

    hydrogenic::IonDatabase ions() const {
        const fs::path p = data_dir / "ions.json";
        if (fs::exists(p)) return hydrogenic::IonDatabase::from_file(p);
        return hydrogenic::IonDatabase::builtin();
    }
};

void emit(const Context& ctx, const Table& t, std::ostream& out) {
    if (ctx.format == "json") {
        ojson doc;
        doc["command"] = ctx.command;
        doc["constants"] = {{"m_e_keV", round10(ctx.constants.electron_rest_energy)},
                            {"alpha0", round10(ctx.constants.fine_structure)}};
        for (const auto& [k, v] : t.notes) doc[k] = json_cell(v);
        ojson rows = ojson::array();
        for (const auto& r : t.rows) {
            ojson o;
            for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = json_cell(r[i]);
            rows.push_back(std::move(o));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# " << ctx.command << " m_e_keV=" << fmt10(ctx.constants.electron_rest_energy)
        << " alpha0=" << fmt10(ctx.constants.fine_structure) << '\n';
    for (const auto& [k, v] : t.notes) out << "# " << k << "=" << csv_cell(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
        out << '\n';
    }
}

std::vector<double> linspace(double a, double b, int n, const char* flag) {
    if (n < 1) throw ValidationError(std::string(flag) + " must be >= 1");
    if (!(b >= a)) throw ValidationError("range maximum must not be below minimum");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<hydrogenic::Shell> parse_shells(const std::string& s) {
    std::vector<hydrogenic::Shell> out;
    // Explicit shells are written n:j on the command line, e.g. 3:1/2.
    for (auto tok : split(s, ',')) {
        std::replace(tok.begin(), tok.end(), ':', ',');
        out.push_back(hydrogenic::Shell::from_label(tok));
    }
    if (out.empty()) throw ValidationError("--shells must list at least one shell");
    return out;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
    if (!v) throw ValidationError(std::string("missing required flag ") + flag);
    return *v;
}

// ---- subcommands ----

Table cmd_algebra_check(const Context& ctx, int samples, unsigned long seed) {
    if (samples < 1) throw ValidationError("--samples must be >= 1");
    const auto& c = ctx.constants;
    const double m = c.electron_rest_energy;
    const auto dm = algebra::build_matrices();
    const auto cm = algebra::find_conjugation_matrix(dm);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0 * m, 2.0 * m), uf(-m, m);

    std::map<std::string, std::pair<double, bool>> agg;
    std::vector<std::string> order;
    auto absorb = [&](const algebra::Report& r) {
        for (const auto& chk : r.checks) {
            auto [it, fresh] = agg.try_emplace(chk.name, 0.0, true);
            if (fresh) order.push_back(chk.name);
            it->second.first = std::max(it->second.first, chk.residual);
            it->second.second = it->second.second && chk.passed;
        }
    };
    absorb(algebra::clifford_checks(dm, c));
    for (int i = 0; i < samples; ++i) {
        const algebra::Vec3 p(u(rng), u(rng), u(rng));
        algebra::FieldConfig f;
        f.A = algebra::Vec3(uf(rng), uf(rng), uf(rng));
        f.Phi = uf(rng);
        absorb(algebra::conjugation_checks(dm, cm, p, c));
        absorb(algebra::projector_checks(dm, p, c));
        absorb(algebra::transformation_checks(dm, cm, p, f, c));
        absorb(algebra::appendix_identities(dm, p, f, c));
    }
    Table t;
    t.columns = {"identity", "max_residual", "passed"};
    bool all = true;
    for (const auto& name : order) {
        const auto& [r, ok] = agg.at(name);
        all = all && ok;
        t.add({name, r, ok});
    }
    t.notes.emplace_back("samples", static_cast<long>(samples));
    t.notes.emplace_back("all_passed", all);
    return t;
}

Table cmd_scatter(const Context& ctx, const std::string& alt_s, double v0, std::optional<double> width, double emin,
                  double emax, int steps) {
    const auto alt = parse_alternative(alt_s);
    Table t;
    t.columns = {"E", "T", "R", "classification"};
    std::optional<scatter1d::PotentialProfile> profile;
    if (width) profile = scatter1d::PotentialProfile::square(v0, *width);
    for (double E : linspace(emin, emax, steps, "--steps")) {
        if (!(E > ctx.constants.electron_rest_energy))
            throw ValidationError("--emin: energies must exceed m = " + fmt10(ctx.constants.electron_rest_energy));
        const auto r = profile ? scatter1d::barrier_transmission(alt, *profile, E, ctx.constants)
                               : scatter1d::step_transmission(alt, v0, E, ctx.constants);
        t.add({E, r.T, r.R, scatter1d::to_string(r.classification)});
    }
    return t;
}

Table cmd_levels(const Context& ctx, const std::string& ion_s, const std::string& shells_s) {
    const auto db = ctx.ions();
    const auto& ion = db.find(ion_s);
    Table t;
    t.columns = {"ion", "Z", "shell", "n", "j", "E_plus", "E_minus"};
    for (const auto& s : parse_shells(shells_s))
        t.add({ion.symbol, static_cast<long>(ion.Z), s.label, static_cast<long>(s.n), s.j,
               hydrogenic::level_energy(ion, s, hydrogenic::EnergySign::positive, ctx.constants),
               hydrogenic::level_energy(ion, s, hydrogenic::EnergySign::negative, ctx.constants)});
    return t;
}

Table cmd_transitions(const Context& ctx, const std::string& ion_s, const std::string& shells_s) {
    const auto db = ctx.ions();
    const auto& ion = db.find(ion_s);
    Table t;
    t.columns = {"transition", "upper", "lower", "delta_eps"};
    for (const auto& tr : hydrogenic::transition_table(ion, parse_shells(shells_s), {}, ctx.constants))
        t.add({tr.label(), tr.upper.label, tr.lower.label, tr.delta_eps});
    return t;
}

Table cmd_zbw(const Context& ctx, double dwidth, double p0, double tmax, int tsteps, int points) {
    wavepacket::GaussianSpec spec{dwidth, p0};
    const auto grid = wavepacket::default_grid(spec, ctx.constants, points);
    const auto packet = wavepacket::gaussian_amplitudes(spec, grid, ctx.constants);
    if (!(tmax >= 0.0)) throw ValidationError("--tmax must be non-negative");
    const auto times = linspace(0.0, tmax, tsteps, "--tsteps");
    const auto j = wavepacket::probability_current_series(packet, times, ctx.constants);
    const double q = wavepacket::charge_current(packet, ctx.constants);
    Table t;
    t.columns = {"t", "prob_current", "charge_current"};
    for (std::size_t i = 0; i < times.size(); ++i) t.add({times[i], j[i], q});
    t.notes.emplace_back("negative_energy_fraction", wavepacket::negative_energy_fraction(packet));
    return t;
}

double beam_x(const Context& ctx, const std::optional<double>& x) {
    if (x) return *x;
    if (ctx.mev_per_u) return *ctx.mev_per_u;
    throw ValidationError("missing required flag --x (or --mev-per-u)");
}

Table cmd_kinematics(const Context& ctx, double deps, double x, double theta_deg, const std::string& branch_s) {
    const auto boost = kinematics::boost_from_beam_energy(x);
    const auto s = kinematics::lab_pair_energy(boost, deps, Angle::degrees(theta_deg),
                                               kinematics::parse_branch(branch_s), ctx.constants);
    Table t;
    t.columns = {"branch",  "theta_e_deg", "gamma_I", "beta_I", "R",       "gamma_e",
                 "T_lab",   "E_cm",        "P_cm",    "K_cm",   "delta_KE", "lorentz_residual"};
    t.add({kinematics::to_string(s.branch), s.theta_e.deg(), boost.gamma_I, boost.beta_I, s.R, s.gamma_e, s.T_lab,
           s.E_cm, s.P_cm, s.K_cm, s.delta_KE, s.lorentz_residual});
    return t;
}

Table cmd_invert(const Context& ctx, double deps, double x, const std::string& branch_s, double target) {
    const auto boost = kinematics::boost_from_beam_energy(x);
    const auto sols = kinematics::solve_theta(boost, deps, kinematics::parse_branch(branch_s), target, ctx.constants);
    Table t;
    t.columns = {"theta_e_deg"};
    for (const auto& a : sols) t.add({a.deg()});
    t.notes.emplace_back("solutions", static_cast<long>(sols.size()));
    return t;
}

Table cmd_match(const Context& ctx, const fs::path& catalog, int top_k) {
    if (top_k < 1) throw ValidationError("--top-k must be >= 1");
    const auto db = ctx.ions();
    const auto cat = matcher::load_catalog_file(catalog, db);
    Table t;
    t.columns = {"row", "system", "observable", "observed", "rank", "transition", "branch", "theory_at_45",
                 "residual_at_45", "theta_e_deg", "solutions"};
    for (auto rec : cat.records) {
        if (ctx.mev_per_u) rec.beam_energy_x = *ctx.mev_per_u;
        const auto cands = matcher::candidate_transitions(rec.system, rec.beam_energy_x, ctx.constants);
        const auto res = matcher::match_peak(rec, cands, static_cast<std::size_t>(top_k), ctx.constants);
        long rank = 0;
        for (const auto& m : res) {
            t.add({static_cast<long>(rec.row), rec.system.label(), matcher::to_string(rec.observable), rec.observed,
                   ++rank, m.candidate.transition.label(), kinematics::to_string(m.candidate.branch),
                   m.theory_observable, m.residual_at_45, m.solved_theta ? Cell(m.solved_theta->deg()) : Cell(""),
                   static_cast<long>(m.all_solutions.size())});
        }
    }
    return t;
}

Table cmd_reproduce(const Context& ctx) {
    const auto db = ctx.ions();
    std::vector<matcher::Catalog> cats;
    for (const char* name : {"table1.json", "table2.json"}) {
        auto cat = matcher::load_catalog_file(ctx.data_dir / name, db);
        if (ctx.mev_per_u)
            for (auto& r : cat.records) r.beam_energy_x = *ctx.mev_per_u;
        cats.push_back(std::move(cat));
    }
    const auto rep = matcher::reproduce_tables(cats, db, ctx.constants);
    Table t;
    t.columns = {"table",         "row",           "system",     "observed",      "transition",
                 "ions",          "branch",        "table_theory", "computed_theory", "table_theta",
                 "computed_theta", "theory_pass",  "theta_pass", "marginal",      "note"};
    for (const auto& r : rep.rows) {
        const auto& id = *r.record.tabulated;
        std::string ions;
        for (const auto& e : r.evaluations) ions += (ions.empty() ? "" : " ") + e.ion + "(Z=" + std::to_string(e.Z) + ")";
        t.add({r.table, static_cast<long>(r.record.row), r.record.system.label(), r.record.observed, id.printed, ions,
               kinematics::to_string(id.branch), id.theory_keV, r.computed_theory, id.theta_deg,
               r.computed_theta_deg ? Cell(*r.computed_theta_deg) : Cell(""), r.theory_pass, r.theta_pass,
               r.record.flagged_marginal, id.erratum});
    }
    for (const auto& cat : cats)
        t.notes.emplace_back("table" + cat.table + "_headline_passed", rep.table_passed(cat.table));
    return t;
}

Table cmd_counting(double x0, double xmin, double xmax, int steps) {
    if (!(xmin > 0.0)) throw ValidationError("--xmin must be positive");
    const auto opt = decaymodel::optimal_current(x0);
    Table t;
    t.columns = {"x", "tau_baseline", "tau_metastable"};
    for (double x : linspace(xmin, xmax, steps, "--steps"))
        t.add({x, decaymodel::counting_time(x, x0, decaymodel::CountingMode::baseline),
               decaymodel::counting_time(x, x0, decaymodel::CountingMode::metastable)});
    t.notes.emplace_back("x_min", opt.x_min);
    t.notes.emplace_back("tau_min", opt.tau_min);
    return t;
}

Table cmd_lineshape(double deps, double tmin, double tmax, int steps, const decaymodel::LineShapeParams& p) {
    p.validate();
    Table t;
    t.columns = {"T_sum", "density"};
    for (double T : linspace(tmin, tmax, steps, "--steps")) t.add({T, decaymodel::threshold_lineshape(T, deps, p)});
    return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirac D1/D2 numerical workbench", "dirac_cli"};
    app.require_subcommand(1);

    Context ctx;
    std::optional<std::string> config_path;
    std::optional<std::string> data_dir;
    app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", config_path, "JSON file overriding m_e_keV and alpha0");
    app.add_option("--data-dir", data_dir, "Directory with ions.json, table1.json, table2.json");
    app.add_option("--mev-per-u", ctx.mev_per_u, "Beam energy in MeV per nucleon");

    int samples = 100;
    unsigned long seed = 12345;
    auto* alg = app.add_subcommand("algebra-check", "Matrix identity report");
    alg->add_option("--samples", samples, "Random momenta/fields");
    alg->add_option("--seed", seed, "RNG seed");

    std::string alt;
    double v0 = 0, emin = 0, emax = 0;
    std::optional<double> width;
    int steps = 0;
    auto* sc = app.add_subcommand("scatter", "1-D step or barrier transmission sweep (keV)");
    sc->add_option("--alt", alt, "d1 or d2")->required();
    sc->add_option("--v0", v0, "Potential height, keV")->required();
    sc->add_option("--width", width, "Barrier width, 1/keV (omit for a step)");
    sc->add_option("--emin", emin, "Lowest energy, keV")->required();
    sc->add_option("--emax", emax, "Highest energy, keV")->required();
    sc->add_option("--steps", steps, "Number of energies")->required();

    std::string ion, shells = "K,L1,L2";
    auto* lv = app.add_subcommand("levels", "Hydrogenic levels E+-(n,j)");
    lv->add_option("--ion", ion, "Ion symbol")->required();
    lv->add_option("--shells", shells, "Comma-separated shells (K,L1,L2,M,Z or n:j)");
    auto* tr = app.add_subcommand("transitions", "Bound pair transition energies");
    tr->add_option("--ion", ion, "Ion symbol")->required();
    tr->add_option("--shells", shells, "Comma-separated shells");

    double dwidth = 0, p0 = 0, tmax = 0;
    int tsteps = 0, points = 4096;
    auto* zb = app.add_subcommand("zbw", "Probability vs charge current of a Gaussian packet");
    zb->add_option("--dwidth", dwidth, "Confinement width, 1/keV")->required();
    zb->add_option("--p0", p0, "Packet centre momentum, keV");
    zb->add_option("--tmax", tmax, "Final time, 1/keV")->required();
    zb->add_option("--tsteps", tsteps, "Number of times")->required();
    zb->add_option("--points", points, "Momentum grid points");

    std::optional<double> deps, kx, theta;
    std::optional<std::string> branch;
    auto* kin = app.add_subcommand("kinematics", "Lab-frame pair energy for a transition");
    kin->require_subcommand(0, 1);
    kin->add_option("--deps", deps, "Transition energy, keV");
    kin->add_option("--x", kx, "Beam energy, MeV/u");
    kin->add_option("--theta", theta, "Opening half-angle, degrees");
    kin->add_option("--branch", branch, "+ or -");
    double ideps = 0, target = 0;
    std::optional<double> ix;
    std::string ibranch;
    auto* inv = kin->add_subcommand("invert", "Solve for the opening half-angle");
    inv->add_option("--deps", ideps, "Transition energy, keV")->required();
    inv->add_option("--x", ix, "Beam energy, MeV/u");
    inv->add_option("--branch", ibranch, "+ or -")->required();
    inv->add_option("--target", target, "Lab pair kinetic energy, keV")->required();

    std::string catalog;
    int top_k = 6;
    auto* mt = app.add_subcommand("match", "Rank candidate transitions for catalog peaks");
    mt->add_option("--catalog", catalog, "Catalog JSON file")->required();
    mt->add_option("--top-k", top_k, "Matches per record");

    auto* rt = app.add_subcommand("reproduce-tables", "Regression against the bundled tables");

    double x0 = 1.0, xmin = 0, xmax = 0;
    auto* ct = app.add_subcommand("counting-time", "Counting time to significance vs current");
    ct->add_option("--x0", x0, "(R_phi + R_ep)/R_ep");
    ct->add_option("--xmin", xmin, "Smallest x")->required();
    ct->add_option("--xmax", xmax, "Largest x")->required();
    ct->add_option("--steps", steps, "Number of points")->required();

    double ldeps = 0, tmin = 0, ltmax = 0;
    decaymodel::LineShapeParams lp;
    auto* ls = app.add_subcommand("lineshape", "Threshold line shape near T_sum = delta_eps");
    ls->add_option("--deps", ldeps, "Transition energy, keV")->required();
    ls->add_option("--tmin", tmin, "Lowest T_sum, keV")->required();
    ls->add_option("--tmax", ltmax, "Highest T_sum, keV")->required();
    ls->add_option("--steps", steps, "Number of points")->required();
    ls->add_option("--scale", lp.density_scale, "Density scale");
    ls->add_option("--shift", lp.delta_eps_shift, "delta-epsilon shift, keV");
    ls->add_option("--reg", lp.regularization, "Regularization width, keV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (config_path) ctx.constants = Constants::from_file(*config_path);
        if (data_dir) {
            ctx.data_dir = *data_dir;
            if (!fs::is_directory(ctx.data_dir)) throw ValidationError("--data-dir: not a directory: " + *data_dir);
        }
        Table t;
        if (alg->parsed()) {
            ctx.command = "algebra-check";
            t = cmd_algebra_check(ctx, samples, seed);
            emit(ctx, t, out);
            for (const auto& [k, v] : t.notes)
                if (k == "all_passed" && !std::get<bool>(v)) return 1;
            return 0;
        }
        if (sc->parsed()) {
            ctx.command = "scatter";
            t = cmd_scatter(ctx, alt, v0, width, emin, emax, steps);
        } else if (lv->parsed()) {
            ctx.command = "levels";
            t = cmd_levels(ctx, ion, shells);
        } else if (tr->parsed()) {
            ctx.command = "transitions";
            t = cmd_transitions(ctx, ion, shells);
        } else if (zb->parsed()) {
            ctx.command = "zbw";
            t = cmd_zbw(ctx, dwidth, p0, tmax, tsteps, points);
        } else if (inv->parsed()) {
            ctx.command = "kinematics invert";
            t = cmd_invert(ctx, ideps, beam_x(ctx, ix), ibranch, target);
        } else if (kin->parsed()) {
            ctx.command = "kinematics";
            t = cmd_kinematics(ctx, need(deps, "--deps"), beam_x(ctx, kx), need(theta, "--theta"),
                               need(branch, "--branch"));
        } else if (mt->parsed()) {
            ctx.command = "match";
            t = cmd_match(ctx, catalog, top_k);
        } else if (rt->parsed()) {
            ctx.command = "reproduce-tables";
            t = cmd_reproduce(ctx);
        } else if (ct->parsed()) {
            ctx.command = "counting-time";
            t = cmd_counting(x0, xmin, xmax, steps);
        } else if (ls->parsed()) {
            ctx.command = "lineshape";
            t = cmd_lineshape(ldeps, tmin, ltmax, steps, lp);
        }
        emit(ctx, t, out);
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace dirac::cli
