#include "dirac/matcher.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace dirac::matcher {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t index, const std::string& what) {
    throw ValidationError("catalog record " + std::to_string(index) + ": " + what);
}

const json& require(const json& obj, const char* key, std::size_t index) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(index, std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t index) {
    const json& v = require(obj, key, index);
    if (!v.is_string()) fail(index, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double require_number(const json& obj, const char* key, std::size_t index) {
    const json& v = require(obj, key, index);
    if (!v.is_number()) fail(index, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed, std::size_t index, const char* where) {
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) fail(index, std::string("unknown field '") + k + "' in " + where);
}

const IonSpecies& lookup_ion(const hydrogenic::IonDatabase& db, const std::string& sym, std::size_t index) {
    if (!db.contains(sym)) fail(index, "unknown ion '" + sym + "'");
    return db.find(sym);
}

IonSystem parse_system(const std::string& s, const hydrogenic::IonDatabase& db, std::size_t index) {
    const auto plus = s.find('+');
    if (plus == std::string::npos || plus == 0 || plus + 1 == s.size())
        fail(index, "system '" + s + "' must look like Beam+Target");
    return {lookup_ion(db, s.substr(0, plus), index), lookup_ion(db, s.substr(plus + 1), index)};
}

TabulatedIdentification parse_tabulated(const json& p, const hydrogenic::IonDatabase& db, std::size_t index) {
    if (!p.is_object()) fail(index, "field 'tabulated' must be an object");
    check_keys(p, {"ions", "upper", "lower", "branch", "theory_keV", "theta_deg", "printed", "erratum", "z_override"},
               index, "tabulated");
    TabulatedIdentification id;
    const json& ions = require(p, "ions", index);
    if (!ions.is_array() || ions.empty()) fail(index, "tabulated.ions must be a non-empty array");
    for (const auto& s : ions) {
        if (!s.is_string()) fail(index, "tabulated.ions entries must be strings");
        id.ions.push_back(lookup_ion(db, s.get<std::string>(), index).symbol);
    }
    try {
        id.upper = Shell::from_label(require_string(p, "upper", index));
        id.lower = Shell::from_label(require_string(p, "lower", index));
        id.branch = kinematics::parse_branch(require_string(p, "branch", index));
    } catch (const ValidationError& e) {
        fail(index, e.what());
    }
    id.theory_keV = require_number(p, "theory_keV", index);
    id.theta_deg = require_number(p, "theta_deg", index);
    if (!(id.theory_keV > 0.0)) fail(index, "tabulated.theory_keV must be > 0");
    if (!(id.theta_deg > 0.0 && id.theta_deg <= 90.0)) fail(index, "tabulated.theta_deg must lie in (0, 90]");
    if (p.contains("printed")) id.printed = require_string(p, "printed", index);
    if (p.contains("erratum")) id.erratum = require_string(p, "erratum", index);
    if (p.contains("z_override")) {
        const json& z = p.at("z_override");
        if (!z.is_object()) fail(index, "tabulated.z_override must be an object");
        for (const auto& [sym, val] : z.items()) {
            if (!val.is_number_integer() || val.get<int>() <= 0)
                fail(index, "tabulated.z_override." + sym + " must be a positive integer");
            id.z_override[sym] = val.get<int>();
        }
    }
    return id;
}

std::tuple<std::string, int, double, int, double, int> order_key(const Candidate& c) {
    const auto& t = c.transition;
    return {t.ion.symbol, t.upper.n, t.upper.j, t.lower.n, t.lower.j, c.branch == Branch::plus ? 0 : 1};
}

std::optional<Angle> closest(const std::vector<Angle>& v, double deg) {
    std::optional<Angle> best;
    for (const auto& a : v)
        if (!best || std::abs(a.deg() - deg) < std::abs(best->deg() - deg)) best = a;
    return best;
}

}  // namespace

Observable parse_observable(std::string_view s) {
    if (s == "pair_sum_kinetic") return Observable::pair_sum_kinetic;
    if (s == "positron_energy") return Observable::positron_energy;
    throw ValidationError("unknown observable '" + std::string(s) + "'");
}

std::string to_string(Observable o) {
    return o == Observable::pair_sum_kinetic ? "pair_sum_kinetic" : "positron_energy";
}

double ExperimentRecord::comparison_value() const {
    return observable == Observable::positron_energy ? 2.0 * observed : observed;
}

Catalog load_catalog(std::string_view json_text, const hydrogenic::IonDatabase& db) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("catalog: ") + e.what());
    }
    Catalog cat;
    const json* records = &doc;
    if (doc.is_object()) {
        if (!doc.contains("records")) throw ValidationError("catalog: missing 'records' array");
        records = &doc.at("records");
        if (doc.contains("table")) {
            if (!doc.at("table").is_string()) throw ValidationError("catalog: 'table' must be a string");
            cat.table = doc.at("table").get<std::string>();
        }
    }
    if (!records->is_array()) throw ValidationError("catalog: 'records' must be an array");

    std::size_t index = 0;
    for (const auto& r : *records) {
        ++index;
        if (!r.is_object()) fail(index, "must be an object");
        check_keys(r, {"row", "system", "spectrometer", "observable", "observed_keV", "uncertainty_keV", "x_mev_per_u",
                       "marginal", "ref", "tabulated"},
                   index, "record");
        ExperimentRecord rec;
        rec.row = static_cast<int>(index);
        if (r.contains("row")) {
            if (!r.at("row").is_number_integer()) fail(index, "field 'row' must be an integer");
            rec.row = r.at("row").get<int>();
        }
        rec.system = parse_system(require_string(r, "system", index), db, index);
        if (r.contains("spectrometer")) rec.spectrometer = require_string(r, "spectrometer", index);
        try {
            rec.observable = parse_observable(require_string(r, "observable", index));
        } catch (const ValidationError& e) {
            fail(index, e.what());
        }
        rec.observed = require_number(r, "observed_keV", index);
        if (!(rec.observed > 0.0)) fail(index, "field 'observed_keV' must be > 0");
        if (r.contains("uncertainty_keV") && !r.at("uncertainty_keV").is_null()) {
            const double u = require_number(r, "uncertainty_keV", index);
            if (!(u >= 0.0)) fail(index, "field 'uncertainty_keV' must be >= 0");
            rec.uncertainty = u;
        }
        if (r.contains("x_mev_per_u")) {
            rec.beam_energy_x = require_number(r, "x_mev_per_u", index);
            if (!(rec.beam_energy_x > 0.0)) fail(index, "field 'x_mev_per_u' must be > 0");
        }
        if (r.contains("marginal")) {
            if (!r.at("marginal").is_boolean()) fail(index, "field 'marginal' must be a boolean");
            rec.flagged_marginal = r.at("marginal").get<bool>();
        }
        if (r.contains("ref")) rec.ref = require_string(r, "ref", index);
        if (r.contains("tabulated")) rec.tabulated = parse_tabulated(r.at("tabulated"), db, index);
        cat.records.push_back(std::move(rec));
    }
    return cat;
}

Catalog load_catalog_file(const std::filesystem::path& path, const hydrogenic::IonDatabase& db) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open catalog " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_catalog(ss.str(), db);
}

std::string Candidate::label() const { return transition.label() + " (" + kinematics::to_string(branch) + ")"; }

std::vector<Candidate> candidate_transitions(const IonSystem& system, double x, const Constants& c,
                                             const std::vector<hydrogenic::ShellPair>& pairs) {
    const auto boost = kinematics::boost_from_beam_energy(x);
    std::vector<IonSpecies> ions{system.beam};
    if (system.target.symbol != system.beam.symbol) ions.push_back(system.target);
    std::vector<Candidate> out;
    for (const auto& ion : ions)
        for (const auto& [s, sp] : pairs) {
            const auto t = hydrogenic::pair_transition_energy(ion, s, sp, c);
            for (Branch b : {Branch::plus, Branch::minus}) {
                const double T45 = kinematics::lab_pair_energy(boost, t.delta_eps, Angle::degrees(45.0), b, c).T_lab;
                out.push_back({t, b, T45});
            }
        }
    return out;
}

std::vector<MatchResult> match_peak(const ExperimentRecord& record, const std::vector<Candidate>& candidates,
                                    std::size_t top_k, const Constants& c) {
    if (candidates.empty()) throw ValidationError("match_peak: no candidates");
    const double target = record.comparison_value();
    std::vector<Candidate> ranked = candidates;
    std::sort(ranked.begin(), ranked.end(), [&](const Candidate& a, const Candidate& b) {
        const double da = std::abs(a.theory_at_45 - target), db = std::abs(b.theory_at_45 - target);
        if (da != db) return da < db;
        return order_key(a) < order_key(b);
    });
    if (ranked.size() > top_k) ranked.resize(top_k);

    const auto boost = kinematics::boost_from_beam_energy(record.beam_energy_x);
    const double unit = record.observable == Observable::positron_energy ? 2.0 : 1.0;
    std::vector<MatchResult> out;
    for (const auto& cand : ranked) {
        MatchResult m;
        m.record = record;
        m.candidate = cand;
        m.theory_observable = cand.theory_at_45 / unit;
        m.all_solutions = kinematics::solve_theta(boost, cand.transition.delta_eps, cand.branch, target, c);
        m.solved_theta = closest(m.all_solutions, 45.0);
        m.residual_at_45 = cand.theory_at_45 - target;
        out.push_back(std::move(m));
    }
    return out;
}

RowReport reproduce_row(const std::string& table, const ExperimentRecord& rec, const hydrogenic::IonDatabase& db,
                        const Constants& c, const Tolerances& tol) {
    if (!rec.tabulated) throw ValidationError("row " + std::to_string(rec.row) + " has no tabulated identification");
    const auto& id = *rec.tabulated;
    const auto boost = kinematics::boost_from_beam_energy(rec.beam_energy_x);
    const double unit = rec.observable == Observable::positron_energy ? 2.0 : 1.0;

    RowReport rep;
    rep.table = table;
    rep.record = rec;
    rep.headline = !rec.flagged_marginal;
    double best_theory_err = INFINITY, best_theta_err = INFINITY;
    for (const auto& sym : id.ions) {
        IonSpecies ion = db.find(sym);
        if (auto it = id.z_override.find(sym); it != id.z_override.end()) ion.Z = it->second;
        const auto t = hydrogenic::pair_transition_energy(ion, id.upper, id.lower, c);
        IonEvaluation ev;
        ev.ion = sym;
        ev.Z = ion.Z;
        ev.theory_observable =
            kinematics::lab_pair_energy(boost, t.delta_eps, Angle::degrees(45.0), id.branch, c).T_lab / unit;
        ev.thetas = kinematics::solve_theta(boost, t.delta_eps, id.branch, rec.comparison_value(), c);
        ev.closest_theta = closest(ev.thetas, id.theta_deg);

        const double terr = std::abs(ev.theory_observable - id.theory_keV) / id.theory_keV;
        if (terr < best_theory_err) {
            best_theory_err = terr;
            rep.computed_theory = ev.theory_observable;
        }
        if (ev.closest_theta) {
            const double aerr = std::abs(ev.closest_theta->deg() - id.theta_deg);
            if (aerr < best_theta_err) {
                best_theta_err = aerr;
                rep.computed_theta_deg = ev.closest_theta->deg();
            }
        }
        rep.evaluations.push_back(std::move(ev));
    }
    rep.theory_pass = best_theory_err <= tol.theory_relative;
    rep.theta_pass = best_theta_err <= tol.theta_deg;
    return rep;
}

bool TablesReport::table_passed(std::string_view table) const {
    return std::all_of(rows.begin(), rows.end(),
                       [&](const RowReport& r) { return r.table != table || !r.headline || r.passed(); });
}

TablesReport reproduce_tables(const std::vector<Catalog>& catalogs, const hydrogenic::IonDatabase& db,
                              const Constants& c, const Tolerances& tol) {
    TablesReport rep;
    for (const auto& cat : catalogs)
        for (const auto& rec : cat.records) rep.rows.push_back(reproduce_row(cat.table, rec, db, c, tol));
    return rep;
}

}  // namespace dirac::matcher
