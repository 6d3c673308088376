#pragma once

// Experiment catalogs (sum-energy and positron-energy peaks), candidate transitions and
// regression of the tabulated theory values and opening half-angles.

#include "dirac/core.hpp"
#include "dirac/hydrogenic.hpp"
#include "dirac/kinematics.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirac::matcher {

using hydrogenic::IonSpecies;
using hydrogenic::Shell;
using hydrogenic::Transition;
using kinematics::Branch;

enum class Observable { pair_sum_kinetic, positron_energy };

Observable parse_observable(std::string_view s);
std::string to_string(Observable o);

struct IonSystem {
    IonSpecies beam;
    IonSpecies target;

    std::string label() const { return beam.symbol + "+" + target.symbol; }
};

// The identification printed alongside a catalog row, used for regression.
struct TabulatedIdentification {
    std::vector<std::string> ions;  // several when either ion reproduces the row
    Shell upper;
    Shell lower;
    Branch branch = Branch::plus;
    double theory_keV = 0.0;  // in observable units
    double theta_deg = 0.0;
    std::string printed;
    std::string erratum;
    std::map<std::string, int> z_override;
};

struct ExperimentRecord {
    int row = 0;  // printed row; split rows share it
    IonSystem system;
    std::string spectrometer;
    Observable observable = Observable::pair_sum_kinetic;
    double observed = 0.0;  // keV
    std::optional<double> uncertainty;
    double beam_energy_x = 6.0;  // MeV/u
    bool flagged_marginal = false;
    std::string ref;
    std::optional<TabulatedIdentification> tabulated;

    // observed (pair sum) or 2 observed (positron energy)
    double comparison_value() const;
};

struct Catalog {
    std::string table;
    std::vector<ExperimentRecord> records;
};

Catalog load_catalog(std::string_view json_text, const hydrogenic::IonDatabase& db);
Catalog load_catalog_file(const std::filesystem::path& path, const hydrogenic::IonDatabase& db);

struct Candidate {
    Transition transition;
    Branch branch = Branch::plus;
    double theory_at_45 = 0.0;  // T_lab at 45 deg, keV (pair sum)
    std::string label() const;  // "Pb:K->K' (+)"
};

std::vector<Candidate> candidate_transitions(const IonSystem& system, double x_mev_per_u,
                                             const Constants& c = default_constants(),
                                             const std::vector<hydrogenic::ShellPair>& pairs =
                                                 hydrogenic::default_shell_pairs());

struct MatchResult {
    ExperimentRecord record;
    Candidate candidate;
    double theory_observable = 0.0;    // theory_at_45 in the record's observable units
    std::optional<Angle> solved_theta;  // solution closest to 45 deg
    std::vector<Angle> all_solutions;
    double residual_at_45 = 0.0;  // theory_at_45 - comparison value, keV (pair sum)
};

// Ranked by |theory_at_45 - comparison value|, ties by (ion, shells, branch).
std::vector<MatchResult> match_peak(const ExperimentRecord& record, const std::vector<Candidate>& candidates,
                                    std::size_t top_k = 6, const Constants& c = default_constants());

struct IonEvaluation {
    std::string ion;
    int Z = 0;
    double theory_observable = 0.0;
    std::vector<Angle> thetas;
    std::optional<Angle> closest_theta;  // to the printed angle
};

struct RowReport {
    std::string table;
    ExperimentRecord record;
    std::vector<IonEvaluation> evaluations;
    double computed_theory = 0.0;  // best ion for the theory column
    std::optional<double> computed_theta_deg;  // best ion for the angle column
    bool theory_pass = false;
    bool theta_pass = false;
    bool headline = true;  // non-marginal rows enter acceptance

    bool passed() const { return theory_pass && theta_pass; }
};

struct Tolerances {
    double theory_relative = 0.005;
    double theta_deg = 0.5;
};

RowReport reproduce_row(const std::string& table, const ExperimentRecord& rec, const hydrogenic::IonDatabase& db,
                        const Constants& c = default_constants(), const Tolerances& tol = {});

struct TablesReport {
    std::vector<RowReport> rows;

    // Headline rows of `table` all pass.
    bool table_passed(std::string_view table) const;
};

TablesReport reproduce_tables(const std::vector<Catalog>& catalogs, const hydrogenic::IonDatabase& db,
                              const Constants& c = default_constants(), const Tolerances& tol = {});

}  // namespace dirac::matcher
