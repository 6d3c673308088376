#pragma once

// Hydrogenic Dirac levels E±(n, j) and bound pair transition energies.

#include "dirac/core.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dirac::hydrogenic {

struct Shell {
    std::string label;  // "K", "L1", "L2", "M", "Z" or "n,j"
    int n = 1;
    double j = 0.5;

    // Accepts K, L1, L2, M, Z (alias Z_high), M1 for (3,1/2), or "n,j" with j like 1/2 or 0.5.
    static Shell from_label(std::string_view label);
    static Shell explicit_qn(int n, double j);

    bool operator==(const Shell& o) const { return n == o.n && j == o.j; }
};

struct IonSpecies {
    std::string symbol;
    int Z = 1;
};

class IonDatabase {
public:
    // U, Pb, Th, Ta, Cm, Au.
    static IonDatabase builtin();
    // JSON object {"U": 92, ...}; entries override built-ins.
    static IonDatabase from_file(const std::filesystem::path& path);
    static IonDatabase from_json_text(std::string_view text);

    void add(const IonSpecies& ion);
    const IonSpecies& find(std::string_view symbol) const;
    bool contains(std::string_view symbol) const;
    std::vector<IonSpecies> all() const;

private:
    std::map<std::string, IonSpecies, std::less<>> ions_;
};

enum class EnergySign { positive, negative };

class SupercriticalError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

double level_energy(const IonSpecies& ion, const Shell& shell, EnergySign sign,
                    const Constants& c = default_constants());

struct Transition {
    IonSpecies ion;
    Shell upper;  // S
    Shell lower;  // S', negative-energy partner
    double delta_eps = 0.0;  // keV

    // "Pb:K->K'"
    std::string label() const;
};

Transition pair_transition_energy(const IonSpecies& ion, const Shell& s, const Shell& s_prime,
                                  const Constants& c = default_constants());

using ShellPair = std::pair<Shell, Shell>;

// K->K', K->L1', K->L2', L1->L1', L2->L2'.
std::vector<ShellPair> standard_shell_pairs();
// standard_shell_pairs() plus M->M' and Z->Z'.
std::vector<ShellPair> default_shell_pairs();

// Pairs from the enumerated set whose shells both appear in `shells`, plus `extras`,
// ascending by delta_eps.
std::vector<Transition> transition_table(const IonSpecies& ion, const std::vector<Shell>& shells,
                                         const std::vector<ShellPair>& extras = {},
                                         const Constants& c = default_constants());

}  // namespace dirac::hydrogenic
