#include "dirac/hydrogenic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dirac::hydrogenic {

namespace {

double parse_j(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        int num = 0, den = 0;
        auto a = std::from_chars(s.data(), s.data() + slash, num);
        auto b = std::from_chars(s.data() + slash + 1, s.data() + s.size(), den);
        if (a.ec != std::errc{} || b.ec != std::errc{} || den != 2 || a.ptr != s.data() + slash ||
            b.ptr != s.data() + s.size())
            throw ValidationError("bad j value '" + std::string(s) + "'");
        return num / 2.0;
    }
    try {
        size_t used = 0;
        double v = std::stod(std::string(s), &used);
        if (used != s.size()) throw ValidationError("bad j value '" + std::string(s) + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ValidationError("bad j value '" + std::string(s) + "'");
    }
}

std::string ascii_prime(const Shell& s) { return s.label + "'"; }

}  // namespace

Shell Shell::explicit_qn(int n, double j) {
    if (n < 1) throw ValidationError("shell: n must be >= 1");
    double twice = 2.0 * j;
    if (j < 0.5 || std::abs(twice - std::round(twice)) > 1e-12 ||
        static_cast<long>(std::lround(twice)) % 2 == 0)
        throw ValidationError("shell: j must be a half-integer >= 1/2");
    if (j + 0.5 > n) throw ValidationError("shell: j + 1/2 must not exceed n");
    std::ostringstream os;
    os << n << ',' << std::lround(twice) << "/2";
    return Shell{os.str(), n, j};
}

Shell Shell::from_label(std::string_view label) {
    if (label == "K") return {"K", 1, 0.5};
    if (label == "L1") return {"L1", 2, 0.5};
    if (label == "L2") return {"L2", 2, 1.5};
    // M is 3P3/2: the only M assignment that reproduces the tabulated M->M' rows.
    if (label == "M") return {"M", 3, 1.5};
    if (label == "M1") return {"M1", 3, 0.5};
    if (label == "Z" || label == "Z_high") return {"Z", 50, 0.5};
    auto comma = label.find(',');
    if (comma == std::string_view::npos)
        throw ValidationError("unknown shell label '" + std::string(label) + "'");
    int n = 0;
    auto r = std::from_chars(label.data(), label.data() + comma, n);
    if (r.ec != std::errc{} || r.ptr != label.data() + comma)
        throw ValidationError("bad shell '" + std::string(label) + "'");
    return explicit_qn(n, parse_j(label.substr(comma + 1)));
}

IonDatabase IonDatabase::builtin() {
    IonDatabase db;
    for (const auto& ion : std::vector<IonSpecies>{
             {"U", 92}, {"Pb", 82}, {"Th", 90}, {"Ta", 73}, {"Cm", 96}, {"Au", 79}})
        db.add(ion);
    return db;
}

IonDatabase IonDatabase::from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("ion database: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("ion database: expected an object of symbol -> Z");
    IonDatabase db = builtin();
    for (const auto& [sym, z] : j.items()) {
        if (!z.is_number_integer())
            throw ValidationError("ion database: Z for " + sym + " must be an integer");
        db.add({sym, z.get<int>()});
    }
    return db;
}

IonDatabase IonDatabase::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open ion database " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void IonDatabase::add(const IonSpecies& ion) {
    if (ion.Z <= 0) throw ValidationError("ion " + ion.symbol + ": Z must be positive");
    if (ion.symbol.empty()) throw ValidationError("ion symbol must not be empty");
    ions_[ion.symbol] = ion;
}

const IonSpecies& IonDatabase::find(std::string_view symbol) const {
    auto it = ions_.find(symbol);
    if (it == ions_.end()) throw ValidationError("unknown ion '" + std::string(symbol) + "'");
    return it->second;
}

bool IonDatabase::contains(std::string_view symbol) const { return ions_.find(symbol) != ions_.end(); }

std::vector<IonSpecies> IonDatabase::all() const {
    std::vector<IonSpecies> out;
    for (const auto& [k, v] : ions_) out.push_back(v);
    return out;
}

double level_energy(const IonSpecies& ion, const Shell& shell, EnergySign sign, const Constants& c) {
    const double za = ion.Z * c.fine_structure;
    const double k = shell.j + 0.5;
    if (!(k > za))
        throw SupercriticalError("supercritical: Z*alpha0 = " + std::to_string(za) + " >= j+1/2 for " +
                                 ion.symbol + " shell " + shell.label);
    const double denom = shell.n - k + std::sqrt(k * k - za * za);
    const double ratio = za / denom;
    const double e = c.electron_rest_energy / std::sqrt(1.0 + ratio * ratio);
    return sign == EnergySign::positive ? e : -e;
}

std::string Transition::label() const {
    return ion.symbol + ":" + upper.label + "->" + ascii_prime(lower);
}

Transition pair_transition_energy(const IonSpecies& ion, const Shell& s, const Shell& s_prime,
                                  const Constants& c) {
    Transition t{ion, s, s_prime,
                 level_energy(ion, s, EnergySign::positive, c) +
                     level_energy(ion, s_prime, EnergySign::positive, c)};
    return t;
}

std::vector<ShellPair> standard_shell_pairs() {
    auto S = Shell::from_label;
    return {{S("K"), S("K")}, {S("K"), S("L1")}, {S("K"), S("L2")}, {S("L1"), S("L1")}, {S("L2"), S("L2")}};
}

std::vector<ShellPair> default_shell_pairs() {
    auto v = standard_shell_pairs();
    v.emplace_back(Shell::from_label("M"), Shell::from_label("M"));
    v.emplace_back(Shell::from_label("Z"), Shell::from_label("Z"));
    return v;
}

std::vector<Transition> transition_table(const IonSpecies& ion, const std::vector<Shell>& shells,
                                         const std::vector<ShellPair>& extras, const Constants& c) {
    if (shells.empty()) throw ValidationError("transition_table: empty shell list");
    auto has = [&](const Shell& s) { return std::find(shells.begin(), shells.end(), s) != shells.end(); };
    std::vector<Transition> out;
    for (const auto& [a, b] : default_shell_pairs())
        if (has(a) && has(b)) out.push_back(pair_transition_energy(ion, a, b, c));
    for (const auto& [a, b] : extras) {
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](const Transition& t) { return t.upper == a && t.lower == b; });
        if (!dup) out.push_back(pair_transition_energy(ion, a, b, c));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Transition& x, const Transition& y) { return x.delta_eps < y.delta_eps; });
    return out;
}

}  // namespace dirac::hydrogenic
