#include "dirac/core.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace dirac {

void Constants::validate() const {
    if (!(electron_rest_energy > 0.0) || !std::isfinite(electron_rest_energy))
        throw ValidationError("m_e_keV must be positive");
    if (!(fine_structure > 0.0) || !(fine_structure < 1.0))
        throw ValidationError("alpha0 must lie in (0, 1)");
    if (!(numeric_tolerance > 0.0) || !(root_tolerance > 0.0))
        throw ValidationError("tolerances must be positive");
}

Constants Constants::from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    Constants c;
    for (const auto& [key, val] : j.items()) {
        if (!val.is_number()) throw ValidationError("config: " + key + " must be a number");
        if (key == "m_e_keV")
            c.electron_rest_energy = val.get<double>();
        else if (key == "alpha0")
            c.fine_structure = val.get<double>();
        else
            throw ValidationError("config: unknown key " + key);
    }
    c.validate();
    return c;
}

Constants Constants::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

const Constants& default_constants() {
    static const Constants c{};
    return c;
}

Alternative parse_alternative(std::string_view s) {
    if (s == "d1" || s == "D1") return Alternative::D1;
    if (s == "d2" || s == "D2") return Alternative::D2;
    throw ValidationError("unknown alternative '" + std::string(s) + "' (expected d1 or d2)");
}

std::string to_string(Alternative a) { return a == Alternative::D1 ? "D1" : "D2"; }

double energy_of_momentum(double p, const Constants& c) {
    return std::hypot(p, c.electron_rest_energy);
}

}  // namespace dirac
