#pragma once

// Physical constants, units and shared scalars.
// Energies and momenta are in keV with hbar = c = 1; lengths and times in 1/keV.

#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dirac {

// Bad user input: out-of-domain arguments, malformed files, unknown labels.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Constants {
    double electron_rest_energy = 510.998950;  // keV
    double fine_structure = 7.2973525693e-3;
    double numeric_tolerance = 1e-12;
    double root_tolerance = 1e-9;

    void validate() const;

    // JSON object with optional keys "m_e_keV" and "alpha0".
    static Constants from_json_text(std::string_view text);
    static Constants from_file(const std::filesystem::path& path);
};

const Constants& default_constants();

enum class Alternative { D1, D2 };

Alternative parse_alternative(std::string_view s);
std::string to_string(Alternative a);

// Opening half-angle. Stored in radians.
class Angle {
public:
    constexpr Angle() = default;
    static constexpr Angle radians(double r) { return Angle(r); }
    static constexpr Angle degrees(double d) { return Angle(d * std::numbers::pi / 180.0); }
    constexpr double rad() const { return rad_; }
    constexpr double deg() const { return rad_ * 180.0 / std::numbers::pi; }
    constexpr auto operator<=>(const Angle&) const = default;

private:
    constexpr explicit Angle(double r) : rad_(r) {}
    double rad_ = 0.0;
};

double energy_of_momentum(double p, const Constants& c = default_constants());

}  // namespace dirac
