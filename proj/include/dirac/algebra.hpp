#pragma once

// 4x4 Dirac-matrix identities: Clifford algebra, charge conjugation, Casimir projectors,
// sgn(E), charge current and the C/P/tau transformation laws.

#include "dirac/core.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace dirac::algebra {

using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;
using cplx = std::complex<double>;

struct DiracMatrices {
    std::array<Mat4, 3> alpha;
    Mat4 beta;
    std::string representation_tag;

    Mat4 alpha_dot(const Vec3& v) const;
    // H0 = alpha.p + beta m
    Mat4 hamiltonian(const Vec3& p, double mass) const;
    // Largest deviation from {a_i,a_j} = 2 delta_ij, {a_i,b} = 0, b^2 = 1 and hermiticity.
    double clifford_residual() const;
};

// Only "dirac" (standard representation) is supported.
DiracMatrices build_matrices(std::string_view representation = "dirac");

struct ConjugationMatrix {
    Mat4 C;
    cplx phase_convention;  // factor applied to the raw null vector
};

// Null space of C a_i* - a_i C = 0, C b* + b C = 0; throws unless one-dimensional.
// Normalized to CC^dagger = I with the largest-magnitude entry real positive.
ConjugationMatrix find_conjugation_matrix(const DiracMatrices& m);
// Canonical scaling and phase of any nonzero multiple of a unitary C.
ConjugationMatrix normalize_conjugation(const Mat4& raw);

struct Spinors {
    Vec3 p;
    std::array<Vec4, 2> u;  // spin up, spin down
    std::array<Vec4, 2> v;
};

Spinors free_spinors(const DiracMatrices& m, const Vec3& p, const Constants& c = default_constants());

struct Projectors {
    Mat4 plus;
    Mat4 minus;
};

Projectors casimir_projectors(const DiracMatrices& m, const Vec3& p, const Constants& c = default_constants());
// B+ - B- = H0(p)/E_p
Mat4 sign_of_energy(const DiracMatrices& m, const Vec3& p, const Constants& c = default_constants());

std::array<Mat4, 3> sigma_matrices(const DiracMatrices& m);

struct FieldConfig {
    Vec3 A = Vec3::Zero();
    double Phi = 0.0;
    double e_charge = -1.0;

    void validate() const;
};

// H1 = -e alpha.A + e Phi
Mat4 interaction(const DiracMatrices& m, const FieldConfig& f);

// Matrix M with optional complex conjugation; A reverses sign when reverses_vector_potential.
struct Transformation {
    std::string name;
    Mat4 matrix;
    bool conjugate = false;
    bool reverses_vector_potential = false;

    // M O^(*) M^-1
    Mat4 apply(const Mat4& op) const;
    FieldConfig transform_field(const FieldConfig& f) const;
};

Transformation charge_conjugation(const ConjugationMatrix& c);
Transformation parity(const DiracMatrices& m);
// Unitary chirality matrix -i a1 a2 a3; see README on the tau convention.
Transformation time_inversion(const DiracMatrices& m);

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    bool passed = false;
};

struct Report {
    std::vector<IdentityCheck> checks;

    bool all_passed() const;
    double max_residual() const;
    void append(const Report& other);
};

// max|X - Y| / max(1, max|Y|)
double residual(const Mat4& x, const Mat4& y);

// Residual of 1/2{sgnE, a_i} = (p_i/E_p) I.
double charge_current_identity(const DiracMatrices& m, const Vec3& p, int axis,
                               const Constants& c = default_constants());

Report clifford_checks(const DiracMatrices& m, const Constants& c = default_constants());
Report conjugation_checks(const DiracMatrices& m, const ConjugationMatrix& cm, const Vec3& p,
                          const Constants& c = default_constants());
Report projector_checks(const DiracMatrices& m, const Vec3& p, const Constants& c = default_constants());
Report transformation_checks(const DiracMatrices& m, const ConjugationMatrix& cm, const Vec3& p,
                             const FieldConfig& f, const Constants& c = default_constants());
// A-3 in the form {a_i, H + e Phi} = 2 (p - eA)_i with H = a.(p - eA) - e Phi + b m, and
// B-3: (1/i)[Sigma_i, H] = 2((p - eA) x a)_i.
Report appendix_identities(const DiracMatrices& m, const Vec3& p, const FieldConfig& f,
                           const Constants& c = default_constants());

// Sorted eigenvalues of H0(k,0,0) + V sgnE(k): the constant-potential D2 problem.
std::array<double, 4> d2_secular_eigenvalues(double k, double V, const Constants& c = default_constants());

}  // namespace dirac::algebra
