#include "dirac/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace dirac::algebra {

namespace {

using Mat2 = Eigen::Matrix2cd;
constexpr cplx I(0.0, 1.0);

std::array<Mat2, 3> pauli() {
    Mat2 s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    return {s1, s2, s3};
}

Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
    Mat4 m;
    m << a, b, c, d;
    return m;
}

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

IdentityCheck make_check(std::string name, double r, double tol) { return {std::move(name), r, r < tol}; }

}  // namespace

Mat4 DiracMatrices::alpha_dot(const Vec3& v) const {
    return alpha[0] * v[0] + alpha[1] * v[1] + alpha[2] * v[2];
}

Mat4 DiracMatrices::hamiltonian(const Vec3& p, double mass) const { return alpha_dot(p) + beta * mass; }

double DiracMatrices::clifford_residual() const {
    const Mat4 id = Mat4::Identity();
    double r = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Mat4 expect = (i == j) ? Mat4(2.0 * id) : Mat4(Mat4::Zero());
            r = std::max(r, max_abs(alpha[i] * alpha[j] + alpha[j] * alpha[i] - expect));
        }
        r = std::max(r, max_abs(alpha[i] * beta + beta * alpha[i]));
        r = std::max(r, max_abs(alpha[i] - alpha[i].adjoint()));
    }
    r = std::max(r, max_abs(beta * beta - id));
    r = std::max(r, max_abs(beta - beta.adjoint()));
    return r;
}

DiracMatrices build_matrices(std::string_view representation) {
    if (representation != "dirac" && representation != "Dirac")
        throw ValidationError("unknown representation '" + std::string(representation) + "'");
    const auto s = pauli();
    const Mat2 z = Mat2::Zero(), id = Mat2::Identity();
    DiracMatrices m;
    for (int i = 0; i < 3; ++i) m.alpha[i] = blocks(z, s[i], s[i], z);
    m.beta = blocks(id, z, z, -id);
    m.representation_tag = "dirac";
    return m;
}

ConjugationMatrix find_conjugation_matrix(const DiracMatrices& m) {
    // vec(A X B) = (B^T kron A) vec(X), column-major.
    using MatX = Eigen::MatrixXcd;
    const MatX id = MatX::Identity(4, 4);
    auto kron = [](const MatX& a, const MatX& b) {
        MatX k(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return k;
    };
    MatX sys(64, 16);
    for (int i = 0; i < 3; ++i) {
        const MatX ac = m.alpha[i].conjugate();
        sys.block(16 * i, 0, 16, 16) = kron(ac.transpose(), id) - kron(id, MatX(m.alpha[i]));
    }
    const MatX bc = m.beta.conjugate();
    sys.block(48, 0, 16, 16) = kron(bc.transpose(), id) + kron(id, MatX(m.beta));

    Eigen::JacobiSVD<MatX> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv(0));
    int nullity = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) < 1e-10 * scale) ++nullity;
    if (nullity != 1)
        throw std::runtime_error("conjugation matrix: solution space has dimension " + std::to_string(nullity));

    Eigen::VectorXcd x = svd.matrixV().col(15);
    return normalize_conjugation(Eigen::Map<Mat4>(x.data()));
}

ConjugationMatrix normalize_conjugation(const Mat4& raw) {
    const double s = std::sqrt((raw * raw.adjoint()).trace().real() / 4.0);
    if (!(s > 0.0)) throw std::runtime_error("conjugation matrix is zero");
    Mat4 C = raw / s;
    if (max_abs(C * C.adjoint() - Mat4::Identity()) > 1e-10)
        throw std::runtime_error("conjugation matrix is not unitary up to scale");

    // First entry (column-major) of maximal magnitude is made real positive.
    double best = 0.0;
    for (int k = 0; k < 16; ++k) best = std::max(best, std::abs(C.data()[k]));
    cplx ref{};
    for (int k = 0; k < 16; ++k)
        if (std::abs(C.data()[k]) > best - 1e-12) {
            ref = C.data()[k];
            break;
        }
    const cplx phase = std::conj(ref) / std::abs(ref);
    C *= phase;
    return {C, phase / s};
}

Spinors free_spinors(const DiracMatrices& m, const Vec3& p, const Constants& c) {
    // Positive (negative) energy states are the Casimir projections of the beta = +1 (-1)
    // eigenvectors; in the standard representation this is u = N(chi, s.p chi/(E+m)) and
    // v = N(-s.p chi/(E+m), chi) with N = sqrt((E+m)/2E).
    const auto proj = casimir_projectors(m, p, c);
    Spinors s;
    s.p = p;
    // beta is diagonal in the standard representation: e0, e1 span beta = +1, e2, e3 span beta = -1.
    const Mat4 id = Mat4::Identity();
    const std::array<Vec4, 2> up{id.col(0), id.col(1)}, dn{id.col(2), id.col(3)};
    for (int i = 0; i < 2; ++i) {
        Vec4 u = proj.plus * up[i];
        Vec4 v = proj.minus * dn[i];
        s.u[i] = u / u.norm();
        s.v[i] = v / v.norm();
    }
    return s;
}

Projectors casimir_projectors(const DiracMatrices& m, const Vec3& p, const Constants& c) {
    const Mat4 sgn = sign_of_energy(m, p, c);
    const Mat4 id = Mat4::Identity();
    return {(id + sgn) / 2.0, (id - sgn) / 2.0};
}

Mat4 sign_of_energy(const DiracMatrices& m, const Vec3& p, const Constants& c) {
    const double mass = c.electron_rest_energy;
    const double e = std::sqrt(p.squaredNorm() + mass * mass);
    return m.hamiltonian(p, mass) / e;
}

std::array<Mat4, 3> sigma_matrices(const DiracMatrices& m) {
    // Sigma_k = -i a_i a_j for cyclic (i, j, k).
    return {Mat4(-I * m.alpha[1] * m.alpha[2]), Mat4(-I * m.alpha[2] * m.alpha[0]),
            Mat4(-I * m.alpha[0] * m.alpha[1])};
}

void FieldConfig::validate() const {
    if (!(e_charge < 0.0)) throw ValidationError("FieldConfig: e_charge must be negative");
}

Mat4 interaction(const DiracMatrices& m, const FieldConfig& f) {
    f.validate();
    return -f.e_charge * m.alpha_dot(f.A) + f.e_charge * f.Phi * Mat4::Identity();
}

Mat4 Transformation::apply(const Mat4& op) const {
    const Mat4 o = conjugate ? Mat4(op.conjugate()) : op;
    return matrix * o * matrix.inverse();
}

FieldConfig Transformation::transform_field(const FieldConfig& f) const {
    FieldConfig g = f;
    if (reverses_vector_potential) g.A = -f.A;
    return g;
}

Transformation charge_conjugation(const ConjugationMatrix& c) { return {"C", c.C, true, false}; }

Transformation parity(const DiracMatrices& m) { return {"P", m.beta, false, true}; }

Transformation time_inversion(const DiracMatrices& m) {
    return {"tau", Mat4(-I * m.alpha[0] * m.alpha[1] * m.alpha[2]), false, false};
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

double Report::max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = std::max(r, c.residual);
    return r;
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

double residual(const Mat4& x, const Mat4& y) { return max_abs(x - y) / std::max(1.0, max_abs(y)); }

double charge_current_identity(const DiracMatrices& m, const Vec3& p, int axis, const Constants& c) {
    if (axis < 0 || axis > 2) throw ValidationError("axis must be 0, 1 or 2");
    const Mat4 sgn = sign_of_energy(m, p, c);
    const double e = energy_of_momentum(p.norm(), c);
    const Mat4 lhs = 0.5 * (sgn * m.alpha[axis] + m.alpha[axis] * sgn);
    return max_abs(lhs - (p[axis] / e) * Mat4::Identity());
}

Report clifford_checks(const DiracMatrices& m, const Constants& c) {
    Report r;
    r.checks.push_back(make_check("clifford", m.clifford_residual(), c.numeric_tolerance));
    const auto S = sigma_matrices(m);
    double rs = 0.0;
    for (const auto& s : S) {
        rs = std::max(rs, max_abs(s - s.adjoint()));
        rs = std::max(rs, max_abs(s * s - Mat4::Identity()));
    }
    r.checks.push_back(make_check("sigma hermitian, sigma^2 = I", rs, c.numeric_tolerance));
    return r;
}

Report conjugation_checks(const DiracMatrices& m, const ConjugationMatrix& cm, const Vec3& p, const Constants& c) {
    Report r;
    const Mat4& C = cm.C;
    const Mat4 Ci = C.inverse();
    double ra = 0.0;
    for (const auto& a : m.alpha) ra = std::max(ra, residual(C * a.conjugate() * Ci, a));
    r.checks.push_back(make_check("C alpha* C^-1 = alpha", ra, c.numeric_tolerance));
    r.checks.push_back(make_check("C beta* C^-1 = -beta", residual(C * m.beta.conjugate() * Ci, -m.beta),
                                  c.numeric_tolerance));
    r.checks.push_back(make_check("C C^dagger = I", residual(C * C.adjoint(), Mat4::Identity()), c.numeric_tolerance));

    // u(p,s) = C v*(-p,s') up to a single phase: the span of {C v*(-p)} equals the span of {u(p)}.
    const auto sp = free_spinors(m, p, c);
    const auto sm = free_spinors(m, Vec3(-p), c);
    double ru = 0.0;
    for (int s = 0; s < 2; ++s) {
        Vec4 w = C * sm.v[s].conjugate();
        Vec4 inside = sp.u[0] * sp.u[0].dot(w) + sp.u[1] * sp.u[1].dot(w);
        ru = std::max(ru, (w - inside).cwiseAbs().maxCoeff());
    }
    r.checks.push_back(make_check("C v*(-p) in span u(p)", ru, c.numeric_tolerance));

    // Spinor eigen relations and normalization.
    const double mass = c.electron_rest_energy;
    const double e = energy_of_momentum(p.norm(), c);
    const Mat4 h = m.hamiltonian(p, mass);
    double rsp = 0.0;
    for (int s = 0; s < 2; ++s) {
        rsp = std::max(rsp, (h * sp.u[s] - e * sp.u[s]).cwiseAbs().maxCoeff() / e);
        rsp = std::max(rsp, (h * sp.v[s] + e * sp.v[s]).cwiseAbs().maxCoeff() / e);
        rsp = std::max(rsp, std::abs(sp.u[s].squaredNorm() - 1.0));
        rsp = std::max(rsp, std::abs(sp.v[s].squaredNorm() - 1.0));
    }
    r.checks.push_back(make_check("spinor eigen relations", rsp, c.numeric_tolerance));

    // Spectrum: +E twice and -E twice.
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    const auto ev = es.eigenvalues();
    double rspec = std::max({std::abs(ev(0) + e), std::abs(ev(1) + e), std::abs(ev(2) - e), std::abs(ev(3) - e)}) /
                   std::max(1.0, e);
    r.checks.push_back(make_check("spectrum {+E,+E,-E,-E}", rspec, c.numeric_tolerance));
    return r;
}

Report projector_checks(const DiracMatrices& m, const Vec3& p, const Constants& c) {
    Report r;
    const auto pr = casimir_projectors(m, p, c);
    const auto sp = free_spinors(m, p, c);
    const Mat4 id = Mat4::Identity();
    const double tol = c.numeric_tolerance;
    r.checks.push_back(make_check("B+ + B- = I", residual(pr.plus + pr.minus, id), tol));
    r.checks.push_back(make_check("B+^2 = B+", residual(pr.plus * pr.plus, pr.plus), tol));
    r.checks.push_back(make_check("B-^2 = B-", residual(pr.minus * pr.minus, pr.minus), tol));
    r.checks.push_back(make_check("B+ B- = 0", max_abs(pr.plus * pr.minus), tol));
    double ruv = 0.0;
    for (int s = 0; s < 2; ++s) {
        ruv = std::max(ruv, (pr.plus * sp.u[s] - sp.u[s]).cwiseAbs().maxCoeff());
        ruv = std::max(ruv, (pr.plus * sp.v[s]).cwiseAbs().maxCoeff());
        ruv = std::max(ruv, (pr.minus * sp.v[s] - sp.v[s]).cwiseAbs().maxCoeff());
        ruv = std::max(ruv, (pr.minus * sp.u[s]).cwiseAbs().maxCoeff());
    }
    r.checks.push_back(make_check("B+- act on u, v", ruv, tol));
    const double rank_plus = pr.plus.trace().real(), rank_minus = pr.minus.trace().real();
    r.checks.push_back(
        make_check("rank B+- = 2", std::max(std::abs(rank_plus - 2.0), std::abs(rank_minus - 2.0)), tol));
    const Mat4 sgn = sign_of_energy(m, p, c);
    r.checks.push_back(make_check("sgnE^2 = I", residual(sgn * sgn, id), tol));
    double rj = 0.0;
    for (int i = 0; i < 3; ++i) rj = std::max(rj, charge_current_identity(m, p, i, c));
    r.checks.push_back(make_check("charge current 1/2{sgnE, alpha} = p/E", rj, tol));
    return r;
}

Report transformation_checks(const DiracMatrices& m, const ConjugationMatrix& cm, const Vec3& p,
                             const FieldConfig& f, const Constants& c) {
    Report r;
    const double mass = c.electron_rest_energy;
    const double tol = c.numeric_tolerance;
    const Mat4 h0 = m.hamiltonian(p, mass), h0m = m.hamiltonian(-p, mass);
    const Mat4 sg = sign_of_energy(m, p, c), sgm = sign_of_energy(m, Vec3(-p), c);

    const std::array<Transformation, 3> ts{charge_conjugation(cm), parity(m), time_inversion(m)};
    const std::array<double, 3> sign{-1.0, 1.0, -1.0};
    for (int k = 0; k < 3; ++k) {
        const auto& t = ts[k];
        r.checks.push_back(make_check(t.name + ": H0(p) -> " + (sign[k] < 0 ? "-" : "+") + "H0(-p)",
                                      residual(t.apply(h0), sign[k] * h0m), tol));
        r.checks.push_back(make_check(t.name + ": sgnE(p) -> " + (sign[k] < 0 ? "-" : "+") + "sgnE(-p)",
                                      residual(t.apply(sg), sign[k] * sgm), tol));
        const Mat4 h1 = interaction(m, t.transform_field(f));
        r.checks.push_back(make_check(t.name + ": H1 invariant", residual(t.apply(h1), interaction(m, f)), tol));
    }

    const Mat4 h1 = interaction(m, f);
    // D2: the sgnE-weighted potential transforms like H0 under C and tau.
    for (int k : {0, 2}) {
        const auto& t = ts[k];
        const Mat4 lhs = t.apply(h0 + sg * h1);
        r.checks.push_back(make_check(t.name + ": D2 composite law", residual(lhs, -(h0m + sgm * h1)), tol));
    }
    // D1: C(H0 + H1)C^-1 = -(H0(-p) - H1); the would-be invariant form misses by exactly 2 H1.
    const Mat4 lhs = ts[0].apply(h0 + h1);
    r.checks.push_back(make_check("C: D1 breakdown law", residual(lhs, -(h0m - h1)), tol));
    const double miss = max_abs(lhs + (h0m + h1) - 2.0 * h1) / std::max(1.0, max_abs(h1));
    r.checks.push_back(make_check("C: D1 sign flip equals 2 H1", miss, tol));
    return r;
}

Report appendix_identities(const DiracMatrices& m, const Vec3& p, const FieldConfig& f, const Constants& c) {
    f.validate();
    Report r;
    const double mass = c.electron_rest_energy;
    const double e = f.e_charge;
    const Vec3 kin = p - e * f.A;
    const Mat4 id = Mat4::Identity();
    const Mat4 h = m.alpha_dot(kin) - e * f.Phi * id + mass * m.beta;
    const Mat4 hk = h + e * f.Phi * id;
    double ra = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Mat4 lhs = m.alpha[i] * hk + hk * m.alpha[i];
        ra = std::max(ra, residual(lhs, 2.0 * kin[i] * id));
    }
    r.checks.push_back(make_check("A-3: {alpha, H + e Phi} = 2(p - eA)", ra, c.numeric_tolerance));

    const auto S = sigma_matrices(m);
    double rb = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const Mat4 lhs = (S[i] * h - h * S[i]) / I;
        const Mat4 rhs = 2.0 * (kin[j] * m.alpha[k] - kin[k] * m.alpha[j]);
        rb = std::max(rb, residual(lhs, rhs));
    }
    r.checks.push_back(make_check("B-3: (1/i)[Sigma, H] = 2(p - eA) x alpha", rb, c.numeric_tolerance));
    return r;
}

std::array<double, 4> d2_secular_eigenvalues(double k, double V, const Constants& c) {
    const auto m = build_matrices();
    const Vec3 p(k, 0.0, 0.0);
    const Mat4 h = m.hamiltonian(p, c.electron_rest_energy) + V * sign_of_energy(m, p, c);
    Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
    const auto ev = es.eigenvalues();
    return {ev(0), ev(1), ev(2), ev(3)};
}

}  // namespace dirac::algebra
