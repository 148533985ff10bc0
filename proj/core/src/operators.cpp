#include "ncpb/operators.hpp"

#include <cmath>

#include "ncpb/errors.hpp"

namespace ncpb {

namespace {

const double SQ2 = std::sqrt(2.0);

void check_same_space(const FockOperator& a, const FockOperator& b) {
    if (a.trunc().dim1 != b.trunc().dim1 || a.trunc().dim2 != b.trunc().dim2)
        throw UsageError("operator dimensions do not match");
}

} // namespace

FockOperator::FockOperator(TruncationSpec trunc, std::string label,
                           std::vector<KronTerm> terms)
    : trunc_(trunc), label_(std::move(label)), terms_(std::move(terms)) {
    validate(trunc_);
    for (const auto& t : terms_) {
        if (t.left.rows() != trunc_.dim1 || t.left.cols() != trunc_.dim1 ||
            t.right.rows() != trunc_.dim2 || t.right.cols() != trunc_.dim2)
            throw UsageError("Kronecker factor shape does not match truncation");
    }
}

const Mat& FockOperator::matrix() const {
    if (!dense_) {
        auto m = std::make_shared<Mat>(Mat::Zero(dim(), dim()));
        for (const auto& t : terms_) {
            const Eigen::Index d2 = trunc_.dim2;
            for (Eigen::Index i = 0; i < trunc_.dim1; ++i)
                for (Eigen::Index j = 0; j < trunc_.dim1; ++j) {
                    const cplx c = t.coeff * t.left(i, j);
                    if (c != cplx(0, 0))
                        m->block(i * d2, j * d2, d2, d2) += c * t.right;
                }
        }
        dense_ = std::move(m);
    }
    return *dense_;
}

Vec FockOperator::apply(const Vec& v) const {
    if (v.size() != dim())
        throw UsageError("vector length does not match operator dimension");
    const Eigen::Index d1 = trunc_.dim1, d2 = trunc_.dim2;
    // Flat index n1*dim2+n2 viewed column-major is a d2 x d1 matrix M with
    // M(n2, n1) = v(n1*d2+n2); then (L ⊗ R)v = R M L^T reflattened.
    Eigen::Map<const Mat> M(v.data(), d2, d1);
    Vec out = Vec::Zero(dim());
    Eigen::Map<Mat> O(out.data(), d2, d1);
    for (const auto& t : terms_)
        O.noalias() += t.coeff * (t.right * M * t.left.transpose());
    return out;
}

Vec FockOperator::apply_inverse(const Vec& v) const {
    if (terms_.size() != 1)
        throw UsageError("apply_inverse requires a single-term operator");
    if (v.size() != dim())
        throw UsageError("vector length does not match operator dimension");
    const auto& t = terms_[0];
    const Eigen::Index d1 = trunc_.dim1, d2 = trunc_.dim2;
    Eigen::Map<const Mat> M(v.data(), d2, d1);
    // (c L ⊗ R)^{-1} v = (1/c) R^{-1} M (L^{-1})^T, done with two mode-size LUs.
    Eigen::PartialPivLU<Mat> luL(t.left), luR(t.right);
    Mat Y = luR.solve(Mat(M));
    Mat Z = luL.solve(Y.transpose()).transpose();
    Z /= t.coeff;
    Vec out(dim());
    Eigen::Map<Mat>(out.data(), d2, d1) = Z;
    return out;
}

FockOperator FockOperator::dagger() const {
    std::vector<KronTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back({std::conj(t.coeff), t.left.adjoint(), t.right.adjoint()});
    FockOperator r(trunc_, label_ + "^dag", std::move(out));
    r.set_envelope_warning(envelope_warning_);
    return r;
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    check_same_space(a, b);
    std::vector<KronTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    FockOperator r(a.trunc(), a.label() + "+" + b.label(), std::move(terms));
    r.set_envelope_warning(a.envelope_warning() || b.envelope_warning());
    return r;
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    check_same_space(a, b);
    std::vector<KronTerm> terms = a.terms();
    for (const auto& t : b.terms())
        terms.push_back({-t.coeff, t.left, t.right});
    FockOperator r(a.trunc(), a.label() + "-" + b.label(), std::move(terms));
    r.set_envelope_warning(a.envelope_warning() || b.envelope_warning());
    return r;
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    check_same_space(a, b);
    // (L1 ⊗ R1)(L2 ⊗ R2) = (L1 L2) ⊗ (R1 R2); products stay mode-sized.
    std::vector<KronTerm> terms;
    terms.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            terms.push_back({ta.coeff * tb.coeff, ta.left * tb.left,
                             ta.right * tb.right});
    FockOperator r(a.trunc(), a.label() + "*" + b.label(), std::move(terms));
    r.set_envelope_warning(a.envelope_warning() || b.envelope_warning());
    return r;
}

FockOperator operator*(cplx c, const FockOperator& a) {
    std::vector<KronTerm> terms = a.terms();
    for (auto& t : terms)
        t.coeff *= c;
    FockOperator r(a.trunc(), a.label(), std::move(terms));
    r.set_envelope_warning(a.envelope_warning());
    return r;
}

FockOperator identity_op(const TruncationSpec& t) {
    return FockOperator(t, "I",
                        {{cplx(1, 0), Mat::Identity(t.dim1, t.dim1),
                          Mat::Identity(t.dim2, t.dim2)}});
}

Mat interior_block(const FockOperator& op) {
    const int k1 = op.trunc().interior1(), k2 = op.trunc().interior2();
    Mat out = Mat::Zero(k1 * k2, k1 * k2);
    for (const auto& t : op.terms()) {
        const Mat L = t.left.topLeftCorner(k1, k1);
        const Mat R = t.right.topLeftCorner(k2, k2);
        for (int i = 0; i < k1; ++i)
            for (int j = 0; j < k1; ++j) {
                const cplx c = t.coeff * L(i, j);
                if (c != cplx(0, 0))
                    out.block(i * k2, j * k2, k2, k2) += c * R;
            }
    }
    return out;
}

double interior_frob(const FockOperator& op) { return interior_block(op).norm(); }

std::pair<Mat, Mat> mode_ladder(int dim) {
    if (dim < 2)
        throw UsageError("mode_ladder requires dim >= 2");
    Mat lower = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {lower, lower.adjoint()};
}

BosonicOps build_bosonic(const TruncationSpec& t) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    const Mat I1 = Mat::Identity(t.dim1, t.dim1);
    const Mat I2 = Mat::Identity(t.dim2, t.dim2);
    return {FockOperator(t, "A1", {{1.0, L1, I2}}),
            FockOperator(t, "A2", {{1.0, I1, L2}}),
            FockOperator(t, "A1d", {{1.0, R1, I2}}),
            FockOperator(t, "A2d", {{1.0, I1, R2}})};
}

XPOps build_xp(const TruncationSpec& t, const DerivedConstants& d,
               const ModelParams& p) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    const Mat I1 = Mat::Identity(t.dim1, t.dim1);
    const Mat I2 = Mat::Identity(t.dim2, t.dim2);
    const double cx = std::sqrt(p.hbar / (2.0 * d.M * p.omega));
    const double cp = std::sqrt(p.hbar * d.M * p.omega / 2.0);
    const Mat x1m = cx * (L1 + R1), x2m = cx * (L2 + R2);
    const Mat p1m = cplx(0, -1) * cp * (L1 - R1);
    const Mat p2m = cplx(0, -1) * cp * (L2 - R2);
    return {FockOperator(t, "x1", {{1.0, x1m, I2}}),
            FockOperator(t, "x2", {{1.0, I1, x2m}}),
            FockOperator(t, "p1", {{1.0, p1m, I2}}),
            FockOperator(t, "p2", {{1.0, I1, p2m}})};
}

namespace {

struct HattedOps {
    FockOperator ah1, ah2, ah1d, ah2d;
};

// Rotated pair mixing the two computational modes; satisfies the bosonic
// commutation relations and diagonalizes the angular term.
HattedOps build_hatted(const TruncationSpec& t) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    const Mat I1 = Mat::Identity(t.dim1, t.dim1);
    const Mat I2 = Mat::Identity(t.dim2, t.dim2);
    const cplx i(0, 1);
    FockOperator ah1(t, "ah1", {{1.0 / SQ2, L1, I2}, {i / SQ2, I1, L2}});
    FockOperator ah2(t, "ah2", {{-i / SQ2, L1, I2}, {-1.0 / SQ2, I1, L2}});
    return {ah1, ah2, ah1.dagger(), ah2.dagger()};
}

} // namespace

PseudoOps build_pseudo(const TruncationSpec& t, const DerivedConstants& d) {
    HattedOps h = build_hatted(t);
    FockOperator I = identity_op(t);
    FockOperator a1 = h.ah1 + d.nu1 * I;
    FockOperator a2 = h.ah2 + d.nu2 * I;
    FockOperator b1 = h.ah1d + std::conj(d.mu1) * I;
    FockOperator b2 = h.ah2d + std::conj(d.mu2) * I;
    return {FockOperator(t, "a1", a1.terms()), FockOperator(t, "a2", a2.terms()),
            FockOperator(t, "b1", b1.terms()), FockOperator(t, "b2", b2.terms())};
}

PseudoOps build_pseudo_literal(const TruncationSpec& t,
                               const DerivedConstants& d) {
    BosonicOps A = build_bosonic(t);
    FockOperator I = identity_op(t);
    const cplx i(0, 1);
    FockOperator a1 =
        (cplx(1.0 / SQ2) * A.A1) + (i / SQ2 * A.A2) + (i * d.beta1 * I);
    FockOperator a2 =
        (-i / SQ2 * A.A1) + (cplx(-1.0 / SQ2) * A.A2) + (d.beta2 * I);
    FockOperator b1 =
        (cplx(1.0 / SQ2) * A.A1d) + (-i / SQ2 * A.A2d) + (i * d.beta3 * I);
    FockOperator b2 =
        (i / SQ2 * A.A1d) + (cplx(-1.0 / SQ2) * A.A2d) + (d.beta4 * I);
    return {FockOperator(t, "a1", a1.terms()), FockOperator(t, "a2", a2.terms()),
            FockOperator(t, "b1", b1.terms()), FockOperator(t, "b2", b2.terms())};
}

FockOperator build_H_canonical(const ModelParams& p, const DerivedConstants& d,
                               const TruncationSpec& t) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    const Mat I1 = Mat::Identity(t.dim1, t.dim1);
    const Mat I2 = Mat::Identity(t.dim2, t.dim2);
    const double cx = std::sqrt(p.hbar / (2.0 * d.M * p.omega));
    const double cp = std::sqrt(p.hbar * d.M * p.omega / 2.0);
    const Mat x1m = cx * (L1 + R1), x2m = cx * (L2 + R2);
    const Mat p1m = cplx(0, -1) * cp * (L1 - R1);
    const Mat p2m = cplx(0, -1) * cp * (L2 - R2);

    const double m = p.m, w = p.omega, hb = p.hbar, th = p.theta;
    const double kin = 1.0 / (2.0 * m) + m * w * w * th * th / (8.0 * hb * hb);
    const double pot = 0.5 * m * w * w;
    const double ang = m * w * w * th / (2.0 * hb);
    const cplx i(0, 1);

    std::vector<KronTerm> terms = {
        {kin, p1m * p1m, I2},
        {kin, I1, p2m * p2m},
        {pot, x1m * x1m, I2},
        {pot, I1, x2m * x2m},
        {ang, p1m, x2m},          //  x2 p1
        {-ang, x1m, p2m},         // -x1 p2
        {i * p.alpha1, x1m, I2},
        {p.alpha2, I1, x2m},
        {p.alpha3 + p.alpha2 * th / (2.0 * hb), p1m, I2},
        {i * (p.alpha4 - p.alpha1 * th / (2.0 * hb)), I1, p2m},
    };
    return FockOperator(t, "H_canonical", std::move(terms));
}

FockOperator build_H_pseudoboson(const DerivedConstants& d,
                                 const TruncationSpec& t) {
    PseudoOps ps = build_pseudo(t, d);
    FockOperator H = d.gamma1 * build_number(ps.a1, ps.b1)
                     + d.gamma2 * build_number(ps.a2, ps.b2)
                     + d.gamma0 * identity_op(t);
    return FockOperator(t, "H_pseudoboson", H.terms());
}

namespace {

Mat exp_ladder(cplx pl, cplx qr, const Mat& L, const Mat& R) {
    return matexp(pl * L + qr * R);
}

// Per-computational-mode factorization of exp(sum conj(mu_i) â_i - nu_i â_i†).
// Substituting the rotated pair turns the exponent into commuting mode-1 and
// mode-2 parts; the two-factor split per mode keeps each exponent small and
// the central scalars cancel between modes.
struct VFactors {
    Mat M1, M2;
};

VFactors v_factors(const CPair& nu, const CPair& mu, const Mat& L1, const Mat& R1,
                   const Mat& L2, const Mat& R2) {
    const cplx i(0, 1);
    const cplx m1 = std::conj(mu[0]), m2 = std::conj(mu[1]);
    VFactors f;
    f.M1 = exp_ladder(m1 / SQ2, -nu[0] / SQ2, L1, R1)
           * exp_ladder(-i * m2 / SQ2, -i * nu[1] / SQ2, L1, R1);
    f.M2 = exp_ladder(i * m1 / SQ2, i * nu[0] / SQ2, L2, R2)
           * exp_ladder(-m2 / SQ2, nu[1] / SQ2, L2, R2);
    return f;
}

// Reversed factors with negated exponents: the exact matrix inverse of
// v_factors, no linear solve involved.
VFactors v_factors_inverse(const CPair& nu, const CPair& mu, const Mat& L1,
                           const Mat& R1, const Mat& L2, const Mat& R2) {
    const cplx i(0, 1);
    const cplx m1 = std::conj(mu[0]), m2 = std::conj(mu[1]);
    VFactors f;
    f.M1 = exp_ladder(i * m2 / SQ2, i * nu[1] / SQ2, L1, R1)
           * exp_ladder(-m1 / SQ2, nu[0] / SQ2, L1, R1);
    f.M2 = exp_ladder(m2 / SQ2, -nu[1] / SQ2, L2, R2)
           * exp_ladder(-i * m1 / SQ2, -i * nu[0] / SQ2, L2, R2);
    return f;
}

} // namespace

bool within_envelope(const CPair& nu, const CPair& mu) {
    const double n = std::sqrt(std::norm(nu[0]) + std::norm(nu[1]));
    const double m = std::sqrt(std::norm(mu[0]) + std::norm(mu[1]));
    return n <= 2.0 && m <= 2.0;
}

FockOperator build_V(const CPair& nu, const CPair& mu, const TruncationSpec& t) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    VFactors f = v_factors(nu, mu, L1, R1, L2, R2);
    FockOperator V(t, "V", {{1.0, std::move(f.M1), std::move(f.M2)}});
    V.set_envelope_warning(!within_envelope(nu, mu));
    return V;
}

FockOperator build_V_inverse(const CPair& nu, const CPair& mu,
                             const TruncationSpec& t) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    VFactors f = v_factors_inverse(nu, mu, L1, R1, L2, R2);
    FockOperator V(t, "Vinv", {{1.0, std::move(f.M1), std::move(f.M2)}});
    V.set_envelope_warning(!within_envelope(nu, mu));
    return V;
}

FockOperator build_D(cplx z1, cplx z2, const TruncationSpec& t) {
    CPair z{z1, z2};
    FockOperator D = build_V(z, z, t);
    return FockOperator(t, "D", D.terms());
}

FockOperator build_T(const CPair& nu, const CPair& mu, const TruncationSpec& t) {
    FockOperator fwd = build_V(nu, mu, t);
    FockOperator inv = build_V_inverse(mu, nu, t);
    FockOperator T = fwd * inv;
    FockOperator r(t, "T", T.terms());
    r.set_envelope_warning(fwd.envelope_warning() || inv.envelope_warning());
    return r;
}

FockOperator build_Theta(const CPair& nu, const CPair& mu,
                         const TruncationSpec& t) {
    auto [L1, R1] = mode_ladder(t.dim1);
    auto [L2, R2] = mode_ladder(t.dim2);
    const cplx i(0, 1);
    const cplx s1 = nu[0] - mu[0], s2 = nu[1] - mu[1];
    // Rotated shift rewritten per computational mode.
    const cplx w1 = (s1 + i * s2) / SQ2;
    const cplx w2 = (-i * s1 - s2) / SQ2;
    // Normal-ordered factor exp(w R) exp(conj(w) L) = S S^dag per mode:
    // self-adjointness and positivity are exact, not approximate.
    Mat T1 = exp_ladder(0.0, w1, L1, R1) * exp_ladder(std::conj(w1), 0.0, L1, R1);
    Mat T2 = exp_ladder(0.0, w2, L2, R2) * exp_ladder(std::conj(w2), 0.0, L2, R2);

    // Operational normalization: <phi0, Theta phi0> = 1 with phi0 = D(nu)e0.
    FockOperator raw(t, "Theta_raw", {{1.0, T1, T2}});
    Vec e0 = Vec::Zero(t.size());
    e0(0) = 1.0;
    Vec phi0 = build_V(nu, nu, t).apply(e0);
    const double q = inner(phi0, raw.apply(phi0)).real();
    if (!(q > 0.0))
        throw NumericError("metric normalization <phi0, Theta phi0> not positive");
    FockOperator Theta(t, "Theta", {{1.0 / q, std::move(T1), std::move(T2)}});
    Theta.set_envelope_warning(!within_envelope(nu, mu));
    return Theta;
}

FockOperator interior_projector(const TruncationSpec& t) {
    Mat P1 = Mat::Zero(t.dim1, t.dim1);
    Mat P2 = Mat::Zero(t.dim2, t.dim2);
    for (int n = 0; n < t.interior1(); ++n)
        P1(n, n) = 1.0;
    for (int n = 0; n < t.interior2(); ++n)
        P2(n, n) = 1.0;
    return FockOperator(t, "P_interior", {{1.0, std::move(P1), std::move(P2)}});
}

} // namespace ncpb
