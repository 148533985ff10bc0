#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncpb/linalg.hpp"
#include "ncpb/model.hpp"

namespace ncpb {

// One coeff * (left ⊗ right) summand; left acts on mode 1, right on mode 2.
struct KronTerm {
    cplx coeff;
    Mat left;
    Mat right;
};

// Operator on the truncated two-mode space, stored as a sum of Kronecker
// terms. Products, adjoints, and vector application stay at per-mode cost;
// the dense matrix is materialized lazily (and cached) only when entrywise
// access is genuinely needed.
class FockOperator {
public:
    FockOperator(TruncationSpec trunc, std::string label,
                 std::vector<KronTerm> terms);

    const TruncationSpec& trunc() const { return trunc_; }
    const std::string& label() const { return label_; }
    const std::vector<KronTerm>& terms() const { return terms_; }
    Eigen::Index dim() const { return trunc_.size(); }

    // Parameters outside the validated accuracy region carry this flag; the
    // verification layer downgrades affected checks to "skipped".
    bool envelope_warning() const { return envelope_warning_; }
    void set_envelope_warning(bool w) { envelope_warning_ = w; }

    const Mat& matrix() const;          // dense, cached
    Vec apply(const Vec& v) const;
    // Per-mode LU solve; only defined for single-term operators (D, V, Theta).
    Vec apply_inverse(const Vec& v) const;
    FockOperator dagger() const;

private:
    TruncationSpec trunc_;
    std::string label_;
    std::vector<KronTerm> terms_;
    bool envelope_warning_ = false;
    mutable std::shared_ptr<const Mat> dense_;
};

FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator*(cplx c, const FockOperator& a);

FockOperator identity_op(const TruncationSpec& t);
inline FockOperator commutator(const FockOperator& a, const FockOperator& b) {
    return a * b - b * a;
}

// Interior restriction, compressed to (interior1*interior2)^2. Computing
// difference norms through this block avoids the catastrophic cancellation a
// term-by-term Gram expansion would suffer.
Mat interior_block(const FockOperator& op);
double interior_frob(const FockOperator& op);

// (lower, raise): sqrt(n) on the superdiagonal and its conjugate transpose.
std::pair<Mat, Mat> mode_ladder(int dim);

struct BosonicOps {
    FockOperator A1, A2, A1d, A2d;
};
struct XPOps {
    FockOperator x1, x2, p1, p2;
};
struct PseudoOps {
    FockOperator a1, a2, b1, b2;
};

BosonicOps build_bosonic(const TruncationSpec& t);

// x_i = sqrt(hbar/2M omega)(A_i + A_i^dag), p_i = -i sqrt(hbar M omega/2)(A_i - A_i^dag).
XPOps build_xp(const TruncationSpec& t, const DerivedConstants& d,
               const ModelParams& p);

// Shifted-boson route: a_i = â_i + nu_i, b_i = â_i^dag + conj(mu_i), with the
// rotated pair â1 = (A1+iA2)/√2, â2 = -(iA1+A2)/√2.
PseudoOps build_pseudo(const TruncationSpec& t, const DerivedConstants& d);

// Component-wise route, written directly in terms of A_i, A_i^dag and the
// betas. Agrees with build_pseudo entrywise (exactly, same arithmetic).
PseudoOps build_pseudo_literal(const TruncationSpec& t, const DerivedConstants& d);

inline FockOperator build_number(const FockOperator& a, const FockOperator& b) {
    return b * a;
}

// Canonical-variable assembly: quadratic x/p terms plus the four linear
// couplings, Bopp-shifted. Built without any pseudo-boson machinery, so it
// serves as the independent oracle for everything downstream.
FockOperator build_H_canonical(const ModelParams& p, const DerivedConstants& d,
                               const TruncationSpec& t);

// gamma1 N1 + gamma2 N2 + gamma0. Must agree with build_H_canonical on the
// interior; that agreement validates every derived constant end-to-end.
FockOperator build_H_pseudoboson(const DerivedConstants& d,
                                 const TruncationSpec& t);

// Displacement exp(sum_i conj(z_i) â_i - z_i â_i^dag); unitary.
FockOperator build_D(cplx z1, cplx z2, const TruncationSpec& t);

// Generalized displacement exp(sum_i conj(mu_i) â_i - nu_i â_i^dag).
// V(nu,nu) = D(nu); for nu != mu it is non-unitary with norm growing in dim.
FockOperator build_V(const CPair& nu, const CPair& mu, const TruncationSpec& t);

// Exact inverse of build_V (reversed per-mode factors with negated
// exponents), bypassing any linear solve.
FockOperator build_V_inverse(const CPair& nu, const CPair& mu,
                             const TruncationSpec& t);

// T(nu,mu) = V(nu,mu) V^{-1}(mu,nu).
FockOperator build_T(const CPair& nu, const CPair& mu, const TruncationSpec& t);

// Metric operator: per computational mode exp(w R) exp(conj(w) L) = S S^dag,
// hence exactly self-adjoint and positive definite under truncation, times a
// scalar fixed operationally by <phi0, Theta phi0> = 1.
FockOperator build_Theta(const CPair& nu, const CPair& mu,
                         const TruncationSpec& t);

// Diagonal 0/1 selector of the interior states.
FockOperator interior_projector(const TruncationSpec& t);

// Accuracy envelope for the non-unitary exponentials.
bool within_envelope(const CPair& nu, const CPair& mu);

} // namespace ncpb
