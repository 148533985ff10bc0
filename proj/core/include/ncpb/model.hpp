#pragma once

#include <array>
#include <complex>

#include "ncpb/linalg.hpp"

namespace ncpb {

using CPair = std::array<cplx, 2>;

// Physical inputs: two-dimensional oscillator of mass m and frequency omega
// on a plane whose coordinates fail to commute by i*theta, plus four linear
// couplings alpha1..alpha4. The alphas are physically real; complex values
// are admitted because the broken-symmetry reduction (reduce_to_Hhat)
// substitutes imaginary ones.
struct ModelParams {
    double m = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double theta = 0.0;
    cplx alpha1{};
    cplx alpha2{};
    cplx alpha3{};
    cplx alpha4{};

    bool alphas_real(double tol = 0.0) const;
};

// Throws ConfigError unless m, omega, hbar are strictly positive and finite.
void validate(const ModelParams& p);

// Truncated two-mode Fock space: dim1 x dim2 levels, flat index n1*dim2+n2.
// The top `margin` levels of each mode are corrupted by ladder truncation;
// identities are asserted on the interior n_i <= dim_i-1-margin only.
struct TruncationSpec {
    int dim1 = 32;
    int dim2 = 32;
    int margin = 8;

    int size() const { return dim1 * dim2; }
    int interior1() const { return dim1 - margin; }
    int interior2() const { return dim2 - margin; }
    bool is_interior(int n1, int n2) const {
        return n1 < interior1() && n2 < interior2();
    }
};

// Throws TruncationError unless dim_i >= margin+2 and margin >= 1.
void validate(const TruncationSpec& t);

// Everything computable from ModelParams alone. gamma1, gamma2 are real by
// construction (imaginary part exactly zero); gamma0 picks up an imaginary
// part only through the beta products.
struct DerivedConstants {
    double Omega;       // sqrt(4 hbar^2 + theta^2 m^2 omega^2)
    double M;           // effective mass 2 m hbar / Omega
    double lambda;      // position length scale sqrt(M omega / hbar)
    cplx beta1, beta2, beta3, beta4;
    cplx gamma0, gamma1, gamma2;
    cplx nu1, nu2;      // nu = (i beta1, beta2)
    cplx mu1, mu2;      // mu = (-i conj(beta3), conj(beta4))
    cplx N_psi;         // 1 / <D(nu)e0, D(mu)e0>, closed form
    double n_psi_sq_alt; // alternative exponential expression for |N_psi|^2,
                         // reported for comparison, never used as definition
    bool alphas_real;

    CPair nu() const { return {nu1, nu2}; }
    CPair mu() const { return {mu1, mu2}; }
    CPair sigma() const { return {nu1 - mu1, nu2 - mu2}; }
};

// Fault-injection hook for the verification suite's mutation test: flipping
// the beta2 numerator sign must make the Hamiltonian-agreement check fail.
struct DeriveHooks {
    bool flip_beta2_sign = false;
};

DerivedConstants derive_constants(const ModelParams& p,
                                  const DeriveHooks& hooks = {});

// gamma1*n1 + gamma2*n2 + gamma0. Real within 1e-12 for real alphas.
cplx energy(const DerivedConstants& d, int n1, int n2);

// True iff beta1 = -conj(beta3) and beta2 = conj(beta4) within tol; then the
// shifted pair collapses to ordinary bosons (b_i = a_i^dagger).
bool is_bosonic(const DerivedConstants& d, double tol = 1e-12);

// Atomic-unit parameter set (m=omega=hbar=1) with alpha = (A, iA, iB, B),
// the substitution that turns the general Hamiltonian into the
// broken-symmetry one. theta is caller-supplied.
ModelParams reduce_to_Hhat(double A, double B, double theta = 0.0);

} // namespace ncpb
