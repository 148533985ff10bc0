#include "ncpb/model.hpp"

#include <cmath>

#include "ncpb/errors.hpp"

namespace ncpb {

bool ModelParams::alphas_real(double tol) const {
    return std::abs(alpha1.imag()) <= tol && std::abs(alpha2.imag()) <= tol &&
           std::abs(alpha3.imag()) <= tol && std::abs(alpha4.imag()) <= tol;
}

void validate(const ModelParams& p) {
    auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
    if (bad(p.m))
        throw ConfigError("m must be strictly positive");
    if (bad(p.omega))
        throw ConfigError("omega must be strictly positive");
    if (bad(p.hbar))
        throw ConfigError("hbar must be strictly positive");
    if (!std::isfinite(p.theta))
        throw ConfigError("theta must be finite");
}

void validate(const TruncationSpec& t) {
    if (t.margin < 1)
        throw TruncationError("margin must be at least 1");
    if (t.dim1 < t.margin + 2 || t.dim2 < t.margin + 2)
        throw TruncationError("each mode dimension must be at least margin+2");
}

DerivedConstants derive_constants(const ModelParams& p, const DeriveHooks& hooks) {
    validate(p);
    const double m = p.m, w = p.omega, hb = p.hbar, th = p.theta;

    DerivedConstants d;
    d.Omega = std::sqrt(4.0 * hb * hb + th * th * m * m * w * w);
    d.M = 2.0 * m * hb / d.Omega;
    d.lambda = std::sqrt(d.M * w / hb);
    d.alphas_real = p.alphas_real();

    // Omega > |theta m omega|, so both denominators below are positive.
    const double Op = d.Omega + th * m * w;
    const double Om = d.Omega - th * m * w;
    const double s = std::sqrt(2.0 * m * d.Omega * w * w * w);
    const double c = 2.0 * hb * m * w;
    const cplx a1 = p.alpha1, a2 = p.alpha2, a3 = p.alpha3, a4 = p.alpha4;

    cplx num2 = Om * (a1 - a2) + c * (a3 + a4);
    if (hooks.flip_beta2_sign)
        num2 = -num2;

    d.beta1 = (Op * (a1 + a2) + c * (a3 - a4)) / (Op * s);
    d.beta2 = num2 / (Om * s);
    d.beta3 = (Op * (a1 - a2) - c * (a3 + a4)) / (Op * s);
    d.beta4 = (-Om * (a1 + a2) + c * (a3 - a4)) / (Om * s);

    d.gamma1 = 0.5 * w * Op;
    d.gamma2 = 0.5 * w * Om;
    d.gamma0 = 0.5 * w * (d.Omega * (1.0 + d.beta1 * d.beta3 - d.beta2 * d.beta4)
                          + th * m * w * (d.beta1 * d.beta3 + d.beta2 * d.beta4));

    d.nu1 = cplx(0, 1) * d.beta1;
    d.nu2 = d.beta2;
    d.mu1 = -cplx(0, 1) * std::conj(d.beta3);
    d.mu2 = std::conj(d.beta4);

    // Gaussian coherent-state overlap: <D(nu)e0, D(mu)e0> =
    // exp(-|nu|^2/2 - |mu|^2/2 + sum conj(nu_i) mu_i), inverted in closed form.
    auto ex = [](cplx nu, cplx mu) {
        return 0.5 * std::norm(nu) + 0.5 * std::norm(mu) - std::conj(nu) * mu;
    };
    d.N_psi = std::exp(ex(d.nu1, d.mu1) + ex(d.nu2, d.mu2));

    d.n_psi_sq_alt = std::exp(std::norm(d.beta1) + std::norm(d.beta2)
                              - std::norm(d.beta3) - std::norm(d.beta4)
                              - 2.0 * (d.beta1 * d.beta2).real()
                              - 2.0 * (d.beta3 * d.beta4).real());
    return d;
}

cplx energy(const DerivedConstants& d, int n1, int n2) {
    return d.gamma1 * static_cast<double>(n1) + d.gamma2 * static_cast<double>(n2)
           + d.gamma0;
}

bool is_bosonic(const DerivedConstants& d, double tol) {
    return std::abs(d.beta1 + std::conj(d.beta3)) <= tol &&
           std::abs(d.beta2 - std::conj(d.beta4)) <= tol;
}

ModelParams reduce_to_Hhat(double A, double B, double theta) {
    ModelParams p;
    p.theta = theta;
    p.alpha1 = A;
    p.alpha2 = cplx(0, A);
    p.alpha3 = cplx(0, B);
    p.alpha4 = B;
    return p;
}

} // namespace ncpb
