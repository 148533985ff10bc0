#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncpb/linalg.hpp"
#include "ncpb/model.hpp"
#include "ncpb/operators.hpp"

namespace ncpb {

struct FockState {
    Vec coeffs;
    TruncationSpec trunc;
    std::string tag;

    double norm() const { return coeffs.norm(); }
    // Fraction of |coeffs|^2 carried by non-interior levels; the truncation
    // honesty gate for assertions.
    double tail_mass() const;
};

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string status;   // "pass", "fail", or "skipped: <reason>"
    std::string context;
};

CheckResult make_check(const std::string& name, double residual,
                       double tolerance, const std::string& context);
CheckResult make_skipped(const std::string& name, const std::string& reason,
                         const std::string& context);

struct VerificationReport {
    std::vector<CheckResult> checks;
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void merge(const VerificationReport& other);
    bool all_pass() const;
    bool any_skipped() const;
};

enum class FamilyKind { phi, psi };

struct LadderFamily {
    FamilyKind kind;
    int n_max = 0;
    bool triangular = false;   // restrict to n1+n2 <= n_max
    TruncationSpec trunc;
    DerivedConstants derived;
    std::map<std::pair<int, int>, FockState> states;

    const FockState& at(int n1, int n2) const;
};

FockState fock_e0(const TruncationSpec& t);

// D(nu)e0. Throws TruncationError when the annihilation residuals exceed
// 1e-9, the sign that the truncation is too small for these shifts.
FockState vacuum_phi(const DerivedConstants& d, const TruncationSpec& t);

// D(mu)e0 scaled so <phi0, psi0> = 1 exactly. Throws NumericError when the
// raw overlap falls below 1e-12 in magnitude.
FockState vacuum_psi(const DerivedConstants& d, const TruncationSpec& t);

// phi: repeated b_i, psi: repeated a_i^dag, both with 1/sqrt(n!) weights.
// Requires n_max <= min(dim)-margin-1.
LadderFamily ladder_family(FamilyKind kind, const DerivedConstants& d,
                           const TruncationSpec& t, int n_max,
                           bool triangular = false);

// Same family through the generalized displacement: V(nu,mu) (phi) or
// V(mu,nu) (psi) applied to the rotated number basis, then one global scalar
// fitted at n=(0,0) against the ladder vacuum.
LadderFamily family_via_V(FamilyKind kind, const DerivedConstants& d,
                          const TruncationSpec& t, int n_max);

// Rotated-pair number basis e_n = (â1†)^{n1}(â2†)^{n2} e0 / sqrt(n1! n2!).
std::map<std::pair<int, int>, FockState> hatted_basis(const TruncationSpec& t,
                                                      int n_max,
                                                      bool triangular = false);

// G[(n),(m)] = <phi_n, psi_m> over the square index range; identity up to
// truncation noise.
Mat gram(const LadderFamily& phi, const LadderFamily& psi);

// Partial sums S_N = sum_{n1+n2<=N} <f,phi_n><psi_n,g>, returned for
// N = 0..N_max. Families must be triangular with n_max >= N_max.
std::vector<cplx> quasi_basis_partial(const FockState& f, const FockState& g,
                                      const LadderFamily& phi,
                                      const LadderFamily& psi, int N_max);

struct RieszRow {
    int k;
    double norm_phi;
    double norm_psi;
    double product;
};

// Norm products along the rays n=(k,0) and n=(0,k). Bounded for a Riesz
// pair; growth is the finite-dimensional signature of its failure.
struct RieszTable {
    std::vector<RieszRow> ray1;   // (k,0)
    std::vector<RieszRow> ray2;   // (0,k)
};

RieszTable riesz_diagnostic(const DerivedConstants& d, const TruncationSpec& t,
                            int k_max);

// Normalized coherent vector D(-z)e0 in the rotated modes; Gaussian in
// position space, hence a safe dense-domain test vector.
FockState coherent_test_vector(cplx z1, cplx z2, const TruncationSpec& t);

struct MetricCheckOptions {
    double tol_family = 1e-8;
    double tol_conjugacy = 1e-8;
    double tol_selfadjoint = 1e-8;
    std::uint64_t seed = 12345;
    int n_samples = 100;
};

// psi_n vs Theta phi_n, state-level Theta-conjugacy of (a_j, b_j^dag) with
// Theta^{-1} applied via per-mode solve, self-adjointness, positivity of
// <f, Theta f> on seeded samples.
VerificationReport metric_check(const LadderFamily& phi, const LadderFamily& psi,
                                const FockOperator& Theta,
                                const MetricCheckOptions& opt = {});

} // namespace ncpb
