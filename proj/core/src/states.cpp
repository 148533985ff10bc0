#include "ncpb/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncpb/errors.hpp"
#include "ncpb/rng.hpp"

namespace ncpb {

double FockState::tail_mass() const {
    const double total = coeffs.squaredNorm();
    if (total == 0.0)
        return 0.0;
    double inside = 0.0;
    for (int n1 = 0; n1 < trunc.interior1(); ++n1)
        for (int n2 = 0; n2 < trunc.interior2(); ++n2)
            inside += std::norm(coeffs(n1 * trunc.dim2 + n2));
    return (total - inside) / total;
}

CheckResult make_check(const std::string& name, double residual,
                       double tolerance, const std::string& context) {
    CheckResult c;
    c.name = name;
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    c.status = c.pass ? "pass" : "fail";
    c.context = context;
    return c;
}

CheckResult make_skipped(const std::string& name, const std::string& reason,
                         const std::string& context) {
    CheckResult c;
    c.name = name;
    c.residual = 0.0;
    c.tolerance = 0.0;
    c.pass = true;
    c.status = "skipped: " + reason;
    c.context = context;
    return c;
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

bool VerificationReport::any_skipped() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status.rfind("skipped", 0) == 0;
    });
}

const FockState& LadderFamily::at(int n1, int n2) const {
    auto it = states.find({n1, n2});
    if (it == states.end())
        throw UsageError("family state index out of range");
    return it->second;
}

FockState fock_e0(const TruncationSpec& t) {
    Vec v = Vec::Zero(t.size());
    v(0) = 1.0;
    return {std::move(v), t, "e(0,0)"};
}

FockState vacuum_phi(const DerivedConstants& d, const TruncationSpec& t) {
    FockOperator D = build_V(d.nu(), d.nu(), t);
    FockState s{D.apply(fock_e0(t).coeffs), t, "phi(0,0)"};
    PseudoOps ps = build_pseudo(t, d);
    const double r = std::max(ps.a1.apply(s.coeffs).norm(),
                              ps.a2.apply(s.coeffs).norm());
    if (r > 1e-9) {
        std::ostringstream os;
        os << "vacuum annihilation residual " << r
           << " exceeds 1e-9; increase dim1/dim2";
        throw TruncationError(os.str());
    }
    return s;
}

FockState vacuum_psi(const DerivedConstants& d, const TruncationSpec& t) {
    FockOperator Dn = build_V(d.nu(), d.nu(), t);
    FockOperator Dm = build_V(d.mu(), d.mu(), t);
    const Vec e0 = fock_e0(t).coeffs;
    const Vec phi0 = Dn.apply(e0);
    Vec w = Dm.apply(e0);
    const cplx ov = inner(phi0, w);
    if (std::abs(ov) < 1e-12)
        throw NumericError("vacuum overlap below 1e-12: normalization ill-conditioned");
    w /= ov;
    return {std::move(w), t, "psi(0,0)"};
}

namespace {

// Square (or triangular) family grown by the two raising maps with
// 1/sqrt(n!) weights: up in n2 along the n1=0 edge first, then up in n1.
std::map<std::pair<int, int>, FockState> grow_family(
    const FockOperator& up1, const FockOperator& up2, FockState vac, int n_max,
    bool triangular, const char* prefix) {
    std::map<std::pair<int, int>, FockState> fam;
    const TruncationSpec t = vac.trunc;
    auto tag = [&](int n1, int n2) {
        std::ostringstream os;
        os << prefix << "(" << n1 << "," << n2 << ")";
        return os.str();
    };
    fam[{0, 0}] = std::move(vac);
    for (int n2 = 1; n2 <= n_max; ++n2) {
        Vec v = up2.apply(fam[{0, n2 - 1}].coeffs) / std::sqrt(double(n2));
        fam[{0, n2}] = {std::move(v), t, tag(0, n2)};
    }
    for (int n1 = 1; n1 <= n_max; ++n1)
        for (int n2 = 0; n2 <= n_max; ++n2) {
            if (triangular && n1 + n2 > n_max)
                continue;
            Vec v = up1.apply(fam[{n1 - 1, n2}].coeffs) / std::sqrt(double(n1));
            fam[{n1, n2}] = {std::move(v), t, tag(n1, n2)};
        }
    if (triangular) {
        for (auto it = fam.begin(); it != fam.end();)
            it = (it->first.first + it->first.second > n_max) ? fam.erase(it)
                                                              : std::next(it);
    }
    return fam;
}

} // namespace

LadderFamily ladder_family(FamilyKind kind, const DerivedConstants& d,
                           const TruncationSpec& t, int n_max, bool triangular) {
    validate(t);
    if (n_max > std::min(t.dim1, t.dim2) - t.margin - 1)
        throw UsageError("n_max exceeds dim-margin-1 for this truncation");
    PseudoOps ps = build_pseudo(t, d);
    LadderFamily fam;
    fam.kind = kind;
    fam.n_max = n_max;
    fam.triangular = triangular;
    fam.trunc = t;
    fam.derived = d;
    if (kind == FamilyKind::phi) {
        fam.states = grow_family(ps.b1, ps.b2, vacuum_phi(d, t), n_max,
                                 triangular, "phi");
    } else {
        fam.states = grow_family(ps.a1.dagger(), ps.a2.dagger(),
                                 vacuum_psi(d, t), n_max, triangular, "psi");
    }
    return fam;
}

std::map<std::pair<int, int>, FockState> hatted_basis(const TruncationSpec& t,
                                                      int n_max,
                                                      bool triangular) {
    DerivedConstants free = derive_constants(ModelParams{});
    PseudoOps hat = build_pseudo(t, free);   // beta=0: a_i are the rotated pair
    return grow_family(hat.a1.dagger(), hat.a2.dagger(), fock_e0(t), n_max,
                       triangular, "e");
}

LadderFamily family_via_V(FamilyKind kind, const DerivedConstants& d,
                          const TruncationSpec& t, int n_max) {
    auto basis = hatted_basis(t, n_max);
    const bool phi = (kind == FamilyKind::phi);
    FockOperator V = phi ? build_V(d.nu(), d.mu(), t) : build_V(d.mu(), d.nu(), t);
    LadderFamily fam;
    fam.kind = kind;
    fam.n_max = n_max;
    fam.trunc = t;
    fam.derived = d;
    for (auto& [key, e] : basis) {
        Vec v = V.apply(e.coeffs);
        std::ostringstream os;
        os << (phi ? "phiV" : "psiV") << "(" << key.first << "," << key.second << ")";
        fam.states[key] = {std::move(v), t, os.str()};
    }
    // One global scalar aligns the whole family with the ladder construction;
    // fitted at n=(0,0) against the corresponding vacuum.
    const Vec& v00 = fam.states[{0, 0}].coeffs;
    const Vec target =
        phi ? vacuum_phi(d, t).coeffs : vacuum_psi(d, t).coeffs;
    const cplx scale = inner(v00, target) / inner(v00, v00);
    for (auto& [key, st] : fam.states)
        st.coeffs *= scale;
    return fam;
}

Mat gram(const LadderFamily& phi, const LadderFamily& psi) {
    if (phi.n_max != psi.n_max || phi.triangular || psi.triangular)
        throw UsageError("gram expects square families of equal n_max");
    const int w = phi.n_max + 1;
    Mat G(w * w, w * w);
    for (int i1 = 0; i1 < w; ++i1)
        for (int i2 = 0; i2 < w; ++i2)
            for (int j1 = 0; j1 < w; ++j1)
                for (int j2 = 0; j2 < w; ++j2)
                    G(i1 * w + i2, j1 * w + j2) =
                        inner(phi.at(i1, i2).coeffs, psi.at(j1, j2).coeffs);
    return G;
}

std::vector<cplx> quasi_basis_partial(const FockState& f, const FockState& g,
                                      const LadderFamily& phi,
                                      const LadderFamily& psi, int N_max) {
    if (!phi.triangular || !psi.triangular || phi.n_max < N_max ||
        psi.n_max < N_max)
        throw UsageError("quasi_basis_partial needs triangular families up to N_max");
    std::vector<cplx> sums(N_max + 1);
    cplx S = 0.0;
    for (int N = 0; N <= N_max; ++N) {
        for (int n1 = 0; n1 <= N; ++n1) {
            const int n2 = N - n1;
            S += inner(f.coeffs, phi.at(n1, n2).coeffs) *
                 inner(psi.at(n1, n2).coeffs, g.coeffs);
        }
        sums[N] = S;
    }
    return sums;
}

RieszTable riesz_diagnostic(const DerivedConstants& d, const TruncationSpec& t,
                            int k_max) {
    validate(t);
    if (k_max > std::min(t.dim1, t.dim2) - t.margin - 1)
        throw UsageError("k_max exceeds dim-margin-1 for this truncation");
    PseudoOps ps = build_pseudo(t, d);
    const FockState phi0 = vacuum_phi(d, t);
    const FockState psi0 = vacuum_psi(d, t);
    RieszTable table;
    for (int ray = 0; ray < 2; ++ray) {
        const FockOperator& up_phi = (ray == 0) ? ps.b1 : ps.b2;
        const FockOperator up_psi =
            (ray == 0) ? ps.a1.dagger() : ps.a2.dagger();
        Vec v = phi0.coeffs, w = psi0.coeffs;
        auto& rows = (ray == 0) ? table.ray1 : table.ray2;
        rows.push_back({0, v.norm(), w.norm(), v.norm() * w.norm()});
        for (int k = 1; k <= k_max; ++k) {
            v = up_phi.apply(v) / std::sqrt(double(k));
            w = up_psi.apply(w) / std::sqrt(double(k));
            rows.push_back({k, v.norm(), w.norm(), v.norm() * w.norm()});
        }
    }
    return table;
}

FockState coherent_test_vector(cplx z1, cplx z2, const TruncationSpec& t) {
    CPair mz{-z1, -z2};
    FockOperator D = build_V(mz, mz, t);
    std::ostringstream os;
    os << "coherent(" << z1 << "," << z2 << ")";
    return {D.apply(fock_e0(t).coeffs), t, os.str()};
}

VerificationReport metric_check(const LadderFamily& phi, const LadderFamily& psi,
                                const FockOperator& Theta,
                                const MetricCheckOptions& opt) {
    VerificationReport rep;
    const TruncationSpec& t = phi.trunc;

    double fam_res = 0.0;
    for (const auto& [key, ph] : phi.states) {
        auto it = psi.states.find(key);
        if (it == psi.states.end())
            continue;
        const Vec lhs = it->second.coeffs;
        const Vec rhs = Theta.apply(ph.coeffs);
        fam_res = std::max(fam_res, (lhs - rhs).norm() / lhs.norm());
    }
    rep.add(make_check("metric_family", fam_res, opt.tol_family,
                       "max over family of |psi_n - Theta phi_n|/|psi_n|"));

    // Theta-conjugacy on dense-domain test states: a_j f = Theta^{-1} b_j^dag Theta f.
    PseudoOps ps = build_pseudo(t, phi.derived);
    DetRng rng(opt.seed);
    std::vector<FockState> tests;
    for (int i = 0; i < 6; ++i)
        tests.push_back(coherent_test_vector(rng.disk(0.5), rng.disk(0.5), t));
    double conj_res = 0.0;
    const FockOperator b1d = ps.b1.dagger(), b2d = ps.b2.dagger();
    for (const auto& f : tests) {
        for (int j = 0; j < 2; ++j) {
            const FockOperator& aj = (j == 0) ? ps.a1 : ps.a2;
            const FockOperator& bjd = (j == 0) ? b1d : b2d;
            const Vec lhs = Theta.apply_inverse(bjd.apply(Theta.apply(f.coeffs)));
            const Vec rhs = aj.apply(f.coeffs);
            conj_res = std::max(conj_res, (lhs - rhs).norm() /
                                              std::max(lhs.norm(), rhs.norm()));
        }
    }
    rep.add(make_check("theta_conjugacy", conj_res, opt.tol_conjugacy,
                       "state-level a_j vs Theta^{-1} b_j^dag Theta on coherent states"));

    const Mat& Th = Theta.matrix();
    const double sa = (Th - Th.adjoint()).norm() / std::max(1.0, Th.norm());
    rep.add(make_check("theta_selfadjoint", sa, opt.tol_selfadjoint,
                       "relative Frobenius asymmetry of the metric"));

    double min_q = std::numeric_limits<double>::infinity();
    for (int i = 0; i < opt.n_samples; ++i) {
        Vec f(t.size());
        for (Eigen::Index k = 0; k < f.size(); ++k)
            f(k) = rng.cnormal();
        f /= f.norm();
        min_q = std::min(min_q, inner(f, Theta.apply(f)).real());
    }
    {
        std::ostringstream os;
        os << "min <f,Theta f> = " << min_q << " over " << opt.n_samples
           << " samples, seed " << opt.seed;
        rep.add(make_check("theta_positivity", std::max(0.0, -min_q), 0.0,
                           os.str()));
    }
    return rep;
}

} // namespace ncpb
