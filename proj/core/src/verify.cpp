#include "ncpb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "ncpb/operators.hpp"
#include "ncpb/position.hpp"
#include "ncpb/rng.hpp"
#include "ncpb/symmetry.hpp"

namespace ncpb {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

bool is_free(const ModelParams& p) {
    return p.theta == 0.0 && p.alpha1 == cplx(0) && p.alpha2 == cplx(0) &&
           p.alpha3 == cplx(0) && p.alpha4 == cplx(0);
}

// Full-space Frobenius norm of an operator (dense accumulation, no
// operator-times-operator dense product).
double full_frob(const FockOperator& op) { return op.matrix().norm(); }

} // namespace

std::vector<ParamSet> default_grid() {
    std::vector<ParamSet> grid;
    { // free oscillator: every shift vanishes, all families collapse to Fock
        ModelParams p;
        grid.push_back({"free", p});
    }
    { // noncommutativity only: spectrum splits, families stay bosonic
        ModelParams p;
        p.theta = 0.5;
        grid.push_back({"theta_only", p});
    }
    { // couplings tuned so b_i = a_i† survives exactly
        ModelParams p;
        p.theta = 0.3;
        p.alpha2 = 0.3;
        p.alpha3 = 0.2;
        grid.push_back({"bosonic", p});
    }
    { // generic real couplings: genuinely pseudo-bosonic
        ModelParams p;
        p.theta = 0.3;
        p.alpha1 = 0.5;
        p.alpha2 = 0.2;
        p.alpha3 = 0.1;
        p.alpha4 = -0.1;
        grid.push_back({"generic", p});
    }
    { // complex couplings from the two-parameter reduction
        grid.push_back({"hhat", reduce_to_Hhat(0.25, 0.35, 0.3)});
    }
    return grid;
}

double VerifyOptions::tol_for(const std::string& name, double fallback) const {
    auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
}

VerifyOptions VerifyOptions::from_config(const RunConfig& cfg) {
    VerifyOptions opt;
    opt.trunc = cfg.trunc;
    opt.n_max = cfg.n_max;
    opt.seed = cfg.seed;
    opt.tol = cfg.tol_overrides;
    return opt;
}

VerificationReport verify_set(const ParamSet& set, const VerifyOptions& opt,
                              const DeriveHooks& hooks) {
    VerificationReport rep;
    const ModelParams& p = set.params;
    validate(p);
    validate(opt.trunc);
    const TruncationSpec& t = opt.trunc;
    const DerivedConstants d = derive_constants(p, hooks);
    const std::string where = "set=" + set.name;

    auto add = [&](const std::string& name, double residual, double def_tol,
                   const std::string& extra = "") {
        std::string ctx = where;
        if (!extra.empty()) ctx += " " + extra;
        rep.add(make_check(name, residual, opt.tol_for(name, def_tol), ctx));
    };

    if (!within_envelope(d.nu(), d.mu())) {
        // Outside the envelope the similarity factors overflow the working
        // truncation; every tolerance below would be dishonest. Report the
        // whole set as skipped rather than as a silent pass or a noisy fail.
        static const char* names[] = {
            "vacuum_phi_residual", "vacuum_psi_residual", "commutators",
            "hamiltonian_agreement", "eigen_residual_phi", "eigen_residual_psi",
            "gram", "ladder", "tail_mass", "quasi_s20", "quasi_monotone",
            "metric_family", "theta_conjugacy", "theta_selfadjoint",
            "theta_positivity", "intertwining", "t_intertwining",
            "t_theta_consistency", "similarity",
            "v_unitary", "family_via_v", "position_l2_phi", "position_l2_psi",
            "quad_biorth", "pde_phi", "pde_psi", "pde_convergence"};
        for (const char* n : names)
            rep.add(make_skipped(n, "outside accuracy envelope", where));
        return rep;
    }

    const PseudoOps ps = build_pseudo(t, d);
    const FockOperator Hc = build_H_canonical(p, d, t);
    const FockOperator Hpb = build_H_pseudoboson(d, t);

    // -- vacua ------------------------------------------------------------
    const FockState phi0 = vacuum_phi(d, t);
    const FockState psi0 = vacuum_psi(d, t);
    {
        double r = std::max(vec_norm(ps.a1.apply(phi0.coeffs)),
                            vec_norm(ps.a2.apply(phi0.coeffs)));
        add("vacuum_phi_residual", r, 1e-9);
        const FockOperator b1d = ps.b1.dagger(), b2d = ps.b2.dagger();
        double rp = std::max(vec_norm(b1d.apply(psi0.coeffs)),
                             vec_norm(b2d.apply(psi0.coeffs))) /
                    psi0.norm();
        add("vacuum_psi_residual", rp, 1e-9);
    }

    // -- algebra on the interior block ------------------------------------
    {
        const FockOperator one = identity_op(t);
        double r = 0.0;
        r = std::max(r, interior_frob(commutator(ps.a1, ps.b1) - one));
        r = std::max(r, interior_frob(commutator(ps.a2, ps.b2) - one));
        r = std::max(r, interior_frob(commutator(ps.a1, ps.b2)));
        r = std::max(r, interior_frob(commutator(ps.a2, ps.b1)));
        r = std::max(r, interior_frob(commutator(ps.a1, ps.a2)));
        r = std::max(r, interior_frob(commutator(ps.b1, ps.b2)));
        add("commutators", r, 1e-10);
        add("hamiltonian_agreement", interior_frob(Hc - Hpb), 1e-8);
    }

    // -- eigenfamilies ------------------------------------------------------
    // Families one rung past n_max so the raising relations can be checked.
    const LadderFamily phi = ladder_family(FamilyKind::phi, d, t, opt.n_max + 1);
    const LadderFamily psi = ladder_family(FamilyKind::psi, d, t, opt.n_max + 1);
    {
        const FockOperator Hcd = Hc.dagger();
        double rphi = 0.0, rpsi = 0.0, im = 0.0;
        for (int n1 = 0; n1 <= opt.n_max; ++n1)
            for (int n2 = 0; n2 <= opt.n_max; ++n2) {
                const cplx E = energy(d, n1, n2);
                const Vec& f = phi.at(n1, n2).coeffs;
                rphi = std::max(rphi,
                                vec_norm(Hc.apply(f) - E * f) / vec_norm(f));
                const Vec& g = psi.at(n1, n2).coeffs;
                rpsi = std::max(rpsi, vec_norm(Hcd.apply(g) - std::conj(E) * g) /
                                          vec_norm(g));
                im = std::max(im, std::abs(E.imag()));
            }
        add("eigen_residual_phi", rphi, 1e-8);
        add("eigen_residual_psi", rpsi, 1e-8);
        if (d.alphas_real || set.name == "hhat") {
            // Real couplings keep the spectrum real; so does the reduction
            // map even though its couplings are complex.
            for (int n1 = 0; n1 <= 10; ++n1)
                for (int n2 = 0; n2 <= 10; ++n2)
                    im = std::max(im, std::abs(energy(d, n1, n2).imag()));
            add("energy_reality", im, 1e-10);
        }
        if (is_free(p)) {
            double r = 0.0;
            for (int n1 = 0; n1 <= opt.n_max; ++n1)
                for (int n2 = 0; n2 <= opt.n_max; ++n2)
                    r = std::max(r, std::abs(energy(d, n1, n2) -
                                             cplx(p.hbar * p.omega *
                                                  (n1 + n2 + 1))));
            add("free_spectrum", r, 1e-12);
        }
    }

    // -- biorthogonality, ladder action, truncation health ------------------
    {
        LadderFamily phiN = phi, psiN = psi;
        // gram over the n_max square only
        Mat G = Mat::Zero((opt.n_max + 1) * (opt.n_max + 1),
                          (opt.n_max + 1) * (opt.n_max + 1));
        for (int m1 = 0; m1 <= opt.n_max; ++m1)
            for (int m2 = 0; m2 <= opt.n_max; ++m2)
                for (int n1 = 0; n1 <= opt.n_max; ++n1)
                    for (int n2 = 0; n2 <= opt.n_max; ++n2)
                        G(m1 * (opt.n_max + 1) + m2,
                          n1 * (opt.n_max + 1) + n2) =
                            inner(psiN.at(m1, m2).coeffs,
                                  phiN.at(n1, n2).coeffs);
        G -= Mat::Identity(G.rows(), G.cols());
        add("gram", G.cwiseAbs().maxCoeff(), 1e-8);

        const FockOperator a1d = ps.a1.dagger(), a2d = ps.a2.dagger();
        const FockOperator b1d = ps.b1.dagger(), b2d = ps.b2.dagger();
        double r = 0.0;
        for (int n1 = 0; n1 <= opt.n_max; ++n1)
            for (int n2 = 0; n2 <= opt.n_max; ++n2) {
                const Vec& f = phi.at(n1, n2).coeffs;
                const Vec& g = psi.at(n1, n2).coeffs;
                r = std::max(r, vec_norm(ps.b1.apply(f) -
                                         std::sqrt(n1 + 1.0) *
                                             phi.at(n1 + 1, n2).coeffs));
                r = std::max(r, vec_norm(ps.b2.apply(f) -
                                         std::sqrt(n2 + 1.0) *
                                             phi.at(n1, n2 + 1).coeffs));
                r = std::max(r, vec_norm(a1d.apply(g) -
                                         std::sqrt(n1 + 1.0) *
                                             psi.at(n1 + 1, n2).coeffs));
                r = std::max(r, vec_norm(a2d.apply(g) -
                                         std::sqrt(n2 + 1.0) *
                                             psi.at(n1, n2 + 1).coeffs));
                Vec lo1 = ps.a1.apply(f);
                if (n1 > 0) lo1 -= std::sqrt(double(n1)) * phi.at(n1 - 1, n2).coeffs;
                r = std::max(r, vec_norm(lo1));
                Vec lo2 = ps.a2.apply(f);
                if (n2 > 0) lo2 -= std::sqrt(double(n2)) * phi.at(n1, n2 - 1).coeffs;
                r = std::max(r, vec_norm(lo2));
                Vec lo3 = b1d.apply(g);
                if (n1 > 0) lo3 -= std::sqrt(double(n1)) * psi.at(n1 - 1, n2).coeffs;
                r = std::max(r, vec_norm(lo3));
                Vec lo4 = b2d.apply(g);
                if (n2 > 0) lo4 -= std::sqrt(double(n2)) * psi.at(n1, n2 - 1).coeffs;
                r = std::max(r, vec_norm(lo4));
            }
        add("ladder", r, 1e-8);

        double tail = 0.0;
        for (int n1 = 0; n1 <= opt.n_max; ++n1)
            for (int n2 = 0; n2 <= opt.n_max; ++n2) {
                tail = std::max(tail, phi.at(n1, n2).tail_mass());
                tail = std::max(tail, psi.at(n1, n2).tail_mass());
            }
        add("tail_mass", tail, 1e-6);
    }

    // -- quasi-basis partial sums on seeded coherent pairs -------------------
    {
        const int N_top = 20;
        const LadderFamily phiT =
            ladder_family(FamilyKind::phi, d, t, N_top, /*triangular=*/true);
        const LadderFamily psiT =
            ladder_family(FamilyKind::psi, d, t, N_top, /*triangular=*/true);
        DetRng rng(opt.seed);
        double worst20 = 0.0, worst_mono = 0.0;
        for (int pair = 0; pair < 3; ++pair) {
            const FockState f =
                coherent_test_vector(rng.disk(0.5), rng.disk(0.5), t);
            const FockState g =
                coherent_test_vector(rng.disk(0.5), rng.disk(0.5), t);
            const cplx target = inner(f.coeffs, g.coeffs);
            const auto S = quasi_basis_partial(f, g, phiT, psiT, N_top);
            const int marks[] = {8, 12, 16, 20};
            double prev = 0.0;
            for (int k = 0; k < 4; ++k) {
                const double defect = std::abs(S[size_t(marks[k])] - target);
                if (k > 0)
                    worst_mono = std::max(worst_mono, defect - prev - 1e-12);
                prev = defect;
                if (marks[k] == 20) worst20 = std::max(worst20, defect);
            }
        }
        add("quasi_s20", worst20, 1e-6);
        add("quasi_monotone", std::max(0.0, worst_mono), 0.0,
            "defects at N=8,12,16,20 must not grow (1e-12 slack)");
    }

    // -- norm products along the (k,0) ray ----------------------------------
    {
        TruncationSpec big = t;
        big.dim1 = std::max(t.dim1, 40);
        big.dim2 = std::max(t.dim2, 40);
        const int k_max = 25;
        const RieszTable table = riesz_diagnostic(d, big, k_max);
        if (is_bosonic(d)) {
            double r = 0.0;
            for (const auto& row : table.ray1)
                r = std::max(r, std::abs(row.product - 1.0));
            add("riesz_bosonic", r, 1e-10);
        } else {
            double mono = 0.0;
            for (int k = 5; k < k_max; ++k)
                mono = std::max(mono, table.ray1[size_t(k)].product -
                                          table.ray1[size_t(k) + 1].product);
            add("riesz_monotone", std::max(0.0, mono), 0.0,
                "norm products must increase strictly for k in [5,25]");
            const double ratio =
                table.ray1[size_t(k_max)].product / table.ray1[0].product;
            add("riesz_factor", std::max(0.0, 10.0 - ratio), 0.0,
                "growth factor " + fmt(ratio) + " must be at least 10");
        }
    }

    // -- exact bosonic collapse ----------------------------------------------
    const FockOperator Theta = build_Theta(d.nu(), d.mu(), t);
    if (is_bosonic(d)) {
        double r = 0.0;
        r = std::max(r, (ps.b1.matrix() - ps.a1.matrix().adjoint())
                            .cwiseAbs()
                            .maxCoeff());
        r = std::max(r, (ps.b2.matrix() - ps.a2.matrix().adjoint())
                            .cwiseAbs()
                            .maxCoeff());
        add("bosonic_adjoint", r, 0.0, "entries must match exactly");
        add("bosonic_theta", full_frob(Theta - identity_op(t)), 1e-10);
        add("bosonic_npsi", std::abs(std::abs(d.N_psi) - 1.0), 1e-10);
    }

    // -- metric properties -----------------------------------------------------
    {
        MetricCheckOptions mopt;
        mopt.tol_family = opt.tol_for("metric_family", mopt.tol_family);
        mopt.tol_conjugacy = opt.tol_for("theta_conjugacy", mopt.tol_conjugacy);
        mopt.tol_selfadjoint =
            opt.tol_for("theta_selfadjoint", mopt.tol_selfadjoint);
        mopt.seed = opt.seed;
        LadderFamily phiSq = ladder_family(FamilyKind::phi, d, t, opt.n_max);
        LadderFamily psiSq = ladder_family(FamilyKind::psi, d, t, opt.n_max);
        VerificationReport mrep = metric_check(phiSq, psiSq, Theta, mopt);
        for (auto& c : mrep.checks) {
            c.context = where + " " + c.context;
            rep.add(c);
        }
        if (is_free(p))
            add("theta_identity_beta0", full_frob(Theta - identity_op(t)), 0.0,
                "metric must be exactly the identity when all shifts vanish");
    }

    // -- number-operator intertwining at the state level -----------------------
    {
        const FockOperator N1 = build_number(ps.a1, ps.b1);
        const FockOperator N2 = build_number(ps.a2, ps.b2);
        const FockOperator N1d = N1.dagger(), N2d = N2.dagger();
        const std::pair<const FockOperator*, const FockOperator*> npairs[] = {
            {&N1d, &N1}, {&N2d, &N2}};
        DetRng rng(opt.seed + 1);
        double r = 0.0;
        for (int s = 0; s < 6; ++s) {
            const Vec f =
                coherent_test_vector(rng.disk(0.5), rng.disk(0.5), t).coeffs;
            for (const auto& np : npairs) {
                const Vec lhs =
                    Theta.apply_inverse(np.first->apply(Theta.apply(f)));
                const Vec rhs = np.second->apply(f);
                r = std::max(r, vec_norm(lhs - rhs) /
                                    std::max(vec_norm(lhs), vec_norm(rhs)));
            }
        }
        add("intertwining", r, 1e-8);

        // Same statement through the V-ratio operator instead of the metric.
        const FockOperator Vnm = build_V(d.nu(), d.mu(), t);
        const FockOperator Vmn = build_V(d.mu(), d.nu(), t);
        DetRng rng2(opt.seed + 2);
        double rt = 0.0;
        for (int s = 0; s < 6; ++s) {
            const Vec f =
                coherent_test_vector(rng2.disk(0.5), rng2.disk(0.5), t).coeffs;
            auto Tapply = [&](const Vec& v) {
                return Vnm.apply(Vmn.apply_inverse(v));
            };
            for (const auto& np : npairs) {
                const Vec lhs = Tapply(np.first->apply(f));
                const Vec rhs = np.second->apply(Tapply(f));
                rt = std::max(rt, vec_norm(lhs - rhs) /
                                      std::max(vec_norm(lhs), vec_norm(rhs)));
            }
        }
        add("t_intertwining", rt, 1e-8);

        // Theta is proportional to the swapped-argument ratio operator; the
        // proportionality constant absorbs the unit-norm vacuum convention,
        // so it is fitted once on phi_0 and then held fixed.
        const FockOperator Tswap = build_T(d.mu(), d.nu(), t);
        const cplx rho = inner(phi0.coeffs, Theta.apply(phi0.coeffs)) /
                         inner(phi0.coeffs, Tswap.apply(phi0.coeffs));
        DetRng rng3(opt.seed + 3);
        double rc = 0.0;
        for (int s = 0; s < 6; ++s) {
            const Vec f =
                coherent_test_vector(rng3.disk(0.5), rng3.disk(0.5), t).coeffs;
            const Vec th = Theta.apply(f);
            const Vec tv = rho * Tswap.apply(f);
            rc = std::max(rc, vec_norm(th - tv) /
                                  std::max(vec_norm(th), vec_norm(tv)));
        }
        add("t_theta_consistency", rc, 1e-8,
            "scalar ratio to N_psi has magnitude " +
                fmt(std::abs(rho / d.N_psi)));
    }

    // -- similarity transport of the rotated modes ------------------------------
    {
        const FockOperator Vnm = build_V(d.nu(), d.mu(), t);
        const FockOperator Vmn = build_V(d.mu(), d.nu(), t);
        const PseudoOps hat = build_pseudo(t, derive_constants(ModelParams{}));
        const FockOperator ah1 = hat.a1, ah2 = hat.a2;
        const FockOperator ah1d = ah1.dagger(), ah2d = ah2.dagger();
        const FockOperator a1d = ps.a1.dagger(), a2d = ps.a2.dagger();
        const FockOperator b1d = ps.b1.dagger(), b2d = ps.b2.dagger();
        const auto hatfam = hatted_basis(t, opt.n_max);
        struct Rel {
            const FockOperator* V;
            const FockOperator* inner_op;
            const FockOperator* outer_op;
        };
        // X V e = V x e for the four transported pairs (inverse-free form)
        const Rel rels[] = {
            {&Vnm, &ah1, &ps.a1},  {&Vnm, &ah2, &ps.a2},
            {&Vnm, &ah1d, &ps.b1}, {&Vnm, &ah2d, &ps.b2},
            {&Vmn, &ah1d, &a1d},   {&Vmn, &ah2d, &a2d},
            {&Vmn, &ah1, &b1d},    {&Vmn, &ah2, &b2d},
        };
        double r = 0.0;
        for (int n1 = 0; n1 <= opt.n_max; ++n1)
            for (int n2 = 0; n2 <= opt.n_max; ++n2) {
                const Vec& e = hatfam.at({n1, n2}).coeffs;
                for (const Rel& rel : rels) {
                    const Vec base = rel.V->apply(e);
                    const Vec lhs = rel.outer_op->apply(base);
                    const Vec rhs = rel.V->apply(rel.inner_op->apply(e));
                    r = std::max(r, vec_norm(lhs - rhs) / vec_norm(base));
                }
            }
        add("similarity", r, 1e-8);

        const FockOperator D = build_D(d.nu1, d.nu2, t);
        add("v_unitary", full_frob(D * D.dagger() - identity_op(t)), 1e-10,
            "equal-argument transport must stay unitary");
    }

    // -- families through the transport operator ----------------------------------
    {
        const LadderFamily phiV =
            family_via_V(FamilyKind::phi, d, t, opt.n_max);
        const LadderFamily psiV =
            family_via_V(FamilyKind::psi, d, t, opt.n_max);
        const LadderFamily phiSq =
            ladder_family(FamilyKind::phi, d, t, opt.n_max);
        const LadderFamily psiSq =
            ladder_family(FamilyKind::psi, d, t, opt.n_max);
        double r = 0.0;
        for (int n1 = 0; n1 <= opt.n_max; ++n1)
            for (int n2 = 0; n2 <= opt.n_max; ++n2) {
                r = std::max(r, vec_norm(phiV.at(n1, n2).coeffs -
                                         phiSq.at(n1, n2).coeffs) /
                                    phiSq.at(n1, n2).norm());
                r = std::max(r, vec_norm(psiV.at(n1, n2).coeffs -
                                         psiSq.at(n1, n2).coeffs) /
                                    psiSq.at(n1, n2).norm());
            }
        add("family_via_v", r, 1e-7);
    }

    // -- antilinear symmetry -------------------------------------------------
    {
        const AntilinearSymmetry S = make_pt_minus(t);
        if (d.alphas_real) {
            add("pt_defect", pt_defect(Hc, S), 1e-12);
        } else {
            rep.add(make_skipped("pt_defect",
                                 "couplings are not all real", where));
        }
        LadderFamily phiSq = ladder_family(FamilyKind::phi, d, t, opt.n_max);
        LadderFamily psiSq = ladder_family(FamilyKind::psi, d, t, opt.n_max);
        VerificationReport prep;
        prep.merge(pt_eigenstate_check(phiSq, S,
                                       opt.tol_for("pt_eigenstate_phi", 1e-8)));
        prep.merge(pt_eigenstate_check(psiSq, S,
                                       opt.tol_for("pt_eigenstate_psi", 1e-8)));
        for (auto& c : prep.checks) {
            c.context = where + " " + c.context;
            rep.add(c);
        }
    }

    // -- position representation ----------------------------------------------
    {
        const double L6 = 6.0 / d.lambda, L4 = 4.0 / d.lambda;
        const GridSpec g6{-L6, L6, 201};
        const auto [phi_cf, psi_cf] = closed_form_vacua(d, g6);
        const GridFunction phi_syn = synthesize(phi0, g6, d);
        const GridFunction psi_syn = synthesize(psi0, g6, d);
        auto aligned_rel = [&](const GridFunction& f, const GridFunction& cf) {
            const cplx s = overlap(cf, f) / overlap(cf, cf);
            const GridFunction diff{f.grid, f.values - s * cf.values};
            return grid_norm(diff) / grid_norm(f);
        };
        add("position_l2_phi", aligned_rel(phi_syn, phi_cf), 1e-6);
        add("position_l2_psi", aligned_rel(psi_syn, psi_cf), 1e-6);

        // quadrature biorthogonality of the synthesized vacua
        add("quad_biorth", std::abs(overlap(psi_syn, phi_syn) - cplx(1.0)),
            1e-5);

        const GridSpec g4{-L4, L4, 201};
        const GridSpec g4f{-L4, L4, 401};
        const auto [phi4, psi4] = closed_form_vacua(d, g4);
        const auto [phi4f, psi4f] = closed_form_vacua(d, g4f);
        const PdeResult rp = pde_residual(phi4, d.nu(), d.lambda);
        const PdeResult rs = pde_residual(psi4, d.mu(), d.lambda);
        const PdeResult rpf = pde_residual(phi4f, d.nu(), d.lambda);
        const PdeResult rsf = pde_residual(psi4f, d.mu(), d.lambda);
        add("pde_phi", rp.residual, 1e-3);
        add("pde_psi", rs.residual, 1e-3);
        const double ratio =
            std::min(rp.residual / rpf.residual, rs.residual / rsf.residual);
        add("pde_convergence", std::max(0.0, 3.0 - ratio), 0.0,
            "halving the step must shrink the defect ~4x; measured ratio " +
                fmt(ratio));
    }

    return rep;
}

VerificationReport verify_grid(const VerifyOptions& opt) {
    VerificationReport rep;
    for (const ParamSet& set : default_grid()) rep.merge(verify_set(set, opt));

    // A symmetry-broken companion point: the defect must be macroscopic.
    {
        validate(opt.trunc);
        const ModelParams p = reduce_to_Hhat(1.0, 0.5, 0.3);
        const DerivedConstants d = derive_constants(p);
        const FockOperator Hc = build_H_canonical(p, d, opt.trunc);
        const double defect = pt_defect(Hc, make_pt_minus(opt.trunc));
        rep.add(make_check("pt_broken", std::max(0.0, 0.01 - defect),
                           opt.tol_for("pt_broken", 0.0),
                           "set=hhat_broken defect " + fmt(defect) +
                               " must exceed 0.01"));
    }
    return rep;
}

namespace {

struct CriterionDef {
    int id;
    const char* title;
    std::vector<std::string> checks;
};

const std::vector<CriterionDef>& criterion_table() {
    static const std::vector<CriterionDef> table = {
        {1, "pseudo-bosonic commutation relations on the interior block",
         {"commutators"}},
        {2, "canonical and number-operator Hamiltonians agree",
         {"hamiltonian_agreement"}},
        {3, "eigenvalue relations and spectrum structure",
         {"eigen_residual_phi", "eigen_residual_psi", "free_spectrum",
          "energy_reality"}},
        {4, "biorthogonality of the two families", {"gram"}},
        {5, "ladder action on both families", {"ladder"}},
        {6, "quasi-basis resolution on coherent pairs",
         {"quasi_s20", "quasi_monotone"}},
        {7, "norm products: bounded for bosonic, growing otherwise",
         {"riesz_bosonic", "riesz_monotone", "riesz_factor"}},
        {8, "exact bosonic collapse of the pair structure",
         {"bosonic_adjoint", "bosonic_theta", "bosonic_npsi"}},
        {9, "metric operator: families, conjugacy, positivity",
         {"metric_family", "theta_conjugacy", "theta_selfadjoint",
          "theta_positivity", "theta_identity_beta0", "intertwining"}},
        {10, "antilinear symmetry: exact for real couplings, broken otherwise",
         {"pt_defect", "pt_broken", "pt_eigenstate_phi", "pt_eigenstate_psi"}},
        {11, "position-space vacua: synthesis, quadrature, defining equations",
         {"position_l2_phi", "position_l2_psi", "quad_biorth", "pde_phi",
          "pde_psi", "pde_convergence"}},
        {12, "similarity transport between rotated and pseudo-bosonic modes",
         {"v_unitary", "similarity", "family_via_v", "t_intertwining",
          "t_theta_consistency"}},
    };
    return table;
}

} // namespace

std::vector<CriterionResult> acceptance_criteria(const VerifyOptions& opt) {
    const VerificationReport rep = verify_grid(opt);
    std::vector<CriterionResult> out;
    for (const CriterionDef& def : criterion_table()) {
        CriterionResult res;
        res.id = def.id;
        res.title = def.title;
        res.pass = true;
        int hits = 0;
        double worst_margin = -1.0;   // residual - tolerance, most binding row
        const CheckResult* binding = nullptr;
        for (const CheckResult& c : rep.checks) {
            if (std::find(def.checks.begin(), def.checks.end(), c.name) ==
                def.checks.end())
                continue;
            ++hits;
            if (c.status.rfind("skipped", 0) == 0) continue;
            if (!c.pass) res.pass = false;
            const double margin = c.residual - c.tolerance;
            if (binding == nullptr || margin > worst_margin) {
                worst_margin = margin;
                binding = &c;
            }
        }
        if (hits == 0) {
            res.pass = false;
            res.detail = "no check rows produced";
        } else if (binding == nullptr) {
            res.detail = "all rows skipped";
        } else {
            std::ostringstream os;
            os.precision(3);
            os << "binding " << binding->name << " residual "
               << binding->residual << " (tol " << binding->tolerance << ", "
               << binding->context << ")";
            res.detail = os.str();
        }
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace ncpb
