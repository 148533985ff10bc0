#include <doctest.h>

#include <cmath>
#include <complex>

#include "ncpb/errors.hpp"
#include "ncpb/model.hpp"
#include "ncpb/operators.hpp"
#include "ncpb/rng.hpp"
#include "ncpb/states.hpp"

using namespace ncpb;

namespace {
const cplx I1(0.0, 1.0);

ModelParams generic_params() {
    ModelParams p;
    p.theta = 0.3;
    p.alpha1 = 0.5;
    p.alpha2 = 0.2;
    p.alpha3 = 0.1;
    p.alpha4 = -0.1;
    return p;
}

double full_frob(const FockOperator& op) { return op.matrix().norm(); }

// Largest singular value by power iteration on V^dag V, using only apply().
double op_norm_estimate(const FockOperator& V, int iters = 80) {
    FockOperator Vd = V.dagger();
    Vec v = Vec::Ones(V.dim());
    v.normalize();
    double sq = 0.0;
    for (int i = 0; i < iters; ++i) {
        v = Vd.apply(V.apply(v));
        sq = v.norm();
        v /= sq;
    }
    return std::sqrt(sq);
}

int flat(const TruncationSpec& t, int n1, int n2) { return n1 * t.dim2 + n2; }
}   // namespace

TEST_CASE("mode_ladder matrices") {
    auto [l2, r2] = mode_ladder(2);
    CHECK(l2(0, 1) == cplx(1.0));
    CHECK(l2(0, 0) == cplx(0.0));
    CHECK(l2(1, 0) == cplx(0.0));
    CHECK(l2(1, 1) == cplx(0.0));
    CHECK((r2 - l2.adjoint()).norm() == 0.0);

    auto [l4, r4] = mode_ladder(4);
    CHECK(l4(0, 1) == cplx(1.0));
    CHECK(l4(1, 2) == cplx(std::sqrt(2.0)));
    CHECK(l4(2, 3) == cplx(std::sqrt(3.0)));

    // [lower, raise] is the identity except the trapped corner -(dim-1);
    // diagonal entries are sqrt(n)^2 differences, so allow ulp-level slack
    Mat c = l4 * r4 - r4 * l4;
    CHECK(std::abs(c(0, 0) - cplx(1.0)) == 0.0);
    CHECK(std::abs(c(1, 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(c(2, 2) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(c(3, 3) + cplx(3.0)) < 4e-15);
    c.diagonal().setZero();
    CHECK(c.norm() == 0.0);

    CHECK_THROWS_AS(mode_ladder(1), UsageError);
}

TEST_CASE("bosonic mode operators act on the expected flat indices") {
    TruncationSpec t{4, 4, 1};
    BosonicOps B = build_bosonic(t);

    Vec e01 = Vec::Zero(t.size());
    e01(flat(t, 0, 1)) = 1.0;
    Vec out = B.A2.apply(e01);
    CHECK(std::abs(out(flat(t, 0, 0)) - cplx(1.0)) == 0.0);
    out(flat(t, 0, 0)) = 0.0;
    CHECK(out.norm() == 0.0);

    // A1 annihilates every (0, n2)
    for (int n2 = 0; n2 < t.dim2; ++n2) {
        Vec e = Vec::Zero(t.size());
        e(flat(t, 0, n2)) = 1.0;
        CHECK(B.A1.apply(e).norm() == 0.0);
    }

    // distinct modes commute exactly, truncation included
    CHECK(full_frob(commutator(B.A1, B.A2)) == 0.0);
    CHECK(full_frob(commutator(B.A1, B.A2d)) == 0.0);
}

TEST_CASE("position and momentum quadratures") {
    ModelParams p;   // free: M = 1, lambda = 1
    DerivedConstants d = derive_constants(p);
    TruncationSpec t{8, 8, 2};
    XPOps xp = build_xp(t, d, p);

    FockOperator c11 = commutator(xp.x1, xp.p1) -
                       cplx(0.0, p.hbar) * identity_op(t);
    CHECK(interior_frob(c11) < 1e-13);
    CHECK(full_frob(commutator(xp.x1, xp.x2)) == 0.0);
    CHECK(full_frob(commutator(xp.p1, xp.p2)) == 0.0);
    CHECK(interior_frob(commutator(xp.x1, xp.p2))  < 1e-13);

    // x1 = (A1 + A1d)/sqrt(2) at these parameters: entries sqrt(n/2)
    const Mat& X = xp.x1.matrix();
    CHECK(std::abs(X(flat(t, 0, 0), flat(t, 1, 0)) -
                   cplx(std::sqrt(0.5))) < 1e-15);
    CHECK(std::abs(X(flat(t, 2, 3), flat(t, 1, 3)) -
                   cplx(1.0)) < 1e-15);
    CHECK(std::abs(X(flat(t, 1, 0), flat(t, 2, 0)) -
                   cplx(1.0)) < 1e-15);
}

TEST_CASE("shifted pair reduces to ordinary bosons at zero couplings") {
    ModelParams p;
    p.theta = 0.0;
    DerivedConstants d = derive_constants(p);
    TruncationSpec t{6, 6, 1};
    PseudoOps ops = build_pseudo(t, d);
    CHECK((ops.b1.matrix() - ops.a1.dagger().matrix()).norm() == 0.0);
    CHECK((ops.b2.matrix() - ops.a2.dagger().matrix()).norm() == 0.0);
}

TEST_CASE("two assembly routes for the shifted pair agree entrywise") {
    DerivedConstants d = derive_constants(generic_params());
    TruncationSpec t{8, 8, 2};
    PseudoOps u = build_pseudo(t, d);
    PseudoOps v = build_pseudo_literal(t, d);
    CHECK((u.a1.matrix() - v.a1.matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u.a2.matrix() - v.a2.matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u.b1.matrix() - v.b1.matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u.b2.matrix() - v.b2.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("deformed commutation relations on the interior") {
    DerivedConstants d = derive_constants(generic_params());
    TruncationSpec t{10, 10, 2};
    PseudoOps ops = build_pseudo(t, d);
    FockOperator one = identity_op(t);

    CHECK(interior_frob(commutator(ops.a1, ops.b1) - one) < 1e-13);
    CHECK(interior_frob(commutator(ops.a2, ops.b2) - one) < 1e-13);
    CHECK(interior_frob(commutator(ops.a1, ops.a2)) < 1e-13);
    CHECK(interior_frob(commutator(ops.b1, ops.b2)) < 1e-13);

    // cross-mode terms cancel down to sqrt(n)^2 rounding once the guard
    // band absorbs the truncated ladder corner
    TruncationSpec small{4, 4, 1};
    PseudoOps so = build_pseudo(small, d);
    CHECK(interior_frob(commutator(so.a1, so.b2)) < 1e-14);
    CHECK(interior_frob(commutator(so.a2, so.b1)) < 1e-14);
}

TEST_CASE("number operators count rotated quanta") {
    ModelParams p;   // free parameters: a_i equals the rotated lowering op
    DerivedConstants d = derive_constants(p);
    // a hatted state of total quanta n1+n2 occupies flat levels up to
    // n1+n2, so keep 2*n_max below the dimension
    TruncationSpec t{12, 12, 2};
    PseudoOps ops = build_pseudo(t, d);
    FockOperator N1 = build_number(ops.a1, ops.b1);

    auto basis = hatted_basis(t, 4);
    for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2) {
            const Vec& v = basis.at({n1, n2}).coeffs;
            CHECK((N1.apply(v) - double(n1) * v).norm() < 1e-13);
        }

    // interior trace: sum of n1 over the 3x3 interior grid of a 4x4 space
    TruncationSpec s{4, 4, 1};
    PseudoOps so = build_pseudo(s, d);
    FockOperator Ns = build_number(so.a1, so.b1);
    Mat blk = interior_block(Ns);
    CHECK(std::abs(blk.trace() - cplx(9.0)) < 1e-12);
}

TEST_CASE("number operator annihilates the shifted vacuum") {
    DerivedConstants d = derive_constants(generic_params());
    TruncationSpec t{24, 24, 6};
    PseudoOps ops = build_pseudo(t, d);
    FockState phi0 = vacuum_phi(d, t);
    FockOperator N1 = build_number(ops.a1, ops.b1);
    CHECK(N1.apply(phi0.coeffs).norm() < 1e-9);
}

TEST_CASE("canonical Hamiltonian: free spectrum on the interior") {
    ModelParams p;
    DerivedConstants d = derive_constants(p);
    TruncationSpec t{8, 8, 2};
    FockOperator H = build_H_canonical(p, d, t);
    for (int n1 = 0; n1 < t.interior1(); ++n1)
        for (int n2 = 0; n2 < t.interior2(); ++n2) {
            Vec e = Vec::Zero(t.size());
            e(flat(t, n1, n2)) = 1.0;
            Vec r = H.apply(e) - double(n1 + n2 + 1) * e;
            // drop corrupted exterior components before judging
            for (int m1 = 0; m1 < t.dim1; ++m1)
                for (int m2 = 0; m2 < t.dim2; ++m2)
                    if (!t.is_interior(m1, m2))
                        r(flat(t, m1, m2)) = 0.0;
            CHECK(r.norm() < 1e-13);
        }
}

TEST_CASE("canonical Hamiltonian is non-normal once couplings break symmetry") {
    ModelParams p = generic_params();
    DerivedConstants d = derive_constants(p);
    TruncationSpec t{6, 6, 1};
    FockOperator H = build_H_canonical(p, d, t);
    const Mat& Hm = H.matrix();
    CHECK((Hm * Hm.adjoint() - Hm.adjoint() * Hm).norm() > 1e-6);
}

TEST_CASE("noncommutative frequencies show up in the hatted basis") {
    ModelParams p;
    p.theta = 0.5;
    DerivedConstants d = derive_constants(p);
    TruncationSpec t{16, 16, 2};
    FockOperator H = build_H_canonical(p, d, t);
    auto basis = hatted_basis(t, 1);
    const Vec& e10 = basis.at({1, 0}).coeffs;
    cplx E = d.gamma1 + d.gamma0;
    CHECK((H.apply(e10) - E * e10).norm() < 1e-10);
}

TEST_CASE("canonical and pseudo-boson Hamiltonians agree on the interior") {
    TruncationSpec t{16, 16, 4};

    ModelParams free;
    DerivedConstants df = derive_constants(free);
    CHECK(interior_frob(build_H_canonical(free, df, t) -
                        build_H_pseudoboson(df, t)) < 1e-13);

    ModelParams gen = generic_params();
    DerivedConstants dg = derive_constants(gen);
    CHECK(interior_frob(build_H_canonical(gen, dg, t) -
                        build_H_pseudoboson(dg, t)) < 1e-8);

    ModelParams hh = reduce_to_Hhat(0.25, 0.35, 0.3);
    DerivedConstants dh = derive_constants(hh);
    CHECK(interior_frob(build_H_canonical(hh, dh, t) -
                        build_H_pseudoboson(dh, t)) < 1e-8);
}

TEST_CASE("mutated constants break the Hamiltonian agreement") {
    ModelParams p = generic_params();
    DeriveHooks h;
    h.flip_beta2_sign = true;
    DerivedConstants bad = derive_constants(p, h);
    TruncationSpec t{16, 16, 4};
    CHECK(interior_frob(build_H_canonical(p, bad, t) -
                        build_H_pseudoboson(bad, t)) > 1e-4);
}

TEST_CASE("displacement operators") {
    TruncationSpec t{32, 32, 8};
    FockOperator D0 = build_D(0.0, 0.0, t);
    CHECK((D0.matrix() - Mat::Identity(t.size(), t.size())).norm() == 0.0);

    cplx z1(0.4, -0.2), z2(-0.1, 0.3);
    FockOperator D = build_D(z1, z2, t);
    CHECK(full_frob(D * D.dagger() - identity_op(t)) < 1e-10);

    Vec e0 = Vec::Zero(t.size());
    e0(0) = 1.0;
    cplx ov = inner(e0, build_D(z1, 0.0, t).apply(e0));
    CHECK(std::abs(ov - std::exp(-0.5 * std::norm(z1))) < 1e-10);
}

TEST_CASE("generalized displacement and its exact inverse") {
    DerivedConstants d = derive_constants(generic_params());
    TruncationSpec t{16, 16, 4};

    FockOperator V00 = build_V(CPair{0.0, 0.0}, CPair{0.0, 0.0}, t);
    CHECK((V00.matrix() - Mat::Identity(t.size(), t.size())).norm() == 0.0);

    CPair z{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
    CHECK((build_V(z, z, t).matrix() -
           build_D(z[0], z[1], t).matrix()).norm() < 1e-12);

    FockOperator V = build_V(d.nu(), d.mu(), t);
    FockOperator Vi = build_V_inverse(d.nu(), d.mu(), t);
    CHECK(full_frob(V * Vi - identity_op(t)) < 1e-10);
    CHECK(full_frob(Vi * V - identity_op(t)) < 1e-10);

    Vec f = coherent_test_vector(cplx(0.2, 0.1), cplx(-0.3, 0.0), t).coeffs;
    CHECK((V.apply_inverse(V.apply(f)) - f).norm() < 1e-10);
}

TEST_CASE("generalized displacement norm grows with dimension") {
    DerivedConstants d = derive_constants(generic_params());
    double n16 = op_norm_estimate(build_V(d.nu(), d.mu(),
                                          TruncationSpec{16, 16, 4}));
    double n24 = op_norm_estimate(build_V(d.nu(), d.mu(),
                                          TruncationSpec{24, 24, 4}));
    double n32 = op_norm_estimate(build_V(d.nu(), d.mu(),
                                          TruncationSpec{32, 32, 4}));
    CHECK(n16 > 1.0);
    CHECK(n24 > n16);
    CHECK(n32 > n24);
}

TEST_CASE("metric operator: identity collapse, self-adjointness") {
    TruncationSpec t{16, 16, 4};

    ModelParams free;
    DerivedConstants df = derive_constants(free);
    FockOperator Tf = build_Theta(df.nu(), df.mu(), t);
    CHECK((Tf.matrix() - Mat::Identity(t.size(), t.size())).norm() == 0.0);

    ModelParams bos;
    bos.theta = 0.3;
    bos.alpha2 = 0.3;
    bos.alpha3 = 0.2;
    DerivedConstants db = derive_constants(bos);
    REQUIRE(is_bosonic(db));
    FockOperator Tb = build_Theta(db.nu(), db.mu(), t);
    CHECK((Tb.matrix() - Mat::Identity(t.size(), t.size())).norm() < 1e-13);

    DerivedConstants dg = derive_constants(generic_params());
    FockOperator Tg = build_Theta(dg.nu(), dg.mu(), t);
    // dense Frobenius over all entries; the normalization scalar carries a
    // few ulp of phase, so this is small but not exactly zero
    CHECK((Tg.matrix() - Tg.matrix().adjoint()).norm() <
          1e-11 * Tg.matrix().norm());

    // positivity on a few seeded vectors
    DetRng rng(77);
    for (int s = 0; s < 5; ++s) {
        Vec f(t.size());
        for (int i = 0; i < t.size(); ++i)
            f(i) = rng.cnormal();
        cplx q = inner(f, Tg.apply(f));
        CHECK(q.real() > 0.0);
        CHECK(std::abs(q.imag()) < 1e-12 * std::abs(q.real()));
    }
}

TEST_CASE("interior projector rank") {
    TruncationSpec a{4, 5, 2};
    CHECK(std::abs(interior_projector(a).matrix().trace() - cplx(6.0)) == 0.0);
    TruncationSpec b{3, 3, 1};
    CHECK(std::abs(interior_projector(b).matrix().trace() - cplx(4.0)) == 0.0);
    TruncationSpec c{8, 8, 3};
    CHECK(std::abs(interior_projector(c).matrix().trace() - cplx(25.0)) == 0.0);
}

TEST_CASE("accuracy envelope predicate") {
    CHECK(within_envelope(CPair{0.1, 0.2}, CPair{-0.1, 0.3}));
    CHECK_FALSE(within_envelope(CPair{9.0, 0.0}, CPair{0.0, 0.0}));
    CHECK_FALSE(within_envelope(CPair{0.0, 0.0}, CPair{0.0, 9.0}));
}

TEST_CASE("single-term inverse contract") {
    TruncationSpec t{8, 8, 2};
    BosonicOps B = build_bosonic(t);
    FockOperator sum = B.A1 + B.A2;   // two terms: no per-mode inverse
    Vec f = Vec::Ones(t.size());
    CHECK_THROWS_AS(sum.apply_inverse(f), UsageError);
}
