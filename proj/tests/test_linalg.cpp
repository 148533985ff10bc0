#include <doctest.h>

#include <complex>

#include "ncpb/errors.hpp"
#include "ncpb/linalg.hpp"
#include "ncpb/operators.hpp"

using namespace ncpb;

namespace {
const cplx I1(0.0, 1.0);
}

TEST_CASE("kron identity and diagonal cases") {
    CHECK((kron(Mat::Identity(2, 2), Mat::Identity(3, 3)) -
           Mat::Identity(6, 6))
              .norm() == 0.0);

    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a.diagonal() << 1.0, 2.0;
    b.diagonal() << 3.0, 4.0;
    Mat k = kron(a, b);
    Vec expect(4);
    expect << 3.0, 4.0, 6.0, 8.0;
    CHECK((k.diagonal() - expect).norm() == 0.0);
    CHECK(k.norm() == doctest::Approx(expect.norm()));
}

TEST_CASE("kron flat index convention: mode 1 varies slowest") {
    auto [lower, raise] = mode_ladder(3);
    Mat lifted = kron(raise, Mat::Identity(3, 3));
    // basis state (0,1) has flat index 0*3+1 = 1; raising mode 1 must land
    // on (1,1) = flat 4 with coefficient 1
    Vec e01 = Vec::Zero(9);
    e01(1) = 1.0;
    Vec out = lifted * e01;
    CHECK(std::abs(out(4) - cplx(1.0)) == 0.0);
    out(4) = 0.0;
    CHECK(out.norm() == 0.0);
}

TEST_CASE("kron is associative up to flat-index relabeling") {
    Mat A(2, 2), B(3, 3), C(2, 2);
    A << cplx(0.3, 0.1), cplx(-1.0, 0.0), cplx(0.0, 2.0), cplx(0.5, -0.5);
    B.setZero();
    B(0, 1) = 1.0;
    B(1, 2) = cplx(0.0, 1.4);
    B(2, 0) = -0.7;
    C << 1.0, cplx(0.0, -0.2), 0.9, cplx(2.0, 1.0);
    CHECK((kron(kron(A, B), C) - kron(A, kron(B, C))).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("kron error contract") {
    CHECK_THROWS_AS(kron(Mat(), Mat::Identity(2, 2)), UsageError);
    CHECK_THROWS_AS(kron(Mat::Identity(8192, 8192), Mat::Identity(8192, 8192)),
                    ConfigError);
}

TEST_CASE("matexp at zero is the identity bitwise") {
    Mat E = matexp(Mat::Zero(16, 16));
    CHECK((E - Mat::Identity(16, 16)).norm() == 0.0);
}

TEST_CASE("matexp on a diagonal matrix") {
    Mat A = Mat::Zero(2, 2);
    A.diagonal() << cplx(0.7, -0.3), cplx(-1.2, 2.0);
    Mat E = matexp(A);
    CHECK(std::abs(E(0, 0) - std::exp(cplx(0.7, -0.3))) < 1e-14);
    CHECK(std::abs(E(1, 1) - std::exp(cplx(-1.2, 2.0))) < 1e-14);
    CHECK(std::abs(E(0, 1)) == 0.0);
}

TEST_CASE("matexp of a raising generator terminates in a finite series") {
    auto [lower, raise] = mode_ladder(3);
    Mat E = matexp(raise);
    // exp(raise) e0 = e0 + e1 + (1/sqrt 2) e2 since raise^2 e0 = sqrt(2) e2
    CHECK(std::abs(E(0, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(E(1, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(E(2, 0) - cplx(1.0 / std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("matexp inverse and unitarity properties") {
    auto [lower, raise] = mode_ladder(32);
    Mat A = 1.3 * raise + cplx(0.0, 0.9) * lower;   // pushes into scaling
    CHECK((matexp(A) * matexp(-A) - Mat::Identity(32, 32)).norm() < 1e-8);

    Mat U = 0.7 * (raise - lower);   // skew-adjoint
    Mat E = matexp(U);
    CHECK((E * E.adjoint() - Mat::Identity(32, 32)).norm() < 1e-10);
}

TEST_CASE("matexp error contract") {
    CHECK_THROWS_AS(matexp(Mat::Zero(2, 3)), UsageError);
    Mat bad = Mat::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(matexp(bad), NumericError);
}

TEST_CASE("solve identity, diagonal, and round-trip cases") {
    Vec b(2);
    b << cplx(2.0, 1.0), cplx(-3.0, 0.5);
    CHECK((solve(Mat::Identity(2, 2), b) - b).norm() == 0.0);

    Mat d = Mat::Zero(2, 2);
    d.diagonal() << 2.0, 4.0;
    Vec rhs(2);
    rhs << 2.0, 4.0;
    Vec x = solve(d, rhs);
    CHECK(std::abs(x(0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(x(1) - cplx(1.0)) < 1e-15);

    auto [lower, raise] = mode_ladder(32);
    Mat E = matexp(cplx(0.3, 0.1) * raise);
    Vec e2 = Vec::Zero(32);
    e2(2) = 1.0;
    CHECK((solve(E, E * e2) - e2).norm() < 1e-10);
}

TEST_CASE("solve rejects singular and malformed inputs") {
    Mat s = Mat::Identity(3, 3);
    s.row(2).setZero();
    Vec b = Vec::Ones(3);
    CHECK_THROWS_AS(solve(s, b), SingularMatrixError);
    try {
        solve(s, b);
    } catch (const SingularMatrixError& e) {
        CHECK(e.pivot <= 3.0 * 1e-14);
    }
    CHECK_THROWS_AS(solve(Mat::Identity(3, 3), Vec::Ones(2)), UsageError);
    CHECK_THROWS_AS(solve(Mat::Zero(2, 3), Vec::Ones(2)), UsageError);
}

TEST_CASE("norms and the first-slot-antilinear inner product") {
    CHECK(frob_norm(Mat::Identity(4, 4)) == doctest::Approx(2.0));
    Vec e0 = Vec::Zero(3);
    e0(0) = 1.0;
    CHECK(inner(e0, e0) == cplx(1.0));
    CHECK(inner(I1 * e0, e0) == cplx(0.0, -1.0));
    CHECK_THROWS_AS(inner(e0, Vec::Ones(2)), UsageError);
}
