#include "ncpb/linalg.hpp"
#include "ncpb/errors.hpp"

#include <cmath>

namespace ncpb {

Mat kron(const Mat& A, const Mat& B) {
    if (A.size() == 0 || B.size() == 0)
        throw UsageError("kron: empty factor");
    constexpr Eigen::Index limit = 1 << 24;
    if (A.rows() > limit / B.rows() || A.cols() > limit / B.cols())
        throw ConfigError("kron: result dimension overflow");
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

namespace {

// Pade-13 coefficients and the scaling threshold from Higham's method.
constexpr double theta13 = 5.371920351148152;
constexpr double b13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0,
};

} // namespace

Mat matexp(const Mat& A) {
    if (A.rows() != A.cols())
        throw UsageError("matexp: matrix must be square");
    const Eigen::Index n = A.rows();
    const double nrm = A.cwiseAbs().rowwise().sum().maxCoeff(); // inf-norm
    if (!std::isfinite(nrm))
        throw NumericError("matexp: non-finite input norm " +
                           std::to_string(nrm));
    // exp(0) = I bitwise. Eigen's LU solve multiplies by reciprocal pivots,
    // which would smear ulp-level noise over the diagonal; the bosonic
    // collapse checks require exactness at zero argument.
    if (nrm == 0.0) return Mat::Identity(n, n);
    int s = 0;
    if (nrm > theta13)
        s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));

    const Mat As = A / std::pow(2.0, s);
    const Mat A2 = As * As;
    const Mat A4 = A2 * A2;
    const Mat A6 = A2 * A4;
    const Mat I = Mat::Identity(n, n);

    const Mat U = As * (A6 * (b13[13] * A6 + b13[11] * A4 + b13[9] * A2)
                        + b13[7] * A6 + b13[5] * A4 + b13[3] * A2 + b13[1] * I);
    const Mat V = A6 * (b13[12] * A6 + b13[10] * A4 + b13[8] * A2)
                  + b13[6] * A6 + b13[4] * A4 + b13[2] * A2 + b13[0] * I;

    Mat R = (V - U).partialPivLu().solve(V + U);
    for (int k = 0; k < s; ++k)
        R = R * R;
    return R;
}

Vec solve(const Mat& A, const Vec& b) {
    if (A.rows() != A.cols())
        throw UsageError("solve: matrix must be square");
    if (b.size() != A.rows())
        throw UsageError("solve: right-hand side length mismatch");
    Eigen::PartialPivLU<Mat> lu(A);
    const auto& U = lu.matrixLU();
    double dmin = std::abs(U(0, 0));
    double dmax = dmin;
    for (Eigen::Index i = 1; i < U.rows(); ++i) {
        const double d = std::abs(U(i, i));
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (dmin <= dmax * static_cast<double>(A.rows()) * 1e-14)
        throw SingularMatrixError("solve: matrix numerically singular", dmin);
    return lu.solve(b);
}

} // namespace ncpb
