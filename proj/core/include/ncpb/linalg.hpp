#pragma once

#include <complex>
#include <Eigen/Dense>

#include "ncpb/errors.hpp"

namespace ncpb {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Kronecker product. Row/col of the result use the flat index
// i1*cols(B)+i2, matching the two-mode Fock convention n1*dim2+n2 used
// throughout: mode 1 varies slowest.
Mat kron(const Mat& A, const Mat& B);

// Matrix exponential, Pade order 13 with scaling and squaring. Accurate to
// machine precision for the well-conditioned generators used here.
Mat matexp(const Mat& A);

// Solve A x = b by partial-pivot LU. Throws SingularMatrixError when the
// smallest |U_ii| falls below max|U_ii| * n * 1e-14.
Vec solve(const Mat& A, const Vec& b);

inline double frob_norm(const Mat& A) { return A.norm(); }
inline double vec_norm(const Vec& v) { return v.norm(); }

// Inner product, antilinear in the FIRST argument: <u,v> = sum conj(u_i) v_i.
inline cplx inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw UsageError("inner: length mismatch");
    return u.dot(v);
}

} // namespace ncpb
