#include "ncpb/symmetry.hpp"

#include <cmath>
#include <sstream>

#include "ncpb/errors.hpp"

namespace ncpb {

AntilinearSymmetry make_pt_minus(const TruncationSpec& t) {
    validate(t);
    Eigen::VectorXd par(t.size());
    for (int n1 = 0; n1 < t.dim1; ++n1)
        for (int n2 = 0; n2 < t.dim2; ++n2)
            par(n1 * t.dim2 + n2) = (n1 % 2 == 0) ? 1.0 : -1.0;
    return {t, std::move(par)};
}

double pt_defect(const FockOperator& H, const AntilinearSymmetry& S) {
    if (H.dim() != S.parity.size())
        throw UsageError("symmetry dimension does not match operator");
    const Mat& Hd = H.matrix();
    // P conj(H) P with diagonal P is an entrywise rescale of the conjugate.
    Mat T = Hd.conjugate();
    T.array().colwise() *= S.parity.array();
    T.array().rowwise() *= S.parity.transpose().array();
    return (T - Hd).norm() / Hd.norm();
}

VerificationReport pt_eigenstate_check(const LadderFamily& family,
                                       const AntilinearSymmetry& S,
                                       double tol) {
    VerificationReport rep;
    const char* name = family.kind == FamilyKind::phi ? "pt_eigenstate_phi"
                                                      : "pt_eigenstate_psi";
    if (!family.derived.alphas_real) {
        rep.add(make_skipped(name, "unbroken-symmetry precondition unmet",
                             "family built from complex linear couplings"));
        return rep;
    }
    double worst = 0.0;
    for (const auto& [key, st] : family.states) {
        const double sign = (key.first % 2 == 0) ? 1.0 : -1.0;
        const Vec mapped = S.parity.array() * st.coeffs.conjugate().array();
        worst = std::max(worst,
                         (mapped - sign * st.coeffs).norm() / st.coeffs.norm());
    }
    std::ostringstream os;
    os << "max over n <= " << family.n_max
       << " of |P conj(state) - (-1)^{n1} state| / |state|";
    rep.add(make_check(name, worst, tol, os.str()));
    return rep;
}

} // namespace ncpb
