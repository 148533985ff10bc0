#pragma once

#include "ncpb/operators.hpp"
#include "ncpb/states.hpp"

namespace ncpb {

// Antilinear map: mode-1 parity composed with entrywise conjugation of Fock
// coefficients. Conjugation realizes time reversal because the underlying
// position wavefunctions (Hermite functions) are real: x -> x, p -> -p,
// i -> -i; combined with the parity this is exactly
// x1 -> -x1, x2 -> x2, p1 -> p1, p2 -> -p2.
struct AntilinearSymmetry {
    TruncationSpec trunc;
    Eigen::VectorXd parity;   // diagonal entries (-1)^{n1}
};

AntilinearSymmetry make_pt_minus(const TruncationSpec& t);

// |P conj(H) P - H|_F / |H|_F; zero iff H commutes with the antilinear map.
double pt_defect(const FockOperator& H, const AntilinearSymmetry& S);

// Eigenstates of a symmetric Hamiltonian transform as phi_n -> (-1)^{n1} phi_n.
// Requires a real-alpha family; otherwise the report carries a skipped entry
// ("unbroken-symmetry precondition unmet").
VerificationReport pt_eigenstate_check(const LadderFamily& family,
                                       const AntilinearSymmetry& S,
                                       double tol = 1e-8);

} // namespace ncpb
