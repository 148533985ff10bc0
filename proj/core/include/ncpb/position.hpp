#pragma once

#include <utility>
#include <vector>

#include "ncpb/model.hpp"
#include "ncpb/states.hpp"

namespace ncpb {

// Symmetric tensor grid, the same axis for x1 and x2.
struct GridSpec {
    double x_min;
    double x_max;
    int points;

    double step() const { return (x_max - x_min) / (points - 1); }
    std::vector<double> axis() const;
};

// Throws UsageError unless x_min < x_max and points is odd and >= 3 (odd so
// the symmetric grid contains 0).
void validate(const GridSpec& g);

struct GridFunction {
    GridSpec grid;
    Mat values;   // values(i,j) = f(x_i, x_j)
};

// Orthonormal Hermite function of the dimensionless argument, by the stable
// three-term recurrence. Callers working in physical x evaluate at xi =
// lambda*x and multiply by sqrt(lambda); hermite_x does both.
double hermite_function(int n, double xi);
double hermite_x(int n, double x, double lambda);

// Rows 0..n_max of the Hermite table over the given arguments.
Eigen::MatrixXd hermite_table(int n_max, const std::vector<double>& xi);

// f(x1,x2) = sum coeffs(n1,n2) psi_{n1}(x1) psi_{n2}(x2), lambda-scaled.
GridFunction synthesize(const FockState& s, const GridSpec& g,
                        const DerivedConstants& d);

// Gaussian annihilation-equation solutions exp(-lambda^2 r^2/2 + c1 x1 + c2 x2)
// with c1 = -lambda(s1 + i s2), c2 = lambda(i s1 + s2): shift s = nu for the
// first vacuum, s = mu for the second. Each normalized to unit quadrature norm.
std::pair<GridFunction, GridFunction> closed_form_vacua(const DerivedConstants& d,
                                                        const GridSpec& g);

struct PdeResult {
    double residual;      // max over interior points of |residual| / max|f|
    bool coarse_grid;     // points < 41: second-order floor not trustworthy
};

// Applies the two annihilation differential operators (shift s = nu for the
// first vacuum, mu for the second) by central differences.
PdeResult pde_residual(const GridFunction& f, const CPair& shift, double lambda);

// 2D trapezoid of conj(f) * h.
cplx overlap(const GridFunction& f, const GridFunction& h);
double grid_norm(const GridFunction& f);

} // namespace ncpb
