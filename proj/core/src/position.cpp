#include "ncpb/position.hpp"

#include <cmath>

#include "ncpb/errors.hpp"

namespace ncpb {

std::vector<double> GridSpec::axis() const {
    std::vector<double> x(points);
    const double h = step();
    for (int i = 0; i < points; ++i)
        x[i] = x_min + h * i;
    return x;
}

void validate(const GridSpec& g) {
    if (!(g.x_min < g.x_max))
        throw UsageError("grid requires x_min < x_max");
    if (g.points < 3 || g.points % 2 == 0)
        throw UsageError("grid requires an odd point count >= 3");
}

double hermite_function(int n, double xi) {
    double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi * xi);
    if (n == 0)
        return p0;
    double p1 = xi * std::sqrt(2.0) * p0;
    for (int k = 1; k < n; ++k) {
        const double p2 = xi * std::sqrt(2.0 / (k + 1)) * p1
                          - std::sqrt(double(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double hermite_x(int n, double x, double lambda) {
    return std::sqrt(lambda) * hermite_function(n, lambda * x);
}

Eigen::MatrixXd hermite_table(int n_max, const std::vector<double>& xi) {
    const int m = static_cast<int>(xi.size());
    Eigen::MatrixXd T(n_max + 1, m);
    for (int i = 0; i < m; ++i)
        T(0, i) = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi[i] * xi[i]);
    if (n_max >= 1)
        for (int i = 0; i < m; ++i)
            T(1, i) = xi[i] * std::sqrt(2.0) * T(0, i);
    for (int n = 1; n < n_max; ++n)
        for (int i = 0; i < m; ++i)
            T(n + 1, i) = xi[i] * std::sqrt(2.0 / (n + 1)) * T(n, i)
                          - std::sqrt(double(n) / (n + 1)) * T(n - 1, i);
    return T;
}

GridFunction synthesize(const FockState& s, const GridSpec& g,
                        const DerivedConstants& d) {
    validate(g);
    const auto x = g.axis();
    std::vector<double> xi(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        xi[i] = d.lambda * x[i];
    const int d1 = s.trunc.dim1, d2 = s.trunc.dim2;
    const Eigen::MatrixXd T =
        std::sqrt(d.lambda) * hermite_table(std::max(d1, d2) - 1, xi);
    using RowMat =
        Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> C(s.coeffs.data(), d1, d2);
    // f(i,j) = sum_{n1,n2} C(n1,n2) T(n1,i) T(n2,j)
    Mat vals = T.topRows(d1).transpose().cast<cplx>() * C *
               T.topRows(d2).cast<cplx>();
    return {g, std::move(vals)};
}

namespace {

GridFunction gaussian_vacuum(const CPair& shift, double lambda,
                             const GridSpec& g) {
    const auto x = g.axis();
    const int m = g.points;
    const cplx i(0, 1);
    const cplx c1 = -lambda * (shift[0] + i * shift[1]);
    const cplx c2 = lambda * (i * shift[0] + shift[1]);
    Mat vals(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            vals(a, b) = std::exp(-0.5 * lambda * lambda *
                                      (x[a] * x[a] + x[b] * x[b]) +
                                  c1 * x[a] + c2 * x[b]);
    return {g, std::move(vals)};
}

} // namespace

std::pair<GridFunction, GridFunction> closed_form_vacua(const DerivedConstants& d,
                                                        const GridSpec& g) {
    validate(g);
    GridFunction phi = gaussian_vacuum(d.nu(), d.lambda, g);
    GridFunction psi = gaussian_vacuum(d.mu(), d.lambda, g);
    phi.values /= grid_norm(phi);
    psi.values /= grid_norm(psi);
    return {std::move(phi), std::move(psi)};
}

PdeResult pde_residual(const GridFunction& f, const CPair& shift, double lambda) {
    validate(f.grid);
    const auto x = f.grid.axis();
    const int m = f.grid.points;
    const double h = f.grid.step();
    const cplx i(0, 1);
    const double fmax = f.values.cwiseAbs().maxCoeff();
    double worst = 0.0;
    // Annihilation operators divided by the overall 1/sqrt(2):
    //   (lambda x1 + d1/lambda) f + i (lambda x2 + d2/lambda) f + 2 s1 f = 0
    //  -(i lambda x1 + i d1/lambda) f - (lambda x2 + d2/lambda) f + 2 s2 f = 0
    for (int a = 1; a + 1 < m; ++a)
        for (int b = 1; b + 1 < m; ++b) {
            const cplx d1f = (f.values(a + 1, b) - f.values(a - 1, b)) / (2 * h);
            const cplx d2f = (f.values(a, b + 1) - f.values(a, b - 1)) / (2 * h);
            const cplx v = f.values(a, b);
            const cplx r1 = lambda * x[a] * v + d1f / lambda +
                            i * (lambda * x[b] * v + d2f / lambda) +
                            2.0 * shift[0] * v;
            const cplx r2 = -i * (lambda * x[a] * v + d1f / lambda) -
                            (lambda * x[b] * v + d2f / lambda) +
                            2.0 * shift[1] * v;
            worst = std::max({worst, std::abs(r1), std::abs(r2)});
        }
    return {worst / fmax, f.grid.points < 41};
}

cplx overlap(const GridFunction& f, const GridFunction& h) {
    if (f.grid.points != h.grid.points || f.grid.x_min != h.grid.x_min ||
        f.grid.x_max != h.grid.x_max)
        throw UsageError("overlap requires matching grids");
    const int m = f.grid.points;
    const double dx = f.grid.step();
    Eigen::VectorXd w = Eigen::VectorXd::Constant(m, dx);
    w(0) *= 0.5;
    w(m - 1) *= 0.5;
    const Mat prod = f.values.conjugate().cwiseProduct(h.values);
    return w.cast<cplx>().transpose() * prod * w.cast<cplx>();
}

double grid_norm(const GridFunction& f) {
    return std::sqrt(overlap(f, f).real());
}

} // namespace ncpb
