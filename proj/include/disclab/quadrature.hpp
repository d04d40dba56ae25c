#ifndef DISCLAB_QUADRATURE_HPP
#define DISCLAB_QUADRATURE_HPP

#include <vector>

namespace disclab {

struct Quad1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
Quad1D gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
Quad1D gauss_legendre(int n, double a, double b);

/// n points of Gauss-Legendre on every interval [breaks[i], breaks[i+1]].
/// breaks must be strictly increasing with at least two entries.
Quad1D composite_gauss_legendre(int n, const std::vector<double>& breaks);

}  // namespace disclab

#endif
