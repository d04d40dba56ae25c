#ifndef DISCLAB_CALABI_HPP
#define DISCLAB_CALABI_HPP

#include "disclab/hamiltonian.hpp"

namespace disclab {

struct QuadratureOrders {
    int radial = 64;
    int angular = 64;
    int time = 32;
};

struct CalabiResult {
    double value = 0.0;
    QuadratureOrders orders{};
    double est_error = 0.0;  // difference against the order-doubled rule
};

/** Calabi invariant Cal = integral_0^1 dt integral_D H_t dm by tensor
 * quadrature (disc rule x Gauss-Legendre in t). The time integral splits at
 * concatenation junctions and the disc rule at radial support edges; the
 * returned value uses the order-doubled refinement, the base rule supplies
 * the error estimate. */
CalabiResult calabi(const HamiltonianSpec& h, const QuadratureOrders& orders = {});

}  // namespace disclab

#endif
