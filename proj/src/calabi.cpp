#include "disclab/calabi.hpp"

#include <algorithm>

#include "disclab/quadrature.hpp"

namespace disclab {

namespace {

double calabi_value(const HamiltonianSpec& h, const QuadratureOrders& orders) {
    std::vector<double> time_breaks{0.0};
    for (double b : h.time_breakpoints())
        if (b > 1e-12 && b < 1.0 - 1e-12) time_breaks.push_back(b);
    time_breaks.push_back(1.0);
    std::sort(time_breaks.begin(), time_breaks.end());

    const Quad1D time_rule = composite_gauss_legendre(orders.time, time_breaks);
    const DiscRule disc = disc_quadrature(orders.radial, orders.angular, h.radial_edge_breaks());

    double total = 0.0;
    for (std::size_t i = 0; i < time_rule.nodes.size(); ++i) {
        const double t = time_rule.nodes[i];
        total += time_rule.weights[i] * disc.integrate([&](Complex z) { return evaluate(h, t, z); });
    }
    return total;
}

}  // namespace

CalabiResult calabi(const HamiltonianSpec& h, const QuadratureOrders& orders) {
    const double coarse = calabi_value(h, orders);
    const QuadratureOrders refined{2 * orders.radial, 2 * orders.angular, 2 * orders.time};
    const double fine = calabi_value(h, refined);

    CalabiResult out;
    out.value = fine;
    out.orders = orders;
    out.est_error = std::abs(fine - coarse);
    return out;
}

}  // namespace disclab
