#include "disclab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace disclab {

namespace {

Quad1D compute_gauss_legendre(int n) {
    Quad1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n starting from the Chebyshev-like guess.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing pass after convergence
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

Quad1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    // Rules are reused heavily (every trajectory quadrature and disc rule);
    // cache them by order.
    static std::mutex mutex;
    static std::map<int, Quad1D> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

Quad1D gauss_legendre(int n, double a, double b) {
    Quad1D base = gauss_legendre(n);
    Quad1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + hal * base.nodes[i];
        rule.weights[i] = hal * base.weights[i];
    }
    return rule;
}

Quad1D composite_gauss_legendre(int n, const std::vector<double>& breaks) {
    if (breaks.size() < 2) throw std::invalid_argument("composite_gauss_legendre: need >= 2 breakpoints");
    Quad1D rule;
    rule.nodes.reserve(n * (breaks.size() - 1));
    rule.weights.reserve(n * (breaks.size() - 1));
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        if (!(breaks[s] < breaks[s + 1]))
            throw std::invalid_argument("composite_gauss_legendre: breakpoints must increase");
        Quad1D seg = gauss_legendre(n, breaks[s], breaks[s + 1]);
        rule.nodes.insert(rule.nodes.end(), seg.nodes.begin(), seg.nodes.end());
        rule.weights.insert(rule.weights.end(), seg.weights.begin(), seg.weights.end());
    }
    return rule;
}

}  // namespace disclab
