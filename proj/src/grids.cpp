#include "flucto/grids.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flucto {

GridSpacing parse_spacing(const std::string& name) {
    if (name == "linear") return GridSpacing::linear;
    if (name == "geometric") return GridSpacing::geometric;
    if (name == "composite") return GridSpacing::composite;
    throw std::invalid_argument("unknown grid spacing '" + name +
                                "' (linear|geometric|composite)");
}

std::string spacing_name(GridSpacing s) {
    switch (s) {
        case GridSpacing::linear: return "linear";
        case GridSpacing::geometric: return "geometric";
        case GridSpacing::composite: return "composite";
    }
    return "?";
}

std::vector<double> linear_grid(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("grid count must be >= 2");
    if (!(hi > lo)) throw std::invalid_argument("grid needs hi > lo");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    g.back() = hi;
    return g;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("grid count must be >= 2");
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("geometric grid needs 0 < lo < hi");
    std::vector<double> g(count);
    const double r = std::log(hi / lo);
    for (int i = 0; i < count; ++i)
        g[i] = lo * std::exp(r * static_cast<double>(i) / (count - 1));
    g.back() = hi;
    return g;
}

namespace {

double slow_rate(const AtomParams& p) {
    const double l2 = std::abs(eigenvalues_approx(p).lambda2);
    return l2 > 0.0 ? l2 : 0.1 * p.gamma_plus();
}

}  // namespace

std::vector<double> default_tau_grid(const AtomParams& p, int count) {
    auto g = geometric_grid(1e-3 / p.gamma, 10.0 / slow_rate(p), count - 1);
    g.insert(g.begin(), 0.0);
    return g;
}

std::vector<double> composite_omega_grid(const AtomParams& p, int n_sharp,
                                         int n_broad) {
    const double w_sharp = 10.0 * slow_rate(p);
    const double w_max = 3.0 * (p.omega + p.gamma_plus());
    auto g = linear_grid(-w_max, w_max, n_broad);
    if (w_sharp < w_max) {
        const auto inner = linear_grid(-w_sharp, w_sharp, n_sharp);
        g.insert(g.end(), inner.begin(), inner.end());
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end(),
                            [&](double a, double b) {
                                return std::abs(a - b) < 1e-12 * w_max;
                            }),
                g.end());
    }
    return g;
}

std::vector<double> make_grid(GridSpacing s, double lo, double hi, int count,
                              const AtomParams& p) {
    switch (s) {
        case GridSpacing::linear: return linear_grid(lo, hi, count);
        case GridSpacing::geometric: return geometric_grid(lo, hi, count);
        case GridSpacing::composite: return composite_omega_grid(p, count, 2 * count);
    }
    throw std::invalid_argument("bad spacing");
}

}  // namespace flucto
