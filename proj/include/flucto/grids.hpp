#pragma once

#include <string>
#include <vector>

#include "flucto/model.hpp"

namespace flucto {

enum class GridSpacing { linear, geometric, composite };

GridSpacing parse_spacing(const std::string& name);
std::string spacing_name(GridSpacing s);

std::vector<double> linear_grid(double lo, double hi, int count);

/// Logarithmically spaced grid; requires 0 < lo < hi.
std::vector<double> geometric_grid(double lo, double hi, int count);

/// Default delay grid: geometric from 1e-3/gamma out to 10/|lambda2| (the
/// dynamics spans the fast gamma_plus scale and the slow shelving scale),
/// with tau = 0 prepended.
std::vector<double> default_tau_grid(const AtomParams& p, int count = 400);

/// Default frequency grid: a dense linear panel |w| <= 10 |lambda2| that
/// resolves the sharp peak, merged with a linear panel out to
/// |w| = 3 (omega + gamma_plus) for the broad structure.
std::vector<double> composite_omega_grid(const AtomParams& p, int n_sharp = 401,
                                         int n_broad = 801);

std::vector<double> make_grid(GridSpacing s, double lo, double hi, int count,
                              const AtomParams& p);

}  // namespace flucto
