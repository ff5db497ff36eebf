#pragma once

#include <functional>
#include <vector>

namespace bnf {

// Composite Simpson over uniformly spaced samples; needs an odd count >= 3.
double simpson(const std::vector<double>& f, double h);
// Running Simpson integral at every even sample index (odd entries are NaN).
std::vector<double> simpson_cumulative(const std::vector<double>& f, double h);

// Adaptive Gauss-Kronrod (boost) on [a, b], at most 2^max_depth panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, unsigned max_depth = 15);

}  // namespace bnf
