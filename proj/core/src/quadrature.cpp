#include "bnf/quadrature.hpp"

#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bnf {

double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("simpson: need an odd number (>= 3) of samples");
    double acc = f.front() + f.back();
    for (std::size_t i = 1; i + 1 < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
    return acc * h / 3.0;
}

std::vector<double> simpson_cumulative(const std::vector<double>& f, double h) {
    std::vector<double> out(f.size(), std::numeric_limits<double>::quiet_NaN());
    if (f.empty()) return out;
    out[0] = 0.0;
    for (std::size_t i = 2; i < f.size(); i += 2)
        out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 unsigned max_depth) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth,
                                                                         rel_tol);
}

}  // namespace bnf
