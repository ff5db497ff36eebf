#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bnf/analysis.hpp"
#include "bnf/dynamics.hpp"

namespace bnf {

namespace {

// int_0^T e^{-i d t} dt
cplx time_integral(double d, double T) {
    if (d == 0.0) return {T, 0.0};
    return (cplx(1.0, 0.0) - std::polar(1.0, -d * T)) / cplx(0.0, d);
}

// int_0^T |sum_k c_k e^{-i w_k t}|^2 dt
double quadratic_time_integral(const std::vector<cplx>& c, const std::vector<double>& w, double T) {
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        acc += std::norm(c[k]) * T;
        for (std::size_t l = k + 1; l < c.size(); ++l)
            acc += 2.0 * (c[k] * std::conj(c[l]) * time_integral(w[k] - w[l], T)).real();
    }
    return acc;
}

double pow4(int n) {
    const double d = n;
    return d * d * d * d;
}

}  // namespace

void SpaceTimeGrid::validate() const {
    if (N < 0) throw std::invalid_argument("space-time grid: negative N");
    if (!(T_w > 0.0)) throw std::invalid_argument("space-time grid: T_w must be positive");
    if (n_t < 2 || n_t % 2 != 0) throw std::invalid_argument("space-time grid: n_t must be even");
}

SpaceTimeField sample_linear_solution(const FourierState& f, const SpaceTimeGrid& grid) {
    grid.validate();
    if (f.N != grid.N) throw std::invalid_argument("sample_linear_solution: cutoff mismatch");
    SpaceTimeField field{grid, {}};
    field.slices.reserve(std::size_t(grid.n_t));
    FourierState g = f;
    g.t = 0.0;
    for (int k = 0; k < grid.n_t; ++k) field.slices.push_back(linear_propagate(g, grid.time(k)));
    return field;
}

double xsb_norm(const SpaceTimeField& field, double s, double b, bool windowed) {
    const auto& g = field.grid;
    g.validate();
    if (field.slices.size() != std::size_t(g.n_t))
        throw std::invalid_argument("xsb_norm: expected n_t slices");
    std::vector<double> w(std::size_t(g.n_t), 1.0);
    if (windowed) {
        double ms = 0.0;
        for (int k = 0; k < g.n_t; ++k) {
            const double x = std::sin(std::numbers::pi * k / g.n_t);
            w[std::size_t(k)] = x * x;
            ms += x * x * x * x;
        }
        const double scale = 1.0 / std::sqrt(ms / g.n_t);
        for (auto& x : w) x *= scale;
    }
    double acc = 0.0;
    for (int n = -g.N; n <= g.N; ++n) {
        const double wn = std::pow(1.0 + double(n) * n, s);
        for (int m = -g.n_t / 2; m < g.n_t / 2; ++m) {
            const double tau = 2.0 * std::numbers::pi * m / g.T_w;
            cplx c{};
            for (int k = 0; k < g.n_t; ++k)
                c += w[std::size_t(k)] * field.slices[std::size_t(k)][n] *
                     std::polar(1.0, -2.0 * std::numbers::pi * double(m) * k / g.n_t);
            c /= double(g.n_t);
            const double sigma = tau + pow4(n);
            acc += wn * std::pow(1.0 + sigma * sigma, b) * std::norm(c);
        }
    }
    return std::sqrt(acc);
}

double strichartz_ratio(const FourierState& f, int p, double T_w) {
    if (p != 4 && p != 6) throw std::invalid_argument("strichartz_ratio: p must be 4 or 6");
    if (!(T_w > 0.0)) throw std::invalid_argument("strichartz_ratio: T_w must be positive");
    const double nrm = l2_norm(f);
    if (nrm == 0.0) throw std::invalid_argument("strichartz_ratio: zero input");
    const int N = f.N;
    double total = 0.0;
    if (p == 4) {
        // |u|^2 = sum_m e^{imx} sum_{n1 - n2 = m} f1 conj(f2) e^{-i(n1^4 - n2^4)t}
        std::vector<cplx> c;
        std::vector<double> w;
        for (int m = -2 * N; m <= 2 * N; ++m) {
            c.clear();
            w.clear();
            for (int n1 = std::max(-N, m - N); n1 <= std::min(N, m + N); ++n1) {
                const int n2 = n1 - m;
                c.push_back(f[n1] * std::conj(f[n2]));
                w.push_back(pow4(n1) - pow4(n2));
            }
            total += quadratic_time_integral(c, w, T_w);
        }
    } else {
        // u^3 = sum_m e^{imx} sum_{n1 + n2 + n3 = m} f1 f2 f3 e^{-i(n1^4 + n2^4 + n3^4)t}
        std::vector<std::map<i64, cplx>> groups(std::size_t(6 * N + 1));
        for (int n1 = -N; n1 <= N; ++n1)
            for (int n2 = -N; n2 <= N; ++n2)
                for (int n3 = -N; n3 <= N; ++n3) {
                    const i64 om = i64(n1) * n1 * n1 * n1 + i64(n2) * n2 * n2 * n2 +
                                   i64(n3) * n3 * n3 * n3;
                    groups[std::size_t(n1 + n2 + n3 + 3 * N)][om] += f[n1] * f[n2] * f[n3];
                }
        std::vector<cplx> c;
        std::vector<double> w;
        for (const auto& g : groups) {
            c.clear();
            w.clear();
            for (const auto& [om, v] : g) {
                c.push_back(v);
                w.push_back(double(om));
            }
            total += quadratic_time_integral(c, w, T_w);
        }
    }
    total *= 2.0 * std::numbers::pi;
    return std::pow(std::max(total, 0.0), 1.0 / p) / nrm;
}

}  // namespace bnf
