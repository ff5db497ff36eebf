#include "bnf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bnf/quadrature.hpp"

namespace bnf {

namespace {

double transition(double z) {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return 1.0;
    const double f = std::exp(-1.0 / z);
    const double g = std::exp(-1.0 / (1.0 - z));
    return f / (f + g);
}

bool is_power_of_two(double M) {
    int e;
    const double m = std::frexp(M, &e);
    return m == 0.5;
}

}  // namespace

double bump_eta0(double x) {
    const double a = std::abs(x);
    if (a <= 1.25) return 1.0;
    if (a >= 1.6) return 0.0;
    return transition((1.6 - a) / 0.35);
}

double bump_normalizer() {
    static const double c0 = [] {
        const double inner = 2.5;
        const double edge = integrate(bump_eta0, 1.25, 1.6, 1e-13);
        return 1.0 / (inner + 2.0 * edge);
    }();
    return c0;
}

EnergySymbol::EnergySymbol(double s, double delta0, int k0, double M)
    : s_(s), delta0_(delta0), k0_(k0), M_(M) {
    if (!(s < 0.0)) throw std::invalid_argument("symbol: s must be negative");
    if (!(delta0 > 0.0) || delta0 > 0.25) throw std::invalid_argument("symbol: need 0 < delta0 <= 1/4");
    if (!(M >= 1.0) || !is_power_of_two(M)) throw std::invalid_argument("symbol: M must be a dyadic number >= 1");
    kM_ = int(std::lround(std::log2(M)));
    if (k0 < kM_ || k0 > 40) throw std::invalid_argument("symbol: need 2^k0 >= M (and k0 <= 40)");
}

double EnergySymbol::default_delta0(double s) { return std::min(0.125, std::abs(s) / 4.0); }

double EnergySymbol::dyadic_value(int k) const {
    return std::exp2(2.0 * s_ * k - delta0_ * std::abs(k - k0_));
}

double EnergySymbol::raw(double xi) const {
    const double x = std::abs(xi);
    if (x <= M_) return dyadic_value(kM_);
    int e;
    std::frexp(x, &e);
    const int k = e - 1;  // 2^k <= x < 2^{k+1}
    const double lo = std::ldexp(1.0, k);
    const double a = dyadic_value(k), b = dyadic_value(k + 1);
    return a + (b - a) * (x - lo) / lo;
}

namespace {

// int_{1.25}^z s^m eta0(s) ds for z in [1.25, 1.6]. The integrand is smooth, so a shallow
// depth cap bounds the cost without losing accuracy.
double head0(double z) { return integrate(bump_eta0, 1.25, z, 1e-13, 5); }
double head1(double z) {
    return integrate([](double s) { return s * bump_eta0(s); }, 1.25, z, 1e-13, 5);
}

// Partial moments int_{-1.6}^z s^m eta0(s) ds, m = 0, 1.
double partial0(double z) {
    static const double edge = head0(1.6);
    if (z <= -1.6) return 0.0;
    if (z < -1.25) return edge - head0(-z);
    if (z <= 1.25) return edge + z + 1.25;
    if (z < 1.6) return edge + 2.5 + head0(z);
    return 2.0 * edge + 2.5;
}

double partial1(double z) {
    static const double edge = head1(1.6);
    if (z <= -1.6 || z >= 1.6) return 0.0;
    if (z < -1.25) return head1(-z) - edge;
    if (z <= 1.25) return -edge + 0.5 * (z * z - 1.5625);
    return head1(z) - edge;
}

}  // namespace

// Inside the window the raw symbol is linear on each side of P, so the
// convolution is the left line plus the slope jump times int rho(y) (d - y)_+ dy.
double EnergySymbol::smoothed(double x, int k) const {
    const double P = std::ldexp(1.0, k);
    const double c0 = bump_normalizer();
    const double ak = dyadic_value(k);
    const double left = k == kM_ ? 0.0 : (ak - dyadic_value(k - 1)) / (P / 2);
    const double right = (dyadic_value(k + 1) - ak) / P;
    const double d = x - P;
    const double z = 10.0 * d / P;
    const double ramp = c0 * (d * partial0(z) - P / 10.0 * partial1(z));
    return ak + left * d + (right - left) * ramp;
}

double EnergySymbol::operator()(double xi) const {
    const double x = std::abs(xi);
    if (x < 0.75 * M_) return raw(x);
    const int k = int(std::lround(std::log2(x)));
    if (k >= kM_) {
        const double P = std::ldexp(1.0, k);
        if (std::abs(x - P) <= P / 4.0) return smoothed(x, k);
    }
    return raw(x);
}

void EnergySymbol::tabulate(i64 n_max) {
    table_.resize(std::size_t(n_max + 1));
    for (i64 n = 0; n <= n_max; ++n) table_[std::size_t(n)] = (*this)(double(n));
}

double EnergySymbol::at(i64 n) const {
    const auto a = std::size_t(std::llabs(n));
    return a < table_.size() ? table_[a] : (*this)(double(n));
}

nlohmann::json SymbolReport::to_json() const {
    return {{"deriv1_constant", deriv1_constant},
            {"deriv2_constant", deriv2_constant},
            {"worst_xi1", worst_xi1},
            {"worst_xi2", worst_xi2},
            {"comparability", comparability},
            {"constancy_deviation", constancy_deviation},
            {"symmetry_deviation", symmetry_deviation}};
}

SymbolReport symbol_check(const EnergySymbol& sym, int samples_per_block) {
    if (samples_per_block < 2) throw std::invalid_argument("symbol_check: need >= 2 samples per block");
    SymbolReport rep;
    const double M = sym.M();
    const double a0 = sym(0.0);
    for (int i = 0; i <= samples_per_block; ++i) {
        const double xi = -M / 2 + M * i / samples_per_block;
        rep.constancy_deviation = std::max(rep.constancy_deviation, std::abs(sym(xi) - a0) / a0);
    }
    const int k_top = sym.k0() + 4;
    const int kM = int(std::lround(std::log2(M)));
    auto probe = [&](double xi, double h) {
        const double am = sym(xi - h), ac = sym(xi), ap = sym(xi + h);
        const double d1 = std::abs(ap - am) / (2 * h) * std::sqrt(M * M + xi * xi) / ac;
        const double d2 = std::abs(ap - 2 * ac + am) / (h * h) * (M * M + xi * xi) / ac;
        if (d1 > rep.deriv1_constant) { rep.deriv1_constant = d1; rep.worst_xi1 = xi; }
        if (d2 > rep.deriv2_constant) { rep.deriv2_constant = d2; rep.worst_xi2 = xi; }
        rep.symmetry_deviation = std::max(rep.symmetry_deviation, std::abs(sym(-xi) - ac));
        return ac;
    };
    for (int i = 1; i < samples_per_block; ++i) probe(M * i / samples_per_block, 1e-3 * M);
    for (int k = kM + 1; k <= k_top; ++k) {
        const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
        double amin = INFINITY, amax = 0.0;
        for (int i = 0; i <= samples_per_block; ++i) {
            const double xi = lo + (hi - lo) * i / samples_per_block;
            const double a = probe(xi, 1e-3 * lo);
            amin = std::min(amin, a);
            amax = std::max(amax, a);
        }
        rep.comparability = std::max(rep.comparability, amax / amin);
    }
    return rep;
}

double psi(const std::array<i64, 4>& n, const EnergySymbol& sym) {
    if (n[0] - n[1] + n[2] - n[3] != 0) throw std::invalid_argument("psi: need n1 - n2 + n3 - n4 = 0");
    return sym.at(n[0]) - sym.at(n[1]) + sym.at(n[2]) - sym.at(n[3]);
}

PsiBoundReport psi_bound_check(const EnergySymbol& sym_in, i64 lo, i64 hi) {
    if (lo < 8 || hi < lo) throw std::invalid_argument("psi_bound_check: need 8 <= lo <= hi");
    EnergySymbol sym = sym_in;
    sym.tabulate(hi + hi / 4 + 2);
    auto d2 = [&](i64 m) { return std::abs(sym.at(m + 1) - 2 * sym.at(m) + sym.at(m - 1)); };
    const i64 a_lo = lo - lo / 8 - 1;  // largest symbol value in the sampled range
    PsiBoundReport rep;
    for (i64 ns = lo; ns <= hi; ++ns) {
        const i64 r = ns / 8;
        for (i64 p = -r; p <= r; ++p) {
            if (p == 0) continue;
            for (i64 q = -r; q <= r; ++q) {
                if (q == 0) continue;
                const std::array<i64, 4> t{ns + p, ns + p + q, ns + q, ns};
                // Differences at the round-off level of the values count as zero.
                const double floor = 16 * std::numeric_limits<double>::epsilon() * sym.at(a_lo);
                const double v = std::max(std::abs(psi(t, sym)) - floor, 0.0);
                const i64 a = std::min({t[0], t[1], t[2], t[3]});
                const i64 b = std::max({t[0], t[1], t[2], t[3]});
                double m = 0.0;
                for (i64 x = a + 1; x < b; ++x) m = std::max(m, d2(x));
                ++rep.samples;
                const double denom = double(std::llabs(p * q)) * m;
                const double ratio = denom > 0 ? v / denom : (v > 0 ? INFINITY : 0.0);
                if (ratio > rep.max_ratio) {
                    rep.max_ratio = ratio;
                    rep.worst = t;
                }
            }
        }
    }
    return rep;
}

std::vector<double> symbol_weights(const EnergySymbol& sym, int N) {
    std::vector<double> a(std::size_t(2 * N + 1));
    for (int n = 0; n <= N; ++n) a[std::size_t(n + N)] = sym(n);
    for (int n = -N; n < 0; ++n) a[std::size_t(n + N)] = a[std::size_t(-n + N)];
    return a;
}

double energy_E(const FourierState& state, const std::vector<double>& a) {
    if (a.size() != state.size()) throw std::invalid_argument("energy_E: weight size mismatch");
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e += a[i] * std::norm(state.coeffs[i]);
    return e;
}

double energy_E(const FourierState& state, const EnergySymbol& sym) {
    return energy_E(state, symbol_weights(sym, state.N));
}

double flux_density(const FourierState& u, const std::vector<double>& a) {
    if (a.size() != u.size()) throw std::invalid_argument("flux_density: weight size mismatch");
    const int N = u.N;
    auto w = [&](int n) { return a[std::size_t(n + N)]; };
    cplx acc{};
    for (int n1 = -N; n1 <= N; ++n1)
        for (int n3 = -N; n3 <= N; ++n3)
            for (int n2 = -N; n2 <= N; ++n2) {
                if (n2 == n1 || n2 == n3) continue;
                const int n4 = n1 - n2 + n3;
                if (n4 < -N || n4 > N) continue;
                const double ps = w(n1) - w(n2) + w(n3) - w(n4);
                acc += ps * u[n1] * std::conj(u[n2]) * u[n3] * std::conj(u[n4]);
            }
    return (cplx(0.0, 0.5) * acc).real();
}

FluxCheck flux_identity_check(const Trajectory& traj, const std::vector<double>& a) {
    traj.validate();
    std::vector<double> f;
    f.reserve(traj.size());
    for (const auto& s : traj.samples) f.push_back(flux_density(s, a));
    FluxCheck c;
    c.energy_change = energy_E(traj.samples.back(), a) - energy_E(traj.samples.front(), a);
    c.flux_integral = simpson(f, traj.dt_sample);
    c.residual = std::abs(c.energy_change - c.flux_integral);
    return c;
}

FluxCheck flux_identity_check(const Trajectory& traj, const EnergySymbol& sym) {
    return flux_identity_check(traj, symbol_weights(sym, traj.cutoff()));
}

}  // namespace bnf
