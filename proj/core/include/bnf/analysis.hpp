#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnf/phase.hpp"
#include "bnf/spectral.hpp"

namespace bnf {

// Smooth bump: 1 on [-5/4, 5/4], 0 outside (-8/5, 8/5), e^{-1/x} transitions.
double bump_eta0(double x);
// 1 / int eta0; the bump integrates to exactly 2.85.
double bump_normalizer();

// Dyadically localized weight |xi|^{2s} min(|xi|/2^k0, 2^k0/|xi|)^delta0, linearly
// interpolated between the points +-2^k (2^k >= M), constant on [-M, M] and
// mollified on |xi - 2^k| <= 2^k/4.
class EnergySymbol {
public:
    EnergySymbol(double s, double delta0, int k0, double M);
    static double default_delta0(double s);

    double s() const { return s_; }
    double delta0() const { return delta0_; }
    int k0() const { return k0_; }
    double M() const { return M_; }

    double raw(double xi) const;  // before mollification
    double operator()(double xi) const;
    // Value at an integer, from the table when tabulate() covered it.
    double at(i64 n) const;
    void tabulate(i64 n_max);

private:
    double s_, delta0_;
    int k0_;
    double M_;
    int kM_;
    std::vector<double> table_;

    double dyadic_value(int k) const;
    double smoothed(double xi, int k) const;
};

struct SymbolReport {
    double deriv1_constant = 0.0;   // max |a'| (M^2 + xi^2)^{1/2} / a
    double deriv2_constant = 0.0;   // max |a''| (M^2 + xi^2) / a
    double worst_xi1 = 0.0, worst_xi2 = 0.0;
    double comparability = 1.0;     // max over dyadic blocks of max a / min a
    double constancy_deviation = 0.0;  // max |a(xi) - a(0)| / a(0) on [-M/2, M/2]
    double symmetry_deviation = 0.0;
    nlohmann::json to_json() const;
};

SymbolReport symbol_check(const EnergySymbol& sym, int samples_per_block = 400);

// Psi = a(n1) - a(n2) + a(n3) - a(n4) for n1 - n2 + n3 - n4 = 0.
double psi(const std::array<i64, 4>& n, const EnergySymbol& sym);

struct PsiBoundReport {
    std::uint64_t samples = 0;
    double max_ratio = 0.0;  // |Psi| / (|p q| max |D^2 a| over the hull)
    std::array<i64, 4> worst{};
};
// Samples the regime |n4 - n1|, |n4 - n3| <= n*/8 for n* in [lo, hi].
PsiBoundReport psi_bound_check(const EnergySymbol& sym, i64 lo, i64 hi);

// a(n) for n = -N..N; any weight table of this shape can stand in for a symbol below.
std::vector<double> symbol_weights(const EnergySymbol& sym, int N);

double energy_E(const FourierState& state, const EnergySymbol& sym);
double energy_E(const FourierState& state, const std::vector<double>& a);

// (i/2) sum over n1 - n2 + n3 - n4 = 0, n2 not in {n1, n3}, of Psi c1 conj(c2) c3 conj(c4).
double flux_density(const FourierState& u, const std::vector<double>& a);

struct FluxCheck {
    double energy_change = 0.0;
    double flux_integral = 0.0;
    double residual = 0.0;
};
// Over the whole trajectory (wick, original variables), Simpson in time.
FluxCheck flux_identity_check(const Trajectory& traj, const EnergySymbol& sym);
FluxCheck flux_identity_check(const Trajectory& traj, const std::vector<double>& a);

struct SpaceTimeGrid {
    int N = 0;
    double T_w = 1.0;
    int n_t = 2;
    void validate() const;
    double time(int k) const { return T_w * k / n_t; }
};

// Samples of the field (Fourier coefficients in x) at t_k = k T_w / n_t.
struct SpaceTimeField {
    SpaceTimeGrid grid;
    std::vector<FourierState> slices;
};

SpaceTimeField sample_linear_solution(const FourierState& f, const SpaceTimeGrid& grid);

// sqrt(sum <n>^{2s} <tau + n^4>^{2b} |c(n, tau)|^2), c the normalized temporal DFT on
// tau = 2 pi m / T_w; windowed = true applies a Hann window (mean-square normalized).
double xsb_norm(const SpaceTimeField& field, double s, double b, bool windowed = false);

// ||S(t) f||_{L^p(T x [0, T_w])} / ||f||_{l2}, exact time integration, p in {4, 6}.
double strichartz_ratio(const FourierState& f, int p, double T_w);

}  // namespace bnf
