#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace bnf {

using cplx = std::complex<double>;

// Fourier convention: u(x) = sum_n c_n e^{inx}, c_n = (1/2pi) int u e^{-inx} dx.

struct SpectralConfig {
    int cutoff_N = 0;
    int grid_points = 0;

    // Smallest 2^a 3^b 5^c length >= 4N+2.
    static SpectralConfig for_cutoff(int N);
    void validate() const;
};

struct FourierState {
    int N = 0;
    double t = 0.0;
    std::vector<cplx> coeffs;  // index n + N, n = -N..N

    FourierState() = default;
    explicit FourierState(int cutoff, double time = 0.0)
        : N(cutoff), t(time), coeffs(static_cast<std::size_t>(2 * cutoff + 1)) {
        if (cutoff < 0) throw std::invalid_argument("FourierState: negative cutoff");
    }

    std::size_t size() const { return coeffs.size(); }
    cplx& operator[](int n) { return coeffs[static_cast<std::size_t>(n + N)]; }
    const cplx& operator[](int n) const { return coeffs[static_cast<std::size_t>(n + N)]; }
    // Zero outside the band.
    cplx at(int n) const { return (n < -N || n > N) ? cplx{} : (*this)[n]; }

    bool finite() const;
};

struct Trajectory {
    double dt_sample = 0.0;
    std::vector<FourierState> samples;

    int cutoff() const { return samples.empty() ? 0 : samples.front().N; }
    std::size_t size() const { return samples.size(); }
    void validate() const;
};

std::vector<cplx> to_physical(const FourierState& state, const SpectralConfig& cfg);
FourierState to_spectral(std::span<const cplx> samples, const SpectralConfig& cfg,
                         double t = 0.0);

double hs_norm(const FourierState& state, double s, double M = 1.0);
double l2_norm(const FourierState& state);

// Plain range: keeps lo <= n <= hi.
FourierState project(const FourierState& state, int lo, int hi);
// Band: keeps lo <= |n| <= hi.
FourierState project_band(const FourierState& state, int lo, int hi);
// Littlewood-Paley piece: k = 0 is n = 0, k >= 1 is 2^{k-1} <= |n| < 2^k.
FourierState dyadic_piece(const FourierState& state, int k);
int dyadic_count(int N);

void check_same_cutoff(const FourierState& a, const FourierState& b, const char* where);

nlohmann::json to_json(const FourierState& state);
FourierState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Trajectory& traj);

}  // namespace bnf
