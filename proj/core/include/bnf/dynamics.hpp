#pragma once

#include <cstdint>
#include <string>

#include "bnf/spectral.hpp"

namespace bnf {

// i u_t = u_xxxx + sign (|u|^2 - gamma mu(u)) u, mu(u) = sum |c_n|^2.
struct EquationKind {
    enum class Variant { original, wick, renormalized };

    Variant variant = Variant::wick;
    double gamma = 2.0;
    int sign = +1;

    static EquationKind original(int sign = +1) { return {Variant::original, 0.0, sign}; }
    static EquationKind wick(int sign = +1) { return {Variant::wick, 2.0, sign}; }
    static EquationKind renormalized(double gamma, int sign = +1) {
        return {Variant::renormalized, gamma, sign};
    }
    static EquationKind parse(const std::string& name, double gamma, int sign);
    std::string name() const;
    void validate() const;
};

struct IntegratorConfig {
    double dt = 1e-3;
    int store_every = 1;

    void validate() const;
};

double mean_mass(const FourierState& state);

// Non-resonant trilinear sum over Gamma(n) in the box, evaluated directly.
FourierState nonresonant_N(const FourierState& u1, const FourierState& u2,
                           const FourierState& u3);
// Same quantity through padded transforms.
FourierState nonresonant_N_fft(const FourierState& u1, const FourierState& u2,
                               const FourierState& u3);
// Pointwise c1(n) conj(c2(n)) c3(n).
FourierState resonant_R(const FourierState& u1, const FourierState& u2,
                        const FourierState& u3);

// (|u|^2 - 2 mu(u)) u truncated to the band, physical-space evaluation.
FourierState wick_nonlinearity(const FourierState& u);
// N(u,u,u) - R(u,u,u) through the Gamma-sum.
FourierState wick_nonlinearity_spectral(const FourierState& u);
// (|u|^2 - gamma mu(u)) u truncated to the band.
FourierState cubic_nonlinearity(const FourierState& u, double gamma);

// Multiplies each sample by e^{i direction gamma t mu}; refuses if mass drifts by more than tol.
Trajectory gauge_transform(const Trajectory& traj, double gamma, int direction,
                           double mass_tol = 1e-6);

// c_n -> e^{-i n^4 t} c_n
FourierState linear_propagate(const FourierState& state, double t);
// c_n -> e^{i t n^4} c_n at each sample's own time.
Trajectory interaction_rep(const Trajectory& traj);
Trajectory from_interaction_rep(const Trajectory& traj);
FourierState to_interaction(const FourierState& state);
FourierState from_interaction(const FourierState& state);

struct EvolveReport {
    double l2_initial = 0.0;
    double l2_final = 0.0;
    double max_relative_l2_drift = 0.0;
    std::uint64_t steps = 0;
};

// Integrating-factor RK4 in interaction variables; samples are stored in the
// original variables every store_every steps, starting with u0 at time u0.t.
Trajectory evolve(const FourierState& u0, const EquationKind& kind, double T,
                  const IntegratorConfig& cfg, EvolveReport* report = nullptr);

}  // namespace bnf
