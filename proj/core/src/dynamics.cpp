#include "bnf/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fft_grid.hpp"

namespace bnf {

namespace {

double quartic(int n) {
    const double d = n;
    return d * d * d * d;
}

detail::FftGrid& grid_for(int N) {
    return detail::FftGrid::get(SpectralConfig::for_cutoff(N).grid_points);
}

// (|u|^2 - gamma m) u on the padded grid, scaled by `scale`, truncated to the band.
void cubic_into(const FourierState& u, double gamma, double scale, FourierState& out,
                std::vector<cplx>& buf) {
    auto& g = grid_for(u.N);
    g.synthesize(u, buf);
    const double m = mean_mass(u);
    for (auto& z : buf) z *= scale * (std::norm(z) - gamma * m);
    g.analyze(buf, out);
}

}  // namespace

EquationKind EquationKind::parse(const std::string& name, double gamma, int sign) {
    EquationKind k;
    if (name == "original") k = {Variant::original, gamma, sign};
    else if (name == "wick") k = {Variant::wick, gamma, sign};
    else if (name == "renormalized") k = renormalized(gamma, sign);
    else throw std::invalid_argument("unknown equation kind '" + name + "'");
    k.validate();
    return k;
}

std::string EquationKind::name() const {
    switch (variant) {
        case Variant::original: return "original";
        case Variant::wick: return "wick";
        case Variant::renormalized: return "renormalized";
    }
    return "?";
}

void EquationKind::validate() const {
    if (sign != 1 && sign != -1) throw std::invalid_argument("equation sign must be +1 or -1");
    if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
    if (variant == Variant::original && gamma != 0.0)
        throw std::invalid_argument("original equation has gamma = 0");
    if (variant == Variant::wick && gamma != 2.0)
        throw std::invalid_argument("wick equation has gamma = 2");
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (store_every < 1) throw std::invalid_argument("store_every must be >= 1");
}

double mean_mass(const FourierState& state) {
    double acc = 0.0;
    for (const auto& z : state.coeffs) acc += std::norm(z);
    return acc;
}

FourierState nonresonant_N(const FourierState& u1, const FourierState& u2,
                           const FourierState& u3) {
    check_same_cutoff(u1, u2, "nonresonant_N");
    check_same_cutoff(u1, u3, "nonresonant_N");
    const int N = u1.N;
    FourierState out(N, u1.t);
    for (int n = -N; n <= N; ++n) {
        cplx acc{};
        for (int n1 = -N; n1 <= N; ++n1) {
            if (n1 == n) continue;
            for (int n3 = -N; n3 <= N; ++n3) {
                if (n3 == n) continue;
                const int n2 = n1 + n3 - n;
                if (n2 < -N || n2 > N) continue;
                acc += u1[n1] * std::conj(u2[n2]) * u3[n3];
            }
        }
        out[n] = acc;
    }
    return out;
}

FourierState nonresonant_N_fft(const FourierState& u1, const FourierState& u2,
                               const FourierState& u3) {
    check_same_cutoff(u1, u2, "nonresonant_N_fft");
    check_same_cutoff(u1, u3, "nonresonant_N_fft");
    const int N = u1.N;
    auto& g = grid_for(N);
    std::vector<cplx> a, b, c;
    g.synthesize(u1, a);
    g.synthesize(u2, b);
    g.synthesize(u3, c);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= std::conj(b[k]) * c[k];
    FourierState out(N, u1.t);
    g.analyze(a, out);
    // Remove n1 = n and n3 = n, restore their overlap n1 = n2 = n3 = n.
    cplx s12{}, s23{};
    for (int m = -N; m <= N; ++m) {
        s12 += u1[m] * std::conj(u2[m]);
        s23 += std::conj(u2[m]) * u3[m];
    }
    for (int n = -N; n <= N; ++n)
        out[n] += -u1[n] * s23 - u3[n] * s12 + u1[n] * std::conj(u2[n]) * u3[n];
    return out;
}

FourierState resonant_R(const FourierState& u1, const FourierState& u2,
                        const FourierState& u3) {
    check_same_cutoff(u1, u2, "resonant_R");
    check_same_cutoff(u1, u3, "resonant_R");
    FourierState out(u1.N, u1.t);
    for (int n = -u1.N; n <= u1.N; ++n) out[n] = u1[n] * std::conj(u2[n]) * u3[n];
    return out;
}

FourierState wick_nonlinearity(const FourierState& u) { return cubic_nonlinearity(u, 2.0); }

FourierState wick_nonlinearity_spectral(const FourierState& u) {
    FourierState out = nonresonant_N(u, u, u);
    const FourierState r = resonant_R(u, u, u);
    for (std::size_t i = 0; i < out.size(); ++i) out.coeffs[i] -= r.coeffs[i];
    return out;
}

FourierState cubic_nonlinearity(const FourierState& u, double gamma) {
    FourierState out(u.N, u.t);
    std::vector<cplx> buf;
    cubic_into(u, gamma, 1.0, out, buf);
    return out;
}

Trajectory gauge_transform(const Trajectory& traj, double gamma, int direction, double mass_tol) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("gauge_transform: direction must be +1 or -1");
    Trajectory out = traj;
    if (traj.samples.empty()) return out;
    const double m0 = mean_mass(traj.samples.front());
    for (const auto& s : traj.samples) {
        const double m = mean_mass(s);
        if (std::abs(m - m0) > mass_tol * std::max(1.0, m0)) {
            std::ostringstream msg;
            msg << "gauge_transform: mean mass not conserved along trajectory (t=" << s.t
                << ", drift " << std::abs(m - m0) << ")";
            throw std::invalid_argument(msg.str());
        }
    }
    for (auto& s : out.samples) {
        const cplx f = std::polar(1.0, direction * gamma * s.t * m0);
        for (auto& z : s.coeffs) z *= f;
    }
    return out;
}

FourierState linear_propagate(const FourierState& state, double t) {
    FourierState out = state;
    for (int n = -state.N; n <= state.N; ++n) out[n] *= std::polar(1.0, -quartic(n) * t);
    out.t = state.t + t;
    return out;
}

FourierState to_interaction(const FourierState& state) {
    FourierState out = state;
    for (int n = -state.N; n <= state.N; ++n) out[n] *= std::polar(1.0, quartic(n) * state.t);
    return out;
}

FourierState from_interaction(const FourierState& state) {
    FourierState out = state;
    for (int n = -state.N; n <= state.N; ++n) out[n] *= std::polar(1.0, -quartic(n) * state.t);
    return out;
}

Trajectory interaction_rep(const Trajectory& traj) {
    Trajectory out = traj;
    for (auto& s : out.samples) s = to_interaction(s);
    return out;
}

Trajectory from_interaction_rep(const Trajectory& traj) {
    Trajectory out = traj;
    for (auto& s : out.samples) s = from_interaction(s);
    return out;
}

Trajectory evolve(const FourierState& u0, const EquationKind& kind, double T,
                  const IntegratorConfig& cfg, EvolveReport* report) {
    kind.validate();
    cfg.validate();
    if (!(T > 0.0)) throw std::invalid_argument("evolve: T must be positive");
    if (!u0.finite()) throw std::invalid_argument("evolve: non-finite initial data");
    const double ratio = T / cfg.dt;
    const auto steps = static_cast<std::uint64_t>(std::llround(ratio));
    if (steps == 0 || std::abs(ratio - double(steps)) > 1e-9 * ratio)
        throw std::invalid_argument("evolve: T must be an integer multiple of dt");
    if (steps % static_cast<std::uint64_t>(cfg.store_every) != 0)
        throw std::invalid_argument("evolve: step count must be a multiple of store_every");

    const int N = u0.N;
    const double h = cfg.dt;
    std::vector<cplx> e_half(u0.size()), e_full(u0.size());
    for (int n = -N; n <= N; ++n) {
        e_half[std::size_t(n + N)] = std::polar(1.0, -quartic(n) * h / 2);
        e_full[std::size_t(n + N)] = std::polar(1.0, -quartic(n) * h);
    }
    const cplx force = cplx(0.0, -1.0) * double(kind.sign);
    std::vector<cplx> buf;
    auto G = [&](const FourierState& u, FourierState& out) {
        cubic_into(u, kind.gamma, 1.0, out, buf);
        for (auto& z : out.coeffs) z *= force;
    };

    Trajectory traj;
    traj.dt_sample = h * cfg.store_every;
    traj.samples.reserve(steps / std::uint64_t(cfg.store_every) + 1);
    FourierState u = u0;
    traj.samples.push_back(u);
    const double l2_0 = l2_norm(u0);
    double max_drift = 0.0;

    FourierState k1(N), k2(N), k3(N), k4(N), w(N);
    const std::size_t M = u.size();
    for (std::uint64_t step = 1; step <= steps; ++step) {
        G(u, k1);
        for (std::size_t i = 0; i < M; ++i)
            w.coeffs[i] = e_half[i] * (u.coeffs[i] + 0.5 * h * k1.coeffs[i]);
        G(w, k2);
        for (std::size_t i = 0; i < M; ++i)
            w.coeffs[i] = e_half[i] * u.coeffs[i] + 0.5 * h * k2.coeffs[i];
        G(w, k3);
        for (std::size_t i = 0; i < M; ++i)
            w.coeffs[i] = e_full[i] * u.coeffs[i] + h * e_half[i] * k3.coeffs[i];
        G(w, k4);
        for (std::size_t i = 0; i < M; ++i)
            u.coeffs[i] = e_full[i] * u.coeffs[i] +
                          h / 6.0 *
                              (e_full[i] * k1.coeffs[i] +
                               2.0 * e_half[i] * (k2.coeffs[i] + k3.coeffs[i]) + k4.coeffs[i]);
        u.t = u0.t + double(step) * h;
        if (!u.finite()) {
            std::ostringstream msg;
            msg << "evolve: non-finite state at step " << step << " (t=" << u.t << ")";
            throw std::runtime_error(msg.str());
        }
        if (step % std::uint64_t(cfg.store_every) == 0) {
            traj.samples.push_back(u);
            if (l2_0 > 0) max_drift = std::max(max_drift, std::abs(l2_norm(u) - l2_0) / l2_0);
        }
    }
    if (report) {
        report->l2_initial = l2_0;
        report->l2_final = l2_norm(u);
        report->max_relative_l2_drift = max_drift;
        report->steps = steps;
    }
    return traj;
}

}  // namespace bnf
