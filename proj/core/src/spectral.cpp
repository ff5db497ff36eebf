#include "bnf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "fft_grid.hpp"

namespace bnf {

namespace {

bool smooth_length(int n) {
    for (int p : {2, 3, 5})
        while (n % p == 0) n /= p;
    return n == 1;
}

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

namespace detail {

FftGrid::FftGrid(int n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    in_ = fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n));
    out_ = fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n));
    auto* in = static_cast<fftw_complex*>(in_);
    auto* out = static_cast<fftw_complex*>(out_);
    fwd_ = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw planning failed for n=" + std::to_string(n));
}

FftGrid::~FftGrid() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(in_);
    fftw_free(out_);
}

void FftGrid::synthesize(const FourierState& s, std::vector<cplx>& out) {
    auto* in = reinterpret_cast<cplx*>(in_);
    std::fill(in, in + n_, cplx{});
    for (int k = -s.N; k <= s.N; ++k) in[((k % n_) + n_) % n_] += s[k];
    fftw_execute(static_cast<fftw_plan>(bwd_));
    auto* res = reinterpret_cast<cplx*>(out_);
    out.assign(res, res + n_);
}

void FftGrid::analyze(const std::vector<cplx>& samples, FourierState& out) {
    auto* in = reinterpret_cast<cplx*>(in_);
    std::copy(samples.begin(), samples.end(), in);
    fftw_execute(static_cast<fftw_plan>(fwd_));
    auto* res = reinterpret_cast<cplx*>(out_);
    const double scale = 1.0 / n_;
    for (int k = -out.N; k <= out.N; ++k) out[k] = res[((k % n_) + n_) % n_] * scale;
}

FftGrid& FftGrid::get(int n) {
    thread_local std::map<int, std::unique_ptr<FftGrid>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftGrid>(n);
    return *slot;
}

}  // namespace detail

SpectralConfig SpectralConfig::for_cutoff(int N) {
    if (N < 0) throw std::invalid_argument("cutoff_N must be non-negative");
    int g = 4 * N + 2;
    while (!smooth_length(g)) ++g;
    return {N, g};
}

void SpectralConfig::validate() const {
    if (cutoff_N < 0) throw std::invalid_argument("cutoff_N must be non-negative");
    if (grid_points < 4 * cutoff_N + 2)
        throw std::invalid_argument("grid_points must be >= 4N+2 for alias-free cubic products");
}

bool FourierState::finite() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

void Trajectory::validate() const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].N != samples[0].N)
            throw std::invalid_argument("trajectory samples with different cutoffs");
        if (!(samples[i].t > samples[i - 1].t))
            throw std::invalid_argument("trajectory times not strictly increasing");
    }
}

std::vector<cplx> to_physical(const FourierState& state, const SpectralConfig& cfg) {
    cfg.validate();
    if (state.N != cfg.cutoff_N || state.size() != static_cast<std::size_t>(2 * cfg.cutoff_N + 1))
        throw std::invalid_argument("to_physical: state size does not match config");
    std::vector<cplx> out;
    detail::FftGrid::get(cfg.grid_points).synthesize(state, out);
    return out;
}

FourierState to_spectral(std::span<const cplx> samples, const SpectralConfig& cfg, double t) {
    cfg.validate();
    if (samples.size() != static_cast<std::size_t>(cfg.grid_points))
        throw std::invalid_argument("to_spectral: sample count does not match grid_points");
    FourierState out(cfg.cutoff_N, t);
    std::vector<cplx> buf(samples.begin(), samples.end());
    detail::FftGrid::get(cfg.grid_points).analyze(buf, out);
    return out;
}

double hs_norm(const FourierState& state, double s, double M) {
    if (M < 1.0) throw std::invalid_argument("hs_norm: M must be >= 1");
    double acc = 0.0;
    for (int n = -state.N; n <= state.N; ++n) {
        const double w = s == 0.0 ? 1.0 : std::pow(M * M + double(n) * n, s);
        acc += w * std::norm(state[n]);
    }
    return std::sqrt(acc);
}

double l2_norm(const FourierState& state) {
    double acc = 0.0;
    for (const auto& z : state.coeffs) acc += std::norm(z);
    return std::sqrt(acc);
}

FourierState project(const FourierState& state, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("project: lo > hi");
    FourierState out(state.N, state.t);
    for (int n = std::max(lo, -state.N); n <= std::min(hi, state.N); ++n) out[n] = state[n];
    return out;
}

FourierState project_band(const FourierState& state, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("project_band: lo > hi");
    FourierState out(state.N, state.t);
    for (int n = -state.N; n <= state.N; ++n) {
        const int a = std::abs(n);
        if (a >= lo && a <= hi) out[n] = state[n];
    }
    return out;
}

FourierState dyadic_piece(const FourierState& state, int k) {
    if (k < 0) throw std::invalid_argument("dyadic_piece: negative k");
    if (k == 0) return project(state, 0, 0);
    return project_band(state, 1 << (k - 1), (1 << k) - 1);
}

int dyadic_count(int N) {
    int k = 0;
    while ((1 << k) <= N) ++k;
    return k + 1;
}

void check_same_cutoff(const FourierState& a, const FourierState& b, const char* where) {
    if (a.N != b.N || a.size() != b.size())
        throw std::invalid_argument(std::string(where) + ": cutoff mismatch");
}

nlohmann::json to_json(const FourierState& state) {
    std::vector<double> re, im;
    re.reserve(state.size());
    im.reserve(state.size());
    for (const auto& z : state.coeffs) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"N", state.N}, {"t", state.t}, {"re", re}, {"im", im}};
}

FourierState state_from_json(const nlohmann::json& j) {
    const int N = j.at("N").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    FourierState s(N, j.value("t", 0.0));
    if (re.size() != s.size() || im.size() != s.size())
        throw std::invalid_argument("state json: expected 2N+1 entries in re and im");
    for (std::size_t i = 0; i < s.size(); ++i) s.coeffs[i] = {re[i], im[i]};
    return s;
}

nlohmann::json to_json(const Trajectory& traj) {
    auto arr = nlohmann::json::array();
    for (const auto& s : traj.samples) arr.push_back(to_json(s));
    return arr;
}

}  // namespace bnf
