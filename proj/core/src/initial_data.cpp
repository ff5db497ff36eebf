#include "bnf/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bnf {

namespace {

void check_mode(int N, int n) {
    if (n < -N || n > N) throw std::invalid_argument("mode index outside the band");
}

cplx read_amplitude(const nlohmann::json& j, const char* key, cplx fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
    throw std::invalid_argument(std::string("amplitude '") + key +
                                "' must be a number or [re, im]");
}

}  // namespace

FourierState single_mode(int N, int n, cplx a) {
    check_mode(N, n);
    FourierState s(N);
    s[n] = a;
    return s;
}

FourierState two_mode(int N, int n1, cplx a1, int n2, cplx a2) {
    check_mode(N, n1);
    check_mode(N, n2);
    FourierState s(N);
    s[n1] += a1;
    s[n2] += a2;
    return s;
}

FourierState gaussian_data(int N, double sigma, std::uint64_t seed) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    FourierState s(N);
    for (int n = -N; n <= N; ++n)
        s[n] = std::polar(std::exp(-double(n) * n / (sigma * sigma)), angle(rng));
    return s;
}

FourierState random_hs(int N, double s, std::uint64_t seed, double eps) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    FourierState out(N);
    for (int n = -N; n <= N; ++n) {
        const double w = std::pow(1.0 + double(n) * n, 0.5 * (-s - 0.5 - eps));
        const double re = g(rng);
        const double im = g(rng);
        out[n] = w * cplx(re, im);
    }
    return out;
}

FourierState random_unit(int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    FourierState out(N);
    for (auto& z : out.coeffs) {
        const double re = g(rng);
        const double im = g(rng);
        z = {re, im};
    }
    const double nrm = l2_norm(out);
    for (auto& z : out.coeffs) z /= nrm;
    return out;
}

FourierState make_initial_data(const nlohmann::json& spec, int N, std::uint64_t seed) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "single_mode")
        return single_mode(N, spec.value("n", 1), read_amplitude(spec, "a", 1.0));
    if (kind == "two_mode")
        return two_mode(N, spec.value("n1", 1), read_amplitude(spec, "a1", 0.5),
                        spec.value("n2", 2), read_amplitude(spec, "a2", 0.5));
    if (kind == "gaussian") {
        FourierState s = gaussian_data(N, spec.value("sigma", 1.0), seed);
        const double scale = spec.value("scale", 1.0);
        for (auto& z : s.coeffs) z *= scale;
        return s;
    }
    if (kind == "random_hs") {
        FourierState s = random_hs(N, spec.value("s", 0.0), seed, spec.value("eps", 1e-3));
        const double scale = spec.value("scale", 1.0);
        for (auto& z : s.coeffs) z *= scale;
        return s;
    }
    throw std::invalid_argument("unknown initial data kind '" + kind + "'");
}

}  // namespace bnf
