#include "bnf/phase.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace bnf {

namespace {

void guard(const ResonantTuple& t) {
    if (t.max_abs() > kMaxFrequency)
        throw std::overflow_error("frequency magnitude exceeds the 64-bit phase guard");
    if (!t.consistent()) throw std::invalid_argument("tuple violates n = n1 - n2 + n3");
}

i64 mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("phase arithmetic overflow");
    return r;
}

i64 add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("phase arithmetic overflow");
    return r;
}

i64 pow4(i64 x) { return x * x * x * x; }

}  // namespace

i64 ResonantTuple::max_abs() const {
    return std::max({std::llabs(n1), std::llabs(n2), std::llabs(n3), std::llabs(n)});
}

i64 phi(const ResonantTuple& t) {
    guard(t);
    return pow4(t.n1) - pow4(t.n2) + pow4(t.n3) - pow4(t.n);
}

i64 phase_weight(const ResonantTuple& t) {
    guard(t);
    const i64 s = t.n1 + t.n3;
    return t.n1 * t.n1 + t.n2 * t.n2 + t.n3 * t.n3 + t.n * t.n + 2 * s * s;
}

i64 phi_factored(const ResonantTuple& t) {
    const i64 q = phase_weight(t);
    return -mul(mul(t.n - t.n1, t.n - t.n3), q);
}

i64 mu_phase(const ResonantTuple& t) {
    guard(t);
    return -t.n1 * t.n1 + t.n2 * t.n2 - t.n3 * t.n3 + t.n * t.n;
}

i64 mu_factored(const ResonantTuple& t) {
    guard(t);
    return 2 * (t.n - t.n1) * (t.n - t.n3);
}

i64 phi_general(i64 lambda, i64 mu, const ResonantTuple& t) {
    const i64 quad = -mu_phase(t);  // n1^2 - n2^2 + n3^2 - n^2
    return add(-mul(lambda, quad), mul(mu, phi(t)));
}

i64 phi_general_factored(i64 lambda, i64 mu, const ResonantTuple& t) {
    const i64 q = phase_weight(t);
    const i64 bracket = add(mul(-2, lambda), mul(mu, q));
    return mul(mul(t.n1 - t.n2, t.n1 - t.n), bracket);
}

std::vector<ResonantTuple> gamma_enumerate(i64 n, i64 N) {
    if (N < 0 || std::llabs(n) > N) throw std::invalid_argument("gamma_enumerate: need |n| <= N");
    std::vector<ResonantTuple> out;
    for (i64 n1 = -N; n1 <= N; ++n1) {
        if (n1 == n) continue;
        for (i64 n3 = -N; n3 <= N; ++n3) {
            if (n3 == n) continue;
            const i64 n2 = n1 + n3 - n;
            if (n2 < -N || n2 > N) continue;
            out.push_back({n1, n2, n3, n});
        }
    }
    return out;
}

nlohmann::json FactorizationReport::to_json() const {
    auto v = nlohmann::json::array();
    for (const auto& x : violations)
        v.push_back({{"tuple", {x.tuple.n1, x.tuple.n2, x.tuple.n3, x.tuple.n}}, {"check", x.check}});
    return {{"range", range},
            {"tuples_checked", tuples_checked},
            {"resonant_tuples", resonant_tuples},
            {"violations", v}};
}

FactorizationReport check_factorization(i64 range_N, std::size_t max_violations) {
    if (range_N < 0 || range_N > kMaxFrequency)
        throw std::invalid_argument("check_factorization: range out of bounds");
    FactorizationReport rep;
    rep.range = range_N;
    auto flag = [&](const ResonantTuple& t, const char* what) {
        if (rep.violations.size() < max_violations) rep.violations.push_back({t, what});
    };
    for (i64 n1 = -range_N; n1 <= range_N; ++n1) {
        for (i64 n3 = -range_N; n3 <= range_N; ++n3) {
            for (i64 n = -range_N; n <= range_N; ++n) {
                const i64 n2 = n1 + n3 - n;
                if (n2 < -range_N || n2 > range_N) continue;
                const ResonantTuple t{n1, n2, n3, n};
                ++rep.tuples_checked;
                const i64 p = phi(t), pf = phi_factored(t);
                const i64 m = mu_phase(t), mf = mu_factored(t);
                if (p != pf) flag(t, "phi expanded != factored");
                if (m != mf) flag(t, "mu expanded != factored");
                if (!t.admissible()) {
                    ++rep.resonant_tuples;
                    if (p != 0 || m != 0) flag(t, "resonant tuple with nonzero phase");
                    continue;
                }
                if (p == 0 || m == 0) flag(t, "vanishing phase on Gamma(n)");
                const i64 q = phase_weight(t);
                const i64 nmax = t.max_abs();
                const i64 ap = std::llabs(p), am = std::llabs(m);
                // |phi| = |mu| Q / 2 and Q >= nmax^2; the last line is 8 nmax^2 >= |mu|
                if (2 * ap != am * q) flag(t, "2|phi| != |mu| Q");
                if (q < nmax * nmax) flag(t, "Q < nmax^2");
                if (2 * ap < am * nmax * nmax) flag(t, "|phi| < |mu| nmax^2 / 2");
                if (8 * am * nmax * nmax < am * am) flag(t, "|mu| nmax^2 / 2 < |mu|^2 / 16");
            }
        }
    }
    return rep;
}

}  // namespace bnf
