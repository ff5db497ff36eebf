#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bnf {

using i64 = std::int64_t;

// |n| <= 55108 keeps n^4 and the factored products inside signed 64-bit.
inline constexpr i64 kMaxFrequency = 55108;

struct ResonantTuple {
    i64 n1 = 0, n2 = 0, n3 = 0, n = 0;

    static ResonantTuple from_outer(i64 n1, i64 n2, i64 n3) { return {n1, n2, n3, n1 - n2 + n3}; }

    bool consistent() const { return n == n1 - n2 + n3; }
    // Member of Gamma(n): consistent and n1, n3 != n.
    bool admissible() const { return consistent() && n1 != n && n3 != n; }
    i64 max_abs() const;

    friend bool operator==(const ResonantTuple&, const ResonantTuple&) = default;
};

// n1^4 - n2^4 + n3^4 - n^4
i64 phi(const ResonantTuple& t);
// -(n - n1)(n - n3)(n1^2 + n2^2 + n3^2 + n^2 + 2(n1 + n3)^2)
i64 phi_factored(const ResonantTuple& t);
// The quadratic factor Q above.
i64 phase_weight(const ResonantTuple& t);

// -n1^2 + n2^2 - n3^2 + n^2
i64 mu_phase(const ResonantTuple& t);
// 2(n - n1)(n - n3)
i64 mu_factored(const ResonantTuple& t);

// -lambda(n1^2 - n2^2 + n3^2 - n^2) + mu(n1^4 - n2^4 + n3^4 - n^4)
i64 phi_general(i64 lambda, i64 mu, const ResonantTuple& t);
// (n1 - n2)(n1 - n)(-2 lambda + mu Q)
i64 phi_general_factored(i64 lambda, i64 mu, const ResonantTuple& t);

// Gamma(n) inside the box |n_i| <= N, ordered lexicographically in (n1, n3).
std::vector<ResonantTuple> gamma_enumerate(i64 n, i64 N);

struct FactorizationViolation {
    ResonantTuple tuple;
    std::string check;
};

struct FactorizationReport {
    i64 range = 0;
    std::uint64_t tuples_checked = 0;
    std::uint64_t resonant_tuples = 0;
    std::vector<FactorizationViolation> violations;

    bool ok() const { return violations.empty(); }
    nlohmann::json to_json() const;
};

// Exhaustive check over every consistent tuple with |n_i| <= range_N.
FactorizationReport check_factorization(i64 range_N, std::size_t max_violations = 16);

}  // namespace bnf
