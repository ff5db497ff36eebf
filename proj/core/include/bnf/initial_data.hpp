#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "bnf/spectral.hpp"

namespace bnf {

FourierState single_mode(int N, int n, cplx a);
FourierState two_mode(int N, int n1, cplx a1, int n2, cplx a2);
// c_n = e^{-n^2 / sigma^2} e^{i theta_n}, theta_n uniform from the seed.
FourierState gaussian_data(int N, double sigma, std::uint64_t seed);
// c_n = g_n <n>^{-s - 1/2 - eps}, g_n standard complex Gaussian from the seed.
FourierState random_hs(int N, double s, std::uint64_t seed, double eps = 1e-3);
// Complex Gaussian coefficients normalized to unit l2 norm.
FourierState random_unit(int N, std::uint64_t seed);

// Generator by name: "single_mode", "two_mode", "gaussian", "random_hs".
FourierState make_initial_data(const nlohmann::json& spec, int N, std::uint64_t seed);

}  // namespace bnf
