#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnf/bitree.hpp"
#include "bnf/spectral.hpp"

namespace bnf {

struct NFConfig {
    int J = 1;
    double K = 10.0;
    double theta = 2.0 / 3.0;
    int box_N = 4;
    int sign = +1;           // sign of the cubic term of the evolution
    double budget = 1e12;    // refuse when nf_cost_estimate exceeds this
    std::size_t max_terms = 60'000'000;

    void validate() const;
    // Accepts a number or a "p/q" string.
    static double parse_theta(const nlohmann::json& j);
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

// Unpruned leaf count sum_{G=1}^{J+1} c_G (2N+1)^{2G+1}.
double nf_cost_estimate(int J, int N);

// |phi_1| <= K
bool in_A_K(const ResonantTuple& t, double K);
// |next| <= (2j+4)^3 max(|prev|, |phi_1|)^{1-theta}: membership of generation j+1 in C_j.
bool in_C_J(int j, i64 phi_tilde_next, i64 phi_tilde_prev, i64 phi_1, double theta);
// Generation k of a chain is kept for further reduction (k = 1: outside A_K; k >= 2: outside C_{k-1}).
bool reduced_generation(int k, i64 phi_tilde_k, i64 phi_tilde_prev, i64 phi_1, double K,
                        double theta);

enum class FormKind { N0, R, N1, N2 };
std::string form_name(FormKind f);
FormKind parse_form(const std::string& name);
int form_degree(FormKind f, int j);

struct FormValue {
    std::string form;
    int j = 0;
    double t = 0.0;
    int N = 0;
    std::vector<cplx> values;  // index n + N

    cplx operator[](int n) const { return values[std::size_t(n + N)]; }
    double l1() const;
    double max_imag() const;
};

// Compiled finite-depth expansion of d/dt |v_n|^2 in interaction variables.
// Valid degrees: N0(j), R(j) for 2 <= j <= J+1; N1(j), N2(j) for 1 <= j <= J+1.
// N2(j) for j <= J is the fully reduced depth-j sum, so N(j) = N1(j) + N2(j).
class NormalFormExpansion {
public:
    explicit NormalFormExpansion(const NFConfig& cfg);

    const NFConfig& config() const { return cfg_; }

    FormValue evaluate(FormKind f, int j, const FourierState& v, double t) const;
    // Terminals of the first tree carry u, of the second carry v.
    FormValue evaluate_cross(FormKind f, int j, const FourierState& u, const FourierState& v,
                             double t) const;
    // Sum of |coefficient| prod |v_b| over terms, times 2.
    double majorant(FormKind f, int j, const FourierState& v) const;

    // Per n: sum_j N0(j).
    std::vector<double> boundary(const FourierState& v, double t) const;
    // Per n: sum_j R(j) + sum_j N1(j) + N2(J+1).
    std::vector<double> integrand(const FourierState& v, double t) const;

    std::size_t term_count(FormKind f, int j) const;
    std::size_t total_terms() const { return total_terms_; }

private:
    struct TermList {
        int width = 0;
        std::vector<cplx> coef;
        std::vector<i64> phase;
        std::vector<std::int16_t> freq;   // width entries per term
        std::vector<std::int8_t> sign;
        std::vector<std::int8_t> side;
        std::vector<std::int16_t> rslot;  // -1 unless an R insertion
        std::size_t size() const { return coef.size(); }
    };

    NFConfig cfg_;
    std::size_t total_terms_ = 0;
    // lists_[kind][j][n + N]
    std::vector<std::vector<std::vector<TermList>>> lists_;

    const std::vector<TermList>& lists(FormKind f, int j) const;
    std::vector<TermList>& lists_mut(FormKind f, int j);
    void compile();
    cplx sum(const TermList& L, const FourierState& u, const FourierState& v, double t) const;

    friend struct NormalFormCompiler;
};

// Direct Gamma-sum of the nearly resonant first-generation form.
FormValue form_N1_first(const FourierState& v, double t, double K, int sign = +1);
FormValue form_N0(int j, const FourierState& v, double t, const NFConfig& cfg);
FormValue form_R(int j, const FourierState& v, double t, const NFConfig& cfg);
FormValue form_N1(int j, const FourierState& v, double t, const NFConfig& cfg);
// N2(J+1) with J = cfg.J.
FormValue form_error(const FourierState& v, double t, const NFConfig& cfg);
FormValue cross_form(FormKind f, int j, const FourierState& u, const FourierState& v, double t,
                     const NFConfig& cfg);

struct IdentityReport {
    int n = 0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    int J = 0;
    double K = 0.0;
    double theta = 0.0;
    int box_N = 0;
    double dt_sample = 0.0;

    nlohmann::json to_json() const;
};

// Finite-depth identity for every n at the last sample of a trajectory in the
// original variables. Time integrals use composite Simpson on the samples.
std::vector<IdentityReport> identity_residuals(const Trajectory& traj,
                                               const NormalFormExpansion& nf);
IdentityReport identity_residual(const Trajectory& traj, int n, const NFConfig& cfg);

// ||v||_{H^s}^2 - sum_{j=2}^{J+1} sum_n <n>^{2s} N0(j)(v)(n); v in interaction variables.
double modified_energy(const FourierState& v, double t, double s, const NFConfig& cfg);
double modified_energy(const NormalFormExpansion& nf, const FourierState& v, double t, double s);

struct DiffEnergyTerms {
    double t = 0.0;
    double I_uu = 0.0, I_uv = 0.0, I_vu = 0.0, I_vv = 0.0, II = 0.0;
    double I() const { return I_uu - I_uv - I_vu + I_vv; }
};

// Integrand of d/dt ||u - v||_{H^s}^2 for two wick solutions (original variables).
std::vector<DiffEnergyTerms> diff_energy_terms(const Trajectory& u_traj, const Trajectory& v_traj,
                                               double s, bool allow_distinct_data = false);

struct DiffEnergyCheck {
    double integral = 0.0;     // int (I + II) dt
    double norm_change = 0.0;  // ||u - v||^2(t) - ||u - v||^2(0)
    double residual = 0.0;
};
DiffEnergyCheck diff_energy_check(const Trajectory& u_traj, const Trajectory& v_traj, double s,
                                  bool allow_distinct_data = true);

}  // namespace bnf
