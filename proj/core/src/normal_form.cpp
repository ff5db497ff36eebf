#include "bnf/normal_form.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string_view>

#include "bnf/dynamics.hpp"
#include "bnf/quadrature.hpp"

namespace bnf {

namespace {

constexpr double kBoundarySlack = 1e-12;

double cube(double x) { return x * x * x; }

int kind_index(FormKind f) { return static_cast<int>(f); }

}  // namespace

void NFConfig::validate() const {
    if (J < 1) throw std::invalid_argument("J must be >= 1");
    if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("K must be positive");
    if (!(theta > 0.0) || theta > 2.0 / 3.0 + 1e-12)
        throw std::invalid_argument("theta must lie in (0, 2/3]");
    if (box_N < 0) throw std::invalid_argument("box_N must be non-negative");
    if (box_N > 1000) throw std::invalid_argument("box_N too large for 16-bit term storage");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

double NFConfig::parse_theta(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw std::invalid_argument("theta must be a number or a \"p/q\" string");
    const auto s = j.get<std::string>();
    auto number = [&](std::string_view part) {
        double x = 0.0;
        const auto r = std::from_chars(part.data(), part.data() + part.size(), x);
        if (part.empty() || r.ec != std::errc{} || r.ptr != part.data() + part.size() ||
            !std::isfinite(x))
            throw std::invalid_argument("theta string '" + s + "' is not a number or p/q");
        return x;
    };
    const std::string_view sv(s);
    const auto slash = sv.find('/');
    if (slash == std::string_view::npos) return number(sv);
    const double q = number(sv.substr(slash + 1));
    if (q == 0.0) throw std::invalid_argument("theta string '" + s + "' divides by zero");
    return number(sv.substr(0, slash)) / q;
}

double nf_cost_estimate(int J, int N) {
    const double w = 2.0 * N + 1.0;
    double total = 0.0;
    for (int G = 1; G <= J + 1; ++G)
        total += double(cardinality(G)) * std::pow(w, 2.0 * G + 1.0);
    return total;
}

bool in_A_K(const ResonantTuple& t, double K) { return double(std::llabs(phi(t))) <= K; }

bool in_C_J(int j, i64 phi_tilde_next, i64 phi_tilde_prev, i64 phi_1, double theta) {
    const double base = double(std::max(std::llabs(phi_tilde_prev), std::llabs(phi_1)));
    const double bound = cube(2.0 * j + 4.0) * std::pow(base, 1.0 - theta);
    return double(std::llabs(phi_tilde_next)) <= bound * (1.0 + kBoundarySlack);
}

bool reduced_generation(int k, i64 phi_tilde_k, i64 phi_tilde_prev, i64 phi_1, double K,
                        double theta) {
    if (k == 1) return double(std::llabs(phi_tilde_k)) > K;
    return !in_C_J(k - 1, phi_tilde_k, phi_tilde_prev, phi_1, theta);
}

std::string form_name(FormKind f) {
    switch (f) {
        case FormKind::N0: return "N0";
        case FormKind::R: return "R";
        case FormKind::N1: return "N1";
        case FormKind::N2: return "N2";
    }
    return "?";
}

FormKind parse_form(const std::string& name) {
    if (name == "N0") return FormKind::N0;
    if (name == "R") return FormKind::R;
    if (name == "N1") return FormKind::N1;
    if (name == "N2") return FormKind::N2;
    throw std::invalid_argument("unknown form '" + name + "'");
}

int form_degree(FormKind f, int j) { return f == FormKind::N0 ? 2 * j : 2 * j + 2; }

double FormValue::l1() const {
    double acc = 0.0;
    for (const auto& z : values) acc += std::abs(z);
    return acc;
}

double FormValue::max_imag() const {
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z.imag()));
    return m;
}

struct NormalFormCompiler {
    NormalFormExpansion& nf;
    const NFConfig& cfg;
    cplx s;  // equation sign as a complex scalar

    void add(FormKind f, int j, const OrderedBiTree& tree, const std::vector<int>& terms,
             const std::vector<i64>& freq, cplx coef, i64 phase, int rslot) {
        const int N = cfg.box_N;
        auto& L = nf.lists_mut(f, j)[std::size_t(freq[0] + N)];
        L.width = int(terms.size());
        L.coef.push_back(coef);
        L.phase.push_back(phase);
        for (int b : terms) {
            L.freq.push_back(std::int16_t(freq[std::size_t(b)]));
            L.sign.push_back(std::int8_t(tree.node(b).sign));
            L.side.push_back(std::int8_t(tree.node(b).side));
        }
        L.rslot.push_back(std::int16_t(rslot));
        if (++nf.total_terms_ > cfg.max_terms)
            throw BudgetExceeded("normal form expansion exceeds the term limit",
                                 double(nf.total_terms_));
    }

    // All generations 1..d of `tree` are reduced; phit holds phi_tilde_1..d.
    void chain(const OrderedBiTree& tree, std::vector<i64>& freq, std::vector<i64>& phit, cplx c,
               double denom_prev) {
        const int d = tree.generations();
        const auto terms = tree.terminals();
        add(FormKind::N2, d, tree, terms, freq, c / denom_prev, phit.back(), -1);
        if (d > cfg.J) return;
        const double denom = denom_prev * double(phit.back());
        add(FormKind::N0, d + 1, tree, terms, freq, cplx(0, 1) * c / denom, phit.back(), -1);
        for (std::size_t k = 0; k < terms.size(); ++k)
            add(FormKind::R, d + 1, tree, terms, freq,
                s * double(tree.node(terms[k]).sign) * c / denom, phit.back(), int(k));
        extend_all(tree, terms, freq, phit, c, denom);
    }

    void extend_all(const OrderedBiTree& tree, const std::vector<int>& terms,
                    std::vector<i64>& freq, std::vector<i64>& phit, cplx c, double denom) {
        const i64 B = cfg.box_N;
        const int gen = tree.generations() + 1;
        for (int b : terms) {
            const OrderedBiTree next = tree.extend(b);
            const auto next_terms = next.terminals();
            const double sg = tree.node(b).sign;
            const cplx c_next = -s * sg * c;
            const i64 np = freq[std::size_t(b)];
            const std::size_t base = freq.size();
            freq.resize(base + 3);
            for (i64 n1 = -B; n1 <= B; ++n1) {
                if (n1 == np) continue;
                for (i64 n3 = -B; n3 <= B; ++n3) {
                    if (n3 == np) continue;
                    const i64 n2 = n1 + n3 - np;
                    if (n2 < -B || n2 > B) continue;
                    freq[base] = n1;
                    freq[base + 1] = n2;
                    freq[base + 2] = n3;
                    const i64 ph = phit.back() + i64(sg) * phi({n1, n2, n3, np});
                    if (!reduced_generation(gen, ph, phit.back(), phit.front(), cfg.K,
                                            cfg.theta)) {
                        add(FormKind::N1, gen, next, next_terms, freq, c_next / denom, ph, -1);
                    } else {
                        phit.push_back(ph);
                        chain(next, freq, phit, c_next, denom);
                        phit.pop_back();
                    }
                }
            }
            freq.resize(base);
        }
    }

    void run() {
        const OrderedBiTree t1 = OrderedBiTree::seed().extend(OrderedBiTree::r1);
        const auto terms = t1.terminals();
        const cplx c1 = cplx(0, -1) * s;
        for (i64 n = -cfg.box_N; n <= cfg.box_N; ++n) {
            std::vector<i64> freq{n, n, 0, 0, 0};
            for (const auto& tup : gamma_enumerate(n, cfg.box_N)) {
                freq[2] = tup.n1;
                freq[3] = tup.n2;
                freq[4] = tup.n3;
                const i64 p = phi(tup);
                if (double(std::llabs(p)) <= cfg.K) {
                    add(FormKind::N1, 1, t1, terms, freq, c1, p, -1);
                } else {
                    std::vector<i64> ph{p};
                    chain(t1, freq, ph, c1, 1.0);
                }
            }
        }
    }
};

NormalFormExpansion::NormalFormExpansion(const NFConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const double est = nf_cost_estimate(cfg_.J, cfg_.box_N);
    if (est > cfg_.budget) {
        std::ostringstream msg;
        msg << "normal form cost estimate " << est << " exceeds budget " << cfg_.budget
            << " (J=" << cfg_.J << ", box_N=" << cfg_.box_N << ")";
        throw BudgetExceeded(msg.str(), est);
    }
    lists_.resize(4);
    for (auto& per_kind : lists_) {
        per_kind.resize(std::size_t(cfg_.J + 2));
        for (auto& per_j : per_kind) per_j.resize(std::size_t(2 * cfg_.box_N + 1));
    }
    compile();
}

void NormalFormExpansion::compile() {
    NormalFormCompiler c{*this, cfg_, cplx(double(cfg_.sign), 0.0)};
    c.run();
}

const std::vector<NormalFormExpansion::TermList>& NormalFormExpansion::lists(FormKind f,
                                                                             int j) const {
    const int lo = (f == FormKind::N0 || f == FormKind::R) ? 2 : 1;
    if (j < lo || j > cfg_.J + 1)
        throw std::out_of_range(form_name(f) + "(" + std::to_string(j) +
                                ") not available at depth J=" + std::to_string(cfg_.J));
    return lists_[std::size_t(kind_index(f))][std::size_t(j)];
}

std::vector<NormalFormExpansion::TermList>& NormalFormExpansion::lists_mut(FormKind f, int j) {
    return lists_[std::size_t(kind_index(f))][std::size_t(j)];
}

std::size_t NormalFormExpansion::term_count(FormKind f, int j) const {
    std::size_t n = 0;
    for (const auto& L : lists(f, j)) n += L.size();
    return n;
}

cplx NormalFormExpansion::sum(const TermList& L, const FourierState& u, const FourierState& v,
                              double t) const {
    cplx acc{};
    const std::size_t w = std::size_t(L.width);
    for (std::size_t k = 0; k < L.size(); ++k) {
        cplx prod = L.coef[k] * std::polar(1.0, -double(L.phase[k]) * t);
        for (std::size_t b = 0; b < w; ++b) {
            const std::size_t i = k * w + b;
            cplx x = L.side[i] == 1 ? u[L.freq[i]] : v[L.freq[i]];
            if (L.sign[i] < 0) x = std::conj(x);
            if (L.rslot[k] == int(b)) x *= std::norm(x);
            prod *= x;
        }
        acc += prod;
    }
    return acc;
}

FormValue NormalFormExpansion::evaluate(FormKind f, int j, const FourierState& v, double t) const {
    return evaluate_cross(f, j, v, v, t);
}

FormValue NormalFormExpansion::evaluate_cross(FormKind f, int j, const FourierState& u,
                                              const FourierState& v, double t) const {
    check_same_cutoff(u, v, "normal form");
    if (u.N != cfg_.box_N) throw std::invalid_argument("normal form: state cutoff != box_N");
    const auto& per_n = lists(f, j);
    FormValue out{form_name(f), j, t, cfg_.box_N, std::vector<cplx>(per_n.size())};
    for (std::size_t i = 0; i < per_n.size(); ++i)
        out.values[i] = {2.0 * sum(per_n[i], u, v, t).real(), 0.0};
    return out;
}

double NormalFormExpansion::majorant(FormKind f, int j, const FourierState& v) const {
    if (v.N != cfg_.box_N) throw std::invalid_argument("normal form: state cutoff != box_N");
    double acc = 0.0;
    for (const auto& L : lists(f, j)) {
        const std::size_t w = std::size_t(L.width);
        for (std::size_t k = 0; k < L.size(); ++k) {
            double prod = std::abs(L.coef[k]);
            for (std::size_t b = 0; b < w; ++b) {
                double x = std::abs(v[L.freq[k * w + b]]);
                if (L.rslot[k] == int(b)) x *= x * x;
                prod *= x;
            }
            acc += prod;
        }
    }
    return 2.0 * acc;
}

std::vector<double> NormalFormExpansion::boundary(const FourierState& v, double t) const {
    std::vector<double> out(std::size_t(2 * cfg_.box_N + 1), 0.0);
    for (int j = 2; j <= cfg_.J + 1; ++j) {
        const auto f = evaluate(FormKind::N0, j, v, t);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += f.values[i].real();
    }
    return out;
}

std::vector<double> NormalFormExpansion::integrand(const FourierState& v, double t) const {
    std::vector<double> out(std::size_t(2 * cfg_.box_N + 1), 0.0);
    auto acc = [&](FormKind f, int j) {
        const auto fv = evaluate(f, j, v, t);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += fv.values[i].real();
    };
    for (int j = 2; j <= cfg_.J + 1; ++j) acc(FormKind::R, j);
    for (int j = 1; j <= cfg_.J + 1; ++j) acc(FormKind::N1, j);
    acc(FormKind::N2, cfg_.J + 1);
    return out;
}

FormValue form_N1_first(const FourierState& v, double t, double K, int sign) {
    const int N = v.N;
    FormValue out{"N1", 1, t, N, std::vector<cplx>(v.size())};
    for (int n = -N; n <= N; ++n) {
        cplx acc{};
        for (const auto& tup : gamma_enumerate(n, N)) {
            const i64 p = phi(tup);
            if (double(std::llabs(p)) > K) continue;
            acc += std::polar(1.0, -double(p) * t) * v[int(tup.n1)] * std::conj(v[int(tup.n2)]) *
                   v[int(tup.n3)] * std::conj(v[n]);
        }
        out.values[std::size_t(n + N)] = {2.0 * (cplx(0, -double(sign)) * acc).real(), 0.0};
    }
    return out;
}

namespace {

NFConfig at_depth(const NFConfig& cfg, int J, const FourierState& v) {
    NFConfig c = cfg;
    c.J = J;
    c.box_N = v.N;
    return c;
}

}  // namespace

FormValue form_N0(int j, const FourierState& v, double t, const NFConfig& cfg) {
    if (j < 2) throw std::invalid_argument("form_N0: j must be >= 2");
    return NormalFormExpansion(at_depth(cfg, j - 1, v)).evaluate(FormKind::N0, j, v, t);
}

FormValue form_R(int j, const FourierState& v, double t, const NFConfig& cfg) {
    if (j < 2) throw std::invalid_argument("form_R: j must be >= 2");
    return NormalFormExpansion(at_depth(cfg, j - 1, v)).evaluate(FormKind::R, j, v, t);
}

FormValue form_N1(int j, const FourierState& v, double t, const NFConfig& cfg) {
    if (j < 1) throw std::invalid_argument("form_N1: j must be >= 1");
    if (j == 1) return form_N1_first(v, t, cfg.K, cfg.sign);
    return NormalFormExpansion(at_depth(cfg, j - 1, v)).evaluate(FormKind::N1, j, v, t);
}

FormValue form_error(const FourierState& v, double t, const NFConfig& cfg) {
    return NormalFormExpansion(at_depth(cfg, cfg.J, v)).evaluate(FormKind::N2, cfg.J + 1, v, t);
}

FormValue cross_form(FormKind f, int j, const FourierState& u, const FourierState& v, double t,
                     const NFConfig& cfg) {
    return NormalFormExpansion(at_depth(cfg, std::max(1, j - 1), u)).evaluate_cross(f, j, u, v, t);
}

nlohmann::json IdentityReport::to_json() const {
    return {{"n", n},         {"t", t},         {"lhs", lhs},     {"rhs", rhs},
            {"residual", residual}, {"J", J},   {"K", K},         {"theta", theta},
            {"box_N", box_N}, {"dt_sample", dt_sample}};
}

std::vector<IdentityReport> identity_residuals(const Trajectory& traj,
                                               const NormalFormExpansion& nf) {
    traj.validate();
    const auto& cfg = nf.config();
    if (traj.cutoff() != cfg.box_N)
        throw std::invalid_argument("identity: trajectory cutoff must equal box_N");
    if (traj.size() < 3 || traj.size() % 2 == 0)
        throw std::invalid_argument("identity: Simpson needs an odd number (>= 3) of samples");
    const int N = cfg.box_N;
    const std::size_t width = std::size_t(2 * N + 1);
    std::vector<std::vector<double>> integrand(width, std::vector<double>(traj.size()));
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto v = to_interaction(traj.samples[k]);
        const auto g = nf.integrand(v, v.t);
        for (std::size_t i = 0; i < width; ++i) integrand[i][k] = g[i];
    }
    const auto v0 = to_interaction(traj.samples.front());
    const auto v1 = to_interaction(traj.samples.back());
    const auto b0 = nf.boundary(v0, v0.t);
    const auto b1 = nf.boundary(v1, v1.t);
    std::vector<IdentityReport> out;
    for (int n = -N; n <= N; ++n) {
        const std::size_t i = std::size_t(n + N);
        IdentityReport r;
        r.n = n;
        r.t = v1.t;
        r.lhs = std::norm(v1[n]) - std::norm(v0[n]);
        r.rhs = b1[i] - b0[i] + simpson(integrand[i], traj.dt_sample);
        r.residual = std::abs(r.lhs - r.rhs);
        r.J = cfg.J;
        r.K = cfg.K;
        r.theta = cfg.theta;
        r.box_N = N;
        r.dt_sample = traj.dt_sample;
        out.push_back(r);
    }
    return out;
}

IdentityReport identity_residual(const Trajectory& traj, int n, const NFConfig& cfg) {
    NFConfig c = cfg;
    c.box_N = traj.cutoff();
    if (n < -c.box_N || n > c.box_N) throw std::invalid_argument("identity: n outside the band");
    const NormalFormExpansion nf(c);
    return identity_residuals(traj, nf)[std::size_t(n + c.box_N)];
}

double modified_energy(const NormalFormExpansion& nf, const FourierState& v, double t, double s) {
    const auto b = nf.boundary(v, t);
    double e = 0.0;
    for (int n = -v.N; n <= v.N; ++n) {
        const double w = std::pow(1.0 + double(n) * n, s);
        e += w * (std::norm(v[n]) - b[std::size_t(n + v.N)]);
    }
    return e;
}

double modified_energy(const FourierState& v, double t, double s, const NFConfig& cfg) {
    if (cfg.J == 0) {
        const double h = hs_norm(v, s);
        return h * h;
    }
    NFConfig c = cfg;
    c.box_N = v.N;
    return modified_energy(NormalFormExpansion(c), v, t, s);
}

std::vector<DiffEnergyTerms> diff_energy_terms(const Trajectory& u_traj, const Trajectory& v_traj,
                                               double s, bool allow_distinct_data) {
    if (u_traj.size() != v_traj.size() || u_traj.size() == 0)
        throw std::invalid_argument("diff_energy: trajectories must have equal non-zero length");
    if (u_traj.cutoff() != v_traj.cutoff())
        throw std::invalid_argument("diff_energy: cutoff mismatch");
    if (!allow_distinct_data) {
        const auto& a = u_traj.samples.front();
        const auto& b = v_traj.samples.front();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a.coeffs[i] - b.coeffs[i]) > 1e-12)
                throw std::invalid_argument("diff_energy: initial states differ");
    }
    std::vector<DiffEnergyTerms> out;
    out.reserve(u_traj.size());
    for (std::size_t k = 0; k < u_traj.size(); ++k) {
        const auto& u = u_traj.samples[k];
        const auto& v = v_traj.samples[k];
        if (std::abs(u.t - v.t) > 1e-12) throw std::invalid_argument("diff_energy: time mismatch");
        const auto Nu = nonresonant_N_fft(u, u, u);
        const auto Nv = nonresonant_N_fft(v, v, v);
        cplx uu{}, uv{}, vu{}, vv{}, res{};
        for (int n = -u.N; n <= u.N; ++n) {
            const double w = std::pow(1.0 + double(n) * n, s);
            uu += w * Nu[n] * std::conj(u[n]);
            uv += w * Nu[n] * std::conj(v[n]);
            vu += w * Nv[n] * std::conj(u[n]);
            vv += w * Nv[n] * std::conj(v[n]);
            res += w * (std::norm(u[n]) - std::norm(v[n])) * v[n] * std::conj(u[n] - v[n]);
        }
        // -2 Re(i z) = 2 Im z
        out.push_back({u.t, 2 * uu.imag(), 2 * uv.imag(), 2 * vu.imag(), 2 * vv.imag(),
                       -2 * res.imag()});
    }
    return out;
}

DiffEnergyCheck diff_energy_check(const Trajectory& u_traj, const Trajectory& v_traj, double s,
                                  bool allow_distinct_data) {
    const auto terms = diff_energy_terms(u_traj, v_traj, s, allow_distinct_data);
    std::vector<double> f;
    f.reserve(terms.size());
    for (const auto& x : terms) f.push_back(x.I() + x.II);
    auto dist2 = [&](std::size_t k) {
        const auto& u = u_traj.samples[k];
        const auto& v = v_traj.samples[k];
        double acc = 0.0;
        for (int n = -u.N; n <= u.N; ++n)
            acc += std::pow(1.0 + double(n) * n, s) * std::norm(u[n] - v[n]);
        return acc;
    };
    DiffEnergyCheck c;
    c.integral = simpson(f, u_traj.dt_sample);
    c.norm_change = dist2(terms.size() - 1) - dist2(0);
    c.residual = std::abs(c.integral - c.norm_change);
    return c;
}

}  // namespace bnf
