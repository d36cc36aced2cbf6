#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sievecost/geometry.hpp"
#include "sievecost/lattice.hpp"
#include "sievecost/quadrature.hpp"
#include "sievecost/rng.hpp"

namespace sievecost {
namespace hashing {

enum class HashFamily { none, angular, spherical_lsh, spherical_lsf };
enum class SieveAlg { nv, gauss };
enum class CostMode { classical, quantum };

inline const char* family_name(HashFamily f) {
    switch (f) {
        case HashFamily::none: return "none";
        case HashFamily::angular: return "angular";
        case HashFamily::spherical_lsh: return "spherical-lsh";
        case HashFamily::spherical_lsf: return "spherical-lsf";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Collision-probability integrals.  All (1+o(1)) factors are set to 1.
// ---------------------------------------------------------------------------

namespace detail {

template <typename LogP>
double log_collision_integral(int d, double theta_lo, double theta_hi,
                              LogP&& log_p, double k, double t,
                              const geometry::Config& cfg) {
    const double log_norm =
        geometry::log_sin_power_integral(d - 2, theta_lo, theta_hi, cfg);
    auto log_f = [&](double theta) {
        const double s = std::sin(theta);
        if (s <= 0.0) return kNegInf;
        const double log_q = k * log_p(theta);
        const double composed = log_one_minus_pow(log_q, t);
        if (composed == kNegInf) return kNegInf;
        return (d - 2) * std::log(s) - log_norm + composed;
    };
    return log_adaptive_quad_checked(log_f, theta_lo, theta_hi,
                                     "collision probability integral",
                                     cfg.rel_tol, cfg.max_panels);
}

inline double log_p_angular(double theta) { return std::log1p(-theta / 3.14159265358979323846); }

}  // namespace detail

// Probability that far-away vectors (angle > pi/3) collide in at least one of
// t tables of k AND-composed angular hashes.  Returned in natural log.
inline double log_angular_p2(int d, double k, double t,
                             const geometry::Config& cfg = geometry::default_config()) {
    return detail::log_collision_integral(
        d, 3.14159265358979323846 / 3.0, 3.14159265358979323846 / 2.0,
        detail::log_p_angular, k, t, cfg);
}

inline double log_angular_p1(int d, double k, double t,
                             const geometry::Config& cfg = geometry::default_config()) {
    return detail::log_collision_integral(
        d, 0.0, 3.14159265358979323846 / 3.0, detail::log_p_angular, k, t, cfg);
}

inline double log_spherical_p2(int d, double k, double t,
                               const geometry::Config& cfg = geometry::default_config()) {
    const double sd = std::sqrt(static_cast<double>(d));
    auto log_p = [sd](double theta) {
        const double tn = std::tan(0.5 * theta);
        return -0.5 * sd * tn * tn;
    };
    return detail::log_collision_integral(
        d, 3.14159265358979323846 / 3.0, 3.14159265358979323846 / 2.0, log_p,
        k, t, cfg);
}

inline double log_spherical_p1(int d, double k, double t,
                               const geometry::Config& cfg = geometry::default_config()) {
    const double sd = std::sqrt(static_cast<double>(d));
    auto log_p = [sd](double theta) {
        const double tn = std::tan(0.5 * theta);
        return -0.5 * sd * tn * tn;
    };
    return detail::log_collision_integral(d, 0.0,
                                          3.14159265358979323846 / 3.0, log_p,
                                          k, t, cfg);
}

inline double angular_p2(int d, double k, double t) { return std::exp(log_angular_p2(d, k, t)); }
inline double spherical_p2(int d, double k, double t) { return std::exp(log_spherical_p2(d, k, t)); }

// ---------------------------------------------------------------------------
// k selection and spherical-LSF filter rules
// ---------------------------------------------------------------------------

inline double select_k_real(HashFamily family, int d, double log_t, double epsilon) {
    const double log_log_inv_eps = std::log(std::log(1.0 / epsilon));
    switch (family) {
        case HashFamily::angular:
            return (log_t - log_log_inv_eps) / std::log(1.5);
        case HashFamily::spherical_lsh:
            return 6.0 * (log_t - log_log_inv_eps) / std::sqrt(static_cast<double>(d));
        default:
            throw std::invalid_argument("select_k: family has no k rule");
    }
}

inline int select_k(HashFamily family, int d, double log_t, double epsilon) {
    const double k = select_k_real(family, d, log_t, epsilon);
    if (k <= 0.0)
        throw std::domain_error("select_k: formula yields k < 1 (t too small)");
    return std::max(1, static_cast<int>(std::ceil(k - 1e-9)));
}

struct LsfParams {
    double alpha;
    double epsilon;
    double log_t;          // ln t,  t = ln(1/eps) / W_D(alpha,alpha,pi/3)
    double log_cap;        // ln C_D(alpha)
    double log_wedge;      // ln W_D(alpha,alpha,pi/3)
    double log_candidate_fraction;  // ln(t * C^2): |C| = list * this
    double log_relevant;            // ln(t * C): expected relevant filters
};

inline LsfParams lsf_params(int d, double alpha, double epsilon,
                            const geometry::Config& cfg = geometry::default_config()) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::domain_error("lsf_params: alpha must be in (0, 1/2]");
    LsfParams p{};
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.log_cap = geometry::log_cap_measure(geometry::SphereDim(d),
                                          geometry::CapParam(alpha), cfg);
    p.log_wedge = geometry::log_wedge_measure(
        geometry::SphereDim(d),
        geometry::WedgeParam(alpha, alpha, 3.14159265358979323846 / 3.0), cfg);
    p.log_t = std::log(std::log(1.0 / epsilon)) - p.log_wedge;
    p.log_candidate_fraction = p.log_t + 2.0 * p.log_cap;
    p.log_relevant = p.log_t + p.log_cap;
    return p;
}

inline double lsf_candidate_fraction(int d, double alpha, double epsilon) {
    return std::exp(lsf_params(d, alpha, epsilon).log_candidate_fraction);
}

// ---------------------------------------------------------------------------
// Hash-table count balancing (heuristic assumptions 11-13)
// ---------------------------------------------------------------------------

// List-size laws the balance equations need; natural logs.
struct BalanceScenario {
    double log_list;        // ln |L|  (max list size)
    double log_iterations;  // ln I    (GaussSieve only)
};

struct HashParamSolution {
    HashFamily family = HashFamily::none;
    int d = 0;
    double epsilon = 1e-3;
    double alpha = 0.0;     // LSF only
    double log_t = 0.0;
    double k_real = 0.0;
    int k = 0;
    double residual = 0.0;  // |lhs/rhs - 1| of the balance equation
    double log_p2 = kNegInf;              // at integer k (candidate sizing)
    double log_p2_real_k = kNegInf;       // at continuous k (balance route)
    double log_candidate_fraction = kNegInf;  // ln(|C| / list)
};

namespace detail {

// ln of the searching side of the balance equation, without the common |L|
// factor.  The searched candidate list is |L| * p2 for both sieves (the
// Table 3/4 parameter values pin this convention for NVSieve as well).
inline double log_search_side(SieveAlg alg, const BalanceScenario& sc, int d,
                              double log_p2, CostMode mode) {
    const double logD = std::log(static_cast<double>(d));
    const double log_csize = sc.log_list + log_p2;
    if (mode == CostMode::quantum) {
        const double half = 0.5 * log_csize;
        return (alg == SieveAlg::nv) ? 2.0 * logD + sc.log_list + half
                                     : logD + sc.log_iterations + half;
    }
    return (alg == SieveAlg::nv) ? logD + sc.log_list + log_csize
                                 : logD + sc.log_iterations + log_csize;
}

inline double log_hash_side(HashFamily family, int d, double log_k,
                            double log_t, double log_list) {
    double v = log_k + log_t + log_list;
    if (family == HashFamily::spherical_lsh) {
        v += std::log(static_cast<double>(d)) +
             std::sqrt(static_cast<double>(d)) * std::log(2.0);
    }
    return v;
}

}  // namespace detail

inline HashParamSolution balance_t(HashFamily family, int d, SieveAlg alg,
                                   const BalanceScenario& sc,
                                   double epsilon = 1e-3,
                                   CostMode mode = CostMode::quantum,
                                   const geometry::Config& cfg = geometry::default_config()) {
    if (family != HashFamily::angular && family != HashFamily::spherical_lsh)
        throw std::invalid_argument("balance_t: use lsf_optimize_alpha for LSF");
    auto log_p2_at = [&](double k, double t) {
        return (family == HashFamily::angular) ? log_angular_p2(d, k, t, cfg)
                                               : log_spherical_p2(d, k, t, cfg);
    };
    auto imbalance = [&](double log_t) {
        const double k = select_k_real(family, d, log_t, epsilon);
        if (k <= 0.0) return 1e9;  // hashing side vanishes; search dominates
        const double lp2 = log_p2_at(k, std::exp(log_t));
        const double lhs = detail::log_search_side(alg, sc, d, lp2, mode);
        const double rhs =
            detail::log_hash_side(family, d, std::log(k), log_t, sc.log_list);
        return lhs - rhs;
    };
    // bisection on ln t over (t_min, 2^D]
    const double lo_base = std::log(std::log(1.0 / epsilon));  // k -> 0 here
    double lo = lo_base + 1e-6;
    double hi = static_cast<double>(d) * std::log(2.0);
    double flo = imbalance(lo), fhi = imbalance(hi);
    if (!(flo > 0.0) || !(fhi < 0.0)) {
        throw std::runtime_error(
            "balance_t: no root in bracket [ln t = " + std::to_string(lo) +
            ", " + std::to_string(hi) + "]; f(lo)=" + std::to_string(flo) +
            " f(hi)=" + std::to_string(fhi));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = imbalance(mid);
        if (std::abs(fm) < 1e-9) {
            lo = hi = mid;
            break;
        }
        (fm > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(hi))) break;
    }
    HashParamSolution sol;
    sol.family = family;
    sol.d = d;
    sol.epsilon = epsilon;
    sol.log_t = 0.5 * (lo + hi);
    sol.k_real = select_k_real(family, d, sol.log_t, epsilon);
    sol.k = std::max(1, static_cast<int>(std::ceil(sol.k_real - 1e-9)));
    sol.log_p2_real_k = log_p2_at(sol.k_real, std::exp(sol.log_t));
    sol.log_p2 = log_p2_at(static_cast<double>(sol.k), std::exp(sol.log_t));
    // candidate sizing keeps the unrounded k of the balance equation
    sol.log_candidate_fraction = sol.log_p2_real_k;
    sol.residual = std::abs(std::expm1(imbalance(sol.log_t)));
    return sol;
}

// Spherical-LSF parameter choice: k = 1, t from the epsilon rule, alpha <= 1/2
// minimising hashing-plus-searching cost.
inline HashParamSolution lsf_optimize_alpha(int d, SieveAlg alg,
                                            const BalanceScenario& sc,
                                            double epsilon = 1e-3,
                                            CostMode mode = CostMode::quantum,
                                            const geometry::Config& cfg = geometry::default_config()) {
    const double log2d = std::log(std::log2(static_cast<double>(d)));
    auto total_cost = [&](double alpha) {
        const LsfParams p = lsf_params(d, alpha, epsilon, cfg);
        const double log_hash = log2d + sc.log_list + p.log_relevant;
        const double log_csize = sc.log_list + p.log_candidate_fraction;
        double log_search;
        if (mode == CostMode::quantum) {
            log_search = (alg == SieveAlg::nv)
                             ? 2.0 * std::log(static_cast<double>(d)) +
                                   sc.log_list + 0.5 * log_csize
                             : std::log(static_cast<double>(d)) +
                                   sc.log_iterations + 0.5 * log_csize;
        } else {
            log_search = (alg == SieveAlg::nv)
                             ? std::log(static_cast<double>(d)) + sc.log_list +
                                   log_csize
                             : std::log(static_cast<double>(d)) +
                                   sc.log_iterations + log_csize;
        }
        return logsumexp2(log_hash, log_search);
    };
    // golden-section over [0.05, 0.5]
    const double gr = 0.6180339887498949;
    double a = 0.05, b = 0.5;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = total_cost(x1), f2 = total_cost(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = total_cost(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = total_cost(x2);
        }
    }
    double alpha = 0.5 * (a + b);
    if (total_cost(0.5) <= total_cost(alpha)) alpha = 0.5;  // boundary wins
    const LsfParams p = lsf_params(d, alpha, epsilon, cfg);
    HashParamSolution sol;
    sol.family = HashFamily::spherical_lsf;
    sol.d = d;
    sol.epsilon = epsilon;
    sol.alpha = alpha;
    sol.log_t = p.log_t;
    sol.k = 1;
    sol.k_real = 1.0;
    sol.log_candidate_fraction = p.log_candidate_fraction;
    sol.residual = 0.0;
    return sol;
}

// ---------------------------------------------------------------------------
// Asymptotic exponents (beta optimisations)
// ---------------------------------------------------------------------------

struct AsymptoticResult {
    double t_exponent = 0.0;   // t ~ 2^{t_exponent * D}
    double k_coefficient = 0.0;  // angular: k ~ c*D; spherical: k ~ c*sqrt(D)
    double total_exponent = 0.0;  // time/space ~ 2^{total_exponent * D}
    double alpha = 0.0;           // LSF only
};

namespace detail {

// -max over theta in (pi/3, pi/2) via golden section (the bracket interior).
template <typename F>
double neg_max_theta(F&& f) {
    const double gr = 0.6180339887498949;
    double a = 3.14159265358979323846 / 3.0 + 1e-9;
    double b = 3.14159265358979323846 / 2.0 - 1e-9;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return -std::max(f1, f2);
}

inline double beta_angular(double tau) {
    // tau = log2(t)/D
    return neg_max_theta([tau](double theta) {
        return std::log2(std::sin(theta)) +
               tau / std::log2(1.5) * std::log2(1.0 - theta / 3.14159265358979323846);
    });
}

inline double beta_spherical(double tau) {
    return neg_max_theta([tau](double theta) {
        const double tn = std::tan(0.5 * theta);
        return std::log2(std::sin(theta)) - (3.0 * tn * tn - 1.0) * tau;
    });
}

inline double solve_tau(const std::function<double(double)>& beta,
                        const std::function<double(double)>& target) {
    // beta(tau) is increasing in tau, target(tau) flat or decreasing;
    // solve beta(tau) = target(tau) by bisection.
    double lo = 1e-4, hi = 0.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (beta(mid) < target(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline AsymptoticResult asymptotic_exponents(HashFamily family, CostMode mode) {
    const double half_log2_43 = 0.5 * std::log2(4.0 / 3.0);
    AsymptoticResult r;
    if (family == HashFamily::angular) {
        auto beta = [](double tau) { return detail::beta_angular(tau); };
        if (mode == CostMode::classical) {
            r.t_exponent = detail::solve_tau(beta, [&](double) { return half_log2_43; });
        } else {
            r.t_exponent = detail::solve_tau(
                beta, [&](double tau) { return half_log2_43 - tau; });
        }
        r.k_coefficient = r.t_exponent / std::log2(1.5);
        r.total_exponent = half_log2_43 + r.t_exponent;
        return r;
    }
    if (family == HashFamily::spherical_lsh) {
        auto beta = [](double tau) { return detail::beta_spherical(tau); };
        if (mode == CostMode::classical) {
            r.t_exponent = detail::solve_tau(
                beta, [&](double tau) { return half_log2_43 - tau; });
        } else {
            r.t_exponent = detail::solve_tau(
                beta, [&](double tau) { return half_log2_43 - 2.0 * tau; });
        }
        r.k_coefficient = 6.0 * r.t_exponent * std::log(2.0);
        r.total_exponent = half_log2_43 + r.t_exponent;
        return r;
    }
    if (family == HashFamily::spherical_lsf) {
        // exponents of the dominant terms of the total time, per unit D
        auto exponent = [mode](double alpha) {
            const double a2 = alpha * alpha;
            const double e_hash = 0.5 * std::log2(4.0 * (1.0 - a2) / (3.0 - 4.0 * a2));
            if (mode == CostMode::classical) {
                const double e_extra = 0.5 * std::log2(4.0 * (1.0 - a2) / 3.0);
                return e_hash + std::max(0.0, e_extra);
            }
            const double e_search =
                0.5 * std::log2(8.0 * (1.0 - a2) / (3.0 * std::sqrt(3.0 - 4.0 * a2)));
            return std::max(e_hash, e_search);
        };
        const double gr = 0.6180339887498949;
        double a = 0.05, b = (mode == CostMode::classical) ? 0.5 : 0.8;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = exponent(x1), f2 = exponent(x2);
        for (int it = 0; it < 300; ++it) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = exponent(x1);
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = exponent(x2);
            }
        }
        r.alpha = 0.5 * (a + b);
        if (mode == CostMode::classical && exponent(0.5) <= exponent(r.alpha))
            r.alpha = 0.5;
        r.total_exponent = exponent(r.alpha);
        const double a2 = r.alpha * r.alpha;
        r.t_exponent = -0.5 * std::log2(1.0 - 2.0 * a2 / 1.5);
        r.k_coefficient = 1.0;  // k = 1 by construction
        return r;
    }
    throw std::invalid_argument("asymptotic_exponents: no hashing family");
}

// ---------------------------------------------------------------------------
// Simulation-side hash families (used by the instrumented sieves)
// ---------------------------------------------------------------------------

// Sparse angular hashes: each function has exactly two nonzero +-1 entries.
class AngularHashSim {
public:
    AngularHashSim(int dim, int k, int t, Rng& rng) : d_(dim), k_(k), t_(t) {
        if (k < 1 || k > 63) throw std::invalid_argument("angular sim: k in [1,63]");
        fns_.resize(static_cast<std::size_t>(k) * t);
        for (auto& f : fns_) {
            f.i = static_cast<int>(rng.next_below(dim));
            do {
                f.j = static_cast<int>(rng.next_below(dim));
            } while (f.j == f.i);
            f.si = rng.next_double() < 0.5 ? 1 : -1;
            f.sj = rng.next_double() < 0.5 ? 1 : -1;
        }
    }

    int tables() const { return t_; }

    bool bit(int table, int fn, const std::int32_t* v) const {
        const Fn& f = fns_[static_cast<std::size_t>(table) * k_ + fn];
        const std::int64_t dot = std::int64_t(f.si) * v[f.i] + std::int64_t(f.sj) * v[f.j];
        return dot >= 0;
    }

    std::uint64_t key(int table, const std::int32_t* v) const {
        std::uint64_t key = 0;
        for (int j = 0; j < k_; ++j) key = (key << 1) | (bit(table, j, v) ? 1u : 0u);
        return key;
    }

private:
    struct Fn {
        int i, j;
        std::int8_t si, sj;
    };
    int d_, k_, t_;
    std::vector<Fn> fns_;
};

// Spherical LSH: each elementary hash carves u ~ 2^sqrt(D) Gaussian caps.
class SphericalLshSim {
public:
    SphericalLshSim(int dim, int k, int t, Rng& rng) : d_(dim), k_(k), t_(t) {
        u_ = std::max<int>(2, static_cast<int>(std::llround(
                                  std::pow(2.0, std::sqrt(static_cast<double>(dim))))));
        g_.resize(static_cast<std::size_t>(t) * k * u_ * dim);
        for (auto& x : g_) x = rng.next_gaussian();
        threshold_ = std::pow(static_cast<double>(dim), 0.25);
    }

    int tables() const { return t_; }
    int regions() const { return u_; }

    int region(int table, int fn, const double* vhat) const {
        const double* base =
            g_.data() + ((static_cast<std::size_t>(table) * k_ + fn) * u_) * d_;
        for (int r = 0; r < u_; ++r) {
            double dot = 0.0;
            const double* g = base + static_cast<std::size_t>(r) * d_;
            for (int i = 0; i < d_; ++i) dot += g[i] * vhat[i];
            if (dot >= threshold_) return r;
        }
        return u_;  // leftover region: no cap claimed the point
    }

    std::uint64_t key(int table, const double* vhat) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (int j = 0; j < k_; ++j) {
            h ^= static_cast<std::uint64_t>(region(table, j, vhat)) + 0x9e3779b97f4a7c15ULL +
                 (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    int d_, k_, t_, u_;
    double threshold_;
    std::vector<double> g_;
};

// Spherical LSF: t filters, one random unit direction each; a vector passes a
// filter iff its unit normalisation has inner product >= alpha with it.
class SphericalLsfSim {
public:
    SphericalLsfSim(int dim, int t, double alpha, Rng& rng)
        : d_(dim), t_(t), alpha_(alpha) {
        a_.resize(static_cast<std::size_t>(t) * dim);
        for (int u = 0; u < t; ++u) {
            double n2 = 0.0;
            double* a = a_.data() + static_cast<std::size_t>(u) * dim;
            for (int i = 0; i < dim; ++i) {
                a[i] = rng.next_gaussian();
                n2 += a[i] * a[i];
            }
            const double inv = 1.0 / std::sqrt(n2);
            for (int i = 0; i < dim; ++i) a[i] *= inv;
        }
    }

    int tables() const { return t_; }

    void relevant(const double* vhat, std::vector<std::uint32_t>& out) const {
        out.clear();
        for (int u = 0; u < t_; ++u) {
            const double* a = a_.data() + static_cast<std::size_t>(u) * d_;
            double dot = 0.0;
            for (int i = 0; i < d_; ++i) dot += a[i] * vhat[i];
            if (dot >= alpha_) out.push_back(static_cast<std::uint32_t>(u));
        }
    }

private:
    int d_, t_;
    double alpha_;
    std::vector<double> a_;
};

}  // namespace hashing
}  // namespace sievecost
