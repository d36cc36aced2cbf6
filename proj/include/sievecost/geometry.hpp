#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sievecost/quadrature.hpp"

namespace sievecost {
namespace geometry {

struct SphereDim {
    int d;
    explicit SphereDim(int dim) : d(dim) {
        if (dim < 2) throw std::domain_error("SphereDim: D must be >= 2");
    }
};

struct CapParam {
    double alpha;
    explicit CapParam(double a) : alpha(a) {
        if (!(a > 0.0 && a < 1.0))
            throw std::domain_error("CapParam: alpha must be in (0,1)");
    }
};

struct WedgeParam {
    double alpha, beta, theta;
    WedgeParam(double a, double b, double th) : alpha(a), beta(b), theta(th) {
        if (!(a > 0.0 && a < 1.0))
            throw std::domain_error("WedgeParam: alpha must be in (0,1)");
        if (!(b > 0.0 && b < 1.0))
            throw std::domain_error("WedgeParam: beta must be in (0,1)");
        if (!(th > 0.0 && th < 3.14159265358979323846))
            throw std::domain_error("WedgeParam: theta must be in (0,pi)");
    }
};

struct Config {
    double rel_tol = 1e-10;   // target relative quadrature tolerance
    int max_panels = 4000;    // hard panel cap
    int wedge_grid = 2048;    // phi-grid density for the nested cap values
};

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

// ln( Gamma(D/2) / (sqrt(pi) * Gamma((D-1)/2)) ), the surface-measure prefactor
inline double log_measure_prefactor(int d) {
    return std::lgamma(0.5 * d) - std::lgamma(0.5 * (d - 1)) -
           0.5 * std::log(3.14159265358979323846);
}

// ln( integral_a^b sin(phi)^p dphi )
inline double log_sin_power_integral(int p, double a, double b,
                                     const Config& cfg = default_config()) {
    auto log_f = [p](double phi) {
        const double s = std::sin(phi);
        if (s <= 0.0) return kNegInf;
        return p * std::log(s);
    };
    return log_adaptive_quad_checked(log_f, a, b,
                                     "sin^" + std::to_string(p) + " integral",
                                     cfg.rel_tol, cfg.max_panels);
}

// Density of the angle between two random points on S^{D-1}, conditioned on
// the angle lying in [theta1, theta2].
inline double angle_density(SphereDim dim, double theta1, double theta2,
                            double theta,
                            const Config& cfg = default_config()) {
    if (!(theta1 >= 0.0 && theta1 < theta2 &&
          theta2 <= 3.14159265358979323846 + 1e-15))
        throw std::domain_error("angle_density: need 0 <= theta1 < theta2 <= pi");
    if (!(theta >= theta1 && theta <= theta2))
        throw std::domain_error("angle_density: theta outside [theta1, theta2]");
    const double log_norm =
        log_sin_power_integral(dim.d - 2, theta1, theta2, cfg);
    const double s = std::sin(theta);
    if (s <= 0.0) return 0.0;
    return std::exp((dim.d - 2) * std::log(s) - log_norm);
}

// ln C_D(alpha), the spherical-cap measure
inline double log_cap_measure(SphereDim dim, CapParam cap,
                              const Config& cfg = default_config()) {
    return log_measure_prefactor(dim.d) +
           log_sin_power_integral(dim.d - 2, 0.0, std::acos(cap.alpha), cfg);
}

inline double cap_measure(SphereDim dim, CapParam cap,
                          const Config& cfg = default_config()) {
    return std::exp(log_cap_measure(dim, cap, cfg));
}

namespace detail {

// Monotone cubic (Fritsch-Carlson) interpolant on a uniform grid.
class Pchip {
public:
    Pchip(double x0, double h, std::vector<double> y)
        : x0_(x0), h_(h), y_(std::move(y)) {
        const std::size_t n = y_.size();
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / h_;
        m_.assign(n, 0.0);
        m_[0] = delta[0];
        m_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                m_[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
            }
        }
        // clamp endpoint slopes to preserve monotonicity
        auto clamp_end = [](double& m, double d0) {
            if (m * d0 <= 0.0)
                m = 0.0;
            else if (std::abs(m) > 3.0 * std::abs(d0))
                m = 3.0 * d0;
        };
        clamp_end(m_[0], delta[0]);
        clamp_end(m_[n - 1], delta[n - 2]);
    }

    double operator()(double x) const {
        const std::size_t n = y_.size();
        double s = (x - x0_) / h_;
        std::size_t i;
        if (s <= 0.0) {
            return y_[0];
        } else if (s >= static_cast<double>(n - 1)) {
            return y_[n - 1];
        } else {
            i = static_cast<std::size_t>(s);
        }
        const double t = s - static_cast<double>(i);
        const double y0 = y_[i], y1 = y_[i + 1];
        const double d0 = m_[i] * h_, d1 = m_[i + 1] * h_;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
               (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
    }

private:
    double x0_, h_;
    std::vector<double> y_, m_;
};

// ln J_D(theta1, theta2) with the nested cap C_{D-1}(arccos(tan t1 / tan phi))
// evaluated on a cumulative grid (single pass over the inner sin-power
// integral) and interpolated for the outer adaptive quadrature.
inline double log_wedge_j(int d, double theta1, double theta2,
                          const Config& cfg) {
    if (!(theta2 > theta1)) return kNegInf;
    const int n = cfg.wedge_grid;
    const double h = (theta2 - theta1) / (n - 1);
    const double tan_t1 = std::tan(theta1);
    std::vector<double> log_cap(n, kNegInf);
    double cum = kNegInf;  // ln integral_0^{u_i} sin^{D-3}
    double u_prev = 0.0;
    auto inner_lf = [d](double psi) {
        const double s = std::sin(psi);
        if (s <= 0.0) return kNegInf;
        return (d - 3) * std::log(s);
    };
    const double pre_inner = log_measure_prefactor(d - 1);
    for (int i = 1; i < n; ++i) {
        const double phi = theta1 + h * i;
        double r = tan_t1 / std::tan(phi);
        r = std::clamp(r, -1.0, 1.0);
        const double u = std::acos(r);
        if (u > u_prev) {
            cum = logsumexp2(cum, ::sievecost::detail::eval_panel(inner_lf,
                                                                  u_prev, u)
                                      .log_value);
            u_prev = u;
        }
        log_cap[i] = pre_inner + cum;
    }
    log_cap[0] = log_cap[1];  // left end contributes nothing; avoid -inf
    Pchip interp(theta1, h, std::move(log_cap));
    auto outer_lf = [&](double phi) {
        const double s = std::sin(phi);
        if (s <= 0.0) return kNegInf;
        return interp(phi) + (d - 2) * std::log(s);
    };
    const double log_int = log_adaptive_quad_checked(
        outer_lf, theta1, theta2, "wedge outer integral", cfg.rel_tol,
        cfg.max_panels);
    return log_measure_prefactor(d) + log_int;
}

}  // namespace detail

// ln W_D(alpha, beta, theta), the spherical-wedge measure
inline double log_wedge_measure(SphereDim dim, WedgeParam w,
                                const Config& cfg = default_config()) {
    const double a = w.alpha, b = w.beta, th = w.theta;
    if (!(th < std::acos(a) + std::acos(b)))
        throw std::domain_error(
            "wedge_measure: precondition theta < arccos(alpha) + arccos(beta) "
            "failed");
    if (!((a - b * std::cos(th)) * (b - a * std::cos(th)) > 0.0))
        throw std::domain_error(
            "wedge_measure: precondition (alpha - beta cos theta)(beta - "
            "alpha cos theta) > 0 failed");
    const double t_star =
        std::atan(a / (b * std::sin(th)) - 1.0 / std::tan(th));
    if (!(t_star > 0.0 && t_star < th))
        throw std::domain_error(
            "wedge_measure: theta* outside (0, theta); parameters outside the "
            "supported case");
    const double j1 = detail::log_wedge_j(dim.d, t_star, std::acos(b), cfg);
    const double j2 = detail::log_wedge_j(dim.d, th - t_star, std::acos(a), cfg);
    return logsumexp2(j1, j2);
}

inline double wedge_measure(SphereDim dim, WedgeParam w,
                            const Config& cfg = default_config()) {
    return std::exp(log_wedge_measure(dim, w, cfg));
}

}  // namespace geometry
}  // namespace sievecost
