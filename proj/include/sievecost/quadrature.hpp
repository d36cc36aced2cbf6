#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sievecost {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double logsumexp2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// ln(1 - (1 - e^logq)^t) for logq <= 0, t >= 0.  Used by every OR-composed
// collision probability; stable for q anywhere between 1e-300 and 1.
inline double log_one_minus_pow(double logq, double t) {
    if (t <= 0.0) return kNegInf;
    if (logq == kNegInf) return kNegInf;
    if (logq >= 0.0) return 0.0;
    const double q = std::exp(logq);
    double u;  // t * ln(1-q)
    if (q > 1e-10) {
        u = t * std::log1p(-q);
    } else {
        u = -t * q * (1.0 + 0.5 * q);
    }
    if (u < -1e-10) {
        return std::log(-std::expm1(u));
    }
    // 1 - e^u ~ -u for tiny |u|
    return std::log(t) + logq;
}

struct LogQuadResult {
    double log_value = kNegInf;
    double rel_error = 0.0;
    int panels = 0;
    bool converged = true;
};

namespace detail {

// QUADPACK 15-point Kronrod rule with embedded 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double a, b;
    double log_value;  // ln of the Kronrod estimate over [a,b]
    double log_error;  // ln of |K - G| estimate
};

template <typename F>
Panel eval_panel(F&& log_f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double lf[15];
    double m = kNegInf;
    for (int i = 0; i < 8; ++i) {
        const double x1 = c - h * kXgk[i];
        lf[i] = log_f(x1);
        if (lf[i] > m) m = lf[i];
        if (i < 7) {
            const double x2 = c + h * kXgk[i];
            lf[14 - i] = log_f(x2);
            if (lf[14 - i] > m) m = lf[14 - i];
        }
    }
    Panel p{a, b, kNegInf, kNegInf};
    if (m == kNegInf) return p;  // integrand vanishes on the panel
    double sk = 0.0, sg = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double e1 = std::exp(lf[i] - m);
        const double e2 = std::exp(lf[14 - i] - m);
        sk += kWgk[i] * (e1 + e2);
        if (i % 2 == 1) sg += kWg[i / 2] * (e1 + e2);
    }
    const double ec = std::exp(lf[7] - m);
    sk += kWgk[7] * ec;
    sg += kWg[3] * ec;
    p.log_value = m + std::log(sk * h);
    const double diff = std::abs(sk - sg);
    p.log_error = (diff > 0.0) ? m + std::log(diff * h) : kNegInf;
    return p;
}

}  // namespace detail

// Adaptive quadrature of exp(log_f) over [a,b], all bookkeeping in log domain.
// Returns ln of the integral.  Panels with the largest absolute error estimate
// are split first; stops at rel_tol (relative to the running total) or at the
// panel cap.
template <typename F>
LogQuadResult log_adaptive_quad(F&& log_f, double a, double b,
                                double rel_tol = 1e-12, int max_panels = 2000,
                                int initial_panels = 8) {
    LogQuadResult res;
    if (!(b > a)) {
        res.log_value = kNegInf;
        return res;
    }
    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(initial_panels) + 64);
    for (int i = 0; i < initial_panels; ++i) {
        const double pa = a + (b - a) * i / initial_panels;
        const double pb = a + (b - a) * (i + 1) / initial_panels;
        panels.push_back(detail::eval_panel(log_f, pa, pb));
    }
    auto total = [&panels]() {
        double lv = kNegInf, le = kNegInf;
        for (const auto& p : panels) {
            lv = logsumexp2(lv, p.log_value);
            le = logsumexp2(le, p.log_error);
        }
        return std::pair<double, double>(lv, le);
    };
    while (true) {
        auto [lv, le] = total();
        res.log_value = lv;
        res.panels = static_cast<int>(panels.size());
        if (lv == kNegInf) {
            res.rel_error = 0.0;
            return res;
        }
        res.rel_error = std::exp(le - lv);
        if (le == kNegInf || res.rel_error < rel_tol) return res;
        if (static_cast<int>(panels.size()) >= max_panels) {
            res.converged = false;
            return res;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].log_error > panels[worst].log_error) worst = i;
        }
        const detail::Panel old = panels[worst];
        const double mid = 0.5 * (old.a + old.b);
        panels[worst] = detail::eval_panel(log_f, old.a, mid);
        panels.push_back(detail::eval_panel(log_f, mid, old.b));
    }
}

template <typename F>
double log_adaptive_quad_checked(F&& log_f, double a, double b,
                                 const std::string& what,
                                 double rel_tol = 1e-12,
                                 int max_panels = 2000) {
    const LogQuadResult r = log_adaptive_quad(log_f, a, b, rel_tol, max_panels);
    if (!r.converged) {
        throw std::runtime_error("quadrature did not converge for " + what +
                                 " (panels=" + std::to_string(r.panels) +
                                 ", rel_err=" + std::to_string(r.rel_error) +
                                 ")");
    }
    return r.log_value;
}

}  // namespace sievecost
