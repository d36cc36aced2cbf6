#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sievecost/rng.hpp"

namespace sievecost {
namespace lattice {

// kappa-bit two's-complement coordinate range
inline void check_kappa_range(std::int64_t x, int kappa) {
    const std::int64_t lo = -(std::int64_t(1) << (kappa - 1));
    const std::int64_t hi = (std::int64_t(1) << (kappa - 1)) - 1;
    if (x < lo || x > hi)
        throw std::overflow_error("coordinate " + std::to_string(x) +
                                  " exceeds " + std::to_string(kappa) +
                                  "-bit range");
}

struct LatticeVector {
    std::vector<std::int32_t> c;
    std::int64_t norm2 = 0;

    LatticeVector() = default;

    static LatticeVector from_coords(const std::vector<std::int64_t>& coords,
                                     int kappa = 32) {
        LatticeVector v;
        v.c.reserve(coords.size());
        unsigned __int128 n2 = 0;
        for (std::int64_t x : coords) {
            check_kappa_range(x, std::min(kappa, 32));
            v.c.push_back(static_cast<std::int32_t>(x));
            n2 += static_cast<unsigned __int128>(x * x);
        }
        if (n2 > static_cast<unsigned __int128>(INT64_MAX))
            throw std::overflow_error("squared norm exceeds 64 bits");
        v.norm2 = static_cast<std::int64_t>(n2);
        return v;
    }

    std::size_t dim() const { return c.size(); }
    bool is_zero() const { return norm2 == 0; }

    bool operator==(const LatticeVector& o) const { return c == o.c; }
};

inline std::int64_t dot(const LatticeVector& a, const LatticeVector& b) {
    std::int64_t s = 0;
    const std::size_t n = a.c.size();
    for (std::size_t i = 0; i < n; ++i)
        s += static_cast<std::int64_t>(a.c[i]) * b.c[i];
    return s;
}

inline LatticeVector add(const LatticeVector& a, const LatticeVector& b,
                         int kappa = 32) {
    std::vector<std::int64_t> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = std::int64_t(a.c[i]) + b.c[i];
    return LatticeVector::from_coords(r, kappa);
}

inline LatticeVector sub(const LatticeVector& a, const LatticeVector& b,
                         int kappa = 32) {
    std::vector<std::int64_t> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = std::int64_t(a.c[i]) - b.c[i];
    return LatticeVector::from_coords(r, kappa);
}

inline LatticeVector negate(const LatticeVector& a) {
    LatticeVector v = a;
    for (auto& x : v.c) x = -x;
    return v;
}

struct LatticeBasis {
    int d = 0;
    std::vector<std::vector<std::int64_t>> rows;  // rows are basis vectors

    static LatticeBasis from_rows(std::vector<std::vector<std::int64_t>> r) {
        LatticeBasis b;
        b.d = static_cast<int>(r.size());
        for (const auto& row : r) {
            if (static_cast<int>(row.size()) != b.d)
                throw std::invalid_argument("basis must be square");
        }
        b.rows = std::move(r);
        return b;
    }
};

struct GramSchmidt {
    std::vector<std::vector<double>> bstar;  // orthogonalized rows
    std::vector<std::vector<double>> mu;     // mu[i][j], j < i
    std::vector<double> bstar_norm2;
};

inline GramSchmidt gram_schmidt(const LatticeBasis& b) {
    const int d = b.d;
    GramSchmidt gs;
    gs.bstar.assign(d, std::vector<double>(d, 0.0));
    gs.mu.assign(d, std::vector<double>(d, 0.0));
    gs.bstar_norm2.assign(d, 0.0);
    for (int i = 0; i < d; ++i) {
        std::vector<double> v(b.rows[i].begin(), b.rows[i].end());
        double row_norm2 = 0.0;
        for (double x : v) row_norm2 += x * x;
        for (int j = 0; j < i; ++j) {
            double num = 0.0;
            for (int k = 0; k < d; ++k)
                num += static_cast<double>(b.rows[i][k]) * gs.bstar[j][k];
            const double m = num / gs.bstar_norm2[j];
            gs.mu[i][j] = m;
            for (int k = 0; k < d; ++k) v[k] -= m * gs.bstar[j][k];
        }
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        if (!(n2 > 1e-18 * row_norm2))
            throw std::runtime_error(
                "gram_schmidt: basis is rank deficient at row " +
                std::to_string(i));
        gs.bstar[i] = std::move(v);
        gs.bstar_norm2[i] = n2;
        gs.mu[i][i] = 1.0;
    }
    return gs;
}

struct GaussianParam {
    double s;  // width of rho(x) = exp(-pi x^2 / s^2)
    explicit GaussianParam(double width) : s(width) {
        if (!(width > 0.0)) throw std::domain_error("Gaussian width must be > 0");
    }
};

inline double default_klein_width(const GramSchmidt& gs) {
    double maxn = 0.0;
    for (double n2 : gs.bstar_norm2) maxn = std::max(maxn, std::sqrt(n2));
    const double d = static_cast<double>(gs.bstar_norm2.size());
    return 1.5 * maxn * std::sqrt(std::log(2.0 * d + 4.0) / 3.14159265358979);
}

// Discrete Gaussian on Z with density proportional to exp(-pi (z-c)^2 / s^2),
// sampled by inverse CDF over a +-10 sigma window.
inline std::int64_t sample_z_gaussian(double c, double s, Rng& rng) {
    const double sigma = s / 2.5066282746310002;  // s / sqrt(2 pi)
    const std::int64_t lo = static_cast<std::int64_t>(std::floor(c - 10.0 * sigma - 1.0));
    const std::int64_t hi = static_cast<std::int64_t>(std::ceil(c + 10.0 * sigma + 1.0));
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    static thread_local std::vector<double> w;
    w.resize(n);
    double total = 0.0;
    const double inv_s2 = 3.14159265358979 / (s * s);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = static_cast<double>(lo + static_cast<std::int64_t>(i)) - c;
        total += std::exp(-inv_s2 * z * z);
        w[i] = total;
    }
    const double u = rng.next_double() * total;
    const std::size_t idx =
        std::lower_bound(w.begin(), w.end(), u) - w.begin();
    return lo + static_cast<std::int64_t>(std::min(idx, n - 1));
}

class KleinSampler {
public:
    KleinSampler(const LatticeBasis& basis, GaussianParam g, int kappa = 32)
        : basis_(basis), gs_(gram_schmidt(basis)), s_(g.s), kappa_(kappa) {
        double maxn = 0.0;
        for (double n2 : gs_.bstar_norm2) maxn = std::max(maxn, std::sqrt(n2));
        if (s_ < maxn)
            throw std::domain_error(
                "Klein width below max Gram-Schmidt norm; sampler would be "
                "too narrow");
    }

    KleinSampler(const LatticeBasis& basis, int kappa = 32)
        : basis_(basis), gs_(gram_schmidt(basis)),
          s_(default_klein_width(gs_)), kappa_(kappa) {}

    // Randomized nearest plane; returns the lattice vector and, optionally,
    // its integer coefficients.
    LatticeVector sample(Rng& rng, std::vector<std::int64_t>* coeffs = nullptr) const {
        const int d = basis_.d;
        std::vector<double> c(d, 0.0);
        std::vector<std::int64_t> z(d, 0);
        std::vector<std::int64_t> v(d, 0);
        for (int i = d - 1; i >= 0; --i) {
            double num = 0.0;
            for (int k = 0; k < d; ++k) num += c[k] * gs_.bstar[i][k];
            const double center = num / gs_.bstar_norm2[i];
            const double si = s_ / std::sqrt(gs_.bstar_norm2[i]);
            z[i] = sample_z_gaussian(center, si, rng);
            for (int k = 0; k < d; ++k) {
                c[k] -= static_cast<double>(z[i]) * basis_.rows[i][k];
                v[k] += z[i] * basis_.rows[i][k];
            }
        }
        if (coeffs) *coeffs = z;
        return LatticeVector::from_coords(v, kappa_);
    }

    const GramSchmidt& gs() const { return gs_; }
    double width() const { return s_; }

private:
    const LatticeBasis& basis_;
    GramSchmidt gs_;
    double s_;
    int kappa_;
};

// Exhaustive shortest-vector search by Schnorr-Euchner enumeration over the
// Gram-Schmidt box.  Exponential; guarded to D <= 12.
inline LatticeVector brute_force_svp(const LatticeBasis& b,
                                     double radius_bound = 0.0,
                                     int kappa = 32) {
    if (b.d > 12)
        throw std::invalid_argument(
            "brute_force_svp: dimension too large (guard is D <= 12)");
    const int d = b.d;
    const GramSchmidt gs = gram_schmidt(b);
    double best2 = 0.0;
    for (const auto& row : b.rows) {
        double n2 = 0.0;
        for (auto x : row) n2 += static_cast<double>(x) * x;
        if (best2 == 0.0 || n2 < best2) best2 = n2;
    }
    if (radius_bound > 0.0) best2 = std::min(best2, radius_bound * radius_bound);
    best2 *= 1.0 + 1e-12;

    std::vector<std::int64_t> z(d, 0), best_z;
    // partial[i] = squared norm contribution of levels i..d-1
    // center[i] depends on z_{i+1..d-1}
    std::vector<double> partial(d + 1, 0.0), center(d, 0.0);

    // recursive depth-first enumeration, zig-zag order per level
    auto level_center = [&](int i) {
        double c = 0.0;
        for (int j = i + 1; j < d; ++j) c += static_cast<double>(z[j]) * gs.mu[j][i];
        return -c;
    };
    std::uint64_t nodes = 0;
    const std::uint64_t node_cap = 400000000ULL;

    std::vector<std::int64_t> lo(d), hi(d);
    auto rec = [&](auto&& self, int i) -> void {
        if (++nodes > node_cap)
            throw std::runtime_error("brute_force_svp: node budget exceeded");
        if (i < 0) {
            if (partial[0] > 0.0 && partial[0] < best2) {
                bool nonzero = false;
                for (auto x : z) nonzero |= (x != 0);
                if (nonzero) {
                    best2 = partial[0];
                    best_z = z;
                }
            }
            return;
        }
        const double c = level_center(i);
        center[i] = c;
        const double room = best2 - partial[i + 1];
        if (room < 0.0) return;
        const double half_width = std::sqrt(room / gs.bstar_norm2[i]);
        const std::int64_t zlo = static_cast<std::int64_t>(std::ceil(c - half_width - 1e-9));
        const std::int64_t zhi = static_cast<std::int64_t>(std::floor(c + half_width + 1e-9));
        for (std::int64_t zi = zlo; zi <= zhi; ++zi) {
            const double diff = static_cast<double>(zi) - c;
            const double contrib = diff * diff * gs.bstar_norm2[i];
            if (partial[i + 1] + contrib >= best2) continue;
            z[i] = zi;
            partial[i] = partial[i + 1] + contrib;
            self(self, i - 1);
        }
        z[i] = 0;
    };
    rec(rec, d - 1);

    if (best_z.empty()) {
        // no interior vector beat the shortest basis row; return that row
        std::size_t arg = 0;
        double n2min = 0.0;
        for (std::size_t i = 0; i < b.rows.size(); ++i) {
            double n2 = 0.0;
            for (auto x : b.rows[i]) n2 += static_cast<double>(x) * x;
            if (i == 0 || n2 < n2min) {
                n2min = n2;
                arg = i;
            }
        }
        return LatticeVector::from_coords(b.rows[arg], kappa);
    }
    std::vector<std::int64_t> v(d, 0);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) v[k] += best_z[i] * b.rows[i][k];
    return LatticeVector::from_coords(v, kappa);
}

inline LatticeBasis random_basis(int d, std::int64_t bmax, Rng& rng) {
    while (true) {
        std::vector<std::vector<std::int64_t>> rows(
            d, std::vector<std::int64_t>(d, 0));
        for (auto& row : rows)
            for (auto& x : row) x = rng.next_int(-bmax, bmax);
        LatticeBasis b = LatticeBasis::from_rows(std::move(rows));
        try {
            gram_schmidt(b);
            return b;
        } catch (const std::runtime_error&) {
            // rank deficient; resample
        }
    }
}

// Basis file format: first line D, then D lines of D integers.
inline void save_basis(const LatticeBasis& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << b.d << "\n";
    for (const auto& row : b.rows) {
        for (int k = 0; k < b.d; ++k) out << row[k] << (k + 1 < b.d ? ' ' : '\n');
    }
}

inline LatticeBasis load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    int d = 0;
    if (!(in >> d) || d < 1) throw std::runtime_error("bad basis header in " + path);
    std::vector<std::vector<std::int64_t>> rows(d, std::vector<std::int64_t>(d));
    for (auto& row : rows)
        for (auto& x : row)
            if (!(in >> x)) throw std::runtime_error("truncated basis in " + path);
    return LatticeBasis::from_rows(std::move(rows));
}

}  // namespace lattice
}  // namespace sievecost
