#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sievecost {
namespace circuit {

// Logical cost bundle.  Counts are kept in doubles: integer-exact below 2^53,
// 3-significant-digit regime above (table values are quoted to 3 digits).
struct CostProfile {
    double toffoli = 0.0;
    double toffoli_width = 0.0;
    double reaction_depth = 0.0;
    double qubit_width = 0.0;   // logical, before architecture overhead
    double active_volume = 0.0;
    double cnot_extra = 0.0;

    CostProfile& operator+=(const CostProfile& o) {
        toffoli += o.toffoli;
        toffoli_width = std::max(toffoli_width, o.toffoli_width);
        reaction_depth += o.reaction_depth;
        qubit_width = std::max(qubit_width, o.qubit_width);
        active_volume += o.active_volume;
        cnot_extra += o.cnot_extra;
        return *this;
    }
    CostProfile operator+(const CostProfile& o) const {
        CostProfile r = *this;
        r += o;
        return r;
    }
    CostProfile scaled(double m) const {
        CostProfile r = *this;
        r.toffoli *= m;
        r.reaction_depth *= m;
        r.active_volume *= m;
        r.cnot_extra *= m;
        return r;
    }
};

struct GateParams {
    int kappa = 32;
    double c_ccz = 65.0;  // active volume of one distilled |CCZ> state

    GateParams() = default;
    GateParams(int k, double c) : kappa(k), c_ccz(c) {
        if (k < 2) throw std::domain_error("GateParams: kappa must be >= 2");
        if (!(c > 0.0)) throw std::domain_error("GateParams: c_ccz must be > 0");
    }
};

inline double log2d(double x) { return std::log2(x); }
inline double ceil_log2(double x) { return std::ceil(std::log2(x)); }

// --- out-of-place kappa-bit arithmetic gadgets (inverses included) ---------

inline CostProfile adder_cost(const GateParams& g) {
    const double k = g.kappa;
    CostProfile c;
    c.toffoli = k - 1;
    c.toffoli_width = 1;
    c.reaction_depth = 2 * (k - 1);
    c.qubit_width = 3 * k;
    c.active_volume = (k - 1) * (39 + g.c_ccz) + 7;
    return c;
}

inline CostProfile controlled_adder_cost(const GateParams& g) {
    const double k = g.kappa;
    CostProfile c;
    c.toffoli = 2 * k - 1;
    c.toffoli_width = k;
    c.reaction_depth = 2 * k;
    c.qubit_width = 4 * k + 1;
    c.active_volume = (k - 1) * (51 + g.c_ccz) + 19;
    return c;
}

inline CostProfile multiplier_cost(const GateParams& g) {
    const double k = g.kappa;
    CostProfile c;
    c.toffoli = k * k - k + 1;
    c.toffoli_width = 0.5 * k * k + 0.5 * k;
    c.reaction_depth = 2 * k * log2d(k) - 2 * k - 2 * log2d(k) + 4;
    c.qubit_width = 2 * k * k + k;
    c.active_volume = 28 * k * k - 42 * k + 28 + (k * k - k + 1) * g.c_ccz;
    return c;
}

// one classical input; the controlled copies degrade to classically
// controlled CNOTs
inline CostProfile hybrid_multiplier_cost(const GateParams& g) {
    const double k = g.kappa;
    CostProfile c;
    c.toffoli = std::max(0.0, 0.5 * k * k - 1.5 * k + 1);  // 0 at kappa=2
    c.toffoli_width = 0.5 * k;
    c.reaction_depth = 2 * k * log2d(k) - 2 * k - 2 * log2d(k) + 2;
    c.qubit_width = 1.5 * k * k + 0.5 * k;
    c.active_volume =
        20.25 * k * k - 48.75 * k + 32 + std::max(0.0, 0.5 * k * k - 1.5 * k + 1) * g.c_ccz;
    return c;
}

// --- bucket-brigade QRAM (size N, kappa-bit words), uncomputation included -

inline CostProfile qram_cost(double n_items, const GateParams& g) {
    if (n_items < 2) throw std::domain_error("qram_cost: need N >= 2");
    const double nbits = ceil_log2(n_items);
    CostProfile c;
    c.toffoli = n_items - 2;
    c.toffoli_width = n_items / 2;
    c.reaction_depth = 2 * (nbits - 1);
    // dirty ancillae plus address/output registers
    c.qubit_width = (2 * n_items - nbits - 1) + (nbits + g.kappa);
    c.active_volume = (25 + 1.5 * g.kappa + g.c_ccz) * n_items;
    return c;
}

// --- Grover diffusion over n address bits ----------------------------------

inline CostProfile diffusion_cost(double n_bits, const GateParams& g) {
    if (n_bits < 1) throw std::domain_error("diffusion_cost: need n >= 1");
    CostProfile c;
    if (n_bits < 2) {  // single address bit: a bare phase flip, no Toffoli
        c.qubit_width = 1;
        return c;
    }
    c.toffoli = n_bits - 1;
    c.toffoli_width = std::floor(n_bits / 2);
    c.reaction_depth = 2 * std::ceil(std::log2(n_bits));
    c.qubit_width = 2 * n_bits - 1;  // address register plus n-1 ancillae
    c.active_volume = (n_bits - 1) * (18 + g.c_ccz);
    return c;
}

// --- multi-controlled Toffoli ----------------------------------------------

struct MctCost {
    double toffoli;
    double ancillae;
};

inline MctCost mct_cost(double controls) {
    if (controls < 2) throw std::domain_error("mct_cost: need k >= 2 controls");
    return {controls - 1, controls - 2};
}

// --- Grover iteration counts ------------------------------------------------

enum class GroverMode { expected_with_solution, no_solution, known_m };

inline double grover_iterations(double n, double m, double delta, GroverMode mode) {
    if (n < 1) throw std::domain_error("grover_iterations: N >= 1 required");
    switch (mode) {
        case GroverMode::expected_with_solution:
            if (!(m >= 1 && m < n / 4.0))
                throw std::domain_error(
                    "grover_iterations: unknown-M regime needs 1 <= M < N/4");
            return std::ceil(3.1 * std::sqrt(n / m));
        case GroverMode::no_solution:
            return std::ceil(9.2 * std::sqrt(n) * std::log(1.0 / delta) / std::log(3.0));
        case GroverMode::known_m:
            if (!(m >= 1)) throw std::domain_error("grover_iterations: M >= 1");
            return std::floor(0.25 * 3.14159265358979323846 * std::sqrt(n / m));
    }
    return 0;
}

// --- per-iteration oracle + diffusion composition (Table 2) -----------------

enum class SieveLoop { nv, gauss1, gauss2 };

inline const char* loop_name(SieveLoop l) {
    switch (l) {
        case SieveLoop::nv: return "nv";
        case SieveLoop::gauss1: return "gauss1";
        case SieveLoop::gauss2: return "gauss2";
    }
    return "?";
}

// Cost of one Grover iteration (phase oracle plus diffusion) for a search
// space of n_items entries of D kappa-bit coordinates.  with_qram=false zeroes
// every QRAM contribution (the free-memory scenario).
inline CostProfile oracle_cost(SieveLoop loop, int d, const GateParams& g,
                               double n_items, bool with_qram = true) {
    if (n_items < 2) throw std::domain_error("oracle_cost: search space < 2");
    const double k = g.kappa;
    const double nbits = ceil_log2(n_items);
    const double logd = std::ceil(std::log2(static_cast<double>(d)));
    const CostProfile qram = with_qram ? qram_cost(n_items, g) : CostProfile{};
    const double qram_width = with_qram ? (2 * n_items + d * k - 1) : 0.0;
    const CostProfile add = adder_cost(g);
    const CostProfile mul = multiplier_cost(g);
    const CostProfile hmul = hybrid_multiplier_cost(g);
    const CostProfile diff = diffusion_cost(nbits, g);

    CostProfile c;
    switch (loop) {
        case SieveLoop::nv:
            c.toffoli = qram.toffoli + 2 * d * add.toffoli + d * mul.toffoli + diff.toffoli;
            c.active_volume = qram.active_volume + 2 * d * add.active_volume +
                              d * mul.active_volume + diff.active_volume;
            c.reaction_depth = qram.reaction_depth + mul.reaction_depth +
                               2 * (logd + 2) * (k - 1) + diff.reaction_depth;
            c.qubit_width = qram_width                   // QRAM
                            + 2 * d * k                  // D parallel adders
                            + 2 * d * k * k              // D parallel multipliers
                            + d * k + k;                 // adder tree + comparator
            c.toffoli_width = std::max(qram.toffoli_width, d * mul.toffoli_width);
            c.cnot_extra = 0;
            break;
        case SieveLoop::gauss1:
            c.toffoli = qram.toffoli + (4 * d - 2) * add.toffoli +
                        2 * d * mul.toffoli + diff.toffoli;
            c.active_volume = qram.active_volume +
                              (4 * d - 2) * add.active_volume +
                              2 * d * mul.active_volume + diff.active_volume +
                              4 * (2 * d * k + 4);
            c.reaction_depth = qram.reaction_depth +
                               2 * (1 + logd) * (k - 1) + mul.reaction_depth +
                               diff.reaction_depth;
            c.qubit_width = qram_width                   // QRAM
                            + d * k                      // copy of |w_i>
                            + 4 * d * k                  // 2D parallel adders
                            + 2 * d * (2 * k * k - k)    // 2D parallel multipliers
                            + 2 * (d - 1) * k;           // 2D-2 tree adders
            c.toffoli_width = std::max(qram.toffoli_width, 2 * d * mul.toffoli_width);
            c.cnot_extra = 2 * d * k + 4;
            break;
        case SieveLoop::gauss2:
            c.toffoli = qram.toffoli + (d + 1) * add.toffoli +
                        d * hmul.toffoli + diff.toffoli;
            c.active_volume = qram.active_volume +
                              (d + 1) * add.active_volume +
                              d * hmul.active_volume + diff.active_volume +
                              4 * 4;
            c.reaction_depth = qram.reaction_depth + hmul.reaction_depth +
                               2 * (1 + logd) * (k - 1) + 2 * 2 * (k - 1) +
                               diff.reaction_depth;
            c.qubit_width = qram_width                        // QRAM
                            + d * (1.5 * k * k - 0.5 * k)     // hybrid multipliers
                            + (d - 1) * k                     // adder tree
                            + 3 * k;                          // two comparators
            c.toffoli_width = std::max(qram.toffoli_width, d * hmul.toffoli_width);
            c.cnot_extra = 4;
            break;
    }
    return c;
}

// --- a whole Grover search ---------------------------------------------------

struct SearchCost {
    CostProfile total;       // summed over all iterations
    double iterations = 0;
    double logical_qubits = 0;  // 2x overlap-accounted width
    double n_items = 0;
};

inline SearchCost grover_search_cost(SieveLoop loop, int d, const GateParams& g,
                                     double n_items, double m_solutions,
                                     double delta, bool with_qram = true) {
    SearchCost s;
    s.n_items = n_items;
    if (n_items < 2) {
        // degenerate search space: nothing to search quantumly
        s.iterations = 0;
        return s;
    }
    const CostProfile per_iter = oracle_cost(loop, d, g, n_items, with_qram);
    if (m_solutions >= 1) {
        // solutions at >= N/4 density fall outside the unknown-M bound; one
        // known-M style iteration already succeeds with high probability
        s.iterations = (m_solutions < n_items / 4.0)
                           ? grover_iterations(n_items, m_solutions, delta,
                                               GroverMode::expected_with_solution)
                           : std::max(1.0, grover_iterations(n_items, m_solutions,
                                                             delta, GroverMode::known_m));
    } else {
        s.iterations = grover_iterations(n_items, 0, delta, GroverMode::no_solution);
    }
    s.total = per_iter.scaled(s.iterations);
    s.logical_qubits = 2.0 * per_iter.qubit_width;
    return s;
}

}  // namespace circuit
}  // namespace sievecost
