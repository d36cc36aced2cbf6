#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sievecost/circuit_cost.hpp"
#include "sievecost/fault_tolerance.hpp"
#include "sievecost/hashing.hpp"
#include "sievecost/laws.hpp"
#include "sievecost/sieve.hpp"

namespace sievecost {
namespace estimator {

using circuit::CostProfile;
using circuit::GateParams;
using circuit::SieveLoop;
using ft::Architecture;
using ft::FTResult;
using ft::PhysicalAssumptions;
using hashing::CostMode;
using hashing::HashFamily;
using hashing::SieveAlg;

inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kSecondsPerYear = 31557600.0;  // Julian year

struct ScenarioAssumptions {
    SieveAlg sieve = SieveAlg::gauss;
    HashFamily hash = HashFamily::none;
    int d = 400;
    GateParams gate{32, 65.0};
    double epsilon = 1e-3;  // hash miss probability
    double delta = 1e-3;    // per-search Grover failure budget
    double add_cycles = 1.0;
    double mul_cycles = 4.0;
    double clock_hz = 6e9;
    // LSF filter threshold: fixed at 1/2 (the D=400 tables' convention) or
    // optimised over (0, 1/2] per the balancing assumptions.
    bool lsf_optimize_alpha = false;

    void validate() const {
        if (d < 2) throw std::domain_error("scenario: D must be >= 2");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::domain_error("scenario: epsilon in (0,1)");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::domain_error("scenario: delta in (0,1)");
    }
    // ln of the list being bucketed / searched before hashing
    double log_base_list() const {
        return sieve == SieveAlg::nv ? laws::log_nv_center_list(d)
                                     : laws::log_gauss_max_list(d);
    }
    double log_full_list() const {
        return sieve == SieveAlg::nv ? laws::log_nv_initial_list(d)
                                     : laws::log_gauss_max_list(d);
    }
    hashing::BalanceScenario balance_scenario() const {
        return {log_full_list(), sieve == SieveAlg::gauss
                                     ? laws::log_gauss_iterations(d)
                                     : 0.0};
    }
};

struct EstimateOptions {
    bool with_qram = true;
    double maxdepth = 0.0;  // 0: unconstrained; else reaction-depth cap 2^40..2^96
};

// Hash parameters resolved for a scenario.
struct SolvedParams {
    bool has_hash = false;
    hashing::HashParamSolution sol;
    double log_candidates = 0.0;  // ln |C| (meaningful when has_hash)
};

inline SolvedParams solve_params(const ScenarioAssumptions& sc,
                                 CostMode mode = CostMode::quantum) {
    SolvedParams out;
    if (sc.hash == HashFamily::none) return out;
    out.has_hash = true;
    const auto bal = sc.balance_scenario();
    if (sc.hash == HashFamily::spherical_lsf) {
        if (sc.lsf_optimize_alpha) {
            out.sol = hashing::lsf_optimize_alpha(sc.d, sc.sieve, bal,
                                                  sc.epsilon, mode);
        } else {
            const auto p = hashing::lsf_params(sc.d, 0.5, sc.epsilon);
            out.sol.family = HashFamily::spherical_lsf;
            out.sol.d = sc.d;
            out.sol.epsilon = sc.epsilon;
            out.sol.alpha = 0.5;
            out.sol.k = 1;
            out.sol.k_real = 1.0;
            out.sol.log_t = p.log_t;
            out.sol.log_candidate_fraction = p.log_candidate_fraction;
        }
    } else {
        out.sol = hashing::balance_t(sc.hash, sc.d, sc.sieve, bal, sc.epsilon, mode);
    }
    out.log_candidates = sc.log_base_list() + out.sol.log_candidate_fraction;
    return out;
}

// Classical hashing workload in clock cycles (additions weight 1, etc.).
inline double hashing_cycles(const ScenarioAssumptions& sc,
                             const SolvedParams& params) {
    if (!params.has_hash) return 0.0;
    const double log_list = sc.log_full_list();
    const double log_t = params.sol.log_t;
    switch (sc.hash) {
        case HashFamily::angular: {
            const double base =
                std::exp(std::log(static_cast<double>(params.sol.k)) + log_t + log_list);
            return base * (sc.add_cycles + 2.0 * sc.mul_cycles);
        }
        case HashFamily::spherical_lsh: {
            const double base = std::exp(
                std::log(static_cast<double>(sc.d)) +
                std::sqrt(static_cast<double>(sc.d)) * std::log(2.0) +
                std::log(static_cast<double>(params.sol.k)) + log_t + log_list);
            return base * (sc.add_cycles + sc.mul_cycles);
        }
        case HashFamily::spherical_lsf: {
            const auto p = hashing::lsf_params(sc.d, params.sol.alpha, sc.epsilon);
            const double adds =
                std::exp(std::log(2.0 * std::log2(static_cast<double>(sc.d))) +
                         log_list + p.log_relevant);
            return adds * sc.add_cycles;
        }
        default:
            return 0.0;
    }
}

// One kind of Grover search in the whole-run schedule.
struct SearchShape {
    SieveLoop loop;
    double n_items;   // search-space size
    double m;         // 0 for the exhaustive "no solution" searches
    double count;     // how many such searches the run performs
};

namespace detail {

inline double no_solution_reaction_depth(SieveLoop loop, int d,
                                         const GateParams& g, double n,
                                         double delta, bool with_qram) {
    if (n < 2) return 0.0;
    const double iters =
        std::ceil(9.2 * std::sqrt(n) * std::log(1.0 / delta) / std::log(3.0));
    return iters * circuit::oracle_cost(loop, d, g, n, with_qram).reaction_depth;
}

// Smallest F >= 1 with the worst-case per-search reaction depth of a search
// over n/F items at most max_depth.
inline double solve_split_factor(SieveLoop loop, int d, const GateParams& g,
                                 double n, double delta, bool with_qram,
                                 double max_depth) {
    if (max_depth <= 0.0) return 1.0;
    if (no_solution_reaction_depth(loop, d, g, n, delta, with_qram) <= max_depth)
        return 1.0;
    double lo = 1.0, hi = 2.0;
    while (no_solution_reaction_depth(loop, d, g, std::ceil(n / hi), delta,
                                      with_qram) > max_depth) {
        hi *= 2.0;
        if (hi > n) return std::ceil(n / 2.0);  // parts of size ~2
    }
    // integer bisection; large F exceeds double granularity, so stop once the
    // bracket is within one ulp-sized step
    for (int it = 0; it < 200 && hi - lo > std::max(1.0, hi * 1e-12); ++it) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (mid <= lo || mid >= hi) break;
        if (no_solution_reaction_depth(loop, d, g, std::ceil(n / mid), delta,
                                       with_qram) <= max_depth)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace detail

// The whole-run search schedule under heuristic assumptions, after any
// MAXDEPTH splitting.
inline std::vector<SearchShape> heuristic_schedule(const ScenarioAssumptions& sc,
                                                   double n_items,
                                                   const EstimateOptions& opts) {
    std::vector<SearchShape> shapes;
    if (sc.sieve == SieveAlg::nv) {
        // D sieving steps; step j performs |L| - j|S| searches, all M=1
        const double s_size = std::exp(sc.log_base_list());
        const double searches = s_size * 0.5 * sc.d * (sc.d + 1);
        shapes.push_back({SieveLoop::nv, n_items, 1.0, searches});
    } else {
        const double iters = std::exp(laws::log_gauss_iterations(sc.d));
        shapes.push_back({SieveLoop::gauss1, n_items, 1.0, 9.0 * iters});
        shapes.push_back({SieveLoop::gauss1, n_items, 0.0, iters});
        shapes.push_back({SieveLoop::gauss2, n_items, 0.0, iters});
    }
    if (opts.maxdepth <= 0.0) return shapes;
    std::vector<SearchShape> split;
    for (const auto& s : shapes) {
        const double f = detail::solve_split_factor(s.loop, sc.d, sc.gate,
                                                    s.n_items, sc.delta,
                                                    opts.with_qram, opts.maxdepth);
        if (f <= 1.0) {
            split.push_back(s);
            continue;
        }
        const double part = std::ceil(s.n_items / f);
        if (s.m >= 1.0) {
            split.push_back({s.loop, part, 1.0, s.count});
            split.push_back({s.loop, part, 0.0, s.count * (f - 1.0)});
        } else {
            split.push_back({s.loop, part, 0.0, s.count * f});
        }
    }
    return split;
}

// Full resource estimate: per-search table view plus whole-run totals.
struct EstimateRecord {
    // scenario identity
    ScenarioAssumptions scenario;
    Architecture arch = Architecture::baseline;
    EstimateOptions options;

    // solved hash parameters
    SolvedParams params;

    // table view: one Grover search, M=1, worst-case list
    double list_size = 0.0;  // the searched list (|S|, |L| or |C|)
    circuit::SearchCost search;  // per-search logical costs
    FTResult search_ft;

    // whole-run aggregation
    double total_searches = 0.0;
    double total_toffoli = 0.0;
    double total_active_volume = 0.0;
    double total_reaction_depth = 0.0;
    double total_logical_cycles = 0.0;
    double physical_qubits = 0.0;  // max over searches
    int code_distance = 0;         // at the max-physical-qubits search
    double circuit_time_s = 0.0;   // summed over searches
    double reaction_limit_s = 0.0;
    double quantum_time_s = 0.0;   // sum of per-search final times
    double hashing_time_s = 0.0;
    double degenerate_scan_s = 0.0;  // classical scan cost of |C| < 2 searches
    double total_time_s = 0.0;       // quantum + hashing + degenerate scans
    double maxdepth_split = 1.0;     // F of the M=1 shape (1 = unconstrained)
};

inline EstimateRecord heuristic_estimate(const ScenarioAssumptions& sc,
                                         const PhysicalAssumptions& phys,
                                         Architecture arch,
                                         const EstimateOptions& opts = {}) {
    sc.validate();
    phys.validate();
    if (sc.d < 40)
        throw std::domain_error("heuristic_estimate: laws are fitted for D >= 40");
    if (opts.maxdepth > 0.0 &&
        !(opts.maxdepth >= std::pow(2.0, 40) && opts.maxdepth <= std::pow(2.0, 96)))
        throw std::domain_error("maxdepth must lie in [2^40, 2^96]");

    EstimateRecord rec;
    rec.scenario = sc;
    rec.arch = arch;
    rec.options = opts;
    rec.params = solve_params(sc, CostMode::quantum);

    const double log_n = rec.params.has_hash ? rec.params.log_candidates
                                             : sc.log_base_list();
    const double n_items = std::exp(log_n);
    rec.list_size = n_items;

    ft::PhysicalAssumptions ph = phys;
    GateParams gate = sc.gate;
    gate.c_ccz = ph.c_ccz;

    // table view: M=1 search of the first loop
    const SieveLoop main_loop =
        sc.sieve == SieveAlg::nv ? SieveLoop::nv : SieveLoop::gauss1;
    if (n_items >= 2.0) {
        rec.search = circuit::grover_search_cost(main_loop, sc.d, gate, n_items,
                                                 1.0, sc.delta, opts.with_qram);
        rec.search_ft = ft::account(arch, rec.search.total, rec.search.logical_qubits, ph);
    }

    // whole-run totals over the schedule
    const auto shapes = heuristic_schedule(sc, n_items, opts);
    rec.maxdepth_split = 1.0;
    if (opts.maxdepth > 0.0 && n_items >= 2.0) {
        rec.maxdepth_split = detail::solve_split_factor(
            main_loop, sc.d, gate, n_items, sc.delta, opts.with_qram, opts.maxdepth);
    }
    for (const auto& s : shapes) {
        rec.total_searches += s.count;
        if (s.n_items < 2.0) {
            // nothing to search quantumly: charge a classical scan
            const double per_pair =
                sc.d * (2.0 * sc.add_cycles + sc.mul_cycles);  // 2D adds, D muls
            rec.degenerate_scan_s +=
                s.count * s.n_items * per_pair / sc.clock_hz;
            continue;
        }
        const auto cost = circuit::grover_search_cost(s.loop, sc.d, gate,
                                                      s.n_items, s.m, sc.delta,
                                                      opts.with_qram);
        const auto acc = ft::account(arch, cost.total, cost.logical_qubits, ph);
        rec.total_toffoli += s.count * cost.total.toffoli;
        rec.total_active_volume += s.count * cost.total.active_volume;
        rec.total_reaction_depth += s.count * cost.total.reaction_depth;
        rec.total_logical_cycles += s.count * acc.logical_cycles;
        rec.circuit_time_s += s.count * acc.circuit_time_s;
        rec.reaction_limit_s += s.count * acc.reaction_limit_s;
        rec.quantum_time_s += s.count * acc.final_time_s;
        if (acc.physical_qubits > rec.physical_qubits) {
            rec.physical_qubits = acc.physical_qubits;
            rec.code_distance = acc.code_distance;
        }
    }
    rec.hashing_time_s = hashing_cycles(sc, rec.params) / sc.clock_hz;
    rec.total_time_s = rec.quantum_time_s + rec.hashing_time_s + rec.degenerate_scan_s;
    return rec;
}

inline EstimateRecord without_qram(const EstimateRecord& r,
                                   const PhysicalAssumptions& phys) {
    EstimateOptions opts = r.options;
    opts.with_qram = false;
    return heuristic_estimate(r.scenario, phys, r.arch, opts);
}

// ---------------------------------------------------------------------------
// Classical baseline (sequential scanning on a single 6 GHz core)
// ---------------------------------------------------------------------------

struct ClassicalEstimate {
    SolvedParams params;
    double search_adds = 0.0;
    double search_muls = 0.0;
    double hash_adds = 0.0;
    double hash_muls = 0.0;
    double seconds = 0.0;
};

inline ClassicalEstimate classical_estimate(const ScenarioAssumptions& sc) {
    sc.validate();
    ClassicalEstimate ce;
    ce.params = solve_params(sc, CostMode::classical);
    const double log_list = sc.log_full_list();
    const double dd = static_cast<double>(sc.d);
    double log_sel = 0.0;  // ln of the searched fraction multiplier
    if (ce.params.has_hash) log_sel = ce.params.sol.log_candidate_fraction;

    if (sc.sieve == SieveAlg::nv) {
        const double log_pairs = 2.0 * log_list + log_sel;
        ce.search_adds = std::exp(std::log(dd) + log_pairs);
        ce.search_muls = ce.params.has_hash ? std::exp(std::log(0.5 * dd) + log_pairs)
                                            : std::exp(std::log(0.5 * dd * dd) + log_pairs);
    } else {
        const double log_scans =
            laws::log_gauss_iterations(sc.d) + log_list + log_sel;
        ce.search_adds = std::exp(std::log(41.0 * dd - 19.0) + log_scans);
        ce.search_muls = std::exp(std::log(21.0 * dd) + log_scans);
    }
    if (ce.params.has_hash) {
        const double log_t = ce.params.sol.log_t;
        switch (sc.hash) {
            case HashFamily::angular:
                ce.hash_adds = std::exp(std::log(static_cast<double>(ce.params.sol.k)) +
                                        log_t + log_list);
                ce.hash_muls = 2.0 * ce.hash_adds;
                break;
            case HashFamily::spherical_lsh:
                ce.hash_adds = std::exp(std::log(dd) + std::sqrt(dd) * std::log(2.0) +
                                        std::log(static_cast<double>(ce.params.sol.k)) +
                                        log_t + log_list);
                ce.hash_muls = ce.hash_adds;
                break;
            case HashFamily::spherical_lsf: {
                const auto p = hashing::lsf_params(sc.d, ce.params.sol.alpha, sc.epsilon);
                ce.hash_adds = std::exp(std::log(2.0 * std::log2(dd)) + log_list +
                                        p.log_relevant);
                break;
            }
            default:
                break;
        }
    }
    const double cycles = (ce.search_adds + ce.hash_adds) * sc.add_cycles +
                          (ce.search_muls + ce.hash_muls) * sc.mul_cycles;
    ce.seconds = cycles / sc.clock_hz;
    return ce;
}

// ---------------------------------------------------------------------------
// History replay (resource estimate from a recorded run)
// ---------------------------------------------------------------------------

inline EstimateRecord replay_history(const std::vector<sieve::SearchEvent>& events,
                                     const ScenarioAssumptions& sc,
                                     const PhysicalAssumptions& phys,
                                     Architecture arch,
                                     const EstimateOptions& opts = {}) {
    sc.validate();
    phys.validate();
    EstimateRecord rec;
    rec.scenario = sc;
    rec.arch = arch;
    rec.options = opts;

    GateParams gate = sc.gate;
    gate.c_ccz = phys.c_ccz;

    // per-event costing; identical (loop, N, M-regime) events are grouped so
    // the FT accounting runs once per distinct shape
    struct Key {
        SieveLoop loop;
        std::uint64_t n;
        std::uint64_t m;
        bool operator==(const Key& o) const {
            return loop == o.loop && n == o.n && m == o.m;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<std::uint64_t>()(k.n * 1315423911ULL +
                                              k.m * 2654435761ULL +
                                              static_cast<std::uint64_t>(k.loop));
        }
    };
    std::unordered_map<Key, double, KeyHash> counts;
    for (const auto& e : events) {
        SieveLoop loop = SieveLoop::nv;
        if (e.loop_id == sieve::LoopId::gauss1) loop = SieveLoop::gauss1;
        if (e.loop_id == sieve::LoopId::gauss2) loop = SieveLoop::gauss2;
        counts[{loop, e.list_size, e.solutions_found}] += 1.0;
    }
    double largest = 0.0;
    for (const auto& [key, count] : counts) {
        rec.total_searches += count;
        const double n = static_cast<double>(key.n);
        if (n < 2.0) {
            const double per_pair = sc.d * (2.0 * sc.add_cycles + sc.mul_cycles);
            rec.degenerate_scan_s += count * n * per_pair / sc.clock_hz;
            continue;
        }
        const auto cost = circuit::grover_search_cost(
            key.loop, sc.d, gate, n, static_cast<double>(key.m), sc.delta,
            opts.with_qram);
        const auto acc = ft::account(arch, cost.total, cost.logical_qubits, phys);
        rec.total_toffoli += count * cost.total.toffoli;
        rec.total_active_volume += count * cost.total.active_volume;
        rec.total_reaction_depth += count * cost.total.reaction_depth;
        rec.total_logical_cycles += count * acc.logical_cycles;
        rec.circuit_time_s += count * acc.circuit_time_s;
        rec.reaction_limit_s += count * acc.reaction_limit_s;
        rec.quantum_time_s += count * acc.final_time_s;
        if (acc.physical_qubits > rec.physical_qubits) {
            rec.physical_qubits = acc.physical_qubits;
            rec.code_distance = acc.code_distance;
        }
        if (n > largest) {
            largest = n;
            rec.search = cost;
            rec.search_ft = acc;
        }
    }
    rec.list_size = largest;
    rec.total_time_s = rec.quantum_time_s + rec.degenerate_scan_s;
    return rec;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepPoint {
    ScenarioAssumptions scenario;
    Architecture arch;
    EstimateOptions options;
};

inline std::vector<SweepPoint> sweep_grid(int d_min, int d_max, int d_step,
                                          const std::vector<SieveAlg>& sieves,
                                          const std::vector<HashFamily>& hashes,
                                          const std::vector<Architecture>& archs,
                                          const ScenarioAssumptions& proto,
                                          const EstimateOptions& opts) {
    std::vector<SweepPoint> grid;
    for (int d = d_min; d <= d_max; d += d_step)
        for (auto s : sieves)
            for (auto h : hashes)
                for (auto a : archs) {
                    ScenarioAssumptions sc = proto;
                    sc.d = d;
                    sc.sieve = s;
                    sc.hash = h;
                    grid.push_back({sc, a, opts});
                }
    return grid;
}

}  // namespace estimator
}  // namespace sievecost
