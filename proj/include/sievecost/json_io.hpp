#pragma once

#include <json.hpp>

#include "sievecost/estimator.hpp"

namespace sievecost {

using nlohmann::json;

namespace circuit {

inline void to_json(json& j, const CostProfile& c) {
    j = json{{"toffoli_count", c.toffoli},
             {"toffoli_width", c.toffoli_width},
             {"reaction_depth", c.reaction_depth},
             {"qubit_width", c.qubit_width},
             {"active_volume", c.active_volume},
             {"cnot_extra", c.cnot_extra}};
}

}  // namespace circuit

namespace ft {

inline void to_json(json& j, const PhysicalAssumptions& p) {
    j = json{{"p_phy", p.p_phy},
             {"code_cycle_ns", p.code_cycle_s * 1e9},
             {"reaction_time_us", p.reaction_time_s * 1e6},
             {"logical_budget", p.logical_budget},
             {"distillation_budget", p.distillation_budget},
             {"c_ccz", p.c_ccz}};
}

inline void from_json(const json& j, PhysicalAssumptions& p) {
    if (j.contains("p_phy")) p.p_phy = j.at("p_phy").get<double>();
    if (j.contains("code_cycle_ns"))
        p.code_cycle_s = j.at("code_cycle_ns").get<double>() * 1e-9;
    if (j.contains("reaction_time_us"))
        p.reaction_time_s = j.at("reaction_time_us").get<double>() * 1e-6;
    if (j.contains("logical_budget"))
        p.logical_budget = j.at("logical_budget").get<double>();
    if (j.contains("distillation_budget"))
        p.distillation_budget = j.at("distillation_budget").get<double>();
    if (j.contains("c_ccz")) p.c_ccz = j.at("c_ccz").get<double>();
}

inline void to_json(json& j, const DistillationProtocol& p) {
    j = json{{"levels", p.levels},
             {"d_factory", p.d_factory},
             {"output_error", p.output_error},
             {"cycles_per_output", p.cycles_per_output},
             {"qubits_per_factory", p.qubits_per_factory},
             {"active_volume_per_state", p.active_volume_per_state}};
}

inline void to_json(json& j, const FTResult& r) {
    j = json{{"architecture", arch_name(r.arch)},
             {"code_distance", r.code_distance},
             {"logical_qubits", r.logical_qubits},
             {"logical_cycles", r.logical_cycles},
             {"distillation_factories", r.factories},
             {"physical_qubits", r.physical_qubits},
             {"circuit_time_h", r.circuit_time_s / 3600.0},
             {"reaction_limit_h", r.reaction_limit_s / 3600.0},
             {"final_time_h", r.final_time_s / 3600.0},
             {"distillation", r.distillation}};
}

}  // namespace ft

namespace hashing {

inline void to_json(json& j, const HashParamSolution& s) {
    j = json{{"family", family_name(s.family)},
             {"D", s.d},
             {"k", s.k},
             {"t", std::exp(s.log_t)},
             {"log2_t", s.log_t / std::log(2.0)},
             {"alpha", s.alpha},
             {"epsilon", s.epsilon},
             {"residual", s.residual}};
}

}  // namespace hashing

namespace estimator {

inline const char* sieve_name(SieveAlg s) {
    return s == SieveAlg::nv ? "nv" : "gauss";
}

inline void to_json(json& j, const EstimateRecord& r) {
    const auto& sc = r.scenario;
    j = json{
        {"sieve", sieve_name(sc.sieve)},
        {"hash", hashing::family_name(sc.hash)},
        {"D", sc.d},
        {"kappa", sc.gate.kappa},
        {"architecture", ft::arch_name(r.arch)},
        {"with_qram", r.options.with_qram},
        {"maxdepth", r.options.maxdepth},
        {"list_size", r.list_size},
        {"k", r.params.has_hash ? r.params.sol.k : 0},
        {"t", r.params.has_hash ? std::exp(r.params.sol.log_t) : 0.0},
        {"alpha", r.params.has_hash ? r.params.sol.alpha : 0.0},
        {"logical_qubits", r.search.logical_qubits},
        {"toffoli_count", r.search.total.toffoli},
        {"toffoli_width", r.search.total.toffoli_width},
        {"active_volume", r.search.total.active_volume},
        {"reaction_depth", r.search.total.reaction_depth},
        {"reaction_limit_h", r.search_ft.reaction_limit_s / 3600.0},
        {"code_distance", r.search_ft.code_distance},
        {"distillation_factories", r.search_ft.factories},
        {"physical_qubits", r.search_ft.physical_qubits},
        {"circuit_time_h", r.search_ft.circuit_time_s / 3600.0},
        {"final_time_h", r.search_ft.final_time_s / 3600.0},
        {"run_total",
         json{{"searches", r.total_searches},
              {"toffoli_count", r.total_toffoli},
              {"active_volume", r.total_active_volume},
              {"reaction_depth", r.total_reaction_depth},
              {"physical_qubits", r.physical_qubits},
              {"code_distance", r.code_distance},
              {"circuit_time_h", r.circuit_time_s / 3600.0},
              {"reaction_limit_h", r.reaction_limit_s / 3600.0},
              {"quantum_time_h", r.quantum_time_s / 3600.0},
              {"hashing_time_h", r.hashing_time_s / 3600.0},
              {"total_time_h", r.total_time_s / 3600.0},
              {"total_time_years", r.total_time_s / kSecondsPerYear},
              {"maxdepth_split", r.maxdepth_split}}}};
}

inline void to_json(json& j, const ClassicalEstimate& c) {
    j = json{{"search_additions", c.search_adds},
             {"search_multiplications", c.search_muls},
             {"hash_additions", c.hash_adds},
             {"hash_multiplications", c.hash_muls},
             {"seconds", c.seconds},
             {"hours", c.seconds / 3600.0},
             {"years", c.seconds / kSecondsPerYear}};
}

}  // namespace estimator
}  // namespace sievecost
