#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sievecost/circuit_cost.hpp"
#include "sievecost/fault_tolerance.hpp"

using namespace sievecost;
using namespace sievecost::ft;

TEST_CASE("logical error rate formula") {
    REQUIRE(logical_error_rate(1e-3, 1) == Catch::Approx(0.01));
    REQUIRE(logical_error_rate(1e-5, 34) == Catch::Approx(3.162e-54).epsilon(1e-3));
    double prev = 1.0;
    for (int d = 3; d < 40; d += 2) {
        const double p = logical_error_rate(1e-4, d);
        REQUIRE(p < prev);
        prev = p;
    }
}

TEST_CASE("code distance selection anchors") {
    // NVSieve baseline volume (paper's worked example)
    REQUIRE(select_distance(2.82e48, 1e-5, 1e-3) == 34);
    // GaussSieve baseline: 3.48e24 logical qubits x 6.03e15 cycles
    REQUIRE(select_distance(3.48e24 * 6.03e15, 1e-5, 1e-3) == 29);
    // active-volume variant rounds up to even distances
    REQUIRE(select_distance(2 * 3.47e38, 1e-5, 1e-3, DistanceParity::even) == 28);
    REQUIRE(select_distance(2 * 4.27e46, 1e-5, 1e-3, DistanceParity::even) == 34);
}

TEST_CASE("code distance is monotone in volume and physical error") {
    int prev = 0;
    for (double v : {1e10, 1e20, 1e30, 1e40, 1e50}) {
        const int d = select_distance(v, 1e-5, 1e-3);
        REQUIRE(d >= prev);
        prev = d;
    }
    prev = 0;
    for (double p : {1e-6, 1e-5, 1e-4, 1e-3}) {
        const int d = select_distance(1e30, p, 1e-3);
        REQUIRE(d >= prev);
        prev = d;
    }
}

TEST_CASE("distillation protocol anchors") {
    auto p34 = distillation_protocol(34, 1e-5, 3.23e-48, Architecture::baseline);
    REQUIRE(p34.cycles_per_output == 108);
    REQUIRE(p34.qubits_per_factory == 111192);
    // one order of magnitude around the reported 5.4e-50
    REQUIRE(p34.output_error < 5.4e-49);
    REQUIRE(p34.output_error > 5.4e-51);

    auto p29 = distillation_protocol(29, 1e-5, 1.61e-40, Architecture::baseline);
    REQUIRE(p29.cycles_per_output == 96);
    REQUIRE(p29.qubits_per_factory == 84308);
    REQUIRE(p29.output_error < 1.0e-42);
    REQUIRE(p29.output_error > 1.0e-44);

    // output error never increases with distance
    double prev = 1.0;
    for (int d = 10; d <= 40; d += 2) {
        auto p = distillation_protocol(d, 1e-5, 1.0, Architecture::baseline);
        REQUIRE(p.output_error <= prev);
        prev = p.output_error;
    }
}

TEST_CASE("distillation escalates or reports unreachable targets") {
    // moderate target at small d: factory distance escalates beyond d
    auto p = distillation_protocol(9, 1e-5, 1e-25, Architecture::baseline);
    REQUIRE(p.d_factory > 9);
    REQUIRE(p.output_error <= 1e-25);
    REQUIRE_THROWS_AS(distillation_protocol(3, 1e-3, 1e-60, Architecture::baseline),
                      std::runtime_error);
}

TEST_CASE("single-level cascade pieces") {
    REQUIRE(fifteen_to_one_output_error(1e-4) == Catch::Approx(3.5e-11));
    REQUIRE(eight_to_ccz_output_error(1e-6) == Catch::Approx(2.8e-11));
}

TEST_CASE("required ccz error") {
    REQUIRE(required_ccz_error(3.09e44, 1e-3) == Catch::Approx(3.23e-48).epsilon(2e-3));
    REQUIRE(required_ccz_error(6.22e36, 1e-3) == Catch::Approx(1.61e-40).epsilon(2e-3));
    REQUIRE(required_ccz_error(1, 1) == 1.0);
}

TEST_CASE("baseline and active-volume accounts reproduce the worked case") {
    PhysicalAssumptions phys;
    circuit::GateParams g(32, 65.0);
    auto s = circuit::grover_search_cost(circuit::SieveLoop::gauss1, 400, g,
                                         8.70e23, 1, 1e-3);
    auto b = baseline_account(s.total, s.logical_qubits, phys);
    REQUIRE(b.code_distance == 29);
    REQUIRE(b.factories == Catch::Approx(3.60e23).epsilon(0.01));
    REQUIRE(b.physical_qubits == Catch::Approx(3.62e28).epsilon(0.01));
    REQUIRE(b.circuit_time_s / 3600.0 == Catch::Approx(4.85e6).epsilon(0.01));
    REQUIRE(b.reaction_limit_s / 3600.0 == Catch::Approx(8.37e5).epsilon(0.01));
    REQUIRE(b.final_time_s == std::max(b.circuit_time_s, b.reaction_limit_s));

    auto a = active_volume_account(s.total, s.logical_qubits, phys);
    REQUIRE(a.code_distance == 28);
    REQUIRE(a.physical_qubits == Catch::Approx(2.73e27).epsilon(0.01));
    REQUIRE(a.circuit_time_s / 3600.0 == Catch::Approx(3.88e4).epsilon(0.01));
    REQUIRE(a.final_time_s == a.reaction_limit_s);  // reaction limited
}

TEST_CASE("degenerate profiles account to zero") {
    PhysicalAssumptions phys;
    circuit::CostProfile zero;
    auto b = baseline_account(zero, 100.0, phys);
    REQUIRE(b.factories == 0);
    REQUIRE(b.reaction_limit_s == 0.0);
    REQUIRE(b.circuit_time_s == 0.0);
    auto a = active_volume_account(zero, 100.0, phys);
    REQUIRE(a.circuit_time_s == 0.0);
    REQUIRE(a.final_time_s == 0.0);
}

TEST_CASE("per-logical-qubit overhead is 2d^2 baseline vs d^2 active-volume") {
    PhysicalAssumptions phys;
    circuit::GateParams g(32, 65.0);
    // profile with zero Toffolis isolates the data-block footprint
    circuit::CostProfile p;
    p.reaction_depth = 1e6;
    p.active_volume = 1e8;
    const double n = 5000.0;
    auto b = baseline_account(p, n, phys);
    auto a = active_volume_account(p, n, phys);
    REQUIRE(b.physical_qubits == n * 2.0 * b.code_distance * b.code_distance);
    REQUIRE(a.physical_qubits == n * 1.0 * a.code_distance * a.code_distance);
}

TEST_CASE("final time is the maximum of circuit time and reaction limit") {
    PhysicalAssumptions phys;
    circuit::GateParams g(32, 65.0);
    for (double n : {1e6, 1e12, 1e20}) {
        auto s = circuit::grover_search_cost(circuit::SieveLoop::gauss1, 100, g, n,
                                             1, 1e-3);
        for (auto arch : {Architecture::baseline, Architecture::active_volume}) {
            auto r = account(arch, s.total, s.logical_qubits, phys);
            REQUIRE(r.final_time_s == std::max(r.circuit_time_s, r.reaction_limit_s));
        }
    }
}

TEST_CASE("physical assumptions are validated") {
    PhysicalAssumptions bad;
    bad.p_phy = 0.5;  // above threshold
    REQUIRE_THROWS_AS(bad.validate(), std::domain_error);
}
