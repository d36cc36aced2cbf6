#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sievecost/circuit_cost.hpp"

using namespace sievecost;
using namespace sievecost::circuit;

TEST_CASE("arithmetic gadget table at kappa = 32") {
    GateParams g(32, 65.0);
    auto a = adder_cost(g);
    REQUIRE(a.toffoli == 31);
    REQUIRE(a.toffoli_width == 1);
    REQUIRE(a.reaction_depth == 62);
    REQUIRE(a.qubit_width == 96);
    REQUIRE(a.active_volume == 3231);

    auto ca = controlled_adder_cost(g);
    REQUIRE(ca.toffoli == 63);
    REQUIRE(ca.reaction_depth == 64);
    REQUIRE(ca.qubit_width == 129);
    REQUIRE(ca.active_volume == 31 * 116 + 19);

    auto m = multiplier_cost(g);
    REQUIRE(m.toffoli == 993);
    REQUIRE(m.toffoli_width == 528);
    REQUIRE(m.reaction_depth == 250);
    REQUIRE(m.qubit_width == 2080);
    REQUIRE(m.active_volume == 28 * 1024 - 42 * 32 + 28 + 993 * 65);

    auto h = hybrid_multiplier_cost(g);
    REQUIRE(h.toffoli == 0.5 * 1024 - 1.5 * 32 + 1);
    REQUIRE(h.reaction_depth == 248);
}

TEST_CASE("multiplier boundary cases") {
    GateParams g2(2, 65.0);
    REQUIRE(multiplier_cost(g2).toffoli == 3);
    // the hybrid formula hits zero at kappa=2 and is clamped there
    REQUIRE(hybrid_multiplier_cost(g2).toffoli == 0);
}

TEST_CASE("bucket-brigade qram resources") {
    GateParams g(32, 65.0);
    auto q = qram_cost(1024, g);
    REQUIRE(q.toffoli == 1022);
    REQUIRE(q.reaction_depth == 18);
    REQUIRE(q.toffoli_width == 512);
    REQUIRE(q.active_volume == 141312);
    REQUIRE(qram_cost(2, g).toffoli == 0);
    REQUIRE_THROWS_AS(qram_cost(1, g), std::domain_error);
    // N = |S| at D=400: 138 N active volume per call
    REQUIRE(qram_cost(2.15e29, g).active_volume ==
            Catch::Approx(138.0 * 2.15e29).epsilon(1e-12));
}

TEST_CASE("diffusion operator resources") {
    GateParams g(32, 65.0);
    auto d10 = diffusion_cost(10, g);
    REQUIRE(d10.toffoli == 9);
    REQUIRE(d10.reaction_depth == 8);
    REQUIRE(d10.active_volume == 747);
    REQUIRE(diffusion_cost(2, g).toffoli == 1);
    REQUIRE(diffusion_cost(80, g).reaction_depth == 14);
}

TEST_CASE("multi-controlled Toffoli decomposition") {
    REQUIRE(mct_cost(2).toffoli == 1);
    REQUIRE(mct_cost(3).toffoli == 2);
    REQUIRE(mct_cost(3).ancillae == 1);
    REQUIRE(mct_cost(80).toffoli == 79);
    REQUIRE_THROWS_AS(mct_cost(1), std::domain_error);
}

TEST_CASE("grover iteration counts") {
    REQUIRE(grover_iterations(1024, 1, 1e-3, GroverMode::expected_with_solution) == 100);
    REQUIRE(grover_iterations(1024, 0, 1e-3, GroverMode::no_solution) == 1852);
    REQUIRE(grover_iterations(4, 1, 1e-3, GroverMode::known_m) == 1);
    // unknown-M regime requires M < N/4
    REQUIRE_THROWS_AS(grover_iterations(16, 5, 1e-3, GroverMode::expected_with_solution),
                      std::domain_error);
}

TEST_CASE("cost profile composition laws") {
    GateParams g(32, 65.0);
    const CostProfile parts[3] = {adder_cost(g), multiplier_cost(g),
                                  qram_cost(4096, g)};
    CostProfile ab = parts[0] + parts[1];
    CostProfile ba = parts[1] + parts[0];
    REQUIRE(ab.toffoli == ba.toffoli);
    REQUIRE(ab.active_volume == ba.active_volume);
    REQUIRE(ab.reaction_depth == parts[0].reaction_depth + parts[1].reaction_depth);
    CostProfile left = (parts[0] + parts[1]) + parts[2];
    CostProfile right = parts[0] + (parts[1] + parts[2]);
    REQUIRE(left.toffoli == right.toffoli);
    REQUIRE(left.active_volume == right.active_volume);
}

TEST_CASE("every gadget carries at least one CCZ of active volume per Toffoli") {
    for (double c : {30.0, 65.0, 120.0}) {
        for (int kappa : {4, 8, 16, 32, 64}) {
            GateParams g(kappa, c);
            for (const CostProfile& p :
                 {adder_cost(g), controlled_adder_cost(g), multiplier_cost(g),
                  hybrid_multiplier_cost(g), qram_cost(512, g), diffusion_cost(24, g)}) {
                REQUIRE(p.active_volume >= p.toffoli * c);
                REQUIRE(p.reaction_depth <= 2.0 * p.toffoli);
            }
        }
    }
}

TEST_CASE("oracle composition matches the worked D=400 expressions") {
    GateParams g(32, 65.0);
    // GaussSieve loop 1 per-iteration reaction depth: 158 + 620 + 250 + 14
    auto o1 = oracle_cost(SieveLoop::gauss1, 400, g, 8.70e23);
    REQUIRE(o1.reaction_depth == 1042);
    REQUIRE(o1.cnot_extra == 2 * 400 * 32 + 4);

    // NVSieve per-iteration pieces at |S| = 2.15e29
    auto onv = oracle_cost(SieveLoop::nv, 400, g, 2.15e29);
    REQUIRE(onv.reaction_depth == 194 + 250 + 682 + 14);
    // loop 1 is strictly heavier than loop 2
    for (double n : {1e4, 1e9, 1e20}) {
        auto l1 = oracle_cost(SieveLoop::gauss1, 128, g, n);
        auto l2 = oracle_cost(SieveLoop::gauss2, 128, g, n);
        REQUIRE(l1.toffoli > l2.toffoli);
        REQUIRE(l1.active_volume > l2.active_volume);
    }
}

TEST_CASE("grover search cost anchors") {
    GateParams g(32, 65.0);
    auto nv = grover_search_cost(SieveLoop::nv, 400, g, 2.15e29, 1, 1e-3);
    REQUIRE(nv.total.toffoli == Catch::Approx(3.09e44).epsilon(0.005));
    REQUIRE(nv.logical_qubits == Catch::Approx(8.61e29).epsilon(0.005));
    REQUIRE(nv.total.active_volume == Catch::Approx(4.27e46).epsilon(0.005));
    REQUIRE(nv.total.reaction_depth == Catch::Approx(1.64e18).epsilon(0.005));
    REQUIRE(nv.total.toffoli_width == Catch::Approx(1.08e29).epsilon(0.005));

    auto g1 = grover_search_cost(SieveLoop::gauss1, 400, g, 8.70e23, 1, 1e-3);
    REQUIRE(g1.total.toffoli == Catch::Approx(2.51e36).epsilon(0.005));
    REQUIRE(g1.logical_qubits == Catch::Approx(3.48e24).epsilon(0.005));
    REQUIRE(g1.total.active_volume == Catch::Approx(3.47e38).epsilon(0.005));
    REQUIRE(g1.total.reaction_depth == Catch::Approx(3.01e15).epsilon(0.005));

    // degenerate space: a single sane iteration
    auto tiny = grover_search_cost(SieveLoop::gauss1, 16, g, 2, 1, 1e-3);
    REQUIRE(tiny.iterations == 1);
    REQUIRE(tiny.total.toffoli > 0);
    // below two entries there is nothing to search
    auto none = grover_search_cost(SieveLoop::gauss1, 16, g, 1, 1, 1e-3);
    REQUIRE(none.iterations == 0);
    REQUIRE(none.total.toffoli == 0);
}

TEST_CASE("disabling qram zeroes exactly the memory contributions") {
    GateParams g(32, 65.0);
    const double n = 1e12;
    auto with = oracle_cost(SieveLoop::gauss1, 200, g, n, true);
    auto without = oracle_cost(SieveLoop::gauss1, 200, g, n, false);
    auto qram = qram_cost(n, g);
    REQUIRE(with.toffoli - without.toffoli == qram.toffoli);
    REQUIRE(with.active_volume - without.active_volume ==
            Catch::Approx(qram.active_volume));
    REQUIRE(with.reaction_depth - without.reaction_depth == qram.reaction_depth);
    REQUIRE(with.qubit_width - without.qubit_width ==
            Catch::Approx(2 * n + 200 * 32 - 1));
    // idempotent
    auto without2 = oracle_cost(SieveLoop::gauss1, 200, g, n, false);
    REQUIRE(without.toffoli == without2.toffoli);
}
