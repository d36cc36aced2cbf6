#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "sievecost/sieve.hpp"

using namespace sievecost;
using namespace sievecost::sieve;
using lattice::LatticeBasis;
using lattice::LatticeVector;

namespace {

LatticeVector vec(std::vector<std::int64_t> c) {
    return LatticeVector::from_coords(c);
}

SieveConfig gauss_cfg() {
    SieveConfig cfg;
    cfg.alg = hashing::SieveAlg::gauss;
    return cfg;
}

SieveConfig nv_cfg() {
    SieveConfig cfg;
    cfg.alg = hashing::SieveAlg::nv;
    return cfg;
}

}  // namespace

TEST_CASE("reduce_pair hand cases") {
    auto r1 = reduce_pair(vec({4, 0}), vec({3, 0}));
    REQUIRE(r1.has_value());
    REQUIRE(r1->c == std::vector<std::int32_t>{1, 0});

    REQUIRE_FALSE(reduce_pair(vec({1, 0}), vec({0, 1})).has_value());

    auto r3 = reduce_pair(vec({5, 1}), vec({3, 2}));
    REQUIRE(r3.has_value());
    REQUIRE(r3->c == std::vector<std::int32_t>{2, -1});
    REQUIRE(r3->norm2 == 5);

    // orthogonal tie: no strict improvement possible
    REQUIRE_FALSE(reduce_pair(vec({2, 0}), vec({0, 1})).has_value());
}

TEST_CASE("nv sieve hand trace on a fixed initial list") {
    auto id2 = LatticeBasis::from_rows({{1, 0}, {0, 1}});
    std::vector<LatticeVector> initial = {vec({5, 0}), vec({3, 0}), vec({0, 4})};
    auto cfg = nv_cfg();
    auto rep = run_nv_sieve(id2, cfg, Rng(1), &initial);

    // step 0: R=5, gamma R=4.85.  (5,0) covers itself as a center; (3,0) sees
    // two reducers (0 and (5,0)) and passes through 0 unchanged; (0,4) sees 0.
    REQUIRE(rep.history.size() >= 3);
    REQUIRE(rep.history[0].loop_id == LoopId::nv);
    REQUIRE(rep.history[0].list_size == 1);
    REQUIRE(rep.history[0].solutions_found == 0);
    REQUIRE(rep.history[1].list_size == 2);
    REQUIRE(rep.history[1].solutions_found == 2);
    REQUIRE(rep.history[2].list_size == 2);
    REQUIRE(rep.history[2].solutions_found == 1);
    // the run keeps the best vector it ever saw
    REQUIRE(rep.shortest.norm2 == 9);
    REQUIRE(rep.found_nonzero);
}

TEST_CASE("nv sieve list shrinks by about the center-list size per step") {
    Rng rng(4);
    auto b = lattice::random_basis(20, 60, rng);
    auto cfg = nv_cfg();
    cfg.nv_initial_list = 4000;
    auto rep = run_nv_sieve(b, cfg, Rng(5));
    // reconstruct per-step |L| and |S| growth from the history
    std::uint64_t step = 0;
    std::size_t searched = 0, centers = 0, reduced = 0;
    std::vector<std::array<std::size_t, 3>> steps;  // (|L|, final |S|, reduced)
    for (const auto& e : rep.history) {
        if (e.step_index != step) {
            steps.push_back({searched, centers + 1, reduced});
            step = e.step_index;
            searched = centers = reduced = 0;
        }
        ++searched;
        if (e.solutions_found > 0)
            ++reduced;
        else
            ++centers;
    }
    steps.push_back({searched, centers + 1, reduced});
    REQUIRE(steps.size() >= 3);
    for (std::size_t j = 0; j + 1 < steps.size(); ++j) {
        // |L_{j+1}| = |L_j| - (vectors moved to S) - collisions
        REQUIRE(steps[j + 1][0] <= steps[j][0] - (steps[j][1] - 1));
        REQUIRE(steps[j + 1][0] + steps[j][1] - 1 + 2 >= steps[j][0]);  // few collisions
    }
}

TEST_CASE("gauss sieve is deterministic under a fixed seed") {
    Rng rng(11);
    auto b = lattice::random_basis(12, 30, rng);
    auto r1 = run_gauss_sieve(b, gauss_cfg(), Rng(77));
    auto r2 = run_gauss_sieve(b, gauss_cfg(), Rng(77));
    REQUIRE(r1.shortest.c == r2.shortest.c);
    REQUIRE(r1.history.size() == r2.history.size());
    REQUIRE(r1.iterations == r2.iterations);
    for (std::size_t i = 0; i < r1.history.size(); ++i) {
        REQUIRE(r1.history[i].list_size == r2.history[i].list_size);
        REQUIRE(r1.history[i].solutions_found == r2.history[i].solutions_found);
    }
}

TEST_CASE("gauss sieve terminal list is pairwise reduced") {
    Rng rng(21);
    auto b = lattice::random_basis(14, 40, rng);
    auto rep = run_gauss_sieve(b, gauss_cfg(), Rng(31));
    REQUIRE(rep.final_list.size() >= 4);
    Rng pick(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto i = pick.next_below(rep.final_list.size());
        const auto j = pick.next_below(rep.final_list.size());
        if (i == j) continue;
        const auto& v = rep.final_list[i];
        const auto& w = rep.final_list[j];
        const auto sum = lattice::add(v, w);
        const auto dif = lattice::sub(v, w);
        const auto mx = std::max(v.norm2, w.norm2);
        REQUIRE(std::min(sum.norm2, dif.norm2) >= mx);
    }
}

TEST_CASE("gauss sieve matches brute force at small dimensions") {
    int ok = 0, n = 0;
    for (int d : {6, 8, 10}) {
        for (int seed = 0; seed < 4; ++seed, ++n) {
            Rng rng(500 * d + seed);
            auto b = lattice::random_basis(d, 10, rng);
            auto oracle = lattice::brute_force_svp(b);
            auto rep = run_gauss_sieve(b, gauss_cfg(), Rng(900 * d + seed));
            if (rep.shortest.norm2 == oracle.norm2) ++ok;
        }
    }
    REQUIRE(ok == n);
}

TEST_CASE("nv sieve with restarts matches brute force at D=6") {
    int ok = 0;
    for (int seed = 0; seed < 5; ++seed) {
        Rng rng(60 + seed);
        auto b = lattice::random_basis(6, 10, rng);
        auto oracle = lattice::brute_force_svp(b);
        auto rep = nv_sieve_solve(b, nv_cfg(), Rng(6000 + seed));
        if (rep.shortest.norm2 == oracle.norm2) ++ok;
    }
    REQUIRE(ok >= 4);
}

TEST_CASE("hashed candidate sets equal a naive re-hash of the centers") {
    // construct the tables and an identically seeded standalone family; the
    // candidate union must match a brute-force recomputation
    const int d = 16;
    SieveConfig cfg = gauss_cfg();
    cfg.hash = hashing::HashFamily::angular;
    cfg.hash_k = 3;
    cfg.hash_t = 8;

    Rng table_rng(4242);
    Rng reference_rng(4242);
    detail::VecList pool(d);
    detail::Tables tables(cfg, d, table_rng);
    hashing::AngularHashSim reference(d, cfg.hash_k, cfg.hash_t, reference_rng);

    Rng data(17);
    std::vector<LatticeVector> vecs;
    for (int i = 0; i < 60; ++i) {
        std::vector<std::int64_t> c(d);
        for (auto& x : c) x = data.next_int(-50, 50);
        auto v = LatticeVector::from_coords(c);
        vecs.push_back(v);
        const std::size_t idx = pool.push(v);
        tables.insert(idx, pool.at(idx));
    }
    std::vector<std::int64_t> qc(d);
    for (auto& x : qc) x = data.next_int(-50, 50);
    auto q = LatticeVector::from_coords(qc);

    std::vector<std::uint32_t> cand;
    tables.candidates(q.c.data(), pool.size(), cand);
    std::vector<bool> expected(vecs.size(), false);
    for (int t = 0; t < cfg.hash_t; ++t) {
        const auto qk = reference.key(t, q.c.data());
        for (std::size_t i = 0; i < vecs.size(); ++i)
            if (reference.key(t, vecs[i].c.data()) == qk) expected[i] = true;
    }
    std::vector<bool> got(vecs.size(), false);
    for (auto idx : cand) got[idx] = true;
    REQUIRE(got == expected);
}

TEST_CASE("angular hashes of v and -v are complementary bits") {
    const int d = 24;
    Rng rng(88);
    hashing::AngularHashSim sim(d, 4, 6, rng);
    // distinct odd coordinates: no two-entry +-1 combination can vanish
    std::vector<std::int32_t> v(d), neg(d);
    for (int i = 0; i < d; ++i) {
        v[i] = 2 * i + 1;
        neg[i] = -v[i];
    }
    for (int t = 0; t < 6; ++t)
        for (int f = 0; f < 4; ++f)
            REQUIRE(sim.bit(t, f, v.data()) != sim.bit(t, f, neg.data()));
}

TEST_CASE("spherical filter membership matches its definition") {
    const int d = 12;
    Rng rng(7);
    hashing::SphericalLsfSim sim(d, 40, 0.3, rng);
    Rng data(8);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::int32_t> v(d);
        std::vector<double> vhat(d);
        double n2 = 0;
        for (auto& x : v) {
            x = static_cast<std::int32_t>(data.next_int(-40, 40));
        }
        for (int i = 0; i < d; ++i) n2 += double(v[i]) * v[i];
        if (n2 == 0) continue;
        for (int i = 0; i < d; ++i) vhat[i] = v[i] / std::sqrt(n2);
        std::vector<std::uint32_t> rel;
        sim.relevant(vhat.data(), rel);
        // every reported filter must really pass the threshold
        Rng ref_rng(7);
        hashing::SphericalLsfSim ref(d, 40, 0.3, ref_rng);
        std::vector<std::uint32_t> rel2;
        ref.relevant(vhat.data(), rel2);
        REQUIRE(rel == rel2);
        REQUIRE(rel.size() <= 40);
    }
}

TEST_CASE("gauss sieve with LSH/LSF variants still solves SVP") {
    for (auto fam : {hashing::HashFamily::angular, hashing::HashFamily::spherical_lsh,
                     hashing::HashFamily::spherical_lsf}) {
        int ok = 0;
        for (int seed = 0; seed < 3; ++seed) {
            Rng rng(300 + seed);
            auto b = lattice::random_basis(10, 10, rng);
            auto oracle = lattice::brute_force_svp(b);
            SieveConfig cfg = gauss_cfg();
            cfg.hash = fam;
            cfg.hash_k = fam == hashing::HashFamily::spherical_lsf ? 1 : 2;
            cfg.hash_t = fam == hashing::HashFamily::spherical_lsf ? 60 : 30;
            cfg.hash_alpha = 0.25;
            auto rep = run_gauss_sieve(b, cfg, Rng(3000 + seed));
            if (rep.shortest.norm2 == oracle.norm2) ++ok;
        }
        INFO(hashing::family_name(fam));
        REQUIRE(ok >= 2);
    }
}

TEST_CASE("history export and import round trip") {
    std::vector<SearchEvent> events;
    REQUIRE([&] {
        std::ostringstream out;
        export_history(events, out);
        return out.str();
    }() == "step_index,loop_id,list_size,solutions_found\n");

    Rng rng(15);
    auto b = lattice::random_basis(10, 20, rng);
    auto rep = run_gauss_sieve(b, gauss_cfg(), Rng(16));
    std::ostringstream out;
    export_history(rep.history, out);
    std::istringstream in(out.str());
    auto back = import_history(in);
    REQUIRE(back.size() == rep.history.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        REQUIRE(back[i].step_index == rep.history[i].step_index);
        REQUIRE(back[i].loop_id == rep.history[i].loop_id);
        REQUIRE(back[i].list_size == rep.history[i].list_size);
        REQUIRE(back[i].solutions_found == rep.history[i].solutions_found);
    }
    // row count equals the number of searches
    std::size_t rows = 0;
    std::istringstream recount(out.str());
    std::string line;
    std::getline(recount, line);  // header
    while (std::getline(recount, line))
        if (!line.empty()) ++rows;
    REQUIRE(rows == rep.history.size());
}
