#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sievecost/lattice.hpp"

using namespace sievecost;
using namespace sievecost::lattice;

namespace {

// independent check that v is a lattice member: solve B^T x = v in doubles,
// round, and verify the rounded coefficients reproduce v exactly
bool is_lattice_member(const LatticeBasis& b, const LatticeVector& v) {
    const int d = b.d;
    std::vector<std::vector<double>> m(d, std::vector<double>(d + 1, 0.0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[i][j] = static_cast<double>(b.rows[j][i]);
        m[i][d] = static_cast<double>(v.c[i]);
    }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (std::abs(m[col][col]) < 1e-12) return false;
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c <= d; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::vector<std::int64_t> lambda(d);
    for (int i = 0; i < d; ++i) lambda[i] = std::llround(m[i][d] / m[i][i]);
    for (int i = 0; i < d; ++i) {
        std::int64_t acc = 0;
        for (int j = 0; j < d; ++j) acc += lambda[j] * b.rows[j][i];
        if (acc != v.c[i]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("gram-schmidt on hand cases") {
    auto id4 = LatticeBasis::from_rows({{1, 0, 0, 0},
                                        {0, 1, 0, 0},
                                        {0, 0, 1, 0},
                                        {0, 0, 0, 1}});
    auto gs = gram_schmidt(id4);
    for (int i = 0; i < 4; ++i) {
        REQUIRE(gs.bstar_norm2[i] == Catch::Approx(1.0));
        for (int j = 0; j < i; ++j) REQUIRE(gs.mu[i][j] == Catch::Approx(0.0).margin(1e-15));
    }

    auto b = LatticeBasis::from_rows({{2, 0}, {1, 2}});
    auto g = gram_schmidt(b);
    REQUIRE(g.mu[1][0] == Catch::Approx(0.5));
    REQUIRE(g.bstar[1][0] == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(g.bstar[1][1] == Catch::Approx(2.0));
}

TEST_CASE("gram-schmidt round trip reconstructs the basis") {
    Rng rng(101);
    auto b = random_basis(10, 50, rng);
    auto gs = gram_schmidt(b);
    for (int i = 0; i < 10; ++i) {
        for (int k = 0; k < 10; ++k) {
            double acc = 0.0;
            for (int j = 0; j <= i; ++j) acc += gs.mu[i][j] * gs.bstar[j][k];
            REQUIRE(acc == Catch::Approx(static_cast<double>(b.rows[i][k])).margin(1e-9));
        }
    }
}

TEST_CASE("gram-schmidt rejects rank-deficient bases") {
    auto b = LatticeBasis::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
    REQUIRE_THROWS_AS(gram_schmidt(b), std::runtime_error);
}

TEST_CASE("klein sampler statistics on Z^2") {
    auto id2 = LatticeBasis::from_rows({{1, 0}, {0, 1}});
    KleinSampler sampler(id2, GaussianParam(20.0));
    Rng rng(7);
    const int n = 100000;
    double sum[2] = {0, 0}, sq[2] = {0, 0};
    for (int i = 0; i < n; ++i) {
        auto v = sampler.sample(rng);
        for (int k = 0; k < 2; ++k) {
            sum[k] += v.c[k];
            sq[k] += static_cast<double>(v.c[k]) * v.c[k];
        }
    }
    // per-coordinate sigma ~ s / sqrt(2 pi); mean within 3 sigma / sqrt(n)
    const double sigma = 20.0 / std::sqrt(2.0 * M_PI);
    for (int k = 0; k < 2; ++k) {
        REQUIRE(std::abs(sum[k] / n) < 3.0 * sigma / std::sqrt(double(n)));
        REQUIRE(sq[k] / n == Catch::Approx(sigma * sigma).epsilon(0.05));
    }
}

TEST_CASE("klein sampler is deterministic and produces lattice members") {
    Rng rng(55);
    auto b = random_basis(40, 1000, rng);
    KleinSampler sampler(b);
    {
        Rng r1(99), r2(99);
        auto v1 = sampler.sample(r1);
        auto v2 = sampler.sample(r2);
        REQUIRE(v1.c == v2.c);
    }
    Rng rs(123);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::int64_t> coeffs;
        auto v = sampler.sample(rs, &coeffs);
        // exact reconstruction from the integer coefficients
        for (int k = 0; k < b.d; ++k) {
            std::int64_t acc = 0;
            for (int j = 0; j < b.d; ++j) acc += coeffs[j] * b.rows[j][k];
            REQUIRE(acc == v.c[k]);
        }
        REQUIRE(is_lattice_member(b, v));
    }
}

TEST_CASE("klein sampler rejects widths below the Gram-Schmidt scale") {
    auto id2 = LatticeBasis::from_rows({{100, 0}, {0, 100}});
    REQUIRE_THROWS_AS(KleinSampler(id2, GaussianParam(5.0)), std::domain_error);
}

TEST_CASE("kappa overflow surfaces as an error") {
    auto big = LatticeBasis::from_rows({{1000, 0}, {0, 1000}});
    KleinSampler sampler(big, GaussianParam(20000.0), 8);
    Rng rng(3);
    REQUIRE_THROWS_AS(
        [&] {
            for (int i = 0; i < 100; ++i) sampler.sample(rng);
        }(),
        std::overflow_error);
}

TEST_CASE("brute force svp on hand cases") {
    auto id5 = LatticeBasis::from_rows({{1, 0, 0, 0, 0},
                                        {0, 1, 0, 0, 0},
                                        {0, 0, 1, 0, 0},
                                        {0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 1}});
    REQUIRE(brute_force_svp(id5).norm2 == 1);

    auto b = LatticeBasis::from_rows({{3, 1}, {1, 3}});
    REQUIRE(brute_force_svp(b).norm2 == 8);  // b1 - b2 = (2, -2)

    // scaling the basis by 3 scales the squared minimum by 9
    auto b3 = LatticeBasis::from_rows({{9, 3}, {3, 9}});
    REQUIRE(brute_force_svp(b3).norm2 == 72);

    auto b13 = LatticeBasis::from_rows(
        std::vector<std::vector<std::int64_t>>(13, std::vector<std::int64_t>(13, 0)));
    REQUIRE_THROWS_AS(brute_force_svp(b13), std::invalid_argument);
}

TEST_CASE("brute force svp output never exceeds the shortest basis row") {
    Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        auto b = random_basis(8, 12, rng);
        auto v = brute_force_svp(b);
        std::int64_t minrow = INT64_MAX;
        for (const auto& row : b.rows) {
            std::int64_t n2 = 0;
            for (auto x : row) n2 += x * x;
            minrow = std::min(minrow, n2);
        }
        REQUIRE(v.norm2 >= 1);
        REQUIRE(v.norm2 <= minrow);
        REQUIRE(is_lattice_member(b, v));
    }
}

TEST_CASE("basis file round trip") {
    Rng rng(9);
    auto b = random_basis(6, 200, rng);
    const std::string path = "test_basis_roundtrip.txt";
    save_basis(b, path);
    auto b2 = load_basis(path);
    REQUIRE(b2.d == b.d);
    REQUIRE(b2.rows == b.rows);
    std::remove(path.c_str());
}

TEST_CASE("lattice vector arithmetic keeps the norm cache consistent") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::int64_t> a(6), b(6);
        for (auto& x : a) x = rng.next_int(-1000, 1000);
        for (auto& x : b) x = rng.next_int(-1000, 1000);
        auto va = LatticeVector::from_coords(a);
        auto vb = LatticeVector::from_coords(b);
        auto sum = add(va, vb);
        auto dif = sub(va, vb);
        std::int64_t n2s = 0, n2d = 0;
        for (int k = 0; k < 6; ++k) {
            n2s += (a[k] + b[k]) * (a[k] + b[k]);
            n2d += (a[k] - b[k]) * (a[k] - b[k]);
        }
        REQUIRE(sum.norm2 == n2s);
        REQUIRE(dif.norm2 == n2d);
        REQUIRE(sum.norm2 + dif.norm2 == 2 * (va.norm2 + vb.norm2));
    }
    REQUIRE_THROWS_AS(LatticeVector::from_coords({1, std::int64_t(1) << 40}),
                      std::overflow_error);
}
