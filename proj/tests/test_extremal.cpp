#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qr/clique.hpp"
#include "qr/ramsey.hpp"

using namespace qr;

namespace {

// Exhaustive max-clique oracle for q <= 23 via subset enumeration.
std::uint32_t brute_omega(const GraphInstance& G) {
    std::uint32_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << G.n); ++mask) {
        std::vector<std::uint32_t> verts;
        for (std::uint32_t v = 0; v < G.n; ++v)
            if (mask >> v & 1) verts.push_back(v);
        if (verts.size() <= best) continue;
        bool clique = true;
        for (std::size_t i = 0; i < verts.size() && clique; ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (!G.adj(verts[i], verts[j])) {
                    clique = false;
                    break;
                }
        if (clique) best = static_cast<std::uint32_t>(verts.size());
    }
    return best;
}

}  // namespace

TEST_CASE("max_clique on known instances") {
    Field F9 = Field::make(3, 2);
    CliqueResult r9 = max_clique(paley(F9));
    CHECK(r9.omega == 3);
    CHECK(r9.exact);

    Field F5 = Field::make(5, 1);
    CliqueResult d5 = max_clique(diophantine(F5));
    CHECK(d5.omega == 3);

    Field F25 = Field::make(5, 2);
    CHECK(max_clique(paley(F25)).omega == 5);
    Field F49 = Field::make(7, 2);
    CHECK(max_clique(paley(F49)).omega == 7);
}

TEST_CASE("max_clique matches the exhaustive oracle for q <= 23") {
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}, {3, 2}}) {
        Field F = Field::make(p, m);
        std::vector<GraphInstance> graphs;
        graphs.push_back(diophantine(F));
        graphs.push_back(paley_sum(F));
        if (F.q() % 4 == 1) graphs.push_back(paley(F));
        graphs.push_back(gen_dio(F, 2, 1));
        for (const auto& G : graphs) {
            CliqueResult r = max_clique(G);
            REQUIRE(r.exact);
            REQUIRE(r.omega == brute_omega(G));
            // witness is a clique of the right size
            REQUIRE(r.witness.size() == r.omega);
        }
    }
}

TEST_CASE("independence number") {
    Field F13 = Field::make(13, 1);
    GraphInstance P = paley(F13);
    CHECK(independence_number(P).omega == 3);
    CHECK(max_clique(P).omega == 3);  // self-complementary

    Field F5 = Field::make(5, 1);
    GraphInstance K5 = build_graph(F5, parse_poly("(x-y)^2", F5), true);
    CHECK(independence_number(K5).omega == 1);

    Field F7 = Field::make(7, 1);
    GraphInstance E7 = build_graph(F7, parse_poly("3*(x-y)^2", F7), true);  // 3 non-square
    CHECK(E7.edges == 0);
    CHECK(independence_number(E7).omega == 7);
}

TEST_CASE("omega equals alpha for Paley graphs") {
    for (std::uint64_t q : {13, 17, 29, 101}) {
        Field F = Field::make(q, 1);
        GraphInstance P = paley(F);
        CHECK(max_clique(P).omega == independence_number(P).omega);
    }
}

TEST_CASE("node budget aborts gracefully") {
    Field F101 = Field::make(101, 1);
    GraphInstance P = paley(F101);
    CliqueResult full = max_clique(P);
    CliqueResult cut = max_clique(P, 2);
    CHECK_FALSE(cut.exact);
    CHECK(cut.omega <= full.omega);
    CHECK(full.exact);
}

TEST_CASE("rho") {
    CHECK(rho(0.0) == 0.0);
    CHECK(rho(1.0) == doctest::Approx(-0.14 * std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(rho(1.5), doctest::Contains("DomainError"), Error);
    CHECK_THROWS_AS(rho(-0.1), Error);
}

TEST_CASE("rate_function value and monotonicity") {
    CHECK(rate_function(0.5) == doctest::Approx(0.667396).epsilon(1e-5));
    double prev = rate_function(0.001);
    for (double x = 0.002; x < 0.5495; x += 0.001) {
        double cur = rate_function(x);
        REQUIRE(cur > prev);
        prev = cur;
    }
    CHECK(rate_function(1e-9) < 1e-6);
    CHECK_THROWS_AS(rate_function(0.0), Error);
    CHECK_THROWS_AS(rate_function(1.0), Error);
}

TEST_CASE("solve_ell golden values") {
    BoundReport b34 = solve_ell(0.75);
    CHECK(b34.ell == doctest::Approx(0.3031).epsilon(0.0005 / 0.3031));
    CHECK(b34.base == doctest::Approx(3.501).epsilon(0.005 / 3.501));
    CHECK(b34.residual <= 1e-9);

    BoundReport b12 = solve_ell(0.5);
    CHECK(b12.ell == doctest::Approx(0.1436).epsilon(0.0005 / 0.1436));
    CHECK(b12.base == doctest::Approx(2.936).epsilon(0.005 / 2.936));
    CHECK(b12.residual <= 1e-9);

    CHECK_THROWS_AS(solve_ell(0.4), Error);
    CHECK_THROWS_AS(solve_ell(1.0), Error);
}

TEST_CASE("eq:ell self-consistency over the theta grid") {
    for (double theta = 0.50; theta < 0.96; theta += 0.05) {
        BoundReport b = solve_ell(theta);
        REQUIRE(std::fabs(ell_equation_lhs(b.ell, theta) - theta) <= 1e-9);
        REQUIRE(b.ell > 0);
        REQUIRE(b.ell < 1);
    }
}

TEST_CASE("ramsey_upper") {
    RamseyUpper r11 = ramsey_upper(1, 1);
    CHECK(r11.magnitude == doctest::Approx(2 * std::exp(rho(1.0))).epsilon(1e-9));
    CHECK(r11.magnitude == doctest::Approx(1.900).epsilon(0.001));

    RamseyUpper r21 = ramsey_upper(2, 1);
    CHECK(r21.magnitude == doctest::Approx(3 * std::exp(2 * rho(0.5))).epsilon(1e-9));
    CHECK(r21.magnitude == doctest::Approx(2.633).epsilon(0.001));

    // monotone in k for fixed l on a grid
    for (unsigned l = 1; l <= 3; ++l) {
        double prev = ramsey_upper(l, l).log_value;
        for (unsigned k = l + 1; k <= 30; ++k) {
            double cur = ramsey_upper(k, l).log_value;
            REQUIRE(cur >= prev);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(ramsey_upper(2, 3), Error);
    CHECK_THROWS_AS(ramsey_upper(2, 0), Error);
}

TEST_CASE("lower_bound_plan") {
    BoundReport b = lower_bound_plan(101, 0.5);
    CHECK(b.m == 1);  // floor(log2(sqrt(101)/5 + 0.8)) = floor(log2 2.810)
    CHECK(b.r == static_cast<int>(std::floor(b.ell * std::log2(101.0))));
    CHECK(b.s == b.r + b.m);
    CHECK(b.per_side_asymptotic == doctest::Approx(0.6436 * std::log2(101.0)).epsilon(1e-3));

    BoundReport b3 = lower_bound_plan(3, 0.5);
    CHECK(b3.m >= 0);
    CHECK_THROWS_AS(lower_bound_plan(2, 0.5), Error);
}

TEST_CASE("homogeneous transfer") {
    Field F13 = Field::make(13, 1);
    GraphInstance P = paley(F13);
    HomogeneousTransfer t = verify_homogeneous_transfer(P, parse_poly("x-y", F13), F13, 2);
    CHECK(t.clique_verified);
    CHECK(t.omega == 3);
    CHECK(t.alpha == 3);

    GraphInstance D = diophantine(F13);
    CHECK_THROWS_WITH_AS(verify_homogeneous_transfer(D, parse_poly("x*y+1", F13), F13, 2),
                         doctest::Contains("NotHomogeneousOdd"), Error);
    CHECK_THROWS_WITH_AS(verify_homogeneous_transfer(P, parse_poly("x-y", F13), F13, 4),
                         doctest::Contains("RIsSquare"), Error);
}

TEST_CASE("average-clique mechanism at q = 13") {
    Field F13 = Field::make(13, 1);
    elem r = 2;  // non-square mod 13
    int checked = 0;
    for (elem a = 1; a < 13; ++a)
        for (elem b = 1; b < 13; ++b) {
            GraphInstance Gf = gen_dio(F13, a, b);
            GraphInstance Grf = gen_dio(F13, F13.mul(r, a), F13.mul(r, b));
            REQUIRE(max_clique(Grf).omega >= independence_number(Gf).omega);
            ++checked;
        }
    CHECK(checked == 144);
}
