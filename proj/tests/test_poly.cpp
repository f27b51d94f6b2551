#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qr/poly.hpp"

using namespace qr;

namespace {

BivarPoly random_biv(const Field& F, int maxdeg, std::mt19937_64& rng) {
    std::map<std::pair<int, int>, elem> terms;
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<std::uint64_t> dc(0, F.q() - 1);
    int nterms = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < nterms; ++k) {
        int i = dd(rng), j = dd(rng);
        if (i + j > maxdeg) continue;
        terms[{i, j}] = static_cast<elem>(dc(rng));
    }
    return biv_from_terms(F, std::move(terms));
}

UniPoly random_uni(const Field& F, int deg, std::mt19937_64& rng) {
    UniPoly g;
    g.c.resize(deg + 1);
    for (int i = 0; i <= deg; ++i) g.c[i] = static_cast<elem>(rng() % F.q());
    while (g.c.back() == 0) g.c.back() = static_cast<elem>(rng() % F.q());
    return uni_trim(g);
}

}  // namespace

TEST_CASE("parser basics") {
    Field F5 = Field::make(5, 1);
    BivarPoly f = parse_poly("x*y+1", F5);
    CHECK(f.t == std::map<std::pair<int, int>, elem>{{{1, 1}, 1}, {{0, 0}, 1}});

    Field F7 = Field::make(7, 1);
    BivarPoly g = parse_poly("(x-y)^2", F7);
    CHECK(g.t == std::map<std::pair<int, int>, elem>{{{2, 0}, 1}, {{1, 1}, 5}, {{0, 2}, 1}});

    CHECK_THROWS_WITH_AS(parse_poly("x^", F5), doctest::Contains("offset 2"), Error);
    CHECK_THROWS_WITH_AS(parse_poly("t+1", F5), doctest::Contains("GeneratorInPrimeField"), Error);
    Field F9 = Field::make(3, 2);
    BivarPoly h = parse_poly("t*x+1", F9);
    CHECK(h.t == std::map<std::pair<int, int>, elem>{{{1, 0}, 3}, {{0, 0}, 1}});
    CHECK_THROWS_AS(parse_poly("x+*y", F5), Error);
    CHECK_THROWS_AS(parse_poly("", F5), Error);
    CHECK_THROWS_AS(parse_poly("x^999999", F5), Error);
}

TEST_CASE("parser round trip through canonical rendering") {
    std::mt19937_64 rng(7);
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{13, 1}, {3, 2}, {7, 2}}) {
        Field F = Field::make(p, m);
        for (int it = 0; it < 100; ++it) {
            BivarPoly f = random_biv(F, 4, rng);
            std::string s = render_poly(f, F);
            BivarPoly g = parse_poly(s, F);
            REQUIRE(f == g);
            REQUIRE(render_poly(g, F) == s);
        }
    }
}

TEST_CASE("evaluation and specialization") {
    Field F5 = Field::make(5, 1);
    BivarPoly f = parse_poly("x*y+1", F5);
    CHECK(biv_eval(F5, f, 2, 4) == 4);

    Field F13 = Field::make(13, 1);
    CHECK(biv_eval(F13, parse_poly("x-y", F13), 3, 3) == 0);

    Field F7 = Field::make(7, 1);
    CHECK(biv_eval(F7, parse_poly("(x-y)^2", F7), 1, 4) == 2);

    CHECK(specialize_y(F5, f, 0) == uni_const(1));
    BivarPoly g = parse_poly("x^2*y+x^2", F7);
    CHECK(specialize_y(F7, g, 6).is_zero());  // u = -1
    BivarPoly h = parse_poly("x+y", F5);
    UniPoly x3 = specialize_y(F5, h, 3);
    CHECK(x3.c == std::vector<elem>{3, 1});
    // specialize_x(f, u) = f(u, y)
    UniPoly fy = specialize_x(F5, f, 2);
    CHECK(fy.c == std::vector<elem>{1, 2});  // 2y + 1
}

TEST_CASE("squarefree decomposition") {
    Field F7 = Field::make(7, 1);
    // (x+1)^2 (x+2)
    UniPoly a = uni_mul(F7, uni_mul(F7, UniPoly{{1, 1}}, UniPoly{{1, 1}}), UniPoly{{2, 1}});
    auto d = uni_squarefree_decomposition(F7, a);
    REQUIRE(d.factors.size() == 2);
    CHECK(d.unit == 1);
    bool seen1 = false, seen2 = false;
    for (const auto& fm : d.factors) {
        if (fm.factor.c == std::vector<elem>{1, 1}) {
            CHECK(fm.multiplicity == 2);
            seen1 = true;
        }
        if (fm.factor.c == std::vector<elem>{2, 1}) {
            CHECK(fm.multiplicity == 1);
            seen2 = true;
        }
    }
    CHECK(seen1);
    CHECK(seen2);

    Field F3 = Field::make(3, 1);
    UniPoly x3{{0, 0, 0, 1}};
    auto d3 = uni_squarefree_decomposition(F3, x3);
    REQUIRE(d3.factors.size() == 1);
    CHECK(d3.factors[0].factor.c == std::vector<elem>{0, 1});
    CHECK(d3.factors[0].multiplicity == 3);

    auto dc = uni_squarefree_decomposition(F7, uni_const(4));
    CHECK(dc.factors.empty());
    CHECK(dc.unit == 4);

    CHECK_THROWS_WITH_AS(uni_squarefree_decomposition(F7, UniPoly{}),
                         doctest::Contains("ZeroPolynomial"), Error);
}

TEST_CASE("squarefree decomposition reconstructs the input") {
    std::mt19937_64 rng(11);
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {7, 1}, {3, 2}}) {
        Field F = Field::make(p, m);
        for (int it = 0; it < 200; ++it) {
            UniPoly g = random_uni(F, 1 + static_cast<int>(rng() % 8), rng);
            auto d = uni_squarefree_decomposition(F, g);
            UniPoly prod = uni_const(d.unit);
            for (const auto& fm : d.factors) {
                REQUIRE(fm.factor.lead() == 1);
                prod = uni_mul(F, prod, uni_pow(F, fm.factor, fm.multiplicity));
            }
            REQUIRE(prod == g);
        }
    }
}

TEST_CASE("is_const_times_square_uni") {
    Field F7 = Field::make(7, 1);
    UniPoly sq = uni_mul(F7, UniPoly{{1, 1}}, UniPoly{{1, 1}});
    CHECK(is_const_times_square_uni(F7, uni_scale(F7, sq, 3)));
    UniPoly notsq = uni_mul(F7, UniPoly{{0, 1}}, sq);
    CHECK_FALSE(is_const_times_square_uni(F7, notsq));
    CHECK(is_const_times_square_uni(F7, uni_const(5)));
}

TEST_CASE("square-test soundness, randomized") {
    std::mt19937_64 rng(13);
    Field F13 = Field::make(13, 1);
    int done = 0;
    while (done < 500) {
        UniPoly g = random_uni(F13, 1 + static_cast<int>(rng() % 3), rng);
        if (g.degree() < 1) continue;
        elem c = 1 + static_cast<elem>(rng() % 12);
        UniPoly cg2 = uni_scale(F13, uni_mul(F13, g, g), c);
        REQUIRE(is_const_times_square_uni(F13, cg2));
        // multiply by a linear factor not dividing g
        elem r = static_cast<elem>(rng() % 13);
        if (uni_eval(F13, g, F13.neg(r)) == 0) continue;
        UniPoly ell{{r, 1}};
        REQUIRE_FALSE(is_const_times_square_uni(F13, uni_mul(F13, cg2, ell)));
        ++done;
    }
}

TEST_CASE("primitive kernel decomposition") {
    Field F13 = Field::make(13, 1);
    {
        auto k = primitive_kernel(F13, parse_poly("x^2*y+x^2", F13));
        CHECK(k.Fx.c == std::vector<elem>{0, 0, 1});
        CHECK(k.Gy.c == std::vector<elem>{1, 1});
        CHECK(k.H.t == std::map<std::pair<int, int>, elem>{{{0, 0}, 1}});
        CHECK(k.unit == 1);
    }
    {
        auto k = primitive_kernel(F13, parse_poly("x*y+1", F13));
        CHECK(k.Fx.c == std::vector<elem>{1});
        CHECK(k.Gy.c == std::vector<elem>{1});
        CHECK(k.H == parse_poly("x*y+1", F13));
    }
    {
        auto k = primitive_kernel(F13, parse_poly("x*y", F13));
        CHECK(k.Fx.c == std::vector<elem>{0, 1});
        CHECK(k.Gy.c == std::vector<elem>{0, 1});
        CHECK(k.H.t == std::map<std::pair<int, int>, elem>{{{0, 0}, 1}});
    }
    CHECK_THROWS_WITH_AS(primitive_kernel(F13, BivarPoly{}), doctest::Contains("ZeroPolynomial"),
                         Error);
}

TEST_CASE("kernel round trip on random polynomials") {
    std::mt19937_64 rng(17);
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{13, 1}, {7, 2}}) {
        Field F = Field::make(p, m);
        for (int it = 0; it < 1000; ++it) {
            BivarPoly f = random_biv(F, 6, rng);
            if (f.is_zero()) continue;
            auto k = primitive_kernel(F, f);
            // reconstruct unit * Fx(x) * Gy(y) * H
            BivarPoly fx, gy;
            for (std::size_t i = 0; i < k.Fx.c.size(); ++i)
                if (k.Fx.c[i]) fx.t[{static_cast<int>(i), 0}] = k.Fx.c[i];
            for (std::size_t j = 0; j < k.Gy.c.size(); ++j)
                if (k.Gy.c[j]) gy.t[{0, static_cast<int>(j)}] = k.Gy.c[j];
            BivarPoly prod = biv_scale(F, biv_mul(F, biv_mul(F, fx, gy), k.H), k.unit);
            REQUIRE(prod == f);
            REQUIRE(k.Fx.lead() == 1);
            REQUIRE(k.Gy.lead() == 1);
        }
    }
}

TEST_CASE("is_const_times_square_biv") {
    Field F13 = Field::make(13, 1);
    CHECK(is_const_times_square_biv(F13, parse_poly("(x-y)^2", F13)));
    CHECK_FALSE(is_const_times_square_biv(F13, parse_poly("x*y+1", F13)));
    CHECK_FALSE(is_const_times_square_biv(F13, parse_poly("x^2*y^2+1", F13)));
    // a refutation needs only one non-square specialization, even in tiny fields
    Field F5 = Field::make(5, 1);
    CHECK_FALSE(is_const_times_square_biv(F5, parse_poly("x^2*y^2+1", F5)));
    // but concluding squareness needs d^2 + d + 1 distinct u, so q = 3 < 7 fails
    Field F3 = Field::make(3, 1);
    CHECK_THROWS_WITH_AS(is_const_times_square_biv(F3, parse_poly("(x-y)^2", F3)),
                         doctest::Contains("FieldTooSmall"), Error);
}

TEST_CASE("check_admissible") {
    Field F13 = Field::make(13, 1);
    auto r1 = check_admissible(F13, parse_poly("x*y+1", F13));
    CHECK(r1.undirected);
    CHECK_FALSE(r1.kernel_square);
    CHECK(r1.admissible);

    Field F7 = Field::make(7, 1);
    auto r2 = check_admissible(F7, parse_poly("x-y", F7));
    CHECK_FALSE(r2.undirected);
    CHECK_FALSE(r2.admissible);
    REQUIRE(r2.witness.has_value());
    auto [u, v] = *r2.witness;
    // the witness really is a violation: chi(f(u,v)) square-ness differs
    CharTable chi = quadratic_character(F7);
    BivarPoly f = parse_poly("x-y", F7);
    CHECK(chi.is_square[biv_eval(F7, f, u, v)] != chi.is_square[biv_eval(F7, f, v, u)]);

    auto r3 = check_admissible(F13, parse_poly("(x-y)^2", F13));
    CHECK(r3.undirected);
    CHECK(r3.kernel_square);
    CHECK_FALSE(r3.admissible);
}

TEST_CASE("degenerate row and pair censuses") {
    Field F13 = Field::make(13, 1);
    CHECK(count_degenerate_rows(F13, parse_poly("x*y+1", F13)) == 1);
    CHECK(count_degenerate_rows(F13, parse_poly("x+y", F13)) == 0);
    Field F7 = Field::make(7, 1);
    CHECK(count_degenerate_rows(F7, parse_poly("x^2*y+x^2", F7)) == 7);

    std::vector<elem> all13;
    for (elem u = 0; u < 13; ++u) all13.push_back(u);
    int pairs = count_degenerate_pairs(F13, parse_poly("x*y+1", F13), all13);
    CHECK(pairs <= 140);  // (d^2+d)^2 + (d^2+2d) q with d = 2
    CHECK(count_degenerate_pairs(F13, parse_poly("x+y", F13), {1, 2, 3}) == 3);
    CHECK(count_degenerate_pairs(F13, parse_poly("x+y", F13), {}) == 0);
}

TEST_CASE("compose") {
    Field F13 = Field::make(13, 1);
    BivarPoly f = parse_poly("x*y+1", F13);
    UniPoly g{{0, 0, 1}};  // x^2
    CHECK(compose(F13, f, g, ComposeVariant::plain) == parse_poly("x^2*y^2+1", F13));
    CHECK(compose(F13, f, uni_x(), ComposeVariant::plain) == f);

    BivarPoly s = parse_poly("x+y", F13);
    UniPoly g2{{1, 0, 1}};  // x^2+1
    BivarPoly expect = parse_poly("(x^2+1)*(y^2+1)*(x^2+y^2+2)", F13);
    CHECK(compose(F13, s, g2, ComposeVariant::tilde) == expect);

    CHECK_THROWS_WITH_AS(compose(F13, f, uni_const(2), ComposeVariant::plain),
                         doctest::Contains("ConstantG"), Error);
}

TEST_CASE("uni arithmetic spot checks") {
    Field F7 = Field::make(7, 1);
    UniPoly a{{1, 2, 3}};
    UniPoly b{{5, 1}};
    auto [qp, rp] = uni_divrem(F7, a, b);
    CHECK(uni_add(F7, uni_mul(F7, qp, b), rp) == a);
    UniPoly g = uni_gcd(F7, uni_mul(F7, a, b), b);
    CHECK(g.degree() == 1);
    CHECK(g.lead() == 1);
    CHECK(uni_derivative(F7, UniPoly{{1, 1, 1, 1}}).c == std::vector<elem>{1, 2, 3});
    CHECK(uni_eval(F7, a, 2) == (1 + 4 + 12) % 7);
}
