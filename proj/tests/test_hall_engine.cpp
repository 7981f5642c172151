#include <catch2/catch_amalgamated.hpp>

#include "ihall/hall_engine.hpp"

using namespace ihall;

namespace {

HallSymbol sym(const DimVector& d, int cls, const std::vector<long>& alpha) {
    return HallSymbol{d, cls, alpha};
}

} // namespace

TEST_CASE("worked product on the one-point iquiver") {
    // [S]*[S] = v^-1 [2S] + (v - v^-1) [E]
    CensusManager cm;
    HallEngine eng(point_iquiver(), 2, cm);
    HallElement s = eng.simple_class(0);
    HallElement p = eng.product(s, s);
    HallElement expect;
    ClassRef two_s = cm.classify(semisimple_rep(eng.kq_context(), 2, {2}));
    expect.add(sym({2}, two_s.index, {0}), eng.v_power(-1));
    expect.add(sym({0}, 0, {1}), eng.v_power(1) - eng.v_power(-1));
    CHECK(p == expect);
}

TEST_CASE("unit laws and E-merging") {
    CensusManager cm;
    HallEngine eng(a2_iquiver(), 2, cm);
    HallElement u = eng.unit();
    HallElement s1 = eng.simple_class(0);
    CHECK(eng.product(u, s1) == s1);
    CHECK(eng.product(s1, u) == s1);
    HallElement e1 = eng.e_class(0), e2 = eng.e_class(1);
    HallElement e12 = eng.product(e1, e2);
    REQUIRE(e12.size() == 1);
    CHECK(e12.terms().begin()->first.alpha == std::vector<long>{1, 1});
    CHECK(eng.product(e12, e1).terms().begin()->first.alpha == std::vector<long>{2, 1});
}

TEST_CASE("products on the linear quiver") {
    CensusManager cm;
    HallEngine eng(a2_iquiver(), 2, cm);
    const int q = 2;
    HallElement s1 = eng.simple_class(0), s2 = eng.simple_class(1);
    // [S_1]*[S_2] = v^-1 [S_1 + S_2] + v^-1 (q-1) [P_1]
    HallElement p12 = eng.product(s1, s2);
    QuiverRep ss = direct_sum(simple_rep(eng.kq_context(), q, 0), simple_rep(eng.kq_context(), q, 1));
    QuiverRep proj = QuiverRep::zero_rep(eng.kq_context(), q, {1, 1});
    proj.mats[0].set(0, 0, 1);
    ClassRef ss_ref = cm.classify(ss), p_ref = cm.classify(proj);
    HallElement expect;
    expect.add(sym({1, 1}, ss_ref.index, {0, 0}), eng.v_power(-1));
    expect.add(sym({1, 1}, p_ref.index, {0, 0}),
               eng.v_power(-1) * QuadExt::of_int(q, q - 1));
    CHECK(p12 == expect);
    // [S_2]*[S_1] = [S_1 + S_2], no twist and no extensions
    HallElement p21 = eng.product(s2, s1);
    HallElement expect21;
    expect21.add(sym({1, 1}, ss_ref.index, {0, 0}), eng.scalar_one());
    CHECK(p21 == expect21);
}

TEST_CASE("associativity instances") {
    CensusManager cm;
    SECTION("one-point iquiver") {
        HallEngine eng(point_iquiver(), 2, cm);
        HallElement s = eng.simple_class(0);
        CHECK(eng.product(eng.product(s, s), s) == eng.product(s, eng.product(s, s)));
        HallElement mix = eng.product(s, s) + eng.e_class(0);
        CHECK(eng.product(eng.product(mix, s), mix) == eng.product(mix, eng.product(s, mix)));
    }
    SECTION("linear quiver") {
        HallEngine eng(a2_iquiver(), 2, cm);
        HallElement s1 = eng.simple_class(0), s2 = eng.simple_class(1);
        CHECK(eng.product(eng.product(s1, s2), s1) == eng.product(s1, eng.product(s2, s1)));
        CHECK(eng.product(eng.product(s2, s1), s2) == eng.product(s2, eng.product(s1, s2)));
    }
    SECTION("cyclic rank-2 quiver") {
        HallEngine eng(rank2_iquiver(1, 1), 2, cm);
        HallElement s1 = eng.simple_class(0), s2 = eng.simple_class(1);
        CHECK(eng.product(eng.product(s1, s2), s1) == eng.product(s1, eng.product(s2, s1)));
    }
}

TEST_CASE("associativity on randomized small elements") {
    // deterministic generator over a small pool of symbols with random
    // coefficients, on the one-point and linear contexts
    struct Lcg {
        uint64_t state = 987654321;
        long pick(long lo, long hi) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return lo + static_cast<long>((state >> 33) % static_cast<uint64_t>(hi - lo + 1));
        }
    } rng;
    CensusManager cm;
    auto run = [&](HallEngine& eng, const std::vector<HallElement>& pool) {
        auto random_elem = [&] {
            HallElement x;
            for (int t = 0; t < 2; ++t) {
                QuadExt c(eng.q(), make_rational(rng.pick(-3, 3), rng.pick(1, 3)),
                          make_rational(rng.pick(-2, 2), rng.pick(1, 3)));
                x += c * pool[static_cast<size_t>(rng.pick(0, static_cast<long>(pool.size()) - 1))];
            }
            return x;
        };
        for (int trial = 0; trial < 12; ++trial) {
            HallElement a = random_elem(), b = random_elem(), c = random_elem();
            CHECK(eng.product(eng.product(a, b), c) == eng.product(a, eng.product(b, c)));
            CHECK(eng.product(eng.unit(), a) == a);
            CHECK(eng.product(a, eng.unit()) == a);
        }
    };
    {
        HallEngine eng(point_iquiver(), 2, cm);
        run(eng, {eng.simple_class(0), eng.e_class(0), eng.semisimple_class({2})});
    }
    {
        HallEngine eng(a2_iquiver(), 2, cm);
        run(eng, {eng.simple_class(0), eng.simple_class(1), eng.e_class(0), eng.e_class(1)});
    }
}

TEST_CASE("E-class commutation") {
    CensusManager cm;
    SECTION("central for the trivial involution") {
        HallEngine eng(a2_iquiver(), 2, cm);
        for (int i = 0; i < 2; ++i) {
            HallElement e = eng.e_class(i);
            for (const HallElement& x :
                 {eng.simple_class(0), eng.simple_class(1),
                  eng.product(eng.simple_class(0), eng.simple_class(1))}) {
                CHECK(eng.product(e, x) == eng.product(x, e));
                CHECK(eng.e_commute(i, x) == eng.product(x, e));
            }
        }
    }
    SECTION("swap involution scalar") {
        HallEngine eng(isolated_pairs_iquiver(1), 2, cm);
        HallElement s1 = eng.simple_class(0);
        // [E_1]*[S_1] = v^{c_{tau 1, 1} - c_{1 1}} [S_1]*[E_1] = v^-2 [S_1]*[E_1]
        CHECK(eng.e_commute_exponent(0, {1, 0}) == -2);
        CHECK(eng.product(eng.e_class(0), s1) == eng.v_power(-2) * eng.product(s1, eng.e_class(0)));
        CHECK(eng.e_commute_exponent(0, {0, 1}) == 2);
    }
    SECTION("unit case") {
        HallEngine eng(a2_iquiver(), 2, cm);
        HallElement out = eng.e_commute(0, eng.unit());
        REQUIRE(out.size() == 1);
        CHECK(out.terms().begin()->first.alpha == std::vector<long>{1, 0});
    }
}

TEST_CASE("divided powers at a fixed vertex") {
    CensusManager cm;
    for (int q : {2, 3}) {
        HallEngine eng(point_iquiver(), q, cm);
        SECTION("m = 0 and m = 1 at q = " + std::to_string(q)) {
            for (int parity : {0, 1}) {
                CHECK(eng.idivided_power(0, 0, parity) == eng.unit());
                CHECK(eng.idivided_power(0, 1, parity) == eng.simple_class(0));
            }
        }
        SECTION("m = 2, even parity matches [S]^2/[2] at q = " + std::to_string(q)) {
            HallElement s = eng.simple_class(0);
            HallElement lhs = eng.idivided_power(0, 2, 0);
            HallElement rhs = eng.eval(quantum_integer(2)).inverse() * eng.product(s, s);
            CHECK(lhs == rhs);
        }
        SECTION("defining products match the closed expansion, q = " + std::to_string(q)) {
            for (long m = 0; m <= 4; ++m)
                for (int parity : {0, 1}) {
                    INFO("m = " << m << " parity = " << parity << " q = " << q);
                    CHECK(eng.idivided_power(0, m, parity) == eng.expand_idivided(0, m, parity));
                }
        }
    }
}

TEST_CASE("divided powers at a moving vertex") {
    CensusManager cm;
    HallEngine eng(isolated_pairs_iquiver(1), 2, cm);
    CHECK(eng.divided_power_nonsplit(0, 0) == eng.unit());
    CHECK(eng.divided_power_nonsplit(0, 1) == eng.simple_class(0));
    HallElement d3 = eng.divided_power_nonsplit(0, 3);
    REQUIRE(d3.size() == 1);
    CHECK(d3.terms().begin()->first.mdim == DimVector{3, 0});
    CHECK(d3.terms().begin()->second == eng.v_power(-3));
    CHECK_THROWS_AS(eng.idivided_power(0, 2, 0), std::invalid_argument);
    HallEngine split(point_iquiver(), 2, cm);
    CHECK_THROWS_AS(split.divided_power_nonsplit(0, 2), std::invalid_argument);
    // powers of [S_i] multiply as v^{-m(m-1)/2} [m S_i]
    HallElement s = eng.simple_class(0);
    HallElement cube = eng.product(eng.product(s, s), s);
    REQUIRE(cube.size() == 1);
    CHECK(cube.terms().begin()->second == eng.v_power(-3));
}

TEST_CASE("closed triple product formula") {
    CensusManager cm;
    for (auto [a, b] : {std::pair<long, long>{1, 0}, {1, 1}}) {
        HallEngine eng(rank2_iquiver(a, b), 2, cm);
        HallElement s2 = eng.simple_class(1);
        for (long s = 0; s <= 2; ++s)
            for (long t = 0; t <= 2; ++t) {
                DimVector ds{s, 0}, dt{t, 0};
                HallElement chain =
                    eng.product(eng.product(eng.semisimple_class(ds), s2), eng.semisimple_class(dt));
                INFO("a=" << a << " b=" << b << " s=" << s << " t=" << t);
                CHECK(eng.triple_product_closed(s, t) == chain);
            }
    }
}

TEST_CASE("generator images") {
    CensusManager cm;
    SECTION("fixed vertex") {
        HallEngine eng(point_iquiver(), 2, cm);
        HallElement tk = eng.psi_tk(0);
        REQUIRE(tk.size() == 1);
        CHECK(tk.terms().begin()->second == QuadExt::of_rational(2, make_rational(-1, 2)));
        HallElement b = eng.psi_b(0);
        CHECK(b.terms().begin()->second == QuadExt::of_rational(2, make_rational(-1, 1)));
    }
    SECTION("swapped pair with c = 0") {
        HallEngine eng(isolated_pairs_iquiver(1), 2, cm);
        HallElement tk = eng.psi_tk(0);
        CHECK(tk.terms().begin()->second == eng.scalar_one()); // exponent 0
        CHECK(eng.psi_b(0).terms().begin()->second ==
              QuadExt(2, Rational(-1), Rational(0)));
        CHECK(eng.psi_b(1).terms().begin()->second == QuadExt(2, Rational(0), Rational(1)));
    }
}

TEST_CASE("relation residuals in the engine") {
    CensusManager cm;
    SECTION("tk commutations reproduce the commutation exponent") {
        HallEngine eng(a2_iquiver(), 2, cm);
        CHECK(eng.relation_residual(HallEngine::Relation::kk_and_kb, 0, 1, 0).is_zero());
        CHECK(eng.relation_residual(HallEngine::Relation::kk_and_kb, 0, 0, 0).is_zero());
        HallEngine swap_eng(isolated_pairs_iquiver(1), 2, cm);
        CHECK(swap_eng.relation_residual(HallEngine::Relation::kk_and_kb, 0, 1, 0).is_zero());
        CHECK(swap_eng.relation_residual(HallEngine::Relation::kk_and_kb, 0, 0, 0).is_zero());
    }
    SECTION("commuting generators at orthogonal vertices") {
        HallEngine eng(isolated_pairs_iquiver(2), 2, cm);
        CHECK(eng.relation_residual(HallEngine::Relation::commute_b, 0, 2, 0).is_zero());
        CHECK_THROWS_AS(eng.relation_residual(HallEngine::Relation::commute_b, 0, 1, 0),
                        std::invalid_argument);
    }
    SECTION("higher Serre relation on the linear quiver") {
        HallEngine eng(a2_iquiver(), 2, cm);
        for (int parity : {0, 1})
            CHECK(eng.relation_residual(HallEngine::Relation::iserre, 0, 1, parity).is_zero());
    }
}

TEST_CASE("alternating divided-power sum vanishes") {
    CensusManager cm;
    // degenerate rank-1 case: two fixed vertices, no arrows
    {
        Quiver q;
        q.vertices = {"1", "2"};
        HallEngine eng(IQuiver::validate(q, {}), 2, cm);
        for (int parity : {0, 1}) CHECK(eng.iserre_residual_rank2(parity).is_zero());
    }
    for (auto [a, b] : {std::pair<long, long>{1, 0}, {0, 1}, {1, 1}}) {
        for (int q : {2, 3}) {
            CensusManager local;
            HallEngine eng(rank2_iquiver(a, b), q, local);
            for (int parity : {0, 1}) {
                INFO("a=" << a << " b=" << b << " q=" << q << " parity=" << parity);
                CHECK(eng.iserre_residual_rank2(parity).is_zero());
            }
        }
    }
}

TEST_CASE("parameter reduction") {
    CensusManager cm;
    SECTION("fixed vertex substitution") {
        HallEngine eng(point_iquiver(), 2, cm);
        std::vector<QuadExt> sigma{QuadExt::of_int(2, 1)};
        HallElement x = eng.product(eng.e_class(0), eng.e_class(0));
        HallElement red = eng.reduce_parameters(x, sigma);
        REQUIRE(red.size() == 1);
        CHECK(red.terms().begin()->first.alpha == std::vector<long>{0});
        CHECK(red.terms().begin()->second == QuadExt::of_int(2, 4)); // (-q)^2
        CHECK(eng.reduce_parameters(eng.simple_class(0), sigma) == eng.simple_class(0));
    }
    SECTION("paired substitution for a swapped orbit") {
        HallEngine eng(isolated_pairs_iquiver(1), 2, cm);
        std::vector<QuadExt> sigma{QuadExt::of_int(2, 1), QuadExt::of_int(2, 1)};
        HallElement x = eng.product(eng.e_class(0), eng.e_class(1));
        HallElement red = eng.reduce_parameters(x, sigma);
        REQUIRE(red.size() == 1);
        CHECK(red.terms().begin()->first.alpha == std::vector<long>{0, 0});
        CHECK(red.terms().begin()->second == eng.scalar_one()); // v^{c} s s = 1
        // unpaired exponents stay symbolic
        HallElement solo = eng.reduce_parameters(eng.e_class(0), sigma);
        CHECK(solo == eng.e_class(0));
        // mismatched parameters on a c = 0 orbit are rejected
        std::vector<QuadExt> bad{QuadExt::of_int(2, 1), QuadExt::of_int(2, 2)};
        CHECK_THROWS_AS(eng.reduce_parameters(x, bad), std::invalid_argument);
    }
}

TEST_CASE("grading of the alternating sum") {
    CensusManager cm;
    HallEngine eng(rank2_iquiver(1, 0), 2, cm);
    // homogeneity is asserted inside; a successful run is the check
    CHECK(eng.iserre_residual_rank2(0).is_zero());
    // and spot-check k0_class bookkeeping
    auto alpha = std::vector<long>{1, 0};
    HallSymbol s{DimVector{1, 1}, 0, alpha};
    CHECK(eng.k0_class(s) == DimVector{3, 1});
}
