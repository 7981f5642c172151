#include <catch2/catch_amalgamated.hpp>

#include "ihall/sdh_oracle.hpp"

using namespace ihall;

TEST_CASE("raw and twisted products on the square-zero loop") {
    CensusManager cm;
    SdhOracle oracle(point_iquiver(), 2, cm);
    const int q = 2;
    OracleElement s = oracle.simple(0);
    OracleElement raw = oracle.raw_product(s, s);
    ClassRef two_s = cm.classify(semisimple_rep(oracle.bar_context(), q, {2}));
    ClassRef e = cm.classify(generalized_simple(oracle.bar_context(), q, 0));
    REQUIRE(raw.coef.size() == 2);
    CHECK(raw.coef.at(two_s.index) == QuadExt::of_rational(q, make_rational(1, q)));
    CHECK(raw.coef.at(e.index) == QuadExt::of_rational(q, make_rational(q - 1, q)));
    // twist by v^{<S,S>_Q} = v
    OracleElement tw = oracle.twisted_product(s, s);
    CHECK(tw.coef.at(two_s.index) == oracle.v_power(-1));
    CHECK(tw.coef.at(e.index) == oracle.v_power(1) - oracle.v_power(-1));
    // unit laws
    CHECK(oracle.raw_product(oracle.unit(), s).coef == s.coef);
    CHECK(oracle.twisted_product(s, oracle.unit()).coef == s.coef);
}

TEST_CASE("products over the linear iquiver algebra") {
    CensusManager cm;
    SdhOracle oracle(a2_iquiver(), 2, cm);
    const int q = 2;
    OracleElement p = oracle.raw_product(oracle.simple(0), oracle.simple(1));
    // [S_1].[S_2] = [S_1+S_2] + (q-1)[X] with X the pulled-back projective
    QuiverRep ss = direct_sum(simple_rep(oracle.bar_context(), q, 0),
                              simple_rep(oracle.bar_context(), q, 1));
    QuiverRep x = QuiverRep::zero_rep(oracle.bar_context(), q, {1, 1});
    x.mats[0].set(0, 0, 1);
    CHECK(p.coef.at(cm.classify(ss).index) == QuadExt::of_int(q, 1));
    CHECK(p.coef.at(cm.classify(x).index) == QuadExt::of_int(q, q - 1));
}

TEST_CASE("twist exponent vanishes without base arrows") {
    CensusManager cm;
    SdhOracle oracle(isolated_pairs_iquiver(1), 2, cm);
    OracleElement a = oracle.raw_product(oracle.simple(0), oracle.simple(1));
    OracleElement b = oracle.twisted_product(oracle.simple(0), oracle.simple(1));
    CHECK(a.coef == b.coef);
}

TEST_CASE("ideal slices") {
    CensusManager cm;
    const int q = 2;
    SECTION("square-zero loop: every slice in range is zero") {
        SdhOracle oracle(point_iquiver(), q, cm);
        CHECK(oracle.ideal_slice({0}).rank() == 0);
        CHECK(oracle.ideal_slice({2}).rank() == 0);
        CHECK(oracle.ideal_slice({3}).rank() == 0);
        // [2S] and [E] stay distinct in the quotient
        ClassRef two_s = cm.classify(semisimple_rep(oracle.bar_context(), q, {2}));
        ClassRef e = cm.classify(generalized_simple(oracle.bar_context(), q, 0));
        CHECK_FALSE(oracle.equal_mod_ideal(oracle.class_elem(two_s), oracle.class_elem(e)));
        CHECK(oracle.equal_mod_ideal(oracle.class_elem(e), oracle.class_elem(e)));
    }
    SECTION("linear iquiver algebra: non-split extension with projective sub") {
        SdhOracle oracle(a2_iquiver(), q, cm);
        // Z: dim (1,2), eps_2 a Jordan block, the base arrow hits the socle
        QuiverRep z = QuiverRep::zero_rep(oracle.bar_context(), q, {1, 2});
        z.mats[2].set(0, 1, 1); // eps_2
        z.mats[0].set(0, 0, 1); // alpha lands in the socle: eps_2 alpha = 0 holds
        REQUIRE(z.is_valid());
        QuiverRep e2 = generalized_simple(oracle.bar_context(), q, 1);
        QuiverRep split = direct_sum(e2, simple_rep(oracle.bar_context(), q, 0));
        REQUIRE_FALSE(cm.classify(z) == cm.classify(split));
        CHECK(oracle.ideal_slice({1, 2}).rank() >= 1);
        CHECK(oracle.equal_mod_ideal(oracle.rep_elem(z), oracle.rep_elem(split)));
    }
}

TEST_CASE("adopted rewrite rules hold modulo the ideal") {
    CensusManager cm;
    const int q = 2;
    long left_checked = 0, right_checked = 0, budget_skipped = 0;
    for (const IQuiver& iq : {point_iquiver(), a2_iquiver(), isolated_pairs_iquiver(1)}) {
        SdhOracle oracle(iq, q, cm);
        auto bar = oracle.bar_context();
        const size_t nv = iq.n_vertices();
        std::vector<DimVector> dims;
        if (nv == 1)
            for (long d = 0; d <= 2; ++d) dims.push_back({d});
        else
            for (long d1 = 0; d1 <= 2; ++d1)
                for (long d2 = 0; d1 + d2 <= 3; ++d2) dims.push_back({d1, d2});
        for (size_t i = 0; i < nv; ++i) {
            QuiverRep e = generalized_simple(bar, q, static_cast<int>(i));
            for (const auto& d : dims) {
                const Census& window = cm.get(bar, q, d);
                for (const auto& cls : window.classes()) {
                    QuiverRep m = window.representative(cls.index);
                    // [E_i].[M] = q^{-<S_i, res M>_Q} [E_i + M]: the class [E_i]
                    // sits on the quotient side of the extensions, so this is
                    // an identity of the localized algebra and is compared
                    // there; windows beyond the enumeration budget are skipped
                    // and counted.
                    try {
                        long le = euler_pairing_e(static_cast<int>(i), d, PairingSide::left, iq);
                        OracleElement lhs =
                            oracle.raw_product(oracle.rep_elem(e), oracle.rep_elem(m));
                        OracleElement rhs = oracle.scale(oracle.v_power(-2 * le),
                                                         oracle.rep_elem(direct_sum(e, m)));
                        INFO("left rule, vertex " << i << " dim " << dim_to_string(d) << " class "
                                                  << cls.index);
                        auto verdict = oracle.localized_equality(lhs, rhs);
                        if (verdict == SdhOracle::LocalizedEq::budget_limited) {
                            ++budget_skipped;
                        } else {
                            CHECK(verdict == SdhOracle::LocalizedEq::equal);
                            ++left_checked;
                        }
                    } catch (const BudgetExceeded&) {
                        ++budget_skipped;
                    }
                    // [M].[E_i] = q^{-<res M, S_{tau i}>_Q} [M + E_i]: the sub
                    // side of the split family makes this exact in H/I.
                    try {
                        long re = euler_pairing_e(static_cast<int>(i), d, PairingSide::right, iq);
                        OracleElement lhs2 =
                            oracle.raw_product(oracle.rep_elem(m), oracle.rep_elem(e));
                        OracleElement rhs2 = oracle.scale(oracle.v_power(-2 * re),
                                                          oracle.rep_elem(direct_sum(m, e)));
                        INFO("right rule, vertex " << i << " dim " << dim_to_string(d) << " class "
                                                   << cls.index);
                        CHECK(oracle.equal_mod_ideal(lhs2, rhs2));
                        ++right_checked;
                    } catch (const BudgetExceeded&) {
                        ++budget_skipped;
                    }
                }
            }
        }
    }
    // the sweep must actually exercise both rules on a solid sample
    CHECK(left_checked >= 20);
    CHECK(right_checked >= 30);
    WARN("rewrite validation: " << left_checked << " left, " << right_checked
                                << " right instances verified, " << budget_skipped
                                << " outside the enumeration budget");
}

TEST_CASE("left rewrite obstruction genuinely needs the localization") {
    // Over the linear iquiver algebra, [E_1].[S_2] has a non-split middle term
    // whose difference from the split class is not in the plain ideal slice,
    // but becomes so after one right multiplication by [E_2].
    CensusManager cm;
    const int q = 2;
    SdhOracle oracle(a2_iquiver(), q, cm);
    auto bar = oracle.bar_context();
    QuiverRep e1 = generalized_simple(bar, q, 0);
    QuiverRep s2 = simple_rep(bar, q, 1);
    OracleElement lhs = oracle.raw_product(oracle.rep_elem(e1), oracle.rep_elem(s2));
    OracleElement rhs = oracle.scale(oracle.v_power(2), oracle.rep_elem(direct_sum(e1, s2)));
    CHECK_FALSE(oracle.equal_mod_ideal(lhs, rhs));
    CHECK(oracle.equal_mod_ideal_localized(lhs, rhs));
}

TEST_CASE("generalized simples pair by half the restricted euler form") {
    CensusManager cm;
    const int q = 2;
    for (const IQuiver& iq : {point_iquiver(), a2_iquiver(), isolated_pairs_iquiver(1)}) {
        auto bar = make_bar_context(iq);
        const size_t nv = iq.n_vertices();
        for (size_t i = 0; i < nv; ++i)
            for (size_t j = 0; j < nv; ++j) {
                QuiverRep ei = generalized_simple(bar, q, static_cast<int>(i));
                QuiverRep ej = generalized_simple(bar, q, static_cast<int>(j));
                long pairing = hom_space(ei, ej).dim - ext1_dim(ei, ej);
                long restricted = euler_form_q(ei.dim, ej.dim, iq.quiver());
                CHECK(2 * pairing == restricted);
            }
    }
}

TEST_CASE("twisted product is associative on homogeneous elements") {
    CensusManager cm;
    SdhOracle oracle(a2_iquiver(), 2, cm);
    // at most one generalized-simple factor keeps the windows inside budget
    std::vector<OracleElement> gens{oracle.simple(0), oracle.simple(1), oracle.generalized(0),
                                    oracle.generalized(1)};
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = 0; b < gens.size(); ++b)
            for (size_t c = 0; c < gens.size(); ++c) {
                if ((a >= 2) + (b >= 2) + (c >= 2) > 1) continue;
                OracleElement left =
                    oracle.twisted_product(oracle.twisted_product(gens[a], gens[b]), gens[c]);
                OracleElement right =
                    oracle.twisted_product(gens[a], oracle.twisted_product(gens[b], gens[c]));
                CHECK(left.coef == right.coef);
            }
}

TEST_CASE("engine and oracle agree on generator words") {
    CensusManager cm;
    SECTION("single vertex") {
        SdhOracle oracle(point_iquiver(), 2, cm);
        HallEngine engine(point_iquiver(), 2, cm);
        for (int len = 0; len <= 3; ++len) {
            std::vector<int> word(static_cast<size_t>(len), 0);
            CHECK(oracle.cross_check(engine, word));
        }
    }
    SECTION("linear quiver, all words up to length 3") {
        SdhOracle oracle(a2_iquiver(), 2, cm);
        HallEngine engine(a2_iquiver(), 2, cm);
        CHECK(oracle.cross_check(engine, {}));
        for (int len = 1; len <= 3; ++len) {
            for (int code = 0; code < (1 << len); ++code) {
                std::vector<int> word;
                for (int p = 0; p < len; ++p) word.push_back((code >> p) & 1);
                INFO("word size " << len << " code " << code);
                CHECK(oracle.cross_check(engine, word));
            }
        }
    }
}

TEST_CASE("presentation relations through the oracle") {
    CensusManager cm;
    SECTION("tk commutations, swapped pair") {
        SdhOracle oracle(isolated_pairs_iquiver(1), 2, cm);
        auto v = oracle.verify_relation(SdhOracle::Relation::kk_and_kb, 0, 1);
        CHECK(v.ok);
        CHECK(oracle.verify_relation(SdhOracle::Relation::kk_and_kb, 0, 0).ok);
        CHECK(oracle.verify_relation(SdhOracle::Relation::kk_and_kb, 1, 0).ok);
    }
    SECTION("commuting generators need two orbits") {
        SdhOracle oracle(isolated_pairs_iquiver(2), 2, cm);
        CHECK(oracle.verify_relation(SdhOracle::Relation::commute_b, 0, 2).ok);
        CHECK(oracle.verify_relation(SdhOracle::Relation::commute_b, 2, 1).ok);
        CHECK_THROWS_AS(oracle.verify_relation(SdhOracle::Relation::commute_b, 0, 1),
                        std::invalid_argument);
    }
    SECTION("tau-paired relation with c = 0") {
        SdhOracle oracle(isolated_pairs_iquiver(1), 2, cm);
        auto v = oracle.verify_relation(SdhOracle::Relation::nonsplit_pair, 0, 1);
        CHECK(v.ok);
        auto w = oracle.verify_relation(SdhOracle::Relation::nonsplit_pair, 1, 0);
        CHECK(w.ok);
    }
}
