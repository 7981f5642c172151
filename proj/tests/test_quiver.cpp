#include <catch2/catch_amalgamated.hpp>

#include "ihall/quiver.hpp"
#include "ihall/rep.hpp"

using namespace ihall;

TEST_CASE("involution validation") {
    SECTION("single vertex, identity") {
        IQuiver iq = point_iquiver();
        CHECK(iq.split());
        CHECK(iq.orbit_reps() == std::vector<int>{0});
    }
    SECTION("arrow image missing") {
        Quiver q;
        q.vertices = {"1", "2"};
        q.arrows.push_back({"a", 0, 1});
        CHECK_THROWS_AS(IQuiver::validate(q, {{"1", "2"}, {"2", "1"}}), std::invalid_argument);
    }
    SECTION("two isolated vertices with swap") {
        IQuiver iq = isolated_pairs_iquiver(1);
        CHECK_FALSE(iq.split());
        CHECK(iq.orbit_reps() == std::vector<int>{0});
        CHECK(iq.tau_of(0) == 1);
    }
    SECTION("tau must square to the identity") {
        Quiver q;
        q.vertices = {"1", "2", "3"};
        CHECK_THROWS_AS(IQuiver::validate(q, {{"1", "2"}, {"2", "3"}, {"3", "1"}}),
                        std::invalid_argument);
    }
    SECTION("loops are rejected") {
        Quiver q;
        q.vertices = {"1"};
        q.arrows.push_back({"l", 0, 0});
        CHECK_THROWS_AS(IQuiver::validate(q, {}), std::invalid_argument);
    }
    SECTION("two-cycle with swap is a valid iquiver") {
        IQuiver iq = two_cycle_swap_iquiver();
        CHECK(iq.tau_of_arrow(0) == 1);
        CHECK(iq.tau_of_arrow(1) == 0);
    }
}

TEST_CASE("iquiver algebra presentation") {
    SECTION("one fixed vertex gives a square-zero loop") {
        auto ctx = build_bar_algebra(point_iquiver());
        REQUIRE(ctx->quiver.arrows.size() == 1);
        CHECK(ctx->quiver.arrows[0].src == 0);
        CHECK(ctx->quiver.arrows[0].tgt == 0);
        REQUIRE(ctx->relations.size() == 1);
        CHECK(ctx->relations[0].terms.size() == 1);
        CHECK(ctx->relations[0].terms[0].arrows == std::vector<int>{0, 0});
    }
    SECTION("linear quiver with trivial involution") {
        auto ctx = build_bar_algebra(a2_iquiver());
        // one base arrow plus two loops
        REQUIRE(ctx->quiver.arrows.size() == 3);
        CHECK(ctx->eps_arrow[0] == 1);
        CHECK(ctx->eps_arrow[1] == 2);
        // eps_1^2, eps_2^2 and the commutation eps_2 a = a eps_1
        REQUIRE(ctx->relations.size() == 3);
        CHECK(ctx->relations[2].terms.size() == 2);
        CHECK(ctx->relations[2].terms[0].arrows == std::vector<int>{0, 2});
        CHECK(ctx->relations[2].terms[1].arrows == std::vector<int>{1, 0});
    }
    SECTION("swapped pair gives a two-cycle of eps arrows") {
        auto ctx = build_bar_algebra(isolated_pairs_iquiver(1));
        REQUIRE(ctx->quiver.arrows.size() == 2);
        CHECK(ctx->quiver.arrows[0].src == 0);
        CHECK(ctx->quiver.arrows[0].tgt == 1);
        CHECK(ctx->quiver.arrows[1].src == 1);
        CHECK(ctx->quiver.arrows[1].tgt == 0);
        REQUIRE(ctx->relations.size() == 2);
        // eps_1 eps_2 and eps_2 eps_1 both vanish
        CHECK(ctx->relations[0].terms[0].arrows == std::vector<int>{1, 0});
        CHECK(ctx->relations[1].terms[0].arrows == std::vector<int>{0, 1});
    }
}

TEST_CASE("cartan matrices") {
    CHECK(a2_iquiver().cartan_matrix() == CartanMatrix{{2, -1}, {-1, 2}});
    CHECK(rank2_iquiver(1, 1).cartan_matrix() == CartanMatrix{{2, -2}, {-2, 2}});
    CHECK(isolated_pairs_iquiver(1).cartan_matrix() == CartanMatrix{{2, 0}, {0, 2}});
    // symmetry and tau-invariance over a mixed example
    IQuiver iq = two_cycle_swap_iquiver();
    auto c = iq.cartan_matrix();
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            CHECK(c[i][j] == c[j][i]);
            CHECK(c[i][j] == c[iq.tau_of(static_cast<int>(i))][iq.tau_of(static_cast<int>(j))]);
        }
}

TEST_CASE("euler form") {
    IQuiver a2 = a2_iquiver();
    CHECK(euler_form_q({1, 0}, {0, 1}, a2.quiver()) == -1);
    CHECK(euler_form_q({0, 1}, {1, 0}, a2.quiver()) == 0);
    IQuiver c2 = rank2_iquiver(1, 1);
    CHECK(euler_form_q({1, 0}, {1, 0}, c2.quiver()) == 1);
    CHECK(euler_form_q({1, 0}, {0, 1}, c2.quiver()) == -1);
    IQuiver pt = point_iquiver();
    for (long x = -3; x <= 3; ++x) CHECK(euler_form_q({x}, {x}, pt.quiver()) == x * x);

    SECTION("bilinearity") {
        auto& q = c2.quiver();
        for (long x1 = 0; x1 <= 2; ++x1)
            for (long x2 = 0; x2 <= 2; ++x2)
                for (long y1 = 0; y1 <= 2; ++y1)
                    for (long y2 = 0; y2 <= 2; ++y2)
                        CHECK(euler_form_q({x1 + y1, x2 + y2}, {1, 2}, q) ==
                              euler_form_q({x1, x2}, {1, 2}, q) + euler_form_q({y1, y2}, {1, 2}, q));
    }
    SECTION("symmetrization recovers the cartan matrix") {
        for (const IQuiver& iq : {a2_iquiver(), rank2_iquiver(2, 1), isolated_pairs_iquiver(2)}) {
            auto c = iq.cartan_matrix();
            const size_t n = iq.n_vertices();
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    DimVector si = unit_dim(n, i), sj = unit_dim(n, j);
                    CHECK(euler_form_q(si, sj, iq.quiver()) + euler_form_q(sj, si, iq.quiver()) ==
                          c[i][j]);
                }
        }
    }
}

TEST_CASE("euler pairings against generalized simples") {
    IQuiver pt = point_iquiver();
    CHECK(euler_pairing_e(0, {1}, PairingSide::left, pt) == 1);
    CHECK(euler_pairing_e(0, {1}, PairingSide::right, pt) == 1);
    IQuiver a2 = a2_iquiver();
    CHECK(euler_pairing_e(0, {0, 1}, PairingSide::left, a2) == -1);
    CHECK(euler_pairing_e(0, {0, 0}, PairingSide::left, a2) == 0);
    CHECK(euler_pairing_e(1, {0, 0}, PairingSide::right, a2) == 0);
}

TEST_CASE("config file round trip") {
    for (const IQuiver& iq :
         {a2_iquiver(), rank2_iquiver(2, 1), isolated_pairs_iquiver(2), two_cycle_swap_iquiver()}) {
        std::string text = iquiver_to_config_text(iq);
        IQuiver back = iquiver_from_config_text(text);
        CHECK(iquiver_to_config_text(back) == text);
        CHECK(back.quiver().vertices == iq.quiver().vertices);
        CHECK(back.tau().vertex_map == iq.tau().vertex_map);
        CHECK(back.orbit_reps() == iq.orbit_reps());
    }
    // omitted tau means the identity
    IQuiver id = iquiver_from_config_text(R"({"vertices": ["x", "y"], "arrows": [["a","x","y"]]})");
    CHECK(id.split());
}
