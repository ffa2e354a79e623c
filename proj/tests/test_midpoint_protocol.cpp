#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fairslice/midpoint_protocol.hpp"

using namespace fairslice;

namespace {

PiecewiseConstantValuation interval(long al, long ad, long bl, long bd) {
    return PiecewiseConstantValuation({{rat(al, ad), rat(bl, bd), rat(1)}});
}

}  // namespace

TEST_CASE("rejects multi-block valuations") {
    CakeInstance inst{{PiecewiseConstantValuation(
        {{rat(0), rat(1, 4), rat(1)}, {rat(1, 2), rat(3, 4), rat(1)}})}};
    CHECK_THROWS_AS(run_alg2(inst), InvalidInstanceError);
}

TEST_CASE("single agent takes the whole cake") {
    CakeInstance inst{{interval(1, 4, 3, 4)}};
    auto [alloc, trace] = run_alg2(inst);
    CHECK(alloc.cuts.empty());
    CHECK(alloc.order == std::vector<int>{0});
    CHECK(envy_report(inst, alloc).max_envy == rat(0));
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].kind == CaseKind::Case2);
    CHECK(trace[0].fallback);
}

TEST_CASE("two identical full-cake agents: exact trace") {
    CakeInstance inst{{interval(0, 1, 1, 1), interval(0, 1, 1, 1)}};
    auto [alloc, trace] = run_alg2(inst);

    REQUIRE(trace.size() == 2);
    // agent 1 anchors its quarter at agent 2's midpoint, extending left
    CHECK(trace[0].agent == 0);
    CHECK(trace[0].kind == CaseKind::Case2);
    CHECK(trace[0].s_set == std::vector<int>{1});
    CHECK(trace[0].k == 1);
    CHECK(trace[0].left == rat(1, 4));
    CHECK(trace[0].right == rat(1, 2));
    // agent 2's midpoint sits on the boundary of the allocated piece, so a
    // restrained quarter-interval containing it exists
    CHECK(trace[1].agent == 1);
    CHECK(trace[1].kind == CaseKind::Case1);
    CHECK(trace[1].left == rat(1, 2));
    CHECK(trace[1].right == rat(3, 4));

    // extension: adjacent at 1/2, final pieces [0,1/2] and [1/2,1]
    CHECK(alloc.cuts == std::vector<Rat>{rat(1, 2)});
    CHECK(alloc.order == std::vector<int>({0, 1}));
    CHECK(envy_report(inst, alloc).max_envy == rat(0));
}

TEST_CASE("two agents with disjoint intervals") {
    CakeInstance inst{{interval(0, 1, 1, 2), interval(1, 2, 1, 1)}};
    auto [alloc, trace] = run_alg2(inst);
    REQUIRE(trace.size() == 2);
    // neither agent's quarter can reach the other's midpoint: both fall back
    // to an interval centered on their own midpoint
    CHECK(trace[0].kind == CaseKind::Case2);
    CHECK(trace[0].fallback);
    CHECK(trace[0].left == rat(3, 16));
    CHECK(trace[0].right == rat(5, 16));
    CHECK(trace[1].kind == CaseKind::Case2);
    CHECK(trace[1].fallback);
    CHECK(trace[1].left == rat(11, 16));
    CHECK(trace[1].right == rat(13, 16));
    CHECK(envy_report(inst, alloc).max_envy == rat(0));
}

TEST_CASE("shorter intervals are served first") {
    CakeInstance inst{{interval(0, 1, 1, 1), interval(3, 8, 5, 8)}};
    auto [alloc, trace] = run_alg2(inst);
    CHECK(trace[0].agent == 1);
    CHECK(trace[1].agent == 0);
    CHECK(envy_report(inst, alloc).max_envy <= rat(1, 4));
}

TEST_CASE("pre-extension pieces are worth at most a quarter to their owner") {
    std::mt19937 rng(271828);
    std::uniform_int_distribution<int> na(1, 8);
    std::uniform_int_distribution<int> pos(0, 40);
    for (int iter = 0; iter < 200; ++iter) {
        int n = na(rng);
        CakeInstance inst;
        for (int i = 0; i < n; ++i) {
            int a = pos(rng), b = pos(rng);
            if (a == b) b = (a + 1) % 41;
            if (a > b) std::swap(a, b);
            inst.valuations.push_back(interval(a, 40, b, 40));
        }
        auto [alloc, trace] = run_alg2(inst);
        REQUIRE(alloc.well_formed());
        CHECK(envy_report(inst, alloc).max_envy <= rat(1, 4));
        bool all_case2 = true;
        for (const auto& tag : trace) {
            CHECK(inst.valuations[tag.agent].eval(tag.left, tag.right) <= rat(1, 4));
            if (tag.kind != CaseKind::Case2) all_case2 = false;
        }
        if (!all_case2) {
            // the single-direction-extension property: some two pre-extension
            // pieces must be adjacent
            std::vector<std::pair<Rat, Rat>> pieces;
            for (const auto& tag : trace) pieces.emplace_back(tag.left, tag.right);
            std::sort(pieces.begin(), pieces.end());
            bool adjacent = false;
            for (size_t j = 0; j + 1 < pieces.size(); ++j)
                if (pieces[j].second == pieces[j + 1].first) adjacent = true;
            CHECK(adjacent);
        }
    }
}
