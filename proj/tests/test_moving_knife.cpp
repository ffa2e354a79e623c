#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fairslice/moving_knife.hpp"

using namespace fairslice;

namespace {

PiecewiseConstantValuation uniform() { return PiecewiseConstantValuation({{rat(0), rat(1), rat(1)}}); }

PiecewiseConstantValuation random_valuation(std::mt19937& rng, int max_blocks = 6) {
    std::uniform_int_distribution<int> nb(1, max_blocks);
    for (;;) {
        int want = nb(rng);
        std::vector<int> edges;
        std::uniform_int_distribution<int> pos(0, 24);
        for (int t = 0; t < 2 * want; ++t) edges.push_back(pos(rng));
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        std::vector<Block> blocks;
        std::uniform_int_distribution<int> h(1, 5);
        for (size_t t = 0; t + 1 < edges.size(); t += 2)
            blocks.push_back({rat(edges[t], 24), rat(edges[t + 1], 24), rat(h(rng))});
        if (!blocks.empty()) return PiecewiseConstantValuation(std::move(blocks));
    }
}

}  // namespace

TEST_CASE("single agent gets the whole cake") {
    CakeInstance inst{{uniform()}};
    auto alloc = run_alg1(inst);
    CHECK(alloc.cuts.empty());
    CHECK(alloc.order == std::vector<int>{0});
    CHECK(envy_report(inst, alloc).max_envy == rat(0));
}

TEST_CASE("two identical uniform agents: exact trace") {
    CakeInstance inst{{uniform(), uniform()}};
    auto alloc = run_alg1(inst);
    // agent 1 takes [0,1/3]; agent 2's piece absorbs the remainder
    CHECK(alloc.cuts == std::vector<Rat>{rat(1, 3)});
    CHECK(alloc.order == std::vector<int>({0, 1}));
    auto rep = envy_report(inst, alloc);
    CHECK(rep.max_envy == rat(1, 3));
    CHECK(rep.matrix[0][1] == rat(1, 3));
}

TEST_CASE("agent with concentrated value cuts first") {
    CakeInstance inst{{uniform(), PiecewiseConstantValuation({{rat(0), rat(1, 10), rat(10)}})}};
    auto alloc = run_alg1(inst);
    // agent 2 reaches value 1/3 at 1/30, well before agent 1's 1/3
    CHECK(alloc.order.front() == 1);
    CHECK(alloc.cuts == std::vector<Rat>{rat(1, 30)});
    auto rep = envy_report(inst, alloc);
    CHECK(rep.max_envy <= rat(1, 3));
    // both agents receive positive value
    for (int i = 0; i < 2; ++i) {
        int j = alloc.piece_of(i);
        CHECK(inst.valuations[i].eval(alloc.piece_left(j), alloc.piece_right(j)) > rat(0));
    }
}

TEST_CASE("loop assignments are worth exactly one third") {
    std::mt19937 rng(618033);
    for (int iter = 0; iter < 60; ++iter) {
        std::uniform_int_distribution<int> na(1, 8);
        int n = na(rng);
        CakeInstance inst;
        for (int i = 0; i < n; ++i) inst.valuations.push_back(random_valuation(rng));
        auto alloc = run_alg1(inst);
        REQUIRE(alloc.well_formed());
        CHECK(envy_report(inst, alloc).max_envy <= rat(1, 3));
    }
}

TEST_CASE("leftover agents receive empty pieces at the right end") {
    // four identical agents: thirds go to agents 1-3, agent 4 is left empty
    CakeInstance inst{{uniform(), uniform(), uniform(), uniform()}};
    auto alloc = run_alg1(inst);
    REQUIRE(alloc.well_formed());
    CHECK(alloc.cuts == std::vector<Rat>({rat(1, 3), rat(2, 3), rat(1)}));
    CHECK(alloc.order == std::vector<int>({0, 1, 2, 3}));
    auto rep = envy_report(inst, alloc);
    CHECK(rep.max_envy == rat(1, 3));
    CHECK(rep.matrix[3][0] == rat(1, 3));
}
