#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fairslice/valuation.hpp"

using namespace fairslice;

namespace {

PiecewiseConstantValuation uniform() { return PiecewiseConstantValuation({{rat(0), rat(1), rat(1)}}); }

// Deterministic random valuation: breakpoints on a grid of 1/24, up to
// `max_blocks` blocks with heights in 1..5 (then normalized).
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

Rat random_point(std::mt19937& rng) {
    std::uniform_int_distribution<int> pos(0, 48);
    return rat(pos(rng), 48);
}

}  // namespace

TEST_CASE("construction normalizes and validates") {
    PiecewiseConstantValuation v({{rat(0), rat(1, 2), rat(3)}});
    CHECK(v.eval(rat(0), rat(1)) == rat(1));
    CHECK(v.blocks().size() == 1);
    CHECK(v.blocks()[0].height == rat(2));

    CHECK_THROWS_AS(PiecewiseConstantValuation({}), InvalidInstanceError);
    CHECK_THROWS_AS(PiecewiseConstantValuation({{rat(1, 2), rat(1, 4), rat(1)}}),
                    InvalidInstanceError);
    CHECK_THROWS_AS(PiecewiseConstantValuation({{rat(-1, 4), rat(1, 4), rat(1)}}),
                    InvalidInstanceError);
    // overlapping blocks
    CHECK_THROWS_AS(
        PiecewiseConstantValuation({{rat(0), rat(1, 2), rat(1)}, {rat(1, 4), rat(1), rat(1)}}),
        InvalidInstanceError);
    // touching blocks are fine
    CHECK_NOTHROW(
        PiecewiseConstantValuation({{rat(0), rat(1, 2), rat(1)}, {rat(1, 2), rat(1), rat(3)}}));
}

TEST_CASE("eval basics") {
    auto v = uniform();
    CHECK(v.eval(rat(1, 4), rat(3, 4)) == rat(1, 2));
    CHECK(v.eval(rat(1, 3), rat(1, 3)) == rat(0));

    PiecewiseConstantValuation w({{rat(0), rat(1, 4), rat(2)}, {rat(3, 4), rat(1), rat(2)}});
    CHECK(w.eval(rat(0), rat(1, 2)) == rat(1, 2));
    CHECK(w.eval(rat(1, 4), rat(3, 4)) == rat(0));
    CHECK_THROWS(w.eval(rat(1, 2), rat(1, 4)));
}

TEST_CASE("cut_query basics and leftmost-plateau rule") {
    auto v = uniform();
    CHECK(v.cut_query(rat(0), rat(1, 3)) == rat(1, 3));
    CHECK(!v.cut_query(rat(9, 10), rat(1, 2)).has_value());
    CHECK(v.cut_query(rat(1, 2), rat(0)) == rat(1, 2));

    PiecewiseConstantValuation w({{rat(0), rat(1, 4), rat(2)}, {rat(3, 4), rat(1), rat(2)}});
    CHECK(w.cut_query(rat(0), rat(1, 2)) == rat(1, 4));
    CHECK(w.cut_query(rat(0), rat(3, 4)) == rat(7, 8));
    // starting inside the zero plateau
    CHECK(w.cut_query(rat(1, 2), rat(0)) == rat(1, 2));
    CHECK(w.cut_query(rat(1, 2), rat(1, 4)) == rat(7, 8));
}

TEST_CASE("breakpoint_grid") {
    CakeInstance one{{uniform()}};
    CHECK(breakpoint_grid(one) == std::vector<Rat>{rat(0), rat(1)});

    CakeInstance two{{PiecewiseConstantValuation({{rat(0), rat(1, 2), rat(1)}}),
                      PiecewiseConstantValuation({{rat(1, 2), rat(1), rat(1)}})}};
    CHECK(breakpoint_grid(two) == std::vector<Rat>({rat(0), rat(1, 2), rat(1)}));

    // four equal regions
    CakeInstance four{{PiecewiseConstantValuation({{rat(0), rat(1, 4), rat(1)},
                                                   {rat(1, 2), rat(3, 4), rat(1)}}),
                       PiecewiseConstantValuation({{rat(1, 4), rat(1, 2), rat(1)},
                                                   {rat(3, 4), rat(1), rat(1)}})}};
    CHECK(breakpoint_grid(four) ==
          std::vector<Rat>({rat(0), rat(1, 4), rat(1, 2), rat(3, 4), rat(1)}));
}

TEST_CASE("uniform single interval accessors") {
    PiecewiseConstantValuation v({{rat(1, 4), rat(3, 4), rat(7)}});
    REQUIRE(v.is_uniform_single_interval());
    CHECK(v.uniform_interval().left == rat(1, 4));
    CHECK(v.uniform_interval().right == rat(3, 4));
    CHECK(v.midpoint() == rat(1, 2));

    PiecewiseConstantValuation w({{rat(0), rat(1, 4), rat(2)}, {rat(3, 4), rat(1), rat(2)}});
    CHECK(!w.is_uniform_single_interval());
}

TEST_CASE("eval additivity and cut/eval round trip on random valuations") {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 300; ++iter) {
        auto v = random_valuation(rng);
        CHECK(v.eval(rat(0), rat(1)) == rat(1));
        Rat a = random_point(rng), b = random_point(rng), c = random_point(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        CHECK(v.eval(a, c) == v.eval(a, b) + v.eval(b, c));

        Rat alpha = v.eval(a, b);
        auto y = v.cut_query(a, alpha);
        REQUIRE(y.has_value());
        CHECK(*y <= b);
        CHECK(v.eval(a, *y) == alpha);
    }
}
