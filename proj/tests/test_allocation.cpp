#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairslice/allocation.hpp"

using namespace fairslice;

namespace {

PiecewiseConstantValuation uniform() { return PiecewiseConstantValuation({{rat(0), rat(1), rat(1)}}); }

}  // namespace

TEST_CASE("single agent gets everything") {
    CakeInstance inst{{uniform()}};
    ContiguousAllocation alloc{{}, {0}};
    REQUIRE(alloc.well_formed());
    auto rep = envy_report(inst, alloc);
    CHECK(rep.matrix == std::vector<std::vector<Rat>>{{rat(0)}});
    CHECK(rep.max_envy == rat(0));
}

TEST_CASE("symmetric halves for identical agents") {
    CakeInstance inst{{uniform(), uniform()}};
    ContiguousAllocation alloc{{rat(1, 2)}, {0, 1}};
    auto rep = envy_report(inst, alloc);
    CHECK(rep.max_envy == rat(0));
    CHECK(is_eps_ef(inst, alloc, rat(0)));
}

TEST_CASE("one-third split of identical agents") {
    CakeInstance inst{{uniform(), uniform()}};
    ContiguousAllocation alloc{{rat(1, 3)}, {0, 1}};
    auto rep = envy_report(inst, alloc);
    CHECK(rep.matrix[0][1] == rat(1, 3));
    CHECK(rep.matrix[1][0] == rat(-1, 3));
    CHECK(rep.max_envy == rat(1, 3));
    CHECK(is_eps_ef(inst, alloc, rat(1, 3)));
    CHECK(!is_eps_ef(inst, alloc, rat(1, 4)));
}

TEST_CASE("order permutation is honored") {
    // agent 1 (index 0) owns the right piece
    CakeInstance inst{{PiecewiseConstantValuation({{rat(0), rat(1, 2), rat(1)}}), uniform()}};
    ContiguousAllocation alloc{{rat(1, 2)}, {1, 0}};
    CHECK(alloc.piece_of(0) == 1);
    CHECK(alloc.piece_of(1) == 0);
    auto rep = envy_report(inst, alloc);
    // agent 0 has no value right of 1/2 and envies agent 1 by a full unit
    CHECK(rep.matrix[0][1] == rat(1));
    CHECK(rep.max_envy == rat(1));
}

TEST_CASE("empty pieces are legal") {
    CakeInstance inst{{uniform(), uniform(), uniform()}};
    ContiguousAllocation alloc{{rat(1, 2), rat(1, 2)}, {0, 1, 2}};
    REQUIRE(alloc.well_formed());
    auto rep = envy_report(inst, alloc);
    CHECK(rep.matrix[1][0] == rat(1, 2));
    CHECK(rep.matrix[1][2] == rat(1, 2));
    CHECK(rep.max_envy == rat(1, 2));
}

TEST_CASE("well_formed rejects bad data") {
    ContiguousAllocation unsorted{{rat(2, 3), rat(1, 3)}, {0, 1, 2}};
    CHECK(!unsorted.well_formed());
    ContiguousAllocation not_perm{{rat(1, 2)}, {0, 0}};
    CHECK(!not_perm.well_formed());
    ContiguousAllocation out_of_range{{rat(3, 2)}, {0, 1}};
    CHECK(!out_of_range.well_formed());
}

TEST_CASE("pieces partition the cake") {
    CakeInstance inst{{PiecewiseConstantValuation({{rat(0), rat(1, 4), rat(2)},
                                                   {rat(3, 4), rat(1), rat(2)}}),
                      uniform(), PiecewiseConstantValuation({{rat(1, 8), rat(5, 8), rat(2)}})}};
    ContiguousAllocation alloc{{rat(1, 5), rat(2, 3)}, {2, 0, 1}};
    for (int i = 0; i < 3; ++i) {
        Rat total = 0;
        for (int j = 0; j < 3; ++j)
            total += inst.valuations[i].eval(alloc.piece_left(j), alloc.piece_right(j));
        CHECK(total == rat(1));
    }
}
