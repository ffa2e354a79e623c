#pragma once

#include "fairslice/allocation.hpp"

namespace fairslice {

/// Moving-knife procedure for arbitrary valuations: sweeps left to right,
/// handing out a piece whenever it is worth exactly 1/3 to some remaining
/// agent. The result has maximum envy at most 1/3. Uses only eval/cut
/// queries; ties go to the lowest agent index.
ContiguousAllocation run_alg1(const CakeInstance& inst);

}  // namespace fairslice
