#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fairslice/rational.hpp"

namespace fairslice {

struct InvalidInstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One constant-density span of a step function. Zero-density spans are
/// represented by absence of a block.
struct Block {
    Rat left;
    Rat right;
    Rat height;  // > 0

    Rat length() const { return right - left; }
    Rat value() const { return height * (right - left); }
};

/// Piecewise constant density on [0,1], normalized so the total mass is 1.
/// Blocks are sorted and non-overlapping (touching is fine).
class PiecewiseConstantValuation {
  public:
    /// Sorts, validates and normalizes. Rejects empty / zero-mass input.
    explicit PiecewiseConstantValuation(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }

    /// True when all positive densities are equal and there is one block.
    bool is_uniform_single_interval() const { return blocks_.size() == 1; }

    /// The single valued interval R_i, when is_uniform_single_interval().
    const Block& uniform_interval() const;

    /// Midpoint of R_i.
    Rat midpoint() const;

    /// Exact integral of the density over [a,b].
    Rat eval(const Rat& a, const Rat& b) const;

    /// Leftmost y >= x with eval(x,y) == alpha, or nullopt when the remaining
    /// mass eval(x,1) is smaller than alpha. On a zero-density plateau the
    /// plateau's left end is returned.
    std::optional<Rat> cut_query(const Rat& x, const Rat& alpha) const;

  private:
    std::vector<Block> blocks_;
};

struct CakeInstance {
    std::vector<PiecewiseConstantValuation> valuations;

    int agents() const { return static_cast<int>(valuations.size()); }
};

/// Strictly increasing positions 0 = g_0 < ... < g_T = 1 containing every
/// block edge of every agent; densities are constant on each cell.
std::vector<Rat> breakpoint_grid(const CakeInstance& inst);

}  // namespace fairslice
