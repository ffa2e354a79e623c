#include "fairslice/valuation.hpp"

#include <algorithm>

namespace fairslice {

PiecewiseConstantValuation::PiecewiseConstantValuation(std::vector<Block> blocks)
    : blocks_(std::move(blocks)) {
    std::erase_if(blocks_, [](const Block& b) { return b.height == 0; });
    if (blocks_.empty()) throw InvalidInstanceError("valuation has no mass");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.left < b.left; });
    Rat total = 0;
    for (size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        if (b.left < 0 || b.right > 1 || !(b.left < b.right) || b.height <= 0)
            throw InvalidInstanceError("malformed block");
        if (i > 0 && blocks_[i - 1].right > b.left)
            throw InvalidInstanceError("overlapping blocks in one valuation");
        total += b.value();
    }
    if (total == 0) throw InvalidInstanceError("valuation has no mass");
    if (total != 1)
        for (Block& b : blocks_) b.height /= total;
}

const Block& PiecewiseConstantValuation::uniform_interval() const {
    if (!is_uniform_single_interval())
        throw InvalidInstanceError("valuation is not uniform over a single interval");
    return blocks_.front();
}

Rat PiecewiseConstantValuation::midpoint() const {
    const Block& b = uniform_interval();
    return (b.left + b.right) / 2;
}

Rat PiecewiseConstantValuation::eval(const Rat& a, const Rat& b) const {
    if (a < 0 || b > 1 || a > b) throw std::out_of_range("eval bounds outside 0 <= a <= b <= 1");
    Rat sum = 0;
    for (const Block& blk : blocks_) {
        Rat lo = std::max(a, blk.left);
        Rat hi = std::min(b, blk.right);
        if (lo < hi) sum += blk.height * (hi - lo);
    }
    return sum;
}

std::optional<Rat> PiecewiseConstantValuation::cut_query(const Rat& x, const Rat& alpha) const {
    if (x < 0 || x > 1) throw std::out_of_range("cut query start outside [0,1]");
    if (alpha < 0) throw std::out_of_range("cut query with negative target");
    if (alpha == 0) return x;
    Rat acc = 0;
    for (const Block& blk : blocks_) {
        if (blk.right <= x) continue;
        Rat lo = std::max(x, blk.left);
        Rat gain = blk.height * (blk.right - lo);
        if (acc + gain >= alpha) return lo + (alpha - acc) / blk.height;
        acc += gain;
    }
    return std::nullopt;
}

std::vector<Rat> breakpoint_grid(const CakeInstance& inst) {
    std::vector<Rat> pts{Rat(0), Rat(1)};
    for (const auto& v : inst.valuations)
        for (const Block& b : v.blocks()) {
            pts.push_back(b.left);
            pts.push_back(b.right);
        }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace fairslice
