// ============================================================================
// pta/region.hpp: clock regions and (M+1)-corner points
// ============================================================================
//
// A region over an ordered clock set with common bound M is stored as
//
//   integral[i]  floor of clock i, or kAbove when the clock exceeds M
//   rank[i]      0 if clock i has fractional part 0, otherwise the index
//                1..k of its block in the increasing order of positive
//                fractional parts; kAbove for clocks above M
//
// Ranks are compact (every value 1..k is used), so structural equality is
// region equivalence. A clock equal to M is a point (integral M, rank 0);
// anything strictly greater is kAbove.
//
// Corner points are integer vectors over the same clock positions with
// values in [0, M+1]. A corner of r is an integer point of r's topological
// closure: the vertices of the fractional simplex of the bounded clocks,
// combined with M or M+1 for each clock above M (the closure of x > M is
// x >= M).
//
// ============================================================================

#ifndef PTA_REGION_HPP
#define PTA_REGION_HPP

#include "pta/model.hpp"
#include "pta/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pta {

inline constexpr int kAbove = -1;

class Region {
public:
    /// The region of the all-zero valuation over `size` clocks.
    static Region initial(std::size_t size, int bound);

    /// Builds a region from raw data; throws std::invalid_argument unless the
    /// data is canonical (compact ranks, kAbove in both vectors together,
    /// integral M only with rank 0).
    Region(int bound, std::vector<int> integral, std::vector<int> rank);

    int bound() const { return bound_; }
    std::size_t size() const { return data_.size() / 2; }

    bool above(std::size_t i) const { return data_[i] == kAbove; }
    int integral(std::size_t i) const { return data_[i]; }
    int rank(std::size_t i) const { return data_[size() + i]; }

    /// Number k of blocks with positive fractional part.
    int blocks() const;
    bool all_above() const;
    /// True when some bounded clock has fractional part 0.
    bool has_zero_block() const;

    friend bool operator==(const Region&, const Region&) = default;

    std::size_t hash() const;

    friend Region reset(const Region& r, std::span<const std::size_t> positions);

private:
    Region() = default;
    void compact();

    int bound_ = 0;
    std::vector<std::int16_t> data_;  // integral parts, then ranks
};

struct RegionHash {
    std::size_t operator()(const Region& r) const { return r.hash(); }
};

/// The region containing ν (restricted to the given values) for bound M.
Region region_of(std::span<const Rational> nu, int bound);

/// Time successor; the region itself when every clock is above M.
Region succ(const Region& r);

/// Region of ν[R] for ν in r; `positions` are indices into the clock set.
Region reset(const Region& r, std::span<const std::size_t> positions);

/// Whether every valuation of r satisfies `clock(position) rel c`.
bool satisfies(const Region& r, std::size_t position, Relation rel, std::int64_t c);

/// Delay d > 0 such that ν + d lies in succ(region_of(ν)). Exact when the
/// successor is entered at a single instant, otherwise the simplest rational
/// inside the open window. Returns 0 when every clock is above M.
Rational successor_delay(std::span<const Rational> nu, int bound);

/// Human-readable rendering such as `x=1, 0<y<1, 0<fr(y)<fr(w)<1, v>M`.
std::string to_string(const Region& r, std::span<const std::string> names);

// ── Corner points ──────────────────────────────────────────────────────────

using CornerPoint = std::vector<int>;

/// All corners of r in a fixed order: bounded-part vertex index first,
/// then the M / M+1 choices of the clocks above M.
std::vector<CornerPoint> corners_of(const Region& r);

/// Structural membership test for corners_of(r).
bool is_corner(const Region& r, const CornerPoint& alpha);

/// Per clock: +1 while <= M, saturating at M+1.
CornerPoint succ(const CornerPoint& alpha, int bound);

/// Zeroes the given positions.
CornerPoint reset(const CornerPoint& alpha, std::span<const std::size_t> positions);

std::string to_string(const CornerPoint& alpha);

// ── Classification of a corner w.r.t. the fractional clock ─────────────────

enum class Iota : std::uint8_t { Less, More, Exact };

std::string_view to_string(Iota i);

/// LESS when α(z) = 1 and r does not satisfy z = 1, MORE when α(z) = 0 and
/// r does not satisfy z = 0, EXACT otherwise. Throws std::invalid_argument if
/// α is not a corner of r.
Iota iota(const Region& r, const CornerPoint& alpha, std::size_t z_position);

/// 1 for LESS, 0 otherwise.
inline int offset(Iota i) { return i == Iota::Less ? 1 : 0; }

}  // namespace pta

#endif  // PTA_REGION_HPP
