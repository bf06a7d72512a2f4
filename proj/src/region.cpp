// ============================================================================
// region.cpp: region algebra and corner points
// ============================================================================

#include "pta/region.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pta {

namespace {

void check_bound(int bound) {
    if (bound < 0 || bound >= std::numeric_limits<std::int16_t>::max() - 1) {
        throw std::invalid_argument("region bound out of range: " + std::to_string(bound));
    }
}

}  // namespace

Region Region::initial(std::size_t size, int bound) {
    check_bound(bound);
    Region r;
    r.bound_ = bound;
    r.data_.assign(2 * size, 0);
    return r;
}

Region::Region(int bound, std::vector<int> integral, std::vector<int> rank) : bound_(bound) {
    check_bound(bound);
    if (integral.size() != rank.size()) throw std::invalid_argument("region: size mismatch");
    const std::size_t n = integral.size();
    data_.resize(2 * n);
    int k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool ab = integral[i] == kAbove;
        if (ab != (rank[i] == kAbove)) throw std::invalid_argument("region: inconsistent kAbove");
        if (!ab && (integral[i] < 0 || integral[i] > bound || rank[i] < 0)) {
            throw std::invalid_argument("region: value out of range");
        }
        if (!ab && integral[i] == bound && rank[i] != 0) {
            throw std::invalid_argument("region: clock at M must have zero fraction");
        }
        data_[i] = static_cast<std::int16_t>(integral[i]);
        data_[n + i] = static_cast<std::int16_t>(rank[i]);
        k = std::max(k, rank[i]);
    }
    for (int b = 1; b <= k; ++b) {
        if (std::find(rank.begin(), rank.end(), b) == rank.end()) {
            throw std::invalid_argument("region: ranks are not compact");
        }
    }
}

int Region::blocks() const {
    int k = 0;
    for (std::size_t i = 0; i < size(); ++i) k = std::max(k, rank(i));
    return k;
}

bool Region::all_above() const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (!above(i)) return false;
    }
    return true;
}

bool Region::has_zero_block() const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (!above(i) && rank(i) == 0) return true;
    }
    return false;
}

std::size_t Region::hash() const {
    std::size_t h = static_cast<std::size_t>(bound_) * 0x9e3779b97f4a7c15ULL;
    for (std::int16_t v : data_) {
        h ^= static_cast<std::size_t>(static_cast<std::uint16_t>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) +
             (h >> 2);
    }
    return h;
}

void Region::compact() {
    const std::size_t n = size();
    std::vector<int> used;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank(i) > 0) used.push_back(rank(i));
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (rank(i) > 0) {
            auto pos = std::lower_bound(used.begin(), used.end(), rank(i)) - used.begin();
            data_[n + i] = static_cast<std::int16_t>(pos + 1);
        }
    }
}

Region region_of(std::span<const Rational> nu, int bound) {
    const std::size_t n = nu.size();
    std::vector<int> integral(n, kAbove), rank(n, kAbove);
    std::vector<Rational> fracs;
    for (std::size_t i = 0; i < n; ++i) {
        if (nu[i] < 0) throw std::invalid_argument("region_of: negative clock value");
        if (nu[i] > bound) continue;
        integral[i] = static_cast<int>(floor_of(nu[i]));
        Rational f = frac_of(nu[i]);
        if (f != 0) fracs.push_back(f);
    }
    std::sort(fracs.begin(), fracs.end());
    fracs.erase(std::unique(fracs.begin(), fracs.end()), fracs.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (integral[i] == kAbove) continue;
        Rational f = frac_of(nu[i]);
        rank[i] = f == 0 ? 0
                         : static_cast<int>(std::lower_bound(fracs.begin(), fracs.end(), f) - fracs.begin()) + 1;
    }
    return Region(bound, std::move(integral), std::move(rank));
}

Region succ(const Region& r) {
    const std::size_t n = r.size();
    std::vector<int> integral(n), rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        integral[i] = r.integral(i);
        rank[i] = r.rank(i);
    }
    if (r.has_zero_block()) {
        // Integer clocks open into a new lowest fractional block; those at M leave the bounded range.
        for (std::size_t i = 0; i < n; ++i) {
            if (integral[i] == kAbove) continue;
            if (rank[i] == 0) {
                if (integral[i] == r.bound()) {
                    integral[i] = kAbove;
                    rank[i] = kAbove;
                } else {
                    rank[i] = 1;
                }
            } else {
                rank[i] += 1;
            }
        }
        // Ranks may start at 2 when every integer clock went above M.
        std::vector<int> used;
        for (int v : rank) {
            if (v > 0) used.push_back(v);
        }
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        for (int& v : rank) {
            if (v > 0) v = static_cast<int>(std::lower_bound(used.begin(), used.end(), v) - used.begin()) + 1;
        }
        return Region(r.bound(), std::move(integral), std::move(rank));
    }
    const int k = r.blocks();
    if (k == 0) return r;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == k) {
            integral[i] += 1;
            rank[i] = 0;
        }
    }
    return Region(r.bound(), std::move(integral), std::move(rank));
}

Region reset(const Region& r, std::span<const std::size_t> positions) {
    Region out = r;
    const std::size_t n = r.size();
    for (std::size_t p : positions) {
        if (p >= n) throw std::invalid_argument("reset: position out of range");
        out.data_[p] = 0;
        out.data_[n + p] = 0;
    }
    out.compact();
    return out;
}

bool satisfies(const Region& r, std::size_t position, Relation rel, std::int64_t c) {
    const std::int64_t m = r.bound();
    if (r.above(position)) {
        // Values range over (M, +inf).
        switch (rel) {
            case Relation::Greater:
            case Relation::GreaterEq: return c <= m;
            default: return false;
        }
    }
    const std::int64_t v = r.integral(position);
    if (r.rank(position) == 0) return compare(rel, v, c);
    // Open interval (v, v+1).
    switch (rel) {
        case Relation::Less:
        case Relation::LessEq: return v + 1 <= c;
        case Relation::Equal: return false;
        case Relation::GreaterEq:
        case Relation::Greater: return c <= v;
    }
    return false;
}

Rational successor_delay(std::span<const Rational> nu, int bound) {
    bool any_bounded = false, any_integer = false;
    Rational max_frac = 0;
    for (const auto& v : nu) {
        if (v > bound) continue;
        any_bounded = true;
        Rational f = frac_of(v);
        if (f == 0) {
            any_integer = true;
        } else if (f > max_frac) {
            max_frac = f;
        }
    }
    if (!any_bounded) return Rational(0);
    if (any_integer) return simplest_between(Rational(0), 1 - max_frac);
    return 1 - max_frac;
}

std::string to_string(const Region& r, std::span<const std::string> names) {
    const std::size_t n = r.size();
    auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "c" + std::to_string(i); };
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < n; ++i) {
        if (r.above(i)) continue;
        if (r.rank(i) == 0) {
            parts.push_back(name(i) + "=" + std::to_string(r.integral(i)));
        } else {
            parts.push_back(std::to_string(r.integral(i)) + "<" + name(i) + "<" +
                            std::to_string(r.integral(i) + 1));
        }
    }
    const int k = r.blocks();
    if (k > 0) {
        std::string chain = "0";
        for (int b = 1; b <= k; ++b) {
            chain += "<";
            bool first = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (r.rank(i) != b) continue;
                chain += (first ? "" : "=") + ("fr(" + name(i) + ")");
                first = false;
            }
        }
        chain += "<1";
        parts.push_back(chain);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (r.above(i)) parts.push_back(name(i) + ">M");
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    return out.empty() ? "true" : out;
}

// ============================================================================
// Corner points
// ============================================================================

std::vector<CornerPoint> corners_of(const Region& r) {
    const std::size_t n = r.size();
    const int m = r.bound();
    const int k = r.blocks();
    std::vector<std::size_t> unbounded;
    for (std::size_t i = 0; i < n; ++i) {
        if (r.above(i)) unbounded.push_back(i);
    }
    std::vector<CornerPoint> out;
    for (int j = 0; j <= k; ++j) {
        CornerPoint base(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (r.above(i)) continue;
            base[i] = r.integral(i) + (r.rank(i) > k - j ? 1 : 0);
        }
        const std::size_t combos = std::size_t{1} << unbounded.size();
        for (std::size_t mask = 0; mask < combos; ++mask) {
            CornerPoint alpha = base;
            for (std::size_t u = 0; u < unbounded.size(); ++u) {
                alpha[unbounded[u]] = (mask >> u) & 1 ? m + 1 : m;
            }
            out.push_back(std::move(alpha));
        }
    }
    return out;
}

bool is_corner(const Region& r, const CornerPoint& alpha) {
    const std::size_t n = r.size();
    if (alpha.size() != n) return false;
    const int m = r.bound();
    const int k = r.blocks();
    std::vector<int> lifted(static_cast<std::size_t>(k) + 1, -1);  // per block: 0 floor, 1 ceiling
    for (std::size_t i = 0; i < n; ++i) {
        if (r.above(i)) {
            if (alpha[i] != m && alpha[i] != m + 1) return false;
            continue;
        }
        int delta = alpha[i] - r.integral(i);
        if (r.rank(i) == 0) {
            if (delta != 0) return false;
            continue;
        }
        if (delta != 0 && delta != 1) return false;
        int& slot = lifted[static_cast<std::size_t>(r.rank(i))];
        if (slot == -1) {
            slot = delta;
        } else if (slot != delta) {
            return false;
        }
    }
    // Lifted blocks must be exactly the topmost ones.
    bool seen_lift = false;
    for (int b = 1; b <= k; ++b) {
        if (lifted[static_cast<std::size_t>(b)] == 1) {
            seen_lift = true;
        } else if (seen_lift) {
            return false;
        }
    }
    return true;
}

CornerPoint succ(const CornerPoint& alpha, int bound) {
    CornerPoint out = alpha;
    for (int& v : out) v = v <= bound ? v + 1 : bound + 1;
    return out;
}

CornerPoint reset(const CornerPoint& alpha, std::span<const std::size_t> positions) {
    CornerPoint out = alpha;
    for (std::size_t p : positions) out.at(p) = 0;
    return out;
}

std::string to_string(const CornerPoint& alpha) {
    std::string out = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : "") + std::to_string(alpha[i]);
    return out + ")";
}

std::string_view to_string(Iota i) {
    switch (i) {
        case Iota::Less: return "LESS";
        case Iota::More: return "MORE";
        case Iota::Exact: return "EXACT";
    }
    return "?";
}

Iota iota(const Region& r, const CornerPoint& alpha, std::size_t z_position) {
    if (!is_corner(r, alpha)) throw std::invalid_argument("iota: " + to_string(alpha) + " is not a corner");
    if (alpha[z_position] == 1 && !satisfies(r, z_position, Relation::Equal, 1)) return Iota::Less;
    if (alpha[z_position] == 0 && !satisfies(r, z_position, Relation::Equal, 0)) return Iota::More;
    return Iota::Exact;
}

}  // namespace pta
