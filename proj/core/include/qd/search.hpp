#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qd/poly.hpp"

namespace qd {

// A solution of y^2 = g(x) found by search: x = a/b in lowest terms, y >= 0.
struct SearchHit {
    Rat x;
    Rat y;
};

// Deterministic preference order on x = a/b (both within the height bound):
// smaller height first; within a height h, the pairs (a, h) ordered by |a|
// then positive sign, then the pairs (+-h, b) with b < h ordered by b then
// sign.  Matches the order of the small-height scan.
bool x_search_less(const Rat& lhs, const Rat& rhs);

// All solutions of y^2 = g(x) with x = a/b, max(|a|, b) <= height.  Uses a
// quadratic-residue sieve over a-b windows, so the full default range (10^4)
// costs well under a second.  stop_after_first trades completeness for the
// earliest hit in the preference order.
std::vector<SearchHit> search_y2_solutions(const Poly<Rat>& g, long height, bool stop_after_first,
                                           const std::function<bool(const SearchHit&)>& accept = nullptr);

} // namespace qd
