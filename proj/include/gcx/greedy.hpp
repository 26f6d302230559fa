#pragma once

// The greedy change-making recurrence over a descending sorted coin list,
// its membership decision, and a pseudo-polynomial DP optimum used as an
// oracle on small generic instances.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcx/encoding.hpp"

namespace gcx {

// Index of the largest coin <= w, by binary search over the strictly
// descending value list; nullopt when even the smallest coin exceeds w.
// w_msd must equal w.leading_nonzero().
std::optional<std::size_t> pick_largest_fitting(
    std::span<const SparseAmount> coins, const BigAmount& w,
    std::size_t w_msd);

struct GreedyTrace {
  std::vector<std::size_t> picks;     // coin indices, in selection order
  std::vector<BigAmount> remaining;   // after each pick
  BigAmount leftover;                 // final remaining amount

  std::size_t size() const { return picks.size(); }
};

// Repeatedly takes the largest coin not exceeding the remaining amount.
// Stops at zero or when no coin fits (the leftover reports which).
GreedyTrace greedy_set(const BigAmount& W, std::span<const SparseAmount> coins);

// Whether the coin with the query value is ever selected. The query value
// must be present in the coin list.
bool gcc_decision(const BigAmount& W, std::span<const SparseAmount> coins,
                  const SparseAmount& query);

// Position of a value in the descending list, if present.
std::optional<std::size_t> find_value(std::span<const SparseAmount> coins,
                                      const SparseAmount& v);

// Small-integer variant for generic experiments.
struct SmallTrace {
  std::vector<std::uint64_t> picks;
  std::uint64_t leftover = 0;
};

SmallTrace greedy_set(std::uint64_t W, std::span<const std::uint64_t> coins);
bool gcc_decision(std::uint64_t W, std::span<const std::uint64_t> coins,
                  std::uint64_t query);

struct DpResult {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> witness;  // one optimal multiset, descending
};

// Minimum number of coins summing exactly to W. Requires a coin of value 1
// (so every amount is feasible); W = 0 yields an empty solution.
DpResult optimal_dp(std::uint64_t W, std::span<const std::uint64_t> coins);

}  // namespace gcx
