#include "gcx/greedy.hpp"

#include <algorithm>
#include <limits>

namespace gcx {

std::optional<std::size_t> pick_largest_fitting(
    std::span<const SparseAmount> coins, const BigAmount& w,
    std::size_t w_msd) {
  // Coins descend, so "does not fit" is a prefix property.
  auto it = std::partition_point(
      coins.begin(), coins.end(),
      [&](const SparseAmount& c) { return !fits_under(c, w, w_msd); });
  if (it == coins.end()) return std::nullopt;
  return static_cast<std::size_t>(it - coins.begin());
}

GreedyTrace greedy_set(const BigAmount& W,
                       std::span<const SparseAmount> coins) {
  if (coins.empty()) throw Error("empty coin list");
  for (std::size_t c = 1; c < coins.size(); ++c)
    if (compare(coins[c - 1], coins[c]) != std::strong_ordering::greater)
      throw Error("coin values must be distinct and strictly descending");
  GreedyTrace trace;
  trace.leftover = W;
  while (!trace.leftover.is_zero()) {
    const std::size_t msd = trace.leftover.leading_nonzero();
    auto pick = pick_largest_fitting(coins, trace.leftover, msd);
    if (!pick) break;
    subtract_in_place(trace.leftover, coins[*pick]);
    trace.picks.push_back(*pick);
    trace.remaining.push_back(trace.leftover);
  }
  return trace;
}

std::optional<std::size_t> find_value(std::span<const SparseAmount> coins,
                                      const SparseAmount& v) {
  auto it = std::partition_point(
      coins.begin(), coins.end(), [&](const SparseAmount& c) {
        return compare(c, v) == std::strong_ordering::greater;
      });
  if (it == coins.end() || compare(*it, v) != std::strong_ordering::equal)
    return std::nullopt;
  return static_cast<std::size_t>(it - coins.begin());
}

bool gcc_decision(const BigAmount& W, std::span<const SparseAmount> coins,
                  const SparseAmount& query) {
  auto q = find_value(coins, query);
  if (!q) throw Error("query value is not in the coin set");
  const GreedyTrace trace = greedy_set(W, coins);
  return std::find(trace.picks.begin(), trace.picks.end(), *q) !=
         trace.picks.end();
}

SmallTrace greedy_set(std::uint64_t W, std::span<const std::uint64_t> coins) {
  if (coins.empty()) throw Error("empty coin list");
  for (std::size_t c = 1; c < coins.size(); ++c)
    if (coins[c - 1] <= coins[c])
      throw Error("coin values must be distinct and strictly descending");
  if (coins.back() == 0) throw Error("coin values must be positive");
  SmallTrace trace;
  trace.leftover = W;
  while (trace.leftover > 0) {
    auto it = std::partition_point(
        coins.begin(), coins.end(),
        [&](std::uint64_t c) { return c > trace.leftover; });
    if (it == coins.end()) break;
    trace.leftover -= *it;
    trace.picks.push_back(*it);
  }
  return trace;
}

bool gcc_decision(std::uint64_t W, std::span<const std::uint64_t> coins,
                  std::uint64_t query) {
  if (std::find(coins.begin(), coins.end(), query) == coins.end())
    throw Error("query value is not in the coin set");
  const SmallTrace trace = greedy_set(W, coins);
  return std::find(trace.picks.begin(), trace.picks.end(), query) !=
         trace.picks.end();
}

DpResult optimal_dp(std::uint64_t W, std::span<const std::uint64_t> coins) {
  if (std::find(coins.begin(), coins.end(), std::uint64_t{1}) == coins.end())
    throw Error("the DP oracle requires a coin of value 1");
  if (W > 10'000'000)
    throw Error("the DP oracle tabulates every amount up to W; " +
                std::to_string(W) + " is past its intended range");
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> best(W + 1, kInf);
  std::vector<std::uint64_t> from(W + 1, 0);
  best[0] = 0;
  for (std::uint64_t w = 1; w <= W; ++w)
    for (std::uint64_t c : coins) {
      if (c == 0 || c > w || best[w - c] == kInf) continue;
      if (best[w - c] + 1 < best[w]) {
        best[w] = best[w - c] + 1;
        from[w] = c;
      }
    }
  DpResult r;
  r.count = best[W];
  for (std::uint64_t w = W; w > 0; w -= from[w]) r.witness.push_back(from[w]);
  std::sort(r.witness.begin(), r.witness.end(), std::greater<>());
  return r;
}

}  // namespace gcx
