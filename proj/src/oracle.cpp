#include "pqchain/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "pqchain/error.hpp"
#include "pqchain/frontier.hpp"

namespace pqchain {

namespace {

// G(m-1) only matters until m reaches a multiple of p or q, so the three-way
// recursion collapses to the floors of m/p and m/q.
BigNat g_memo(const Params& params, const BigNat& m, std::map<BigNat, BigNat>& memo) {
  if (m == 0) return 0;
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  BigNat via_p = 1 + p * g_memo(params, m / p, memo);
  BigNat via_q = 1 + q * g_memo(params, m / q, memo);
  BigNat g = std::max(via_p, via_q);
  memo.emplace(m, g);
  return g;
}

}  // namespace

BigNat g_recursive(const Params& params, const BigNat& m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  std::map<BigNat, BigNat> memo;
  return g_memo(params, m, memo);
}

FrontierScan g_frontier_scan(const Params& params, const BigNat& m) {
  const FrontierSet z = z_set(params, m);
  FrontierScan out;
  const auto idx = argmax_h(params, z);
  out.g = z.hvals[idx.front()];
  for (auto i : idx) out.argmax.push_back(z.points[i]);
  return out;
}

BigNat g_exhaustive(const Params& params, unsigned long m, unsigned long cap) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  if (m > cap) throw Error(ErrorKind::CapExceeded, "exhaustive search capped at m <= " + std::to_string(cap));
  const unsigned long p = params.p();
  const unsigned long q = params.q();

  struct Part {
    unsigned long value;
    LatticePoint pt;
  };
  std::vector<Part> parts;
  for (unsigned long qb = 1, b = 0; qb <= m; qb *= q, ++b)
    for (unsigned long v = qb, a = 0; v <= m; v *= p, ++a) parts.push_back({v, {a, b}});
  std::sort(parts.begin(), parts.end(), [](const Part& x, const Part& y) { return x.value > y.value; });

  unsigned long best = 0;
  std::vector<LatticePoint> chain, best_chain;
  // Any chain below x weighs less than x p/(p-1); prune when that cannot
  // beat the incumbent.
  std::function<void(std::size_t, unsigned long)> dfs = [&](std::size_t last, unsigned long sum) {
    if (sum > best) {
      best = sum;
      best_chain = chain;
    }
    const unsigned long top = parts[last].value;
    for (std::size_t i = last + 1; i < parts.size(); ++i) {
      const unsigned long v = parts[i].value;
      if (top % v != 0) continue;
      if ((sum * (p - 1) + v * p) <= best * (p - 1)) continue;
      chain.push_back(parts[i].pt);
      dfs(i, sum + v);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const unsigned long v = parts[i].value;
    if (v * p <= best * (p - 1)) break;
    chain.assign(1, parts[i].pt);
    dfs(i, v);
  }

  const LatticePoint head = best_chain.front();
  if (best_chain != heaviest_chain(params, head.a, head.b).parts)
    throw std::logic_error("exhaustive optimum at m=" + std::to_string(m) + " is not a heaviest-chain shape");
  return BigNat(best);
}

}  // namespace pqchain
