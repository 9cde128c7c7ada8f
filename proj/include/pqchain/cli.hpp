#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pqchain/bignat.hpp"

namespace pqchain::cli {

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& text);

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

struct Common {
  long p = 2;
  long q = 3;
  Format format = Format::Text;
};

// mode: fixedpoint, modK, exact (fast path on exact powers) or exact-oracle
// (frontier scan, no fast path).
struct QueryOptions {
  Common common;
  std::string mode = "fixedpoint";
  bool trace = false;
  bool witness = false;
};

// G(m), y_m and z_m queries.
int cmd_g(const std::string& m, const QueryOptions& opts, std::ostream& out);
int cmd_ym(const std::string& m, const QueryOptions& opts, std::ostream& out);
int cmd_zm(const std::string& m, const QueryOptions& opts, std::ostream& out);

int cmd_frontier(const std::string& m, const Common& opts, std::ostream& out);
int cmd_convergents(std::size_t depth, const Common& opts, std::ostream& out);
int cmd_ell(const std::string& max_b, const Common& opts, std::ostream& out);
int cmd_jumps(std::size_t count, const Common& opts, std::ostream& out);
int cmd_repr(unsigned long n, const Common& opts, std::ostream& out);

// SVG of the lattice below the line a log p + b log q = log m with the Z_m
// points and the l staircase.
int cmd_plot(const std::string& m, const Common& opts, std::ostream& out);

struct VerifyOptions {
  Common common;
  unsigned long dense = 0;
  unsigned long sample = 0;
  std::string max = "1000000000";
  unsigned long seed = 1;
};

// Dense sweep (oracles and fast path agree, structural checks) and random
// sample (fast path against the frontier). Exit 0 iff no violations.
int cmd_verify(const VerifyOptions& opts, std::ostream& out);

struct BenchOptions {
  Common common;
  std::vector<unsigned long> exponents{3, 4, 5, 6, 7, 8, 9};
  unsigned long repeats = 20;
};

// Times g_recursive against g_fast at m = 10^k. Exit 1 if an iteration count
// exceeds 2 + floor(log2 log_q m).
int cmd_bench(const BenchOptions& opts, std::ostream& out);

// Maps the in-flight exception to an exit code, printing it to err.
int exit_code_for_current_exception(std::ostream& err);

// Runs fn, mapping library errors to exit codes.
template <typename Fn>
int guarded(Fn&& fn, std::ostream& err) {
  try {
    return fn();
  } catch (...) {
    return exit_code_for_current_exception(err);
  }
}

}  // namespace pqchain::cli
