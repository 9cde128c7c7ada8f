#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pqchain/cli.hpp"

using namespace pqchain::cli;

namespace {

void add_common(CLI::App* cmd, Common& c, std::string& format) {
  cmd->add_option("-p", c.p, "smaller base")->capture_default_str();
  cmd->add_option("-q", c.q, "larger base")->capture_default_str();
  cmd->add_option("--format", format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heaviest strictly chained (p,q)-ary partitions"};
  app.require_subcommand(1);

  std::string m = "1", format = "text", output, mode = "fixedpoint";
  Common common;
  QueryOptions query;
  VerifyOptions verify;
  BenchOptions bench;
  std::size_t depth = 12, count = 5;
  unsigned long n = 1;
  std::string max_b = "20";

  auto query_cmd = [&](const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("m", m, "bound on the parts (decimal, or 1eN)")->required();
    add_common(cmd, query.common, format);
    cmd->add_option("--mode", mode, "fixedpoint, modK, exact or exact-oracle")
        ->check(CLI::IsMember({"fixedpoint", "modK", "exact", "exact-oracle"}))
        ->capture_default_str();
    cmd->add_flag("--trace", query.trace, "print the b_i iteration");
    cmd->add_flag("--witness", query.witness, "print the heaviest chain");
    cmd->add_option("-o", output, "write to FILE instead of stdout");
    return cmd;
  };
  auto* g = query_cmd("g", "maximal weight G(m)");
  auto* ym = query_cmd("ym", "y_m, the smallest greatest part of a heaviest chain");
  auto* zm = query_cmd("zm", "z_m, the largest maximal element below m");

  auto* frontier = app.add_subcommand("frontier", "the points of Z_m with their h values");
  frontier->add_option("m", m)->required();
  add_common(frontier, common, format);
  frontier->add_option("-o", output);

  auto* conv = app.add_subcommand("convergents", "continued fraction of log q / log p");
  conv->add_option("--depth", depth)->capture_default_str();
  add_common(conv, common, format);
  conv->add_option("-o", output);

  auto* ell = app.add_subcommand("ell", "the boundary sequence l_b for b <= max");
  ell->add_option("--max", max_b)->capture_default_str();
  add_common(ell, common, format);
  ell->add_option("-o", output);

  auto* jumps = app.add_subcommand("jumps", "jump indices of l");
  jumps->add_option("--count", count)->capture_default_str();
  add_common(jumps, common, format);
  jumps->add_option("-o", output);

  auto* repr = app.add_subcommand("repr", "N as a sum of below-stream terms");
  repr->add_option("N", n)->required();
  add_common(repr, common, format);
  repr->add_option("-o", output);

  auto* plot = app.add_subcommand("plot", "SVG of Z_m and the l staircase");
  plot->add_option("m", m)->required();
  add_common(plot, common, format);
  plot->add_option("-o", output, "SVG file");

  auto* ver = app.add_subcommand("verify", "cross-check fast path against the oracles");
  ver->add_option("--dense", verify.dense, "check every m up to N");
  ver->add_option("--sample", verify.sample, "number of random m");
  ver->add_option("--max", verify.max, "upper end for random m")->capture_default_str();
  ver->add_option("--seed", verify.seed)->capture_default_str();
  add_common(ver, verify.common, format);

  auto* ben = app.add_subcommand("bench", "time the recursion against the fast path at m = 10^k");
  ben->add_option("--sizes", bench.exponents, "exponents k")->delimiter(',');
  ben->add_option("--repeats", bench.repeats)->capture_default_str();
  add_common(ben, bench.common, format);

  CLI11_PARSE(app, argc, argv);

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "error: cannot open " << output << "\n";
      return kExitFailure;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file;

  return guarded(
      [&]() -> int {
        query.mode = mode;
        for (Common* c : {&common, &query.common, &verify.common, &bench.common}) c->format = parse_format(format);
        if (*g) return cmd_g(m, query, out);
        if (*ym) return cmd_ym(m, query, out);
        if (*zm) return cmd_zm(m, query, out);
        if (*frontier) return cmd_frontier(m, common, out);
        if (*conv) return cmd_convergents(depth, common, out);
        if (*ell) return cmd_ell(max_b, common, out);
        if (*jumps) return cmd_jumps(count, common, out);
        if (*repr) return cmd_repr(n, common, out);
        if (*plot) return cmd_plot(m, common, out);
        if (*ver) return cmd_verify(verify, out);
        if (*ben) return cmd_bench(bench, out);
        return kExitFailure;
      },
      std::cerr);
}
