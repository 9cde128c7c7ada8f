#include "pqchain/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pqchain/contfrac.hpp"
#include "pqchain/core.hpp"
#include "pqchain/ell.hpp"
#include "pqchain/error.hpp"
#include "pqchain/fastalg.hpp"
#include "pqchain/frontier.hpp"
#include "pqchain/oracle.hpp"

namespace pqchain::cli {

using nlohmann::json;

Format parse_format(const std::string& text) {
  if (text == "text") return Format::Text;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw Error(ErrorKind::OutOfRange, "unknown format '" + text + "'");
}

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::OutOfRange:
      case ErrorKind::Dependent: return kExitInvalid;
      case ErrorKind::CapExceeded:
      case ErrorKind::BudgetExceeded:
      case ErrorKind::PrecisionEscalationFailed: return kExitBudget;
    }
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

namespace {

std::string pt_str(LatticePoint pt) { return "(" + std::to_string(pt.a) + "," + std::to_string(pt.b) + ")"; }

BigNat parse_m(const std::string& text) {
  BigNat m = parse_bignat(text);
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  return m;
}

json point_json(const Params& params, LatticePoint pt) {
  return {{"a", pt.a}, {"b", pt.b}, {"value", part_value(params, pt).get_str()}};
}

struct Query {
  LatticePoint point;
  bool has_run = false;
  FastResult run;
  unsigned long B = 0;
};

Query run_query(ConvergentTable& table, const BigNat& m, const std::string& mode, bool want_y) {
  const Params& params = table.params();
  Query out;
  if (mode == "exact-oracle") {
    out.point = want_y ? y_min(params, m) : z_max(params, m);
    return out;
  }
  FastOptions fo;
  fo.mode = parse_fast_mode(mode);
  out.B = want_y ? m_ell(table, m) : floor_log(params.q(), m);
  out.run = run_fast(table, m, out.B, fo);
  out.has_run = true;
  out.point = zeta(params, m, out.run.b);
  return out;
}

void print_trace_text(const Params& params, const BigNat& m, const Query& qr, const std::string& mode,
                      std::ostream& out) {
  if (!qr.has_run) {
    out << "trace: not available in exact-oracle mode\n";
    return;
  }
  const auto& run = qr.run;
  out << "mode " << mode << ", B = " << qr.B << ", iterations " << run.iterations << " (bound "
      << iteration_bound(params, m) << "), comparisons " << run.stats.comparisons << ", fallbacks "
      << run.stats.fallbacks << "\n";
  out << std::left << std::setw(5) << "i" << std::setw(10) << "b_i" << std::setw(10) << "d_i" << std::setw(12)
      << "kind" << "level\n";
  unsigned long i = 0, b = 0;
  for (const auto& step : run.trace) {
    for (unsigned long j = 0; j < step.multiplicity; ++j) {
      b += step.d.get_ui();
      out << std::setw(5) << ++i << std::setw(10) << b << std::setw(10) << step.d.get_str() << std::setw(12)
          << to_string(step.kind) << "s=" << step.s;
      if (step.kind == StepKind::Mediant) out << " t=" << step.t;
      out << "\n";
    }
  }
  out << std::right;
}

json trace_json(const Params& params, const BigNat& m, const Query& qr) {
  json steps = json::array();
  unsigned long b = 0;
  for (const auto& step : qr.run.trace)
    for (unsigned long j = 0; j < step.multiplicity; ++j) {
      b += step.d.get_ui();
      steps.push_back({{"b", b}, {"d", step.d.get_str()}, {"kind", to_string(step.kind)}, {"s", step.s}, {"t", step.t}});
    }
  return {{"B", qr.B},
          {"iterations", qr.run.iterations},
          {"bound", iteration_bound(params, m)},
          {"comparisons", qr.run.stats.comparisons},
          {"fallbacks", qr.run.stats.fallbacks},
          {"steps", steps}};
}

int point_command(const std::string& m_text, const QueryOptions& opts, std::ostream& out, bool want_y,
                  bool want_g) {
  const Params params = validate_params(opts.common.p, opts.common.q);
  const BigNat m = parse_m(m_text);
  ConvergentTable table(params, 4);
  const Query qr = run_query(table, m, opts.mode, want_y);
  const BigNat g = h(params, qr.point);
  const ChainPartition chain = heaviest_chain(params, qr.point.a, qr.point.b);

  if (opts.common.format == Format::Json) {
    json j = {{"m", m.get_str()}, {"p", params.p()}, {"q", params.q()}, {"mode", opts.mode}};
    if (want_g) j["G"] = g.get_str();
    j[want_y ? "y" : "z"] = point_json(params, qr.point);
    if (opts.witness) {
      json parts = json::array();
      for (auto pt : chain.parts) parts.push_back(point_json(params, pt));
      j["witness"] = {{"parts", parts}, {"weight", weight(params, chain).get_str()}};
    }
    if (opts.trace && qr.has_run) j["trace"] = trace_json(params, m, qr);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (opts.common.format == Format::Csv) {
    out << (want_g ? "m,G,a,b,value\n" : "m,a,b,value\n");
    out << m.get_str() << ",";
    if (want_g) out << g.get_str() << ",";
    out << qr.point.a << "," << qr.point.b << "," << part_value(params, qr.point).get_str() << "\n";
    return kExitOk;
  }
  if (want_g) out << g.get_str() << "\n";
  else out << part_value(params, qr.point).get_str() << " " << pt_str(qr.point) << "\n";
  if (opts.witness) {
    out << "witness:";
    for (const auto& v : chain.values(params)) out << " " << v.get_str();
    out << "\nexponents:";
    for (auto pt : chain.parts) out << " " << pt_str(pt);
    out << "\nweight: " << weight(params, chain).get_str() << "\n";
  }
  if (opts.trace) print_trace_text(params, m, qr, opts.mode, out);
  return kExitOk;
}

}  // namespace

int cmd_g(const std::string& m, const QueryOptions& opts, std::ostream& out) {
  return point_command(m, opts, out, true, true);
}

int cmd_ym(const std::string& m, const QueryOptions& opts, std::ostream& out) {
  return point_command(m, opts, out, true, false);
}

int cmd_zm(const std::string& m, const QueryOptions& opts, std::ostream& out) {
  return point_command(m, opts, out, false, false);
}

int cmd_frontier(const std::string& m_text, const Common& opts, std::ostream& out) {
  const Params params = validate_params(opts.p, opts.q);
  const BigNat m = parse_m(m_text);
  const FrontierSet z = z_set(params, m);
  const auto best = argmax_h(params, z);
  auto is_max = [&](std::size_t i) { return std::find(best.begin(), best.end(), i) != best.end(); };

  switch (opts.format) {
    case Format::Json: {
      json rows = json::array();
      for (std::size_t i = 0; i < z.size(); ++i)
        rows.push_back({{"a", z.points[i].a}, {"b", z.points[i].b}, {"value", z.values[i].get_str()},
                        {"h", z.hvals[i].get_str()}});
      json j = {{"m", m.get_str()}, {"p", params.p()}, {"q", params.q()}, {"rows", rows}, {"max_index", best.front()}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "a,b,value,h,max\n";
      for (std::size_t i = 0; i < z.size(); ++i)
        out << z.points[i].a << "," << z.points[i].b << "," << z.values[i].get_str() << "," << z.hvals[i].get_str()
            << "," << (is_max(i) ? 1 : 0) << "\n";
      break;
    case Format::Text: {
      std::size_t wv = 7, wh = 6;
      for (std::size_t i = 0; i < z.size(); ++i) {
        wv = std::max(wv, z.values[i].get_str().size());
        wh = std::max(wh, z.hvals[i].get_str().size());
      }
      out << "Z_" << m.get_str() << " for (p,q) = (" << params.p() << "," << params.q() << ")\n";
      out << "  " << std::left << std::setw(10) << "(a,b)" << std::right << std::setw(wv + 2) << "p^a q^b"
          << std::setw(wh + 2) << "h(a,b)" << "\n";
      for (std::size_t i = 0; i < z.size(); ++i)
        out << (is_max(i) ? "* " : "  ") << std::left << std::setw(10) << pt_str(z.points[i]) << std::right
            << std::setw(wv + 2) << z.values[i].get_str() << std::setw(wh + 2) << z.hvals[i].get_str() << "\n";
      out << "G(" << m.get_str() << ") = " << z.hvals[best.front()].get_str() << "\n";
      break;
    }
  }
  return kExitOk;
}

int cmd_convergents(std::size_t depth, const Common& opts, std::ostream& out) {
  const Params params = validate_params(opts.p, opts.q);
  if (depth < 1) throw Error(ErrorKind::OutOfRange, "depth must be >= 1");
  ConvergentTable table(params, depth);
  const auto stream = below_stream(table);
  switch (opts.format) {
    case Format::Json: {
      json conv = json::array(), below = json::array();
      for (std::size_t i = 0; i < depth; ++i)
        conv.push_back({{"i", i}, {"a", table.a(i)}, {"h", table.h(i).get_str()}, {"k", table.k(i).get_str()},
                        {"eps", table.eps(i).to_string(17)}});
      for (const auto& t : stream)
        below.push_back({{"H", t.H.get_str()}, {"K", t.K.get_str()}, {"s", t.s}, {"t", t.t}});
      out << json{{"p", params.p()}, {"q", params.q()}, {"convergents", conv}, {"below", below}}.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "i,a,h,k,eps\n";
      for (std::size_t i = 0; i < depth; ++i)
        out << i << "," << table.a(i) << "," << table.h(i).get_str() << "," << table.k(i).get_str() << ","
            << table.eps(i).to_string(17) << "\n";
      out << "\nH,K,s,t\n";
      for (const auto& t : stream) out << t.H.get_str() << "," << t.K.get_str() << "," << t.s << "," << t.t << "\n";
      break;
    case Format::Text:
      out << std::setw(4) << "i" << std::setw(8) << "a_i" << std::setw(14) << "h_i" << std::setw(14) << "k_i"
          << "  eps_i\n";
      for (std::size_t i = 0; i < depth; ++i)
        out << std::setw(4) << i << std::setw(8) << table.a(i) << std::setw(14) << table.h(i).get_str()
            << std::setw(14) << table.k(i).get_str() << "  " << table.eps(i).to_string(12) << "\n";
      out << "\nbelow stream (H_n/K_n):";
      for (const auto& t : stream) out << " " << t.H.get_str() << "/" << t.K.get_str();
      out << "\n";
      break;
  }
  return kExitOk;
}

int cmd_ell(const std::string& max_text, const Common& opts, std::ostream& out) {
  const Params params = validate_params(opts.p, opts.q);
  const BigNat max_b = parse_bignat(max_text);
  if (!max_b.fits_ulong_p() || max_b > 1'000'000) throw Error(ErrorKind::OutOfRange, "--max must be <= 1000000");
  ConvergentTable table(params, 4);
  const EllTable ell(table, max_b);
  const unsigned long n = max_b.get_ui();
  json rows = json::array();
  if (opts.format == Format::Csv) out << "b,ell,jump\n";
  if (opts.format == Format::Text) out << std::setw(8) << "b" << std::setw(8) << "l_b" << "\n";
  for (unsigned long b = 0; b <= n; ++b) {
    const unsigned long v = ell.value_at(BigNat(b));
    const bool jump = ell.is_jump(BigNat(b));
    if (opts.format == Format::Json) rows.push_back({{"b", b}, {"ell", v}, {"jump", jump}});
    else if (opts.format == Format::Csv) out << b << "," << v << "," << (jump ? 1 : 0) << "\n";
    else out << std::setw(8) << b << std::setw(8) << v << (jump ? "  jump" : "") << "\n";
  }
  if (opts.format == Format::Json)
    out << json{{"p", params.p()}, {"q", params.q()}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_jumps(std::size_t count, const Common& opts, std::ostream& out) {
  const Params params = validate_params(opts.p, opts.q);
  if (count < 1) throw Error(ErrorKind::OutOfRange, "count must be >= 1");
  ConvergentTable table(params, 4);
  const auto jumps = jump_indices(table, count);
  auto witness = [&](const Jump& j) {
    std::string w = "k_" + std::to_string(2 * j.s);
    if (j.t > 0) w += " + " + std::to_string(j.t) + " k_" + std::to_string(2 * j.s + 1);
    return w;
  };
  switch (opts.format) {
    case Format::Json: {
      json rows = json::array();
      for (const auto& j : jumps)
        rows.push_back({{"j", j.index.get_str()}, {"ell", j.value}, {"s", j.s}, {"t", j.t}, {"witness", witness(j)}});
      out << json{{"p", params.p()}, {"q", params.q()}, {"rows", rows}}.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "j,ell,s,t\n";
      for (const auto& j : jumps) out << j.index.get_str() << "," << j.value << "," << j.s << "," << j.t << "\n";
      break;
    case Format::Text:
      out << std::setw(4) << "k" << std::setw(12) << "j_k" << std::setw(8) << "l_j" << "  K_n\n";
      for (std::size_t i = 0; i < jumps.size(); ++i)
        out << std::setw(4) << i << std::setw(12) << jumps[i].index.get_str() << std::setw(8) << jumps[i].value
            << "  " << witness(jumps[i]) << "\n";
      break;
  }
  return kExitOk;
}

int cmd_repr(unsigned long n, const Common& opts, std::ostream& out) {
  const Params params = validate_params(opts.p, opts.q);
  ConvergentTable table(params, 4);
  const auto rep = kn_representation(table, n);
  switch (opts.format) {
    case Format::Json: {
      json terms = json::array();
      for (const auto& [k, c] : rep) terms.push_back({{"K", k.get_str()}, {"multiplicity", c}});
      out << json{{"N", n}, {"p", params.p()}, {"q", params.q()}, {"terms", terms}}.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "K,multiplicity\n";
      for (const auto& [k, c] : rep) out << k.get_str() << "," << c << "\n";
      break;
    case Format::Text: {
      out << n << " =";
      bool first = true;
      for (auto it = rep.rbegin(); it != rep.rend(); ++it) {
        out << (first ? " " : " + ");
        if (it->second > 1) out << it->second << "*";
        out << it->first.get_str();
        first = false;
      }
      out << "\n";
      break;
    }
  }
  return kExitOk;
}

int cmd_plot(const std::string& m_text, const Common& opts, std::ostream& out) {
  const Params params = validate_params(opts.p, opts.q);
  const BigNat m = parse_m(m_text);
  const FrontierSet z = z_set(params, m);
  const unsigned long lq = z.size() - 1;
  if (lq > 400) throw Error(ErrorKind::OutOfRange, "plot supports floor(log_q m) <= 400");
  ConvergentTable table(params, 4);
  const double lp = std::log(static_cast<double>(params.p()));
  const double rho = std::log(static_cast<double>(params.q())) / lp;
  const double L = log_base_p(params, m, 64).mid();
  const double unit = 40.0, margin = 40.0;
  const double max_b = std::max(1.0, L / rho + 0.5);
  const double max_a = std::max(1.0, L + 0.5);
  const double width = 2 * margin + unit * max_b, height = 2 * margin + unit * max_a;
  auto X = [&](double b) { return margin + unit * b; };
  auto Y = [&](double a) { return height - margin - unit * a; };

  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
  for (unsigned long b = 0; b <= static_cast<unsigned long>(max_b); ++b)
    out << "<line x1=\"" << X(b) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(b) << "\" y2=\"" << Y(max_a) << "\"/>\n";
  for (unsigned long a = 0; a <= static_cast<unsigned long>(max_a); ++a)
    out << "<line x1=\"" << X(0) << "\" y1=\"" << Y(a) << "\" x2=\"" << X(max_b) << "\" y2=\"" << Y(a) << "\"/>\n";
  out << "</g>\n";
  out << "<text x=\"" << X(max_b) << "\" y=\"" << Y(0) + 20 << "\" font-size=\"12\">b</text>\n";
  out << "<text x=\"" << X(0) - 20 << "\" y=\"" << Y(max_a) << "\" font-size=\"12\">a</text>\n";
  if (L > 0)
    out << "<line class=\"boundary\" x1=\"" << X(0) << "\" y1=\"" << Y(L) << "\" x2=\"" << X(L / rho) << "\" y2=\""
        << Y(0) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  std::ostringstream stairs;
  for (unsigned long b = 0; b <= lq; ++b) {
    const double v = static_cast<double>(ell_value(table, BigNat(b)));
    if (b > 0) stairs << " " << X(b) << "," << Y(static_cast<double>(ell_value(table, BigNat(b - 1))));
    stairs << (b ? " " : "") << X(b) << "," << Y(v);
  }
  if (lq > 0)
    out << "<polyline class=\"ell\" points=\"" << stairs.str()
        << "\" fill=\"none\" stroke=\"#c00\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";

  const auto best = argmax_h(params, z);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const bool top = std::find(best.begin(), best.end(), i) != best.end();
    out << "<circle class=\"zm\" data-a=\"" << z.points[i].a << "\" data-b=\"" << z.points[i].b << "\" cx=\""
        << X(z.points[i].b) << "\" cy=\"" << Y(z.points[i].a) << "\" r=\"5\" fill=\"" << (top ? "#06c" : "black")
        << "\"><title>" << z.values[i].get_str() << "</title></circle>\n";
  }
  out << "</svg>\n";
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
  const Params params = validate_params(opts.common.p, opts.common.q);
  ConvergentTable table(params, 4);
  const unsigned long p = params.p();
  std::vector<std::string> violations;
  auto fail = [&](const BigNat& m, const std::string& what) { violations.push_back("m=" + m.get_str() + ": " + what); };

  auto structural = [&](const BigNat& m, const FrontierScan& scan) {
    if (scan.argmax.empty() || scan.argmax.size() > 2) fail(m, "|Y_m| not in {1,2}");
    const LatticePoint zm = z_max(params, m);
    for (auto pt : scan.argmax)
      if (pt.b > zm.b) fail(m, "Y_m point above b(z_m)");
    const BigNat y = part_value(params, y_min(params, m));
    if (!(scan.g * (p - 1) < y * p)) fail(m, "G(m) >= y_m p/(p-1)");
    FastOptions fo;
    const auto run = run_fast(table, m, floor_log(params.q(), m), fo);
    if (run.iterations > iteration_bound(params, m)) fail(m, "iteration bound exceeded");
  };

  for (unsigned long i = 1; i <= opts.dense; ++i) {
    const BigNat m(i);
    const FrontierScan scan = g_frontier_scan(params, m);
    const BigNat rec = g_recursive(params, m);
    const BigNat fast = g_fast(table, m);
    if (rec != scan.g) fail(m, "g_recursive " + rec.get_str() + " != frontier " + scan.g.get_str());
    if (fast != scan.g) fail(m, "g_fast " + fast.get_str() + " != frontier " + scan.g.get_str());
    if (i <= kExhaustiveCap) {
      const BigNat ex = g_exhaustive(params, i);
      if (ex != scan.g) fail(m, "g_exhaustive " + ex.get_str() + " != frontier " + scan.g.get_str());
    }
    structural(m, scan);
  }
  out << "dense: m = 1.." << opts.dense << " checked\n";

  if (opts.sample > 0) {
    const BigNat max = parse_m(opts.max);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(opts.seed);
    for (unsigned long i = 0; i < opts.sample; ++i) {
      const BigNat m = BigNat(rng.get_z_range(max)) + 1;
      const FrontierScan scan = g_frontier_scan(params, m);
      if (g_fast(table, m) != scan.g) fail(m, "g_fast != frontier");
      if (y_fast(table, m) != y_min(params, m)) fail(m, "y_fast != y_min");
      if (z_fast(table, m) != z_max(params, m)) fail(m, "z_fast != z_max");
      structural(m, scan);
    }
    out << "sample: " << opts.sample << " values in [1, " << max.get_str() << "] checked (seed " << opts.seed
        << ")\n";
  }

  const std::size_t shown = std::min<std::size_t>(violations.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) out << "violation: " << violations[i] << "\n";
  out << violations.size() << " violations\n" << (violations.empty() ? "PASS" : "FAIL") << "\n";
  return violations.empty() ? kExitOk : kExitFailure;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  const Params params = validate_params(opts.common.p, opts.common.q);
  ConvergentTable table(params, 4);
  const unsigned long reps = std::max<unsigned long>(1, opts.repeats);
  bool ok = true;
  json rows = json::array();
  if (opts.common.format == Format::Text)
    out << std::setw(8) << "m" << std::setw(22) << "G(m)" << std::setw(14) << "recursive_us" << std::setw(12)
        << "fast_us" << std::setw(8) << "iters" << std::setw(8) << "bound" << "\n";
  else if (opts.common.format == Format::Csv)
    out << "k,G,recursive_us,fast_us,iterations,bound\n";
  for (unsigned long k : opts.exponents) {
    const BigNat m = pow_ui(10, k);
    BigNat g_rec, g_f;
    auto t0 = clock::now();
    for (unsigned long r = 0; r < reps; ++r) g_rec = g_recursive(params, m);
    auto t1 = clock::now();
    for (unsigned long r = 0; r < reps; ++r) g_f = g_fast(table, m);
    auto t2 = clock::now();
    const double rec_us = std::chrono::duration<double, std::micro>(t1 - t0).count() / reps;
    const double fast_us = std::chrono::duration<double, std::micro>(t2 - t1).count() / reps;
    const unsigned long iters =
        std::max(run_fast(table, m, floor_log(params.q(), m)).iterations, run_fast(table, m, m_ell(table, m)).iterations);
    const unsigned long bound = iteration_bound(params, m);
    if (iters > bound || g_rec != g_f) ok = false;
    switch (opts.common.format) {
      case Format::Json:
        rows.push_back({{"k", k}, {"G", g_f.get_str()}, {"recursive_us", rec_us}, {"fast_us", fast_us},
                        {"iterations", iters}, {"bound", bound}, {"agree", g_rec == g_f}});
        break;
      case Format::Csv:
        out << k << "," << g_f.get_str() << "," << rec_us << "," << fast_us << "," << iters << "," << bound << "\n";
        break;
      case Format::Text:
        out << std::setw(8) << ("1e" + std::to_string(k)) << std::setw(22) << g_f.get_str() << std::setw(14)
            << std::fixed << std::setprecision(1) << rec_us << std::setw(12) << fast_us << std::setw(8) << iters
            << std::setw(8) << bound << (g_rec == g_f ? "" : "  MISMATCH") << "\n";
        break;
    }
  }
  if (opts.common.format == Format::Json)
    out << json{{"p", params.p()}, {"q", params.q()}, {"rows", rows}, {"ok", ok}}.dump(2) << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace pqchain::cli
