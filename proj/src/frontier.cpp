#include "pqchain/frontier.hpp"

#include <algorithm>
#include <set>

#include "pqchain/error.hpp"

namespace pqchain {

namespace {

void require_positive(const BigNat& m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
}

std::set<LatticePoint> as_set(const FrontierSet& z) { return {z.points.begin(), z.points.end()}; }

std::string show(const std::set<LatticePoint>& pts) {
  std::string out = "{";
  for (auto pt : pts) {
    if (out.size() > 1) out += ",";
    out += "(" + std::to_string(pt.a) + "," + std::to_string(pt.b) + ")";
  }
  return out + "}";
}

}  // namespace

LatticePoint zeta(const Params& params, const BigNat& m, unsigned long b) {
  require_positive(m);
  const BigNat qb = pow_ui(params.q(), b);
  if (qb > m) throw Error(ErrorKind::OutOfRange, "b exceeds floor(log_q m)");
  return {floor_log(params.p(), m / qb), b};
}

FrontierSet z_set(const Params& params, const BigNat& m) {
  require_positive(m);
  FrontierSet z;
  z.m = m;
  BigNat qb = 1;
  for (unsigned long b = 0; qb <= m; ++b, qb *= params.q()) {
    const unsigned long a = floor_log(params.p(), m / qb);
    z.points.push_back({a, b});
    z.values.push_back(pow_ui(params.p(), a) * qb);
    z.hvals.push_back(h(params, a, b));
  }
  return z;
}

LatticePoint z_max(const Params& params, const BigNat& m) {
  const FrontierSet z = z_set(params, m);
  const auto it = std::max_element(z.values.begin(), z.values.end());
  return z.points[static_cast<std::size_t>(it - z.values.begin())];
}

std::vector<std::size_t> argmax_h(const Params& params, const FrontierSet& set) {
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (best.empty()) {
      best.push_back(i);
      continue;
    }
    const auto c = h_compare(params, set.points[i], set.points[best.front()]);
    if (c > 0) best.assign(1, i);
    else if (c == 0) best.push_back(i);
  }
  return best;
}

std::vector<LatticePoint> y_set(const Params& params, const BigNat& m) {
  const FrontierSet z = z_set(params, m);
  std::vector<LatticePoint> out;
  for (auto i : argmax_h(params, z)) out.push_back(z.points[i]);
  return out;
}

LatticePoint y_min(const Params& params, const BigNat& m) {
  const FrontierSet z = z_set(params, m);
  const auto idx = argmax_h(params, z);
  std::size_t best = idx.front();
  for (auto i : idx)
    if (z.values[i] < z.values[best]) best = i;
  return z.points[best];
}

RecurrenceReport check_z_recurrences(const Params& params, const BigNat& m) {
  require_positive(m);
  RecurrenceReport report;
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const FrontierSet zm = z_set(params, m);

  std::set<LatticePoint> want_q;
  for (auto pt : zm.points) want_q.insert({pt.a, pt.b + 1});
  want_q.insert({floor_log(p, m * q), 0});
  const auto got_q = as_set(z_set(params, m * q));
  if (got_q != want_q) {
    report.qm_ok = false;
    report.violations.push_back("Z_qm: expected " + show(want_q) + " got " + show(got_q));
  }

  std::set<LatticePoint> want_p;
  for (auto pt : zm.points) want_p.insert({pt.a + 1, pt.b});
  const unsigned long top = floor_log(q, m * p);
  if (top != floor_log(q, m)) want_p.insert({0, top});
  const auto got_p = as_set(z_set(params, m * p));
  if (got_p != want_p) {
    report.pm_ok = false;
    report.violations.push_back("Z_pm: expected " + show(want_p) + " got " + show(got_p));
  }
  return report;
}

}  // namespace pqchain
