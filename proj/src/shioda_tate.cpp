#include "nagao/shioda_tate.hpp"

#include <algorithm>
#include <cmath>

namespace nagao {

int rank_S(const FiberConfiguration& config) {
  int r = 2;
  for (const auto& f : config.fibers) r += static_cast<int>(f.n) - 1;
  return r;
}

int rank_S_Gk(const FiberConfiguration& config) {
  int r = 2;
  for (const auto& f : config.fibers) r += static_cast<int>(f.orbits) - 1;
  return r;
}

int trace_on_S(const FiberConfiguration& config, std::uint32_t p) {
  int tr = 2;
  for (const auto& f : config.fibers) tr += static_cast<int>(f.m_rule.eval(p)) - 1;
  return tr;
}

int ns_rank(int rank_mw, const FiberConfiguration& config) { return rank_mw + rank_S_Gk(config); }

Form5Report form5_diagnostic(const NagaoSeries& series, const FiberConfiguration& config) {
  Form5Report report;
  double total = 0.0;
  for (const auto& e : series.entries) {
    if (e.skipped) continue;
    const Rational r = Rational::integer(trace_on_S(config, e.p)) - e.A_star;
    report.residuals.push_back({e.p, r});
    total += r.to_double();
    report.max_abs = std::max(report.max_abs, std::abs(r.to_double()));
  }
  if (!report.residuals.empty()) report.mean = total / static_cast<double>(report.residuals.size());
  return report;
}

}  // namespace nagao
