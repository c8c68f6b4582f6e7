#pragma once

#include <cstdint>
#include <vector>

#include "nagao/fiber_config.hpp"
#include "nagao/nagao_series.hpp"

namespace nagao {

/// Rank of the subgroup generated by the zero section, a fiber and the
/// non-identity components of singular fibers: 2 + sum (n_c - 1).
int rank_S(const FiberConfiguration& config);

/// Galois-fixed part, counted by component orbits: 2 + sum (orbits_c - 1).
int rank_S_Gk(const FiberConfiguration& config);

/// Trace of Frobenius at p on S: 2 + sum (m_c(p) - 1).
int trace_on_S(const FiberConfiguration& config, std::uint32_t p);

/// Neron-Severi rank over k from the Mordell-Weil rank (modulo trace).
int ns_rank(int rank_mw, const FiberConfiguration& config);

struct Form5Residual {
  std::uint32_t p = 0;
  Rational residual;  // trace_on_S - A*_p, the implied b_p / p
};

/// Diagnostic only: nothing here passes or fails.
struct Form5Report {
  std::vector<Form5Residual> residuals;
  double mean = 0.0;
  double max_abs = 0.0;
};

/// Residuals over the non-skipped entries of a series.
Form5Report form5_diagnostic(const NagaoSeries& series, const FiberConfiguration& config);

}  // namespace nagao
