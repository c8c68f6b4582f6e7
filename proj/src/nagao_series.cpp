#include "nagao/nagao_series.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "nagao/error.hpp"
#include "nagao/fiber_trace.hpp"

namespace nagao {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational operator-(const Rational& a, const Rational& b) {
  std::int64_t l = 0;
  std::int64_t r = 0;
  std::int64_t d = 0;
  if (__builtin_mul_overflow(a.num, b.den, &l) || __builtin_mul_overflow(b.num, a.den, &r) ||
      __builtin_sub_overflow(l, r, &l) || __builtin_mul_overflow(a.den, b.den, &d)) {
    throw DomainError("rational overflow");
  }
  return Rational::make(l, d);
}

Rational operator*(const Rational& a, const Rational& b) {
  std::int64_t n = 0;
  std::int64_t d = 0;
  if (__builtin_mul_overflow(a.num, b.num, &n) || __builtin_mul_overflow(a.den, b.den, &d)) {
    throw DomainError("rational overflow");
  }
  return Rational::make(n, d);
}

namespace {

std::int64_t sum_of_traces(const FamilyModel& model, const FieldCtx& ctx) {
  if (auto why = model.bad_reason(ctx.p())) throw BadPrime("p=" + std::to_string(ctx.p()) + ": " + *why);
  const PrimeFibers fibers = trace_all_fibers(ctx, model);
  if (fibers.unsupported) {
    const auto& u = *fibers.unsupported;
    throw SkippedPrime(ctx.p(), "unsupported_fiber c=" + std::to_string(u.c.c) + " " +
                                    std::string(to_string(u.fiber_class)));
  }
  std::int64_t total = 0;
  for (const auto& r : fibers.records) total += r.a;
  return total;
}

// p + 1 - #C(F_p) for the smooth model of y^2 = g(x).
std::int64_t curve_trace(const FieldCtx& ctx, const BivarPoly& g) {
  modp::Poly f(g.deg_x() + 1, 0);
  for (int dx = 0; dx <= g.deg_x(); ++dx) f[dx] = ctx.reduce(g.coeff(dx, 0));
  modp::trim(f);
  std::int64_t chi_total = 0;
  for (residue_t x = 0; x < ctx.p(); ++x) chi_total += ctx.chi(modp::evaluate(ctx, f, x));
  const std::int64_t at_infinity = modp::degree(f) % 2 == 1 ? 1 : 1 + ctx.chi(modp::leading(f));
  const std::int64_t points = static_cast<std::int64_t>(ctx.p()) + chi_total + at_infinity;
  return static_cast<std::int64_t>(ctx.p()) + 1 - points;
}

}  // namespace

Rational average_trace(const FamilyModel& model, const FieldCtx& ctx) {
  return Rational::make(sum_of_traces(model, ctx), ctx.p());
}

std::int64_t trace_correction(const FamilyModel& model, const FieldCtx& ctx) {
  if (model.is_bad_trace_prime(ctx.p())) throw SkippedPrime(ctx.p(), "bad_trace_prime");
  std::int64_t total = 0;
  for (const auto& g : model.spec().trace.curves) total += curve_trace(ctx, g);
  return total;
}

Rational reduced_average_trace(const FamilyModel& model, const FieldCtx& ctx) {
  return average_trace(model, ctx) - Rational::integer(trace_correction(model, ctx));
}

Rational variant_average(const FamilyModel& model, const FieldCtx& ctx) {
  return Rational::make(sum_of_traces(model, ctx), static_cast<std::int64_t>(ctx.p()) + 1);
}

PrimeEntry compute_prime_entry(const FamilyModel& model, std::uint32_t p) {
  PrimeEntry e;
  e.p = p;
  const FieldCtx ctx = make_field(p);
  try {
    e.a_B = trace_correction(model, ctx);
    e.A = average_trace(model, ctx);
    e.A_star = e.A - Rational::integer(e.a_B);
  } catch (const SkippedPrime& s) {
    e = PrimeEntry{};
    e.p = p;
    e.skipped = true;
    e.reason = s.reason();
  }
  return e;
}

std::vector<std::uint32_t> good_primes(const FamilyModel& model, std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  if (hi < 3 || lo > hi) return out;
  for (auto p : primes_in_range(std::max<std::uint32_t>(lo, 2), hi)) {
    if (!model.is_bad(p)) out.push_back(p);
  }
  return out;
}

void build_entries(const FamilyModel& model, std::span<const std::uint32_t> primes, unsigned jobs,
                   const std::function<void(const PrimeEntry&)>& sink) {
  const std::size_t n = primes.size();
  if (n == 0) return;
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs == 1) {
    for (auto p : primes) sink(compute_prime_entry(model, p));
    return;
  }

  std::vector<std::optional<PrimeEntry>> slots(n);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || stop.load()) return;
      try {
        PrimeEntry e = compute_prime_entry(model, primes[i]);
        std::lock_guard lock(mu);
        slots[i] = std::move(e);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      ready.notify_all();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);

    // ordered collector
    for (std::size_t i = 0; i < n; ++i) {
      PrimeEntry e;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return slots[i].has_value() || failure; });
        if (failure) break;
        e = std::move(*slots[i]);
        slots[i].reset();
      }
      try {
        sink(e);
      } catch (...) {
        std::lock_guard lock(mu);
        failure = std::current_exception();
        stop = true;
        break;
      }
    }
    stop = true;
  }
  if (failure) std::rethrow_exception(failure);
}

NagaoSeries compute_series(const FamilyModel& model, std::uint32_t t_max, unsigned jobs) {
  NagaoSeries out;
  out.family_hash = model.hash();
  const auto primes = good_primes(model, 3, t_max);
  build_entries(model, primes, jobs, [&](const PrimeEntry& e) { out.entries.push_back(e); });
  return out;
}

std::vector<SeriesPoint> cesaro_series(const NagaoSeries& series, std::span<const std::uint64_t> checkpoints) {
  std::vector<SeriesPoint> out;
  double sum = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;
  std::size_t i = 0;
  std::uint64_t previous = 0;
  for (auto T : checkpoints) {
    if (T < 3) throw DomainError("cutoff T must be at least 3");
    if (T < previous) throw DomainError("checkpoints must be ascending");
    previous = T;
    for (; i < series.entries.size() && series.entries[i].p <= T; ++i) {
      const auto& e = series.entries[i];
      ++used;
      if (e.skipped) {
        ++skipped;
        continue;
      }
      sum += -e.A_star.to_double() * std::log(static_cast<double>(e.p));
    }
    out.push_back({T, sum / static_cast<double>(T), used, skipped});
  }
  return out;
}

std::vector<ResiduePoint> dirichlet_residue(const NagaoSeries& series, std::uint64_t T,
                                            std::span<const double> s_list) {
  for (double s : s_list) {
    if (!(s > 1.0)) throw DomainError("residue abscissa must exceed 1, got " + std::to_string(s));
  }
  std::vector<ResiduePoint> out;
  for (double s : s_list) {
    double sum = 0.0;
    for (const auto& e : series.entries) {
      if (e.p > T) break;
      if (e.skipped) continue;
      const double lp = std::log(static_cast<double>(e.p));
      sum += -e.A_star.to_double() * lp * std::exp(-s * lp);
    }
    out.push_back({s, (s - 1.0) * sum, T});
  }
  return out;
}

std::vector<double> default_s_list() {
  std::vector<double> out;
  for (int k = 2; k <= 6; ++k) out.push_back(1.0 + std::ldexp(1.0, -k));
  return out;
}

}  // namespace nagao
