#include "nagao/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "nagao/error.hpp"
#include "nagao/family.hpp"
#include "nagao/fiber_trace.hpp"
#include "nagao/ledger.hpp"
#include "nagao/nagao_series.hpp"
#include "nagao/oracle.hpp"
#include "nagao/shioda_tate.hpp"

namespace nagao {

std::string output_stem(const std::string& family_name) {
  std::string out = family_name;
  for (auto& ch : out) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) ch = '_';
  }
  return out.empty() ? "family" : out;
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& text, std::uint64_t t_max) {
  std::vector<std::uint64_t> out;
  auto number = [](const std::string& s) -> std::uint64_t {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad checkpoint '" + s + "'");
    }
    if (used != s.size() || s.empty() || s[0] == '-') throw ValidationError("bad checkpoint '" + s + "'");
    return v;
  };
  if (text.rfind("step:", 0) == 0) {
    const std::uint64_t step = number(text.substr(5));
    if (step == 0) throw ValidationError("checkpoint step must be positive");
    for (std::uint64_t T = step; T <= t_max; T += step) {
      if (T >= 3) out.push_back(T);
    }
    if (out.empty() || out.back() != t_max) out.push_back(t_max);
  } else {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(number(item));
  }
  if (out.empty()) throw ValidationError("empty checkpoint grid");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 3) throw ValidationError("checkpoints must be at least 3");
    if (out[i] > t_max) throw ValidationError("checkpoint " + std::to_string(out[i]) + " exceeds --tmax");
    if (i > 0 && out[i] <= out[i - 1]) throw ValidationError("checkpoints must be strictly ascending");
  }
  return out;
}

std::vector<double> parse_s_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad s value '" + item + "'");
    }
    if (used != item.size()) throw ValidationError("bad s value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty s list");
  return out;
}

namespace {

struct LedgerMismatch : Error {
  using Error::Error;
};

std::vector<std::uint64_t> checkpoint_grid(const RunConfig& config) {
  if (!config.checkpoints.empty()) {
    for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
      const auto T = config.checkpoints[i];
      if (T < 3 || T > config.t_max || (i > 0 && T <= config.checkpoints[i - 1])) {
        throw ValidationError("checkpoint grid must be strictly ascending within [3, tmax]");
      }
    }
    return config.checkpoints;
  }
  std::vector<std::uint64_t> grid;
  for (std::uint64_t k = 1; k <= 10; ++k) {
    const std::uint64_t T = config.t_max * k / 10;
    if (T >= 3 && (grid.empty() || T > grid.back())) grid.push_back(T);
  }
  return grid;
}

void check_config(const RunConfig& config) {
  if (config.t_max < 3) throw ValidationError("--tmax must be at least 3");
  if (config.t_max > 50'000'000) throw ValidationError("--tmax beyond supported range");
  if (config.jobs < 1) throw ValidationError("--jobs must be at least 1");
}

std::filesystem::path ledger_path(const RunConfig& config, const FamilyModel& model) {
  return config.out_dir / (output_stem(model.spec().name) + ".ledger.csv");
}

// Loads (when resuming) and extends the ledger up to t_max, persisting it at every
// checkpoint so an interrupted run can resume.
NagaoSeries ensure_ledger(const RunConfig& config, const FamilyModel& model, std::ostream& err) {
  std::filesystem::create_directories(config.out_dir);
  const auto path = ledger_path(config, model);
  NagaoSeries series;
  series.family_hash = model.hash();
  if (config.resume && std::filesystem::exists(path)) {
    NagaoSeries previous = read_ledger(path);
    if (!previous.entries.empty() && previous.family_hash != model.hash()) {
      throw LedgerMismatch("ledger " + path.string() + " belongs to family hash " + previous.family_hash +
                           ", not " + model.hash());
    }
    series.entries = std::move(previous.entries);
  } else if (config.resume) {
    err << "no ledger at " << path.string() << "; starting fresh\n";
  }

  const std::uint32_t start = series.entries.empty() ? 3 : series.last_prime() + 1;
  const auto t_max = static_cast<std::uint32_t>(config.t_max);
  if (start <= t_max) {
    const auto primes = good_primes(model, start, t_max);
    const auto grid = checkpoint_grid(config);
    std::size_t next_checkpoint = 0;
    build_entries(model, primes, config.jobs, [&](const PrimeEntry& e) {
      while (next_checkpoint < grid.size() && grid[next_checkpoint] < e.p) {
        write_ledger(path, series);
        ++next_checkpoint;
      }
      series.entries.push_back(e);
    });
  }
  write_ledger(path, series);

  // restrict to the requested cutoff (a resumed ledger may extend further)
  NagaoSeries view;
  view.family_hash = series.family_hash;
  for (const auto& e : series.entries) {
    if (e.p <= config.t_max) view.entries.push_back(e);
  }
  return view;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const LedgerMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitLedgerMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_config(config);
    const FamilyModel model(load_family(config.family));
    const auto grid = checkpoint_grid(config);
    const NagaoSeries series = ensure_ledger(config, model, err);
    const auto points = cesaro_series(series, grid);
    const auto stem = output_stem(model.spec().name);
    atomic_write(config.out_dir / (stem + ".series.csv"), format_series_csv(points));

    const SeriesPoint& last = points.back();
    nlohmann::json summary;
    summary["family"] = model.spec().name;
    summary["family_hash"] = model.hash();
    summary["t_max"] = config.t_max;
    summary["S_T"] = last.S;
    summary["nearest_integer"] = std::llround(last.S);
    summary["n_primes"] = last.n_primes;
    summary["n_skipped"] = last.n_skipped;
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& e : series.entries) {
      if (e.skipped) skipped.push_back({{"p", e.p}, {"reason", e.reason}});
    }
    summary["skipped"] = skipped;
    const auto bad = bad_primes(model, static_cast<std::uint32_t>(config.t_max));
    summary["bad_primes"] = std::vector<std::uint32_t>(bad.begin(), bad.end());
    summary["infinity_fiber_omitted"] = model.spec().infinity.kind == InfinityRule::Kind::skip;

    std::ostringstream text;
    text << "family " << model.spec().name << " (hash " << model.hash() << ")\n";
    text << "S(T)=" << fmt(last.S) << " at T=" << last.T << ", nearest integer " << std::llround(last.S) << "\n";
    text << "primes used " << last.n_primes << ", skipped " << last.n_skipped << ", bad primes " << bad.size() << "\n";
    for (const auto& e : series.entries) {
      if (e.skipped) text << "  skipped p=" << e.p << ": " << e.reason << "\n";
    }
    if (model.spec().infinity.kind == InfinityRule::Kind::skip) {
      text << "note: fiber at infinity omitted from every A_p\n";
    }
    if (model.spec().fiber_config) {
      const auto report = form5_diagnostic(series, *model.spec().fiber_config);
      summary["form5"] = {{"mean_residual", report.mean}, {"max_abs_residual", report.max_abs},
                          {"rank_S", rank_S(*model.spec().fiber_config)},
                          {"rank_S_Gk", rank_S_Gk(*model.spec().fiber_config)}};
      text << "form5 residual tr(F|S) - A*_p: mean " << fmt(report.mean) << ", max |.| " << fmt(report.max_abs)
           << "\n";
    }
    atomic_write(config.out_dir / (stem + ".summary.json"), summary.dump(2) + "\n");
    atomic_write(config.out_dir / (stem + ".summary.txt"), text.str());
    out << text.str();
    return kExitOk;
  });
}

int cmd_series(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_config(config);
    const FamilyModel model(load_family(config.family));
    const auto grid = checkpoint_grid(config);
    const NagaoSeries series = ensure_ledger(config, model, err);
    const std::string csv = format_series_csv(cesaro_series(series, grid));
    atomic_write(config.out_dir / (output_stem(model.spec().name) + ".series.csv"), csv);
    out << csv;
    return kExitOk;
  });
}

int cmd_residue(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_config(config);
    const auto s_list = config.s_list.empty() ? default_s_list() : config.s_list;
    for (double s : s_list) {
      if (!(s > 1.0)) throw DomainError("every s must exceed 1");
    }
    const FamilyModel model(load_family(config.family));
    const NagaoSeries series = ensure_ledger(config, model, err);
    const std::string csv = format_residue_csv(dirichlet_residue(series, config.t_max, s_list));
    atomic_write(config.out_dir / (output_stem(model.spec().name) + ".residue.csv"), csv);
    out << csv;
    return kExitOk;
  });
}

namespace {

class CheckLog {
 public:
  explicit CheckLog(std::string name) : name_(std::move(name)) {}
  void fail(const std::string& detail) {
    if (first_failure_.empty()) first_failure_ = detail;
    ++failures_;
  }
  void ran() { ++runs_; }
  bool ok() const { return failures_ == 0; }
  void report(std::ostream& out, std::uint32_t bound) const {
    if (ok()) {
      out << name_ << ": PASS (all p \xE2\x89\xA4 " << bound << ")\n";
    } else {
      out << name_ << ": FAIL (" << failures_ << " of " << runs_ << "; first: " << first_failure_ << ")\n";
    }
  }

 private:
  std::string name_;
  std::string first_failure_;
  std::size_t runs_ = 0;
  std::size_t failures_ = 0;
};

std::string where(std::uint32_t p, std::uint32_t c) { return "p=" + std::to_string(p) + " c=" + std::to_string(c); }

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FamilyModel model(load_family(config.family));
    const FamilySpec& spec = model.spec();
    const auto bound = static_cast<std::uint32_t>(config.t_max >= 3 ? std::min<std::uint64_t>(config.t_max, 23) : 23);

    CheckLog affine("count_affine");
    CheckLog bulk("bulk_kernel");
    CheckLog identity("point_count_identity");
    CheckLog weil("weil_bound");
    CheckLog nodal("nodal_normalization");
    CheckLog smooth("smooth_fibers");
    CheckLog trace("trace_correction");

    for (auto p : good_primes(model, 3, bound)) {
      const FieldCtx ctx = make_field(p);
      const PrimeFibers all = trace_all_fibers(ctx, model);
      for (residue_t c = 0; c < p; ++c) {
        const FiberModel fiber = fiber_at(model, ctx, FiberPoint::finite(c));
        const auto n_affine = count_affine(ctx, fiber);
        affine.ran();
        if (n_affine != oracle::affine_solutions(spec, p, c)) affine.fail(where(p, c));

        const bool singular = is_singular_fiber(ctx, fiber);
        if (!singular && spec.kind != FamilyKind::multicover) {
          smooth.ran();
          if (oracle::hyperelliptic_singular_points(spec.polys[0], p, c).rational_nodes != 0) smooth.fail(where(p, c));
        }

        std::optional<FiberTraceRecord> single;
        try {
          single = fiber_trace(ctx, model, FiberPoint::finite(c));
        } catch (const UnsupportedFiber&) {
        }
        if (!single) continue;

        if (!all.unsupported) {
          bulk.ran();
          const auto& r = all.records.at(c);
          if (r.N != single->N || r.a != single->a || r.m != single->m || r.singular != single->singular) {
            bulk.fail(where(p, c));
          }
        }
        identity.ran();
        const auto N = static_cast<std::int64_t>(single->N);
        if (N != 1 - single->a + static_cast<std::int64_t>(p) * single->m ||
            single->a != 1 + static_cast<std::int64_t>(p) * single->m - N) {
          identity.fail(where(p, c));
        }
        if (!single->singular) {
          weil.ran();
          const std::int64_t bound2 = 4LL * spec.genus * spec.genus * p;
          if (single->a * single->a > bound2) weil.fail(where(p, c));
        } else if (spec.kind != FamilyKind::multicover && component_count(ctx, fiber).index() == 0 &&
                   modp::degree(fiber.polys[0]) == fiber.generic_degrees[0]) {
          nodal.ran();
          const auto sp = oracle::hyperelliptic_singular_points(spec.polys[0], p, c);
          const auto expected = static_cast<std::int64_t>(normalization_count(ctx, fiber)) - sp.points_above +
                                sp.rational_nodes;
          if (N != expected) nodal.fail(where(p, c));
        }
      }
      if (!model.is_bad_trace_prime(p)) {
        trace.ran();
        std::int64_t expected = 0;
        for (const auto& g : spec.trace.curves) expected += oracle::curve_trace(g, p);
        if (trace_correction(model, ctx) != expected) trace.fail("p=" + std::to_string(p));
      }
    }

    bool ok = true;
    for (const CheckLog* log : {&affine, &bulk, &identity, &weil, &nodal, &smooth, &trace}) {
      log->report(out, bound);
      ok = ok && log->ok();
    }
    return ok ? kExitOk : kExitInput;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Averaged Frobenius traces and rank estimates for curve fibrations over Q(t)", "nagao"};
  app.require_subcommand(1);

  RunConfig config;
  config.jobs = std::max(1U, std::thread::hardware_concurrency());
  std::string checkpoints;
  std::string s_list;

  auto add_common = [&](CLI::App* sub, bool need_tmax) {
    sub->add_option("--family", config.family, "family file")->required();
    auto* tmax = sub->add_option("--tmax", config.t_max, "largest prime cutoff T");
    if (need_tmax) tmax->required();
    sub->add_option("--jobs", config.jobs, "worker threads");
    sub->add_flag("--resume", config.resume, "extend an existing ledger");
    sub->add_option("--out", config.out_dir, "output directory");
    sub->add_option("--checkpoints", checkpoints, "comma list of cutoffs, or step:N");
    sub->add_option("--s-list", s_list, "comma list of s > 1 for the residue estimate");
  };
  auto* run = app.add_subcommand("run", "compute the ledger, series and summary");
  auto* series = app.add_subcommand("series", "emit S(T) at the checkpoints");
  auto* residue = app.add_subcommand("residue", "emit (s-1) D(s) for each s");
  auto* verify = app.add_subcommand("verify", "exhaustive cross-checks for small primes");
  add_common(run, true);
  add_common(series, true);
  add_common(residue, true);
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (!checkpoints.empty()) config.checkpoints = parse_checkpoints(checkpoints, config.t_max);
    if (!s_list.empty()) config.s_list = parse_s_list(s_list);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (run->parsed()) return cmd_run(config, out, err);
  if (series->parsed()) return cmd_series(config, out, err);
  if (residue->parsed()) return cmd_residue(config, out, err);
  return cmd_verify(config, out, err);
}

}  // namespace nagao
