#include "nagao/ledger.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "nagao/error.hpp"

namespace nagao {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + ": " + ec.message());
}

namespace {

constexpr std::string_view kLedgerHeader = "family_hash,p,A_p_num,A_p_den,a_p_B,skipped,reason";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t field_int(const std::string& s, int line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("ledger line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_ledger(const NagaoSeries& series) {
  std::string out(kLedgerHeader);
  out += '\n';
  for (const auto& e : series.entries) {
    std::string reason = e.reason;
    for (auto& ch : reason) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out += series.family_hash + "," + std::to_string(e.p) + "," + std::to_string(e.A.num) + "," +
           std::to_string(e.A.den) + "," + std::to_string(e.a_B) + "," + (e.skipped ? "1" : "0") + "," + reason +
           "\n";
  }
  return out;
}

void write_ledger(const std::filesystem::path& path, const NagaoSeries& series) {
  atomic_write(path, format_ledger(series));
}

NagaoSeries parse_ledger(const std::string& text) {
  NagaoSeries series;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != kLedgerHeader) throw ValidationError("ledger header mismatch");
      header = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 7) throw ValidationError("ledger line " + std::to_string(line_no) + ": expected 7 fields");
    if (series.family_hash.empty()) {
      series.family_hash = f[0];
    } else if (f[0] != series.family_hash) {
      throw ValidationError("ledger mixes family hashes");
    }
    PrimeEntry e;
    e.p = static_cast<std::uint32_t>(field_int(f[1], line_no));
    if (!series.entries.empty() && e.p <= series.entries.back().p) {
      throw ValidationError("ledger primes not strictly ascending at line " + std::to_string(line_no));
    }
    const std::int64_t den = field_int(f[3], line_no);
    if (den <= 0) throw ValidationError("ledger line " + std::to_string(line_no) + ": bad denominator");
    e.A = Rational::make(field_int(f[2], line_no), den);
    e.a_B = field_int(f[4], line_no);
    if (f[5] != "0" && f[5] != "1") throw ValidationError("ledger line " + std::to_string(line_no) + ": bad flag");
    e.skipped = f[5] == "1";
    e.reason = f[6];
    if (!e.skipped) e.A_star = e.A - Rational::integer(e.a_B);
    series.entries.push_back(std::move(e));
  }
  if (!header) throw ValidationError("empty ledger");
  return series;
}

NagaoSeries read_ledger(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open ledger " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ledger(buf.str());
}

std::string format_series_csv(std::span<const SeriesPoint> points) {
  std::string out = "T,S_T,n_primes,n_skipped\n";
  for (const auto& pt : points) {
    out += std::to_string(pt.T) + "," + format_double(pt.S) + "," + std::to_string(pt.n_primes) + "," +
           std::to_string(pt.n_skipped) + "\n";
  }
  return out;
}

std::string format_residue_csv(std::span<const ResiduePoint> points) {
  std::string out = "s,estimate,T\n";
  for (const auto& pt : points) {
    out += format_double(pt.s) + "," + format_double(pt.estimate) + "," + std::to_string(pt.T) + "\n";
  }
  return out;
}

}  // namespace nagao
