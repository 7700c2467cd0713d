#pragma once
// CSV and Markdown reports of per-condition success rates, with pairwise
// Fisher exact tests between methods in each condition.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stacksolve/dataset.hpp"
#include "stacksolve/harness.hpp"
#include "stacksolve/stats.hpp"

namespace stacksolve::report {

struct PairwiseTest {
  harness::Method first;
  harness::Method second;
  Condition condition;
  stats::Table2x2 table{};
  std::optional<double> p_value;  // nullopt when the margins are degenerate
};

inline const std::vector<std::pair<harness::Method, harness::Method>>& default_pairs() {
  using harness::Method;
  static const std::vector<std::pair<Method, Method>> k{{Method::PsGrammar, Method::LlmPlanner},
                                                        {Method::PsLlm, Method::LlmPlanner}};
  return k;
}

/// One test per (pair, condition) where both methods have results.
inline std::vector<PairwiseTest> pairwise_tests(const harness::ResultTable& table) {
  std::vector<PairwiseTest> out;
  for (const auto& [a, b] : default_pairs()) {
    for (auto c : kConditions) {
      auto ra = table.find({a, c}), rb = table.find({b, c});
      if (ra == table.end() || rb == table.end()) continue;
      PairwiseTest t{a, b, c, {}, std::nullopt};
      t.table = {{{ra->second.successes, ra->second.n - ra->second.successes},
                  {rb->second.successes, rb->second.n - rb->second.successes}}};
      try {
        t.p_value = stats::fisher_exact(t.table);
      } catch (const stats::DegenerateMargins&) {
      }
      out.push_back(t);
    }
  }
  return out;
}

inline std::vector<harness::Method> methods_in(const harness::ResultTable& table) {
  std::set<harness::Method> seen;
  for (const auto& [key, _] : table) seen.insert(key.first);
  return {seen.begin(), seen.end()};
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string format_p(const std::optional<double>& p) {
  if (!p) return "n/a (degenerate margins)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", *p);
  return buf;
}

inline std::string render_csv(const harness::ResultTable& table) {
  std::ostringstream os;
  os << "method,condition,n,successes,rate\n";
  for (auto m : methods_in(table)) {
    for (auto c : kConditions) {
      harness::ResultRow row;
      if (auto it = table.find({m, c}); it != table.end()) row = it->second;
      os << harness::to_string(m) << "," << to_string(c) << "," << row.n << "," << row.successes << ","
         << fixed(row.rate(), 4) << "\n";
    }
  }
  return os.str();
}

inline std::string render_markdown(const harness::ResultTable& table, const std::vector<PairwiseTest>& tests) {
  std::ostringstream os;
  os << "# Success rates by condition\n\n";
  os << "| method | initial | single | many |\n";
  os << "|---|---|---|---|\n";
  for (auto m : methods_in(table)) {
    os << "| " << harness::to_string(m);
    for (auto c : kConditions) {
      os << " | ";
      if (auto it = table.find({m, c}); it != table.end())
        os << it->second.successes << "/" << it->second.n << " (" << fixed(it->second.rate(), 3) << ")";
      else
        os << "-";
    }
    os << " |\n";
  }

  os << "\n## Pairwise Fisher exact tests (two-sided)\n\n";
  if (tests.empty()) {
    os << "No method pairs to compare.\n";
  } else {
    os << "| condition | comparison | successes | p-value |\n";
    os << "|---|---|---|---|\n";
    for (const auto& t : tests) {
      os << "| " << to_string(t.condition) << " | " << harness::to_string(t.first) << " vs "
         << harness::to_string(t.second) << " | " << t.table[0][0] << "/" << (t.table[0][0] + t.table[0][1])
         << " vs " << t.table[1][0] << "/" << (t.table[1][0] + t.table[1][1]) << " | " << format_p(t.p_value)
         << " |\n";
    }
  }

  os << "\n## Solver budget exhaustion\n\n";
  bool any = false;
  for (const auto& [key, row] : table) {
    if (!row.exhausted) continue;
    os << "- " << harness::to_string(key.first) << " / " << to_string(key.second) << ": " << row.exhausted
       << " item(s)\n";
    any = true;
  }
  if (!any) os << "None.\n";
  return os.str();
}

/// Writes results.csv and report.md into `dir` (created if missing).
inline void emit_report(const harness::ResultTable& table, const std::vector<PairwiseTest>& tests,
                        const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("error writing " + path);
  };
  write("results.csv", render_csv(table));
  write("report.md", render_markdown(table, tests));
}

}  // namespace stacksolve::report
