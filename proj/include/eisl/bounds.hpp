#pragma once

// Realized constants for lower bounds on L(1, chi) over a range of moduli,
// and deterministic CSV / JSON / Markdown reports of them.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "eisl/characters.hpp"
#include "eisl/errors.hpp"
#include "eisl/lfunctions.hpp"
#include "eisl/sieve.hpp"

namespace eisl {

inline constexpr const char* kSpecVersion = "1.0";

enum class CharacterKind { Quadratic, Complex };

inline const char* to_string(CharacterKind k) { return k == CharacterKind::Quadratic ? "quadratic" : "complex"; }

struct BoundReport {
  i64 q;
  int chi_id;  // index among the sorted primitive characters mod q
  CharacterKind kind;
  i64 order;
  cplx l1;
  double big_t;
  std::optional<double> rhs_quadratic;  // (sqrt 2 - 1) sqrt T/(T (log T)^2)
  std::optional<double> rhs_complex;    // 2 (1 - cos pi X) delta T/log T/(T (log T)^2)
  double realized_constant;             // |L(1, chi)|/rhs
  double normalized;                    // L sqrt(q) log^2 q, or |L| log^3 q
  bool partial;                         // T capped below q^K
  bool pass;

  double rhs() const { return rhs_quadratic ? *rhs_quadratic : *rhs_complex; }
};

struct ScanOptions {
  int big_k = 2;
  double cap = 2e7;
  int threads = 1;
};

namespace detail {

inline std::vector<BoundReport> scan_modulus(i64 q, const ScanOptions& opt) {
  std::vector<BoundReport> rows;
  const auto chars = enumerate_primitive_characters(q);
  if (chars.empty()) return rows;
  const auto row = hurwitz_row(cplx{1.0, 0.0}, q);
  const double log_q = std::log(static_cast<double>(q));
  for (std::size_t id = 0; id < chars.size(); ++id) {
    const auto& chi = chars[id];
    BoundReport r{};
    r.q = q;
    r.chi_id = static_cast<int>(id);
    r.order = chi.order();
    r.kind = chi.is_quadratic() ? CharacterKind::Quadratic : CharacterKind::Complex;
    r.l1 = dirichlet_l_from_row(cplx{1.0, 0.0}, chi, row);
    if (r.kind == CharacterKind::Quadratic) {
      r.big_t = static_cast<double>(q);
      const double lt = std::log(r.big_t);
      r.rhs_quadratic = (std::sqrt(2.0) - 1.0) * std::sqrt(r.big_t) / (r.big_t * lt * lt);
      r.normalized = r.l1.real() * std::sqrt(static_cast<double>(q)) * log_q * log_q;
      r.pass = r.l1.real() > 0.0 && std::abs(r.l1.imag()) < 1e-12;
    } else {
      const double full = std::pow(static_cast<double>(q), opt.big_k);
      r.big_t = std::floor(std::min(full, opt.cap));
      r.partial = full > opt.cap;
      const double lt = std::log(r.big_t);
      r.rhs_complex = complex_floor(bal_ram_parameters(chi.order()), r.big_t) / (r.big_t * lt * lt);
      r.normalized = std::abs(r.l1) * log_q * log_q * log_q;
      r.pass = true;
    }
    r.realized_constant = std::abs(r.l1) / r.rhs();
    r.pass = r.pass && r.realized_constant > 0.0 && std::isfinite(r.realized_constant);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace detail

/// Every primitive chi with q_min <= q <= q_max. Moduli are distributed over
/// `threads` workers; rows come back sorted by (q, chi_id) regardless.
inline std::vector<BoundReport> scan_theorem(i64 q_min, i64 q_max, const ScanOptions& opt = {}) {
  if (q_min < 3 || q_max < q_min) throw precondition_error("scan_theorem: need 3 <= q_min <= q_max");
  if (static_cast<double>(q_max) > opt.cap) throw precondition_error("scan_theorem: q_max exceeds the cap");
  if (opt.big_k < 1) throw precondition_error("scan_theorem: K must be >= 1");
  const std::size_t n = static_cast<std::size_t>(q_max - q_min + 1);
  std::vector<std::vector<BoundReport>> per_q(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) per_q[i] = detail::scan_modulus(q_min + static_cast<i64>(i), opt);
  };
  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<BoundReport> rows;
  for (auto& v : per_q) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

struct ScanSummary {
  std::size_t rows = 0;
  bool all_pass = true;
  double min_realized = std::numeric_limits<double>::infinity();
  std::optional<BoundReport> min_quadratic;  // smallest normalized value, quadratic
  std::optional<BoundReport> min_complex;    // smallest normalized value, complex
};

inline ScanSummary summarize(const std::vector<BoundReport>& rows) {
  ScanSummary s;
  s.rows = rows.size();
  for (const auto& r : rows) {
    s.all_pass = s.all_pass && r.pass;
    s.min_realized = std::min(s.min_realized, r.realized_constant);
    auto& slot = r.kind == CharacterKind::Quadratic ? s.min_quadratic : s.min_complex;
    if (!slot || r.normalized < slot->normalized) slot = r;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { Csv, Json, Markdown };

inline std::optional<ReportFormat> parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline nlohmann::ordered_json row_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["chi_id"] = r.chi_id;
  j["kind"] = to_string(r.kind);
  j["order"] = r.order;
  j["L1_re"] = r.l1.real();
  j["L1_im"] = r.l1.imag();
  j["T"] = r.big_t;
  j["rhs"] = r.rhs();
  j["realized_constant"] = r.realized_constant;
  j["normalized"] = r.normalized;
  j["partial"] = r.partial;
  j["status"] = r.pass ? "pass" : "fail";
  return j;
}

inline void markdown_case(std::ostream& os, const std::vector<BoundReport>& rows, CharacterKind kind) {
  const bool quad = kind == CharacterKind::Quadratic;
  os << (quad ? "## Quadratic characters, T = q\n\n" : "## Complex characters, T = min(q^K, cap)\n\n");
  os << "| q | chi | order | L(1,chi) | T | rhs | realized constant | "
     << (quad ? "L(1,chi) sqrt(q) (log q)^2" : "|L(1,chi)| (log q)^3") << " |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    if (r.kind != kind) continue;
    std::string l1 = fmt("%.10f", r.l1.real());
    if (!quad) l1 += (r.l1.imag() < 0 ? " - " : " + ") + fmt("%.10f", std::abs(r.l1.imag())) + "i";
    os << "| " << r.q << " | " << r.chi_id << " | " << r.order << " | " << l1 << " | " << fmt("%.0f", r.big_t)
       << (r.partial ? " (partial)" : "") << " | " << fmt("%.6e", r.rhs()) << " | "
       << fmt("%.6g", r.realized_constant) << " | " << fmt("%.6f", r.normalized) << " |\n";
  }
  os << "\n";
}

}  // namespace detail

/// Writes rows in the requested format. Output depends only on the rows and
/// kSpecVersion.
inline void emit_report(const std::vector<BoundReport>& rows, ReportFormat format, std::ostream& os) {
  if (rows.empty()) throw precondition_error("emit_report: no rows");
  switch (format) {
    case ReportFormat::Csv:
      os << "q,chi_id,kind,L1_re,L1_im,T,rhs,realized_constant\n";
      for (const auto& r : rows) {
        os << r.q << ',' << r.chi_id << ',' << to_string(r.kind) << ',' << detail::fmt("%.17g", r.l1.real()) << ','
           << detail::fmt("%.17g", r.l1.imag()) << ',' << detail::fmt("%.17g", r.big_t) << ','
           << detail::fmt("%.17g", r.rhs()) << ',' << detail::fmt("%.17g", r.realized_constant) << '\n';
      }
      break;
    case ReportFormat::Json: {
      const auto s = summarize(rows);
      nlohmann::ordered_json j;
      j["spec_version"] = kSpecVersion;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : rows) j["rows"].push_back(detail::row_json(r));
      nlohmann::ordered_json sum;
      sum["rows"] = s.rows;
      sum["all_pass"] = s.all_pass;
      sum["min_realized_constant"] = s.min_realized;
      if (s.min_quadratic) sum["min_quadratic"] = detail::row_json(*s.min_quadratic);
      if (s.min_complex) sum["min_complex"] = detail::row_json(*s.min_complex);
      j["summary"] = sum;
      os << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Markdown: {
      const auto s = summarize(rows);
      os << "# Realized constants (format version " << kSpecVersion << ")\n\n";
      os << "| case | minimum | attained at q | chi |\n|---|---|---|---|\n";
      if (s.min_quadratic)
        os << "| L(1,chi) sqrt(q) (log q)^2, quadratic | " << detail::fmt("%.6f", s.min_quadratic->normalized)
           << " | " << s.min_quadratic->q << " | " << s.min_quadratic->chi_id << " |\n";
      if (s.min_complex)
        os << "| |L(1,chi)| (log q)^3, complex | " << detail::fmt("%.6f", s.min_complex->normalized) << " | "
           << s.min_complex->q << " | " << s.min_complex->chi_id << " |\n";
      os << "\n";
      detail::markdown_case(os, rows, CharacterKind::Quadratic);
      detail::markdown_case(os, rows, CharacterKind::Complex);
      break;
    }
  }
}

inline void emit_report(const std::vector<BoundReport>& rows, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  emit_report(rows, format, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

}  // namespace eisl
