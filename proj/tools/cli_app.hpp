#pragma once

// Command-line driver: `scan` reports realized constants over a range of
// moduli, `verify` runs the numbered verification suite.
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eisl/bounds.hpp"
#include "eisl/verify.hpp"

namespace eisl::cli {

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

struct Options {
  long long q_min = 3;
  long long q_max = 300;
  int big_k = 2;
  double cap = 2e7;
  double tol = 1e-9;
  std::string mode = "scan";
  std::string format = "csv";
  std::string out;
  int threads = 1;
  std::uint64_t seed = 20240611;
  std::string level = "full";
  double inject_rho = 0.0;
};

inline void write_suite(const SuiteReport& rep, ReportFormat f, std::ostream& os) {
  switch (f) {
    case ReportFormat::Json:
      os << to_json(rep).dump(2) << '\n';
      break;
    case ReportFormat::Csv:
      os << "id,name,passed,detail\n";
      for (const auto& r : rep.results)
        os << r.id << ",\"" << r.name << "\"," << (r.passed ? "true" : "false") << ",\"" << r.detail << "\"\n";
      break;
    case ReportFormat::Markdown:
      os << "| # | check | result | detail |\n|---|---|---|---|\n";
      for (const auto& r : rep.results)
        os << "| " << r.id << " | " << r.name << " | " << (r.passed ? "pass" : "FAIL") << " | " << r.detail << " |\n";
      break;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options o;
  CLI::App app{"Lower bounds for L(1, chi): scans and verification"};
  app.add_option("--q-min", o.q_min, "smallest modulus")->check(CLI::PositiveNumber);
  app.add_option("--q-max", o.q_max, "largest modulus")->check(CLI::PositiveNumber);
  app.add_option("--big-k", o.big_k, "exponent K in T = q^K for complex characters")->check(CLI::PositiveNumber);
  app.add_option("--cap", o.cap, "upper cap on T")->check(CLI::PositiveNumber);
  app.add_option("--tol", o.tol, "quadrature and truncation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--mode", o.mode, "scan or verify")->check(CLI::IsMember({"scan", "verify"}));
  app.add_option("--format", o.format, "csv, json or markdown")->check(CLI::IsMember({"csv", "json", "markdown"}));
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for sampled matrices and points");
  app.add_option("--level", o.level, "verification level")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--inject-rho", o.inject_rho, "fault injection: relative perturbation of rho");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  const auto format = parse_format(o.format);
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "cannot open " << o.out << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = o.out.empty() ? out : file;

  try {
    if (o.mode == "scan") {
      if (o.q_min < 3 || o.q_max < o.q_min) {
        err << "need 3 <= q-min <= q-max\n";
        return kUsage;
      }
      ScanOptions so{o.big_k, o.cap, o.threads};
      const auto rows = scan_theorem(o.q_min, o.q_max, so);
      if (rows.empty()) {
        err << "no primitive characters in range\n";
        return kUsage;
      }
      emit_report(rows, *format, sink);
      return summarize(rows).all_pass ? kPass : kFail;
    }
    VerifyOptions vo;
    vo.level = parse_level(o.level);
    vo.seed = o.seed;
    vo.rho_perturbation = o.inject_rho;
    vo.threads = o.threads;
    vo.tol = o.tol;
    const auto rep = verify_suite(vo);
    write_suite(rep, *format, sink);
    return rep.passed() ? kPass : kFail;
  } catch (const precondition_error& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
}

}  // namespace eisl::cli
