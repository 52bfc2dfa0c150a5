#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli_app.hpp"
#include "eisl/bounds.hpp"
#include "eisl/verify.hpp"

namespace eisl {
namespace {

std::string render(const std::vector<BoundReport>& rows, ReportFormat f) {
  std::ostringstream os;
  emit_report(rows, f, os);
  return os.str();
}

const std::vector<BoundReport>& small_scan() {
  static const auto rows = scan_theorem(3, 40);
  return rows;
}

TEST(Scan, QuadraticRowAtThree) {
  const auto rows = scan_theorem(3, 3);
  ASSERT_EQ(rows.size(), 1u);
  const auto& r = rows[0];
  EXPECT_EQ(r.kind, CharacterKind::Quadratic);
  EXPECT_NEAR(r.l1.real(), std::numbers::pi / (3 * std::sqrt(3.0)), 1e-12);
  EXPECT_EQ(r.big_t, 3.0);
  const double lt = std::log(3.0);
  EXPECT_NEAR(r.rhs(), (std::sqrt(2.0) - 1) * std::sqrt(3.0) / (3.0 * lt * lt), 1e-15);
  EXPECT_NEAR(r.realized_constant, r.l1.real() / r.rhs(), 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(Scan, ComplexRowsAtFive) {
  const auto rows = scan_theorem(5, 5);
  ASSERT_EQ(rows.size(), 3u);
  int complex_rows = 0;
  for (const auto& r : rows) {
    if (r.kind != CharacterKind::Complex) continue;
    ++complex_rows;
    EXPECT_EQ(r.order, 4);
    EXPECT_EQ(r.big_t, 25.0);
    EXPECT_FALSE(r.partial);
    EXPECT_TRUE(r.rhs_complex.has_value());
    EXPECT_GT(r.realized_constant, 0.0);
  }
  EXPECT_EQ(complex_rows, 2);
}

TEST(Scan, PartialFlagAtCap) {
  ScanOptions opt;
  opt.big_k = 6;
  opt.cap = 1e5;
  for (const auto& r : scan_theorem(7, 7, opt))
    if (r.kind == CharacterKind::Complex) {
      EXPECT_TRUE(r.partial);
      EXPECT_EQ(r.big_t, 1e5);
    }
}

TEST(Scan, ThreadsGiveSameRows) {
  ScanOptions opt;
  opt.threads = 4;
  const auto a = scan_theorem(3, 40, opt);
  EXPECT_EQ(render(a, ReportFormat::Csv), render(small_scan(), ReportFormat::Csv));
}

TEST(Scan, PositiveAndQuadraticRealOverRange) {
  const auto rows = scan_theorem(3, 300);
  const auto s = summarize(rows);
  EXPECT_TRUE(s.all_pass);
  EXPECT_GT(s.min_realized, 0.0);
  for (const auto& r : rows)
    if (r.kind == CharacterKind::Quadratic) {
      EXPECT_GT(r.l1.real(), 0.0);
      EXPECT_GT(r.normalized, 0.0);
    }
  ASSERT_TRUE(s.min_quadratic.has_value());
  EXPECT_EQ(s.min_quadratic->q, 3);
  ASSERT_TRUE(s.min_complex.has_value());
  EXPECT_EQ(s.min_complex->q, 5);
}

TEST(Scan, Errors) {
  EXPECT_THROW(scan_theorem(2, 10), precondition_error);
  EXPECT_THROW(scan_theorem(10, 5), precondition_error);
  ScanOptions opt;
  opt.cap = 50;
  EXPECT_THROW(scan_theorem(3, 60, opt), precondition_error);
  opt = {};
  opt.big_k = 0;
  EXPECT_THROW(scan_theorem(3, 5, opt), precondition_error);
}

TEST(Report, DeterministicBytes) {
  for (auto f : {ReportFormat::Csv, ReportFormat::Json, ReportFormat::Markdown}) {
    const auto a = render(scan_theorem(3, 40), f);
    const auto b = render(scan_theorem(3, 40), f);
    EXPECT_EQ(a, b);
  }
}

TEST(Report, FileOutput) {
  const auto path = (std::filesystem::temp_directory_path() / "eisl_report_test.csv").string();
  emit_report(small_scan(), ReportFormat::Csv, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), render(small_scan(), ReportFormat::Csv));
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(small_scan(), ReportFormat::Csv, std::string("/nonexistent/dir/x.csv")),
               std::runtime_error);
}

TEST(Report, CsvMatchesJson) {
  const auto& rows = small_scan();
  const auto json = nlohmann::json::parse(render(rows, ReportFormat::Json));
  EXPECT_EQ(json["spec_version"], kSpecVersion);
  std::istringstream csv(render(rows, ReportFormat::Csv));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "q,chi_id,kind,L1_re,L1_im,T,rhs,realized_constant");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 8u);
    const auto& j = json["rows"].at(i);
    EXPECT_EQ(std::stoll(cells[0]), j["q"].get<i64>());
    EXPECT_EQ(std::stoi(cells[1]), j["chi_id"].get<int>());
    EXPECT_EQ(cells[2], j["kind"].get<std::string>());
    EXPECT_EQ(std::stod(cells[3]), j["L1_re"].get<double>());
    EXPECT_EQ(std::stod(cells[4]), j["L1_im"].get<double>());
    EXPECT_EQ(std::stod(cells[5]), j["T"].get<double>());
    EXPECT_EQ(std::stod(cells[6]), j["rhs"].get<double>());
    EXPECT_EQ(std::stod(cells[7]), j["realized_constant"].get<double>());
    // and back to the in-memory row
    EXPECT_EQ(std::stod(cells[3]), rows[i].l1.real());
    ++i;
  }
  EXPECT_EQ(i, rows.size());
  EXPECT_EQ(json["summary"]["rows"].get<std::size_t>(), rows.size());
}

TEST(Report, MarkdownOneRowPerCharacter) {
  const auto& rows = small_scan();
  std::istringstream md(render(rows, ReportFormat::Markdown));
  std::size_t table_rows = 0;
  bool in_cases = false;
  for (std::string line; std::getline(md, line);) {
    if (line.rfind("## ", 0) == 0) in_cases = true;
    if (in_cases && line.size() > 2 && line.rfind("| ", 0) == 0 && std::isdigit(static_cast<unsigned char>(line[2])))
      ++table_rows;
  }
  EXPECT_EQ(table_rows, rows.size());
}

TEST(Report, EmptyRowsRejected) {
  std::ostringstream os;
  EXPECT_THROW(emit_report({}, ReportFormat::Csv, os), precondition_error);
  EXPECT_FALSE(parse_format("xml").has_value());
  EXPECT_EQ(parse_format("md"), ReportFormat::Markdown);
}

TEST(Verify, QuickPasses) {
  VerifyOptions o;
  o.level = Level::Quick;
  const auto rep = verify_suite(o);
  ASSERT_EQ(rep.results.size(), 14u);
  for (const auto& r : rep.results) EXPECT_TRUE(r.passed) << r.id << ": " << r.detail;
  const auto j1 = to_json(rep).dump();
  const auto j2 = to_json(verify_suite(o)).dump();
  EXPECT_EQ(j1, j2);
}

TEST(Verify, PerturbedRhoIsDetected) {
  VerifyOptions o;
  o.level = Level::Quick;
  o.rho_perturbation = 0.01;
  bool six = true, eight = true;
  for (const auto& c : all_criteria()) {
    if (c.id == 6) six = run_criterion(c, o).passed;
    if (c.id == 8) eight = run_criterion(c, o).passed;
  }
  EXPECT_FALSE(six);
  EXPECT_FALSE(eight);
}

TEST(Verify, LevelParsing) {
  EXPECT_EQ(parse_level("quick"), Level::Quick);
  EXPECT_EQ(parse_level("full"), Level::Full);
  EXPECT_THROW(parse_level(""), precondition_error);
  EXPECT_THROW(parse_level("fast"), precondition_error);
}

TEST(Verify, ExceptionsBecomeFailures) {
  const Criterion boom{99, [](const VerifyOptions&) -> CriterionResult { throw std::runtime_error("x"); }};
  const auto r = run_criterion(boom, {});
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.id, 99);
}

TEST(Verify, SqrtTwoBoundExact) {
  // s >= (sqrt 2 - 1) sqrt t decided in integers
  for (i64 t = 1; t <= 2000; ++t)
    for (i64 s : {0, 1, 5, 17, 40}) {
      const double lhs = static_cast<double>(s), rhs = (std::sqrt(2.0) - 1) * std::sqrt(static_cast<double>(t));
      if (std::abs(lhs - rhs) > 1e-9) EXPECT_EQ(sqrt2_bound_exact(s, t), lhs >= rhs) << s << ' ' << t;
    }
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "eisl_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

TEST(Cli, ScanExitsZero) {
  std::string text;
  EXPECT_EQ(run_cli({"--mode", "scan", "--q-min", "3", "--q-max", "12", "--format", "csv"}, &text), cli::kPass);
  EXPECT_EQ(text.rfind("q,chi_id,kind", 0), 0u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"--mode", "bogus"}), cli::kUsage);
  EXPECT_EQ(run_cli({"--mode", "scan", "--q-min", "2", "--q-max", "5"}), cli::kUsage);
  EXPECT_EQ(run_cli({"--format", "xml"}), cli::kUsage);
  EXPECT_EQ(run_cli({"--mode", "verify", "--level", "medium"}), cli::kUsage);
  EXPECT_EQ(run_cli({"--unknown"}), cli::kUsage);
}

TEST(Cli, VerifyQuickAndInjection) {
  std::string text;
  EXPECT_EQ(run_cli({"--mode", "verify", "--level", "quick", "--format", "json"}, &text), cli::kPass);
  EXPECT_TRUE(nlohmann::json::parse(text)["passed"].get<bool>());
  EXPECT_EQ(run_cli({"--mode", "verify", "--level", "quick", "--inject-rho", "0.01"}), cli::kFail);
}

}  // namespace
}  // namespace eisl
