#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "lowlying/arith.hpp"
#include "lowlying/density.hpp"
#include "lowlying/errors.hpp"

using namespace lowlying;
namespace fs = std::filesystem;

namespace {

std::string scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lowlying_density_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

// Sum over q in [X, 2X] of 2^{omega(q)}, q square-free with all prime factors 1 mod 3.
i64 cubic_count_oracle(i64 X) {
  i64 total = 0;
  for (i64 q = X; q <= 2 * X; ++q) {
    i64 n = q, ways = 1;
    bool ok = q > 1;
    for (i64 p = 2; p * p <= n && ok; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0 || p % 3 != 1) ok = false;
      ways *= 2;
    }
    if (ok && n > 1) {
      if (n % 3 != 1) ok = false;
      ways *= 2;
    }
    if (ok) total += ways;
  }
  return total;
}

ExperimentConfig config(i64 X, double sigma, double T) {
  ExperimentConfig cfg;
  cfg.X = X;
  cfg.sigma = sigma;
  cfg.T = T;
  return cfg;
}

const DensityReport& cubic_50() {
  static const DensityReport report = [] {
    const auto cfg = config(50, 0.4, 30);
    DensityOptions opts;
    opts.cache_dir = scratch_dir("cubic50");
    return run_density_experiment(cfg, FamilySpec{FamilyKind::kCubic, 50}, cfg.test_function(), opts);
  }();
  return report;
}

std::string emitted(const DensityReport& r, ReportFormat f) {
  std::ostringstream os;
  emit_report(os, r, f);
  return os.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("family kernels") {
  CHECK(family_kernel(FamilyKind::kQuadratic) == Kernel::kUSp);
  CHECK(family_kernel(FamilyKind::kCubic) == Kernel::kU);
  CHECK(family_kernel(FamilyKind::kQuartic) == Kernel::kU);
  CHECK(family_kernel(FamilyKind::kTwist) == Kernel::kSOPlus);
  CHECK_THROWS_AS(family_kernel(FamilyKind::kCubicC9), DomainError);
}

TEST_CASE("cubic density report") {
  const auto& r = cubic_50();
  CHECK(r.characters.size() == static_cast<std::size_t>(cubic_count_oracle(50)));
  CHECK(r.characters.size() == 14);
  CHECK(r.kernel == "U");
  CHECK(r.predicted == doctest::Approx(1.0).epsilon(1e-14));
  double sum = 0;
  for (const auto& c : r.characters) {
    CHECK(c.weight == 1.0);
    CHECK(c.tail <= r.tail_limit);
    sum += c.S;
  }
  CHECK(r.empirical == doctest::Approx(sum / r.characters.size()).epsilon(1e-15));
  CHECK(r.residual == doctest::Approx(std::abs(r.empirical - r.predicted)));

  SUBCASE("histogram mass is the mean zero count and tracks the main term") {
    CHECK(r.histogram.mass(static_cast<double>(r.characters.size())) ==
          doctest::Approx(r.mean_zero_count).epsilon(1e-12));
    CHECK(std::abs(r.mean_zero_count - r.mean_main_term) <= 0.1 * r.mean_main_term);
  }
}

TEST_CASE("conjugation closure leaves the average unchanged") {
  const auto cfg = config(30, 0.4, 20);
  const auto family = enumerate_cubic_family(30);
  std::vector<DirichletChar> conj;
  for (const auto& chi : family) conj.push_back(chi.conj());
  DensityOptions opts;
  opts.use_cache = false;
  const auto a = run_density_experiment(cfg, FamilyKind::kCubic, family, cfg.test_function(), opts);
  const auto b = run_density_experiment(cfg, FamilyKind::kCubic, conj, cfg.test_function(), opts);
  CHECK(a.empirical == doctest::Approx(b.empirical).epsilon(1e-9));
}

TEST_CASE("narrow support makes the kernels indistinguishable") {
  const auto cfg = config(40, 0.05, 30);
  const auto phi = cfg.test_function();
  for (Kernel k : {Kernel::kU, Kernel::kUSp, Kernel::kSOPlus}) CHECK(std::abs(predicted_integral(phi, k) - 1.0) < 0.03);
  // phi(x) is nearly flat at 0.05 over the zero range, so every family average sits
  // near 0.05 times the mean zero count per character.
  DensityOptions opts;
  opts.use_cache = false;
  opts.tail_limit = 1.0;
  const auto quad = run_density_experiment(cfg, FamilySpec{FamilyKind::kQuadratic, 40}, phi, opts);
  const auto cub = run_density_experiment(cfg, FamilySpec{FamilyKind::kCubic, 40}, phi, opts);
  CHECK(std::abs(quad.empirical - quad.predicted) < 0.6);
  CHECK(std::abs(cub.empirical - cub.predicted) < 0.6);
  CHECK(std::abs(quad.empirical - cub.empirical) < 0.6);
}

TEST_CASE("tail checks and errors") {
  const auto cfg = config(50, 0.4, 30);
  DensityOptions opts;
  opts.use_cache = false;
  opts.tail_limit = 1e-9;
  CHECK_THROWS_AS(run_density_experiment(cfg, FamilySpec{FamilyKind::kCubic, 50}, cfg.test_function(), opts),
                  ConvergenceError);
  opts.tail_limit = 0.15;
  CHECK_THROWS_AS(run_density_experiment(cfg, FamilySpec{FamilyKind::kCubicC9, 50}, cfg.test_function(), opts),
                  DomainError);
  CHECK_THROWS_AS(run_density_experiment(cfg, FamilySpec{FamilyKind::kCubic, 60}, cfg.test_function(), opts),
                  DomainError);
  CHECK_THROWS_AS(run_density_experiment(config(50, 1.2, 30), FamilySpec{FamilyKind::kQuadratic, 50},
                                         TestFunction::fejer(1.2), opts),
                  DomainError);
  CHECK_THROWS_AS(report_format_from_string("xml"), DomainError);
}

TEST_CASE("reports") {
  const auto& r = cubic_50();
  SUBCASE("csv") {
    const auto csv = emitted(r, ReportFormat::kCsv);
    std::istringstream is(csv);
    std::string line;
    std::size_t rows = 0;
    std::getline(is, line);
    CHECK(line.rfind("# family=cubic", 0) == 0);
    std::getline(is, line);
    CHECK(line == "label,conductor,zero_count,weight,S,tail,predicted,residual");
    std::string last;
    while (std::getline(is, line)) {
      ++rows;
      last = line;
    }
    CHECK(rows == r.characters.size() + 1);
    CHECK(last.rfind("summary,", 0) == 0);
  }
  SUBCASE("json round trip") {
    std::istringstream is(emitted(r, ReportFormat::kJson));
    CHECK(read_report_json(is) == r);
  }
  SUBCASE("svg schema") {
    const auto svg = emitted(r, ReportFormat::kSvg);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(occurrences(svg, "<polyline") == 1);
    CHECK(occurrences(svg, "id=\"kernel\"") == 1);
    CHECK(occurrences(svg, "id=\"histogram\"") == 1);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
  SUBCASE("names") {
    CHECK(report_file_name(r, ReportFormat::kJson) == "density_cubic_X50_sigma0.4.json");
    CHECK(extension(ReportFormat::kSvg) == "svg");
  }
}

TEST_CASE("reruns are byte identical and reuse the cache") {
  const auto cfg = config(50, 0.4, 30);
  DensityOptions opts;
  opts.cache_dir = scratch_dir("rerun");
  opts.workers = 2;
  const auto a = run_density_experiment(cfg, FamilySpec{FamilyKind::kCubic, 50}, cfg.test_function(), opts);
  const auto files = std::distance(fs::directory_iterator(opts.cache_dir), fs::directory_iterator{});
  CHECK(files == static_cast<long>(a.characters.size()));
  const auto b = run_density_experiment(cfg, FamilySpec{FamilyKind::kCubic, 50}, cfg.test_function(), opts);
  CHECK(emitted(a, ReportFormat::kCsv) == emitted(b, ReportFormat::kCsv));
  CHECK(emitted(a, ReportFormat::kJson) == emitted(b, ReportFormat::kJson));
  CHECK(emitted(a, ReportFormat::kCsv) == emitted(cubic_50(), ReportFormat::kCsv));
}
