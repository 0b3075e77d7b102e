#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "lowlying/density.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/verify.hpp"

using namespace lowlying;
namespace fs = std::filesystem;

namespace {

constexpr int kToleranceFailure = 1;
constexpr int kUsageError = 2;

struct CliConfig {
  std::string family = "quadratic";
  i64 X = 1000;
  double sigma = 0.8;
  double T = 30;
  i64 Y = 0;
  double Z = 20;
  double U = 0;
  std::string shape = "fejer";
  std::string cache_dir;
  std::string out;
  std::vector<std::string> formats;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool no_cache = false;

  ExperimentConfig experiment() const {
    ExperimentConfig cfg;
    cfg.X = X;
    cfg.Y = Y;
    cfg.Z = Z;
    cfg.U = U;
    cfg.sigma = sigma;
    cfg.T = T;
    cfg.shape = test_shape_from_string(shape);
    return cfg;
  }
  FamilySpec spec() const { return {family_kind_from_string(family), X}; }
  DensityOptions density_options() const {
    DensityOptions o;
    o.workers = workers;
    o.cache_dir = cache_dir;
    o.use_cache = !no_cache;
    return o;
  }
};

struct Handles {
  CLI::Option* X = nullptr;
  CLI::Option* Z = nullptr;
  CLI::Option* U = nullptr;
  CLI::Option* sigma = nullptr;
  CLI::Option* T = nullptr;
};

Handles add_common(CLI::App* sub, CliConfig& c) {
  Handles h;
  sub->add_option("--family", c.family, "quadratic, cubic, quartic, c9 or twist")->capture_default_str();
  h.X = sub->add_option("--X", c.X, "family size parameter")->capture_default_str();
  h.sigma = sub->add_option("--sigma", c.sigma, "support of the test-function transform")->capture_default_str();
  h.T = sub->add_option("--T", c.T, "zero height")->capture_default_str();
  sub->add_option("--Y", c.Y, "prime cutoff, 0 for X^(2 sigma)")->capture_default_str();
  h.Z = sub->add_option("--Z", c.Z, "Moebius threshold")->capture_default_str();
  h.U = sub->add_option("--U", c.U, "plateau parameter, 0 for log X")->capture_default_str();
  sub->add_option("--shape", c.shape, "fejer or cosine_bump")->capture_default_str();
  sub->add_option("--cache-dir", c.cache_dir, "zero cache (default $LOWLYING_CACHE_DIR, else .lowlying-cache)");
  sub->add_option("--out", c.out, "output file or directory");
  sub->add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_flag("--no-cache", c.no_cache, "neither read nor write the zero cache");
  return h;
}

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw DomainError("cannot write " + path);
  return file;
}

int run_families(const CliConfig& c, bool tables) {
  const auto spec = c.spec();
  std::ofstream file;
  if (spec.kind == FamilyKind::kCubicC9) {
    const auto elems = enumerate_c9_family(c.X);
    std::cerr << "family cubicZw9 X " << c.X << " members " << elems.size() << '\n';
    auto& os = output(c.out, file);
    os << "c,norm\n";
    for (const auto& e : elems) os << to_string(e) << ',' << norm(e) << '\n';
    return 0;
  }
  std::vector<DirichletChar> chars;
  if (spec.kind == FamilyKind::kTwist) {
    for (i64 d : quadratic_family_parameters(c.X)) chars.push_back(quadratic_character(d));
  } else if (spec.kind == FamilyKind::kQuadratic) {
    chars = enumerate_quadratic_family(c.X);
  } else if (spec.kind == FamilyKind::kCubic) {
    chars = enumerate_cubic_family(c.X);
  } else {
    chars = enumerate_quartic_family(c.X);
  }
  std::cerr << "family " << to_string(spec.kind) << " X " << c.X << " members " << chars.size() << '\n';
  auto& os = output(c.out, file);
  if (tables) {
    write_characters_csv(os, chars);
  } else {
    os << "label,conductor,order,parity,primitive\n";
    for (const auto& chi : chars)
      os << chi.label << ',' << chi.modulus << ',' << chi.order << ',' << chi.parity << ',' << int(chi.primitive) << '\n';
  }
  return 0;
}

int run_zeros(const CliConfig& c) {
  auto opts = c.density_options();
  opts.use_cache = true;
  const auto pop = populate_zero_cache(c.experiment(), c.spec(), opts);
  std::cout << "family " << c.family << " X " << c.X << " T " << c.T << ": " << pop.members << " members, "
            << pop.cached << " cached, " << pop.computed << " computed; cache " << ZeroCache(c.cache_dir).dir() << '\n';
  return 0;
}

int run_verify(const CliConfig& c, const Handles& h, std::vector<std::string> suites, VerifySettings s, bool quiet) {
  if (suites.empty()) suites = suite_names();
  if (h.X->count()) s.poisson_X = static_cast<double>(c.X);
  if (h.Z->count()) s.poisson_Z = c.Z;
  if (h.U->count()) s.poisson_U = c.U;
  s.cache_dir = c.cache_dir;
  s.use_cache = !c.no_cache;
  std::vector<VerificationRow> all;
  std::vector<std::string> failed;
  for (const auto& name : suites) {
    const auto r = run_suite(name, s);
    double worst = 0.0;
    for (const auto& row : r.rows) {
      if (std::isfinite(row.tolerance)) worst = std::max(worst, row.residual);
      if (!quiet || !row.pass)
        std::printf("%s %-24s %-48s residual %.3e tol %.3g\n", row.pass ? "ok  " : "FAIL", row.check.c_str(),
                    row.params.c_str(), row.residual, row.tolerance);
      if (!row.pass) failed.push_back(row.check + " [" + row.params + "]");
    }
    std::printf("suite %s: %zu checks, %zu failed, max residual %.3e\n", name.c_str(), r.rows.size(),
                r.failures().size(), worst);
    all.insert(all.end(), r.rows.begin(), r.rows.end());
  }
  if (!c.out.empty()) {
    std::ofstream file;
    write_verification_csv(output(c.out, file), all);
  }
  constexpr std::size_t kListed = 10;
  for (std::size_t i = 0; i < std::min(failed.size(), kListed); ++i) std::cerr << "tolerance failure: " << failed[i] << '\n';
  if (failed.size() > kListed) std::cerr << "... and " << failed.size() - kListed << " more\n";
  return failed.empty() ? 0 : kToleranceFailure;
}

int run_density(const CliConfig& c, double tail_limit, double bin, bool weighted) {
  const auto cfg = c.experiment();
  auto opts = c.density_options();
  opts.tail_limit = tail_limit;
  opts.histogram_bin = bin;
  opts.weighted = weighted;
  const auto report = run_density_experiment(cfg, c.spec(), cfg.test_function(), opts);
  std::vector<ReportFormat> formats;
  for (const auto& f : c.formats) formats.push_back(report_format_from_string(f));
  if (formats.empty()) formats = {ReportFormat::kCsv, ReportFormat::kJson, ReportFormat::kSvg};
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  for (auto f : formats) {
    const fs::path path = dir / report_file_name(report, f);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot write " + path.string());
    emit_report(os, report, f);
    std::cout << "wrote " << path.string() << '\n';
  }
  std::printf("%s X=%lld sigma=%g T=%g: %zu characters, empirical %.6f, predicted %.6f (%s), residual %.6f\n",
              report.family.c_str(), static_cast<long long>(report.X), report.sigma, report.T, report.characters.size(),
              report.empirical, report.predicted, report.kernel.c_str(), report.residual);
  return 0;
}

int run_explain(const CliConfig& c) {
  const auto cfg = c.experiment();
  const auto spec = c.spec();
  const auto phi = cfg.test_function();
  std::printf("family      %s\n", to_string(spec.kind).c_str());
  std::printf("X           %lld\n", static_cast<long long>(cfg.X));
  std::printf("sigma       %g\n", cfg.sigma);
  std::printf("shape       %s\n", to_string(phi.shape()).c_str());
  std::printf("T           %g\n", cfg.T);
  std::printf("Y           %lld%s\n", static_cast<long long>(cfg.prime_cutoff()), cfg.Y ? "" : " (X^(2 sigma))");
  std::printf("Z           %g\n", cfg.Z);
  std::printf("U           %g%s\n", cfg.plateau(), cfg.U > 0 ? "" : " (log X)");
  const double scaling = (spec.kind == FamilyKind::kTwist ? 2.0 : 1.0) * std::log(static_cast<double>(cfg.X));
  std::printf("scaling     %.12g\n", scaling);
  if (spec.kind != FamilyKind::kCubicC9) {
    const Kernel k = family_kernel(spec.kind);
    std::printf("kernel      W_%s\n", to_string(k).c_str());
    if (k == Kernel::kU || cfg.sigma < 1.0) std::printf("predicted   %.12g\n", predicted_integral(phi, k));
    else std::printf("predicted   unavailable (sigma >= 1)\n");
  } else {
    std::printf("kernel      none (no zero side for this family)\n");
  }
  std::printf("cache       %s%s\n", ZeroCache(c.cache_dir).dir().c_str(), c.no_cache ? " (disabled)" : "");
  std::printf("workers     %d\n", c.workers);
  std::printf("out         %s\n", c.out.empty() ? "." : c.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-lying zeros of Dirichlet and Hecke character families"};
  app.require_subcommand(1);
  CliConfig c;

  auto* families = app.add_subcommand("families", "enumerate a family and export its members");
  add_common(families, c);
  bool tables = false;
  families->add_flag("--tables", tables, "export full value tables");

  auto* zeros = app.add_subcommand("zeros", "compute zeros of every family member into the cache");
  add_common(zeros, c);

  auto* verify = app.add_subcommand("verify", "run identity and oracle suites");
  const Handles vh = add_common(verify, c);
  std::vector<std::string> suites;
  VerifySettings s;
  bool quiet = false;
  verify->add_option("--suite", suites, "gauss, poisson, mobius, decomposition, pv, coeffs, weil (default all)")
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--tol-gauss", s.gauss_tol)->capture_default_str();
  verify->add_option("--tol-poisson", s.poisson_tol)->capture_default_str();
  verify->add_option("--tol-decomposition", s.decomposition_tol)->capture_default_str();
  verify->add_option("--pv-stability", s.pv_stability, "largest allowed spread of the max ratio")->capture_default_str();
  verify->add_option("--tol-mertens", s.mertens_tol)->capture_default_str();
  verify->add_option("--square-band", s.square_band)->capture_default_str();
  verify->add_option("--tol-weil", s.weil_tol)->capture_default_str();
  verify->add_option("--tol-weil-twist", s.twist_tol)->capture_default_str();
  verify->add_option("--tol-sensitivity", s.sensitivity_tol)->capture_default_str();
  verify->add_option("--truncation-ratio", s.weil_ratio, "required T_short / T residual ratio")->capture_default_str();
  verify->add_option("--count-slack", s.count_slack)->capture_default_str();
  verify->add_flag("--quiet", quiet, "print failing checks and suite summaries only");

  auto* density = app.add_subcommand("density", "one-level density experiment and reports");
  add_common(density, c);
  double tail_limit = DensityOptions{}.tail_limit, bin = DensityOptions{}.histogram_bin;
  bool weighted = false;
  density->add_option("--format", c.formats, "csv, json, svg (default all three)")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  density->add_option("--tail-limit", tail_limit, "largest allowed zero-sum tail per character")->capture_default_str();
  density->add_option("--bin", bin, "histogram bin width")->capture_default_str();
  density->add_flag("--weighted", weighted, "Phi(d/X) weights (twist family)");

  auto* explain = app.add_subcommand("explain", "print the resolved configuration");
  add_common(explain, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*families) return run_families(c, tables);
    if (*zeros) return run_zeros(c);
    if (*verify) return run_verify(c, vh, suites, s, quiet);
    if (*density) return run_density(c, tail_limit, bin, weighted);
    if (*explain) return run_explain(c);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kToleranceFailure;
  }
  return kUsageError;
}
