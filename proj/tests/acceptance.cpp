// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [cache-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "lowlying/density.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/verify.hpp"
#include "oracles.hpp"

using namespace lowlying;

namespace {

// tolerances and sizes as stated by the acceptance criteria
constexpr double kGaussTol = 1e-9;
constexpr double kGaussSeconds = 5;
constexpr double kPoissonTol = 1e-6;
constexpr double kPoissonSeconds = 60;
constexpr double kMobiusSeconds = 1;
constexpr double kSymbolSeconds = 10;
constexpr double kWeilTol = 5e-3;
constexpr double kWeilRatio = 2;
constexpr double kWeilSeconds = 300;
constexpr double kTwistTol = 1e-2;
constexpr double kSensitivityTol = 1e-6;
constexpr double kCountSlack = 2;
constexpr double kMertensTol = 2;
constexpr double kSquareBand = 0.15;
constexpr double kDecompositionTol = 1e-9;
constexpr double kPVStability = 2;
constexpr double kDensityTol = 0.25;
constexpr double kDensitySeconds = 1800;
constexpr double kSplitTol = 1e-10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d  %-34s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str(), sec);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Worst {
  double residual = 0;
  std::string where;
  std::size_t count = 0;
  bool pass = true;
  void add(const VerificationRow& r) {
    ++count;
    pass = pass && r.pass;
    if (r.residual >= residual) {
      residual = r.residual;
      where = r.params;
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  const std::string cache = argc > 1 ? argv[1] : "acceptance_cache";
  std::filesystem::create_directories(cache);
  VerifySettings s;
  s.cache_dir = cache;
  s.gauss_tol = kGaussTol;
  s.poisson_tol = kPoissonTol;
  s.weil_tol = kWeilTol;
  s.weil_ratio = kWeilRatio;
  s.twist_tol = kTwistTol;
  s.sensitivity_tol = kSensitivityTol;
  s.count_slack = kCountSlack;
  s.mertens_tol = kMertensTol;
  s.square_band = kSquareBand;
  s.decomposition_tol = kDecompositionTol;
  s.pv_stability = kPVStability;

  SuiteResult gauss;
  double gauss_seconds = 0;
  {
    const auto t0 = std::chrono::steady_clock::now();
    gauss = gauss_suite(s);
    gauss_seconds = seconds_since(t0);
  }

  report(1, "Gauss-type sum closed form", [&] {
    Worst w;
    for (const auto& r : gauss.rows)
      if (r.check == "tau_m") w.add(r);
    return Outcome{w.pass && gauss_seconds < kGaussSeconds,
                   fmt("k<=315 odd, |m|<=60: max |tau_m - closed| = %.2e at %s; suite time %.2f s", w.residual,
                       w.where.c_str(), gauss_seconds)};
  });

  report(2, "Poisson identity", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = poisson_suite(s);
    const double sec = seconds_since(t0);
    Worst w;
    for (const auto& row : r.rows) w.add(row);
    return Outcome{w.pass && sec < kPoissonSeconds,
                   fmt("k=1..99 odd, X=1e3, Z=10, U=log 1e3: max residual %.2e (%s)", w.residual, w.where.c_str())};
  });

  report(3, "Moebius split", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = mobius_suite(s);
    const double sec = seconds_since(t0);
    double mismatches = 0;
    for (const auto& row : r.rows) mismatches += row.residual;
    return Outcome{r.passed() && sec < kMobiusSeconds,
                   fmt("d<=1e4, Z in {1,5,30}: %g mismatches of M_Z + R_Z = mu^2", mismatches)};
  });

  report(4, "Residue symbols", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    long checked = 0, wrong = 0;
    auto field_check = [&](auto tag, int order, auto symbol) {
      using Tag = decltype(tag);
      for (const auto& ideal : enumerate_prime_ideals<Tag>(200)) {
        if (ideal.norm == (order == 3 ? 3 : 2)) continue;
        const auto& pi = ideal.generator;
        const bool inert = !is_prime_integer(ideal.norm);
        const i64 p = inert ? std::llround(std::sqrt(static_cast<double>(ideal.norm))) : ideal.norm;
        for (i64 c = 0; c < p; ++c)
          for (i64 d = 0; d < (inert ? p : 1); ++d) {
            const auto v = symbol(c, d, pi);
            ++checked;
            if ((v.is_zero() ? -1 : v.index()) != oracle::residue_field_symbol(c, d, pi.a, pi.b, order)) ++wrong;
          }
      }
    };
    field_check(EisensteinTag{}, 3,
                [](i64 c, i64 d, const EisensteinInt& pi) { return cubic_symbol_prime(EisensteinInt{c, d}, pi); });
    field_check(GaussianTag{}, 4,
                [](i64 c, i64 d, const GaussianInt& pi) { return quartic_symbol_prime(GaussianInt{c, d}, pi); });
    long rational = 0, rational_wrong = 0;
    for (i64 p = 1; p <= 100; ++p)
      for (i64 d = -100; d <= 100; ++d) {
        if (oracle::modp(d, 3) != 1 || gcd_i64(p, d) != 1) continue;
        ++rational;
        if (cubic_symbol(EisensteinInt{p}, EisensteinInt{d}) != RootOfUnity(3, 0)) ++rational_wrong;
      }
    const double sec = seconds_since(t0);
    return Outcome{wrong == 0 && rational_wrong == 0 && sec < kSymbolSeconds,
                   fmt("%ld residue classes vs residue-field oracle, %ld wrong; %ld rational pairs, %ld nontrivial", checked,
                       wrong, rational, rational_wrong)};
  });

  report(5, "Gauss sums of characters", [&] {
    Worst w;
    for (const auto& r : gauss.rows)
      if (r.check == "gauss_sum_modulus") w.add(r);
    return Outcome{w.pass && w.count > 0,
                   fmt("%zu characters with q<=500: max ||tau| - sqrt q| = %.2e", w.count, w.residual)};
  });

  SuiteResult weil;
  double weil_seconds = 0;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      weil = weil_suite(s);
    } catch (const std::exception& e) {
      weil.rows.push_back({"weil_suite", e.what(), 0, 0, INFINITY, 0, false});
    }
    weil_seconds = seconds_since(t0);
  }

  report(6, "Weil cross-check, degree 1", [&] {
    Worst res, ratio;
    double min_ratio = INFINITY;
    for (const auto& r : weil.rows) {
      if (r.check == "weil_degree1" || r.check == "weil_suite") res.add(r);
      if (r.check == "weil_truncation_ratio") {
        ratio.add(r);
        min_ratio = std::min(min_ratio, r.residual);
      }
    }
    return Outcome{res.pass && ratio.pass && res.count == 8 && weil_seconds < kWeilSeconds,
                   fmt("max |zero side - prime side| = %.2e (%s); min T=20/T=40 residual ratio %.2f (need >= %g); "
                       "suite time %.1f s",
                       res.residual, res.where.c_str(), min_ratio, kWeilRatio, weil_seconds)};
  });

  report(7, "Weil cross-check, degree 2", [&] {
    Worst res, sens;
    for (const auto& r : weil.rows) {
      if (r.check == "weil_degree2") res.add(r);
      if (r.check == "cutoff_sensitivity") sens.add(r);
    }
    return Outcome{res.pass && sens.pass && res.count == 1 && sens.count == 1,
                   fmt("d=3, weight 12, T=40: residual %.2e, cutoff sensitivity %.2e", res.residual, sens.residual)};
  });

  report(8, "Zero counts", [&] {
    Worst w;
    for (const auto& r : weil.rows)
      if (r.check == "zero_count") w.add(r);
    return Outcome{w.pass && w.count > 0,
                   fmt("%zu lists: max |N(T) - main term| = %.2f (%s)", w.count, w.residual, w.where.c_str())};
  });

  report(9, "Coefficient statistics", [&] {
    const auto r = coeff_suite(s);
    std::string detail;
    for (const auto& row : r.rows) detail += fmt("%s %.4g vs %.4g; ", row.check.c_str(), row.lhs, row.rhs);
    return Outcome{r.passed(), detail};
  });

  report(10, "Cubic decomposition identity", [&] {
    const auto r = decomposition_suite(s);
    Worst w;
    for (const auto& row : r.rows) w.add(row);
    return Outcome{w.pass && w.count == 6, fmt("p in {7,13,31}, X in {100,400}: max residual %.2e", w.residual)};
  });

  report(11, "Polya-Vinogradov ratio", [&] {
    const auto r = pv_suite(s);
    std::string detail;
    for (const auto& row : r.rows)
      if (row.check != "pv_ratio") detail += fmt("%s %s %.4g; ", row.check.c_str(), row.params.c_str(), row.residual);
    return Outcome{r.passed(), detail};
  });

  DensityOptions dopts;
  dopts.cache_dir = cache;
  auto density = [&](FamilyKind kind, i64 X, double sigma, const DensityOptions& o) {
    ExperimentConfig cfg;
    cfg.X = X;
    cfg.sigma = sigma;
    cfg.T = 30;
    return run_density_experiment(cfg, FamilySpec{kind, X}, cfg.test_function(), o);
  };
  auto emitted = [](const DensityReport& r, ReportFormat f) {
    std::ostringstream os;
    emit_report(os, r, f);
    return os.str();
  };

  DensityReport quad_small;
  report(12, "Density trend, quadratic (USp)", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    quad_small = density(FamilyKind::kQuadratic, 250, 0.8, dopts);
    const auto large = density(FamilyKind::kQuadratic, 1000, 0.8, dopts);
    const double sec = seconds_since(t0);
    const double a = std::abs(quad_small.empirical - 0.6), b = std::abs(large.empirical - 0.6);
    return Outcome{b <= kDensityTol && b < a && sec < kDensitySeconds,
                   fmt("|emp - 0.6|: X=250 %.4f (%zu chars), X=1000 %.4f (%zu chars)", a, quad_small.characters.size(), b,
                       large.characters.size())};
  });

  report(13, "Density trend, cubic (U)", [&] {
    const auto small = density(FamilyKind::kCubic, 25, 0.4, dopts);
    const auto large = density(FamilyKind::kCubic, 100, 0.4, dopts);
    const double a = std::abs(small.empirical - 1.0), b = std::abs(large.empirical - 1.0);
    return Outcome{b <= kDensityTol && b < a,
                   fmt("|emp - 1|: X=25 %.4f (%zu chars), X=100 %.4f (%zu chars); need <= %g at X=100", a,
                       small.characters.size(), b, large.characters.size(), kDensityTol)};
  });

  report(14, "Family prime sum", [&] {
    const EigenformCoeffs f(200'000);
    ExperimentConfig cfg;
    cfg.sigma = 0.8;
    double split = 0, previous = INFINITY;
    bool decreasing = true;
    std::string detail;
    for (i64 X : {500, 2000}) {
      cfg.X = X;
      const auto r = family_prime_sum(cfg, f);
      split = std::max(split, std::abs(r.S - (r.S_M + r.S_R)));
      const double scaled = std::abs(r.S) / (static_cast<double>(X) * std::log(static_cast<double>(X)));
      decreasing = decreasing && scaled < previous;
      previous = scaled;
      detail += fmt("X=%lld |S|/(X log X) %.5f; ", static_cast<long long>(X), scaled);
    }
    return Outcome{split <= kSplitTol && decreasing, detail + fmt("max |S - S_M - S_R| %.2e", split)};
  });

  report(15, "Determinism", [&] {
    if (quad_small.characters.empty()) throw DomainError("criterion 12 produced no report");
    DensityOptions fresh = dopts;
    fresh.use_cache = false;
    fresh.workers = 2;
    const auto again = density(FamilyKind::kQuadratic, 250, 0.8, fresh);
    const bool csv = emitted(again, ReportFormat::kCsv) == emitted(quad_small, ReportFormat::kCsv);
    const bool json = emitted(again, ReportFormat::kJson) == emitted(quad_small, ReportFormat::kJson);
    return Outcome{csv && json, fmt("quadratic X=250 cached vs recomputed on 2 workers: csv %s, json %s",
                                    csv ? "identical" : "differ", json ? "identical" : "differ")};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
