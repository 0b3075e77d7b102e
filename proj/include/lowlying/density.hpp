#pragma once

// Family-averaged one-level densities against the random-matrix predictions,
// and their CSV / JSON / SVG reports.

#include <iosfwd>
#include <string>
#include <vector>

#include "lowlying/explicit_formula.hpp"
#include "lowlying/families.hpp"
#include "lowlying/hecke.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/test_function.hpp"

namespace lowlying {

/// quadratic -> USp, cubic and quartic -> U, twist -> SO+. cubicZw9 has no
/// zero side and is rejected.
Kernel family_kernel(FamilyKind kind);

struct CharacterDensity {
  std::string label;
  i64 conductor = 0;
  std::size_t zero_count = 0;
  double weight = 1;
  double S = 0;
  double tail = 0;

  bool operator==(const CharacterDensity&) const = default;
};

struct Histogram {
  double lo = 0;
  double bin_width = 0;
  std::vector<i64> counts;  // scaled zeros gamma scaling / 2 pi, |gamma| <= T

  double mass(double members) const;  // integral of counts / (members width)
  bool operator==(const Histogram&) const = default;
};

struct DensityReport {
  std::string family;
  std::string kernel;
  i64 X = 0;
  double sigma = 0;
  double T = 0;
  std::string shape;
  double scaling = 0;
  bool weighted = false;
  double U = 0;
  double tail_limit = 0;
  std::vector<CharacterDensity> characters;
  double empirical = 0;
  double predicted = 0;
  double residual = 0;
  double mean_zero_count = 0;
  double mean_main_term = 0;
  double max_tail = 0;
  Histogram histogram;

  bool operator==(const DensityReport&) const = default;
};

struct DensityOptions {
  int workers = 1;
  std::string cache_dir;    // used when use_cache
  bool use_cache = true;
  double tail_limit = 0.15;  // largest allowed zero-side tail per character
  bool weighted = false;    // Phi(d/X) weights, twist family only
  double histogram_bin = 0.1;
  const EigenformCoeffs* form = nullptr;  // twist family; built on demand when null
};

/// Average of the zero sums S(chi, phi) = sum phi(gamma scaling / 2 pi) over
/// the family, scaling = log X (2 log X for twists), paired with the family's
/// predicted kernel. Zero lists come from the cache or are computed; an
/// incomplete list aborts with the character named.
DensityReport run_density_experiment(const ExperimentConfig& cfg, const FamilySpec& family, const TestFunction& phi,
                                     const DensityOptions& options = {});

/// The same over an explicit character list.
DensityReport run_density_experiment(const ExperimentConfig& cfg, FamilyKind kind,
                                     const std::vector<DirichletChar>& characters, const TestFunction& phi,
                                     const DensityOptions& options = {});

struct CachePopulation {
  std::size_t members = 0;
  std::size_t cached = 0;    // lists already in the cache
  std::size_t computed = 0;  // lists computed and stored
};

/// Computes and stores the zero lists of every family member up to cfg.T
/// that the cache does not already cover.
CachePopulation populate_zero_cache(const ExperimentConfig& cfg, const FamilySpec& family,
                                    const DensityOptions& options = {});

enum class ReportFormat { kCsv, kJson, kSvg };

ReportFormat report_format_from_string(const std::string& name);
std::string extension(ReportFormat format);

/// density_<family>_X<X>_sigma<sigma>.<ext>
std::string report_file_name(const DensityReport& report, ReportFormat format);

void emit_report(std::ostream& os, const DensityReport& report, ReportFormat format);
DensityReport read_report_json(std::istream& is);

}  // namespace lowlying
