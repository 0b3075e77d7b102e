#include "lowlying/density.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <ostream>
#include <thread>

#include "lowlying/errors.hpp"
#include "lowlying/gauss_sums.hpp"

namespace lowlying {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Fresh zeros are rounded as the cache stores them, so cached and uncached runs agree bit for bit.
double cache_precision(double g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", g);
  return std::strtod(buf, nullptr);
}

struct Member {
  std::string label;
  i64 conductor = 0;
  int order = 1;
  double weight = 1;
  const DirichletChar* chi = nullptr;
  i64 d = 0;  // twist parameter
};

template <class F>
void parallel_indexed(std::size_t count, int workers, F&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Collected {
  std::size_t cached = 0, computed = 0;
};

std::vector<ZeroList> collect_zeros(double T, FamilyKind kind, const std::vector<Member>& members,
                                    const DensityOptions& options, const EigenformCoeffs* form, Collected* tally) {
  const ZeroCache cache(options.cache_dir);
  const int degree = kind == FamilyKind::kTwist ? 2 : 1;
  std::vector<ZeroList> zeros(members.size());
  std::vector<char> fresh(members.size(), 0);
  parallel_indexed(members.size(), options.workers, [&](std::size_t i) {
    const Member& m = members[i];
    if (options.use_cache)
      if (auto hit = cache.load(m.conductor, m.label, m.order, T, degree)) {
        zeros[i] = std::move(*hit);
        return;
      }
    zeros[i] = m.chi ? find_zeros_dirichlet(*m.chi, T) : find_zeros_twist(m.d, T, *form);
    for (double& g : zeros[i].gammas) g = cache_precision(g);
    fresh[i] = 1;
  });
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!zeros[i].complete)
      throw ConvergenceError("density: zero list for " + members[i].label + " is incomplete (found " +
                                 std::to_string(zeros[i].gammas.size()) + ", expected " +
                                 shortest(zeros[i].expected_count) + ")",
                             static_cast<double>(zeros[i].gammas.size()));
    if (options.use_cache && fresh[i]) cache.store(zeros[i]);
  }
  if (tally) {
    tally->computed = static_cast<std::size_t>(std::count(fresh.begin(), fresh.end(), 1));
    tally->cached = members.size() - tally->computed;
  }
  return zeros;
}

DensityReport run_members(const ExperimentConfig& cfg, FamilyKind kind, const std::vector<Member>& members,
                          const TestFunction& phi, const DensityOptions& options, const EigenformCoeffs* form) {
  const Kernel kernel = family_kernel(kind);
  DensityReport report;
  report.family = to_string(kind);
  report.kernel = to_string(kernel);
  report.X = cfg.X;
  report.sigma = phi.sigma();
  report.T = cfg.T;
  report.shape = to_string(phi.shape());
  report.scaling = (kind == FamilyKind::kTwist ? 2.0 : 1.0) * std::log(static_cast<double>(cfg.X));
  report.weighted = options.weighted;
  report.U = cfg.plateau();
  report.tail_limit = options.tail_limit;
  report.predicted = predicted_integral(phi, kernel);
  if (members.empty()) throw DomainError("density: the " + report.family + " family at X = " + std::to_string(cfg.X) + " is empty");

  std::vector<ZeroList> zeros = collect_zeros(cfg.T, kind, members, options, form, nullptr);

  const double edge = cfg.T * report.scaling / (2.0 * kPi);
  const double bw = options.histogram_bin;
  const auto half_bins = static_cast<std::size_t>(std::ceil(edge / bw));
  report.histogram.bin_width = bw;
  report.histogram.lo = -static_cast<double>(half_bins) * bw;
  report.histogram.counts.assign(2 * half_bins, 0);

  double weighted_sum = 0.0, weight_total = 0.0, count_sum = 0.0, main_sum = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const ZeroSide side = zero_side(zeros[i], phi, report.scaling);
    if (side.tail > options.tail_limit)
      throw ConvergenceError("density: test-function tail for " + members[i].label + " is " + shortest(side.tail),
                             side.tail);
    CharacterDensity row{members[i].label, members[i].conductor, zeros[i].gammas.size(), members[i].weight,
                         side.value, side.tail};
    report.characters.push_back(row);
    weighted_sum += row.weight * row.S;
    weight_total += row.weight;
    count_sum += static_cast<double>(row.zero_count);
    main_sum += zeros[i].main_term;
    report.max_tail = std::max(report.max_tail, side.tail);
    for (double g : zeros[i].gammas) {
      const double x = g * report.scaling / (2.0 * kPi);
      auto k = static_cast<std::size_t>(std::clamp((x - report.histogram.lo) / bw, 0.0,
                                                   static_cast<double>(report.histogram.counts.size() - 1)));
      ++report.histogram.counts[k];
    }
  }
  if (!(weight_total > 0.0)) throw DomainError("density: all family weights vanish");
  report.empirical = weighted_sum / weight_total;
  report.residual = std::abs(report.empirical - report.predicted);
  report.mean_zero_count = count_sum / static_cast<double>(members.size());
  report.mean_main_term = main_sum / static_cast<double>(members.size());
  return report;
}

void check_support(FamilyKind kind, const TestFunction& phi) {
  const Kernel kernel = family_kernel(kind);
  if (kernel != Kernel::kU && phi.sigma() >= 1.0)
    throw DomainError("density: support sigma must be below 1 for the " + to_string(kernel) + " prediction");
}

std::vector<DirichletChar> family_characters(const FamilySpec& family) {
  switch (family.kind) {
    case FamilyKind::kQuadratic: return enumerate_quadratic_family(family.X);
    case FamilyKind::kCubic: return enumerate_cubic_family(family.X);
    case FamilyKind::kQuartic: return enumerate_quartic_family(family.X);
    case FamilyKind::kCubicC9:
    case FamilyKind::kTwist: break;
  }
  family_kernel(family.kind);
  throw DomainError("density: the " + to_string(family.kind) + " family has no character list");
}

struct TwistMembers {
  std::vector<Member> members;
  std::unique_ptr<EigenformCoeffs> own;
  const EigenformCoeffs* form = nullptr;

  TwistMembers(const ExperimentConfig& cfg, const DensityOptions& options) {
    const SmoothWeight weight(cfg.plateau());
    i64 needed = 0;
    for (i64 d : quadratic_family_parameters(cfg.X)) {
      if (8 * d > 200) throw CapacityError("density: twist family needs 8d <= 200, got d = " + std::to_string(d));
      const double w = options.weighted ? weight(static_cast<double>(d) / static_cast<double>(cfg.X)) : 1.0;
      members.push_back({"f12x8d:d=" + std::to_string(d), 64 * d * d, 2, w, nullptr, d});
      needed = std::max(needed, twist_coefficients_needed(d, cfg.T));
    }
    form = options.form;
    if (!form || form->size() < needed) {
      own = std::make_unique<EigenformCoeffs>(std::min(needed, kMaxTauN));
      form = own.get();
    }
  }
};

}  // namespace

Kernel family_kernel(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kQuadratic: return Kernel::kUSp;
    case FamilyKind::kCubic:
    case FamilyKind::kQuartic: return Kernel::kU;
    case FamilyKind::kTwist: return Kernel::kSOPlus;
    case FamilyKind::kCubicC9: break;
  }
  throw DomainError("density: no zero side for the cubicZw9 family (Hecke L-functions over Q(w) are not computed)");
}

double Histogram::mass(double members) const {
  double total = 0.0;
  for (i64 c : counts) total += static_cast<double>(c) / (members * bin_width) * bin_width;
  return total;
}

DensityReport run_density_experiment(const ExperimentConfig& cfg, FamilyKind kind,
                                     const std::vector<DirichletChar>& characters, const TestFunction& phi,
                                     const DensityOptions& options) {
  if (kind == FamilyKind::kTwist) throw DomainError("density: twist families are built from their parameters");
  if (options.weighted) throw DomainError("density: smooth weights apply to the twist family only");
  check_support(kind, phi);
  std::vector<Member> members;
  for (const auto& chi : characters) members.push_back({chi.label, chi.modulus, chi.order, 1.0, &chi, 0});
  return run_members(cfg, kind, members, phi, options, nullptr);
}

DensityReport run_density_experiment(const ExperimentConfig& cfg, const FamilySpec& family, const TestFunction& phi,
                                     const DensityOptions& options) {
  if (family.X != cfg.X) throw DomainError("density: family X and experiment X differ");
  check_support(family.kind, phi);
  if (family.kind != FamilyKind::kTwist)
    return run_density_experiment(cfg, family.kind, family_characters(family), phi, options);
  const TwistMembers t(cfg, options);
  return run_members(cfg, family.kind, t.members, phi, options, t.form);
}

CachePopulation populate_zero_cache(const ExperimentConfig& cfg, const FamilySpec& family,
                                    const DensityOptions& options) {
  if (family.X != cfg.X) throw DomainError("zeros: family X and experiment X differ");
  Collected tally;
  std::size_t size = 0;
  if (family.kind == FamilyKind::kTwist) {
    const TwistMembers t(cfg, options);
    collect_zeros(cfg.T, family.kind, t.members, options, t.form, &tally);
    size = t.members.size();
  } else {
    const auto chars = family_characters(family);
    std::vector<Member> members;
    for (const auto& chi : chars) members.push_back({chi.label, chi.modulus, chi.order, 1.0, &chi, 0});
    collect_zeros(cfg.T, family.kind, members, options, nullptr, &tally);
    size = members.size();
  }
  return {size, tally.cached, tally.computed};
}

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "svg") return ReportFormat::kSvg;
  throw DomainError("unknown report format '" + name + "'");
}

std::string extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kJson: return "json";
    case ReportFormat::kSvg: return "svg";
  }
  return "txt";
}

std::string report_file_name(const DensityReport& report, ReportFormat format) {
  return "density_" + report.family + "_X" + std::to_string(report.X) + "_sigma" + shortest(report.sigma) + "." +
         extension(format);
}

namespace {

json to_json(const DensityReport& r) {
  json j;
  j["family"] = r.family;
  j["kernel"] = r.kernel;
  j["X"] = r.X;
  j["sigma"] = r.sigma;
  j["T"] = r.T;
  j["shape"] = r.shape;
  j["scaling"] = r.scaling;
  j["weighted"] = r.weighted;
  j["U"] = r.U;
  j["tail_limit"] = r.tail_limit;
  j["empirical"] = r.empirical;
  j["predicted"] = r.predicted;
  j["residual"] = r.residual;
  j["mean_zero_count"] = r.mean_zero_count;
  j["mean_main_term"] = r.mean_main_term;
  j["max_tail"] = r.max_tail;
  json chars = json::array();
  for (const auto& c : r.characters)
    chars.push_back({{"label", c.label}, {"conductor", c.conductor}, {"zero_count", c.zero_count},
                     {"weight", c.weight}, {"S", c.S}, {"tail", c.tail}});
  j["characters"] = std::move(chars);
  j["histogram"] = {{"lo", r.histogram.lo}, {"bin_width", r.histogram.bin_width}, {"counts", r.histogram.counts}};
  return j;
}

void emit_csv(std::ostream& os, const DensityReport& r) {
  os << "# family=" << r.family << " kernel=" << r.kernel << " X=" << r.X << " sigma=" << shortest(r.sigma)
     << " T=" << shortest(r.T) << " shape=" << r.shape << " scaling=" << shortest(r.scaling)
     << " weighted=" << (r.weighted ? 1 : 0) << " U=" << shortest(r.U) << '\n';
  os << "label,conductor,zero_count,weight,S,tail,predicted,residual\n";
  char buf[256];
  double weights = 0.0;
  for (const auto& c : r.characters) {
    std::snprintf(buf, sizeof buf, ",%lld,%zu,%.17g,%.17g,%.17g,,\n", static_cast<long long>(c.conductor), c.zero_count,
                  c.weight, c.S, c.tail);
    os << c.label << buf;
    weights += c.weight;
  }
  std::snprintf(buf, sizeof buf, "summary,,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.mean_zero_count, weights,
                r.empirical, r.max_tail, r.predicted, r.residual);
  os << buf;
}

void emit_svg(std::ostream& os, const DensityReport& r) {
  const double width = 720, height = 420, left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const auto& h = r.histogram;
  const double members = static_cast<double>(std::max<std::size_t>(r.characters.size(), 1));
  const double x_lo = h.lo, x_hi = h.lo + h.bin_width * static_cast<double>(h.counts.size());
  double y_max = 2.0;
  for (i64 c : h.counts) y_max = std::max(y_max, static_cast<double>(c) / (members * h.bin_width));
  y_max *= 1.1;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return top + plot_h - y / y_max * plot_h; };
  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"420\" viewBox=\"0 0 720 420\">\n";
  os << "<title>one-level density " << r.family << " X=" << r.X << " sigma=" << shortest(r.sigma) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"720\" height=\"420\" fill=\"white\"/>\n";
  os << "<g id=\"histogram\" fill=\"#9bb3c9\" stroke=\"#5b7590\" stroke-width=\"0.5\">\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    const double x0 = h.lo + h.bin_width * static_cast<double>(k);
    const double y = static_cast<double>(h.counts[k]) / (members * h.bin_width);
    std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\"/>\n", sx(x0), sy(y),
                  sx(x0 + h.bin_width) - sx(x0), sy(0.0) - sy(y));
    os << buf;
  }
  os << "</g>\n";
  Kernel kernel = Kernel::kU;
  for (Kernel k : {Kernel::kU, Kernel::kUSp, Kernel::kSOPlus, Kernel::kSOMinus, Kernel::kO})
    if (to_string(k) == r.kernel) kernel = k;
  os << "<polyline id=\"kernel\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
  const int samples = 400;
  for (int i = 0; i <= samples; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / samples;
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", sx(x), sy(kernel_density(kernel, x)));
    os << buf;
  }
  os << "\"/>\n";
  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", left, sy(0.0),
                left + plot_w, sy(0.0));
  os << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", sx(0.0), top, sx(0.0),
                sy(0.0));
  os << buf << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">%.3g</text>\n", left - 4, sy(0.0) + 14, x_lo);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.3g</text>\n", left + plot_w,
                sy(0.0) + 14, x_hi);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"24\">%s, W_%s, empirical %.4f, predicted %.4f</text>\n", left,
                r.family.c_str(), r.kernel.c_str(), r.empirical, r.predicted);
  os << buf << "</g>\n</svg>\n";
}

}  // namespace

void emit_report(std::ostream& os, const DensityReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: emit_csv(os, report); return;
    case ReportFormat::kJson: os << to_json(report).dump(2) << '\n'; return;
    case ReportFormat::kSvg: emit_svg(os, report); return;
  }
  throw DomainError("unknown report format");
}

DensityReport read_report_json(std::istream& is) {
  const json j = json::parse(is);
  DensityReport r;
  r.family = j.at("family").get<std::string>();
  r.kernel = j.at("kernel").get<std::string>();
  r.X = j.at("X").get<i64>();
  r.sigma = j.at("sigma").get<double>();
  r.T = j.at("T").get<double>();
  r.shape = j.at("shape").get<std::string>();
  r.scaling = j.at("scaling").get<double>();
  r.weighted = j.at("weighted").get<bool>();
  r.U = j.at("U").get<double>();
  r.tail_limit = j.at("tail_limit").get<double>();
  r.empirical = j.at("empirical").get<double>();
  r.predicted = j.at("predicted").get<double>();
  r.residual = j.at("residual").get<double>();
  r.mean_zero_count = j.at("mean_zero_count").get<double>();
  r.mean_main_term = j.at("mean_main_term").get<double>();
  r.max_tail = j.at("max_tail").get<double>();
  for (const auto& c : j.at("characters"))
    r.characters.push_back({c.at("label").get<std::string>(), c.at("conductor").get<i64>(),
                            c.at("zero_count").get<std::size_t>(), c.at("weight").get<double>(),
                            c.at("S").get<double>(), c.at("tail").get<double>()});
  const auto& h = j.at("histogram");
  r.histogram.lo = h.at("lo").get<double>();
  r.histogram.bin_width = h.at("bin_width").get<double>();
  r.histogram.counts = h.at("counts").get<std::vector<i64>>();
  return r;
}

}  // namespace lowlying
