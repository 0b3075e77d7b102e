#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "lowlying/arith.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/symbols.hpp"

using namespace lowlying;

namespace {

std::vector<DirichletChar> cubic_mod(i64 q) {
  std::vector<DirichletChar> out;
  for (const auto& n : cubic_generators_of_norm(q)) out.push_back(character_table(n));
  return out;
}

DirichletChar chi8(i64 d) {
  std::vector<std::int8_t> table(static_cast<std::size_t>(8 * d));
  for (i64 m = 0; m < 8 * d; ++m) {
    const int k = kronecker(8 * d, m);
    table[static_cast<std::size_t>(m)] = k == 0 ? -1 : (k == 1 ? 0 : 1);
  }
  return make_character(8 * d, 2, table, "8d:d=" + std::to_string(d));
}

const EigenformCoeffs& delta_coeffs() {
  static const EigenformCoeffs f(200000);
  return f;
}

}  // namespace

TEST_CASE("dirichlet L through Hurwitz") {
  const auto chis = cubic_mod(7);
  REQUIRE(chis.size() == 2);
  const PrimeTable primes(100000);
  for (const auto& chi : chis) {
    cplx euler = 1.0;
    for (i64 p : primes.primes()) euler /= 1.0 - chi.value(p) / static_cast<double>(p * p);
    CHECK(std::abs(dirichlet_L(2.0, chi) - euler) < 1e-8);
  }
  const auto trivial = make_character(1, 1, {0}, "trivial");
  for (double s : {2.0, 3.5, -0.5})
    CHECK(dirichlet_L(s, trivial).real() == doctest::Approx(boost::math::zeta(s)).epsilon(1e-12));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(0.1, 2.0), im(-40.0, 40.0);
  for (int i = 0; i < 20; ++i) {
    const cplx s(re(rng), im(rng));
    CHECK(std::abs(std::conj(dirichlet_L(s, chis[0])) - dirichlet_L(std::conj(s), chis[0].conj())) < 1e-10);
  }
}

TEST_CASE("root numbers and completed values") {
  for (i64 X : {10, 50, 125})
    for (const auto& chi : enumerate_quadratic_family(X)) CHECK(std::abs(std::abs(root_number(chi)) - 1.0) < 1e-10);
  for (i64 X : {7, 50, 200})
    for (const auto& chi : enumerate_cubic_family(X))
      if (chi.modulus <= 500) CHECK(std::abs(std::abs(root_number(chi)) - 1.0) < 1e-10);
  for (const auto& chi : enumerate_quartic_family(100))
    if (chi.modulus <= 500) CHECK(std::abs(std::abs(root_number(chi)) - 1.0) < 1e-10);

  const auto c8 = chi8(1);
  CHECK(std::abs(root_number(c8) - 1.0) < 1e-12);

  const auto chi = cubic_mod(7)[0];
  const CompletedLFunction theta(dirichlet_ldata(chi), 30.0);
  for (double t = 0.0; t <= 30.0; t += 0.25) {
    const auto v = completed_and_root(chi, t);
    CHECK(std::abs(v.imaginary) < 1e-9);
    const double scale = std::exp(theta.log_gamma_factor({0.5, t}).real());
    CHECK(std::abs(v.Z - theta.hardy_Z(t) * scale) < 1e-10 * std::max(1.0, std::abs(v.Z)));
  }
  CHECK_THROWS_AS(completed_and_root(make_character(4, 2, {-1, 0, -1, 0}, "principal4"), 1.0), DomainError);
}

TEST_CASE("theta engine agrees with the Hurwitz route") {
  std::vector<DirichletChar> chis = cubic_mod(7);
  for (const auto& c : enumerate_quadratic_family(60)) chis.push_back(c);
  for (const auto& c : enumerate_cubic_family(300)) chis.push_back(c);
  for (const auto& c : enumerate_quartic_family(200)) chis.push_back(c);
  chis.push_back(chi8(1));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> height(0.0, 30.0), sig(0.5, 2.5);
  double worst = 0, worst_imag = 0;
  std::size_t k = 0;
  for (const auto& chi : chis) {
    if (++k % 3 != 0 && chi.modulus > 30) continue;
    for (int sign : {1, -1}) {
      const CompletedLFunction F(dirichlet_ldata(chi), 30.0, sign);
      for (int i = 0; i < 4; ++i) {
        const cplx s(sig(rng), sign * height(rng));
        const cplx ref = dirichlet_L(s, chi);
        worst = std::max(worst, std::abs(F.L(s) - ref) / std::abs(ref));
        double im = 0;
        F.hardy_Z(sign * height(rng), &im);
        worst_imag = std::max(worst_imag, std::abs(im));
      }
    }
  }
  CHECK(worst < 1e-11);
  CHECK(worst_imag < 1e-9);
}

TEST_CASE("hardy Z grid matches pointwise evaluation") {
  const auto chi = cubic_mod(13)[1];
  const CompletedLFunction F(dirichlet_ldata(chi), 40.0, -1);
  const auto grid = F.hardy_Z_grid(-0.3, -0.037, 1000);
  double worst = 0;
  for (std::size_t k = 0; k < grid.size(); k += 7)
    worst = std::max(worst, std::abs(grid[k] - F.hardy_Z(-0.3 - 0.037 * static_cast<double>(k))));
  CHECK(worst < 1e-10);
}

TEST_CASE("quadratic twist of the weight 12 form") {
  const auto& f = delta_coeffs();
  for (i64 d : {1, 3, 5}) {
    const LData data = twist_ldata(d, f);
    CHECK(std::abs(data.root_number - 1.0) < 1e-12);
    const CompletedLFunction F(data, 40.0);
    for (double t : {0.0, 9.0, 33.0}) {
      const cplx s(2.5, t);
      cplx direct = 0.0;
      for (i64 n = 1; n <= f.size(); ++n) direct += data.coefficient(n) * std::pow(static_cast<double>(n), -s);
      CHECK(std::abs(F.L(s) - direct) < 1e-8 * std::abs(direct));
    }
    for (const cplx s : {cplx(0.2, 3.0), cplx(0.9, 17.0), cplx(-0.4, 30.0)}) {
      const cplx a = F.Lambda(s), b = F.Lambda(1.0 - std::conj(s));
      CHECK(std::abs(a - std::conj(b)) < 1e-6 * std::abs(a));
    }
  }
  CHECK_THROWS_AS(twist_ldata(2, f), DomainError);
  CHECK_THROWS_AS(twist_ldata(9, f), DomainError);
  CHECK_THROWS_AS(twist_ldata(29, f), CapacityError);
  const EigenformCoeffs small(100);
  CHECK_THROWS_AS(CompletedLFunction(twist_ldata(3, small), 40.0), CapacityError);
}

TEST_CASE("zero counting") {
  CHECK(zero_count_expected(7, 20) == doctest::Approx(20 / std::numbers::pi * std::log(140 / (2 * std::numbers::pi * std::numbers::e))));
  CHECK(zero_count_expected(7, 20) == doctest::Approx(13.4).epsilon(0.01));
  CHECK(std::abs(zero_count_expected(3, 1)) < 1.0);
  for (double T : {5.0, 10.0, 20.0, 40.0}) CHECK(zero_count_expected(11, 2 * T) > 1.9 * zero_count_expected(11, T));

  const auto c8 = find_zeros_dirichlet(chi8(1), 30.0);
  CHECK(c8.complete);
  CHECK(std::abs(static_cast<double>(c8.gammas.size()) - c8.main_term) <= 2.0);
  CHECK(static_cast<double>(c8.gammas.size()) == doctest::Approx(c8.expected_count).epsilon(1e-6));
}

TEST_CASE("zero lists") {
  const auto chis = cubic_mod(7);
  const auto a = find_zeros_dirichlet(chis[0], 30.0);
  const auto b = find_zeros_dirichlet(chis[1], 30.0);
  REQUIRE(a.complete);
  REQUIRE(b.complete);
  REQUIRE(a.gammas.size() == b.gammas.size());
  for (std::size_t i = 0; i < a.gammas.size(); ++i)
    CHECK(std::abs(a.gammas[i] + b.gammas[a.gammas.size() - 1 - i]) < 1e-8);
  CHECK(std::is_sorted(a.gammas.begin(), a.gammas.end()));
  CHECK(std::adjacent_find(a.gammas.begin(), a.gammas.end()) == a.gammas.end());

  for (const auto& chi : {chis[0], chi8(3), chi8(5)}) {
    const auto data = dirichlet_ldata(chi);
    const auto zeros = find_zeros(data, 30.0);
    CHECK(zeros.complete);
    CHECK(std::abs(static_cast<double>(zeros.gammas.size()) - zeros.main_term) <= 2.0);
    const CompletedLFunction up(data, 30.0, 1), down(data, 30.0, -1);
    for (double g : zeros.gammas) CHECK(std::abs((g >= 0 ? up : down).hardy_Z(g)) <= 1e-7);
    if (chi.is_real())
      for (std::size_t i = 0; i < zeros.gammas.size(); ++i)
        CHECK(zeros.gammas[i] == -zeros.gammas[zeros.gammas.size() - 1 - i]);
    ZeroOptions finer;
    finer.grid_step = zeros.grid_step / 2;
    const auto refined = find_zeros(data, 30.0, finer);
    REQUIRE(refined.gammas.size() == zeros.gammas.size());
    for (std::size_t i = 0; i < zeros.gammas.size(); ++i) CHECK(std::abs(refined.gammas[i] - zeros.gammas[i]) < 1e-8);
  }
}

TEST_CASE("twist zeros") {
  const auto z = find_zeros_twist(3, 20.0, delta_coeffs());
  CHECK(z.complete);
  CHECK(z.cutoff_sensitivity < 1e-6);
  CHECK(z.conductor == 576);
  for (std::size_t i = 0; i < z.gammas.size(); ++i) CHECK(z.gammas[i] == -z.gammas[z.gammas.size() - 1 - i]);
  CHECK(std::abs(static_cast<double>(z.gammas.size()) - z.main_term) <= 2.0);
}

TEST_CASE("zero cache") {
  const auto dir = std::filesystem::temp_directory_path() / "lowlying_zero_cache_test";
  std::filesystem::remove_all(dir);
  const ZeroCache cache(dir.string());
  const auto chi = cubic_mod(13)[0];
  CHECK_FALSE(cache.load(chi.modulus, chi.label, chi.order, 10.0));
  const auto zeros = find_zeros_dirichlet(chi, 20.0);
  cache.store(zeros);
  const auto back = cache.load(chi.modulus, chi.label, chi.order, 20.0);
  REQUIRE(back);
  REQUIRE(back->gammas.size() == zeros.gammas.size());
  for (std::size_t i = 0; i < zeros.gammas.size(); ++i) CHECK(std::abs(back->gammas[i] - zeros.gammas[i]) < 1e-12);
  const auto lower = cache.load(chi.modulus, chi.label, chi.order, 10.0);
  REQUIRE(lower);
  CHECK(lower->gammas.size() == zeros.count_within(10.0));
  CHECK_FALSE(cache.load(chi.modulus, chi.label, chi.order, 25.0));
  CHECK_FALSE(cache.load(chi.modulus, chi.label, 2, 10.0));

  std::ostringstream os;
  write_zero_list(os, zeros);
  const std::string text = os.str();
  CHECK(text.rfind("q 13 label " + chi.label + " order 3 Tmax 20\n", 0) == 0);

  // drop a line: the footer count no longer matches
  {
    std::string broken = text;
    const auto first = broken.find('\n') + 1;
    broken.erase(first, broken.find('\n', first) + 1 - first);
    std::ofstream(cache.path_for(chi.modulus, chi.label)) << broken;
    CHECK_FALSE(cache.load(chi.modulus, chi.label, chi.order, 20.0));
  }
  {
    std::string broken = text;
    broken[broken.find('\n') + 3] = 'x';
    std::ofstream(cache.path_for(chi.modulus, chi.label)) << broken;
    CHECK_FALSE(cache.load(chi.modulus, chi.label, chi.order, 20.0));
  }
  {
    std::ofstream(cache.path_for(chi.modulus, chi.label)) << text.substr(0, text.size() / 2);
    CHECK_FALSE(cache.load(chi.modulus, chi.label, chi.order, 20.0));
  }
  ZeroList partial = zeros;
  partial.complete = false;
  std::filesystem::remove(cache.path_for(chi.modulus, chi.label));
  cache.store(partial);
  CHECK_FALSE(std::filesystem::exists(cache.path_for(chi.modulus, chi.label)));
  std::filesystem::remove_all(dir);
}
