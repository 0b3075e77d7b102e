#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <map>
#include <set>
#include <sstream>

#include "lowlying/errors.hpp"
#include "lowlying/families.hpp"
#include "oracles.hpp"

using namespace lowlying;

namespace {

void check_character(const DirichletChar& chi, std::mt19937_64& rng) {
  const i64 q = chi.modulus;
  REQUIRE(chi.table.size() == static_cast<std::size_t>(q));
  CHECK(chi.table[1] == 0);
  CHECK(chi.primitive);
  std::complex<double> sum = 0;
  for (i64 m = 0; m < q; ++m) {
    const bool unit = gcd_i64(m, q) == 1;
    CHECK((chi.table[static_cast<std::size_t>(m)] >= 0) == unit);
    sum += chi.value(m);
  }
  CHECK(std::abs(sum) < 1e-9);
  std::uniform_int_distribution<i64> pick(1, q - 1);
  for (int i = 0; i < 1000; ++i) {
    const i64 a = pick(rng), b = pick(rng);
    if (gcd_i64(a, q) != 1 || gcd_i64(b, q) != 1) continue;
    CHECK(chi.at(a) * chi.at(b) == chi.at(a * b));
  }
}

std::vector<std::vector<std::int8_t>> tables(const std::vector<DirichletChar>& chars) {
  std::vector<std::vector<std::int8_t>> out;
  for (const auto& c : chars) out.push_back(c.table);
  std::sort(out.begin(), out.end());
  return out;
}

bool brute_squarefree(const EisensteinInt& c) {
  const i64 n = norm(c);
  for (i64 a = -60; a <= 60; ++a)
    for (i64 b = -60; b <= 60; ++b) {
      const EisensteinInt y{a, b};
      const i64 ny = norm(y);
      if (ny <= 1 || ny * ny > n) continue;
      const EisensteinInt y2 = y * y;
      const EisensteinInt t = c * conj(y2);
      const i64 d = ny * ny;
      if (t.a % d == 0 && t.b % d == 0) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("quadratic family") {
  const auto fam = enumerate_quadratic_family(10);
  REQUIRE(fam.size() == 5);
  const i64 ds[] = {11, 13, 15, 17, 19};
  std::mt19937_64 rng(1);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(fam[i].modulus == 8 * ds[i]);
    CHECK(fam[i].order == 2);
    CHECK(fam[i].parity == 0);
    CHECK(fam[i].value(-1).real() == 1.0);
    check_character(fam[i], rng);
  }
  for (const auto& chi : enumerate_quadratic_family(300)) {
    CHECK(chi.parity == 0);
    CHECK(chi.primitive);
  }
  const double ratio = static_cast<double>(quadratic_family_parameters(100000).size()) / 100000.0;
  CHECK(std::abs(ratio / (4.0 / (std::numbers::pi * std::numbers::pi)) - 1.0) < 0.05);
  CHECK_THROWS_AS(enumerate_quadratic_family(1), DomainError);
}

TEST_CASE("cubic family") {
  const auto fam = enumerate_cubic_family(7);
  REQUIRE(fam.size() == 4);
  std::set<i64> qs;
  for (const auto& c : fam) qs.insert(c.modulus);
  CHECK(qs == std::set<i64>{7, 13});

  const auto chi = character_table(EisensteinInt{-2, -3});
  CHECK(chi.modulus == 7);
  CHECK(chi.at(2) == RootOfUnity(3, 1));

  std::mt19937_64 rng(2);
  const auto wide = enumerate_cubic_family(200);
  const auto all = tables(wide);
  for (const auto& c : wide) {
    check_character(c, rng);
    CHECK(c.parity == 0);
    CHECK(std::binary_search(all.begin(), all.end(), c.conj().table));
    for (i64 m = 0; m < c.modulus; ++m) {
      const auto v = c.at(m);
      CHECK(c.conj().at(m) == v * v);
    }
  }
  CHECK(tables(wide) == tables([&] {
          std::vector<DirichletChar> conj;
          for (const auto& c : wide) conj.push_back(c.conj());
          return conj;
        }()));
}

TEST_CASE("quartic family") {
  const auto fam = enumerate_quartic_family(5);
  REQUIRE(fam.size() == 2);
  for (const auto& c : fam) CHECK(c.modulus == 5);

  const auto chi = character_table(GaussianInt{-1, 2});
  REQUIRE(chi.modulus == 5);
  CHECK(chi.at(1) == RootOfUnity(4, 0));
  CHECK(chi.at(2) == RootOfUnity(4, 3));
  CHECK(chi.at(3) == RootOfUnity(4, 1));
  CHECK(chi.at(4) == RootOfUnity(4, 2));

  std::mt19937_64 rng(3);
  const auto wide = enumerate_quartic_family(150);
  const auto all = tables(wide);
  for (const auto& c : wide) {
    check_character(c, rng);
    CHECK(std::any_of(c.table.begin(), c.table.end(), [](auto k) { return k == 1 || k == 3; }));
    for (const auto& [p, e] : factor_integer(c.modulus)) CHECK(p % 4 == 1);
    CHECK(std::binary_search(all.begin(), all.end(), c.conj().table));
  }
}

TEST_CASE("tables agree with residue symbols") {
  for (i64 q = 2; q <= 400; ++q) {
    for (const auto& n : cubic_generators_of_norm(q)) {
      const auto chi = character_table(n);
      const bool prime = is_prime_integer(q);
      for (i64 m = 0; m < q; ++m) {
        CHECK(chi.at(m) == cubic_symbol(EisensteinInt{m, 0}, n));
        if (prime) {
          const int k = oracle::residue_field_symbol(m, 0, n.a, n.b, 3);
          CHECK(int(chi.table[static_cast<std::size_t>(m)]) == k);
        }
      }
    }
    for (const auto& n : quartic_generators_of_norm(q)) {
      const auto chi = character_table(n);
      const bool prime = is_prime_integer(q);
      for (i64 m = 0; m < q; ++m) {
        CHECK(chi.at(m) == quartic_symbol(GaussianInt{m, 0}, n));
        if (prime) {
          const int k = oracle::residue_field_symbol(m, 0, n.a, n.b, 4);
          CHECK(int(chi.table[static_cast<std::size_t>(m)]) == k);
        }
      }
    }
  }
}

TEST_CASE("generator counts equal 2^omega(q)") {
  // independent count: primary grid elements of norm q with no rational
  // prime divisor and square-free norm
  std::map<i64, int> eis, gau;
  for (const auto& x : enumerate_primary<EisensteinTag>(500)) {
    const i64 n = norm(x);
    if (n < 2 || !is_squarefree_integer(n) || n % 3 == 0) continue;
    if (gcd_i64(x.a, x.b) != 1) continue;
    ++eis[n];
  }
  for (const auto& x : enumerate_primary<GaussianTag>(500)) {
    const i64 n = norm(x);
    if (n < 2 || !is_squarefree_integer(n) || n % 2 == 0) continue;
    if (gcd_i64(x.a, x.b) != 1) continue;
    ++gau[n];
  }
  for (i64 q = 2; q <= 500; ++q) {
    const auto c = cubic_generators_of_norm(q);
    const auto g = quartic_generators_of_norm(q);
    CHECK(static_cast<int>(c.size()) == eis[q]);
    CHECK(static_cast<int>(g.size()) == gau[q]);
    bool cubic_ok = is_squarefree_integer(q), quartic_ok = cubic_ok;
    for (const auto& [p, e] : factor_integer(q)) {
      cubic_ok = cubic_ok && p % 3 == 1;
      quartic_ok = quartic_ok && p % 4 == 1;
    }
    CHECK(c.size() == (cubic_ok ? std::size_t{1} << omega(q) : 0));
    CHECK(g.size() == (quartic_ok ? std::size_t{1} << omega(q) : 0));
  }
}

TEST_CASE("character_table rejects bad generators") {
  const EisensteinInt pi{-2, -3};
  CHECK_THROWS_AS(character_table(EisensteinInt{2, 3}), DomainError);
  CHECK_THROWS_AS(character_table(pi * pi), DomainError);
  CHECK_THROWS_AS(character_table(EisensteinInt{7, 0}), DomainError);
  CHECK_THROWS_AS(character_table(GaussianInt{1, -2}), DomainError);
  CHECK_THROWS_AS(character_table(GaussianInt{-3, 0} * GaussianInt{-1, 2}), DomainError);
}

TEST_CASE("primitivity detects induced characters") {
  // chi_8 * trivial mod 3 lifted to modulus 24 is imprimitive
  std::vector<std::int8_t> table(24);
  for (i64 m = 0; m < 24; ++m) {
    const int k = gcd_i64(m, 24) != 1 ? 0 : kronecker(8, m);
    table[static_cast<std::size_t>(m)] = k == 0 ? -1 : (k == 1 ? 0 : 1);
  }
  const auto chi = make_character(24, 2, table, "induced");
  CHECK_FALSE(chi.primitive);
  CHECK(make_character(8, 2, std::vector<std::int8_t>{-1, 0, -1, 1, -1, 1, -1, 0}, "chi8").primitive);
  CHECK_THROWS_AS(make_character(5, 2, std::vector<std::int8_t>{-1, 1, 0, 0, 1}, "bad"), DomainError);
}

TEST_CASE("c9 family") {
  const auto fam = enumerate_c9_family(300);
  for (const auto& c : fam) {
    CHECK(oracle::modp(c.a, 9) == 1);
    CHECK(oracle::modp(c.b, 9) == 0);
  }
  std::vector<EisensteinInt> brute;
  for (i64 a = -40; a <= 40; ++a)
    for (i64 b = -40; b <= 40; ++b) {
      const EisensteinInt c{a, b};
      const i64 n = norm(c);
      if (n < 300 || n > 600) continue;
      if (oracle::modp(a - 1, 9) != 0 || oracle::modp(b, 9) != 0) continue;
      if (brute_squarefree(c)) brute.push_back(c);
    }
  std::sort(brute.begin(), brute.end(), canonical_less<EisensteinTag>);
  CHECK(fam == brute);
  CHECK(!fam.empty());
  const double r1 = static_cast<double>(enumerate_c9_family(10000).size()) / 10000.0;
  const double r2 = static_cast<double>(enumerate_c9_family(20000).size()) / 20000.0;
  CHECK(std::abs(r1 / r2 - 1.0) < 0.10);
}

TEST_CASE("characters csv") {
  std::ostringstream os;
  write_characters_csv(os, {character_table(EisensteinInt{-2, -3})});
  const std::string s = os.str();
  CHECK(s.rfind("q,label,m,value_index\n7,cubic:n=-2-3w,0,-1\n7,cubic:n=-2-3w,1,0\n", 0) == 0);
}
