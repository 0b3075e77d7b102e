#pragma once

// Character families: quadratic chi_{8d}, cubic and quartic residue-symbol
// characters, and the c = 1 mod 9 cubic-symbol family over Z[w].

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lowlying/rings.hpp"
#include "lowlying/symbols.hpp"

namespace lowlying {

/// A Dirichlet character stored as a dense value table. table[m] is the index
/// k of e^{2 pi i k / order}, or -1 where gcd(m, q) > 1.
struct DirichletChar {
  i64 modulus = 1;
  int order = 1;
  std::vector<std::int8_t> table{0};
  int parity = 0;  // chi(-1) = (-1)^parity
  bool primitive = true;
  std::string label;

  RootOfUnity at(i64 m) const;
  std::complex<double> value(i64 m) const;
  bool is_real() const noexcept { return order <= 2; }
  DirichletChar conj() const;
};

/// Builds a character from its table and checks that the table is a
/// completely multiplicative order-th-root-valued function on units mod q.
/// Parity and primitivity are derived from the table.
DirichletChar make_character(i64 modulus, int order, std::vector<std::int8_t> table, std::string label);

/// chi is induced from modulus d | q iff chi(m) = 1 for every unit m = 1 mod d.
bool is_primitive_table(i64 modulus, const std::vector<std::int8_t>& table);

/// Names: quadratic8d, cubic, cubicZw9, quartic, twist. The twist family is
/// f x chi_{8d} over the quadratic parameters d.
enum class FamilyKind { kQuadratic, kCubic, kCubicC9, kQuartic, kTwist };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::kQuadratic;
  i64 X = 2;
};

/// Odd square-free d in [X, 2X].
std::vector<i64> quadratic_family_parameters(i64 X);

/// chi_{8d} = (8d / .) for one odd square-free d.
DirichletChar quadratic_character(i64 d);

/// chi_{8d} for every odd square-free d in [X, 2X].
std::vector<DirichletChar> enumerate_quadratic_family(i64 X);

/// m -> (m/n)_3 for every primary square-free n in Z[w] without rational
/// prime divisor and N(n) in [X, 2X].
std::vector<DirichletChar> enumerate_cubic_family(i64 X);

/// m -> (m/n)_4 for the analogous n in Z[i] (odd conductor, order exactly 4).
std::vector<DirichletChar> enumerate_quartic_family(i64 X);

/// Square-free c = 1 mod 9 in Z[w] with N(c) in [X, 2X], sorted canonically.
std::vector<EisensteinInt> enumerate_c9_family(i64 X);

/// The primary square-free elements without rational prime divisor of norm q,
/// one per 2^{omega(q)} choice of conjugate prime factors. Empty unless q is
/// square-free and built from split primes.
std::vector<EisensteinInt> cubic_generators_of_norm(i64 q);
std::vector<GaussianInt> quartic_generators_of_norm(i64 q);

/// Value table of m -> (m/n)_3. Rejects non-primary, non-square-free n and n
/// with a rational prime divisor.
DirichletChar character_table(const EisensteinInt& n);
/// Value table of m -> (m/n)_4.
DirichletChar character_table(const GaussianInt& n);

/// CSV rows "q,label,m,value_index" (value_index -1 on non-units).
void write_characters_csv(std::ostream& os, const std::vector<DirichletChar>& chars);

}  // namespace lowlying
