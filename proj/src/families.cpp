#include "lowlying/families.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lowlying/errors.hpp"

namespace lowlying {

RootOfUnity DirichletChar::at(i64 m) const {
  const std::int8_t k = table[static_cast<std::size_t>(mod_floor(m, modulus))];
  return k < 0 ? RootOfUnity::zero(order) : RootOfUnity(order, k);
}

std::complex<double> DirichletChar::value(i64 m) const {
  const std::int8_t k = table[static_cast<std::size_t>(mod_floor(m, modulus))];
  if (k < 0) return {0.0, 0.0};
  switch (order) {
    case 1: return {1.0, 0.0};
    case 2: return {k == 0 ? 1.0 : -1.0, 0.0};
    case 4: {
      static constexpr double re[4] = {1, 0, -1, 0}, im[4] = {0, 1, 0, -1};
      return {re[k], im[k]};
    }
    default: return std::polar(1.0, 2.0 * M_PI * k / order);
  }
}

DirichletChar DirichletChar::conj() const {
  DirichletChar c = *this;
  for (auto& k : c.table)
    if (k > 0) k = static_cast<std::int8_t>(order - k);
  c.label = "conj(" + label + ")";
  return c;
}

bool is_primitive_table(i64 modulus, const std::vector<std::int8_t>& table) {
  for (const auto& [p, e] : factor_integer(modulus)) {
    const i64 d = modulus / p;
    bool induced = true;
    for (i64 m = 1 + d; m < modulus && induced; m += d)
      if (table[static_cast<std::size_t>(m)] > 0) induced = false;
    if (induced) return false;
  }
  return true;
}

DirichletChar make_character(i64 modulus, int order, std::vector<std::int8_t> table, std::string label) {
  if (modulus < 1 || static_cast<i64>(table.size()) != modulus)
    throw DomainError("make_character: table length must equal the modulus");
  if (order < 1 || order > 127) throw DomainError("make_character: bad order");
  for (auto k : table)
    if (k < -1 || k >= order) throw DomainError("make_character: value index out of range");
  if (table[1 % modulus] != 0 && modulus > 1) throw DomainError("make_character: chi(1) != 1");
  DirichletChar chi;
  chi.modulus = modulus;
  chi.order = order;
  chi.table = std::move(table);
  chi.label = std::move(label);
  const std::int8_t minus_one = chi.table[static_cast<std::size_t>(modulus - 1)];
  if (modulus > 2) {
    if (minus_one == 0) chi.parity = 0;
    else if (2 * minus_one == order) chi.parity = 1;
    else throw DomainError("make_character: chi(-1) is not +-1");
  }
  chi.primitive = is_primitive_table(modulus, chi.table);
  return chi;
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kQuadratic: return "quadratic8d";
    case FamilyKind::kCubic: return "cubic";
    case FamilyKind::kCubicC9: return "cubicZw9";
    case FamilyKind::kQuartic: return "quartic";
    case FamilyKind::kTwist: return "twist";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& name) {
  if (name == "quadratic8d" || name == "quadratic") return FamilyKind::kQuadratic;
  if (name == "cubic") return FamilyKind::kCubic;
  if (name == "cubicZw9" || name == "c9") return FamilyKind::kCubicC9;
  if (name == "quartic") return FamilyKind::kQuartic;
  if (name == "twist") return FamilyKind::kTwist;
  throw DomainError("unknown family '" + name + "'");
}

std::vector<i64> quadratic_family_parameters(i64 X) {
  if (X < 2) throw DomainError("family window needs X >= 2");
  std::vector<i64> ds;
  for (i64 d = X | 1; d <= 2 * X; d += 2)
    if (is_squarefree_integer(d)) ds.push_back(d);
  return ds;
}

DirichletChar quadratic_character(i64 d) {
  if (d < 1 || d % 2 == 0 || !is_squarefree_integer(d)) throw DomainError("chi_8d needs odd square-free d >= 1");
  const i64 q = 8 * d;
  std::vector<std::int8_t> table(static_cast<std::size_t>(q));
  for (i64 m = 0; m < q; ++m) {
    const int k = kronecker(q, m);
    table[static_cast<std::size_t>(m)] = k == 0 ? -1 : (k == 1 ? 0 : 1);
  }
  return make_character(q, 2, std::move(table), "8d:d=" + std::to_string(d));
}

std::vector<DirichletChar> enumerate_quadratic_family(i64 X) {
  std::vector<DirichletChar> out;
  for (i64 d : quadratic_family_parameters(X)) out.push_back(quadratic_character(d));
  return out;
}

namespace {

template <class T>
std::vector<QuadInt<T>> generators_of_norm(i64 q) {
  std::vector<QuadInt<T>> out;
  if (q < 2) return out;
  std::vector<std::pair<QuadInt<T>, QuadInt<T>>> pairs;
  for (const auto& [p, e] : factor_integer(q)) {
    if (e > 1 || classify_rational_prime<T>(p) != PrimeKind::kSplit) return out;
    pairs.push_back(split_prime<T>(p));
  }
  const std::size_t count = std::size_t{1} << pairs.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    QuadInt<T> n{1, 0};
    for (std::size_t i = 0; i < pairs.size(); ++i)
      n = n * ((mask >> i) & 1 ? pairs[i].second : pairs[i].first);
    out.push_back(primary_associate(n));
  }
  std::sort(out.begin(), out.end(), canonical_less<T>);
  return out;
}

template <class T, class PrimeSymbol>
DirichletChar table_from_generator(const QuadInt<T>& n, int order, PrimeSymbol symbol, const char* prefix) {
  if (!is_primary(n)) throw DomainError("character_table: " + to_string(n) + " is not primary");
  if (!is_squarefree_ring(n)) throw DomainError("character_table: " + to_string(n) + " is not square-free");
  if (has_rational_prime_divisor(n))
    throw DomainError("character_table: " + to_string(n) + " has a rational prime divisor");
  const i64 q = norm(n);
  std::vector<std::int8_t> table(static_cast<std::size_t>(q), 0);
  if (q > 1) {
    for (const auto& [pi, e] : factor_in_ring(n).factors) {
      const i64 p = norm(pi);
      std::vector<std::int8_t> local(static_cast<std::size_t>(p));
      for (i64 r = 0; r < p; ++r) {
        const RootOfUnity v = symbol(QuadInt<T>{r, 0}, pi);
        local[static_cast<std::size_t>(r)] = v.is_zero() ? -1 : static_cast<std::int8_t>(v.index());
      }
      for (i64 m = 0; m < q; ++m) {
        auto& slot = table[static_cast<std::size_t>(m)];
        const std::int8_t v = local[static_cast<std::size_t>(m % p)];
        if (slot < 0) continue;
        slot = v < 0 ? -1 : static_cast<std::int8_t>((slot + v) % order);
      }
    }
  }
  return make_character(q, order, std::move(table), std::string(prefix) + ":n=" + to_string(n));
}

}  // namespace

std::vector<EisensteinInt> cubic_generators_of_norm(i64 q) { return generators_of_norm<EisensteinTag>(q); }
std::vector<GaussianInt> quartic_generators_of_norm(i64 q) { return generators_of_norm<GaussianTag>(q); }

DirichletChar character_table(const EisensteinInt& n) {
  return table_from_generator(n, 3, cubic_symbol_prime, "cubic");
}

DirichletChar character_table(const GaussianInt& n) {
  return table_from_generator(n, 4, quartic_symbol_prime, "quartic");
}

std::vector<DirichletChar> enumerate_cubic_family(i64 X) {
  if (X < 2) throw DomainError("family window needs X >= 2");
  std::vector<DirichletChar> out;
  for (i64 q = X; q <= 2 * X; ++q)
    for (const auto& n : cubic_generators_of_norm(q)) out.push_back(character_table(n));
  return out;
}

std::vector<DirichletChar> enumerate_quartic_family(i64 X) {
  if (X < 2) throw DomainError("family window needs X >= 2");
  std::vector<DirichletChar> out;
  for (i64 q = X; q <= 2 * X; ++q) {
    for (const auto& n : quartic_generators_of_norm(q)) {
      DirichletChar chi = character_table(n);
      const bool quartic = std::any_of(chi.table.begin(), chi.table.end(), [](std::int8_t k) { return k == 1 || k == 3; });
      if (quartic) out.push_back(std::move(chi));
    }
  }
  return out;
}

std::vector<EisensteinInt> enumerate_c9_family(i64 X) {
  if (X < 2) throw DomainError("family window needs X >= 2");
  // a^2 - ab + b^2 >= 3 max(|a|,|b|)^2 / 4
  const i64 reach = static_cast<i64>(std::sqrt(8.0 * X / 3.0)) + 2;
  std::vector<EisensteinInt> out;
  for (i64 a = 1 - 9 * (reach / 9 + 1); a <= reach; a += 9) {
    for (i64 b = -9 * (reach / 9 + 1); b <= reach; b += 9) {
      const EisensteinInt c{a, b};
      const i64 n = norm(c);
      if (n < X || n > 2 * X) continue;
      if (is_squarefree_ring(c)) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), canonical_less<EisensteinTag>);
  return out;
}

void write_characters_csv(std::ostream& os, const std::vector<DirichletChar>& chars) {
  os << "q,label,m,value_index\n";
  for (const auto& chi : chars)
    for (i64 m = 0; m < chi.modulus; ++m)
      os << chi.modulus << ',' << chi.label << ',' << m << ',' << int(chi.table[static_cast<std::size_t>(m)]) << '\n';
}

}  // namespace lowlying
