#include <random>

#include "aomega/finite_field.hpp"
#include "aomega/witt.hpp"
#include "doctest.h"

using namespace aomega;

namespace {

// The Teichmüller representative of a in Z/p^m by brute force: the unique t
// with t = a mod p and t^p = t.
std::int64_t teichmuller_oracle(std::int64_t a, std::int64_t p, int m) {
  std::int64_t pm = 1;
  for (int i = 0; i < m; ++i) pm *= p;
  for (std::int64_t t = 0; t < pm; ++t) {
    if (t % p != a % p) continue;
    std::int64_t tp = 1;
    for (int i = 0; i < p; ++i) tp = tp * t % pm;
    if (tp == t) return t;
  }
  return -1;
}

PerfectionElement random_perfection(std::mt19937_64& rng, std::int64_t p) {
  std::uniform_int_distribution<std::int64_t> coeff(0, p - 1), num(0, 2 * p * p), den(0, 2);
  PerfectionElement::Terms t;
  for (int k = 0; k < 3; ++k) t[RationalExponent(p, num(rng), static_cast<int>(den(rng)))] += coeff(rng);
  return PerfectionElement(p, t);
}

TruncatedWittElement random_witt(std::mt19937_64& rng, std::int64_t p, int m) {
  TruncatedWittElement probe(p, m);
  std::uniform_int_distribution<std::int64_t> coeff(0, probe.modulus() - 1), num(0, 2 * p), den(0, 1);
  TruncatedWittElement::Terms t;
  for (int k = 0; k < 2; ++k) t[RationalExponent(p, num(rng), static_cast<int>(den(rng)))] += coeff(rng);
  return TruncatedWittElement(p, m, t);
}

// Number of v in F_{p^m}^r with A sigma(v) = v, by enumeration.
std::int64_t count_fixed(const FiniteField& k, const FieldMatrix& a) {
  const std::size_t r = a.size();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= k.order();
  std::int64_t fixed = 0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::vector<FiniteField::Element> v;
    for (std::int64_t rest = idx, i = 0; i < static_cast<std::int64_t>(r); ++i, rest /= k.order())
      v.push_back(k.from_index(rest % k.order()));
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      FiniteField::Element acc = k.zero();
      for (std::size_t l = 0; l < r; ++l) acc = k.add(acc, k.mul(a[i][l], k.frobenius(v[l])));
      ok = acc == v[i];
    }
    if (ok) ++fixed;
  }
  return fixed;
}

}  // namespace

TEST_CASE("teichmuller digits examples") {
  for (std::int64_t p : {2, 3, 5}) {
    const auto d = teichmuller_digits(TruncatedWittElement::constant(p, 2, p));
    REQUIRE(d.size() == 2);
    CHECK(d[0].is_zero());
    CHECK(d[1] == PerfectionElement::constant(p, 1));
  }
  const auto d8 = teichmuller_digits(TruncatedWittElement::constant(3, 2, 8));
  CHECK(d8[0] == PerfectionElement::constant(3, 2));
  CHECK(d8[1].is_zero());

  const RationalExponent one(2, 1);
  const auto dx = teichmuller_digits(TruncatedWittElement(2, 3, {{one, 1}}));
  CHECK(dx[0] == PerfectionElement::monomial(one));
  CHECK(dx[1].is_zero());
  CHECK(dx[2].is_zero());
}

TEST_CASE("teichmuller lift examples") {
  CHECK(teichmuller_lift(PerfectionElement::constant(3, 1), 3) == TruncatedWittElement::constant(3, 3, 1));
  CHECK(teichmuller_lift(PerfectionElement::constant(3, 2), 2) == TruncatedWittElement::constant(3, 2, 8));
  for (std::int64_t p : {2, 3})
    for (int m = 1; m <= 4; ++m)
      for (std::int64_t a = 0; a < p; ++a)
        CHECK(teichmuller_lift(PerfectionElement::constant(p, a), m) ==
              TruncatedWittElement::constant(p, m, teichmuller_oracle(a, p, m)));
  const auto lhs = teichmuller_lift(PerfectionElement::monomial(RationalExponent(3, 1, 1)), 3) *
                   teichmuller_lift(PerfectionElement::monomial(RationalExponent(3, 2, 1)), 3);
  CHECK(lhs == teichmuller_lift(PerfectionElement::monomial(RationalExponent(3, 1)), 3));
}

TEST_CASE("teichmuller properties") {
  std::mt19937_64 rng(3);
  for (std::int64_t p : {2, 3}) {
    for (int m = 1; m <= 4; ++m) {
      // Every constant of W_m(F_p) = Z/p^m round-trips.
      TruncatedWittElement probe(p, m);
      for (std::int64_t c = 0; c < probe.modulus(); ++c) {
        const auto w = TruncatedWittElement::constant(p, m, c);
        CHECK(digits_to_witt(teichmuller_digits(w), p) == w);
      }
      for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_perfection(rng, p), b = random_perfection(rng, p);
        CHECK(teichmuller_lift(a, m).frobenius() == teichmuller_lift(a.frobenius(), m));
        CHECK(teichmuller_lift(a * b, m) == teichmuller_lift(a, m) * teichmuller_lift(b, m));
        CHECK(teichmuller_lift(a, m).reduce() == a);
      }
      // Digits of non-constant elements grow quickly with m; a smaller sample.
      for (int trial = 0; trial < 10; ++trial) {
        const auto w = random_witt(rng, p, m);
        const auto digits = teichmuller_digits(w);
        CHECK(digits.size() == static_cast<std::size_t>(m));
        CHECK(digits_to_witt(digits, p) == w);
      }
    }
  }
}

TEST_CASE("witt precision guard") {
  CHECK_THROWS_AS(TruncatedWittElement(13, 9), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedWittElement::constant(3, 2, 1).divide_by_p(), std::domain_error);
}

TEST_CASE("finite fields") {
  const FiniteField f4(2, 2), f8(2, 3), f9(3, 2);
  for (const FiniteField* k : {&f4, &f8, &f9}) {
    for (std::int64_t i = 1; i < k->order(); ++i) {
      const auto x = k->from_index(i);
      CHECK(k->mul(x, k->inverse(x)) == k->one());
    }
    // sigma^m = identity.
    auto x = k->generator();
    auto y = x;
    for (int i = 0; i < k->degree(); ++i) y = k->frobenius(y);
    CHECK(y == x);
  }
}

TEST_CASE("frobenius fixed points examples") {
  const FiniteField f4(2, 2);
  auto r1 = frobenius_fixed_points(f4, {{f4.one()}});
  CHECK(r1.fp_dimension == 1);
  CHECK(r1.spans);
  auto r2 = frobenius_fixed_points(f4, {{f4.one(), f4.zero()}, {f4.zero(), f4.one()}});
  CHECK(r2.fp_dimension == 2);
  CHECK(r2.spans);
  const auto alpha = f4.generator();
  auto r3 = frobenius_fixed_points(f4, {{alpha}});
  CHECK(count_fixed(f4, {{alpha}}) == 2);
  CHECK(r3.fp_dimension == 1);
  CHECK_FALSE(r3.requires_extension);
  CHECK_THROWS_AS(frobenius_fixed_points(f4, {{f4.zero()}}), std::domain_error);

  // Over F_9 the scalar t^{-1} with t a nonsquare has no nonzero fixed vector.
  const FiniteField f9(3, 2);
  std::int64_t shortfalls = 0;
  for (std::int64_t i = 1; i < 9; ++i) {
    auto res = frobenius_fixed_points(f9, {{f9.from_index(i)}});
    if (res.requires_extension) ++shortfalls;
  }
  CHECK(shortfalls == 4);
}

TEST_CASE("frobenius fixed points against exhaustive search") {
  std::mt19937_64 rng(5);
  const FiniteField f4(2, 2), f8(2, 3), f9(3, 2);
  for (const FiniteField* k : {&f4, &f8, &f9}) {
    std::uniform_int_distribution<std::int64_t> pick(0, k->order() - 1);
    for (std::size_t r = 1; r <= 2; ++r) {
      for (int trial = 0; trial < 10; ++trial) {
        FieldMatrix a(r, std::vector<FiniteField::Element>(r));
        for (auto& row : a)
          for (auto& x : row) x = k->from_index(pick(rng));
        if (field_rank(*k, a) != static_cast<int>(r)) continue;
        const auto res = frobenius_fixed_points(*k, a);
        std::int64_t expected = 1;
        for (int i = 0; i < res.fp_dimension; ++i) expected *= k->characteristic();
        CHECK(count_fixed(*k, a) == expected);
        CHECK(res.fp_dimension <= static_cast<int>(r));
        CHECK(res.spans == (res.fp_dimension == static_cast<int>(r)));
      }
    }
  }
}
