#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "corpus.hpp"

using namespace cycdec;

TEST_CASE("GF(8) worked examples", "[field]") {
  const Field f(3, 0b1011);
  CHECK(f.mul(Elem{0b010}, Elem{0b110}) == Elem{0b111});
  CHECK(f.inv(Elem{0b010}) == Elem{0b101});
  CHECK(f.sqrt(Elem{0b100}) == Elem{0b010});
  CHECK_THROWS_AS(f.inv(kZero), DivisionByZero);
}

TEST_CASE("reducible moduli are rejected with the factor degree", "[field]") {
  CHECK_THROWS_WITH(Field(3, 0b1111), Catch::Matchers::ContainsSubstring("degree 1"));
  CHECK_THROWS_AS(Field(4, 0b10101), InputError);  // (x^2+x+1)^2
  CHECK_THROWS_WITH(Field(4, 0b10101), Catch::Matchers::ContainsSubstring("degree 2"));
  CHECK_THROWS_AS(Field(3, 0b111), InputError);  // wrong degree
  CHECK_THROWS_AS(Field(0), InputError);
  CHECK_THROWS_AS(Field(65), InputError);
}

TEST_CASE("irreducibility test agrees with exhaustive trial division for small degrees", "[field]") {
  for (int k = 1; k <= 10; ++k) {
    for (Poly2 m = Poly2{1} << k; m < (Poly2{1} << (k + 1)); ++m) {
      bool irreducible = true;
      for (Poly2 d = 2; gf2::degree(d) <= k / 2 && irreducible; ++d)
        if (gf2::mod(m, d) == 0) irreducible = false;
      CHECK((gf2::smallest_factor_degree(m) == k) == irreducible);
    }
  }
}

TEST_CASE("default moduli exist for every supported width", "[field]") {
  for (int k = 1; k <= 64; ++k) {
    const Field f(k);
    CHECK(f.bits() == k);
    CHECK(gf2::smallest_factor_degree(f.modulus()) == k);
  }
  CHECK(Field(32).modulus() == ((Poly2{1} << 32) | 0x8D));
}

TEST_CASE("generator has full multiplicative order", "[field]") {
  for (int k : {1, 2, 3, 4, 5, 8, 11, 16}) {
    const Field f(k);
    Elem x = f.generator();
    std::uint64_t order = 1;
    while (x != kOne) {
      x = f.mul(x, f.generator());
      ++order;
    }
    CHECK(order == f.group_order());
  }
  for (int k : {32, 64}) {
    const Field f(k);
    CHECK(f.pow(f.generator(), f.group_order()) == kOne);
    for (std::uint64_t p : detail::prime_factors(f.group_order()))
      CHECK(f.pow(f.generator(), f.group_order() / p) != kOne);
  }
}

TEST_CASE("portable and hardware multiplication agree with the schoolbook reference", "[field]") {
  std::mt19937_64 rng(7);
  for (int k : {3, 8, 16, 31, 32, 33, 63, 64}) {
    const Field f(k);
    for (int i = 0; i < 2000; ++i) {
      const Elem a = f.random(rng);
      const Elem b = f.random(rng);
      const Elem ref{corpus::reference_mul(a.bits, b.bits, k, f.modulus())};
      CHECK(f.mul_portable(a, b) == ref);
      CHECK(f.mul_hardware(a, b) == ref);
      CHECK(f.mul(a, b) == ref);
    }
  }
}

TEST_CASE("field axioms on random triples", "[field]") {
  std::mt19937_64 rng(11);
  for (int k : {3, 8, 16, 32}) {
    const Field f(k);
    for (int i = 0; i < 1000; ++i) {
      const Elem a = f.random(rng);
      const Elem b = f.random(rng);
      const Elem c = f.random(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(f.mul(a, b + c) == f.mul(a, b) + f.mul(a, c));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(a + a == kZero);
      if (!a.is_zero()) CHECK(f.mul(a, f.inv(a)) == kOne);
      CHECK(f.square(a + b) == f.square(a) + f.square(b));
      CHECK(f.sqrt(f.square(a)) == a);
      CHECK(f.square(f.sqrt(a)) == a);
    }
  }
}

TEST_CASE("pow and power", "[field]") {
  const Field f(16);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Elem a = f.random_nonzero(rng);
    CHECK(f.pow(a, 0) == kOne);
    CHECK(f.pow(a, 5) == f.mul(f.mul(f.square(f.square(a)), a), kOne));
    CHECK(f.mul(f.power(a, -3), f.pow(a, 3)) == kOne);
  }
}

TEST_CASE("hex formatting is lowercase with a 0x prefix", "[field]") {
  CHECK(Field::hex(kZero) == "0x0");
  CHECK(Field::hex(Elem{0xABCDEF}) == "0xabcdef");
}
