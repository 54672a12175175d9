#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace zkent;
using zkent::test::mat;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.code();
  }
  FAIL("expected a DomainError");
  return Errc::overflow;
}

}  // namespace

TEST_CASE("torus pair validates") {
  const auto f = test::torus_pair();
  CHECK(f.size() == 2);
  CHECK(f.dim() == 2);
  CHECK(f.kind() == ActionKind::invertible);
  CHECK(f.determinant(0) == 1);
  CHECK(f.generator(1).name == "A2");
}

TEST_CASE("single 1x1 identity validates") {
  const auto f = GeneratorFamily::validate({mat({{1}})}, ActionKind::invertible);
  CHECK(f.size() == 1);
  CHECK(f.dim() == 1);
}

TEST_CASE("shears do not commute") {
  try {
    GeneratorFamily::validate({mat({{1, 1}, {0, 1}}), mat({{1, 0}, {1, 1}})}, ActionKind::invertible);
    FAIL("accepted a non-commuting pair");
  } catch (const NonCommutingError& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 1);
    CHECK(e.difference() == mat({{1, 0}, {0, -1}}));
    CHECK(e.code() == Errc::non_commuting);
    CHECK(std::string(e.what()).find("NonCommuting") == 0);
  }
}

TEST_CASE("validation errors") {
  CHECK(code_of([] { GeneratorFamily::validate(std::vector<IntMatrix>{}, ActionKind::invertible); }) ==
        Errc::empty_family);
  CHECK(code_of([] { IntMatrix::from_rows({{1, 2}, {3}}); }) == Errc::non_square);
  CHECK(code_of([] { IntMatrix::from_rows({{1, 2}}); }) == Errc::non_square);
  CHECK(code_of([] { GeneratorFamily::validate({mat({{2}}), mat({{1, 0}, {0, 1}})}, ActionKind::endomorphism); }) ==
        Errc::dim_mismatch);
  CHECK(code_of([] { GeneratorFamily::validate({mat({{1, 1}, {1, 1}})}, ActionKind::endomorphism); }) ==
        Errc::singular_generator);
  CHECK(code_of([] { GeneratorFamily::validate({mat({{2, 0}, {0, 3}})}, ActionKind::invertible); }) ==
        Errc::determinant_not_unit);
  CHECK_NOTHROW(GeneratorFamily::validate({mat({{2, 0}, {0, 3}})}, ActionKind::endomorphism));
}

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(Distribution::validate({0.5, 0.5}, 2));
  CHECK_NOTHROW(Distribution::validate({0.7, 0.3}, 2));
  CHECK(code_of([] { Distribution::validate({0.5, 0.6}, 2); }) == Errc::sum_not_one);
  CHECK(code_of([] { Distribution::validate({-0.1, 1.1}, 2); }) == Errc::negative_entry);
  CHECK(code_of([] { Distribution::validate({1.0}, 2); }) == Errc::length_mismatch);
  // Entries are checked, never renormalized.
  const auto nu = Distribution::validate({0.1, 0.2, 0.7}, 3);
  CHECK(nu[2] == 0.7);
}

TEST_CASE("word products on the torus pair") {
  const auto f = test::torus_pair();
  CHECK(word_product(f, Word{}) == IntMatrix::identity(2));
  CHECK(word_product(f, Word{{0, 1}}) == IntMatrix::identity(2));
  CHECK(word_product(f, Word{{0, 0}}) == mat({{5, 3}, {3, 2}}));
  CHECK(code_of([&] { word_product(f, Word{{0, 2}}); }) == Errc::index_out_of_range);
}

TEST_CASE("word products stay exact for long words") {
  // A1^n = [[F(2n+1), F(2n)], [F(2n), F(2n-1)]].
  const auto f = test::torus_pair();
  const std::size_t n = 300;
  std::vector<BigInt> fib{0, 1};
  while (fib.size() < 2 * n + 2) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  const IntMatrix p = word_product(f, Word{std::vector<std::size_t>(n, 0)});
  CHECK(p(0, 0) == fib[2 * n + 1]);
  CHECK(p(0, 1) == fib[2 * n]);
  CHECK(p(1, 1) == fib[2 * n - 1]);
  CHECK(p.max_bits() > 400);
}

TEST_CASE("determinant and inverse") {
  CHECK(mat({{2, 1}, {1, 1}}).inverse() == mat({{1, -1}, {-1, 2}}));
  const IntMatrix c = test::plastic_companion();
  CHECK(c.determinant() == 1);
  CHECK(c * c.inverse() == IntMatrix::identity(3));
  CHECK(mat({{0, 1}, {1, 0}}).inverse() == mat({{0, 1}, {1, 0}}));
  CHECK(code_of([] { mat({{2, 0}, {0, 1}}).inverse(); }) == Errc::determinant_not_unit);
  CHECK(mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}).determinant() == -1);
  CHECK(mat({{4, 2, 7}, {1, 0, -3}, {5, 5, 1}}).determinant() == 4 * (0 + 15) - 2 * (1 + 15) + 7 * (5 - 0));
}

TEST_CASE("property: word products depend only on the letter multiset") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto f = GeneratorFamily::validate(test::random_unimodular_family(rng, k), ActionKind::invertible);
    std::uniform_int_distribution<std::size_t> letter(0, k - 1);
    Word w;
    for (int r = 0; r < 12; ++r) w.letters.push_back(letter(rng));
    Word shuffled = w;
    std::shuffle(shuffled.letters.begin(), shuffled.letters.end(), rng);
    CHECK(word_product(f, w) == word_product(f, shuffled));
  }
}

TEST_CASE("property: determinant is multiplicative along words") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + trial % 3;
    std::vector<IntMatrix> gens = test::random_unimodular_family(rng, k);
    // Scale by an integer to leave the unimodular world.
    for (auto& g : gens) g = g * test::polynomial(IntMatrix::identity(g.dim()), {2});
    const auto f = GeneratorFamily::validate(gens, ActionKind::endomorphism);
    std::uniform_int_distribution<std::size_t> letter(0, k - 1);
    Word w;
    BigInt expected = 1;
    for (int r = 0; r < 10; ++r) {
      w.letters.push_back(letter(rng));
      expected *= f.determinant(w.letters.back());
    }
    CHECK(word_product(f, w).determinant() == expected);
  }
}

TEST_CASE("property: a word followed by its formal inverse is the identity") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto mats = test::random_unimodular_family(rng, k);
    std::vector<IntMatrix> all = mats;
    for (const auto& m : mats) all.push_back(m.inverse());
    const auto f = GeneratorFamily::validate(all, ActionKind::invertible);
    std::uniform_int_distribution<std::size_t> letter(0, k - 1);
    Word w;
    for (int r = 0; r < 8; ++r) w.letters.push_back(letter(rng));
    Word round_trip = w;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) round_trip.letters.push_back(*it + k);
    CHECK(word_product(f, round_trip) == IntMatrix::identity(f.dim()));
  }
}

TEST_CASE("scaled conversion tracks the exponent") {
  const auto f = test::torus_pair();
  const IntMatrix p = word_product(f, Word{std::vector<std::size_t>(200, 0)});
  const ScaledMatrix s = p.to_scaled();
  CHECK(s.exponent > 0);
  // log of the (0,0) entry = log F(401) ~ 401 log(golden ratio) - log(sqrt5).
  const double log_entry = std::log(s.mantissa(0, 0)) + static_cast<double>(s.exponent) * std::log(2.0);
  CHECK(log_entry == doctest::Approx(log_abs(p(0, 0))).epsilon(1e-14));
  CHECK(log_abs(p(0, 0)) == doctest::Approx(200 * test::kLogPhi2 + std::log((5 + std::sqrt(5.0)) / 10)).epsilon(1e-12));
}
