#include <doctest.h>

#include <cstring>

#include <Eigen/SVD>

#include "support.hpp"
#include "zkent/entropy.hpp"
#include "zkent/oracle.hpp"
#include "zkent/philox.hpp"

using namespace zkent;
using doctest::Approx;
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

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<BigInt> ints(std::initializer_list<long long> v) { return std::vector<BigInt>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox streams are reproducible and distinct") {
  PhiloxStream a(42, 7), b(42, 7), c(42, 8);
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(same_bits(u, b.uniform()));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 1000 == Approx(0.5).epsilon(0.05));
  CHECK(PhiloxStream(42, 7).next_u64() != c.next_u64());
}

TEST_CASE("block oracle: exact enumeration on the torus pair") {
  const Spectrum s = joint_spectrum(test::torus_pair());
  const Distribution skew = Distribution::validate({0.7, 0.3}, 2);
  const double skew_ref[] = {0.57719048599139147, 0.51466569204158876, 0.48236136791138189};
  const double flat_ref[] = {0.49123707141501185, 0.40113516979577881, 0.34885843316437351};
  const std::size_t ns[] = {6, 10, 14};
  double prev_gap = 1e300;
  for (int i = 0; i < 3; ++i) {
    const OracleEstimate e = block_word_oracle(s, skew, ns[i], OracleMode::exact());
    CHECK(e.estimate == Approx(skew_ref[i]).epsilon(1e-12));
    CHECK(e.samples == 0);
    CHECK_FALSE(e.std_error.has_value());
    const double gap = e.estimate - random_entropy(s, skew).value;
    CHECK(gap < prev_gap);
    prev_gap = gap;
    CHECK(block_word_oracle(s, Distribution::uniform(2), ns[i], OracleMode::exact()).estimate ==
          Approx(flat_ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("block oracle: deterministic single-generator words") {
  const Spectrum s = tabulated_spectrum({1, 2, 1}, {{0.7}, {-0.2}, {0.1}});
  for (std::size_t n : {1u, 5u, 17u}) {
    const OracleEstimate e = block_word_oracle(s, Distribution::uniform(1), n, OracleMode::exact());
    CHECK(e.estimate == Approx(0.8).epsilon(1e-14));
  }
}

TEST_CASE("endpoint functional: multinomial route equals per-word route") {
  const Spectrum s = joint_spectrum(test::torus_pair());
  const Distribution nu = Distribution::validate({0.7, 0.3}, 2);
  const double multi = endpoint_functional(s, nu, 10, EndpointRoute::multinomial);
  const double per_word = endpoint_functional(s, nu, 10, EndpointRoute::per_word);
  CHECK(multi == Approx(0.40794483894647529).epsilon(1e-12));
  CHECK(std::abs(multi - per_word) < 1e-13);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const Spectrum t = test::random_tabulated(rng, 3, k);
    const Distribution p = test::random_distribution(rng, k);
    const std::size_t n = 8;
    CHECK(std::abs(endpoint_functional(t, p, n, EndpointRoute::multinomial) -
                   endpoint_functional(t, p, n, EndpointRoute::per_word)) < 1e-12);
  }
}

TEST_CASE("oracle argument errors") {
  const Spectrum s = joint_spectrum(test::torus_pair());
  const Distribution nu = Distribution::uniform(2);
  CHECK(code_of([&] { block_word_oracle(s, nu, 25, OracleMode::exact()); }) == Errc::enumeration_too_large);
  CHECK(code_of([&] { block_word_oracle(s, nu, 0, OracleMode::exact()); }) == Errc::bad_sample_count);
  CHECK(code_of([&] { singular_value_oracle(test::torus_pair(), nu, 10, 0, 1); }) == Errc::bad_sample_count);
  CHECK(code_of([&] { block_word_oracle(s, Distribution::uniform(3), 4, OracleMode::exact()); }) == Errc::length_mismatch);
  const auto degs = ints({2, 3});
  CHECK(code_of([&] { circle_cover_oracle(degs, nu, 5, 1.0, OracleMode::exact()); }) == Errc::bad_epsilon);
  CHECK(code_of([&] { circle_cover_oracle(degs, nu, 5, 0.0, OracleMode::exact()); }) == Errc::bad_epsilon);
  CHECK(code_of([&] { circle_cover_oracle(ints({1, 3}), nu, 5, 0.1, OracleMode::exact()); }) == Errc::zero_degree);
}

TEST_CASE("singular value oracle") {
  const auto cat = GeneratorFamily::validate({mat({{2, 1}, {1, 1}})}, ActionKind::invertible);
  const OracleEstimate e = singular_value_oracle(cat, Distribution::uniform(1), 60, 4, 9);
  CHECK(std::abs(e.estimate - test::kLogPhi2) < 1e-9);
  REQUIRE(e.std_error.has_value());

  const auto id = GeneratorFamily::validate({mat({{1, 0}, {0, 1}}), mat({{1, 0}, {0, 1}})}, ActionKind::invertible);
  CHECK(singular_value_oracle(id, Distribution::uniform(2), 30, 16, 3).estimate == 0.0);

  // Small torus run: the formula value is 0.385, the finite-n bias is positive.
  const OracleEstimate t = singular_value_oracle(test::torus_pair(), Distribution::validate({0.7, 0.3}, 2), 200, 300, 5);
  CHECK(t.estimate == Approx(0.38496946).epsilon(0.1));
}

TEST_CASE("log expansion via compound matrices matches a direct SVD") {
  const IntMatrix c = test::plastic_companion();
  for (unsigned m : {1u, 3u, 8u, 15u}) {
    const IntMatrix p = test::power(c, m) * test::polynomial(c, {1, 1});
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.to_double());
    double expected = 0.0;
    for (Eigen::Index l = 0; l < svd.singularValues().size(); ++l)
      expected += std::log(std::max(1.0, svd.singularValues()(l)));
    CHECK(log_expansion(p) == Approx(expected).epsilon(1e-11));
  }
  // Product whose small singular values are far below 1: the direct route loses them, compounds do not.
  const double grow = log_expansion(test::power(c, 400)) - log_expansion(test::power(c, 200));
  CHECK(grow == Approx(200 * 0.28119957432296185).epsilon(1e-12));
}

TEST_CASE("circle oracle") {
  const auto degs = ints({2, 3});
  const OracleEstimate e = circle_cover_oracle(degs, Distribution::uniform(2), 12, 0.01, OracleMode::exact());
  CHECK(e.estimate == Approx(1.2796439167797018).epsilon(1e-13));

  const auto twos = ints({2, 2});
  for (std::size_t n : {1u, 5u, 12u}) {
    const double v = circle_cover_oracle(twos, Distribution::validate({0.3, 0.7}, 2), n, 0.5, OracleMode::exact()).estimate;
    CHECK(v == Approx(std::log(2.0) + std::log(2.0) / static_cast<double>(n)).epsilon(1e-14));
  }
  const auto three = ints({3});
  const double single = circle_cover_oracle(three, Distribution::uniform(1), 40, 0.5, OracleMode::exact()).estimate;
  CHECK(single == Approx(std::log(3.0) + std::log(2.0) / 40).epsilon(1e-13));
}

TEST_CASE("seed determinism across worker counts") {
  const auto f = test::torus_pair();
  const Spectrum s = joint_spectrum(f);
  const Distribution nu = Distribution::validate({0.7, 0.3}, 2);
  const auto degs = ints({2, 3});
  for (unsigned workers : {2u, 3u, 8u}) {
    CHECK(same_bits(block_word_oracle(s, nu, 20, OracleMode::monte_carlo(3000, 77), 1).estimate,
                    block_word_oracle(s, nu, 20, OracleMode::monte_carlo(3000, 77), workers).estimate));
    CHECK(same_bits(block_word_oracle(s, nu, 14, OracleMode::exact(), 1).estimate,
                    block_word_oracle(s, nu, 14, OracleMode::exact(), workers).estimate));
    CHECK(same_bits(singular_value_oracle(f, nu, 50, 700, 78, 1).estimate,
                    singular_value_oracle(f, nu, 50, 700, 78, workers).estimate));
    CHECK(same_bits(circle_cover_oracle(degs, nu, 30, 0.01, OracleMode::monte_carlo(600, 79), 1).estimate,
                    circle_cover_oracle(degs, nu, 30, 0.01, OracleMode::monte_carlo(600, 79), workers).estimate));
  }
  CHECK_FALSE(same_bits(block_word_oracle(s, nu, 20, OracleMode::monte_carlo(3000, 77)).estimate,
                        block_word_oracle(s, nu, 20, OracleMode::monte_carlo(3000, 76)).estimate));
}

TEST_CASE("Monte Carlo agrees with exact enumeration at n = 10") {
  const Spectrum s = joint_spectrum(test::torus_pair());
  const Distribution nu = Distribution::validate({0.7, 0.3}, 2);
  const double exact = block_word_oracle(s, nu, 10, OracleMode::exact()).estimate;
  const OracleEstimate mc = block_word_oracle(s, nu, 10, OracleMode::monte_carlo(100000, 2024));
  REQUIRE(mc.std_error.has_value());
  CHECK(std::abs(mc.estimate - exact) <= 3 * *mc.std_error);

  const auto degs = ints({2, 3});
  const double cexact = circle_cover_oracle(degs, nu, 10, 0.05, OracleMode::exact()).estimate;
  const OracleEstimate cmc = circle_cover_oracle(degs, nu, 10, 0.05, OracleMode::monte_carlo(100000, 2025));
  CHECK(std::abs(cmc.estimate - cexact) <= 3 * *cmc.std_error);
}
