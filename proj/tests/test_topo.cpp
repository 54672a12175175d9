#include <doctest.h>

#include "support.hpp"
#include "zkent/entropy.hpp"
#include "zkent/topo.hpp"

using namespace zkent;
using doctest::Approx;
using zkent::test::mat;

namespace {

constexpr double kPhi2 = 2.6180339887498949;  // (3+sqrt5)/2

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.code();
  }
  FAIL("expected a DomainError");
  return Errc::overflow;
}

std::vector<BigInt> ints(std::initializer_list<long long> v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("Lipschitz bound") {
  const std::vector<double> l{kPhi2, kPhi2};
  CHECK(lipschitz_bound(l, 2.0, Distribution::uniform(2)) == Approx(1.9248473002384138).epsilon(1e-13));
  const std::vector<double> contracting{0.5, 1.0};
  CHECK(lipschitz_bound(contracting, 3.0, Distribution::uniform(2)) == 0.0);
  const std::vector<double> l23{2.0, 3.0};
  CHECK(lipschitz_bound(l23, 1.0, Distribution::validate({0.4, 0.6}, 2)) == Approx(0.93642624542484394).epsilon(1e-14));
  const std::vector<double> bad{0.0, 2.0};
  CHECK(code_of([&] { lipschitz_bound(bad, 1.0, Distribution::uniform(2)); }) == Errc::non_positive_constant);
  CHECK(code_of([&] { lipschitz_bound(l23, 1.0, Distribution::uniform(1)); }) == Errc::length_mismatch);
}

TEST_CASE("smooth bound") {
  const std::vector<double> l{kPhi2, kPhi2};
  CHECK(smooth_bound(l, 2, Distribution::validate({1.0, 0.0}, 2)) == Approx(1.9248473002384138).epsilon(1e-13));
  const std::vector<double> ones{1.0};
  CHECK(smooth_bound(ones, 5, Distribution::uniform(1)) == 0.0);
  const std::vector<double> neg{-1.0};
  CHECK(code_of([&] { smooth_bound(neg, 1, Distribution::uniform(1)); }) == Errc::non_positive_constant);
}

TEST_CASE("degree formulas") {
  CHECK(expanding_entropy(ints({2, 3}), Distribution::uniform(2)) == Approx(0.8958797346140275).epsilon(1e-14));
  CHECK(expanding_entropy(ints({7, -7}), Distribution::validate({0.2, 0.8}, 2)) == Approx(std::log(7.0)).epsilon(1e-14));
  CHECK(expanding_entropy(ints({2, 3}), Distribution::validate({0.4, 0.6}, 2)) ==
        Approx(0.93642624542484394).epsilon(1e-14));
  CHECK(code_of([] { expanding_entropy(ints({1, 3}), Distribution::uniform(2)); }) == Errc::zero_degree);
  CHECK(expanding_entropy(ints({1, -1}), Distribution::uniform(2), DegreeRule::circle_monotone) == 0.0);
  CHECK(code_of([] { expanding_entropy(ints({0}), Distribution::uniform(1), DegreeRule::circle_monotone); }) ==
        Errc::zero_degree);
}

TEST_CASE("interval branch bound") {
  const std::vector<long long> tents{2, 2}, mixed{2, 3}, monotone{1, 1}, bad{0, 2};
  CHECK(interval_bound(tents, Distribution::validate({0.9, 0.1}, 2)) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(interval_bound(mixed, Distribution::uniform(2)) == Approx(0.8958797346140275).epsilon(1e-14));
  CHECK(interval_bound(monotone, Distribution::uniform(2)) == 0.0);
  CHECK(code_of([&] { interval_bound(bad, Distribution::uniform(2)); }) == Errc::bad_branch_count);
}

TEST_CASE("graph homeomorphisms have zero entropy") {
  static_assert(graph_homeomorphism_entropy() == 0.0);
  BoundsOptions opt;
  opt.phase_space = GraphSpace{};
  const auto f = GeneratorFamily::validate({mat({{1}}), mat({{-1}})}, ActionKind::invertible);
  const TopoBoundsReport r = topo_bounds(f, joint_spectrum(f), Distribution::uniform(2), opt);
  REQUIRE(r.graph_value.has_value());
  CHECK(*r.graph_value == 0.0);
}

TEST_CASE("family constants") {
  const FamilyConstants t = family_constants(test::torus_pair());
  CHECK(t.opnorms[0] == Approx(kPhi2).epsilon(1e-12));
  CHECK(t.opnorms[1] == Approx(kPhi2).epsilon(1e-12));
  CHECK(t.degrees == ints({1, 1}));
  const FamilyConstants d = family_constants(GeneratorFamily::validate({mat({{2, 0}, {0, 3}})}, ActionKind::endomorphism));
  CHECK(d.opnorms[0] == Approx(3.0).epsilon(1e-12));
  CHECK(d.degrees == ints({6}));
  const FamilyConstants id = family_constants(GeneratorFamily::validate({mat({{1, 0}, {0, 1}})}, ActionKind::invertible));
  CHECK(id.opnorms[0] == Approx(1.0).epsilon(1e-12));
  CHECK(id.degrees == ints({1}));
}

TEST_CASE("bounds report for the circle pair") {
  const auto f = test::circle_pair();
  BoundsOptions opt;
  opt.phase_space = CircleExpandingSpace{ints({2, 3})};
  const TopoBoundsReport r = topo_bounds(f, joint_spectrum(f), Distribution::uniform(2), opt);
  CHECK(r.lower == Approx(0.8958797346140275).epsilon(1e-14));
  REQUIRE(r.degree_value.has_value());
  CHECK(*r.degree_value == Approx(0.8958797346140275).epsilon(1e-14));
  CHECK(*r.smooth_upper >= r.lower - 1e-9);
  BoundsOptions interval;
  interval.phase_space = IntervalSpace{{2, 3}};
  CHECK(topo_bounds(f, joint_spectrum(f), Distribution::uniform(2), interval).interval_upper.has_value());
}

TEST_CASE("property: sandwich lower <= mixture <= smooth bound") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto f = GeneratorFamily::validate(test::random_unimodular_family(rng, k), ActionKind::invertible);
    Spectrum s;
    try {
      s = joint_spectrum(f);
    } catch (const DomainError&) {
      continue;
    }
    const Distribution nu = test::random_distribution(rng, k);
    const TopoBoundsReport r = topo_bounds(f, s, nu);
    const double mixture = generator_mixture_bound(s, nu);
    CHECK(r.lower <= mixture + 1e-9);
    CHECK(mixture <= *r.smooth_upper + 1e-9);
    CHECK(r.lower <= *r.lipschitz_upper + 1e-9);
    if (r.degree_value) CHECK(r.lower <= *r.degree_value + 1e-9);
  }
}

TEST_CASE("property: expanding circle maps, entropy formula equals degree formula exactly") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<long long> deg(2, 40);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 4;
    std::vector<IntMatrix> gens;
    std::vector<BigInt> degrees;
    for (std::size_t i = 0; i < k; ++i) {
      degrees.emplace_back(deg(rng));
      gens.push_back(IntMatrix::from_rows({{degrees.back()}}));
    }
    const auto f = GeneratorFamily::validate(gens, ActionKind::endomorphism);
    const Distribution nu = test::random_distribution(rng, k);
    CHECK(random_entropy(joint_spectrum(f), nu).value == expanding_entropy(degrees, nu));
  }
}

TEST_CASE("property: bounds are affine in nu with classical vertex values") {
  const std::vector<double> l{2.0, 5.0, 0.5};
  const std::vector<BigInt> degs = ints({2, 5, 3});
  for (std::size_t i = 0; i < 3; ++i) {
    const Distribution v = Distribution::vertex(3, i);
    CHECK(smooth_bound(l, 2, v) == Approx(2 * std::log(std::max(1.0, l[i]))));
    CHECK(expanding_entropy(degs, v) == Approx(log_abs(degs[i])));
  }
  const Distribution mid = Distribution::validate({0.25, 0.25, 0.5}, 3);
  CHECK(smooth_bound(l, 2, mid) ==
        Approx(0.25 * smooth_bound(l, 2, Distribution::vertex(3, 0)) + 0.25 * smooth_bound(l, 2, Distribution::vertex(3, 1)) +
               0.5 * smooth_bound(l, 2, Distribution::vertex(3, 2))));
}
