#include "psplit/geninv.hpp"
#include "psplit/numeric.hpp"
#include "psplit/orders.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <cmath>

using namespace psplit;
using namespace psplit::testing;

namespace {

const ComplexMatrix kT = mat(3, 3, {0.5, 0, 0, 0, 0.5, 0, 0, 0.5, 0});
const ComplexMatrix kS = mat(3, 3, {0, 0, 0, 0, 0.5, 0, 0, 0.5, 0});
const ComplexMatrix kMinusS = mat(3, 3, {1, 0, 0, 2, 0, 0, 0, 0, 0});
const ComplexMatrix kMinusT = diag({1, 0.5, 0});
const ComplexMatrix kSharpT = diag({1.5, 0, 1.5});
const ComplexMatrix kSharpS = mat(3, 3, {1.5, 0, 4.5, 0, 0, 0, 0, 0, 0});

}  // namespace

TEST_SUITE("orders") {

TEST_CASE("star order examples") {
  const OrderVerdict v = star_leq(kS, kT);
  REQUIRE(v.holds);
  CHECK(near(*v.witness_left * kT, kS) < 1e-12);
  CHECK(near(*v.witness_right * kT.adjoint(), kS.adjoint()) < 1e-12);
  CHECK(star_leq(kT, kT).holds);
  CHECK_FALSE(star_leq(kMinusS, kMinusT).holds);
  CHECK(star_leq_by_decomposition(kS, kT));
  CHECK_FALSE(star_leq_by_decomposition(kMinusS, kMinusT));
}

TEST_CASE("minus order examples") {
  const OrderVerdict v = minus_leq(kMinusS, kMinusT);
  REQUIRE(v.holds);
  CHECK(near(*v.witness_left * kMinusT, kMinusS) < 1e-12);
  CHECK(near(*v.witness_right * kMinusT.adjoint(), kMinusS.adjoint()) < 1e-12);
  CHECK(near(*v.witness_left * *v.witness_left, *v.witness_left) < 1e-12);
  CHECK(minus_leq(ComplexMatrix::Zero(3, 3), kMinusT).holds);
  CHECK(minus_leq(kS, kT).holds);
  CHECK_FALSE(minus_leq(diag({1, 1}), diag({1, 0})).holds);
}

TEST_CASE("sharp order examples") {
  const OrderVerdict v = sharp_leq(kSharpS, kSharpT);
  REQUIRE(v.holds);
  const ComplexMatrix q = mat(3, 3, {1, 0, 3, 0, 0, 0, 0, 0, 0});
  CHECK(near(*v.witness_left, q) < 1e-12);
  CHECK(near(q * kSharpT, kSharpS) < 1e-12);
  CHECK(near(kSharpT * q, kSharpS) < 1e-12);
  CHECK(sharp_leq(kSharpT, kSharpT).holds);
  CHECK_THROWS_AS(sharp_leq(mat(2, 2, {0, 1, 0, 0}), eye(2)), Error);
  CHECK_FALSE(sharp_leq(diag({1, 0}), diag({2, 1})).holds);
}

TEST_CASE("Loewner order examples") {
  CHECK(loewner_leq(diag({1, 0}), diag({2, 1})));
  CHECK_FALSE(loewner_leq(diag({2}), diag({1})));
  CHECK_THROWS_AS(loewner_leq(mat(2, 2, {0, 1, 0, 0}), eye(2)), Error);
  Rng rng = instance_rng(301, 0);
  for (int k = 0; k < 10; ++k) {
    const Index n = ensembles::uniform_index(rng, 1, 6);
    const ComplexMatrix t = random_rank(rng, n, n, ensembles::uniform_index(rng, 1, n), 0.05, 1.0);
    CHECK(loewner_leq(abs_op(t), range_projector(t.adjoint())));
  }
}

TEST_CASE("BLT criterion examples") {
  BltVerdict v = blt_criterion(diag({1, 0}), diag({2, 1}));
  CHECK(v.holds);
  CHECK(v.rho == doctest::Approx(0.5));
  v = blt_criterion(diag({2, 1}), diag({2, 1}));
  CHECK(v.holds);
  CHECK(v.rho == doctest::Approx(1.0));
  v = blt_criterion(diag({1, 1}), diag({2, 0}));
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.range_included);
  CHECK_THROWS_AS(blt_criterion(diag({-1}), diag({1})), Error);
}

TEST_CASE("Moore-Penrose antitonicity examples") {
  // S = diag(1,0) <= T = diag(2,1), but S^+ - T^+ = diag(1/2,-1) is indefinite
  // and R(T) meets N(S) in span{e2}.
  AntitoneVerdict a = mp_antitone_check(diag({1, 0}), diag({2, 1}));
  CHECK(a.loewner);
  CHECK_FALSE(a.inverses_reversed);
  CHECK_FALSE(a.trivial_intersections);

  a = mp_antitone_check(diag({2, 1}), diag({2, 1}));
  CHECK(a.loewner);
  CHECK(a.inverses_reversed);
  CHECK(a.trivial_intersections);

  a = mp_antitone_check(diag({1, 0}), eye(2));
  CHECK(a.loewner);
  CHECK_FALSE(a.inverses_reversed);
  CHECK_FALSE(a.trivial_intersections);

  // Same ranges and S <= T: all three hold.
  a = mp_antitone_check(diag({1, 0.5}), diag({2, 1}));
  CHECK(a.loewner);
  CHECK(a.inverses_reversed);
  CHECK(a.trivial_intersections);
}

TEST_CASE("trivial intersection of subspaces") {
  const auto span = [](const ComplexMatrix& c) { return SubspaceBasis::span_of(c); };
  CHECK(trivial_intersection(span(mat(3, 1, {1, 0, 0})), span(mat(3, 1, {0, 1, 0}))));
  CHECK_FALSE(trivial_intersection(span(mat(3, 2, {1, 0, 0, 1, 0, 0})), span(mat(3, 2, {0, 0, 1, 0, 0, 1}))));
}

TEST_CASE("property: star implies minus, and moduli inherit the star order") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng = instance_rng(302, i);
    const Index m = ensembles::uniform_index(rng, 2, 8);
    const Index n = ensembles::uniform_index(rng, 2, 8);
    const ensembles::StarPair p = ensembles::star_pair(rng, m, n, 0.2, 2.0);
    const OrderVerdict star = star_leq(p.s, p.t);
    REQUIRE(star.holds);
    CHECK(star_leq_by_decomposition(p.s, p.t));
    CHECK(minus_leq(p.s, p.t).holds);
    CHECK(star_leq(abs_op(p.s), abs_op(p.t)).holds);
    CHECK(near(*star.witness_left * p.t, p.s) < 1e-9);
  }
}

TEST_CASE("property: generic pairs are not star ordered") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng = instance_rng(303, i);
    const Index n = ensembles::uniform_index(rng, 2, 7);
    const ComplexMatrix t = random_rank(rng, n, n, n);
    const ComplexMatrix s = random_rank(rng, n, n, ensembles::uniform_index(rng, 1, n - 1));
    CHECK_FALSE(star_leq(s, t).holds);
    CHECK(star_leq_by_decomposition(s, t) == star_leq(s, t).holds);
  }
}

TEST_CASE("property: sharp order on similarity-block pairs implies minus order") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = instance_rng(304, i);
    const Index n = ensembles::uniform_index(rng, 2, 8);
    const Index k = ensembles::uniform_index(rng, 1, n);
    const Index r = ensembles::uniform_index(rng, 1, k);
    // T = X diag(A, B, 0) X^{-1}, S = X diag(A, 0, 0) X^{-1}.
    std::vector<Complex> lt = eigenvalues_in_annulus(rng, n, 0.3, 2.0);
    for (Index j = k; j < n; ++j) lt[static_cast<std::size_t>(j)] = 0.0;
    std::vector<Complex> ls = lt;
    for (Index j = r; j < n; ++j) ls[static_cast<std::size_t>(j)] = 0.0;
    const ComplexMatrix x = random_rank(rng, n, n, n, 0.5, 2.0);
    const ComplexMatrix xi = x.inverse();
    Eigen::VectorXcd dt(n), ds(n);
    for (Index j = 0; j < n; ++j) {
      dt(j) = lt[static_cast<std::size_t>(j)];
      ds(j) = ls[static_cast<std::size_t>(j)];
    }
    const ComplexMatrix t = x * dt.asDiagonal() * xi;
    const ComplexMatrix s = x * ds.asDiagonal() * xi;
    const OrderVerdict v = sharp_leq(s, t);
    REQUIRE(v.holds);
    if (v.witness_left) {
      CHECK(near(*v.witness_left * t, s) < 1e-8);
      CHECK(near(t * *v.witness_left, s) < 1e-8);
    }
    CHECK(minus_leq(s, t).holds);
  }
}

}
