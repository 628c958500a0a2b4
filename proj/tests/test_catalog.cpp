#include <catch2/catch_amalgamated.hpp>

#include "biortho/catalog.hpp"
#include "biortho/json_io.hpp"
#include "biortho/report.hpp"

using namespace biortho;

namespace {
const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();
}  // namespace

TEST_CASE("catalog holds six entries") {
  CHECK(catalog_list().size() == 6);
}

TEST_CASE("intriguing family data") {
  FamilySpec fam = catalog_load("krall-sheffer-intriguing");
  CHECK(fam.phi == PolyMatrix{{3 * Y, BiPoly(1)}, {BiPoly(1), BiPoly(0)}});
  CHECK(fam.psi.at(0, 0) == -1 * X);
  CHECK(fam.psi.at(1, 0) == -1 * Y);
  REQUIRE(fam.weight);
  CHECK(fam.weight->s() == Y.pow(3) - X * Y);
  CHECK(fam.weight->factors().empty());
  CHECK(!fam.diagonal_reduction);
}

TEST_CASE("ball family data at mu = 1/2") {
  FamilySpec fam = catalog_load("ball", {{"mu", rat(1, 2)}});
  CHECK(fam.phi == PolyMatrix{{X * X - BiPoly(1), X * Y}, {X * Y, Y * Y - BiPoly(1)}});
  CHECK(fam.psi.at(0, 0) == 3 * X);
  CHECK(fam.psi.at(1, 0) == 3 * Y);
  REQUIRE(fam.diagonal_reduction);
  const BiPoly circle = BiPoly(1) - X * X - Y * Y;
  CHECK(fam.diagonal_reduction->phi.at(0, 0) == circle);
  CHECK(fam.diagonal_reduction->phi.at(0, 1).is_zero());
  CHECK(fam.diagonal_reduction->psi.at(0, 0) == -2 * X);
  // At mu = 1/2 the weight is constant: no factors at all.
  CHECK(fam.weight->factors().empty());
  FamilySpec f32 = catalog_load("ball", {{"mu", rat(3, 2)}});
  REQUIRE(f32.weight->factors().size() == 1);
  CHECK(f32.weight->factors()[0].exponent == 1);
}

TEST_CASE("simplex family data at the Lebesgue point") {
  FamilySpec fam = catalog_load("simplex");
  CHECK(fam.phi == PolyMatrix{{X * X - X, X * Y}, {X * Y, Y * Y - Y}});
  CHECK(fam.psi.at(0, 0) == 3 * X - BiPoly(1));
  CHECK(fam.psi.at(1, 0) == 3 * Y - BiPoly(1));
  REQUIRE(fam.diagonal_reduction);
  const BiPoly edge = BiPoly(1) - X - Y;
  CHECK(fam.diagonal_reduction->phi.at(0, 0) == X * edge);
  CHECK(fam.diagonal_reduction->phi.at(1, 1) == Y * edge);
  CHECK(fam.diagonal_reduction->psi.at(0, 0) == BiPoly(1) - 2 * X - Y);
  CHECK(fam.diagonal_reduction->psi.at(1, 0) == BiPoly(1) - X - 2 * Y);
}

TEST_CASE("unknown families and bad parameters are rejected") {
  CHECK_THROWS_AS(catalog_load("no-such-family"), UnknownFamilyError);
  CHECK_THROWS_AS(catalog_load("ball", {{"mu", rat(-1)}}), ParameterError);
  CHECK_THROWS_AS(catalog_load("ball", {{"alpha", rat(1)}}), ParameterError);
  CHECK_THROWS_AS(catalog_load("simplex", {{"gamma", rat(-2)}}), ParameterError);
}

TEST_CASE("family JSON documents round-trip") {
  for (const auto& info : catalog_list()) {
    FamilySpec fam = catalog_load(info.name);
    FamilySpec back = family_from_json(to_json(fam));
    INFO(info.name);
    CHECK(back.name == fam.name);
    CHECK(back.phi == fam.phi);
    CHECK(back.psi == fam.psi);
    CHECK(back.params == fam.params);
    CHECK(back.weight.has_value() == fam.weight.has_value());
    if (fam.weight) {
      CHECK(back.weight->s() == fam.weight->s());
      REQUIRE(back.weight->factors().size() == fam.weight->factors().size());
      for (size_t i = 0; i < fam.weight->factors().size(); ++i) {
        CHECK(back.weight->factors()[i].base == fam.weight->factors()[i].base);
        CHECK(back.weight->factors()[i].exponent == fam.weight->factors()[i].exponent);
      }
    }
    CHECK((back.diagonal_reduction != nullptr) == (fam.diagonal_reduction != nullptr));
    if (fam.diagonal_reduction) {
      CHECK(back.diagonal_reduction->phi == fam.diagonal_reduction->phi);
      CHECK(back.diagonal_reduction->psi == fam.diagonal_reduction->psi);
    }
  }
}

TEST_CASE("expected-flag conformance across the catalog") {
  for (const auto& info : catalog_list()) {
    FamilySpec fam = catalog_load(info.name);
    VerifyOptions opt;
    opt.max_degree = 3;
    VerificationReport rep = run_verification(fam, opt);
    INFO(info.name);
    CHECK(rep.all_pass);
    CHECK(rep.compat_original == info.expect_compat_original);
    if (info.expect_compat_diagonal) {
      REQUIRE(rep.compat_diagonal);
      CHECK(*rep.compat_diagonal == *info.expect_compat_diagonal);
    }
    REQUIRE(rep.symmetrizable);
    CHECK(*rep.symmetrizable == info.expect_symmetrizable);
    CHECK(rep.weight_route == info.weight_route);
    for (const auto& sec : rep.degrees) {
      if (sec.n < 1) continue;
      REQUIRE(sec.lambda.status == LambdaResult::Status::ok);
      if (info.expect_lambda_shape == LambdaShape::scalar)
        CHECK(sec.lambda.scalar);
      else
        CHECK(sec.lambda.diagonal);
    }
  }
}

TEST_CASE("tensor factor accessor matches the assembled family") {
  auto [fx, fy] = catalog_tensor_factors("tensor-laguerre-jacobi",
                                         {{"alpha", rat(1)}, {"beta", rat(1)}, {"gamma", rat(0)}});
  CHECK(fx.name == "laguerre");
  CHECK(fy.name == "jacobi");
  FamilySpec fam = catalog_load("tensor-laguerre-jacobi",
                                {{"alpha", rat(1)}, {"beta", rat(1)}, {"gamma", rat(0)}});
  CHECK(fam.phi.at(0, 0) == fx.phi);
  CHECK(fam.phi.at(1, 1) == fy.phi.swap_xy());
  CHECK(fam.psi.at(1, 0) == fy.psi.swap_xy());
  CHECK_THROWS_AS(catalog_tensor_factors("ball"), UnknownFamilyError);
}
