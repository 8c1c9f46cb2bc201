#include <doctest.h>

#include <cmath>

#include "linequad/recur3d.hpp"
#include "support/oracle.hpp"

using namespace linequad;

namespace {

double worst(const std::vector<double>& got, const oracle::Monomial3D& ref) {
  double w = 0.0;
  for (size_t k = 0; k < got.size(); ++k)
    w = std::max(w, std::abs(got[k] - static_cast<double>(ref.value[k])) / static_cast<double>(ref.scale[k]));
  return w;
}

}  // namespace

TEST_CASE("P vectors at t0 = i in closed form") {
  const cplx i(0.0, 1.0);
  const PVectors p = pvectors(i, 16);
  CHECK(p.p1[0] == doctest::Approx(2.0 * std::asinh(1.0)).epsilon(1e-15));
  CHECK(std::abs(p.p1[1]) < 1e-15);
  CHECK(p.p3[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(p.p3[1]) < 1e-15);
  CHECK(p.p5[0] == doctest::Approx(5.0 * std::sqrt(2.0) / 6.0).epsilon(1e-15));
  CHECK(std::abs(p.p5[1]) < 1e-15);
}

TEST_CASE("series tables and region predicates") {
  CHECK(s1_coefficients().size() == static_cast<size_t>(s1_terms));
  CHECK(s3_coefficients().size() == static_cast<size_t>(s3_terms));
  CHECK(s5_coefficients().size() == static_cast<size_t>(s5_terms));
  CHECK(in_rhombus(cplx(0.5, 0.1)));
  CHECK_FALSE(in_rhombus(cplx(0.5, 0.2)));
  CHECK(in_endpoint_cone(cplx(1.2, 1e-6), s3_cone));
  CHECK_FALSE(in_endpoint_cone(cplx(1.2, 0.5), s3_cone));
  CHECK_FALSE(in_endpoint_cone(cplx(0.5, 1e-6), s3_cone));
}

TEST_CASE("P vectors against the oracle at sample points") {
  // [DERIVED] sinh-substituted long-double reference.
  SUBCASE("near the interior: t0 = 0.5 + 1e-7 i") {
    const PVectors p = pvectors(cplx(0.5, 1e-7), 16);
    CHECK(worst(p.p1, oracle::monomials_3d(cplx(0.5, 1e-7), 1, 16)) < 1e-12);
  }
  SUBCASE("inside the m = 3 cone: t0 = 1.2 + 1e-6 i") {
    const PVectors p = pvectors(cplx(1.2, 1e-6), 16);
    CHECK(worst(p.p3, oracle::monomials_3d(cplx(1.2, 1e-6), 3, 16)) < 1e-12);
  }
  SUBCASE("inside the m = 5 cone at the left end: t0 = -1.05 + 1e-5 i") {
    const PVectors p = pvectors(cplx(-1.05, 1e-5), 16);
    CHECK(worst(p.p5, oracle::monomials_3d(cplx(-1.05, 1e-5), 5, 16)) < 1e-11);
  }
}

TEST_CASE("reflection symmetry and t_r sign invariance") {
  for (const cplx t0 : {cplx(0.4, 0.03), cplx(1.3, 0.01), cplx(0.9, 1e-6)}) {
    const PVectors a = pvectors(t0, 16), b = pvectors(-std::conj(t0), 16);
    for (int k = 0; k < 16; ++k) {
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(b.p1[k] - sgn * a.p1[k]) <= 1e-13 * a.p1[0]);
      CHECK(std::abs(b.p3[k] - sgn * a.p3[k]) <= 1e-13 * a.p3[0]);
      CHECK(std::abs(b.p5[k] - sgn * a.p5[k]) <= 1e-13 * a.p5[0]);
    }
  }
}

TEST_CASE("positivity and ordering") {
  for (const cplx t0 : {cplx(0.0, 1e-8), cplx(1.5, 1e-3), cplx(-0.3, 0.4)}) {
    const PVectors p = pvectors(t0, 4);
    CHECK(p.p1[0] > 0.0);
    CHECK(p.p3[0] > 0.0);
    CHECK(p.p5[0] > 0.0);
  }
  // |t - t0| >= 1 on the interval: integrands are pointwise ordered.
  for (double ti : {1.0, 1.5, 3.0}) {
    const PVectors p = pvectors(cplx(0.0, ti), 2);
    CHECK(p.p1[0] >= p.p3[0]);
    CHECK(p.p3[0] >= p.p5[0]);
  }
}

TEST_CASE("rejects roots on the interval") {
  CHECK_THROWS_AS(pvec_m1(cplx(0.2, 0.0), 4), std::domain_error);
}
