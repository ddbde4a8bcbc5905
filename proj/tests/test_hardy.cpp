#include <gtest/gtest.h>

#include <cmath>

#include "modelspace/error.hpp"
#include "modelspace/hardy.hpp"

using namespace modelspace;

namespace {

GridFunction kernel(Complex a) {
  return pointwise([a](Complex w) { return 1.0 / (1.0 - std::conj(a) * w); });
}

GridFunction monomial(int k) {
  return pointwise([k](Complex w) { return std::pow(w, k); });
}

}  // namespace

TEST(CircleSampler, Validation) {
  EXPECT_NO_THROW(CircleSampler{}.validate());
  EXPECT_THROW((CircleSampler{1000, 6, 1e-13}.validate()), Error);
  EXPECT_THROW((CircleSampler{128, 6, 1e-13}.validate()), Error);
  EXPECT_THROW((CircleSampler{1024, 0, 1e-13}.validate()), Error);
  EXPECT_THROW((CircleSampler{1024, 6, 0.0}.validate()), Error);
}

TEST(CircleGrid, RootsOfUnity) {
  const CircleGrid g(256);
  for (std::size_t j = 0; j < g.size(); j += 17) {
    EXPECT_NEAR(std::abs(g.point(j) - std::polar(1.0, 2.0 * M_PI * j / 256.0)), 0.0, 1e-15);
  }
}

TEST(FourierCoefficients, Examples) {
  const CircleSampler sampler;
  const auto c3 = fourier_coefficients(monomial(3), sampler, 5);
  ASSERT_EQ(c3.size(), 5u);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(c3[k] - (k == 3 ? 1.0 : 0.0)), 0.0, 1e-14);

  const auto ck = fourier_coefficients(kernel(0.5), sampler, 4);
  const double expected[] = {1.0, 0.5, 0.25, 0.125};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(ck[k] - expected[k]), 0.0, 1e-14);

  const auto cl = fourier_coefficients(pointwise([](Complex w) { return (2.0 + w) / 2.0; }),
                                       sampler, 2);
  EXPECT_NEAR(std::abs(cl[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cl[1] - 0.5), 0.0, 1e-15);
}

TEST(H2InnerProduct, MonomialsAreOrthonormal) {
  const CircleSampler sampler;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      EXPECT_NEAR(std::abs(h2_inner_product(monomial(m), monomial(n), sampler) -
                           (m == n ? 1.0 : 0.0)),
                  0.0, 1e-14);
    }
  }
}

TEST(H2InnerProduct, ReproducingKernels) {
  const CircleSampler sampler;
  EXPECT_NEAR(std::abs(h2_inner_product(kernel(0.5), kernel(0.5), sampler) - 4.0 / 3.0), 0.0,
              1e-13);
  EXPECT_NEAR(std::abs(h2_inner_product(kernel(0.5), kernel(0.25), sampler) - 8.0 / 7.0), 0.0,
              1e-13);
  // <f, k_a> = f(a)
  const Complex a{0.3, -0.6};
  const auto f = [](Complex w) { return std::exp(w) * (1.0 + w * w); };
  EXPECT_NEAR(std::abs(h2_inner_product(pointwise(f), kernel(a), sampler) - f(a)), 0.0, 1e-13);
}

TEST(H2InnerProduct, RefinesKernelsNearTheCircle) {
  // Coefficients decay like 0.97^k; the initial grid is too coarse.
  const Complex a{0.97, 0.0};
  const double exact = 1.0 / (1.0 - std::norm(a));
  EXPECT_NEAR(std::abs(h2_inner_product(kernel(a), kernel(a), CircleSampler{}) - exact) / exact,
              0.0, 1e-12);
}

TEST(H2InnerProduct, ReportsExhaustedBudget) {
  const CircleSampler tight{256, 1, 1e-13};
  try {
    h2_inner_product(kernel(0.99), kernel(0.99), tight);
    FAIL() << "expected an accuracy error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::accuracy);
    EXPECT_GT(e.value(), 1e-13);
  }
}

TEST(H2CrossGram, OrientationAndValues) {
  const Complex a{0.2, 0.1}, c{-0.4, 0.3};
  const GridFunction f[] = {kernel(a), kernel(c)};
  const GridFunction g[] = {kernel(c)};
  const Matrix G = h2_cross_gram(f, g, CircleSampler{});
  ASSERT_EQ(G.rows(), 1);
  ASSERT_EQ(G.cols(), 2);
  // G(j, k) = <f_k, g_j> = f_k(c)
  EXPECT_NEAR(std::abs(G(0, 0) - 1.0 / (1.0 - std::conj(a) * c)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(G(0, 1) - 1.0 / (1.0 - std::norm(c))), 0.0, 1e-13);
}
