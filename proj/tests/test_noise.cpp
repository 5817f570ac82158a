// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "noise.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rng.hpp"

using namespace dpmsr;

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(LaplaceSchedule(0.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(LaplaceSchedule(-1.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(LaplaceSchedule(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(LaplaceSchedule(1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(LaplaceSchedule(1.0, 0.75));
}

TEST_CASE("scale_at evaluates c * q^k") {
  LaplaceSchedule s(1.0, 0.75);
  CHECK(s.scaleAt(0) == doctest::Approx(1.0));
  CHECK(s.scaleAt(2) == doctest::Approx(0.5625));
  LaplaceSchedule adversary(0.8, 0.9);
  CHECK(adversary.scaleAt(1) == doctest::Approx(0.72));
  CHECK_THROWS_AS(s.scaleAt(-1), std::invalid_argument);
}

TEST_CASE("scale_at is strictly decreasing and summable") {
  LaplaceSchedule s(2.0, 0.9);
  double sum = 0.0;
  double prev = s.scaleAt(0);
  sum += prev;
  for (int k = 1; k < 400; ++k) {
    const double cur = s.scaleAt(k);
    CHECK(cur < prev);
    prev = cur;
    sum += cur;
  }
  CHECK(sum == doctest::Approx(2.0 / (1.0 - 0.9)).epsilon(1e-6));
}

TEST_CASE("variance_at evaluates 2 b^2 and sums to the geometric limit") {
  LaplaceSchedule s(1.0, 0.75);
  CHECK(s.varianceAt(0) == doctest::Approx(2.0));
  CHECK(s.varianceAt(1) == doctest::Approx(1.125));
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) sum += s.varianceAt(k);
  CHECK(sum == doctest::Approx(32.0 / 7.0).epsilon(1e-9));  // 2c^2/(1-q^2)
}

TEST_CASE("inverse CDF maps the median to zero and rejects closed endpoints") {
  CHECK(laplaceInverseCdf(0.5, 3.0) == 0.0);
  CHECK(laplaceInverseCdf(0.25, 1.0) == doctest::Approx(std::log(0.5)));
  CHECK(laplaceInverseCdf(0.75, 1.0) == doctest::Approx(-std::log(0.5)));
  CHECK_THROWS_AS(laplaceInverseCdf(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laplaceInverseCdf(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("streams are deterministic and distinct") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  bool diverged = false;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t x = a.nextU64();
    CHECK(x == b.nextU64());
    if (x != c.nextU64()) diverged = true;
  }
  CHECK(diverged);
  RngStream d1 = RngStream::derive(42, {1, 2, 3});
  RngStream d2 = RngStream::derive(42, {1, 2, 3});
  RngStream d3 = RngStream::derive(42, {1, 3, 2});
  CHECK(d1.nextU64() == d2.nextU64());
  CHECK(d1.nextU64() != d3.nextU64());
}

TEST_CASE("sample variance matches 2 b^2 within 2%") {
  LaplaceSchedule s(1.0, 0.75);
  RngStream rng(1234);
  const int n = 1'000'000;
  const int k = 1;
  double sum = 0.0, sumSq = 0.0;
  int negative = 0;
  for (int i = 0; i < n; ++i) {
    const double x = sampleLaplace(s, k, rng);
    sum += x;
    sumSq += x * x;
    if (x < 0.0) ++negative;
  }
  const double mean = sum / n;
  const double var = sumSq / n - mean * mean;
  CHECK(var == doctest::Approx(s.varianceAt(k)).epsilon(0.02));
  // sign balance of the zero-median distribution
  CHECK(std::abs(static_cast<double>(negative) / n - 0.5) < 0.005);
}

TEST_CASE("one uniform consumed per draw") {
  LaplaceSchedule s(1.0, 0.75);
  RngStream a(99);
  RngStream b(99);
  (void)sampleLaplace(s, 0, a);
  (void)b.nextUniform();
  // After one draw both streams are aligned again.
  CHECK(a.nextU64() == b.nextU64());
}

TEST_CASE("Kolmogorov-Smirnov fit against the Laplace CDF") {
  LaplaceSchedule s(1.0, 0.75);
  const int k = 3;
  const double b = s.scaleAt(k);
  RngStream rng(777);
  const int n = 100'000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = sampleLaplace(s, k, rng);
  std::sort(xs.begin(), xs.end());
  auto cdf = [b](double x) {
    return x < 0.0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
  };
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  // 1% critical value: 1.62762 / sqrt(n)
  CHECK(d < 1.62762 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("gaussian helper is standard normal to Monte Carlo accuracy") {
  RngStream rng(2024);
  const int n = 200'000;
  double sum = 0.0, sumSq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.nextGaussian();
    sum += z;
    sumSq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sumSq / n == doctest::Approx(1.0).epsilon(0.02));
}
