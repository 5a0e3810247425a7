#include <doctest.h>

#include <cmath>
#include <vector>

#include "sdpolicy/rng.hpp"

using sdpolicy::Rng;

TEST_CASE("same seed gives identical streams") {
  Rng a(1234), b(1234);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
  }
}

TEST_CASE("substreams differ from each other") {
  Rng a = Rng::substream(7, 0);
  Rng b = Rng::substream(7, 1);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.uniform() == b.uniform()) ++equal;
  }
  CHECK(equal < 5);
}

TEST_CASE("normal moments") {
  Rng rng(42);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("gamma mean and variance") {
  Rng rng(7);
  const double shape = 4.0, scale = 0.5;
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gamma(shape, scale);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(shape * scale).epsilon(0.02));
  CHECK(var == doctest::Approx(shape * scale * scale).epsilon(0.05));
}

TEST_CASE("gamma with shape below one stays positive") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.gamma(0.5, 1.0) > 0.0);
  }
}

TEST_CASE("beta mean") {
  Rng rng(11);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.beta(2.0, 8.0);
  CHECK(sum / n == doctest::Approx(0.2).epsilon(0.02));
}

TEST_CASE("uniform sample mean within CLT bound") {
  Rng rng(5);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.uniform();
  CHECK(std::abs(sum / n - 0.5) < 0.005);
}
