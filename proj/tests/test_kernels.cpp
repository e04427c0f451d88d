#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "vacfree/errors.hpp"
#include "vacfree/kernels.hpp"

using namespace vacfree;
using namespace vacfree::kernels;

namespace {

struct Inputs {
  std::vector<double> w;
  std::vector<cplx> x, u, y0;
};

Inputs random_inputs(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.w.push_back(g(rng) * 1e3);
    in.x.emplace_back(g(rng), g(rng));
    in.u.emplace_back(g(rng) * 1e-5, g(rng));
    in.y0.emplace_back(g(rng), g(rng) * 7.0);
  }
  return in;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

struct Outputs {
  std::vector<cplx> scaled, subbed, combined;
};

Outputs run_all(const Inputs& in, cplx a, double s, cplx k) {
  Outputs o;
  o.scaled.resize(in.x.size());
  scale_real(in.w, in.x, o.scaled);
  o.subbed = in.y0;
  sub_scaled(a, in.x, o.subbed);
  o.combined.resize(in.x.size());
  combine(in.x, in.u, s, k, o.combined);
  return o;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  const auto backends = available_backends();
  REQUIRE_FALSE(backends.empty());
  CHECK(backends.front() == Backend::scalar);
  CHECK(backend_name(Backend::scalar) == "scalar");
}

TEST_CASE("scalar kernels match the plain formulas") {
  std::mt19937_64 rng(5);
  const Inputs in = random_inputs(17, rng);
  const cplx a(0.3, -1.1), k(-2.0, 0.5);
  const double s = 0.75;
  std::vector<cplx> y(in.x.size());
  scalar::scale_real(in.w, in.x, y);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == in.w[i] * in.x[i]);
  y = in.y0;
  scalar::sub_scaled(a, in.x, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK(std::abs(y[i] - (in.y0[i] - a * in.x[i])) <= 1e-14 * (1 + std::abs(y[i])));
  }
  scalar::combine(in.x, in.u, s, k, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK(std::abs(y[i] - (in.x[i] + s * in.u[i]) * k) <= 1e-14 * (1 + std::abs(y[i])));
  }
}

TEST_CASE("every backend is bitwise identical to scalar") {
  std::mt19937_64 rng(2024);
  const Backend saved = active_backend();
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
    const Inputs in = random_inputs(n, rng);
    const cplx a(1.0 / 3.0, -2.0 / 7.0), k(0.1, 1e-3);
    set_backend(Backend::scalar);
    const Outputs ref = run_all(in, a, 1.0 / 9.0, k);
    for (Backend b : available_backends()) {
      CAPTURE(backend_name(b));
      CAPTURE(n);
      set_backend(b);
      const Outputs got = run_all(in, a, 1.0 / 9.0, k);
      CHECK(bitwise_equal(ref.scaled, got.scaled));
      CHECK(bitwise_equal(ref.subbed, got.subbed));
      CHECK(bitwise_equal(ref.combined, got.combined));
    }
  }
  set_backend(saved);
}

TEST_CASE("unavailable backend is rejected") {
  bool has_neon = false, has_avx2 = false;
  for (Backend b : available_backends()) {
    has_neon |= b == Backend::neon;
    has_avx2 |= b == Backend::avx2;
  }
  if (!has_neon) CHECK_THROWS_AS(set_backend(Backend::neon), ConfigError);
  if (!has_avx2) CHECK_THROWS_AS(set_backend(Backend::avx2), ConfigError);
}
