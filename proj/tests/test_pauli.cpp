#include <doctest.h>

#include <cmath>

#include "ataheat/errors.hpp"
#include "ataheat/grid.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/rng.hpp"
#include "test_support.hpp"

using namespace ataheat;
namespace ts = test_support;

TEST_CASE("wht_analyze basic operators") {
  SUBCASE("identity") {
    const DiagonalPauliSum p = wht_analyze(std::vector<double>(8, 1.0));
    REQUIRE(p.term_count() == 1);
    CHECK(p.coeff(0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("Z on qubit 0") {
    std::vector<double> diag(8);
    for (std::size_t i = 0; i < 8; ++i) diag[i] = (i & 1) ? -1.0 : 1.0;
    const DiagonalPauliSum p = wht_analyze(diag);
    REQUIRE(p.term_count() == 1);
    CHECK(p.coeff(1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("rejects non-power-of-two input") {
    CHECK_THROWS_AS(wht_analyze(std::vector<double>(6, 1.0)), std::invalid_argument);
  }
}

TEST_CASE("wht_synthesize closed forms") {
  SUBCASE("scaled identity") {
    DiagonalPauliSum p(3);
    p.add_term(0, 2.5);
    for (double v : wht_synthesize(p)) CHECK(v == doctest::Approx(2.5));
  }
  SUBCASE("ZZ pattern at n = 2") {
    DiagonalPauliSum p(2);
    p.add_term(3, 1.0);
    const std::vector<double> v = wht_synthesize(p);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == -1.0);
    CHECK(v[2] == -1.0);
    CHECK(v[3] == 1.0);
  }
}

TEST_CASE("analysis/synthesis round trip and brute-force agreement") {
  Rng rng(21);
  for (int n : {4, 6}) {
    const std::size_t size = std::size_t{1} << n;
    const std::vector<double> diag = ts::random_real_vector(size, rng);
    const DiagonalPauliSum p = wht_analyze(diag, 0.0);

    const std::vector<double> back = wht_synthesize(p);
    for (std::size_t k = 0; k < size; ++k) {
      CHECK(std::abs(back[k] - diag[k]) < 1e-12);
    }

    const std::vector<double> brute = ts::brute_walsh(diag);
    for (std::size_t m = 0; m < size; ++m) {
      CHECK(std::abs(p.coeff(m) - brute[m]) < 1e-12);
    }
  }
}

TEST_CASE("Parseval identity") {
  Rng rng(22);
  for (int n : {3, 7}) {
    const std::size_t size = std::size_t{1} << n;
    const std::vector<double> diag = ts::random_real_vector(size, rng);
    const DiagonalPauliSum p = wht_analyze(diag, 0.0);
    double lhs = 0.0;
    for (double v : diag) lhs += v * v;
    double rhs = 0.0;
    for (const auto& [mask, h] : p.terms) rhs += h * h;
    rhs *= static_cast<double>(size);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("decompose_operator support") {
  SUBCASE("piecewise quadratic spectrum is two-local with all low masks present") {
    for (int n : {3, 5, 8}) {
      const GridSpec g = GridSpec::dimensionless(n, 0.1);
      const DiagonalPauliSum p = decompose_operator(approx_spectrum(g));
      const std::size_t expected_cap = static_cast<std::size_t>(n) * (n + 1) / 2 + 1;
      CHECK(p.term_count() <= expected_cap);
      for (const auto& [mask, h] : p.terms) {
        CHECK(detail::popcount64(mask) <= 2);
      }
      // every popcount <= 2 mask carries weight for this spectrum
      CHECK(p.term_count() == expected_cap);
    }
  }
  SUBCASE("sin^2 spectrum is rejected") {
    const GridSpec g = GridSpec::dimensionless(5, 0.1);
    CHECK_THROWS_AS(decompose_operator(exact_spectrum(g)), DecompositionError);
  }
  SUBCASE("constant spectrum is the identity component") {
    Spectrum s;
    s.n = 4;
    s.values.assign(16, -0.3);
    const DiagonalPauliSum p = decompose_operator(s);
    REQUIRE(p.term_count() == 1);
    CHECK(p.coeff(0) == doctest::Approx(-0.3).epsilon(1e-14));
  }
}

TEST_CASE("xor_convolve") {
  Rng rng(23);
  SUBCASE("identity element") {
    DiagonalPauliSum a(4);
    a.add_term(0, 1.0);
    DiagonalPauliSum b(4);
    b.add_term(3, 0.5);
    b.add_term(9, -2.0);
    const DiagonalPauliSum r = xor_convolve(a, b);
    CHECK(r.coeff(3) == doctest::Approx(0.5));
    CHECK(r.coeff(9) == doctest::Approx(-2.0));
    CHECK(r.term_count() == 2);
  }
  SUBCASE("Z-strings are involutions") {
    DiagonalPauliSum a(3);
    a.add_term(5, 1.0);
    const DiagonalPauliSum r = xor_convolve(a, a);
    REQUIRE(r.term_count() == 1);
    CHECK(r.coeff(0) == doctest::Approx(1.0));
  }
  SUBCASE("matches the dense diagonal product") {
    const int n = 6;
    const std::size_t size = 64;
    DiagonalPauliSum a(n), b(n);
    for (int t = 0; t < 8; ++t) {
      a.add_term(rng.next_u64() % size, rng.uniform_pm1());
      b.add_term(rng.next_u64() % size, rng.uniform_pm1());
    }
    const DiagonalPauliSum r = xor_convolve(a, b);
    const std::vector<double> da = wht_synthesize(a);
    const std::vector<double> db = wht_synthesize(b);
    const std::vector<double> dr = wht_synthesize(r);
    for (std::size_t k = 0; k < size; ++k) {
      CHECK(std::abs(dr[k] - da[k] * db[k]) < 1e-12);
    }
  }
  SUBCASE("commutative and associative") {
    const int n = 5;
    auto random_sum = [&](int terms) {
      DiagonalPauliSum p(n);
      for (int t = 0; t < terms; ++t) p.add_term(rng.next_u64() % 32, rng.uniform_pm1());
      return p;
    };
    const DiagonalPauliSum a = random_sum(5);
    const DiagonalPauliSum b = random_sum(7);
    const DiagonalPauliSum c = random_sum(4);

    const DiagonalPauliSum ab = xor_convolve(a, b);
    const DiagonalPauliSum ba = xor_convolve(b, a);
    for (std::size_t m = 0; m < 32; ++m) CHECK(std::abs(ab.coeff(m) - ba.coeff(m)) < 1e-12);

    const DiagonalPauliSum left = xor_convolve(xor_convolve(a, b), c);
    const DiagonalPauliSum right = xor_convolve(a, xor_convolve(b, c));
    for (std::size_t m = 0; m < 32; ++m) CHECK(std::abs(left.coeff(m) - right.coeff(m)) < 1e-12);
  }
  SUBCASE("distributes over coefficient addition") {
    const int n = 5;
    auto random_sum = [&rng](int terms) {
      DiagonalPauliSum p(5);
      for (int t = 0; t < terms; ++t) p.add_term(rng.next_u64() % 32, rng.uniform_pm1());
      return p;
    };
    const DiagonalPauliSum a = random_sum(6);
    const DiagonalPauliSum b = random_sum(5);
    const DiagonalPauliSum c = random_sum(7);
    const DiagonalPauliSum lhs = xor_convolve(a, DiagonalPauliSum::axpy(1.0, b, 1.0, c));
    const DiagonalPauliSum rhs =
        DiagonalPauliSum::axpy(1.0, xor_convolve(a, b), 1.0, xor_convolve(a, c));
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
      CHECK(std::abs(lhs.coeff(m) - rhs.coeff(m)) < 1e-12);
    }
  }
  SUBCASE("qubit-count mismatch") {
    CHECK_THROWS_AS(xor_convolve(DiagonalPauliSum(3), DiagonalPauliSum(4)), std::invalid_argument);
  }
}

TEST_CASE("truncate_top") {
  SUBCASE("orders by magnitude") {
    DiagonalPauliSum p(3);
    p.add_term(0, 5.0);
    p.add_term(1, -3.0);
    p.add_term(2, 1.0);
    const DiagonalPauliSum r = truncate_top(p, 2);
    REQUIRE(r.term_count() == 2);
    CHECK(r.coeff(0) == 5.0);
    CHECK(r.coeff(1) == -3.0);
  }
  SUBCASE("d_cut at least the size is the identity") {
    DiagonalPauliSum p(3);
    p.add_term(4, 0.25);
    const DiagonalPauliSum r = truncate_top(p, 10);
    CHECK(r.term_count() == 1);
    CHECK(r.coeff(4) == 0.25);
  }
  SUBCASE("dropped mass equals the sorted tail") {
    Rng rng(24);
    DiagonalPauliSum p(7);
    while (p.term_count() < 100) p.terms.emplace(rng.next_u64() % 128, rng.uniform_pm1());

    std::vector<double> mags;
    for (const auto& [mask, h] : p.terms) mags.push_back(h * h);
    std::sort(mags.begin(), mags.end());
    double expected = 0.0;
    for (std::size_t i = 0; i + 10 < mags.size(); ++i) expected += mags[i];

    double dropped = 0.0;
    const DiagonalPauliSum r = truncate_top(p, 10, &dropped);
    CHECK(r.term_count() == 10);
    CHECK(dropped == doctest::Approx(expected).epsilon(1e-12));

    // contractive on the coefficient vector
    CHECK(r.coeff_l2() <= p.coeff_l2() + 1e-15);
  }
}
