#include <catch2/catch_amalgamated.hpp>

#include <twlab/bender_wu.hpp>

#include "support/recursion_residual.hpp"
#include "support/rs_oracle.hpp"

using namespace twlab;

namespace {

Real R(const char* s) { return Real(s); }

const SeriesResult& ground_central_60() {
  static SeriesResult r = central_series(0, 0, 60);
  return r;
}

}  // namespace

TEST_CASE("central series seeds and first orders", "[bender_wu]") {
  auto r0 = central_series(0, 0, 0);
  REQUIRE(r0.series.c(0) == Rational(1, 2));
  REQUIRE(r0.series.order() == 0);

  auto r1 = central_series(0, 0, 1);
  REQUIRE(r1.series.c(1) == Rational(-3, 4));

  // excited states carry c^[0] = n0 + 1/2
  REQUIRE(central_series(3, 1, 0).series.c(0) == Rational(7, 2));

  REQUIRE_THROWS_AS(central_series(1, 0, 3), std::invalid_argument);
}

TEST_CASE("side series seeds, first orders, odd-order cancellation", "[bender_wu]") {
  auto r0 = side_series(0, 0);
  REQUIRE(r0.series.c(0) == Rational(1));

  auto r1 = side_series(0, 1);
  REQUIRE(r1.series.c(1) == Rational(-15, 8));

  REQUIRE(side_series(2, 0).series.c(0) == Rational(5));
}

TEST_CASE("matrix oracle equivalence for low orders", "[bender_wu][oracle]") {
  SECTION("central states") {
    struct Case { unsigned n0, M; };
    for (auto [n0, M] : {Case{0, 8}, Case{1, 6}, Case{2, 5}, Case{3, 4}}) {
      auto gen = central_series(n0, n0 % 2, M);
      auto ora = testing::central_rs_oracle(n0, M);
      for (unsigned m = 0; m <= M; ++m) {
        INFO("n0=" << n0 << " m=" << m);
        REQUIRE(gen.series.c(m) == ora[m]);
      }
    }
  }

  SECTION("side states, both displacement signs") {
    struct Case { unsigned n, M; };
    for (auto [n, M] : {Case{0, 8}, Case{1, 5}, Case{2, 4}}) {
      auto gen = side_series(n, M);
      for (int sign : {+1, -1}) {
        auto ora = testing::side_rs_oracle(n, 2 * M, sign);
        for (unsigned m = 0; m <= M; ++m) {
          INFO("n=" << n << " sign=" << sign << " m=" << m);
          REQUIRE(gen.series.c(m) == ora[2 * m]);
        }
        for (unsigned k = 1; k <= 2 * M; k += 2) {
          INFO("odd order k=" << k);
          REQUIRE(ora[k].is_zero());
        }
      }
    }
  }
}

TEST_CASE("recursion residual vanishes identically", "[bender_wu][property]") {
  SECTION("central ground, deep") {
    auto r = central_series(0, 0, 20);
    REQUIRE(testing::central_recursion_holds(r.series, r.waves, 0));
  }
  SECTION("central excited") {
    auto r = central_series(3, 1, 8);
    REQUIRE(testing::central_recursion_holds(r.series, r.waves, 3));
  }
  SECTION("side ground, deep") {
    auto r = side_series(0, 10);
    REQUIRE(testing::side_recursion_holds(r.series, r.waves));
  }
  SECTION("side excited") {
    auto r = side_series(2, 6);
    REQUIRE(testing::side_recursion_holds(r.series, r.waves));
  }
}

TEST_CASE("wave table truncation bounds", "[bender_wu]") {
  auto c = central_series(2, 0, 6);
  for (unsigned k = 0; k <= 6; ++k) REQUIRE(c.waves.l_max(k) == 1 + 2 * k);
  auto s = side_series(1, 4);
  for (unsigned k = 0; k <= 8; ++k) REQUIRE(s.waves.l_max(k) == 1 + 3 * k);
}

TEST_CASE("all computed energy coefficients beyond order zero are negative", "[bender_wu][property]") {
  const auto& g = ground_central_60();
  for (unsigned m = 1; m <= g.series.order(); ++m) REQUIRE(g.series.c(m) < 0);
  auto s = side_series(0, 12);
  for (unsigned m = 1; m <= 12; ++m) REQUIRE(s.series.c(m) < 0);
}

TEST_CASE("partial sums: exact values against printed reference digits", "[bender_wu][golden]") {
  PrecisionContext ctx(50);
  const auto& g = ground_central_60();

  // omega = 30 column (truncated decimal expansions)
  REQUIRE(to_string_fixed_truncated(partial_sum_exact(g.series, Rational(30), 6), 6) == "-0.821307");
  REQUIRE(to_string_fixed_truncated(partial_sum_exact(g.series, Rational(30), 14), 6) == "-0.821880");
  REQUIRE(to_string_fixed_truncated(partial_sum_exact(g.series, Rational(30), 15), 6) == "-0.821903");
  // omega = 50, M = m_c = 25
  REQUIRE(to_string_fixed_truncated(partial_sum_exact(g.series, Rational(50), 25), 10) == "-0.7883970140");

  SECTION("real path agrees with the exact path") {
    Real w{30};
    Real diff = abs(partial_sum(g.series, w, 15) - to_real(partial_sum_exact(g.series, Rational(30), 15)));
    REQUIRE(diff < R("1e-45"));
  }

  SECTION("empty sum and range errors") {
    REQUIRE(partial_sum(g.series, Real{17}, 0) == 0);
    REQUIRE_THROWS_AS(partial_sum(g.series, Real{17}, 1000), RangeError);
  }
}

TEST_CASE("scale relation: omega-frame sum equals omega times g-frame sum", "[bender_wu][property]") {
  PrecisionContext ctx(50);
  const auto& g = ground_central_60();
  for (const char* ws : {"27.5", "41", "63.2"}) {
    Real w = R(ws);
    Real gg = 1 / sqrt(w);
    Real direct = partial_sum(g.series, w, 22);
    Real g2 = gg * gg;
    Real acc{0}, p{1};
    for (unsigned m = 1; m <= 22; ++m) {
      p *= g2;
      acc += p * to_real(g.series.c(m));
    }
    REQUIRE(abs(direct - w * acc) < R("1e-44") * (1 + abs(direct)));
  }
}

TEST_CASE("critical order and minimum term", "[bender_wu]") {
  PrecisionContext ctx(50);
  const auto& g = ground_central_60();

  REQUIRE(critical_order(g.series, 1 / sqrt(Real{30})) == 15);
  REQUIRE(critical_order(g.series, 1 / sqrt(Real{50})) == 25);

  SECTION("boundary minimum is rejected") {
    auto shortg = central_series(0, 0, 10);
    REQUIRE_THROWS_AS(critical_order(shortg.series, 1 / sqrt(Real{30})), RangeError);
  }

  SECTION("minimum term decreases with omega") {
    Real m90 = min_term_magnitude(g.series, 1 / sqrt(Real{90}));
    Real m110 = min_term_magnitude(g.series, 1 / sqrt(Real{110}));
    REQUIRE(m110 < m90);
  }

  SECTION("minimum term is the term at the critical order") {
    Real gg = 1 / sqrt(Real{30});
    unsigned mc = critical_order(g.series, gg);
    REQUIRE(mc == 15);
    Real expect = pow(gg * gg, 15) * abs(to_real(g.series.c(15)));
    REQUIRE(min_term_magnitude(g.series, gg) == expect);
  }
}
