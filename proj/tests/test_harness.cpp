#include "hzeta/harness.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "hzeta/special.hpp"

using namespace hzeta;

TEST_CASE("tgrid validation and geometric points") {
  CHECK_THROWS_AS(validate_tgrid(TGrid{2.0, 100.0, 10}), DomainError);
  CHECK_THROWS_AS(validate_tgrid(TGrid{50.0, 10.0, 10}), DomainError);
  CHECK_THROWS_AS(validate_tgrid(TGrid{10.0, 100.0, 1}), DomainError);

  const std::vector<double> pts = geometric_points(TGrid{10.0, 1000.0, 3});
  CHECK(pts.front() == doctest::Approx(10.0));
  CHECK(pts[1] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(pts.back() == doctest::Approx(1000.0));
}

TEST_CASE("mean value integral at t=100") {
  const MeanValueRow row = mean_value_integral(100.0, 0, 0);
  CHECK(row.ratio >= 0.3);
  CHECK(row.ratio <= 3.0);
  CHECK(row.quad_err_bound < 0.01 * row.integral);

  // Doubling panels moves the integral by less than the reported bound.
  const MeanValueRow fine = mean_value_integral(100.0, 512, 0);
  CHECK(std::fabs(fine.integral - row.integral) < row.quad_err_bound + 1e-12);

  CHECK_THROWS_AS(mean_value_integral(5.0, 0, 0), DomainError);
  CHECK_THROWS_AS(mean_value_integral(1000.0, 100, 0), DomainError);
  CHECK_THROWS_AS(mean_value_integral(1e5, 0, 0), DomainError);  // over cap
}

TEST_CASE("chebyshev tail measure: endpoints and exact monotonicity") {
  const std::vector<double> cs{0.01, 2.0, 4.0, 8.0, 1e6};
  const auto rows = chebyshev_tail_measure(100.0, cs, 2000, 0, 0);
  REQUIRE(rows.size() == cs.size());
  CHECK(rows.front().measure_hat > 0.95);  // threshold below typical values
  CHECK(rows.back().measure_hat == 0.0);   // threshold above the sample max
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].measure_hat <= rows[i - 1].measure_hat);
  }
  for (const auto& r : rows) {
    const double p = r.measure_hat;
    CHECK(r.std_err == doctest::Approx(std::sqrt(p * (1 - p) / 2000.0)));
    CHECK(r.threshold == doctest::Approx(r.C * std::sqrt(std::log(100.0))));
  }
  CHECK_THROWS_AS(chebyshev_tail_measure(5.0, cs, 2000, 0, 0), DomainError);
  CHECK_THROWS_AS(chebyshev_tail_measure(100.0, cs, 10, 0, 0), DomainError);
}

TEST_CASE("growth scan at omega=1/2 matches the (2^s-1) zeta(s) identity") {
  const TGrid grid{10.0, 1000.0, 40};
  const ScanReport report = growth_scan(0.5, grid, 0.1, 0);
  CHECK(report.failed_rows == 0);
  CHECK(report.tail_max_ratio <= report.global_max_ratio);
  for (const ScanRow& row : report.rows) {
    const SPoint s{0.5, row.t};
    const cplx factor = std::exp(s.value() * std::log(2.0)) - 1.0;
    const double expected =
        std::abs(factor * hurwitz_zeta(s, OmegaParam(1.0), 1e-11).value);
    CHECK(std::fabs(row.abs - expected) / expected <= 1e-9);
  }
}

TEST_CASE("growth scan is bitwise identical across thread counts") {
  const TGrid grid{10.0, 500.0, 64};
  const ScanReport a = growth_scan(0.3, grid, 0.1, 1);
  const ScanReport b = growth_scan(0.3, grid, 0.1, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].abs == b.rows[i].abs);
    CHECK(a.rows[i].ratio == b.rows[i].ratio);
  }
  CHECK(a.global_max_ratio == b.global_max_ratio);
}

TEST_CASE("growth scan omega window") {
  const TGrid grid{10.0, 100.0, 8};
  CHECK_THROWS_AS(growth_scan(0.01, grid, 0.1, 0), DomainError);
  CHECK_THROWS_AS(growth_scan(0.99, grid, 0.1, 0), DomainError);
}

TEST_CASE("mu exponent estimates") {
  const TGrid grid{10.0, 10'000.0, 120};
  // Absolutely convergent: bounded, slope ~ 0.
  const MuEstimate flat = mu_exponent_estimate(3.0, 0.7, grid, 0);
  CHECK(std::fabs(flat.mu_hat) <= 0.05);
  const MuEstimate flat2 = mu_exponent_estimate(2.0, 0.3, grid, 0);
  CHECK(std::fabs(flat2.mu_hat) <= 0.05);
  // Critical line at desk scale: small positive bias tolerated.
  const MuEstimate crit = mu_exponent_estimate(0.5, 0.3, grid, 0);
  CHECK(crit.mu_hat >= -0.1);
  CHECK(crit.mu_hat <= 0.3);
  CHECK(crit.blocks >= 4);

  CHECK_THROWS_AS(mu_exponent_estimate(0.5, 0.3, TGrid{10.0, 100.0, 50}, 0),
                  DomainError);  // too few points
  CHECK_THROWS_AS(mu_exponent_estimate(0.5, 0.3, TGrid{10.0, 30.0, 120}, 0),
                  InsufficientBlocks);
  CHECK_THROWS_AS(mu_exponent_estimate(5.0, 0.3, grid, 0), DomainError);
}

TEST_CASE("section profile: Riemann row at x=1 and ordering") {
  std::vector<double> xs{0.9, 0.5, 0.2, 1.0};
  const double t = 5000.0;
  const auto rows = section_profile(t, xs, 0);
  REQUIRE(rows.size() == 4);
  // Emitted in ascending x regardless of the input order.
  CHECK(rows.front().x == doctest::Approx(0.2));
  CHECK(rows.back().x == doctest::Approx(1.0));

  // x = 1 row equals |zeta(1/2+it) - 1| / (log t)^2.
  const EvalResult riemann = hurwitz_zeta(SPoint{0.5, t}, OmegaParam(1.0),
                                          scaled_eval_target(1e-10, 0.5, t, 1.0));
  const double expected =
      std::abs(riemann.value - 1.0) / std::pow(std::log(t), 2.0);
  CHECK(rows.back().y == doctest::Approx(expected).epsilon(1e-9));

  CHECK_THROWS_AS(section_profile(t, std::vector<double>{0.001}, 0), DomainError);
  CHECK_THROWS_AS(section_profile(1e8, xs, 0), DomainError);
}

TEST_CASE("section profiles at t and 2t are decorrelated") {
  std::vector<double> xs(96);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = 0.05 + 0.9 * static_cast<double>(i) / (xs.size() - 1);
  }
  const auto a = section_profile(5.0e4, xs, 0);
  const auto b = section_profile(1.0e5, xs, 0);
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ma += a[i].y;
    mb += b[i].y;
  }
  ma /= xs.size();
  mb /= xs.size();
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (a[i].y - ma) * (b[i].y - mb);
    da += (a[i].y - ma) * (a[i].y - ma);
    db += (b[i].y - mb) * (b[i].y - mb);
  }
  const double rho = num / std::sqrt(da * db);
  CHECK(std::fabs(rho) <= 0.3);
}

TEST_CASE("seeded omegas: deterministic, inside the window") {
  const auto a = seeded_omegas(0, 50, 0.05, 0.95);
  const auto b = seeded_omegas(0, 50, 0.05, 0.95);
  CHECK(a == b);
  for (const double w : a) {
    CHECK(w > 0.05);
    CHECK(w < 0.95);
  }
  const auto c = seeded_omegas(1, 50, 0.05, 0.95);
  CHECK(a != c);
}

TEST_CASE("statistics helpers") {
  // Alternating sequence: lag-1 autocorrelation -> -(n-1)/n.
  std::vector<double> alt(64);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2) ? 1.0 : -1.0;
  CHECK(lag1_autocorrelation(alt) == doctest::Approx(-63.0 / 64.0));

  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys{3.0, 5.0, 7.0, 9.0};
  CHECK(least_squares_slope(xs, ys) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(lag1_autocorrelation(std::vector<double>{1.0, 2.0}),
                  DomainError);
}
