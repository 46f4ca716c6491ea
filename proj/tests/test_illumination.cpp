#include <doctest.h>

#include <cmath>
#include <random>

#include "qioms/delay.hpp"
#include "qioms/errors.hpp"
#include "qioms/illumination.hpp"
#include "support/oracles.hpp"

using namespace qioms;

namespace {

SystemParams fig4_params() {
  SystemParams p;
  p.gamma = 1e-3;
  p.delta = 1.5;
  p.g1 = std::sqrt(0.5);
  p.g2 = p.g1;
  p.n_b = 61.945;
  return p;
}

const IlluminationParams kFig4Illum{0.07, 610.0, 1.0};

}  // namespace

TEST_CASE("erfc approximation against the standard library") {
  double worst = 0.0;
  for (int i = -600; i <= 2600; ++i) {
    const double x = i / 100.0;
    worst = std::max(worst, std::abs(detail::erfc_local(x) - std::erfc(x)));
  }
  CHECK(worst < 1e-13);
  CHECK(detail::erfc_local(0.0) == 1.0);
}

TEST_CASE("error probability basics") {
  CHECK(error_probability(0.0) == 0.5);
  CHECK(error_probability(8.0) == doctest::Approx(std::erfc(1.0) / 2.0).epsilon(1e-13));
  CHECK(error_probability(8.0) == doctest::Approx(0.07865).epsilon(1e-3));
  CHECK_THROWS_AS(error_probability(-1e-9), std::domain_error);

  double prev = 0.5;
  for (double snr : {1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e5}) {
    const double p = error_probability(snr);
    CHECK(p < prev);
    prev = p;
  }
  CHECK(error_probability(1e7) >= 0.0);
}

TEST_CASE("coherent baseline arithmetic") {
  CHECK(snr_coherent(IlluminationParams{0.07, 610.0, 1.0}, 0.09) ==
        doctest::Approx(2.0639e-5).epsilon(1e-4));
  CHECK(snr_coherent(IlluminationParams{0.0, 610.0, 1.0}, 0.09) == 0.0);
  const double base = snr_coherent(IlluminationParams{0.07, 610.0, 1.0}, 0.09);
  CHECK(snr_coherent(IlluminationParams{0.07, 610.0, 1e6}, 0.09) ==
        doctest::Approx(1e6 * base).epsilon(1e-14));
}

TEST_CASE("receiver moment is hypothesis independent without a target or converter") {
  const FilterSpec spec{1.0, 0.0};

  // eta = 0: reflected field carries no signal
  IlluminationParams off{0.0, 610.0, 1.0};
  const double h0 = receiver_output_moment(fig4_params(), off, spec, Hypothesis::TargetAbsent);
  const double h1 = receiver_output_moment(fig4_params(), off, spec, Hypothesis::TargetPresent);
  CHECK(h0 == doctest::Approx(h1).epsilon(1e-14));

  // g1 = 0 kills the conversion amplitude B; only mechanical noise remains
  SystemParams no_converter = fig4_params();
  no_converter.g1 = 0.0;
  const double m0 =
      receiver_output_moment(no_converter, kFig4Illum, spec, Hypothesis::TargetAbsent);
  const double m1 =
      receiver_output_moment(no_converter, kFig4Illum, spec, Hypothesis::TargetPresent);
  CHECK(m0 == doctest::Approx(m1).epsilon(1e-14));
  const auto mech_only = [&](double w) {
    const auto s = scattering_coefficients(no_converter, w);
    return cplx(std::norm(s.c_minus) * (no_converter.n_b + 1.0), 0.0);
  };
  const cplx oracle = oracles::trapezoid(mech_only, -0.5, 0.5, 200001);
  CHECK(m0 == doctest::Approx(oracle.real()).epsilon(1e-7));
}

TEST_CASE("receiver moment against a dense-grid oracle") {
  const SystemParams p = fig4_params();
  const FilterSpec spec{1.0, 0.0};
  const auto density = [&](double w) {
    const auto s = scattering_coefficients(p, w);
    return cplx(std::norm(s.b) * (610.0 + 1.0) + std::norm(s.c_minus) * (p.n_b + 1.0), 0.0);
  };
  const cplx oracle = oracles::trapezoid(density, -0.5, 0.5, 1'000'000);
  const double lib = receiver_output_moment(p, kFig4Illum, spec, Hypothesis::TargetAbsent);
  CHECK(lib == doctest::Approx(oracle.real()).epsilon(1e-8));
}

TEST_CASE("mean photon difference vanishes under H0 and without reflectivity") {
  const FilterSpec spec{1.0, 0.0};
  CHECK(mean_photon_difference(fig4_params(), kFig4Illum, spec, Hypothesis::TargetAbsent) == 0.0);
  IlluminationParams off{0.0, 610.0, 1.0};
  CHECK(mean_photon_difference(fig4_params(), off, spec, Hypothesis::TargetPresent) == 0.0);
}

TEST_CASE("optimized delay improves the detected difference at small bandwidth") {
  const SystemParams p = fig4_params();
  const double t_opt = optimal_delay_analytic(p);
  const double with_delay = std::abs(
      mean_photon_difference(p, kFig4Illum, FilterSpec{0.01, t_opt}, Hypothesis::TargetPresent));
  const double no_delay = std::abs(
      mean_photon_difference(p, kFig4Illum, FilterSpec{0.01, 0.0}, Hypothesis::TargetPresent));
  CHECK(with_delay >= no_delay);
}

TEST_CASE("snr vanishes without reflectivity and scales linearly in the pair count") {
  const FilterSpec spec{1.0, 0.0};
  IlluminationParams off{0.0, 610.0, 1.0};
  CHECK(snr_qi(fig4_params(), off, spec) == 0.0);

  IlluminationParams one = kFig4Illum;
  IlluminationParams two = kFig4Illum;
  two.m_pairs = 2.0;
  const double s1 = snr_qi(fig4_params(), one, spec);
  const double s2 = snr_qi(fig4_params(), two, spec);
  CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(1e-12));
  CHECK(s1 > 0.0);
}

TEST_CASE("snr is nonnegative and vanishes exactly with the mean difference") {
  std::mt19937_64 rng(31337);
  const FilterSpec point{0.0, 0.0};
  for (int i = 0; i < 40; ++i) {
    SystemParams p = oracles::random_params(rng);
    IlluminationParams illum{0.07, 610.0, 1.0};
    const double s = snr_qi(p, illum, point);
    CHECK(s >= 0.0);
    const double d1 = mean_photon_difference(p, illum, point, Hypothesis::TargetPresent);
    CHECK((s == 0.0) == (d1 == 0.0));
  }
}

TEST_CASE("quadrature accuracy errors propagate out of the moment integrals") {
  // a tolerance far below machine precision exhausts the evaluation budget
  CHECK_THROWS_AS(
      static_cast<void>(snr_qi(fig4_params(), kFig4Illum, FilterSpec{1.0, 0.0}, 1e-300)),
      AccuracyError);
  CHECK_THROWS_AS(
      static_cast<void>(project_covariance(fig4_params(), FilterSpec{1.0, 0.0}, 1e-300)),
      AccuracyError);
}

TEST_CASE("all-vacuum configuration has no defined snr") {
  SystemParams vacuum;  // no couplings, no baths
  IlluminationParams illum{0.5, 0.0, 1.0};
  CHECK_THROWS_AS(snr_qi(vacuum, illum, FilterSpec{0.0, 0.0}), std::domain_error);
}

TEST_CASE("headline figure of merit at sigma = kappa with the optimal delay") {
  const SystemParams p = fig4_params();
  const double t_opt = optimal_delay_analytic(p);
  const IlluminationReport report = figure_of_merit(p, kFig4Illum, FilterSpec{1.0, t_opt});
  REQUIRE(report.f_merit.has_value());
  CHECK(*report.f_merit == doctest::Approx(1.4810).epsilon(1e-3));
  CHECK(report.snr_qi == doctest::Approx(3.02783e-5).epsilon(1e-4));
  CHECK(report.snr_coherent == doctest::Approx(2.04449e-5).epsilon(1e-4));

  // report-internal consistency
  CHECK(report.p_qi == doctest::Approx(error_probability(report.snr_qi)).epsilon(1e-12));
  CHECK(report.p_coherent ==
        doctest::Approx(error_probability(report.snr_coherent)).epsilon(1e-12));

  // without the delay the advantage is lost at this bandwidth
  const IlluminationReport flat = figure_of_merit(p, kFig4Illum, FilterSpec{1.0, 0.0});
  REQUIRE(flat.f_merit.has_value());
  CHECK(*flat.f_merit == doctest::Approx(0.4873).epsilon(1e-3));
}

TEST_CASE("figure of merit is independent of the pair count") {
  const SystemParams p = fig4_params();
  IlluminationParams many = kFig4Illum;
  many.m_pairs = 1e6;
  const auto r1 = figure_of_merit(p, kFig4Illum, FilterSpec{1.0, 4.2194});
  const auto r2 = figure_of_merit(p, many, FilterSpec{1.0, 4.2194});
  REQUIRE(r1.f_merit.has_value());
  REQUIRE(r2.f_merit.has_value());
  CHECK(*r1.f_merit == doctest::Approx(*r2.f_merit).epsilon(1e-10));
}

TEST_CASE("figure of merit reports the undefined baseline") {
  IlluminationParams off{0.0, 610.0, 1.0};
  const auto report = figure_of_merit(fig4_params(), off, FilterSpec{1.0, 0.0});
  CHECK(!report.f_merit.has_value());
  CHECK(!report.diagnostic.empty());
  CHECK(report.p_qi == 0.5);  // snr = 0
}

TEST_CASE("error probabilities are ordered and decreasing across pair counts") {
  const SystemParams p = fig4_params();
  const double t_opt = optimal_delay_analytic(p);
  const auto unit = figure_of_merit(p, kFig4Illum, FilterSpec{1.0, t_opt});
  double prev_qi = 1.0, prev_coh = 1.0;
  for (int k = 0; k <= 8; ++k) {
    const double m = std::pow(10.0, k);
    const double pq = error_probability(unit.snr_qi * m);
    const double pc = error_probability(unit.snr_coherent * m);
    CHECK(pq <= pc);
    CHECK(pq < prev_qi);
    CHECK(pc < prev_coh);
    prev_qi = pq;
    prev_coh = pc;
  }
}
