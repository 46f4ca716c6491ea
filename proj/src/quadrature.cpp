#include "qioms/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "qioms/errors.hpp"

namespace qioms {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  std::complex<double> value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const ComplexIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::complex<double> kronrod = 0.0;
  std::complex<double> gauss = 0.0;
  for (int j = 0; j < 8; ++j) {
    std::complex<double> pair_sum;
    if (j == 7) {
      pair_sum = f(center);
    } else {
      pair_sum = f(center - half * kXgk[j]) + f(center + half * kXgk[j]);
    }
    kronrod += kWgk[j] * pair_sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair_sum;  // odd Kronrod nodes are Gauss nodes
  }
  kronrod *= half;
  gauss *= half;

  if (!std::isfinite(kronrod.real()) || !std::isfinite(kronrod.imag())) {
    throw std::domain_error("integrate_adaptive: integrand produced a non-finite value in [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return Segment{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

IntegrationResult integrate_adaptive(const ComplexIntegrand& f, double lower, double upper,
                                     double tol, std::span<const double> breakpoints,
                                     int max_evaluations) {
  if (!(lower < upper)) throw std::domain_error("integrate_adaptive: requires lower < upper");
  if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: requires tol > 0");

  std::vector<double> edges{lower, upper};
  for (double p : breakpoints) {
    if (p > lower && p < upper) edges.push_back(p);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Segment> queue;
  std::complex<double> total = 0.0;
  double total_error = 0.0;
  int evaluations = 0;

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s = gk15(f, edges[i], edges[i + 1]);
    evaluations += 15;
    total += s.value;
    total_error += s.error;
    queue.push(s);
  }

  const auto converged = [&] {
    return total_error <= tol * std::max(1.0, std::abs(total));
  };
  const auto splittable = [](const Segment& s) {
    const double scale = std::max({std::abs(s.a), std::abs(s.b), 1.0});
    return (s.b - s.a) > 64.0 * std::numeric_limits<double>::epsilon() * scale;
  };

  while (!converged()) {
    if (queue.empty()) {
      throw AccuracyError("integrate_adaptive: roundoff-limited before reaching tolerance",
                          total, total_error, evaluations);
    }
    if (!splittable(queue.top())) {
      queue.pop();  // at roundoff width; its contribution stays in the totals
      continue;
    }
    if (evaluations + 30 > max_evaluations) {
      throw AccuracyError("integrate_adaptive: evaluation budget of " +
                              std::to_string(max_evaluations) +
                              " exhausted before reaching tolerance",
                          total, total_error, evaluations);
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  return IntegrationResult{total, total_error, evaluations};
}

std::vector<double> spectral_breakpoints(const SystemParams& params, double lower, double upper) {
  std::vector<double> points{lower, upper};
  const double features[] = {0.0, params.delta, -params.delta};
  const double guards[] = {-10.0, -1.0, 1.0, 10.0};
  for (double feature : features) {
    if (feature >= lower && feature <= upper) points.push_back(feature);
    for (double k : guards) {
      const double p = feature + k * params.gamma;
      if (p >= lower && p <= upper) points.push_back(p);
    }
  }
  std::sort(points.begin(), points.end());
  // merge points indistinguishable at the band scale
  const double merge_tol = 1e-12 * std::max(1.0, upper - lower);
  std::vector<double> out;
  for (double p : points) {
    if (out.empty() || p - out.back() > merge_tol) out.push_back(p);
  }
  return out;
}

}  // namespace qioms
