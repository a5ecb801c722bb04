#include "forestlink/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "forestlink/errors.hpp"

namespace forestlink {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
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
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    result_kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_gauss += kWg[(j - 1) / 2] * (f1 + f2);
  }
  const double value = result_kronrod * half;
  const double error = std::abs((result_kronrod - result_gauss) * half);
  return Segment{a, b, value, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opt,
                                    std::span<const double> breakpoints) {
  if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: b must be >= a");
  if (a == b) return {0.0, 0.0, 0};

  std::vector<double> edges;
  edges.push_back(a);
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  std::priority_queue<Segment> segments;
  double total_value = 0.0;
  double total_error = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s = evaluate(f, edges[i], edges[i + 1]);
    total_value += s.value;
    total_error += s.error;
    segments.push(s);
    ++count;
  }

  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total_value)); };

  while (total_error > tolerance() && !segments.empty()) {
    if (count >= opt.max_intervals) {
      throw quadrature_error("integrate_adaptive: interval budget exhausted before tolerance");
    }
    Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval is one ulp wide; accept its estimate and stop refining it
      total_error -= worst.error;
      continue;
    }
    Segment left = evaluate(f, worst.a, mid);
    Segment right = evaluate(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    segments.push(left);
    segments.push(right);
    ++count;
  }

  return {total_value, total_error, count};
}

}  // namespace forestlink
