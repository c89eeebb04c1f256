#include "billiard/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace billiard::poly {
namespace {

std::span<const double> trimmed(std::span<const double> c) {
  std::size_t size = c.size();
  while (size > 0 && c[size - 1] == 0.0) --size;
  return c.first(size);
}

// Invariant: f(a) and f(b) have opposite strict signs. Returns the endpoint
// on the side of `a`'s sign after the bracket collapses.
double bisect(std::span<const double> c, double a, double b) {
  const bool a_positive = evaluate(c, a) > 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double m = a + 0.5 * (b - a);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    if ((evaluate(c, m) > 0.0) == a_positive) {
      a = m;
    } else {
      b = m;
    }
  }
  return a;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Breakpoints lo < x_1 < ... < hi splitting (lo, hi) into monotone pieces.
std::vector<double> monotone_breaks(std::span<const double> c, double lo, double hi) {
  std::vector<double> breaks{lo};
  if (c.size() > 2) {
    const auto dc = derivative(c);
    for (double x : sign_change_roots(dc, lo, hi)) breaks.push_back(x);
  }
  breaks.push_back(hi);
  return breaks;
}

}  // namespace

double evaluate(std::span<const double> c, double t) {
  double value = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) value = value * t + c[i];
  return value;
}

std::vector<double> derivative(std::span<const double> c) {
  std::vector<double> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(static_cast<double>(i) * c[i]);
  return out;
}

double root_bound(std::span<const double> c) {
  c = trimmed(c);
  if (c.size() < 2) return 0.0;
  const double lead = std::abs(c.back());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) worst = std::max(worst, std::abs(c[i]) / lead);
  return 1.0 + worst;
}

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> sign_change_roots(std::span<const double> c, double lo, double hi) {
  c = trimmed(c);
  std::vector<double> roots;
  if (c.size() < 2) return roots;
  const double bound = root_bound(c);
  lo = std::max(lo, -bound);
  hi = std::min(hi, bound);
  if (!(lo < hi)) return roots;
  // Breaks where the value is exactly zero (multiple roots) are skipped over;
  // a sign change across them is reported at the zero itself.
  const auto breaks = monotone_breaks(c, lo, hi);
  int previous_sign = 0;
  double previous = lo;
  std::optional<double> zero;
  for (double x : breaks) {
    const int s = sign(evaluate(c, x));
    if (s == 0) {
      if (x > lo && x < hi) zero = x;
      continue;
    }
    if (previous_sign != 0 && s != previous_sign) roots.push_back(zero ? *zero : bisect(c, previous, x));
    previous_sign = s;
    previous = x;
    zero.reset();
  }
  return roots;
}

std::optional<double> first_descending_root(std::span<const double> c, double lo, double hi) {
  c = trimmed(c);
  if (c.size() < 2) return std::nullopt;
  const double bound = root_bound(c);
  const double upper = std::min(hi, bound);
  if (!(lo < upper)) return std::nullopt;
  const auto breaks = monotone_breaks(c, lo, upper);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    if (evaluate(c, a) > 0.0 && evaluate(c, b) <= 0.0) {
      return bisect(c, a, b);
    }
  }
  return std::nullopt;
}

}  // namespace billiard::poly
