#include "zeno/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zeno {

namespace {

void check_range(int n, double x) {
  if (std::abs(n) > kBesselMaxOrder || !(std::abs(x) <= kBesselMaxArgument)) {
    std::ostringstream msg;
    msg << "bessel_j: (n=" << n << ", x=" << x << ") outside |n| <= " << kBesselMaxOrder
        << ", |x| <= " << kBesselMaxArgument;
    throw std::range_error(msg.str());
  }
}

// Ascending series, used for |x| <= 1 where it converges in a handful of terms.
double series(int n, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::exp(n * std::log(half) - std::lgamma(n + 1.0));
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's algorithm: recur downward from an order well past max(nmax, x),
// normalising with J_0 + 2 sum_k J_{2k} = 1. x > 0.
std::vector<double> miller(int nmax, double x) {
  const double scale = std::max(static_cast<double>(nmax), x);
  int start = static_cast<int>(scale + 30.0 + 30.0 * std::cbrt(scale));
  start += start % 2;

  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  constexpr double kBig = 1e250;
  const double two_over_x = 2.0 / x;
  double above = 0.0;  // J_{k+1}
  double current = 1e-300;  // J_k
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double below = k * two_over_x * current - above;  // J_{k-1}
    above = current;
    current = below;
    if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = current;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
    if (std::abs(current) > kBig) {
      above /= kBig;
      current /= kBig;
      norm /= kBig;
      for (int m = k - 1; m <= nmax; ++m) out[static_cast<std::size_t>(m)] /= kBig;
    }
  }
  norm += current;
  for (auto& v : out) v /= norm;
  return out;
}

}  // namespace

std::vector<double> bessel_j_table(int nmax, double x) {
  if (nmax < 0) throw std::range_error("bessel_j_table: nmax must be non-negative");
  check_range(nmax, x);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (ax <= 1.0) {
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = series(n, ax);
  } else {
    out = miller(nmax, ax);
  }
  if (x < 0.0)
    for (int n = 1; n <= nmax; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
  return out;
}

double bessel_j(int n, double x) {
  check_range(n, x);
  const int order = std::abs(n);
  double value;
  const double ax = std::abs(x);
  if (ax == 0.0) {
    value = (order == 0) ? 1.0 : 0.0;
  } else if (ax <= 1.0) {
    value = series(order, ax);
  } else {
    value = miller(order, ax)[static_cast<std::size_t>(order)];
  }
  // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
  int sign_flips = 0;
  if (n < 0) sign_flips += order;
  if (x < 0.0) sign_flips += order;
  return (sign_flips % 2 == 0) ? value : -value;
}

}  // namespace zeno
