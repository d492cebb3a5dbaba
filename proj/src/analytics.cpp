#include "entrolab/analytics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entrolab {

namespace {

std::string formatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Ascending series sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!) in long double.
// Cancellation limits accuracy to ~(max term)*2^-64; at x = 15 the largest
// term is ~2e4, keeping the error near 1e-15.
double seriesJ(int n, double x) {
  const long double half = static_cast<long double>(x) / 2.0L;
  long double term = 1.0L;
  for (int j = 1; j <= n; ++j) term *= half / j;
  long double sum = term;
  const long double h2 = half * half;
  for (int m = 1; m < 400; ++m) {
    term *= -h2 / (static_cast<long double>(m) * (m + n));
    sum += term;
    if (std::abs(static_cast<double>(term)) < 1e-25 * std::max(1.0, std::abs(static_cast<double>(sum))) &&
        m > x / 2)
      break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion, x > 0:
//   J_n(x) = sqrt(2/(pi x)) [ P cos(chi) - Q sin(chi) ],  chi = x - (2n+1) pi/4,
// with P, Q summed to their smallest term.
double asymptoticJ(int n, double x) {
  const long double mu = 4.0L * n * n;
  const long double xi = static_cast<long double>(x);
  long double p = 1.0L, q = 0.0L;
  long double t = 1.0L;  // t_m = prod_{j<=m} (mu - (2j-1)^2) / (m * 8 x)
  long double prevMag = 1e30L;
  for (int m = 1; m < 60; ++m) {
    t *= (mu - (2.0L * m - 1.0L) * (2.0L * m - 1.0L)) / (8.0L * m * xi);
    const long double mag = std::abs(static_cast<double>(t));
    if (mag > prevMag) break;  // divergent tail reached; stop at smallest term
    prevMag = mag;
    // signs: P = t0 - t2 + t4 - ..., Q = t1 - t3 + t5 - ...
    const int k = m / 2;
    const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    if (m % 2 == 1)
      q += sgn * t;
    else
      p += sgn * t;
    if (mag < 1e-19L) break;
  }
  constexpr long double kPi = 3.141592653589793238462643383279502884L;
  const long double chi = xi - (2.0L * n + 1.0L) * kPi / 4.0L;
  const long double amp = std::sqrt(2.0L / (kPi * xi));
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

double besselJAnyOrder(int n, double x) {
  if (std::abs(x) > 100.0)
    throw std::invalid_argument("besselJ: |x| <= 100 is the configured domain");
  const double ax = std::abs(x);
  double value = (ax <= 15.0) ? seriesJ(n, ax) : asymptoticJ(n, ax);
  if (x < 0 && n % 2 == 1) value = -value;  // J_n(-x) = (-1)^n J_n(x)
  return value;
}

}  // namespace

double besselJ(int order, double x) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("besselJ: only orders 1 and 2 are provided");
  return besselJAnyOrder(order, x);
}

namespace detail {
double besselJ0(double x) { return besselJAnyOrder(0, x); }
}  // namespace detail

double GueCurveParams::dimA() const { return std::pow(static_cast<double>(d), V / 2.0); }

void GueCurveParams::validate() const {
  if (d < 2) throw std::invalid_argument("GueCurveParams: d must be >= 2");
  if (V < 2 || V % 2 != 0) throw std::invalid_argument("GueCurveParams: V must be even and >= 2");
}

double gueR(double t) {
  if (t < 0) throw std::invalid_argument("gueR: t must be >= 0");
  if (t == 0.0) return 1.0;
  double q;
  if (t < 1e-4) {
    // J1(2t)/t = 1 - t^2/2 + t^4/12 - ...
    q = 1.0 - t * t / 2.0 + t * t * t * t / 12.0;
  } else {
    q = besselJ(1, 2.0 * t) / t;
  }
  return q * q * q * q;
}

double gueS2Bar(double t, const GueCurveParams& params) {
  params.validate();
  const double a = 2.0 / params.dimA();
  const double r = gueR(t);
  return -std::log(r * (1.0 - a) + a);
}

double gueS2Rate(double t, const GueCurveParams& params) {
  params.validate();
  if (!(t > 0)) throw std::invalid_argument("gueS2Rate: t must be > 0");
  const double dh = params.dimA();
  const double j1 = besselJ(1, 2.0 * t);
  const double j2 = besselJ(2, 2.0 * t);
  const double j1sq = j1 * j1;
  return 8.0 * (dh - 2.0) * j1sq * j1 * j2 / ((dh - 2.0) * j1sq * j1sq + 2.0 * t * t * t * t);
}

double findTStar() {
  // First sign change of J1(2t) on a coarse scan, then bisection.
  double lo = 0.05, hi = 0.0;
  double fLo = besselJ(1, 2.0 * lo);
  for (double t = 0.10; t <= 3.0; t += 0.05) {
    const double f = besselJ(1, 2.0 * t);
    if (fLo > 0.0 && f <= 0.0) {
      hi = t;
      break;
    }
    lo = t;
    fLo = f;
  }
  if (hi == 0.0) throw std::runtime_error("findTStar: no sign change located");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (besselJ(1, 2.0 * mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

MaxSlope gueMaxSlope(const GueCurveParams& params) {
  params.validate();
  const int n = 20001;
  const double tLo = 1.5e-4, tHi = 3.0;
  auto magnitude = [&](double t) { return std::abs(gueS2Rate(t, params)); };

  int best = 0;
  double bestVal = -1.0;
  for (int i = 0; i < n; ++i) {
    const double t = tLo + (tHi - tLo) * i / (n - 1);
    const double v = magnitude(t);
    if (v > bestVal) {
      bestVal = v;
      best = i;
    }
  }
  const double step = (tHi - tLo) / (n - 1);
  double a = std::max(tLo, tLo + (best - 2) * step);
  double b = std::min(tHi, tLo + (best + 2) * step);

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > 1e-12) {
    const double c1 = b - ratio * (b - a);
    const double c2 = a + ratio * (b - a);
    if (magnitude(c1) > magnitude(c2))
      b = c2;
    else
      a = c1;
  }
  MaxSlope out;
  out.tPeak = 0.5 * (a + b);
  out.maxRate = magnitude(out.tPeak);
  return out;
}

std::string gueCurveCsv(const GueCurveParams& params, const std::vector<double>& times) {
  params.validate();
  std::ostringstream os;
  os << "t,R,s2bar,s2rate\n";
  for (double t : times) {
    const double rate = (t > 0) ? gueS2Rate(t, params) : 0.0;
    os << formatDouble(t) << ',' << formatDouble(gueR(t)) << ','
       << formatDouble(gueS2Bar(t, params)) << ',' << formatDouble(rate) << '\n';
  }
  return os.str();
}

}  // namespace entrolab
