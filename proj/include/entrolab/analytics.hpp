#pragma once

#include <string>
#include <vector>

#include "entrolab/types.hpp"

namespace entrolab {

/// Bessel J of order 1 or 2 on |x| <= 100, absolute error well under 1e-12:
/// long-double ascending series for |x| <= 15, Hankel asymptotic expansion
/// beyond (the crossover keeps both branches an order below the target).
double besselJ(int order, double x);

namespace detail {
double besselJ0(double x);  // order-0 companion for the recurrence test only
}

struct GueCurveParams {
  int d = 2;  // onsite dimension
  int V = 8;  // total site count, even; D_A = D_B = d^{V/2}

  double dimA() const;
  void validate() const;
};

/// R(t) = J_1(2t)^4 / t^4 with the removable singularity patched to R(0) = 1.
double gueR(double t);

/// Ensemble-mean second Renyi entropy
/// S2(t) = -log( R(t) + (1 - R(t)) * 2 / d^{V/2} ).
double gueS2Bar(double t, const GueCurveParams& params);

/// Exact derivative of gueS2Bar:
///   8 (D-2) J1(2t)^3 J2(2t) / ( (D-2) J1(2t)^4 + 2 t^4 ),  D = d^{V/2}.
double gueS2Rate(double t, const GueCurveParams& params);

/// First positive zero of J_1(2t) by bracketed bisection to 1e-12;
/// half the first J_1 zero, about 1.915853.
double findTStar();

struct MaxSlope {
  double tPeak = 0.0;
  double maxRate = 0.0;
};

/// Numeric maximization of |gueS2Rate| on (0, 3]: coarse grid, then
/// golden-section refinement around the best grid point.
MaxSlope gueMaxSlope(const GueCurveParams& params);

/// CSV `t,R,s2bar,s2rate` over the grid; the rate column carries its t->0+
/// limit 0 when the grid includes t = 0.
std::string gueCurveCsv(const GueCurveParams& params, const std::vector<double>& times);

}  // namespace entrolab
