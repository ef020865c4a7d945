#pragma once

#include "asmtree/exact.hpp"
#include "asmtree/recurrence.hpp"

#include <vector>

namespace asmtree {

// A long sequence held as logarithms. log_abs[n] = log|f(n)| (-inf for
// zeros), sign[n] in {-1, 0, 1}, ratio[n] = f(n)/f(n-1) (NaN where undefined).
struct ScaledSequence {
  std::vector<long double> log_abs;
  std::vector<int> sign;
  std::vector<long double> ratio;

  int n_max() const { return static_cast<int>(log_abs.size()) - 1; }
};

// Runs the recurrence in floating point from exact initial terms,
// renormalizing the working window after every step so nothing overflows.
// Throws RefusedError if the leading polynomial vanishes.
ScaledSequence iterate_scaled(const PRecurrence& rec, const std::vector<Rational>& initial, int n_max);

struct LambdaEstimate {
  long double value = 0;
  long double error_bound = 0;
  long double raw_ratio = 0;  // f(n_max)/f(n_max - 1)
  int n_max = 0;
};

// Growth rate from f(n)/f(n-1), extrapolated to n = infinity by polynomial
// extrapolation in 1/n over n_max, n_max/2, n_max/4, ...
LambdaEstimate estimate_lambda(const ScaledSequence& data);
LambdaEstimate estimate_lambda(const PRecurrence& rec, const std::vector<Rational>& initial, int n_max);

// f(n) ~ c0 lambda^n n^theta (1 + c1/n + c2/n^2 + ...).
struct GrowthModel {
  long double lambda = 0;
  double theta = 0;
  std::vector<long double> corrections;  // c0, c1, c2

  struct ThetaResidual {
    double theta;
    long double spread;  // range of log f(n) - n log lambda - theta log n on the tail
  };
  std::vector<ThetaResidual> residuals;
  int n_max = 0;
};

// Integers and half-integers in [-4, 1].
std::vector<double> default_theta_candidates();

// Picks theta minimizing the spread of log f(n) - n log(lambda) - theta log n
// over n in [n_max/2, n_max], then fits c0, c1, c2 by least squares in
// powers of 1/n over n in [n_max/100, n_max]. Throws RefusedError when no
// candidate yields a settled constant.
GrowthModel fit_model(const ScaledSequence& data, long double lambda,
                      const std::vector<double>& theta_candidates = default_theta_candidates());

long double to_long_double(const Rational& v);

}  // namespace asmtree
