#include "asmtree/asymptotics.hpp"

#include "asmtree/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace asmtree {

namespace {

long double mpz_to_long_double(const BigInt& z) {
  if (z == 0) return 0.0L;
  long hi_exp = 0;
  const double hi = mpz_get_d_2exp(&hi_exp, z.get_mpz_t());
  // Second word recovers the bits a double drops.
  BigInt rest = z;
  BigInt hi_int;
  mpz_set_d(hi_int.get_mpz_t(), std::ldexp(hi, 53));
  if (hi_exp >= 53) {
    mpz_mul_2exp(hi_int.get_mpz_t(), hi_int.get_mpz_t(), static_cast<mp_bitcnt_t>(hi_exp - 53));
  } else {
    mpz_tdiv_q_2exp(hi_int.get_mpz_t(), hi_int.get_mpz_t(), static_cast<mp_bitcnt_t>(53 - hi_exp));
  }
  rest -= hi_int;
  long lo_exp = 0;
  const double lo = rest == 0 ? 0.0 : mpz_get_d_2exp(&lo_exp, rest.get_mpz_t());
  return std::ldexp(static_cast<long double>(hi), static_cast<int>(hi_exp)) +
         std::ldexp(static_cast<long double>(lo), static_cast<int>(lo_exp));
}

long double log_abs(const BigInt& z) {
  long e = 0;
  const double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(d))) + static_cast<long double>(e) * std::log(2.0L);
}

long double log_abs(const Rational& v) {
  if (v == 0) return -std::numeric_limits<long double>::infinity();
  return log_abs(v.get_num()) - log_abs(v.get_den());
}

int sign_of(const Rational& v) { return sgn(v); }

struct FloatPoly {
  std::vector<long double> c;
  long double operator()(long double m) const {
    long double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + *it;
    return acc;
  }
};

// Value at h = 0 of the interpolating polynomial through (h[i], y[i]).
long double extrapolate_to_zero(std::vector<long double> h, std::vector<long double> y) {
  const std::size_t k = y.size();
  for (std::size_t m = 1; m < k; ++m) {
    for (std::size_t i = 0; i + m < k; ++i) {
      y[i] = (h[i + m] * y[i] - h[i] * y[i + 1]) / (h[i + m] - h[i]);
    }
  }
  return y[0];
}

}  // namespace

long double to_long_double(const Rational& v) { return mpz_to_long_double(v.get_num()) / mpz_to_long_double(v.get_den()); }

ScaledSequence iterate_scaled(const PRecurrence& rec, const std::vector<Rational>& initial, int n_max) {
  rec.validate();
  const int L = rec.order;
  if (static_cast<int>(initial.size()) < L + rec.offset) {
    throw InputError("iteration needs at least order + offset initial terms");
  }
  if (n_max < 0) throw InputError("n_max must be non-negative");
  const long double nan = std::numeric_limits<long double>::quiet_NaN();
  ScaledSequence out;
  const int known = std::min(static_cast<int>(initial.size()), n_max + 1);
  for (int n = 0; n < known; ++n) {
    const auto& v = initial[static_cast<std::size_t>(n)];
    out.log_abs.push_back(log_abs(v));
    out.sign.push_back(sign_of(v));
    if (n > 0 && initial[static_cast<std::size_t>(n - 1)] != 0) {
      out.ratio.push_back(to_long_double(v / initial[static_cast<std::size_t>(n - 1)]));
    } else {
      out.ratio.push_back(nan);
    }
  }
  if (known == n_max + 1) return out;

  std::vector<FloatPoly> polys;
  for (const auto& p : rec.polys) {
    FloatPoly fp;
    for (const auto& c : p.coeffs) fp.c.push_back(to_long_double(c));
    polys.push_back(std::move(fp));
  }

  // window[i] = f(t - L + i) / exp(scale)
  std::vector<long double> window(static_cast<std::size_t>(L));
  long double scale = -std::numeric_limits<long double>::infinity();
  for (int i = 0; i < L; ++i) scale = std::max(scale, out.log_abs[static_cast<std::size_t>(known - L + i)]);
  if (!std::isfinite(scale)) scale = 0;
  for (int i = 0; i < L; ++i) {
    const auto idx = static_cast<std::size_t>(known - L + i);
    window[static_cast<std::size_t>(i)] =
        out.sign[idx] == 0 ? 0.0L : static_cast<long double>(out.sign[idx]) * std::exp(out.log_abs[idx] - scale);
  }

  for (int t = known; t <= n_max; ++t) {
    const int n = t - L;
    const long double lead = polys[static_cast<std::size_t>(L)](static_cast<long double>(t));
    if (lead == 0 && rec.polys[static_cast<std::size_t>(L)](t) == 0) {
      throw RefusedError("leading polynomial vanishes at index " + std::to_string(t));
    }
    long double acc = 0;
    for (int i = 0; i < L; ++i) {
      acc += polys[static_cast<std::size_t>(i)](static_cast<long double>(n + i)) * window[static_cast<std::size_t>(i)];
    }
    const long double next = -acc / lead;
    const long double last = window.back();
    out.ratio.push_back(last != 0 ? next / last : nan);
    if (next == 0) {
      out.log_abs.push_back(-std::numeric_limits<long double>::infinity());
      out.sign.push_back(0);
    } else {
      out.log_abs.push_back(scale + std::log(std::fabs(next)));
      out.sign.push_back(next > 0 ? 1 : -1);
    }
    std::rotate(window.begin(), window.begin() + 1, window.end());
    window.back() = next;
    if (next != 0) {
      const long double m = std::fabs(next);
      for (auto& w : window) w /= m;
      scale += std::log(m);
    }
  }
  return out;
}

LambdaEstimate estimate_lambda(const ScaledSequence& data) {
  LambdaEstimate est;
  est.n_max = data.n_max();
  std::vector<long double> h;
  std::vector<long double> y;
  for (int j = 0; j < 6; ++j) {
    const int n = est.n_max >> j;
    if (n < 16) break;
    const long double r = data.ratio[static_cast<std::size_t>(n)];
    if (!std::isfinite(r)) break;
    h.push_back(1.0L / n);
    y.push_back(r);
  }
  if (y.size() < 3) throw RefusedError("estimate_lambda needs n_max >= 64 with defined ratios");
  est.raw_ratio = y.front();
  const std::size_t m = y.size();
  auto slice = [&](std::size_t from, std::size_t count) {
    return extrapolate_to_zero({h.begin() + static_cast<long>(from), h.begin() + static_cast<long>(from + count)},
                               {y.begin() + static_cast<long>(from), y.begin() + static_cast<long>(from + count)});
  };
  est.value = slice(0, m - 1);
  const long double shifted = slice(1, m - 1);
  const long double lower = slice(0, m - 2);
  est.error_bound = std::fabs(est.value - shifted) + std::fabs(est.value - lower) +
                    64 * std::numeric_limits<long double>::epsilon() * std::fabs(est.value);
  if (!std::isfinite(est.value)) throw RefusedError("growth-rate estimate overflowed");
  return est;
}

LambdaEstimate estimate_lambda(const PRecurrence& rec, const std::vector<Rational>& initial, int n_max) {
  return estimate_lambda(iterate_scaled(rec, initial, n_max));
}

std::vector<double> default_theta_candidates() {
  std::vector<double> out;
  for (int k = -8; k <= 2; ++k) out.push_back(k / 2.0);
  return out;
}

GrowthModel fit_model(const ScaledSequence& data, long double lambda, const std::vector<double>& theta_candidates) {
  if (!(lambda > 0)) throw InputError("lambda must be positive");
  if (theta_candidates.empty()) throw InputError("no theta candidates");
  const int n_max = data.n_max();
  if (n_max < 200) throw RefusedError("fit_model needs data up to n >= 200");
  const long double log_lambda = std::log(lambda);
  auto g = [&](int n, double theta) {
    return data.log_abs[static_cast<std::size_t>(n)] - n * log_lambda - theta * std::log(static_cast<long double>(n));
  };

  GrowthModel model;
  model.lambda = lambda;
  model.n_max = n_max;
  const int tail_lo = n_max / 2;
  const int tail_step = std::max(1, (n_max - tail_lo) / 2000);
  long double best = std::numeric_limits<long double>::infinity();
  for (double theta : theta_candidates) {
    long double lo = std::numeric_limits<long double>::infinity();
    long double hi = -lo;
    for (int n = tail_lo; n <= n_max; n += tail_step) {
      if (data.sign[static_cast<std::size_t>(n)] == 0) continue;
      const long double v = g(n, theta);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const long double spread = hi - lo;
    model.residuals.push_back({theta, spread});
    if (spread < best) {
      best = spread;
      model.theta = theta;
    }
  }
  if (!(best < 0.05L)) {
    throw RefusedError("no candidate theta gives a convergent constant (best spread " +
                       std::to_string(static_cast<double>(best)) + ")");
  }

  // h(n) = exp(g(n)) = b0 + b1 t + b2 t^2 + ..., t = n_lo / n.
  const int n_lo = std::max(10, n_max / 100);
  const int step = std::max(1, (n_max - n_lo) / 4000);
  constexpr int kTerms = 7;
  std::vector<int> ns;
  for (int n = n_lo; n <= n_max; n += step) {
    if (data.sign[static_cast<std::size_t>(n)] != 0) ns.push_back(n);
  }
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  Mat a(static_cast<Eigen::Index>(ns.size()), kTerms);
  Vec b(static_cast<Eigen::Index>(ns.size()));
  for (std::size_t r = 0; r < ns.size(); ++r) {
    const long double t = static_cast<long double>(n_lo) / ns[r];
    long double p = 1;
    for (int k = 0; k < kTerms; ++k) {
      a(static_cast<Eigen::Index>(r), k) = p;
      p *= t;
    }
    b(static_cast<Eigen::Index>(r)) = std::exp(g(ns[r], model.theta));
  }
  const Vec beta = a.colPivHouseholderQr().solve(b);
  const long double c0 = beta(0);
  model.corrections = {c0, beta(1) * n_lo / c0, beta(2) * n_lo * n_lo / c0};
  return model;
}

}  // namespace asmtree
