#include "asmtree/series.hpp"

#include "asmtree/errors.hpp"

#include <numeric>
#include <stdexcept>

namespace asmtree {

TruncatedSeries::TruncatedSeries(std::vector<int> caps) : caps_(std::move(caps)) {
  if (caps_.empty()) throw InputError("a series needs at least one variable");
  std::size_t total = 1;
  strides_.assign(caps_.size(), 1);
  for (std::size_t i = caps_.size(); i-- > 0;) {
    if (caps_[i] < 0) throw InputError("truncation degrees must be non-negative");
    strides_[i] = total;
    total *= static_cast<std::size_t>(caps_[i]) + 1;
  }
  coeffs_.assign(total, Rational(0));
}

TruncatedSeries TruncatedSeries::constant(std::vector<int> caps, const Rational& c) {
  TruncatedSeries s(std::move(caps));
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::variable(std::vector<int> caps, int var) {
  TruncatedSeries s(std::move(caps));
  if (var < 0 || var >= s.nvars()) throw InputError("variable index out of range");
  if (s.caps_[static_cast<std::size_t>(var)] >= 1) s.coeffs_[s.strides_[static_cast<std::size_t>(var)]] = 1;
  return s;
}

bool TruncatedSeries::in_window(std::span<const int> e) const {
  if (e.size() != caps_.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] > caps_[i]) return false;
  }
  return true;
}

std::size_t TruncatedSeries::index_of(std::span<const int> e) const {
  if (!in_window(e)) throw InputError("exponent outside the series window");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < e.size(); ++i) idx += strides_[i] * static_cast<std::size_t>(e[i]);
  return idx;
}

Exponent TruncatedSeries::exponent_of(std::size_t index) const {
  Exponent e(caps_.size());
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    e[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return e;
}

const Rational& TruncatedSeries::coeff(std::span<const int> e) const { return coeffs_[index_of(e)]; }

void TruncatedSeries::set_coeff(std::span<const int> e, const Rational& c) { coeffs_[index_of(e)] = c; }

void TruncatedSeries::require_same_window(const TruncatedSeries& other) const {
  if (caps_ != other.caps_) throw InputError("series windows differ");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  require_same_window(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  require_same_window(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }

namespace {

struct Term {
  Exponent exp;
  std::size_t index;
  int degree;
  Rational coeff;
};

std::vector<Term> nonzero_terms(const TruncatedSeries& s) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == 0) continue;
    Exponent e = s.exponent_of(i);
    int d = std::accumulate(e.begin(), e.end(), 0);
    out.push_back({std::move(e), i, d, s.at(i)});
  }
  return out;
}

bool dominates(const Exponent& a, const Exponent& m) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (m[i] > a[i]) return false;
  }
  return true;
}

}  // namespace

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.caps() != b.caps()) throw InputError("series windows differ");
  TruncatedSeries out(a.caps());
  const auto ta = nonzero_terms(a);
  const auto tb = nonzero_terms(b);
  const auto& caps = a.caps();
  Exponent sum(caps.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      bool fits = true;
      for (std::size_t i = 0; i < caps.size() && fits; ++i) {
        sum[i] = x.exp[i] + y.exp[i];
        fits = sum[i] <= caps[i];
      }
      if (!fits) continue;
      // Mixed-radix indices add when no digit overflows.
      out.at(x.index + y.index) += x.coeff * y.coeff;
    }
  }
  return out;
}

TruncatedSeries sqrt1(const TruncatedSeries& f) {
  if (f.at(0) != 1) throw InputError("sqrt1 needs a series with constant term 1");
  TruncatedSeries g(f.caps());
  g.at(0) = 1;
  auto terms = nonzero_terms(f);
  std::erase_if(terms, [](const Term& t) { return t.degree == 0; });
  Rational acc;
  Rational weight;
  for (std::size_t idx = 1; idx < g.size(); ++idx) {
    const Exponent a = g.exponent_of(idx);
    const int deg = std::accumulate(a.begin(), a.end(), 0);
    acc = 0;
    for (const auto& t : terms) {
      if (t.degree > deg || !dominates(a, t.exp)) continue;
      const Rational& prev = g.at(idx - t.index);
      if (prev == 0) continue;
      weight = t.coeff * (3 * t.degree - 2 * deg);
      acc += weight * prev;
    }
    acc /= 2 * deg;
    g.at(idx) = acc;
  }
  return g;
}

Series1 sqrt1(const Series1& f) {
  if (f.coeffs.empty() || f[0] != 1) throw InputError("sqrt1 needs a series with constant term 1");
  TruncatedSeries lifted({f.cap()});
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) lifted.at(i) = f[i];
  TruncatedSeries root = sqrt1(lifted);
  Series1 out(f.cap());
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out[i] = root.at(i);
  return out;
}

TruncatedSeries hgraph_radicand(const Graph& base, std::span<const int> phi, std::vector<int> caps) {
  const int N = base.order();
  if (N == 0) throw InputError("template graph H must have at least one vertex");
  if (static_cast<int>(phi.size()) != N) throw InputError("phi must have one entry per template vertex");
  if (static_cast<int>(caps.size()) != N) throw InputError("caps must have one entry per template vertex");
  for (int p : phi) {
    if (p != 0 && p != 1) throw InputError("phi entries must be 0 or 1");
  }
  if (!base.is_connected()) throw RefusedError("template graph H must be connected");
  TruncatedSeries f = TruncatedSeries::constant(caps, 1);
  Exponent e(static_cast<std::size_t>(N), 0);
  auto add = [&](const Rational& c) {
    if (f.in_window(e)) f.at(f.index_of(e)) += c;
  };
  for (int i = 0; i < N; ++i) {
    e[i] = 1;
    add(-2);
    e[i] = 2;
    if (phi[i] == 0) add(1);
    e[i] = 0;
    for (int j = i + 1; j < N; ++j) {
      if (base.adjacent(i, j)) continue;
      e[i] = 1;
      e[j] = 1;
      add(2);
      e[i] = 0;
      e[j] = 0;
    }
  }
  return f;
}

TruncatedSeries hgraph_egf(const Graph& base, std::span<const int> phi, std::vector<int> caps) {
  TruncatedSeries root = sqrt1(hgraph_radicand(base, phi, caps));
  TruncatedSeries one = TruncatedSeries::constant(std::move(caps), 1);
  return one - root;
}

BigInt count_from_egf(const TruncatedSeries& egf, std::span<const int> n) {
  Rational v = egf.coeff(n);
  for (int k : n) v *= Rational(factorial(static_cast<unsigned long>(k)));
  if (!is_integer(v)) {
    throw std::domain_error("EGF coefficient times n! is not an integer: " + to_string(v));
  }
  return v.get_num();
}

Series1 b_egf(int N, int M, int J, int cap) {
  if (N < 1) throw InputError("b_egf needs N >= 1");
  if (M < 0 || M > N * (N - 1) / 2) throw InputError("b_egf needs 0 <= M <= C(N,2)");
  if (J < 0 || J > N) throw InputError("b_egf needs 0 <= J <= N");
  if (cap < 0) throw InputError("b_egf needs cap >= 0");
  Series1 f(cap);
  f[0] = 1;
  if (cap >= 1) f[1] = -2 * N;
  if (cap >= 2) f[2] = N * (N - 1) - 2 * M + J;
  Series1 root = sqrt1(f);
  Series1 out(cap);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out[i] = (i == 0 ? Rational(1) : Rational(0)) - root[i];
  return out;
}

Series1 diagonal(const TruncatedSeries& s) {
  const int cap = s.caps().front();
  for (int c : s.caps()) {
    if (c != cap) throw InputError("diagonal needs equal truncation degrees in every variable");
  }
  Series1 out(cap);
  Exponent e(s.caps().size());
  for (int n = 0; n <= cap; ++n) {
    std::fill(e.begin(), e.end(), n);
    out[static_cast<std::size_t>(n)] = s.coeff(e);
  }
  return out;
}

Rational diag_formula_easyex(int n) {
  if (n < 1) throw InputError("diag_formula_easyex needs n >= 1");
  const auto un = static_cast<unsigned long>(n);
  Rational total = 0;
  for (unsigned long m = (3 * un + 1) / 2; m <= 2 * un; ++m) {
    BigInt weight = binomial(m, un) * binomial(m - un, 2 * m - 3 * un);
    mpz_mul_2exp(weight.get_mpz_t(), weight.get_mpz_t(), 2 * (m - un));
    total += half_binomial(m) * Rational(weight);
  }
  return -total;
}

}  // namespace asmtree
