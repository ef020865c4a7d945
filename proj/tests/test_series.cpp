#include <doctest.h>

#include <random>
#include <stdexcept>

#include "asmtree/enumerator.hpp"
#include "asmtree/errors.hpp"
#include "asmtree/series.hpp"
#include "reference_data.hpp"

using namespace asmtree;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const Rational& c2(const TruncatedSeries& s, int a, int b) {
  std::vector<int> e{a, b};
  return s.coeff(e);
}

// Square root by the graded convolution g_a = (f_a - sum g_b g_{a-b}) / 2,
// visiting exponents by total degree. Independent of the Euler-operator
// recurrence used by the library.
TruncatedSeries sqrt_graded(const TruncatedSeries& f) {
  TruncatedSeries g(f.caps());
  const std::size_t n = f.size();
  int max_total = 0;
  for (int c : f.caps()) max_total += c;
  g.at(0) = 1;
  for (int total = 1; total <= max_total; ++total) {
    for (std::size_t i = 0; i < n; ++i) {
      Exponent a = f.exponent_of(i);
      int deg = 0;
      for (int x : a) deg += x;
      if (deg != total) continue;
      Rational acc = f.at(i);
      for (std::size_t j = 1; j < n; ++j) {
        Exponent b = f.exponent_of(j);
        Exponent rest(a.size());
        bool inside = true;
        for (std::size_t k = 0; k < a.size(); ++k) {
          rest[k] = a[k] - b[k];
          if (rest[k] < 0) inside = false;
        }
        if (!inside || g.index_of(rest) == 0) continue;
        acc -= g.at(j) * g.coeff(rest);
      }
      g.at(i) = acc / 2;
    }
  }
  return g;
}

TruncatedSeries random_series(std::vector<int> caps, std::mt19937_64& rng) {
  TruncatedSeries f(std::move(caps));
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::bernoulli_distribution keep(0.6);
  f.at(0) = 1;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (keep(rng)) {
      Rational c(num(rng), den(rng));
      c.canonicalize();
      f.at(i) = c;
    }
  return f;
}

}  // namespace

TEST_CASE("mul") {
  TruncatedSeries one = TruncatedSeries::constant({3}, 1);
  TruncatedSeries x = TruncatedSeries::variable({3}, 0);
  TruncatedSeries p = mul(one + x, one - x);
  std::vector<int> e0{0}, e1{1}, e2{2}, e3{3};
  CHECK(p.coeff(e0) == 1);
  CHECK(p.coeff(e1) == 0);
  CHECK(p.coeff(e2) == -1);
  CHECK(p.coeff(e3) == 0);

  TruncatedSeries xs = TruncatedSeries::variable({2, 2}, 0);
  TruncatedSeries ys = TruncatedSeries::variable({2, 2}, 1);
  TruncatedSeries sq = mul(xs + ys, xs + ys);
  CHECK(c2(sq, 2, 0) == 1);
  CHECK(c2(sq, 1, 1) == 2);
  CHECK(c2(sq, 0, 2) == 1);
  CHECK(c2(sq, 1, 0) == 0);
  CHECK(c2(sq, 2, 2) == 0);

  CHECK_THROWS_AS(mul(xs, x), InputError);
  std::vector<int> outside{3, 0};
  CHECK_THROWS_AS(xs.coeff(outside), InputError);
}

TEST_CASE("central binomials as a diagonal") {
  // 1/(1 - s - t) has coefficient C(m+k, m) at s^m t^k
  const int cap = 10;
  TruncatedSeries s({cap, cap});
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; b <= cap; ++b) {
      std::vector<int> e{a, b};
      s.set_coeff(e, Rational(binomial(static_cast<unsigned long>(a + b), static_cast<unsigned long>(a))));
    }
  // the same series by repeated multiplication: sum (s+t)^m
  TruncatedSeries sum = TruncatedSeries::constant({cap, cap}, 1);
  TruncatedSeries lin = TruncatedSeries::variable({cap, cap}, 0) + TruncatedSeries::variable({cap, cap}, 1);
  TruncatedSeries power = TruncatedSeries::constant({cap, cap}, 1);
  for (int m = 1; m <= 2 * cap; ++m) {
    power = mul(power, lin);
    sum += power;
  }
  CHECK(sum == s);
  Series1 d = diagonal(sum);
  for (int n = 0; n <= cap; ++n)
    CHECK(d[static_cast<std::size_t>(n)] == Rational(binomial(static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n))));
}

TEST_CASE("sqrt1 examples") {
  Series1 f(8);
  f[0] = 1;
  f[1] = -2;
  Series1 g = sqrt1(f);
  CHECK(g[0] == 1);
  CHECK(-g[1] == 1);
  CHECK(-g[2] == q("1/2"));
  CHECK(-g[3] == q("1/2"));
  CHECK(-g[4] == q("5/8"));

  Series1 one(5);
  one[0] = 1;
  CHECK(sqrt1(one) == one);

  Series1 sq(5);
  sq[0] = 1;
  sq[1] = -2;
  sq[2] = 1;
  Series1 root = sqrt1(sq);
  CHECK(root[0] == 1);
  CHECK(root[1] == -1);
  for (int i = 2; i <= 5; ++i) CHECK(root[static_cast<std::size_t>(i)] == 0);

  Series1 bad(3);
  bad[0] = 2;
  CHECK_THROWS_AS(sqrt1(bad), InputError);
}

TEST_CASE("sqrt1 squares back and agrees with the graded convolution") {
  std::mt19937_64 rng(99);
  const std::vector<std::vector<int>> shapes = {{6}, {3, 3}, {2, 3}, {2, 2, 2}, {4, 1}};
  for (int trial = 0; trial < 40; ++trial) {
    const auto& caps = shapes[static_cast<std::size_t>(trial) % shapes.size()];
    TruncatedSeries f = random_series(caps, rng);
    TruncatedSeries g = sqrt1(f);
    CHECK(mul(g, g) == f);
    CHECK(g == sqrt_graded(f));
  }
}

TEST_CASE("hgraph_egf for the bipartite graphs") {
  Graph k2 = from_edge_list(2, {{0, 1}});
  std::vector<int> phi{0, 0};
  TruncatedSeries a = hgraph_egf(k2, phi, {8, 8});
  int nonzero_low = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponent e = a.exponent_of(i);
    if (e[0] + e[1] <= 9 && a.at(i) != 0) ++nonzero_low;
  }
  for (const auto& m : reference::bipartite_expansion()) {
    CAPTURE(m.x);
    CAPTURE(m.y);
    CHECK(c2(a, m.x, m.y) == q(m.coeff));
  }
  CHECK(nonzero_low == static_cast<int>(reference::bipartite_expansion().size()));

  std::vector<int> n22{2, 2}, n33{3, 3}, n10{1, 0}, n01{0, 1};
  CHECK(count_from_egf(a, n22) == 10);
  CHECK(count_from_egf(a, n33) == 450);
  CHECK(count_from_egf(a, n10) == 1);
  CHECK(count_from_egf(a, n01) == 1);
}

TEST_CASE("hgraph radicand and refusals") {
  Graph k2 = from_edge_list(2, {{0, 1}});
  std::vector<int> phi{0, 1};
  TruncatedSeries r = hgraph_radicand(k2, phi, {2, 2});
  CHECK(c2(r, 0, 0) == 1);
  CHECK(c2(r, 1, 0) == -2);
  CHECK(c2(r, 0, 1) == -2);
  CHECK(c2(r, 2, 0) == 1);
  CHECK(c2(r, 0, 2) == 0);
  CHECK(c2(r, 1, 1) == 0);

  Graph two = from_edge_list(2, {});
  CHECK_THROWS_AS(hgraph_egf(two, phi, {2, 2}), RefusedError);
  std::vector<int> bad{0, 3};
  CHECK_THROWS_AS(hgraph_egf(k2, bad, {2, 2}), InputError);
}

TEST_CASE("count_from_egf rejects non-integers") {
  TruncatedSeries s({2});
  std::vector<int> e{1};
  s.set_coeff(e, q("1/2"));
  CHECK_THROWS_AS(count_from_egf(s, e), std::domain_error);
}

TEST_CASE("egf counts match subset recursion on small h-graphs") {
  Graph k2 = from_edge_list(2, {{0, 1}});
  Graph single = from_edge_list(1, {});
  for (int p0 = 0; p0 <= 1; ++p0) {
    std::vector<int> phi{p0};
    TruncatedSeries a = hgraph_egf(single, phi, {7});
    for (int n = 1; n <= 7; ++n) {
      std::vector<int> m{n};
      Graph g = build_h_graph(HSpec{single, phi, m});
      if (!g.is_connected()) {
        CHECK(count_from_egf(a, m) == 0);
        continue;
      }
      CHECK(count_from_egf(a, m) == count_edge_rule(g));
    }
  }
  for (int p0 = 0; p0 <= 1; ++p0)
    for (int p1 = 0; p1 <= 1; ++p1) {
      std::vector<int> phi{p0, p1};
      TruncatedSeries a = hgraph_egf(k2, phi, {6, 6});
      for (int x = 0; x <= 6; ++x)
        for (int y = 0; x + y <= 6; ++y) {
          if (x + y == 0) continue;
          std::vector<int> m{x, y};
          Graph g = build_h_graph(HSpec{k2, phi, m});
          BigInt expect = g.is_connected() ? count_edge_rule(g) : BigInt(0);
          CHECK(count_from_egf(a, m) == expect);
        }
    }
}

TEST_CASE("b_egf") {
  Series1 complete = b_egf(1, 0, 0, 6);
  Series1 x2(6);
  x2[0] = 1;
  x2[1] = -2;
  Series1 root = sqrt1(x2);
  for (int n = 1; n <= 6; ++n) CHECK(complete[static_cast<std::size_t>(n)] == -root[static_cast<std::size_t>(n)]);
  CHECK(complete[0] == 0);

  Series1 point = b_egf(1, 0, 1, 6);
  CHECK(point[1] == 1);
  for (int n = 2; n <= 6; ++n) CHECK(point[static_cast<std::size_t>(n)] == 0);

  // n! [x^n] equals sum_k C(n,k) a(K_{k,n-k}) over labeled bipartite splits
  Graph k2 = from_edge_list(2, {{0, 1}});
  std::vector<int> phi{0, 0};
  TruncatedSeries a = hgraph_egf(k2, phi, {8, 8});
  Series1 b = b_egf(2, 1, 2, 8);
  for (int n = 1; n <= 8; ++n) {
    BigInt sum = 0;
    for (int k = 0; k <= n; ++k) {
      std::vector<int> m{k, n - k};
      sum += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) * count_from_egf(a, m);
    }
    CHECK(b[static_cast<std::size_t>(n)] * Rational(factorial(static_cast<unsigned long>(n))) == Rational(sum));
  }
}

TEST_CASE("diagonals of the examples") {
  Graph k2 = from_edge_list(2, {{0, 1}});
  std::vector<int> easy_phi{0, 1};
  Series1 easy = diagonal(hgraph_egf(k2, easy_phi, {12, 12}));
  CHECK(easy[0] == 0);
  CHECK(easy[1] == 1);
  CHECK(easy[2] == 3);
  for (int n = 1; n <= 12; ++n) CHECK(diag_formula_easyex(n) == easy[static_cast<std::size_t>(n)]);

  // (n!)^2 a_n counts trees of the 2n-vertex graph
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> m{n, n};
    Graph g = build_h_graph(HSpec{k2, easy_phi, m});
    BigInt f = factorial(static_cast<unsigned long>(n));
    CHECK(Rational(count_edge_rule(g)) == easy[static_cast<std::size_t>(n)] * Rational(f * f));
  }

  Graph k3 = from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<int> tri_phi{0, 0, 0};
  Series1 tri = diagonal(hgraph_egf(k3, tri_phi, {4, 4, 4}));
  CHECK(tri[0] == 0);
  CHECK(tri[1] == 3);
  CHECK(tri[2] == 84);
  CHECK(tri[3] == 4935);

  CHECK_THROWS_AS(diagonal(TruncatedSeries({2, 3})), InputError);
}
