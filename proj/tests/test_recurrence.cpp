#include <doctest.h>

#include "asmtree/errors.hpp"
#include "asmtree/recurrence.hpp"
#include "asmtree/series.hpp"

using namespace asmtree;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Polynomial poly(std::vector<long> c) {
  Polynomial p;
  for (long v : c) p.coeffs.emplace_back(v);
  return p;
}

std::vector<Rational> easy_diagonal(int upto) {
  Graph k2 = from_edge_list(2, {{0, 1}});
  std::vector<int> phi{0, 1};
  return diagonal(hgraph_egf(k2, phi, {upto, upto})).coeffs;
}

std::vector<Rational> bipartite_diagonal(int upto) {
  Graph k2 = from_edge_list(2, {{0, 1}});
  std::vector<int> phi{0, 0};
  return diagonal(hgraph_egf(k2, phi, {upto, upto})).coeffs;
}

std::vector<Rational> catalan(int upto) {
  std::vector<Rational> out;
  for (int n = 0; n <= upto; ++n)
    out.emplace_back(binomial(static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n)) / (n + 1));
  return out;
}

// (n+2) f(n+1) - (4n+2) f(n) = 0 written with each polynomial evaluated at
// the index of its term: P1(m) = m + 1, P0(m) = -(4m + 2).
PRecurrence catalan_rec() {
  PRecurrence r;
  r.order = 1;
  r.offset = 0;
  r.polys = {poly({-2, -4}), poly({1, 1})};
  return r;
}

}  // namespace

TEST_CASE("polynomial basics") {
  Polynomial p = poly({1, 0, 2});
  CHECK(p(3) == 19);
  CHECK(p.degree() == 2);
  CHECK(poly({0, 0}).is_zero());
  CHECK(poly({0, 0}).degree() == -1);
}

TEST_CASE("extend the builtins") {
  std::vector<Rational> a = extend(builtin_a(), builtin_initial('a'), 5);
  CHECK(a[2] == 3);
  CHECK(a[3] == q("35/2"));
  std::vector<Rational> b = extend(builtin_b(), builtin_initial('b'), 4);
  CHECK(b[3] == q("25/2"));
  CHECK(b[4] == q("645/8"));
  std::vector<Rational> c = extend(builtin_c(), builtin_initial('c'), 3);
  CHECK(c == builtin_initial('c'));

  CHECK(a[5] == diag_formula_easyex(5));
  CHECK(extend(catalan_rec(), {Rational(1)}, 12) == catalan(12));
  CHECK_THROWS_AS(extend(builtin_b(), {Rational(0)}, 5), InputError);
}

TEST_CASE("extend refuses when the leading polynomial vanishes") {
  PRecurrence r;
  r.order = 1;
  r.offset = 0;
  r.polys = {poly({1}), poly({-3, 1})};  // P1(m) = m - 3 vanishes at m = 3
  CHECK_NOTHROW(extend(r, {Rational(1)}, 2));
  CHECK_THROWS_AS(extend(r, {Rational(1)}, 5), RefusedError);
}

TEST_CASE("verify") {
  std::vector<Rational> easy = easy_diagonal(20);
  VerifyResult ra = verify(builtin_a(), easy);
  CHECK(ra.pass);
  CHECK(ra.checked == 19);
  CHECK_FALSE(ra.degenerate());

  VerifyResult rb = verify(builtin_b(), bipartite_diagonal(20));
  CHECK(rb.pass);

  PRecurrence broken = builtin_a();
  broken.polys[1].coeffs[0] += 1;
  VerifyResult rf = verify(broken, easy);
  CHECK_FALSE(rf.pass);
  REQUIRE(rf.first_failure.has_value());
  CHECK(*rf.first_failure == broken.offset);

  VerifyResult short_seq = verify(builtin_b(), {Rational(0), Rational(1)});
  CHECK(short_seq.pass);
  CHECK(short_seq.degenerate());

  // the relation at n = 0 would force a_1 = 0, which is why the offset is 1
  PRecurrence from_zero = builtin_a();
  from_zero.offset = 0;
  CHECK_FALSE(verify(from_zero, easy).pass);
}

TEST_CASE("builtin_c holds on the tripartite diagonal") {
  Graph k3 = from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<int> phi{0, 0, 0};
  std::vector<Rational> c = diagonal(hgraph_egf(k3, phi, {14, 14, 14})).coeffs;
  PRecurrence rec = builtin_c();
  CHECK(rec.order == 3);
  CHECK(rec.max_degree() <= 11);
  VerifyResult r = verify(rec, c);
  CHECK(r.pass);
  CHECK(r.checked == 11);
  CHECK(extend(rec, builtin_initial('c'), 14) == c);
}

TEST_CASE("guess catalan") {
  auto rec = guess(catalan(20), 2, 2);
  REQUIRE(rec.has_value());
  CHECK(rec->order == 1);
  CHECK(rec->max_degree() == 1);
  CHECK(equivalent_on(*rec, catalan_rec(), {Rational(1)}, 40));
  CHECK(*rec == normalized(catalan_rec()));
}

TEST_CASE("guess recovers the diagonal recurrences") {
  std::vector<Rational> a = easy_diagonal(25);
  auto ga = guess(a, 2, 3);
  REQUIRE(ga.has_value());
  CHECK(ga->order == 1);
  CHECK(equivalent_on(*ga, builtin_a(), builtin_initial('a'), 60));
  CHECK(*ga == normalized(builtin_a()));

  std::vector<Rational> b = bipartite_diagonal(25);
  auto gb = guess(b, 2, 3);
  REQUIRE(gb.has_value());
  CHECK(gb->order == 2);
  CHECK(equivalent_on(*gb, builtin_b(), builtin_initial('b'), 60));

  // guessing from a recurrence's own output returns that recurrence
  std::vector<Rational> again = extend(*gb, builtin_initial('b'), 40);
  auto gb2 = guess(again, 2, 3);
  REQUIRE(gb2.has_value());
  CHECK(*gb2 == *gb);
}

TEST_CASE("guess reports nothing or refuses") {
  // 2^(n^2) satisfies no P-recurrence of small size
  std::vector<Rational> wild;
  for (int n = 0; n <= 30; ++n) {
    BigInt v = 1;
    v <<= static_cast<mp_bitcnt_t>(n * n);
    wild.emplace_back(v);
  }
  CHECK_FALSE(guess(wild, 2, 2).has_value());
  CHECK_THROWS_AS(guess(catalan(5), 2, 2), InputError);
  // an order-3 degree-11 ansatz cannot be pinned down by fifteen terms
  CHECK_THROWS_AS(guess(std::vector<Rational>(15, Rational(1)), 3, 11), InputError);
}

TEST_CASE("normalized and equivalent_on") {
  PRecurrence r = catalan_rec();
  PRecurrence scaled = r;
  for (auto& p : scaled.polys)
    for (auto& c : p.coeffs) c *= Rational(-6, 5);
  CHECK(normalized(scaled) == normalized(r));
  CHECK(equivalent_on(scaled, r, {Rational(1)}, 20));
  CHECK_FALSE(equivalent_on(builtin_a(), builtin_b(), builtin_initial('b'), 10));
}

TEST_CASE("validate") {
  PRecurrence r = catalan_rec();
  r.polys.pop_back();
  CHECK_THROWS_AS(r.validate(), InputError);
  PRecurrence z = catalan_rec();
  z.polys[1] = poly({0});
  CHECK_THROWS_AS(z.validate(), InputError);
}
