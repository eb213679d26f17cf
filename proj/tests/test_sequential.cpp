#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "vpe/error.hpp"
#include "vpe/sequential.hpp"

using namespace vpe;
using vpe::testing::Gen;
using vpe::testing::numbered_ids;

namespace {

PointSet set_of(std::initializer_list<PointIndex> xs) { return PointSet(std::vector<PointIndex>(xs)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("point sets are sorted and unique") {
  const PointSet s(std::vector<PointIndex>{3, 1, 3, 0});
  CHECK(s.members() == std::vector<PointIndex>{0, 1, 3});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(set_of({1}).subset_of(s));
  CHECK_FALSE(set_of({2}).subset_of(s));
  CHECK(s.intersect(set_of({1, 2, 3})) == set_of({1, 3}));
  const std::vector<std::uint8_t> mask{0, 1, 1, 0};
  CHECK(PointSet::from_mask(mask) == set_of({1, 2}));
}

TEST_CASE("right balls use the first slot") {
  // d(b,a) = 1, d(c,a) = 2.
  const auto d = make_table(make_space({"a", "b", "c"}), {{0, 3, 3}, {1, 0, 3}, {2, 3, 0}});
  CHECK(right_ball(d, 0, 1.5) == set_of({0, 1}));
  CHECK(right_ball(d, 0, 100.0) == set_of({0, 1, 2}));
  CHECK(right_ball(d, 0, 1.0) == set_of({0}));  // strict inequality

  const auto e = make_table(make_space({"a", "b"}), {{0, 5}, {0.1, 0}});
  CHECK(right_ball(e, 0, 1.0) == set_of({0, 1}));
  CHECK(right_ball(e, 1, 1.0) == set_of({1}));

  Gen g(21);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 1 + g.index(9);
    const auto m = g.table(n);
    const auto t = make_table(make_space(numbered_ids(n)), m);
    const std::size_t x = g.index(n);
    const double r = g.uniform(1e-6, 12.0);
    std::vector<PointIndex> expect;
    for (std::size_t y = 0; y < n; ++y)
      if (m[y][x] < r) expect.push_back(y);
    CHECK(right_ball(t, x, r) == PointSet(expect));
    CHECK(right_ball(t, x, r).contains(x));
  }
}

TEST_CASE("cauchy modulus") {
  const auto d = make_table(make_space({"a", "b", "c"}), {{0, 1, 4}, {1, 0, 2}, {3, 5, 0}});
  SequenceTrace constant{{2, 2, 2}, 0};
  CHECK(cauchy_modulus(d, constant, Side::right) == std::vector<double>{0, 0, 0});

  SequenceTrace alternating{{0, 1, 0, 1}, std::nullopt};
  CHECK(cauchy_modulus(d, alternating, Side::right) == std::vector<double>{1, 1, 1, 0});

  SequenceTrace tail{{0, 2, 1, 1, 1}, 2};
  const auto right = cauchy_modulus(d, tail, Side::right);
  // i = 0: sup over j of d(x_j, a) = max(0, 3, 1) = 3; i = 1: max(d(c,c), d(b,c)) = 2.
  CHECK(right == std::vector<double>{3, 2, 0, 0, 0});
  const auto left = cauchy_modulus(d, tail, Side::left);
  // i = 0: max d(a, x_j) = max(0, 4, 1) = 4; i = 1: max d(c, x_j) = max(0, 5) = 5.
  CHECK(left == std::vector<double>{4, 5, 0, 0, 0});

  SequenceTrace bad{{0, 7}, std::nullopt};
  CHECK(kind_of([&] { bad.validate(3); }) == ErrorKind::UnknownPoint);
}

TEST_CASE("convergence on eventually constant tails is decided exactly") {
  const auto d = make_table(make_space({"a", "b"}), {{0, 0.5}, {0.5, 0}});
  SequenceTrace to_b{{0, 1, 1}, 1};
  CHECK(converges_to(d, to_b, 1, Side::right) == Verdict::yes);
  CHECK(converges_to(d, to_b, 0, Side::right) == Verdict::no);
  CHECK(converges_to(d, to_b, 1, Side::left) == Verdict::yes);
  SequenceTrace open{{0, 1}, std::nullopt};
  CHECK(converges_to(d, open, 0, Side::right) == Verdict::inconclusive);

  Gen g(31);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 2 + g.index(6);
    const auto t = make_table(make_space(numbered_ids(n)), g.table(n));
    SequenceTrace s;
    for (std::size_t k = 0, len = 1 + g.index(6); k < len; ++k) s.terms.push_back(g.index(n));
    s.constant_from = s.terms.size() - 1;
    std::size_t limits = 0;
    for (std::size_t x = 0; x < n; ++x) limits += converges_to(t, s, x, Side::right) == Verdict::yes;
    CHECK(limits == 1);
    const auto mod = cauchy_modulus(t, s, Side::right);
    CHECK(mod.back() == 0.0);
  }
}

TEST_CASE("sublevel sets") {
  const ExtendedObjective f({0, 1, 2});
  CHECK(sublevel_set(f, -1).empty());
  CHECK(sublevel_set(f, 1) == set_of({0, 1}));
  CHECK(sublevel_set(f, 5) == set_of({0, 1, 2}));
  const ExtendedObjective g({kInfinity, 1, 0});
  CHECK(sublevel_set(g, 1e300) == set_of({1, 2}));

  Gen gen(2);
  for (int round = 0; round < 50; ++round) {
    const ExtendedObjective h(gen.values(8));
    const double l1 = gen.uniform(-5, 105), l2 = gen.uniform(-5, 105);
    CHECK(sublevel_set(h, std::min(l1, l2)).subset_of(sublevel_set(h, std::max(l1, l2))));
  }
}

TEST_CASE("cantor_intersect") {
  const auto d = make_table(make_space({"a", "b"}), {{0, 1}, {1, 0}});
  SUBCASE("constant family") {
    NestedFamily fam;
    for (int i = 0; i < 4; ++i) {
      fam.sets.push_back(set_of({1}));
      fam.centers.push_back(1);
      fam.radii.push_back(std::ldexp(1.0, -i));
    }
    const auto r = cantor_intersect(d, fam);
    CHECK(r.limit == 1);
    CHECK(r.singleton_check);
  }
  SUBCASE("family of the two-point run") {
    NestedFamily fam{{set_of({0, 1}), set_of({0})}, {1, 0}, {4.0, 0.25}};
    const auto r = cantor_intersect(d, fam);
    CHECK(r.limit == 0);
    CHECK(r.singleton_check);
  }
  SUBCASE("hypothesis failures") {
    NestedFamily flat{{set_of({0, 1}), set_of({0})}, {1, 0}, {1.0, 1.0}};
    CHECK(kind_of([&] { cantor_intersect(d, flat); }) == ErrorKind::HypothesisViolation);
    NestedFamily unnested{{set_of({0}), set_of({1})}, {0, 1}, {1.0, 0.25}};
    CHECK(kind_of([&] { cantor_intersect(d, unnested); }) == ErrorKind::HypothesisViolation);
    NestedFamily outside{{set_of({0, 1}), set_of({0})}, {1, 1}, {4.0, 0.25}};
    CHECK(kind_of([&] { cantor_intersect(d, outside); }) == ErrorKind::HypothesisViolation);
    NestedFamily loose{{set_of({0, 1}), set_of({0})}, {1, 0}, {0.5, 0.25}};
    CHECK(kind_of([&] { cantor_intersect(d, loose); }) == ErrorKind::HypothesisViolation);
    CHECK(kind_of([&] { cantor_intersect(d, NestedFamily{}); }) == ErrorKind::HypothesisViolation);
  }
  SUBCASE("boundary containment depends on the mode") {
    // d(a,b) = 1 sits exactly on the radius.
    NestedFamily edge{{set_of({0, 1}), set_of({0})}, {1, 0}, {1.0, 0.25}};
    CHECK(kind_of([&] { cantor_intersect(d, edge, Containment::strict); }) == ErrorKind::HypothesisViolation);
    CHECK(cantor_intersect(d, edge, Containment::non_strict).limit == 0);
  }
  SUBCASE("two points left") {
    const auto near = make_table(make_space({"a", "b"}), {{0, 0.01}, {0.01, 0}});
    NestedFamily fam{{set_of({0, 1})}, {0}, {0.1}};
    CHECK(kind_of([&] { cantor_intersect(near, fam, Containment::strict, 0.2); }) == ErrorKind::NonSingleton);
  }
}
