#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vpe/axiom_report.hpp"
#include "vpe/distance.hpp"
#include "vpe/error.hpp"

using namespace vpe;
using vpe::testing::Gen;
using vpe::testing::numbered_ids;

namespace {

// Closed forms, written out term by term.
const double kKlForward = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
const double kKlBackward = 0.25 * std::log(0.25 / 0.5) + 0.75 * std::log(0.75 / 0.5);

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

DistanceSpec kl_pair() {
  return make_builtin(Family::kl, {}, make_space({"p", "q"}, {{0.5, 0.5}, {0.25, 0.75}}));
}

}  // namespace

TEST_CASE("raw formulas") {
  const std::vector<double> o{0, 0}, one{1, 1};
  CHECK(lp_frac_distance(o, one, 0.5) == 4.0);
  CHECK(lp_frac_distance(one, one, 0.5) == 0.0);
  CHECK(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{0.25, 0.75}) ==
        doctest::Approx(kKlForward).epsilon(1e-15));
  CHECK(kKlForward == doctest::Approx(0.143841).epsilon(1e-6));
  // x/y - ln(x/y) - 1 per coordinate: (2 - ln 2 - 1) + (0.5 - ln 0.5 - 1).
  CHECK(itakura_saito_distance(std::vector<double>{2, 1}, std::vector<double>{1, 2}) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("make_builtin validates parameters and domains") {
  auto plane = make_space({"a", "b"}, {{0, 0}, {1, 1}});
  CHECK(make_builtin(Family::lp_frac, {0.5, {}}, plane)(0, 1) == 4.0);
  CHECK(kind_of([&] { make_builtin(Family::lp_frac, {1.5, {}}, plane); }) == ErrorKind::BadParameter);
  CHECK(kind_of([&] { make_builtin(Family::lp_frac, {0.0, {}}, plane); }) == ErrorKind::BadParameter);
  CHECK(kind_of([&] { make_builtin(Family::lp_frac, {}, plane); }) == ErrorKind::BadParameter);

  auto bare = make_space({"a", "b"});
  const auto t = make_table(bare, {{0, 1}, {2, 0}});
  CHECK(t(0, 1) == 1.0);
  CHECK(t(1, 0) == 2.0);
  CHECK(t.evaluate("b", "a") == 2.0);
  CHECK(kind_of([&] { t.evaluate("a", "zz"); }) == ErrorKind::UnknownPoint);
  CHECK(kind_of([&] { make_table(bare, {{0.5, 1}, {2, 0}}); }) == ErrorKind::AxiomViolation);
  CHECK(kind_of([&] { make_table(bare, {{0, 0}, {2, 0}}); }) == ErrorKind::AxiomViolation);
  CHECK(kind_of([&] { make_table(bare, {{0, -1}, {2, 0}}); }) == ErrorKind::AxiomViolation);
  CHECK(kind_of([&] { make_table(bare, {{0, 1, 1}, {2, 0, 1}}); }) == ErrorKind::BadParameter);
  CHECK(kind_of([&] { make_builtin(Family::euclidean, {}, bare); }) == ErrorKind::DomainViolation);

  auto zero = make_space({"p", "q"}, {{1, 0}, {0.5, 0.5}});
  CHECK(kind_of([&] { make_builtin(Family::kl, {}, zero); }) == ErrorKind::DomainViolation);
  CHECK(kind_of([&] { make_builtin(Family::itakura_saito, {}, zero); }) == ErrorKind::DomainViolation);
  auto unnormalized = make_space({"p", "q"}, {{0.6, 0.6}, {0.5, 0.5}});
  CHECK(kind_of([&] { make_builtin(Family::kl, {}, unnormalized); }) == ErrorKind::DomainViolation);
  // Coincident coordinates under distinct ids break d(x,y) = 0 iff x = y.
  auto twins = make_space({"p", "q"}, {{1, 1}, {1, 1}});
  CHECK(kind_of([&] { make_builtin(Family::euclidean, {}, twins); }) == ErrorKind::AxiomViolation);
}

TEST_CASE("kl is asymmetric with the closed-form values") {
  const auto kl = kl_pair();
  CHECK(kl(0, 1) == doctest::Approx(kKlForward).epsilon(1e-12));
  CHECK(kl(1, 0) == doctest::Approx(kKlBackward).epsilon(1e-12));
  CHECK(std::abs(kl(0, 1) - 0.143841) <= 1e-6);
}

TEST_CASE("symmetrize") {
  const auto kl = kl_pair();
  const auto s = symmetrize(kl, 1.0, 1.0);
  CHECK(s(0, 1) == doctest::Approx(kKlForward + kKlBackward).epsilon(1e-12));
  CHECK(s(0, 1) == s(1, 0));
  CHECK(kind_of([&] { symmetrize(kl, 0.0, 0.0); }) == ErrorKind::BadParameter);
  CHECK(kind_of([&] { symmetrize(kl, -1.0, 1.0); }) == ErrorKind::BadParameter);

  Gen g(11);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + g.index(8);
    const auto d = make_table(make_space(numbered_ids(n)), g.table(n));
    const auto same = symmetrize(d, 1.0, 0.0);
    const double w = g.uniform(0.1, 4.0);
    const auto eq = symmetrize(d, w, w);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        CHECK(same(x, y) == d(x, y));
        CHECK(eq(x, y) == eq(y, x));
      }
    const auto sym = symmetrize(d, 1.0, 1.0);
    const auto doubled = symmetrize(sym, 1.0, 1.0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) CHECK(doubled(x, y) == 2.0 * sym(x, y));
  }
}

TEST_CASE("product distance swaps its arguments") {
  const auto d = make_table(make_space({"a", "b"}), {{0, 1}, {2, 0}});
  const auto rho = product_distance(d);
  const auto& pairs = rho.space();
  REQUIRE(pairs.size() == 4);
  const auto aa = pairs.index_of("(a,a)");
  const auto bb = pairs.index_of("(b,b)");
  const auto ab = pairs.index_of("(a,b)");
  CHECK(rho(ab, ab) == 0.0);
  CHECK(rho(aa, bb) == 4.0);  // d(b,a) + d(b,a)
  CHECK(rho(bb, aa) == 2.0);  // d(a,b) + d(a,b)
  CHECK(rho.evaluate("(a,a)", "(b,b)") == 4.0);

  std::vector<double> col(4);
  rho.column_to(bb, col);
  for (std::size_t z = 0; z < 4; ++z) CHECK(col[z] == rho(z, bb));

  Gen g(5);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + g.index(5);
    const auto base = symmetrize(make_table(make_space(numbered_ids(n)), g.table(n)), 1.0, 1.0);
    const auto r = product_distance(base);
    for (std::size_t p = 0; p < n * n; ++p)
      for (std::size_t q = 0; q < n * n; ++q) {
        CHECK(r(p, q) == r(q, p));
        CHECK((r(p, q) == 0.0) == (p == q));
      }
  }
}

TEST_CASE("every family satisfies nonnegativity and the identity axiom") {
  Gen g(99);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 2 + g.index(10);
    std::vector<std::vector<double>> plane, simplex;
    for (std::size_t i = 0; i < n; ++i) {
      plane.push_back({g.uniform(0.1, 10), g.uniform(0.1, 10)});
      const double a = g.uniform(0.05, 1), b = g.uniform(0.05, 1), c = g.uniform(0.05, 1);
      simplex.push_back({a / (a + b + c), b / (a + b + c), 0.0});
      simplex.back()[2] = 1.0 - simplex.back()[0] - simplex.back()[1];
    }
    const auto ids = numbered_ids(n);
    std::vector<DistanceSpec> specs{
        make_table(make_space(ids), g.table(n)),
        make_builtin(Family::euclidean, {}, make_space(ids, plane)),
        make_builtin(Family::sq_euclidean, {}, make_space(ids, plane)),
        make_builtin(Family::lp_frac, {g.uniform(0.1, 0.9), {}}, make_space(ids, plane)),
        make_builtin(Family::itakura_saito, {}, make_space(ids, plane)),
        make_builtin(Family::kl, {}, make_space(ids, simplex)),
    };
    for (const auto& d : specs) {
      CAPTURE(to_string(d.family()));
      std::vector<double> col(n);
      for (std::size_t y = 0; y < n; ++y) {
        d.column_to(y, col);
        for (std::size_t x = 0; x < n; ++x) {
          CHECK(d(x, y) >= 0.0);
          CHECK((d(x, y) == 0.0) == (x == y));
          CHECK(col[x] == d(x, y));
        }
      }
    }
  }
}

TEST_CASE("min_positive_distance") {
  const auto d = make_table(make_space({"a", "b", "c"}), {{0, 3, 2}, {0.5, 0, 4}, {1, 1, 0}});
  CHECK(min_positive_distance(d) == 0.5);
  CHECK(min_positive_distance(product_distance(d)) == 0.5);
}

TEST_CASE("axiom_report finds the canonical witnesses") {
  SUBCASE("l^1/2 triangle") {
    const auto d = make_builtin(Family::lp_frac, {0.5, {}}, make_space({"o", "e", "f"}, {{0, 0}, {1, 0}, {1, 1}}));
    const auto r = axiom_report(d);
    CHECK(r.mode == ScanMode::full);
    CHECK(r.identity_ok);
    CHECK(r.symmetry_witnesses.empty());
    CHECK(r.triples_examined == 6);
    bool found = false;
    for (const auto& w : r.triangle_witnesses)
      if (w.x == 0 && w.y == 1 && w.z == 2) found = w.direct == 4.0 && w.detour == 2.0;
    CHECK(found);
  }
  SUBCASE("kl asymmetry") {
    const auto r = axiom_report(kl_pair());
    REQUIRE(r.symmetry_witnesses.size() == 1);
    CHECK(r.symmetry_witnesses[0].forward == doctest::Approx(kKlForward).epsilon(1e-12));
    CHECK(r.symmetry_witnesses[0].backward == doctest::Approx(kKlBackward).epsilon(1e-12));
  }
  SUBCASE("euclidean is clean, full and sampled") {
    Gen g(3);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({g.uniform(0, 10), g.uniform(0, 10), g.uniform(0, 10)});
    const auto d = make_builtin(Family::euclidean, {}, make_space(numbered_ids(30), pts));
    const auto full = axiom_report(d);
    CHECK(full.triangle_witnesses.empty());
    CHECK(full.symmetry_witnesses.empty());
    CHECK(full.triples_examined == 30 * 29 * 28);
    AxiomScanOptions opt;
    opt.sample_triples = 1000;
    opt.seed = 4;
    const auto sampled = axiom_report(d, opt);
    CHECK(sampled.mode == ScanMode::sampled);
    CHECK(sampled.triples_examined == 1000);
    CHECK(sampled.triangle_witnesses.empty());
  }
  SUBCASE("table witnesses agree with a brute-force count") {
    Gen g(8);
    const std::size_t n = 7;
    const auto m = g.table(n, 0.1, 3.0);
    const auto d = make_table(make_space(numbered_ids(n)), m);
    std::size_t tri = 0, sym = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x < y && std::abs(m[x][y] - m[y][x]) > 1e-9) ++sym;
        for (std::size_t z = 0; z < n; ++z)
          if (x != y && y != z && x != z && m[x][z] > m[x][y] + m[y][z] + 1e-9) ++tri;
      }
    const auto r = axiom_report(d);
    CHECK(r.triangle_witnesses.size() == tri);
    CHECK(r.symmetry_witnesses.size() == sym);
  }
  SUBCASE("budget") {
    AxiomScanOptions opt;
    opt.max_full_triples = 5;
    CHECK(kind_of([&] { axiom_report(kl_pair(), opt); }) == ErrorKind::BudgetExceeded);
  }
}
