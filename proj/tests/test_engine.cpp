#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vpe/certificate.hpp"
#include "vpe/engine.hpp"
#include "vpe/error.hpp"

using namespace vpe;
using vpe::testing::Gen;
using vpe::testing::numbered_ids;

namespace {

PointSet set_of(std::initializer_list<PointIndex> xs) { return PointSet(std::vector<PointIndex>(xs)); }

std::vector<std::size_t> as_vector(const PointSet& s) { return s.members(); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

DistanceSpec line() {
  return make_builtin(Family::euclidean, {}, make_space({"0", "0.5", "1"}, {{0.0}, {0.5}, {1.0}}));
}

}  // namespace

TEST_CASE("schedules") {
  const auto g = PerturbationSchedule::geometric(2.0, 0.5, 0.5);
  CHECK(*g.delta(0) == 0.5);
  CHECK(*g.delta(3) == 0.0625);
  CHECK(g.tail_sum_after(0) == 0.5);  // 0.25 / (1 - 0.5)
  CHECK(bp_radius(g, 0) == 4.0);
  CHECK(bp_radius(g, 2) == 1.0);
  CHECK(bp_slack(g, 0) == 2.0);
  CHECK(bp_slack(g, 1) == 2.0 * 0.25 / (2.0 * 0.5));
  CHECK(kind_of([] { PerturbationSchedule::geometric(1.0, 1.0, 1.0); }) == ErrorKind::BadParameter);
  CHECK(kind_of([] { PerturbationSchedule::geometric(0.0, 1.0, 0.5); }) == ErrorKind::BadParameter);

  const auto e = PerturbationSchedule::explicit_list(1.0, {1.0, 0.5, 0.25});
  CHECK(e.delta0() == 1.0);
  CHECK(!e.delta(3));
  CHECK(e.tail_sum_after(0) == 0.75);
  CHECK(kind_of([&] { bp_slack(e, 3); }) == ErrorKind::BadParameter);

  CHECK(ekeland_radius(0) == 1.0);
  CHECK(ekeland_radius(3) == 0.125);
  CHECK(ekeland_slack(0.6, 1) == 0.3);
}

TEST_CASE("two-point Borwein-Preiss hand trace") {
  const auto d = make_table(make_space({"a", "b"}), {{0, 1}, {1, 0}});
  const ExtendedObjective f({0, 1});
  const auto sched = PerturbationSchedule::geometric(2.0, 0.5, 0.5);
  const auto run = borwein_preiss(d, f, sched, 1);
  CHECK(run.zbar == 0);
  REQUIRE(run.trace.iterates.size() == 2);
  CHECK(run.trace.iterates[0].z == 1);
  CHECK(run.trace.iterates[0].set == set_of({0, 1}));
  CHECK(run.trace.iterates[1].z == 0);
  CHECK(run.trace.iterates[1].set == set_of({0}));
  CHECK(run.trace.stabilized_at == 1u);

  CHECK(kind_of([&] { borwein_preiss(d, ExtendedObjective({0, kInfinity}), sched, 1); }) ==
        ErrorKind::HypothesisViolation);
  // f(b) = 1 is not below inf f + 0.5.
  CHECK(kind_of([&] { borwein_preiss(d, f, PerturbationSchedule::geometric(0.5, 0.5, 0.5), 1); }) ==
        ErrorKind::HypothesisViolation);
}

TEST_CASE("three-point Ekeland hand traces") {
  const auto d = line();
  const ExtendedObjective f({0, 0.5, 1});
  SUBCASE("eps 0.6 from 0.5") {
    const auto run = ekeland(d, f, 0.6, 1);
    CHECK(run.zbar == 0);
    REQUIRE(run.trace.iterates.size() == 2);
    CHECK(run.trace.iterates[0].set == set_of({0, 1}));
    CHECK(run.trace.iterates[1].z == 0);
    CHECK(run.trace.iterates[1].set == set_of({0}));
    CHECK(run.trace.iterates[0].radius == 1.0);
    CHECK(run.trace.iterates[1].radius == 0.5);
  }
  SUBCASE("eps 1.5 from 1") {
    const auto run = ekeland(d, f, 1.5, 2);
    CHECK(run.zbar == 2);
    REQUIRE(run.trace.iterates.size() == 1);
    CHECK(run.trace.iterates[0].set == set_of({2}));
  }
  CHECK(kind_of([&] { ekeland(d, f, 0.4, 2); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([&] { ekeland(d, f, -1.0, 0); }) == ErrorKind::BadParameter);
}

TEST_CASE("constant objectives stop at the start") {
  const auto d = line();
  const ExtendedObjective flat({2, 2, 2});
  CHECK(borwein_preiss(d, flat, PerturbationSchedule::geometric(1.0, 1.0, 0.5), 1).zbar == 1);
  CHECK(ekeland(d, flat, 1.0, 2).zbar == 2);
  CHECK(weak_borwein_preiss(d, flat, 1.0, 0.5).zbar == 0);
  CHECK(weak_ekeland(d, flat, 1.0).zbar == 0);
  CHECK(weak_ekeland(d, flat, 1.0).trace.iterates.size() == 1);
}

TEST_CASE("weak forms land on the lowest-index global minimizer") {
  const auto d = line();
  CHECK(weak_borwein_preiss(d, ExtendedObjective({3, 1, 2}), 1.0, 0.5).zbar == 1);
  CHECK(weak_ekeland(d, ExtendedObjective({3, 1, 2}), 0.5).zbar == 1);
  CHECK(weak_borwein_preiss(d, ExtendedObjective({3, 1, 1}), 1.0, 0.5).zbar == 1);
  CHECK(weak_ekeland(d, ExtendedObjective({kInfinity, 4, 4}), 0.5).zbar == 1);
  // Large epsilon: S_0 = {z0} since eps d(z, z0) exceeds every drop f(z0) - f(z).
  CHECK(ekeland(d, ExtendedObjective({0, 0.5, 1}), 100.0, 2).zbar == 2);
}

TEST_CASE("iteration budget") {
  const auto d = line();
  EngineOptions opt;
  opt.max_iter = 1;
  CHECK(kind_of([&] { ekeland(d, ExtendedObjective({0, 0.5, 1}), 0.6, 1, opt); }) == ErrorKind::IterationLimit);
}

TEST_CASE("exact runs match a plain transcription of the iteration") {
  Gen g(1234);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 2 + g.index(30);
    const auto m = g.table(n);
    const auto fv = round % 2 ? g.values(n) : g.lattice_values(n, 5);
    const auto d = make_table(make_space(numbered_ids(n)), m);
    const ExtendedObjective f(fv);
    const std::size_t z0 = g.index(n);
    const double eps = (fv[z0] - f.infimum()) + g.uniform(0.01, 10.0);
    CAPTURE(round);

    const double delta0 = g.uniform(0.05, 2.0);
    const auto bp = borwein_preiss(d, f, PerturbationSchedule::geometric(eps, delta0, 0.5), z0);
    const auto nb = vpe::testing::naive_bp(m, fv, delta0, 0.5, z0);
    REQUIRE(bp.trace.iterates.size() == nb.z.size());
    for (std::size_t i = 0; i < nb.z.size(); ++i) {
      CHECK(bp.trace.iterates[i].z == nb.z[i]);
      CHECK(as_vector(bp.trace.iterates[i].set) == nb.sets[i]);
    }
    CHECK(bp.trace.iterates.size() <= n + 1);

    const auto ek = ekeland(d, f, eps, z0);
    const auto ne = vpe::testing::naive_ekeland(m, fv, eps, z0);
    REQUIRE(ek.trace.iterates.size() == ne.z.size());
    for (std::size_t i = 0; i < ne.z.size(); ++i) {
      CHECK(ek.trace.iterates[i].z == ne.z[i]);
      CHECK(as_vector(ek.trace.iterates[i].set) == ne.sets[i]);
    }
    CHECK(ek.zbar == ne.z.back());
  }
}

TEST_CASE("trace invariants hold under the quasi picker") {
  Gen g(77);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + g.index(25);
    const auto d = make_table(make_space(numbered_ids(n)), g.table(n));
    const ExtendedObjective f(g.values(n));
    const std::size_t z0 = g.index(n);
    const double eps = (f(z0) - f.infimum()) + g.uniform(0.01, 10.0);
    EngineOptions opt;
    opt.picker = Picker::quasi(g.index(1000));
    for (const auto& run : {borwein_preiss(d, f, PerturbationSchedule::geometric(eps, 0.7, 0.5), z0, opt),
                            ekeland(d, f, eps, z0, opt)}) {
      const auto& its = run.trace.iterates;
      REQUIRE(!its.empty());
      CHECK(its.front().z == z0);
      for (std::size_t i = 0; i < its.size(); ++i) {
        CHECK(its[i].set.contains(its[i].z));
        if (i > 0) {
          CHECK(its[i].set.subset_of(its[i - 1].set));
          CHECK(its[i - 1].set.contains(its[i].z));
        }
      }
      CHECK(its.back().set == PointSet::single(run.zbar));
    }
  }
}

TEST_CASE("quasi picker is reproducible under its seed") {
  Gen g(5);
  const std::size_t n = 40;
  const auto d = make_table(make_space(numbered_ids(n)), g.table(n));
  const ExtendedObjective f(g.lattice_values(n, 3));
  EngineOptions opt;
  opt.picker = Picker::quasi(42);
  const auto a = ekeland(d, f, 50.0, 3, opt);
  const auto b = ekeland(d, f, 50.0, 3, opt);
  REQUIRE(a.trace.iterates.size() == b.trace.iterates.size());
  for (std::size_t i = 0; i < a.trace.iterates.size(); ++i) CHECK(a.trace.iterates[i].z == b.trace.iterates[i].z);
}

TEST_CASE("nested family extends to a singleton below the cutoff") {
  const auto d = make_table(make_space({"a", "b"}), {{0, 1}, {1, 0}});
  const auto run = borwein_preiss(d, ExtendedObjective({0, 1}), PerturbationSchedule::geometric(2.0, 0.5, 0.5), 1);
  const auto fam = run.trace.nested_family(0.5);
  REQUIRE(fam.sets.size() >= 2);
  CHECK(fam.radii.back() < 0.5);
  CHECK(fam.sets.back() == PointSet::single(0));
  const auto r = cantor_intersect(d, fam, Containment::non_strict, 0.5);
  CHECK(r.limit == 0);
  CHECK(r.singleton_check);
}
