#include <set>

#include "doctest.h"
#include "ordfix/core.hpp"
#include "ordfix/expr.hpp"

using namespace ordfix;

namespace {

PartialMetricSpace max_space() {
  return PartialMetricSpace::interval(0.0, 1000.0, parse_expr("max(x, y)"));
}

}  // namespace

TEST_CASE("element basics") {
  const Element a = Element::finite(3);
  const Element b = Element::scalar(0.5);
  CHECK(a.is_index());
  CHECK(!b.is_index());
  CHECK(a.describe() == "#3");
  CHECK(b.describe() == "0.5");
  CHECK(element_less(Element::finite(1), Element::finite(2)));
  CHECK(element_less(a, b));  // indices sort before scalars
  CHECK(!element_less(b, b));
}

TEST_CASE("finite space construction validates eagerly") {
  CHECK_NOTHROW(PartialMetricSpace::finite({{0.0, 1.0}, {1.0, 1.0}}));
  // asymmetry
  CHECK_THROWS_AS(PartialMetricSpace::finite({{0.0, 1.0}, {2.0, 1.0}}),
                  DomainError);
  // negative entry
  CHECK_THROWS_AS(PartialMetricSpace::finite({{0.0, -1.0}, {-1.0, 0.0}}),
                  DomainError);
  // self distance above the off-diagonal entry
  CHECK_THROWS_AS(PartialMetricSpace::finite({{2.0, 1.0}, {1.0, 0.0}}),
                  DomainError);
  // ragged rows
  CHECK_THROWS_AS(PartialMetricSpace::finite({{0.0, 1.0}, {1.0}}), DomainError);
}

TEST_CASE("finite space distances") {
  PartialMetricSpace s = PartialMetricSpace::finite({{1.0, 2.0}, {2.0, 2.0}});
  CHECK(s.is_finite());
  CHECK(s.size() == 2);
  CHECK(s.distance(Element::finite(0), Element::finite(1)) == 2.0);
  CHECK(s.self_distance(Element::finite(1)) == 2.0);
  CHECK(s.induced_distance(Element::finite(0), Element::finite(1)) == 1.0);
  CHECK(s.contains(Element::finite(1)));
  CHECK(!s.contains(Element::finite(2)));
  CHECK(!s.contains(Element::scalar(0.5)));
  CHECK_THROWS_AS(s.distance(Element::finite(0), Element::finite(5)), DomainError);
  CHECK_THROWS_AS(s.distance(Element::finite(0), Element::scalar(1.0)), DomainError);
  // identical means indistinguishable by distance
  CHECK(s.identical(Element::finite(0), Element::finite(0)));
  CHECK(!s.identical(Element::finite(0), Element::finite(1)));
}

TEST_CASE("interval space") {
  PartialMetricSpace s = max_space();
  CHECK(!s.is_finite());
  CHECK(s.lower() == 0.0);
  CHECK(s.upper() == 1000.0);
  CHECK(s.distance(Element::scalar(2.0), Element::scalar(5.0)) == 5.0);
  CHECK(s.self_distance(Element::scalar(2.0)) == 2.0);
  CHECK(s.induced_distance(Element::scalar(2.0), Element::scalar(5.0)) == 3.0);
  CHECK(s.contains(Element::scalar(0.0)));
  CHECK(s.contains(Element::scalar(1000.0)));
  CHECK(!s.contains(Element::scalar(-0.1)));
  CHECK(!s.contains(Element::finite(0)));
  CHECK_THROWS_AS(s.require_member(Element::scalar(1000.5)), DomainError);

  CHECK_THROWS_AS(PartialMetricSpace::interval(2.0, 1.0, parse_expr("max(x, y)")),
                  DomainError);
  // distance expressions speak x and y only
  CHECK_THROWS_AS(PartialMetricSpace::interval(0.0, 1.0, parse_expr("t")),
                  DomainError);
  CHECK_THROWS_AS(PartialMetricSpace::interval(0.0, 1.0, nullptr), DomainError);
}

TEST_CASE("sampling covers finite carriers and interval endpoints") {
  PartialMetricSpace fin =
      PartialMetricSpace::finite({{0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}});
  std::vector<Element> drawn = fin.sample_elements(6, 42);
  REQUIRE(drawn.size() == 6);
  std::set<int> indices;
  for (const Element& e : drawn) indices.insert(e.index);
  CHECK(indices == std::set<int>{0, 1, 2});

  PartialMetricSpace itv = max_space();
  std::vector<Element> pts = itv.sample_elements(5, 42);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0].value == 0.0);
  CHECK(pts[1].value == 1000.0);
  for (const Element& e : pts) {
    CHECK(e.value >= 0.0);
    CHECK(e.value <= 1000.0);
  }
  // seeded and reproducible
  std::vector<Element> again = itv.sample_elements(5, 42);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].value == again[i].value);
  std::vector<Element> other = itv.sample_elements(5, 43);
  bool all_same = true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    all_same = all_same && pts[i].value == other[i].value;
  CHECK(!all_same);
}

TEST_CASE("finite order tables") {
  PartialOrder chain = PartialOrder::finite({{true, false}, {true, true}});
  CHECK(chain.leq(Element::finite(1), Element::finite(0)));
  CHECK(!chain.leq(Element::finite(0), Element::finite(1)));
  CHECK(chain.comparable(Element::finite(0), Element::finite(1)));
  CHECK_THROWS_AS(PartialOrder::finite({{false, false}, {false, true}}),
                  DomainError);  // not reflexive
}

TEST_CASE("predicate orders and relation keywords") {
  PartialOrder by_eq = PartialOrder::predicate(
      parse_expr("x"), PartialOrder::Relation::Eq, parse_expr("max(x, y)"));
  // x = max(x,y) holds exactly when x >= y
  CHECK(by_eq.leq(Element::scalar(5.0), Element::scalar(2.0)));
  CHECK(!by_eq.leq(Element::scalar(2.0), Element::scalar(5.0)));
  CHECK(by_eq.comparable(Element::scalar(2.0), Element::scalar(5.0)));

  PartialOrder by_leq = PartialOrder::predicate(
      parse_expr("x"), PartialOrder::Relation::Leq, parse_expr("y"));
  CHECK(by_leq.leq(Element::scalar(2.0), Element::scalar(5.0)));
  CHECK(by_leq.leq(Element::scalar(2.0), Element::scalar(2.0)));
  CHECK(!by_leq.leq(Element::scalar(5.0), Element::scalar(2.0)));

  PartialOrder by_geq = PartialOrder::predicate(
      parse_expr("x"), PartialOrder::Relation::Geq, parse_expr("y"));
  CHECK(by_geq.leq(Element::scalar(5.0), Element::scalar(2.0)));

  // the slack parameter forgives borderline float noise
  CHECK(by_leq.leq(Element::scalar(1.0 + 1e-12), Element::scalar(1.0), 1e-9));
  CHECK(!by_leq.leq(Element::scalar(1.0 + 1e-6), Element::scalar(1.0), 1e-9));

  CHECK(relation_keyword(PartialOrder::Relation::Geq) == "geq");
  CHECK(relation_from_keyword("eq") == PartialOrder::Relation::Eq);
  CHECK_THROWS_AS(relation_from_keyword("lt"), DomainError);
}

TEST_CASE("control function checks its own shape") {
  ControlFunction psi(parse_expr("t / 4"));
  CHECK(psi(8.0) == 2.0);
  CHECK(psi.growth_bound() == kDefaultGrowthBound);
  ControlFunction tight(parse_expr("t / 4"), 100.0);
  CHECK(tight.growth_bound() == 100.0);

  CHECK_THROWS_AS(ControlFunction(parse_expr("t + 1")), DomainError);  // psi(0) != 0
  CHECK_THROWS_AS(ControlFunction(parse_expr("y")), DomainError);
  CHECK_THROWS_AS(ControlFunction(nullptr), DomainError);
  CHECK_THROWS_AS(ControlFunction(parse_expr("t"), 0.0), DomainError);
  CHECK_THROWS_AS(ControlFunction(parse_expr("t"), -5.0), DomainError);
}

TEST_CASE("self maps") {
  SelfMap fin = SelfMap::finite({1, 0});
  CHECK(fin.apply(Element::finite(0)).index == 1);
  CHECK_THROWS_AS(fin.apply(Element::finite(2)), DomainError);
  CHECK_THROWS_AS(fin.apply(Element::scalar(0.5)), DomainError);
  CHECK_THROWS_AS(SelfMap::finite({0, 2}), DomainError);  // entry out of range
  CHECK_THROWS_AS(SelfMap::finite({-1}), DomainError);

  SelfMap half = SelfMap::scalar(parse_expr("t / 2"));
  CHECK(half.apply(Element::scalar(9.0)).value == 4.5);
  CHECK_THROWS_AS(half.apply(Element::finite(0)), DomainError);
  CHECK_THROWS_AS(SelfMap::scalar(parse_expr("x + y")), DomainError);
  CHECK_THROWS_AS(SelfMap::scalar(nullptr), DomainError);
}

TEST_CASE("instance validation") {
  ProblemInstance good;
  good.space = max_space();
  good.order = PartialOrder::predicate(parse_expr("x"), PartialOrder::Relation::Eq,
                                       parse_expr("max(x, y)"));
  good.map = SelfMap::scalar(parse_expr("t / 2"));
  good.psi.emplace(parse_expr("t / 4"));
  good.x0 = Element::scalar(1.0);
  CHECK_NOTHROW(good.validate());

  ProblemInstance bad = good;
  bad.map = SelfMap::finite({0});
  CHECK_THROWS_AS(bad.validate(), DomainError);  // kind mismatch

  bad = good;
  bad.psi.reset();
  CHECK_THROWS_AS(bad.validate(), DomainError);  // no contraction data

  bad = good;
  bad.psi.reset();
  bad.banach_c = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);  // c must stay below 1

  bad = good;
  bad.banach_c = -0.25;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  bad = good;
  bad.x0 = Element::scalar(-3.0);
  CHECK_THROWS_AS(bad.validate(), DomainError);

  bad = good;
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  bad = good;
  bad.max_iter = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  bad = good;
  bad.sample_count = -5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
