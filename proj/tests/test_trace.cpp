#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "stripslearn/errors.hpp"
#include "stripslearn/pddl.hpp"
#include "stripslearn/trace.hpp"

using namespace stripslearn;
using test::gf;

namespace {

DomainModel tiny_header() {
  return parse_domain(R"(
    (define (domain tiny)
      (:predicates (p ?x - object) (q ?x - object ?y - object) (flag)))
  )");
}

}  // namespace

TEST_CASE("parse_trace reconstructs states from deltas") {
  DomainModel h = tiny_header();
  Trace trace = parse_trace(R"(
    (trace (:instance i1)
      (:objects a - object)
      (:init (p a))
      (:step (:label act) (:add) (:del (p a))))
  )",
                            h.signatures, h.hierarchy);
  CHECK(trace.instance_id == "i1");
  std::vector<State> states = replay_states(trace);
  REQUIRE(states.size() == 2);
  CHECK(states[0] == State{gf("p", {"a"})});
  CHECK(states[1] == State{});
}

TEST_CASE("delta validation") {
  DomainModel h = tiny_header();
  SUBCASE("deleting an absent fact") {
    CHECK_THROWS_AS(parse_trace(R"(
      (trace (:instance i1) (:objects a - object) (:init)
        (:step (:label act) (:add) (:del (p a))))
    )",
                                h.signatures, h.hierarchy),
                    InconsistentDelta);
  }
  SUBCASE("adding a present fact") {
    CHECK_THROWS_AS(parse_trace(R"(
      (trace (:instance i1) (:objects a - object) (:init (p a))
        (:step (:label act) (:add (p a)) (:del)))
    )",
                                h.signatures, h.hierarchy),
                    InconsistentDelta);
  }
  SUBCASE("unknown predicate") {
    CHECK_THROWS_AS(parse_trace(R"(
      (trace (:instance i1) (:objects a - object) (:init (nosuch a)))
    )",
                                h.signatures, h.hierarchy),
                    UnknownPredicate);
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(parse_trace(R"(
      (trace (:instance i1) (:objects a - object) (:init (p a a)))
    )",
                                h.signatures, h.hierarchy),
                    ArityMismatch);
  }
  SUBCASE("undeclared object") {
    CHECK_THROWS_AS(parse_trace(R"(
      (trace (:instance i1) (:objects a - object) (:init (p b)))
    )",
                                h.signatures, h.hierarchy),
                    UnknownObject);
  }
}

TEST_CASE("a four-step trace yields four transitions") {
  DomainModel h = tiny_header();
  Trace trace = parse_trace(R"(
    (trace (:instance i1) (:objects a - object b - object) (:init)
      (:step (:label go) (:add (p a)) (:del))
      (:step (:label go) (:add (p b)) (:del))
      (:step (:label stop) (:add) (:del (p a)))
      (:step (:label go) (:add (p a)) (:del)))
  )",
                            h.signatures, h.hierarchy);
  CHECK(trace.steps.size() == 4);
  auto groups = decompose({trace});
  CHECK(groups.size() == 2);
  CHECK(groups.at("go").transitions.size() == 3);
  CHECK(groups.at("stop").transitions.size() == 1);

  // Adjacency survives: every transition's after is the next before.
  size_t total = 0;
  for (auto &[label, group] : groups) total += group.transitions.size();
  CHECK(total == trace.steps.size());
}

TEST_CASE("decompose groups by label across traces") {
  DomainModel h = tiny_header();
  Trace t1 = parse_trace(R"(
    (trace (:instance i1) (:objects a - object) (:init)
      (:step (:label pickup) (:add (p a)) (:del))
      (:step (:label drop) (:add) (:del (p a)))
      (:step (:label pickup) (:add (p a)) (:del)))
  )",
                         h.signatures, h.hierarchy);
  Trace t2 = parse_trace(R"(
    (trace (:instance i2) (:objects b - object) (:init)
      (:step (:label pickup) (:add (p b)) (:del))
      (:step (:label drop) (:add) (:del (p b))))
  )",
                         h.signatures, h.hierarchy);
  auto groups = decompose({t1, t2});
  CHECK(groups.at("pickup").transitions.size() == 3);
  CHECK(groups.at("drop").transitions.size() == 2);
  CHECK(decompose({}).empty());

  // Transition ids are unique across the whole decomposition.
  std::set<int> ids;
  for (auto &[label, group] : groups)
    for (auto &t : group.transitions) CHECK(ids.insert(t.id).second);
}

TEST_CASE("min_pars") {
  SUBCASE("worked single-parameter example needs only one object") {
    LabelGroup group = test::example_group();
    CHECK(min_pars(group) == 1);
  }
  SUBCASE("no-change transition contributes zero") {
    LabelGroup group = test::group_of(
        {test::transition(0, {gf("p", {"a"})}, "l", {gf("p", {"a"})})});
    CHECK(min_pars(group) == 0);
  }
  SUBCASE("move-style step counts three distinct objects") {
    // del at(rob, roomA), add at(rob, roomB): objects rob, roomA, roomB.
    LabelGroup group = test::group_of(
        {test::transition(0, {gf("at", {"rob", "rooma"})}, "move",
                          {gf("at", {"rob", "roomb"})})});
    CHECK(min_pars(group) == 3);
  }
}

TEST_CASE("min_pars is invariant under order and object renaming") {
  DomainModel h = tiny_header();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    // Random small transition set over objects o0..o3.
    std::vector<Transition> ts;
    std::vector<std::string> objs = {"o0", "o1", "o2", "o3"};
    for (int i = 0; i < 5; ++i) {
      State before, after;
      for (const std::string &o : objs) {
        if (rng() % 2) before.insert(gf("p", {o}));
        if (rng() % 2) after.insert(gf("p", {o}));
      }
      ts.push_back(test::transition(i, before, "l", after));
    }
    LabelGroup group = test::group_of(ts);
    int base = min_pars(group);

    std::shuffle(ts.begin(), ts.end(), rng);
    CHECK(min_pars(test::group_of(ts)) == base);

    // Bijective renaming o_i -> r_i.
    auto rename_state = [](const State &s) {
      State out;
      for (GroundFact f : s) {
        for (std::string &a : f.args) a = "r" + a.substr(1);
        out.insert(f);
      }
      return out;
    };
    std::vector<Transition> renamed;
    for (const Transition &t : ts)
      renamed.push_back(test::transition(t.id, rename_state(t.before), t.label,
                                         rename_state(t.after)));
    CHECK(min_pars(test::group_of(renamed)) == base);
  }
}

TEST_CASE("trace emission round-trips") {
  DomainModel h = tiny_header();
  Trace trace = parse_trace(R"(
    (trace (:instance i7) (:objects a - object b - object)
      (:init (q a b) (flag))
      (:step (:label act) (:add (p a)) (:del (flag)))
      (:step (:label act) (:add) (:del (p a))))
  )",
                            h.signatures, h.hierarchy);
  std::string text = emit_trace(trace);
  Trace again = parse_trace(text, h.signatures, h.hierarchy);
  CHECK(again == trace);
  CHECK(emit_trace(again) == text);
}

TEST_CASE("zero-arity facts are written as (p)") {
  DomainModel h = tiny_header();
  Trace trace;
  trace.instance_id = "i1";
  trace.init = {gf("flag")};
  CHECK(emit_trace(trace).find("(:init (flag))") != std::string::npos);
}
