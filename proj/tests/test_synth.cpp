#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "stripslearn/errors.hpp"
#include "stripslearn/synth.hpp"

using namespace stripslearn;
using test::gf;
using test::lf;

namespace {

InstanceObjects objects_of(const std::string &instance,
                           std::set<std::string> objs) {
  InstanceObjects out;
  out[instance] = std::move(objs);
  return out;
}

// Schema with only effects, parameters x1..xk of type object.
ActionSchema effects_only(const std::string &name, int k,
                          std::set<LiftedFact> add, std::set<LiftedFact> del) {
  ActionSchema schema;
  schema.name = name;
  for (int i = 0; i < k; ++i) {
    schema.params.push_back("x" + std::to_string(i + 1));
    schema.param_types.emplace_back(kRootType);
  }
  schema.add = std::move(add);
  schema.del = std::move(del);
  return schema;
}

}  // namespace

TEST_CASE("single-parameter example: k=1 fails, k=2 explains") {
  LabelGroup group = test::example_group();
  InstanceObjects objects = objects_of("i", {"a", "b"});
  REQUIRE(group.min_pars == 1);

  LabelSynthesizer at_one(group, objects, 1);
  CHECK_FALSE(at_one.run());

  LabelOutcome outcome = synth_label_engine(group, objects);
  const EffectSolution &solution = outcome.solution;
  CHECK(solution.k == 2);
  REQUIRE(solution.add_set.size() == 1);
  REQUIRE(solution.del_set.size() == 1);
  const LiftedFact &add = *solution.add_set.begin();
  const LiftedFact &del = *solution.del_set.begin();
  CHECK(add.predicate == "p");
  CHECK(del.predicate == "p");
  REQUIRE(add.args.size() == 1);
  REQUIRE(del.args.size() == 1);
  // Up to parameter renaming: the add and del parameters differ, and
  // the substitutions swap a and b between the two transitions.
  int ap = add.args[0], dp = del.args[0];
  CHECK(ap != dp);
  const Substitution &s1 = solution.substitutions.at(0);
  const Substitution &s2 = solution.substitutions.at(1);
  CHECK(s1[ap] == "a");
  CHECK(s1[dp] == "b");
  CHECK(s2[ap] == "b");
  CHECK(s2[dp] == "a");

  ActionSchema schema =
      effects_only("l", 2, solution.add_set, solution.del_set);
  CHECK(check_witness(schema, solution.substitutions, group));
  CHECK(outcome.engine->solution_is_subset_minimal());
}

TEST_CASE("all-empty-delta group synthesizes a 0-parameter no-op") {
  LabelGroup group = test::group_of(
      {test::transition(0, {gf("p", {"a"})}, "noop", {gf("p", {"a"})}),
       test::transition(1, {}, "noop", {})});
  EffectSolution solution =
      synth_label(group, objects_of("i", {"a"}));
  CHECK(solution.k == 0);
  CHECK(solution.add_set.empty());
  CHECK(solution.del_set.empty());
  CHECK(solution.substitutions.size() == 2);
}

TEST_CASE("single transition to q(a,b): one minimal add effect") {
  LabelGroup group =
      test::group_of({test::transition(0, {}, "l", {gf("q", {"a", "b"})})});
  InstanceObjects objects = objects_of("i", {"a", "b"});
  REQUIRE(group.min_pars == 2);

  // Oracle: enumerate every set of lifted adds over two parameters and
  // keep the minimal ones that explain {} -> {q(a,b)} under some
  // substitution into {a,b}.
  std::vector<LiftedFact> all_adds = {lf("q", {0, 0}), lf("q", {0, 1}),
                                      lf("q", {1, 0}), lf("q", {1, 1})};
  std::vector<std::set<LiftedFact>> explaining;
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::set<LiftedFact> adds;
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) adds.insert(all_adds[static_cast<size_t>(i)]);
    bool works = false;
    for (const char *o1 : {"a", "b"})
      for (const char *o2 : {"a", "b"}) {
        Substitution s = test::sub({o1, o2});
        State result;
        bool consistent = true;
        for (const LiftedFact &f : adds) {
          GroundFact g = ground(f, s);
          if (g != gf("q", {"a", "b"})) consistent = false;
          result.insert(g);
        }
        if (consistent && result == State{gf("q", {"a", "b"})}) works = true;
      }
    if (works) explaining.push_back(adds);
  }
  std::vector<std::set<LiftedFact>> minimal;
  for (const auto &s : explaining) {
    bool has_smaller = false;
    for (const auto &other : explaining)
      if (other != s &&
          std::includes(s.begin(), s.end(), other.begin(), other.end()))
        has_smaller = true;
    if (!has_smaller) minimal.push_back(s);
  }
  // Exactly the two single-effect explanations q(x1,x2) and q(x2,x1).
  REQUIRE(minimal.size() == 2);
  for (const auto &s : minimal) CHECK(s.size() == 1);

  EffectSolution solution = synth_label(group, objects);
  CHECK(solution.k == 2);
  CHECK(solution.del_set.empty());
  CHECK(std::count(minimal.begin(), minimal.end(), solution.add_set) == 1);
  CHECK(ground(*solution.add_set.begin(), solution.substitutions.at(0)) ==
        gf("q", {"a", "b"}));
}

TEST_CASE("encode_transition") {
  InstanceObjects objects = objects_of("i", {"a", "b"});

  SUBCASE("explaining one addition at k=1 forces effect and binding") {
    LabelGroup group =
        test::group_of({test::transition(0, {}, "l", {gf("p", {"a"})})});
    LabelSynthesizer syn(group, objects, 1);
    syn.encode_transition(group.transitions[0]);
    syn.commit(group.transitions[0]);
    REQUIRE(syn.context().solve() == SolveResult::Sat);
    VarId add = *syn.registry().find_effect(EffectKey{true, "p", {0}});
    VarId bind = *syn.registry().find_bind(0, 0, "a");
    CHECK(syn.context().model_value(add));
    CHECK(syn.context().model_value(bind));
    CHECK_THROWS_AS(syn.encode_transition(group.transitions[0]),
                    std::logic_error);
  }

  SUBCASE("a no-change transition only constrains bindings") {
    LabelGroup group = test::group_of(
        {test::transition(0, {gf("p", {"a"})}, "l", {gf("p", {"a"})})});
    LabelSynthesizer syn(group, objects, 1);
    syn.encode_transition(group.transitions[0]);
    syn.commit(group.transitions[0]);
    CHECK(syn.registry().effect_vars().empty());
    REQUIRE(syn.context().solve() == SolveResult::Sat);
    int bound = syn.context().model_value(*syn.registry().find_bind(0, 0, "a")) +
                syn.context().model_value(*syn.registry().find_bind(0, 0, "b"));
    CHECK(bound == 1);
  }

  SUBCASE("q(a,b) at k=2 creates all four vectors, feasible routes only") {
    LabelGroup group =
        test::group_of({test::transition(0, {}, "l", {gf("q", {"a", "b"})})});
    LabelSynthesizer syn(group, objects, 2);
    syn.encode_transition(group.transitions[0]);
    syn.commit(group.transitions[0]);
    // k^arity = 4 effect variables exist.
    CHECK(syn.registry().effect_vars().size() == 4);
    VarId xx = *syn.registry().find_effect(EffectKey{true, "q", {0, 0}});
    VarId xy = *syn.registry().find_effect(EffectKey{true, "q", {0, 1}});
    VarId yx = *syn.registry().find_effect(EffectKey{true, "q", {1, 0}});
    VarId yy = *syn.registry().find_effect(EffectKey{true, "q", {1, 1}});
    // Repeated-parameter vectors cannot ground to q(a,b): forcing them
    // as the only allowed effects is unsatisfiable.
    CHECK(syn.context().solve({xx, -xy, -yx, -yy}) == SolveResult::Unsat);
    CHECK(syn.context().solve({-xx, -xy, -yx, yy}) == SolveResult::Unsat);
    REQUIRE(syn.context().solve({-xx, xy, -yx, -yy}) == SolveResult::Sat);
    CHECK(syn.context().model_value(*syn.registry().find_bind(0, 0, "a")));
    CHECK(syn.context().model_value(*syn.registry().find_bind(0, 1, "b")));
  }

  SUBCASE("zero objects with k > 0 is an error") {
    LabelGroup group = test::group_of({test::transition(0, {}, "l", {})});
    LabelSynthesizer syn(group, InstanceObjects{}, 1);
    CHECK_THROWS_AS(syn.encode_transition(group.transitions[0]),
                    NoCandidateObjects);
  }
}

TEST_CASE("consistency_clause shapes") {
  CHECK(consistency_clause(5, {7, 9}) == std::vector<Lit>{-5, -7, -9});
  CHECK(consistency_clause(5, {}) == std::vector<Lit>{-5});  // zero arity
  CHECK(consistency_clause(5, {7, 7}) == std::vector<Lit>{-5, -7});
}

TEST_CASE("verify") {
  SUBCASE("an add effect binds to the observed addition") {
    LabelGroup group =
        test::group_of({test::transition(0, {}, "l", {gf("p", {"a"})})});
    LabelSynthesizer syn(group, objects_of("i", {"a"}), 1);
    syn.encode_transition(group.transitions[0]);
    VarId add = syn.registry().effect_var(syn.context(), {true, "p", {0}});
    auto result = syn.verify({add}, group.transitions[0]);
    REQUIRE(std::holds_alternative<Substitution>(result));
    CHECK(std::get<Substitution>(result).objects ==
          std::vector<std::string>{"a"});
  }

  SUBCASE("an asserted add against a no-change transition offends") {
    // Every binding grounds p(x1) to an unobserved addition; the
    // blocking clauses exhaust all candidates and the check goes unsat.
    LabelGroup group = test::group_of(
        {test::transition(0, {gf("q", {"a"})}, "l", {gf("q", {"a"})})});
    LabelSynthesizer syn(group, objects_of("i", {"a", "b"}), 1);
    syn.encode_transition(group.transitions[0]);
    VarId add = syn.registry().effect_var(syn.context(), {true, "p", {0}});
    auto result = syn.verify({add}, group.transitions[0]);
    REQUIRE(std::holds_alternative<Offense>(result));
    const Offense &off = std::get<Offense>(result);
    CHECK(off.transition == 0);
    CHECK(off.kind == OffenseKind::InconsistentEffect);
    CHECK(off.detail.predicate == "p");
  }

  SUBCASE("second example transition recovers the swapped binding") {
    LabelGroup group = test::example_group();
    LabelSynthesizer syn(group, objects_of("i", {"a", "b"}), 2);
    syn.encode_transition(group.transitions[1]);
    VarId add = syn.registry().effect_var(syn.context(), {true, "p", {0}});
    VarId del = syn.registry().effect_var(syn.context(), {false, "p", {1}});
    auto result = syn.verify({add, del}, group.transitions[1]);
    REQUIRE(std::holds_alternative<Substitution>(result));
    CHECK(std::get<Substitution>(result).objects ==
          std::vector<std::string>{"b", "a"});
  }
}

TEST_CASE("check_witness") {
  LabelGroup group = test::example_group();
  ActionSchema schema =
      effects_only("l", 2, {lf("p", {0})}, {lf("p", {1})});
  std::map<int, Substitution> subs = {{0, test::sub({"a", "b"})},
                                      {1, test::sub({"b", "a"})}};
  CHECK(check_witness(schema, subs, group));

  SUBCASE("swapping one substitution breaks it") {
    subs[1] = test::sub({"a", "b"});
    CHECK_FALSE(check_witness(schema, subs, group));
  }
  SUBCASE("empty effects cannot explain a change") {
    ActionSchema empty = effects_only("l", 2, {}, {});
    CHECK_FALSE(check_witness(empty, subs, group));
  }
  SUBCASE("missing substitution fails") {
    subs.erase(1);
    CHECK_FALSE(check_witness(schema, subs, group));
  }
  SUBCASE("violated precondition fails") {
    schema.pre.insert(lf("p", {0}));  // p(a) not in R1's empty before-state
    CHECK_FALSE(check_witness(schema, subs, group));
  }
}

TEST_CASE("planted schemas are recovered at their parameter count") {
  std::mt19937_64 rng(23);
  std::vector<std::string> objs = {"o1", "o2", "o3", "o4"};
  for (int trial = 0; trial < 40; ++trial) {
    int k = 1 + static_cast<int>(rng() % 3);
    ActionSchema planted = effects_only("act", k, {}, {});
    std::vector<LiftedFact> pool;
    for (int i = 0; i < k; ++i) {
      pool.push_back(lf("p", {i}));
      for (int j = 0; j < k; ++j) pool.push_back(lf("q", {i, j}));
    }
    for (const LiftedFact &f : pool) {
      if (rng() % 4 == 0) planted.add.insert(f);
      else if (rng() % 4 == 0) planted.del.insert(f);
    }
    if (planted.add.empty() && planted.del.empty())
      planted.add.insert(lf("p", {0}));

    // Sample transitions: a state containing the grounded deletes (so
    // deletions are observable) and excluding the grounded adds (so the
    // encoding's strict reading of effects holds on every sample).
    std::vector<Transition> ts;
    for (int i = 0; i < 6; ++i) {
      Substitution s;
      for (int p = 0; p < k; ++p)
        s.objects.push_back(objs[rng() % objs.size()]);
      State before;
      bool degenerate = false;
      for (const LiftedFact &f : planted.del) before.insert(ground(f, s));
      for (const LiftedFact &f : planted.add)
        if (before.count(ground(f, s))) degenerate = true;
      if (degenerate) continue;
      for (const std::string &o : objs)
        if (rng() % 3 == 0) {
          GroundFact extra = gf("r", {o});
          before.insert(extra);
        }
      State after = apply(before, planted, s);
      ts.push_back(test::transition(static_cast<int>(ts.size()), before,
                                    "act", after));
    }
    if (ts.empty()) continue;
    LabelGroup group = test::group_of(ts);
    InstanceObjects objects = objects_of("i", {objs.begin(), objs.end()});

    // Completeness: the planted parameter count always suffices.
    LabelSynthesizer at_k(group, objects, k);
    CHECK(at_k.run());

    LabelOutcome outcome = synth_label_engine(group, objects);
    CHECK(outcome.solution.k <= k);
    ActionSchema learned = effects_only("act", outcome.solution.k,
                                        outcome.solution.add_set,
                                        outcome.solution.del_set);
    CHECK(check_witness(learned, outcome.solution.substitutions, group));
    CHECK(outcome.engine->solution_is_subset_minimal());
  }
}

TEST_CASE("duplicate transitions share verification but keep their ids") {
  LabelGroup group = test::group_of(
      {test::transition(0, {}, "l", {gf("p", {"a"})}),
       test::transition(1, {}, "l", {gf("p", {"a"})}),
       test::transition(2, {}, "l", {gf("p", {"a"})})});
  EffectSolution solution = synth_label(group, objects_of("i", {"a"}));
  CHECK(solution.substitutions.size() == 3);
  for (int id : {0, 1, 2})
    CHECK(solution.substitutions.at(id).objects ==
          std::vector<std::string>{"a"});
}

TEST_CASE("synthesis is deterministic") {
  LabelGroup group = test::example_group();
  InstanceObjects objects = objects_of("i", {"a", "b"});
  EffectSolution first = synth_label(group, objects);
  EffectSolution second = synth_label(group, objects);
  CHECK(first.k == second.k);
  CHECK(first.add_set == second.add_set);
  CHECK(first.del_set == second.del_set);
  CHECK(first.substitutions == second.substitutions);
  CHECK(first.encoded_set == second.encoded_set);
}

TEST_CASE("an add/del conflict over a single object exhausts the budget") {
  // With one object every parameter binds to a; an addition in one
  // transition and a deletion in the other can never both ground
  // consistently, no matter how many parameters are allowed.
  LabelGroup group =
      test::group_of({test::transition(0, {}, "l", {gf("p", {"a"})}),
                      test::transition(1, {gf("p", {"a"})}, "l", {})});
  try {
    (void)synth_label(group, objects_of("i", {"a"}));
    FAIL("expected ParamBudgetExceeded");
  } catch (const ParamBudgetExceeded &e) {
    CHECK(e.last_k == group.min_pars + 3);
  }
}

TEST_CASE("an expired deadline aborts synthesis") {
  LabelGroup group = test::example_group();
  SynthLimits limits;
  limits.deadline =
      std::chrono::steady_clock::now() - std::chrono::milliseconds(1);
  CHECK_THROWS_AS(
      (void)synth_label(group, objects_of("i", {"a", "b"}), limits),
      TimeLimit);
}

TEST_CASE("joint growth is reported through the encoded set") {
  LabelGroup group = test::example_group();
  LabelOutcome outcome =
      synth_label_engine(group, objects_of("i", {"a", "b"}));
  // Both example transitions end up jointly encoded: the second one
  // cannot be explained by any solution found for the first alone.
  CHECK(outcome.solution.encoded_set == std::set<int>{0, 1});
  CHECK(outcome.engine->offenses() >= 1);
}
