#ifndef STRIPSLEARN_TEST_HELPERS_HPP
#define STRIPSLEARN_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "stripslearn/model.hpp"
#include "stripslearn/trace.hpp"

namespace test {

inline std::string data_dir() { return STRIPSLEARN_TEST_DATA_DIR; }

inline stripslearn::GroundFact gf(std::string pred,
                                  std::vector<std::string> args = {}) {
  return {std::move(pred), std::move(args)};
}

inline stripslearn::LiftedFact lf(std::string pred, std::vector<int> args = {}) {
  return {std::move(pred), std::move(args)};
}

inline stripslearn::Substitution sub(std::vector<std::string> objects) {
  return {std::move(objects)};
}

inline stripslearn::Transition transition(int id, stripslearn::State before,
                                          std::string label,
                                          stripslearn::State after,
                                          std::string instance = "i") {
  stripslearn::Transition t;
  t.id = id;
  t.instance_id = std::move(instance);
  t.before = std::move(before);
  t.label = std::move(label);
  t.after = std::move(after);
  return t;
}

inline stripslearn::LabelGroup group_of(std::vector<stripslearn::Transition> ts) {
  stripslearn::LabelGroup g;
  if (!ts.empty()) g.label = ts.front().label;
  g.transitions = std::move(ts);
  g.min_pars = stripslearn::min_pars(g);
  return g;
}

// The two-transition group from the worked single-parameter example:
// R1 = ({}, l, {p(a)}), R2 = ({p(a), p(b)}, l, {p(b)}).
inline stripslearn::LabelGroup example_group() {
  return group_of({transition(0, {}, "l", {gf("p", {"a"})}),
                   transition(1, {gf("p", {"a"}), gf("p", {"b"})}, "l",
                              {gf("p", {"b"})})});
}

}  // namespace test

#endif
