#ifndef STRIPSLEARN_SEXPR_HPP
#define STRIPSLEARN_SEXPR_HPP

#include <string>
#include <string_view>
#include <vector>

#include "stripslearn/errors.hpp"

namespace stripslearn::sexpr {

// Atom or list. Atoms are stored lowercased (PDDL names are
// case-insensitive). Positions are 1-based.
struct Node {
  bool is_atom = false;
  std::string atom;
  std::vector<Node> items;
  int line = 0;
  int column = 0;

  bool is_list() const { return !is_atom; }
  size_t size() const { return items.size(); }
  const Node &operator[](size_t i) const { return items[i]; }

  // True iff this is a list whose first element is the given atom.
  bool headed(std::string_view head) const {
    return is_list() && !items.empty() && items[0].is_atom &&
           items[0].atom == head;
  }
};

// Parses every top-level form in `text`. `file` is used in error messages.
std::vector<Node> read_all(std::string_view text, const std::string &file);

// Convenience: expects exactly one top-level form.
Node read_one(std::string_view text, const std::string &file);

[[noreturn]] void fail(const Node &at, const std::string &file,
                       const std::string &message);

}  // namespace stripslearn::sexpr

#endif
