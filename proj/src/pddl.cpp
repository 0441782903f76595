#include "stripslearn/pddl.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "pddl_internal.hpp"
#include "sexpr.hpp"
#include "stripslearn/errors.hpp"

namespace stripslearn {

namespace pddl {

std::vector<TypedName> parse_typed_list(std::span<const sexpr::Node> items,
                                        const std::string &file,
                                        bool want_variables) {
  std::vector<TypedName> out;
  size_t pending_from = 0;  // first name still waiting for its type
  for (size_t i = 0; i < items.size(); ++i) {
    const sexpr::Node &node = items[i];
    if (!node.is_atom) sexpr::fail(node, file, "expected a name");
    if (node.atom == "-") {
      if (i + 1 >= items.size() || !items[i + 1].is_atom)
        sexpr::fail(node, file, "expected a type after '-'");
      if (items[i + 1].atom == "either")
        throw UnsupportedFeature(file + ": 'either' types are not supported");
      for (size_t j = pending_from; j < out.size(); ++j)
        out[j].type = items[i + 1].atom;
      pending_from = out.size();
      ++i;
      continue;
    }
    std::string name = node.atom;
    bool is_var = !name.empty() && name[0] == '?';
    if (is_var != want_variables)
      sexpr::fail(node, file,
                  want_variables ? "expected a '?variable'"
                                 : "unexpected '?variable'");
    if (is_var) name.erase(0, 1);
    if (name.empty()) sexpr::fail(node, file, "empty name");
    out.push_back({name, kRootType, &node});
  }
  return out;
}

GroundFact parse_fact(const sexpr::Node &node, const SignatureTable &sigs,
                      const std::string &file) {
  if (!node.is_list() || node.items.empty() || !node.items[0].is_atom)
    sexpr::fail(node, file, "expected a fact '(predicate args...)'");
  const std::string &pred = node.items[0].atom;
  auto sig = sigs.find(pred);
  if (sig == sigs.end())
    throw UnknownPredicate(file + ":" + std::to_string(node.line) +
                           ": unknown predicate '" + pred + "'");
  GroundFact fact;
  fact.predicate = pred;
  for (size_t i = 1; i < node.items.size(); ++i) {
    if (!node.items[i].is_atom)
      sexpr::fail(node.items[i], file, "expected an argument name");
    fact.args.push_back(node.items[i].atom);
  }
  if (static_cast<int>(fact.args.size()) != sig->second.arity())
    throw ArityMismatch(file + ":" + std::to_string(node.line) +
                        ": predicate '" + pred + "' expects " +
                        std::to_string(sig->second.arity()) +
                        " arguments, got " + std::to_string(fact.args.size()));
  return fact;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pddl

namespace {

using pddl::parse_typed_list;
using sexpr::Node;

LiftedFact parse_lifted_fact(const Node &node, const SignatureTable &sigs,
                             const std::map<std::string, int> &param_index,
                             const std::string &file) {
  if (!node.is_list() || node.items.empty() || !node.items[0].is_atom)
    sexpr::fail(node, file, "expected an atomic formula");
  const std::string &pred = node.items[0].atom;
  auto sig = sigs.find(pred);
  if (sig == sigs.end()) sexpr::fail(node, file, "unknown predicate '" + pred + "'");
  LiftedFact fact;
  fact.predicate = pred;
  for (size_t i = 1; i < node.items.size(); ++i) {
    const Node &arg = node.items[i];
    if (!arg.is_atom) sexpr::fail(arg, file, "expected an argument");
    if (arg.atom.empty() || arg.atom[0] != '?')
      throw UnsupportedFeature(
          file + ":" + std::to_string(arg.line) +
          ": constant arguments in action bodies are not supported");
    auto it = param_index.find(arg.atom.substr(1));
    if (it == param_index.end())
      sexpr::fail(arg, file, "undeclared parameter '" + arg.atom + "'");
    fact.args.push_back(it->second);
  }
  if (static_cast<int>(fact.args.size()) != sig->second.arity())
    sexpr::fail(node, file, "predicate '" + pred + "' expects " +
                                std::to_string(sig->second.arity()) +
                                " arguments");
  return fact;
}

// Flattens `(and F...)`, a single F, or `(and)` into its conjuncts.
std::vector<const Node *> conjuncts(const Node &node, const std::string &file) {
  std::vector<const Node *> out;
  if (node.headed("and")) {
    for (size_t i = 1; i < node.items.size(); ++i) out.push_back(&node.items[i]);
  } else if (node.is_list() && node.items.empty()) {
    sexpr::fail(node, file, "expected a formula, got '()'");
  } else {
    out.push_back(&node);
  }
  return out;
}

void reject_adl(const Node &node, const std::string &file,
                const char *where) {
  static const char *kAdlHeads[] = {"forall", "exists", "when",    "or",
                                    "imply",  "not",    "increase", "decrease",
                                    "assign", "=",      "oneof"};
  if (!node.is_list() || node.items.empty() || !node.items[0].is_atom) return;
  for (const char *head : kAdlHeads) {
    if (node.items[0].atom == head)
      throw UnsupportedFeature(file + ":" + std::to_string(node.line) + ": '" +
                               node.items[0].atom + "' is not supported in " +
                               where);
  }
}

ActionSchema parse_action(const Node &node, const TypeHierarchy &hierarchy,
                          const SignatureTable &sigs, const std::string &file) {
  if (node.size() < 2 || !node.items[1].is_atom)
    sexpr::fail(node, file, "expected '(:action name ...)'");
  ActionSchema schema;
  schema.name = node.items[1].atom;

  std::map<std::string, int> param_index;
  for (size_t i = 2; i < node.size(); ++i) {
    const Node &key = node.items[i];
    if (!key.is_atom || key.atom.empty() || key.atom[0] != ':')
      sexpr::fail(key, file, "expected ':parameters', ':precondition' or ':effect'");
    if (i + 1 >= node.size())
      sexpr::fail(key, file, "missing value after '" + key.atom + "'");
    const Node &value = node.items[++i];
    if (key.atom == ":parameters") {
      if (!value.is_list()) sexpr::fail(value, file, "expected a parameter list");
      for (const auto &p : parse_typed_list(value.items, file, true)) {
        if (!hierarchy.contains(p.type))
          sexpr::fail(*p.at, file, "unknown type '" + p.type + "'");
        if (param_index.count(p.name))
          sexpr::fail(*p.at, file, "duplicate parameter '?" + p.name + "'");
        param_index[p.name] = static_cast<int>(schema.params.size());
        schema.params.push_back(p.name);
        schema.param_types.push_back(p.type);
      }
    } else if (key.atom == ":precondition") {
      for (const Node *c : conjuncts(value, file)) {
        if (c->headed("not"))
          throw UnsupportedFeature(file + ":" + std::to_string(c->line) +
                                   ": negative preconditions are not supported");
        reject_adl(*c, file, "preconditions");
        schema.pre.insert(parse_lifted_fact(*c, sigs, param_index, file));
      }
    } else if (key.atom == ":effect") {
      for (const Node *c : conjuncts(value, file)) {
        if (c->headed("not")) {
          if (c->size() != 2)
            sexpr::fail(*c, file, "expected '(not (fact))'");
          reject_adl((*c)[1], file, "effects");
          schema.del.insert(parse_lifted_fact((*c)[1], sigs, param_index, file));
        } else {
          reject_adl(*c, file, "effects");
          schema.add.insert(parse_lifted_fact(*c, sigs, param_index, file));
        }
      }
    } else {
      throw UnsupportedFeature(file + ":" + std::to_string(key.line) + ": '" +
                               key.atom + "' is not supported in actions");
    }
  }
  return schema;
}

}  // namespace

DomainModel parse_domain(const std::string &text, const std::string &file) {
  Node top = sexpr::read_one(text, file);
  if (!top.headed("define") || top.size() < 2 || !top.items[1].headed("domain") ||
      top.items[1].size() != 2 || !top.items[1].items[1].is_atom)
    sexpr::fail(top, file, "expected '(define (domain name) ...)'");

  DomainModel model;
  model.name = top.items[1].items[1].atom;

  for (size_t i = 2; i < top.size(); ++i) {
    const Node &section = top.items[i];
    if (!section.is_list() || section.items.empty() || !section.items[0].is_atom)
      sexpr::fail(section, file, "expected a domain section");
    const std::string &head = section.items[0].atom;
    std::span<const Node> rest(section.items.data() + 1,
                               section.items.size() - 1);
    if (head == ":requirements") {
      for (const Node &req : rest) {
        if (!req.is_atom || (req.atom != ":strips" && req.atom != ":typing"))
          throw UnsupportedFeature(file + ":" + std::to_string(req.line) +
                                   ": requirement '" + req.atom +
                                   "' is not supported");
      }
    } else if (head == ":types") {
      for (const auto &t : parse_typed_list(rest, file, false))
        model.hierarchy.declare(t.name, t.type);
    } else if (head == ":constants") {
      for (const auto &c : parse_typed_list(rest, file, false)) {
        if (!model.hierarchy.contains(c.type))
          sexpr::fail(*c.at, file, "unknown type '" + c.type + "'");
        model.constants[c.name] = c.type;
      }
    } else if (head == ":predicates") {
      for (const Node &p : rest) {
        if (!p.is_list() || p.items.empty() || !p.items[0].is_atom)
          sexpr::fail(p, file, "expected '(predicate ?args...)'");
        PredicateSignature sig;
        sig.name = p.items[0].atom;
        std::span<const Node> args(p.items.data() + 1, p.items.size() - 1);
        for (const auto &a : parse_typed_list(args, file, true)) {
          if (!model.hierarchy.contains(a.type))
            sexpr::fail(*a.at, file, "unknown type '" + a.type + "'");
          sig.arg_types.push_back(a.type);
        }
        if (model.signatures.count(sig.name))
          sexpr::fail(p, file, "duplicate predicate '" + sig.name + "'");
        model.signatures[sig.name] = std::move(sig);
      }
    } else if (head == ":action") {
      model.schemas.push_back(
          parse_action(section, model.hierarchy, model.signatures, file));
    } else {
      throw UnsupportedFeature(file + ":" + std::to_string(section.line) +
                               ": section '" + head + "' is not supported");
    }
  }
  return model;
}

DomainModel parse_domain_file(const std::string &path) {
  return parse_domain(pddl::read_file(path), path);
}

namespace {

void emit_lifted(std::ostream &out, const LiftedFact &f,
                 const std::vector<std::string> &params) {
  out << '(' << f.predicate;
  for (int idx : f.args) out << " ?" << params.at(idx);
  out << ')';
}

}  // namespace

std::string emit_domain(const DomainModel &model) {
  std::ostringstream out;
  out << "(define (domain " << model.name << ")\n";
  out << "  (:requirements :strips :typing)\n";

  // Children grouped under their parent, parents in sorted order.
  std::map<std::string, std::vector<std::string>> by_parent;
  for (const std::string &t : model.hierarchy.types())
    if (t != kRootType) by_parent[model.hierarchy.parent(t)].push_back(t);
  if (!by_parent.empty()) {
    out << "  (:types";
    for (const auto &[parent, children] : by_parent) {
      out << "\n   ";
      for (const std::string &c : children) out << ' ' << c;
      out << " - " << parent;
    }
    out << ")\n";
  }

  if (!model.constants.empty()) {
    out << "  (:constants";
    for (const auto &[name, type] : model.constants)
      out << "\n    " << name << " - " << type;
    out << ")\n";
  }

  out << "  (:predicates";
  for (const auto &[name, sig] : model.signatures) {
    out << "\n    (" << name;
    for (size_t i = 0; i < sig.arg_types.size(); ++i)
      out << " ?v" << i << " - " << sig.arg_types[i];
    out << ')';
  }
  out << ")\n";

  for (const ActionSchema &schema : model.schemas) {
    out << "\n  (:action " << schema.name << "\n   :parameters (";
    for (int i = 0; i < schema.arity(); ++i) {
      if (i > 0) out << ' ';
      out << '?' << schema.params[i] << " - " << schema.param_types[i];
    }
    out << ")\n   :precondition (and";
    for (const LiftedFact &f : schema.pre) {
      out << ' ';
      emit_lifted(out, f, schema.params);
    }
    out << ")\n   :effect (and";
    for (const LiftedFact &f : schema.add) {
      out << ' ';
      emit_lifted(out, f, schema.params);
    }
    for (const LiftedFact &f : schema.del) {
      out << " (not ";
      emit_lifted(out, f, schema.params);
      out << ')';
    }
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

}  // namespace stripslearn
