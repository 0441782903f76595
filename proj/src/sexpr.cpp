#include "sexpr.hpp"

#include <cctype>

namespace stripslearn::sexpr {

namespace {

struct Reader {
  std::string_view text;
  const std::string &file;
  size_t pos = 0;
  int line = 1;
  int column = 1;

  bool eof() const { return pos >= text.size(); }

  char peek() const { return text[pos]; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    return c;
  }

  void skip_blank() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void error(const std::string &message) const {
    throw ParseError(file, line, column, message);
  }

  Node read_node() {
    skip_blank();
    if (eof()) error("unexpected end of input");
    Node node;
    node.line = line;
    node.column = column;
    char c = peek();
    if (c == '(') {
      advance();
      node.is_atom = false;
      while (true) {
        skip_blank();
        if (eof()) error("unterminated '('");
        if (peek() == ')') {
          advance();
          return node;
        }
        node.items.push_back(read_node());
      }
    }
    if (c == ')') error("unexpected ')'");
    node.is_atom = true;
    while (!eof()) {
      char a = peek();
      if (a == '(' || a == ')' || a == ';' ||
          std::isspace(static_cast<unsigned char>(a)))
        break;
      node.atom.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(a))));
      advance();
    }
    return node;
  }
};

}  // namespace

std::vector<Node> read_all(std::string_view text, const std::string &file) {
  Reader reader{text, file};
  std::vector<Node> forms;
  while (true) {
    reader.skip_blank();
    if (reader.eof()) return forms;
    forms.push_back(reader.read_node());
  }
}

Node read_one(std::string_view text, const std::string &file) {
  std::vector<Node> forms = read_all(text, file);
  if (forms.empty()) throw ParseError(file, 1, 1, "empty input");
  if (forms.size() > 1)
    fail(forms[1], file, "expected a single top-level form");
  return std::move(forms.front());
}

void fail(const Node &at, const std::string &file,
          const std::string &message) {
  throw ParseError(file, at.line, at.column, message);
}

}  // namespace stripslearn::sexpr
