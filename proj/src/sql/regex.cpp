// Copyright 2026 The cohortq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohortq/sql/regex.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

namespace cohortq::sql {

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    auto b0 = static_cast<unsigned char>(text[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= text.size();
    for (int k = 1; ok && k < len; ++k) {
      auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (ok && len > 1) {
      static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
      if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) ok = false;
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
    } else {
      out.push_back(cp);
      i += len;
    }
  }
  return out;
}

namespace {

char32_t ascii_lower(char32_t c) { return c >= 'A' && c <= 'Z' ? c + 32 : c; }
char32_t ascii_upper(char32_t c) { return c >= 'a' && c <= 'z' ? c - 32 : c; }

struct Node {
  enum Kind { Empty, Literal, Any, Class, Concat, Alt, Star, Plus, Quest, Begin, End } kind = Empty;
  char32_t ch = 0;
  int cls = -1;
  std::vector<std::unique_ptr<Node>> kids;
};
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  return n;
}

}  // namespace

// Parses the pattern into a node tree, then emits Pike VM instructions.
class RegexCompiler {
 public:
  RegexCompiler(std::string_view pattern, Regex& out) : src_(pattern), out_(out) {}

  void run() {
    if (src_.substr(0, 4) == "(?i)") {
      out_.icase_ = true;
      pos_ = 4;
    }
    NodePtr root = alternation();
    if (pos_ < src_.size()) {
      // only a stray ')' stops alternation early
      throw RegexSyntaxError("unmatched ')' in pattern", pos_);
    }
    emit(*root);
    out_.program_.push_back({Regex::Op::Match});
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  NodePtr alternation() {
    NodePtr left = concatenation();
    while (!at_end() && peek() == '|') {
      ++pos_;
      NodePtr right = concatenation();
      NodePtr alt = make(Node::Alt);
      alt->kids.push_back(std::move(left));
      alt->kids.push_back(std::move(right));
      left = std::move(alt);
    }
    return left;
  }

  NodePtr concatenation() {
    NodePtr seq = make(Node::Concat);
    while (!at_end() && peek() != '|' && peek() != ')') seq->kids.push_back(repetition());
    if (seq->kids.empty()) return make(Node::Empty);
    if (seq->kids.size() == 1) return std::move(seq->kids.front());
    return seq;
  }

  NodePtr repetition() {
    NodePtr atom_node = atom();
    if (at_end()) return atom_node;
    char c = peek();
    if (c == '{')
      throw RegexSyntaxError("counted repetition '{m,n}' is not supported; use *, + or ?", pos_);
    if (c != '*' && c != '+' && c != '?') return atom_node;
    if (atom_node->kind == Node::Begin || atom_node->kind == Node::End)
      throw RegexSyntaxError("nothing to repeat before '" + std::string(1, c) + "'", pos_);
    ++pos_;
    if (!at_end() && (peek() == '*' || peek() == '+' || peek() == '?'))
      throw RegexSyntaxError(peek() == '?' ? "lazy quantifiers are not supported"
                                           : "multiple repeat operators",
                             pos_);
    if (!at_end() && peek() == '{')
      throw RegexSyntaxError("counted repetition '{m,n}' is not supported; use *, + or ?", pos_);
    NodePtr rep = make(c == '*' ? Node::Star : c == '+' ? Node::Plus : Node::Quest);
    rep->kids.push_back(std::move(atom_node));
    return rep;
  }

  char32_t next_code_point() {
    // decode one UTF-8 scalar starting at pos_
    std::size_t len = 1;
    auto b0 = static_cast<unsigned char>(src_[pos_]);
    if (b0 >= 0xF0) len = 4;
    else if (b0 >= 0xE0) len = 3;
    else if (b0 >= 0xC0) len = 2;
    auto decoded = decode_utf8(src_.substr(pos_, std::min(len, src_.size() - pos_)));
    pos_ += decoded.size() == 1 ? std::min(len, src_.size() - pos_) : 1;
    return decoded.empty() ? 0xFFFD : decoded.front();
  }

  NodePtr atom() {
    const std::size_t start = pos_;
    char c = peek();
    switch (c) {
      case '(': {
        ++pos_;
        if (!at_end() && peek() == '?') {
          if (src_.substr(pos_, 2) == "?:") {
            pos_ += 2;
          } else if (src_.substr(pos_, 3) == "?i)") {
            throw RegexSyntaxError("the (?i) flag is only allowed at the start of the pattern", start);
          } else {
            throw RegexSyntaxError("unsupported group syntax '(?'", start);
          }
        }
        NodePtr inner = alternation();
        if (at_end() || peek() != ')')
          throw RegexSyntaxError("missing ')': group opened here is never closed", start);
        ++pos_;
        return inner;
      }
      case ')':
        throw RegexSyntaxError("unmatched ')' in pattern", start);
      case '*':
      case '+':
      case '?':
        throw RegexSyntaxError("nothing to repeat before '" + std::string(1, c) + "'", start);
      case '{':
        throw RegexSyntaxError("counted repetition '{m,n}' is not supported; use *, + or ?", start);
      case '.':
        ++pos_;
        return make(Node::Any);
      case '^':
        ++pos_;
        return make(Node::Begin);
      case '$':
        ++pos_;
        return make(Node::End);
      case '[':
        return char_class();
      case '\\':
        return escape();
      default: {
        NodePtr lit = make(Node::Literal);
        lit->ch = next_code_point();
        return lit;
      }
    }
  }

  // Adds the ranges of a shorthand class (\d \w \s) to `cls`.
  static void add_shorthand(Regex::CharClass& cls, char which) {
    switch (which) {
      case 'd': cls.ranges.push_back({'0', '9'}); break;
      case 'w':
        cls.ranges.push_back({'0', '9'});
        cls.ranges.push_back({'A', 'Z'});
        cls.ranges.push_back({'_', '_'});
        cls.ranges.push_back({'a', 'z'});
        break;
      case 's':
        cls.ranges.push_back({'\t', '\r'});
        cls.ranges.push_back({' ', ' '});
        cls.ranges.push_back({0xA0, 0xA0});
        cls.ranges.push_back({0x1680, 0x1680});
        cls.ranges.push_back({0x2000, 0x200A});
        cls.ranges.push_back({0x2028, 0x2029});
        cls.ranges.push_back({0x202F, 0x202F});
        cls.ranges.push_back({0x205F, 0x205F});
        cls.ranges.push_back({0x3000, 0x3000});
        cls.ranges.push_back({0xFEFF, 0xFEFF});
        break;
    }
  }

  // Reads one escape inside or outside a class; returns the literal code
  // point, or 0 with `shorthand` set for \d \w \s and their negations.
  char32_t escaped_char(std::size_t start, char& shorthand) {
    ++pos_;  // backslash
    if (at_end()) throw RegexSyntaxError("pattern ends with a lone backslash", start);
    char e = peek();
    ++pos_;
    switch (e) {
      case 'd': case 'D': case 'w': case 'W': case 's': case 'S':
        shorthand = e;
        return 0;
      case 't': return '\t';
      case 'n': return '\n';
      case 'r': return '\r';
      case 'f': return '\f';
      case 'v': return '\v';
      default:
        break;
    }
    if (std::isalnum(static_cast<unsigned char>(e)))
      throw RegexSyntaxError("unsupported escape '\\" + std::string(1, e) + "'", start);
    --pos_;
    return next_code_point();
  }

  NodePtr escape() {
    const std::size_t start = pos_;
    char shorthand = 0;
    char32_t c = escaped_char(start, shorthand);
    if (!shorthand) {
      NodePtr lit = make(Node::Literal);
      lit->ch = c;
      return lit;
    }
    Regex::CharClass cls;
    add_shorthand(cls, static_cast<char>(std::tolower(shorthand)));
    cls.negated = std::isupper(static_cast<unsigned char>(shorthand));
    return class_node(std::move(cls));
  }

  NodePtr class_node(Regex::CharClass cls) {
    NodePtr n = make(Node::Class);
    n->cls = static_cast<int>(out_.classes_.size());
    out_.classes_.push_back(std::move(cls));
    return n;
  }

  NodePtr char_class() {
    const std::size_t start = pos_;
    ++pos_;  // '['
    Regex::CharClass cls;
    if (!at_end() && peek() == '^') {
      cls.negated = true;
      ++pos_;
    }
    if (!at_end() && peek() == ']') throw RegexSyntaxError("empty character class '[]'", start);
    bool closed = false;
    while (!at_end()) {
      if (peek() == ']') {
        ++pos_;
        closed = true;
        break;
      }
      const std::size_t item = pos_;
      char shorthand = 0;
      char32_t lo = peek() == '\\' ? escaped_char(item, shorthand) : next_code_point();
      if (shorthand) {
        if (std::isupper(static_cast<unsigned char>(shorthand)))
          throw RegexSyntaxError("negated shorthand inside a class is not supported", item);
        add_shorthand(cls, shorthand);
        continue;
      }
      if (!at_end() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
        ++pos_;
        const std::size_t hi_at = pos_;
        char32_t hi = peek() == '\\' ? escaped_char(hi_at, shorthand) : next_code_point();
        if (shorthand) throw RegexSyntaxError("class range ends in a shorthand escape", hi_at);
        if (hi < lo) throw RegexSyntaxError("character range is out of order", item);
        cls.ranges.push_back({lo, hi});
      } else {
        cls.ranges.push_back({lo, lo});
      }
    }
    if (!closed) throw RegexSyntaxError("missing ']': character class is never closed", start);
    return class_node(std::move(cls));
  }

  using Op = Regex::Op;

  int pc() const { return static_cast<int>(out_.program_.size()); }
  int push(Regex::Instr instr) {
    out_.program_.push_back(instr);
    return pc() - 1;
  }

  void emit(const Node& n) {
    auto& prog = out_.program_;
    switch (n.kind) {
      case Node::Empty:
        break;
      case Node::Literal:
        push({Op::Char, out_.icase_ ? ascii_lower(n.ch) : n.ch});
        break;
      case Node::Any:
        push({Op::Any});
        break;
      case Node::Class:
        push({Op::Class, 0, n.cls});
        break;
      case Node::Begin:
        push({Op::AssertBegin});
        break;
      case Node::End:
        push({Op::AssertEnd});
        break;
      case Node::Concat:
        for (const auto& k : n.kids) emit(*k);
        break;
      case Node::Alt: {
        int split = push({Op::Split});
        prog[split].x = pc();
        emit(*n.kids[0]);
        int jmp = push({Op::Jmp});
        prog[split].y = pc();
        emit(*n.kids[1]);
        prog[jmp].x = pc();
        break;
      }
      case Node::Star: {
        int split = push({Op::Split});
        prog[split].x = pc();
        emit(*n.kids[0]);
        push({Op::Jmp, 0, split});
        prog[split].y = pc();
        break;
      }
      case Node::Plus: {
        int body = pc();
        emit(*n.kids[0]);
        int split = push({Op::Split});
        prog[split].x = body;
        prog[split].y = pc();
        break;
      }
      case Node::Quest: {
        int split = push({Op::Split});
        prog[split].x = pc();
        emit(*n.kids[0]);
        prog[split].y = pc();
        break;
      }
    }
  }

  std::string_view src_;
  Regex& out_;
  std::size_t pos_ = 0;
};

Regex Regex::compile(std::string_view pattern) {
  Regex re;
  re.pattern_ = std::string(pattern);
  RegexCompiler(pattern, re).run();
  return re;
}

bool Regex::class_matches(const CharClass& cls, char32_t c) const {
  auto in = [&](char32_t x) {
    for (const auto& r : cls.ranges)
      if (x >= r.lo && x <= r.hi) return true;
    return false;
  };
  bool hit = in(c) || (icase_ && (in(ascii_lower(c)) || in(ascii_upper(c))));
  return hit != cls.negated;
}

bool Regex::search(std::string_view text) const {
  const std::u32string input = decode_utf8(text);
  const std::size_t n = program_.size();
  std::vector<int> current, next;
  current.reserve(n);
  next.reserve(n);
  std::vector<std::size_t> mark(n, static_cast<std::size_t>(-1));
  std::size_t generation = 0;
  std::vector<int> stack;

  // Follows epsilon edges from `start` at input position `i`, collecting
  // consuming instructions into `list`.  Returns true on reaching Match.
  auto add = [&](std::vector<int>& list, int start, std::size_t i) {
    stack.clear();
    stack.push_back(start);
    while (!stack.empty()) {
      int at = stack.back();
      stack.pop_back();
      if (mark[at] == generation) continue;
      mark[at] = generation;
      const Instr& ins = program_[at];
      switch (ins.op) {
        case Op::Jmp:
          stack.push_back(ins.x);
          break;
        case Op::Split:
          stack.push_back(ins.y);
          stack.push_back(ins.x);
          break;
        case Op::AssertBegin:
          if (i == 0) stack.push_back(at + 1);
          break;
        case Op::AssertEnd:
          if (i == input.size()) stack.push_back(at + 1);
          break;
        case Op::Match:
          return true;
        default:
          list.push_back(at);
      }
    }
    return false;
  };

  for (std::size_t i = 0;; ++i) {
    // Unanchored: a new thread starts at every position.
    if (add(current, 0, i)) return true;
    if (i == input.size()) return false;
    ++generation;
    next.clear();
    const char32_t c = input[i];
    const char32_t folded = icase_ ? ascii_lower(c) : c;
    for (int at : current) {
      const Instr& ins = program_[at];
      bool ok = false;
      switch (ins.op) {
        case Op::Char: ok = ins.ch == folded; break;
        case Op::Any: ok = c != '\n' && c != '\r' && c != 0x2028 && c != 0x2029; break;
        case Op::Class: ok = class_matches(classes_[ins.x], c); break;
        default: break;
      }
      if (ok && add(next, at + 1, i + 1)) return true;
    }
    std::swap(current, next);
  }
}

}  // namespace cohortq::sql
