#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "svnfa/annotated.hpp"
#include "svnfa/automaton.hpp"

namespace svnfa {

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

using AnyNfa = std::variant<OneWayNfa, TwoWayNfa>;

// Canonical line-oriented text format. `#` starts a comment.
AnyNfa parse_automaton(const std::string& text);
std::string serialize(const OneWayNfa& a);
std::string serialize(const TwoWayNfa& a);

// Words: whitespace-separated symbol tokens; if that fails and every
// alphabet symbol is a single character, the string is read char by char.
Word parse_word(const std::string& text,
                const std::vector<std::string>& alphabet);
std::string format_word(const Word& w,
                        const std::vector<std::string>& alphabet);

// Annotated words are `sym/0 sym/1 ...` token lists.
AnnotatedWord parse_annotated_word(const std::string& text,
                                   const std::vector<std::string>& alphabet);
std::string format_annotated_word(const AnnotatedWord& x,
                                  const std::vector<std::string>& alphabet);

}  // namespace svnfa
