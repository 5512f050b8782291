#pragma once

#include <cstdint>
#include <vector>

#include "svnfa/automaton.hpp"

namespace svnfa {

// Symbol over the doubled alphabet: an input symbol plus one guessed bit.
struct AnnotatedSymbol {
  SymbolId input;
  uint8_t bit;
  bool operator==(const AnnotatedSymbol&) const = default;
};

using Word = std::vector<SymbolId>;
using AnnotatedWord = std::vector<AnnotatedSymbol>;

inline Word project_input(const AnnotatedWord& x) {
  Word w;
  w.reserve(x.size());
  for (const auto& s : x) w.push_back(s.input);
  return w;
}

inline std::vector<uint8_t> project_bits(const AnnotatedWord& x) {
  std::vector<uint8_t> b;
  b.reserve(x.size());
  for (const auto& s : x) b.push_back(s.bit);
  return b;
}

inline AnnotatedWord zip_annotation(const Word& w,
                                    const std::vector<uint8_t>& bits) {
  AnnotatedWord x;
  x.reserve(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    x.push_back(AnnotatedSymbol{w[i], bits[i]});
  return x;
}

}  // namespace svnfa
