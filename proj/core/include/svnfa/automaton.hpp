#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svnfa {

using StateId = uint32_t;
using SymbolId = uint32_t;

enum class Dir : uint8_t { kLeft, kRight };

// Tape symbol index space of a two-way automaton with k input symbols:
// 0..k-1 are input symbols, k is the left endmarker, k+1 the right one.
struct TapeIndex {
  uint32_t num_symbols;
  uint32_t lend() const { return num_symbols; }
  uint32_t rend() const { return num_symbols + 1; }
  uint32_t count() const { return num_symbols + 2; }
};

// One-way NFA with a single accepting state.
struct OneWayNfa {
  uint32_t n = 0;
  std::vector<std::string> alphabet;
  // delta[q][sym] = ascending target list
  std::vector<std::vector<std::vector<StateId>>> delta;
  StateId start = 0;
  StateId accept = 0;

  void init_delta() {
    delta.assign(n, std::vector<std::vector<StateId>>(alphabet.size()));
  }
  void add_transition(StateId p, SymbolId a, StateId q);
  const std::vector<StateId>& targets(StateId p, SymbolId a) const {
    return delta[p][a];
  }
};

// Two-way NFA over an endmarked tape. reject is optional; acceptance is
// reaching `accept` while scanning the right endmarker.
struct TwoWayNfa {
  uint32_t n = 0;
  std::vector<std::string> alphabet;  // endmarkers not included
  // delta[q][tsym] with tsym per TapeIndex; entries (target, dir)
  std::vector<std::vector<std::vector<std::pair<StateId, Dir>>>> delta;
  StateId start = 0;
  StateId accept = 0;
  std::optional<StateId> reject;

  TapeIndex tape() const { return TapeIndex{uint32_t(alphabet.size())}; }
  void init_delta() {
    delta.assign(n, std::vector<std::vector<std::pair<StateId, Dir>>>(
                        alphabet.size() + 2));
  }
  void add_transition(StateId p, uint32_t tsym, StateId q, Dir d);
  const std::vector<std::pair<StateId, Dir>>& moves(StateId p,
                                                    uint32_t tsym) const {
    return delta[p][tsym];
  }
};

// Structural well-formedness findings; empty means valid.
std::vector<std::string> validate(const OneWayNfa& a);
std::vector<std::string> validate(const TwoWayNfa& a);

// Collapses a multi-accept NFA to the single-accept form by adding a fresh
// sink accepting state. Words accepted only at the start state (i.e. the
// empty word) cannot be expressed this way; in that case `accepts` must
// contain exactly the start state for a passthrough, otherwise an error
// string is returned through `error`.
std::optional<OneWayNfa> single_accept(const OneWayNfa& a,
                                       const std::vector<StateId>& accepts,
                                       std::string* error);

SymbolId symbol_index(const std::vector<std::string>& alphabet,
                      const std::string& token);  // throws std::out_of_range

}  // namespace svnfa
