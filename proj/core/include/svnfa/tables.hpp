#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svnfa/automaton.hpp"
#include "svnfa/exec.hpp"

namespace svnfa {

// Subset of [0, n).
struct StateSet {
  uint32_t n = 0;
  uint64_t bits = 0;  // n <= 64

  static StateSet empty(uint32_t n) { return StateSet{n, 0}; }
  bool contains(StateId q) const { return (bits >> q) & 1; }
  void insert(StateId q) { bits |= uint64_t(1) << q; }
  uint32_t size() const { return uint32_t(__builtin_popcountll(bits)); }
  bool operator==(const StateSet&) const = default;
  std::vector<StateId> members() const;
};

// Binary relation on [0, n).
struct Relation {
  uint32_t n = 0;
  std::vector<uint64_t> bits;  // n*n bits, index p*n+q

  static Relation empty(uint32_t n) {
    return Relation{n, std::vector<uint64_t>((size_t(n) * n + 63) / 64, 0)};
  }
  static Relation identity(uint32_t n);
  bool contains(StateId p, StateId q) const {
    size_t i = size_t(p) * n + q;
    return (bits[i >> 6] >> (i & 63)) & 1;
  }
  void insert(StateId p, StateId q) {
    size_t i = size_t(p) * n + q;
    bits[i >> 6] |= uint64_t(1) << (i & 63);
  }
  uint32_t size() const;
  bool operator==(const Relation&) const = default;
  bool subset_of(const Relation& o) const;
  Relation unite(const Relation& o) const;
  Relation compose(const Relation& o) const;  // {(p,q): ∃r (p,r),(r,q)}
  std::vector<std::pair<StateId, StateId>> pairs() const;  // lex sorted
  StateSet row(StateId p) const;
  StateSet column(StateId q) const;
};

// States a one-way NFA can be in after consuming u, starting from `start`.
StateSet qx_one_way(const OneWayNfa& a, const Word& u);

// States a two-way NFA can be in when first entering position |u|+1 from
// the initial configuration, staying within positions <= |u| before that.
StateSet qx_two_way(const TwoWayNfa& a, const Word& u,
                    const exec::Limits& lim = {});

// Endpoint pairs of computations that start at position |u| and first leave
// the prefix region at position |u|+1.
Relation ltable(const TwoWayNfa& a, const Word& u,
                const exec::Limits& lim = {});

struct NormalizedTwoWayNfa {
  TwoWayNfa inner;     // n+1 states
  StateId restart = 0; // index n of the source machine
};

// Adds an inaccessible restart state that rewinds to the start of the tape,
// so the ltable row of `restart` carries the qx set.
NormalizedTwoWayNfa normalize_restart(const TwoWayNfa& a);

// Replaces the left-endmarker rows by R: p moves right into q iff (p,q) in R.
TwoWayNfa with_left_table(const TwoWayNfa& a, const Relation& r);

// Frontier-revisit relations over the cell carrying `tsym` placed after u.
// t_rel counts exactly k+1 frontier visits, s_rel at most k+1; s_star is the
// stable union, reached by k = n(n-1).
Relation t_rel(const TwoWayNfa& a, const Word& u, uint32_t tsym, uint32_t k,
               const exec::Limits& lim = {});
Relation s_rel(const TwoWayNfa& a, const Word& u, uint32_t tsym, uint32_t k,
               const exec::Limits& lim = {});
Relation s_star(const TwoWayNfa& a, const Word& u, uint32_t tsym,
                const exec::Limits& lim = {});

// Same relations derived from a given ltable instead of a word prefix.
Relation t_rel_from(const TwoWayNfa& a, const Relation& lt, uint32_t tsym,
                    uint32_t k);
Relation s_rel_from(const TwoWayNfa& a, const Relation& lt, uint32_t tsym,
                    uint32_t k);
Relation s_star_from(const TwoWayNfa& a, const Relation& lt, uint32_t tsym);

// One-symbol ltable update that never looks at the word: builds the
// one-visit relation from `prev`, closes it, then applies right moves.
Relation update_ltable(const TwoWayNfa& a, const Relation& prev,
                       uint32_t tsym);

// (restart, accept) membership in the stable relation at the right endmarker.
bool accepts_via_ltables(const NormalizedTwoWayNfa& a, const Word& w,
                         const exec::Limits& lim = {});

// ASCII encodings; set -> n bits, relation -> n^2 bits, index p*n+q.
std::string encode_set(const StateSet& s);
StateSet decode_set(const std::string& bits, uint32_t n);
std::string encode_rel(const Relation& r);
Relation decode_rel(const std::string& bits, uint32_t n);

}  // namespace svnfa
