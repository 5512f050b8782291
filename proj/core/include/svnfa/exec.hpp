#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "svnfa/annotated.hpp"
#include "svnfa/automaton.hpp"

namespace svnfa::exec {

using u128 = unsigned __int128;

struct Limits {
  uint64_t max_configs = 10'000'000;
};

struct CapExceeded : std::runtime_error {
  CapExceeded() : std::runtime_error("configuration cap exceeded") {}
};

enum class Class : uint8_t { kLive, kAccepting, kRejecting, kAborting };

struct Outcome {
  bool accept_path = false;
  bool reject_path = false;
  uint64_t visited = 0;
  bool operator==(const Outcome& o) const {
    return accept_path == o.accept_path && reject_path == o.reject_path;
  }
};

// Scanned tape cell, shared by every machine the engine drives.
struct Scan {
  enum Kind : uint8_t { kSym, kLend, kRend } kind;
  SymbolId sym = 0;  // input track, valid for kSym
  uint8_t bit = 0;   // annotation track, 0 on plain tapes
};

inline Scan scan_at(const Word& w, int64_t pos) {
  if (pos == 0) return Scan{Scan::kLend, 0, 0};
  if (pos == int64_t(w.size()) + 1) return Scan{Scan::kRend, 0, 0};
  return Scan{Scan::kSym, w[pos - 1], 0};
}

inline Scan scan_at(const AnnotatedWord& w, int64_t pos) {
  if (pos == 0) return Scan{Scan::kLend, 0, 0};
  if (pos == int64_t(w.size()) + 1) return Scan{Scan::kRend, 0, 0};
  return Scan{Scan::kSym, w[pos - 1].input, w[pos - 1].bit};
}

// Successor sink passed to machine step functions. dpos in {-1, 0, +1}.
template <class State>
struct StepSink {
  std::vector<std::pair<State, int8_t>>* out;
  void push(const State& s, int dpos) {
    out->emplace_back(s, int8_t(dpos));
  }
};

namespace detail {

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Open-addressing set of 128-bit keys (hi,lo), linear probing.
class KeySet {
 public:
  explicit KeySet(size_t initial = 1 << 12) { rehash(initial); }

  bool insert(u128 key) {
    if (size_ * 10 >= cap_ * 6) rehash(cap_ * 2);
    uint64_t lo = uint64_t(key), hi = uint64_t(key >> 64);
    size_t idx = probe(lo, hi);
    if (used_[idx]) return false;
    used_[idx] = 1;
    lo_[idx] = lo;
    hi_[idx] = hi;
    ++size_;
    return true;
  }

  size_t size() const { return size_; }

 private:
  size_t probe(uint64_t lo, uint64_t hi) const {
    size_t mask = cap_ - 1;
    size_t idx = mix64(lo ^ mix64(hi)) & mask;
    while (used_[idx] && (lo_[idx] != lo || hi_[idx] != hi))
      idx = (idx + 1) & mask;
    return idx;
  }

  void rehash(size_t new_cap) {
    std::vector<uint64_t> old_lo = std::move(lo_), old_hi = std::move(hi_);
    std::vector<uint8_t> old_used = std::move(used_);
    cap_ = new_cap;
    lo_.assign(cap_, 0);
    hi_.assign(cap_, 0);
    used_.assign(cap_, 0);
    size_ = 0;
    for (size_t i = 0; i < old_used.size(); ++i)
      if (old_used[i]) {
        size_t idx = probe(old_lo[i], old_hi[i]);
        used_[idx] = 1;
        lo_[idx] = old_lo[i];
        hi_[idx] = old_hi[i];
        ++size_;
      }
  }

  size_t cap_ = 0, size_ = 0;
  std::vector<uint64_t> lo_, hi_;
  std::vector<uint8_t> used_;
};

}  // namespace detail

// Exhaustive forward closure of the configuration graph. `visit` is called
// once per configuration and returns false to suppress expansion. The word
// type only needs a scan_at overload.
template <class M, class W, class Visit>
uint64_t explore(const M& m, const W& w,
                 std::vector<std::pair<typename M::State, int32_t>> initial,
                 const Limits& lim, Visit&& visit) {
  using State = typename M::State;
  const int64_t len = int64_t(w.size());
  detail::KeySet seen;
  std::vector<std::pair<State, int32_t>> frontier, next;
  std::vector<std::pair<State, int8_t>> succ;
  uint64_t visited = 0;

  auto key_of = [&](const State& s, int32_t pos) -> u128 {
    return m.state_key(s) * u128(len + 2) + u128(pos);
  };

  for (auto& [s, pos] : initial)
    if (seen.insert(key_of(s, pos))) frontier.emplace_back(s, pos);

  while (!frontier.empty()) {
    next.clear();
    for (auto& [state, pos] : frontier) {
      ++visited;
      if (visited > lim.max_configs) throw CapExceeded();
      Scan sc = scan_at(w, pos);
      if (!visit(state, pos, sc)) continue;
      succ.clear();
      StepSink<State> sink{&succ};
      m.step(state, sc, sink);
      for (auto& [ns, dpos] : succ) {
        int32_t npos = pos + dpos;
        if (npos < 0 || npos > len + 1) continue;
        if (seen.insert(key_of(ns, npos))) next.emplace_back(ns, npos);
      }
    }
    frontier.swap(next);
  }
  return visited;
}

template <class M, class W>
std::vector<std::pair<typename M::State, int32_t>> initial_of(const M& m,
                                                              const W&) {
  return {{m.initial_state(), m.initial_pos()}};
}

// Does any initial computational path reach an accepting (resp. rejecting)
// configuration? Exact; loops are handled by the visited set.
template <class M, class W>
Outcome decide(const M& m, const W& w, const Limits& lim = {}) {
  Outcome out;
  out.visited = explore(
      m, w, initial_of(m, w), lim,
      [&](const typename M::State& s, int32_t, const Scan& sc) {
        switch (m.classify(s, sc)) {
          case Class::kAccepting:
            out.accept_path = true;
            return false;
          case Class::kRejecting:
            out.reject_path = true;
            return false;
          case Class::kAborting:
            return false;
          case Class::kLive:
            return true;
        }
        return true;
      });
  return out;
}

// All reachable configurations, for oracles and instrumented checks.
template <class M, class W>
std::vector<std::pair<typename M::State, int32_t>> reachable_configs(
    const M& m, const W& w, const Limits& lim = {}) {
  std::vector<std::pair<typename M::State, int32_t>> out;
  explore(m, w, initial_of(m, w), lim,
          [&](const typename M::State& s, int32_t pos, const Scan& sc) {
            out.emplace_back(s, pos);
            return m.classify(s, sc) == Class::kLive;
          });
  return out;
}

// Plain two-way NFA as an engine machine. Acceptance: `accept` scanning the
// right endmarker; rejection likewise via the optional reject state.
class TwoWayNfaMachine {
 public:
  using State = StateId;

  explicit TwoWayNfaMachine(const TwoWayNfa& a) : a_(&a) {}

  State initial_state() const { return a_->start; }
  int initial_pos() const { return 1; }

  void step(const State& q, const Scan& sc, StepSink<State>& sink) const {
    uint32_t tsym = sc.kind == Scan::kLend   ? a_->tape().lend()
                    : sc.kind == Scan::kRend ? a_->tape().rend()
                                             : sc.sym;
    for (auto [r, d] : a_->moves(q, tsym))
      sink.push(r, d == Dir::kLeft ? -1 : +1);
  }

  Class classify(const State& q, const Scan& sc) const {
    if (sc.kind == Scan::kRend) {
      if (q == a_->accept) return Class::kAccepting;
      if (a_->reject && q == *a_->reject) return Class::kRejecting;
    }
    return Class::kLive;
  }

  u128 state_key(const State& q) const { return q; }
  u128 state_key_bound() const { return a_->n; }

 private:
  const TwoWayNfa* a_;
};

}  // namespace svnfa::exec
