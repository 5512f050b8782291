#pragma once

#include <queue>
#include <set>
#include <tuple>
#include <string>
#include <unordered_map>
#include <vector>

#include "svnfa/automaton.hpp"
#include "svnfa/exec.hpp"

namespace svnfa {

struct CompileResult {
  TwoWayNfa machine;          // over the doubled alphabet sym/0, sym/1
  uint64_t reachable_states;  // control records discovered (pre-expansion)
  uint64_t emitted_states;    // including hop states for in-place moves
};

struct CompileLimits {
  uint64_t max_states = 5'000'000;
};

// Enumerates every control record reachable from the initial one under any
// scanned symbol and emits the explicit transition table. Zero-move steps
// become a left hop through a fresh intermediate state.
template <class VM>
CompileResult compile_explicit(const VM& vm, CompileLimits lim = {}) {
  using State = typename VM::State;
  struct KeyHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
      return exec::detail::mix64(k.first ^ exec::detail::mix64(k.second));
    }
  };
  auto key_of = [&](const State& s) {
    exec::u128 k = vm.state_key(s);
    return std::make_pair(uint64_t(k), uint64_t(k >> 64));
  };

  const uint32_t nsym = vm.num_symbols();
  std::vector<exec::Scan> scans;
  scans.push_back(exec::Scan{exec::Scan::kLend, 0, 0});
  scans.push_back(exec::Scan{exec::Scan::kRend, 0, 0});
  for (uint32_t s = 0; s < nsym; ++s)
    for (uint8_t b = 0; b < 2; ++b)
      scans.push_back(exec::Scan{exec::Scan::kSym, s, b});
  // Doubled-alphabet tape index: sym*2+bit, then endmarkers.
  auto tsym_of = [&](const exec::Scan& sc) -> uint32_t {
    if (sc.kind == exec::Scan::kLend) return nsym * 2;
    if (sc.kind == exec::Scan::kRend) return nsym * 2 + 1;
    return sc.sym * 2 + sc.bit;
  };

  std::unordered_map<std::pair<uint64_t, uint64_t>, uint32_t, KeyHash> index;
  std::vector<State> states;
  std::queue<uint32_t> work;
  auto intern = [&](const State& s) -> uint32_t {
    auto [it, fresh] = index.emplace(key_of(s), uint32_t(states.size()));
    if (fresh) {
      states.push_back(s);
      work.push(it->second);
      if (states.size() > lim.max_states) throw exec::CapExceeded();
    }
    return it->second;
  };

  struct Edge {
    uint32_t from, tsym, to;
    int8_t d;  // -1, 0, +1
  };
  std::vector<Edge> edges;
  std::vector<std::pair<State, int8_t>> succ;

  uint32_t start_idx = intern(vm.initial_state());
  int32_t accept_idx = -1, reject_idx = -1;
  while (!work.empty()) {
    uint32_t cur = work.front();
    work.pop();
    State state = states[cur];
    exec::Class cls = vm.classify(state, scans[0]);
    if (cls == exec::Class::kAccepting) accept_idx = int32_t(cur);
    if (cls == exec::Class::kRejecting) reject_idx = int32_t(cur);
    if (cls != exec::Class::kLive) continue;
    for (const auto& sc : scans) {
      succ.clear();
      exec::StepSink<State> sink{&succ};
      vm.step(state, sc, sink);
      for (auto& [ns, d] : succ)
        edges.push_back(Edge{cur, tsym_of(sc), intern(ns), d});
    }
  }

  uint64_t reachable = states.size();

  // Terminal records must exist so accept/reject are well-defined.
  auto ensure_terminal = [&](exec::Class want) -> uint32_t {
    for (uint32_t i = 0; i < states.size(); ++i)
      if (vm.classify(states[i], scans[0]) == want) return i;
    states.push_back(vm.terminal_state(want));
    return uint32_t(states.size() - 1);
  };
  uint32_t acc = accept_idx >= 0 ? uint32_t(accept_idx)
                                 : ensure_terminal(exec::Class::kAccepting);
  uint32_t rej = reject_idx >= 0 ? uint32_t(reject_idx)
                                 : ensure_terminal(exec::Class::kRejecting);

  // Expand zero moves: from -> hop(to) on L, hop(to) -> to on R under any
  // symbol. One hop state per target.
  std::unordered_map<uint32_t, uint32_t> hop;
  uint32_t total = uint32_t(states.size());
  for (auto& e : edges)
    if (e.d == 0 && !hop.count(e.to)) hop[e.to] = total++;

  TwoWayNfa out;
  out.n = total;
  const auto& src_alpha = vm.source().alphabet;
  for (uint32_t s = 0; s < nsym; ++s) {
    out.alphabet.push_back(src_alpha[s] + "/0");
    out.alphabet.push_back(src_alpha[s] + "/1");
  }
  out.start = start_idx;
  out.accept = acc;
  out.reject = rej;
  out.init_delta();
  for (auto& e : edges) {
    if (e.d == 0) {
      out.add_transition(e.from, e.tsym, hop[e.to], Dir::kLeft);
    } else {
      out.add_transition(e.from, e.tsym, e.to,
                         e.d < 0 ? Dir::kLeft : Dir::kRight);
    }
  }
  for (auto& [to, h] : hop)
    for (uint32_t t = 0; t < out.tape().count(); ++t)
      out.add_transition(h, t, to, Dir::kRight);

  CompileResult res;
  res.machine = std::move(out);
  res.reachable_states = reachable;
  res.emitted_states = total;
  return res;
}

// Words over the doubled alphabet of a compiled machine.
inline Word doubled_word(const AnnotatedWord& x) {
  Word w;
  w.reserve(x.size());
  for (const auto& s : x) w.push_back(s.input * 2 + s.bit);
  return w;
}

// Transition table restricted to the control records and scans observed
// while running the given inputs. The result decides exactly like the
// interpreted machine on those inputs; machines whose full record closure
// is too large to enumerate are cross-checked this way.
template <class VM>
CompileResult compile_observed(const VM& vm,
                               const std::vector<AnnotatedWord>& inputs,
                               CompileLimits lim = {}) {
  using State = typename VM::State;
  struct KeyHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
      return exec::detail::mix64(k.first ^ exec::detail::mix64(k.second));
    }
  };
  auto key_of = [&](const State& s) {
    exec::u128 k = vm.state_key(s);
    return std::make_pair(uint64_t(k), uint64_t(k >> 64));
  };
  const uint32_t nsym = vm.num_symbols();
  auto tsym_of = [&](const exec::Scan& sc) -> uint32_t {
    if (sc.kind == exec::Scan::kLend) return nsym * 2;
    if (sc.kind == exec::Scan::kRend) return nsym * 2 + 1;
    return sc.sym * 2 + sc.bit;
  };

  std::unordered_map<std::pair<uint64_t, uint64_t>, uint32_t, KeyHash> index;
  std::vector<State> states;
  auto intern = [&](const State& s) -> uint32_t {
    auto [it, fresh] = index.emplace(key_of(s), uint32_t(states.size()));
    if (fresh) {
      states.push_back(s);
      if (states.size() > lim.max_states) throw exec::CapExceeded();
    }
    return it->second;
  };

  struct Edge {
    uint32_t from, tsym, to;
    int8_t d;
  };
  std::vector<Edge> edges;
  std::set<std::tuple<uint32_t, uint32_t, uint32_t, int8_t>> edge_set;
  std::vector<std::pair<State, int8_t>> succ;

  uint32_t start_idx = intern(vm.initial_state());
  for (const AnnotatedWord& x : inputs) {
    exec::explore(
        vm, x, exec::initial_of(vm, x), {},
        [&](const State& s, int32_t, const exec::Scan& sc) {
          if (vm.classify(s, sc) != exec::Class::kLive) {
            intern(s);
            return false;
          }
          uint32_t from = intern(s);
          succ.clear();
          exec::StepSink<State> sink{&succ};
          vm.step(s, sc, sink);
          for (auto& [ns, d] : succ) {
            uint32_t to = intern(ns);
            if (edge_set.emplace(from, tsym_of(sc), to, d).second)
              edges.push_back(Edge{from, tsym_of(sc), to, d});
          }
          return true;
        });
  }

  uint64_t reachable = states.size();
  uint32_t acc = intern(vm.terminal_state(exec::Class::kAccepting));
  uint32_t rej = intern(vm.terminal_state(exec::Class::kRejecting));

  std::unordered_map<uint32_t, uint32_t> hop;
  uint32_t total = uint32_t(states.size());
  for (auto& e : edges)
    if (e.d == 0 && !hop.count(e.to)) hop[e.to] = total++;

  TwoWayNfa out;
  out.n = total;
  const auto& src_alpha = vm.source().alphabet;
  for (uint32_t s = 0; s < nsym; ++s) {
    out.alphabet.push_back(src_alpha[s] + "/0");
    out.alphabet.push_back(src_alpha[s] + "/1");
  }
  out.start = start_idx;
  out.accept = acc;
  out.reject = rej;
  out.init_delta();
  for (auto& e : edges) {
    if (e.d == 0)
      out.add_transition(e.from, e.tsym, hop[e.to], Dir::kLeft);
    else
      out.add_transition(e.from, e.tsym, e.to,
                         e.d < 0 ? Dir::kLeft : Dir::kRight);
  }
  for (auto& [to, h] : hop)
    for (uint32_t t = 0; t < out.tape().count(); ++t)
      out.add_transition(h, t, to, Dir::kRight);

  CompileResult res;
  res.machine = std::move(out);
  res.reachable_states = reachable;
  res.emitted_states = total;
  return res;
}

}  // namespace svnfa
