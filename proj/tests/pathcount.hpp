#pragma once

#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "svnfa/exec.hpp"

// Counts distinct computational paths from an entry configuration to any
// exit configuration. Requires the explored region to be acyclic, which the
// fragment machines guarantee through their step counters.
template <class M, class W, class IsExit>
uint64_t count_paths(const M& m, const W& w,
                     std::pair<typename M::State, int32_t> entry,
                     IsExit&& is_exit) {
  using State = typename M::State;
  struct KeyHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
      return svnfa::exec::detail::mix64(k.first ^
                                        svnfa::exec::detail::mix64(k.second));
    }
  };
  auto key_of = [&](const State& s, int32_t pos) {
    svnfa::exec::u128 k =
        m.state_key(s) * svnfa::exec::u128(w.size() + 2) + pos;
    return std::make_pair(uint64_t(k), uint64_t(k >> 64));
  };
  enum Mark : uint8_t { kOpen = 1, kDone = 2 };
  std::unordered_map<std::pair<uint64_t, uint64_t>, std::pair<uint8_t, uint64_t>,
                     KeyHash>
      memo;
  std::vector<std::pair<State, int8_t>> succ;

  std::function<uint64_t(const State&, int32_t)> go = [&](const State& s,
                                                          int32_t pos) {
    auto key = key_of(s, pos);
    auto it = memo.find(key);
    if (it != memo.end()) {
      if (it->second.first == kOpen)
        throw std::runtime_error("cycle in fragment graph");
      return it->second.second;
    }
    memo[key] = {kOpen, 0};
    uint64_t total = 0;
    if (is_exit(s, pos)) {
      total = 1;
    } else {
      succ.clear();
      svnfa::exec::StepSink<State> sink{&succ};
      m.step(s, svnfa::exec::scan_at(w, pos), sink);
      auto local = succ;  // the recursive call reuses the shared buffer
      for (auto& [ns, d] : local) {
        int32_t np = pos + d;
        if (np < 0 || np > int32_t(w.size()) + 1) continue;
        total += go(ns, np);
      }
    }
    memo[key] = {kDone, total};
    return total;
  };
  return go(entry.first, entry.second);
}
