#include "svnfa/automaton.hpp"

#include <algorithm>
#include <stdexcept>

namespace svnfa {

void OneWayNfa::add_transition(StateId p, SymbolId a, StateId q) {
  auto& row = delta.at(p).at(a);
  auto it = std::lower_bound(row.begin(), row.end(), q);
  if (it == row.end() || *it != q) row.insert(it, q);
}

void TwoWayNfa::add_transition(StateId p, uint32_t tsym, StateId q, Dir d) {
  auto& row = delta.at(p).at(tsym);
  auto entry = std::make_pair(q, d);
  auto it = std::find(row.begin(), row.end(), entry);
  if (it == row.end()) {
    row.push_back(entry);
    std::sort(row.begin(), row.end());
  }
}

std::vector<std::string> validate(const OneWayNfa& a) {
  std::vector<std::string> out;
  if (a.alphabet.empty()) out.push_back("alphabet nonempty");
  if (a.n == 0) out.push_back("state count must be positive");
  if (a.start >= a.n) out.push_back("start out of range");
  if (a.accept >= a.n) out.push_back("accept out of range");
  if (a.delta.size() != a.n) out.push_back("delta row count mismatch");
  for (size_t p = 0; p < a.delta.size(); ++p) {
    if (a.delta[p].size() != a.alphabet.size()) {
      out.push_back("delta column count mismatch");
      continue;
    }
    for (const auto& row : a.delta[p])
      for (StateId q : row)
        if (q >= a.n) out.push_back("target out of range");
  }
  return out;
}

std::vector<std::string> validate(const TwoWayNfa& a) {
  std::vector<std::string> out;
  if (a.alphabet.empty()) out.push_back("alphabet nonempty");
  if (a.n == 0) out.push_back("state count must be positive");
  if (a.start >= a.n) out.push_back("start out of range");
  if (a.accept >= a.n) out.push_back("accept out of range");
  if (a.reject) {
    if (*a.reject >= a.n) out.push_back("reject out of range");
    if (*a.reject == a.accept) out.push_back("accept equals reject");
  }
  if (a.delta.size() != a.n) out.push_back("delta row count mismatch");
  for (size_t p = 0; p < a.delta.size(); ++p) {
    if (a.delta[p].size() != a.alphabet.size() + 2) {
      out.push_back("delta column count mismatch");
      continue;
    }
    for (const auto& row : a.delta[p])
      for (auto [q, d] : row)
        if (q >= a.n) out.push_back("target out of range");
  }
  return out;
}

std::optional<OneWayNfa> single_accept(const OneWayNfa& a,
                                       const std::vector<StateId>& accepts,
                                       std::string* error) {
  auto is_accept = [&](StateId q) {
    return std::find(accepts.begin(), accepts.end(), q) != accepts.end();
  };
  if (accepts.size() == 1) {
    OneWayNfa out = a;
    out.accept = accepts[0];
    return out;
  }
  if (is_accept(a.start)) {
    if (error)
      *error = "start state accepts the empty word; no single-accept form "
               "without epsilon transitions";
    return std::nullopt;
  }
  OneWayNfa out = a;
  out.n = a.n + 1;
  out.init_delta();
  StateId sink = a.n;
  for (StateId p = 0; p < a.n; ++p)
    for (SymbolId s = 0; s < a.alphabet.size(); ++s)
      for (StateId q : a.targets(p, s)) {
        out.add_transition(p, s, q);
        if (is_accept(q)) out.add_transition(p, s, sink);
      }
  out.accept = sink;
  return out;
}

SymbolId symbol_index(const std::vector<std::string>& alphabet,
                      const std::string& token) {
  for (size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == token) return SymbolId(i);
  throw std::out_of_range("unknown symbol: " + token);
}

}  // namespace svnfa
