#include "svnfa/tables.hpp"

#include <cassert>
#include <stdexcept>

namespace svnfa {

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < n; ++q)
    if (contains(q)) out.push_back(q);
  return out;
}

Relation Relation::identity(uint32_t n) {
  Relation r = empty(n);
  for (StateId p = 0; p < n; ++p) r.insert(p, p);
  return r;
}

uint32_t Relation::size() const {
  uint32_t c = 0;
  for (uint64_t word : bits) c += uint32_t(__builtin_popcountll(word));
  return c;
}

bool Relation::subset_of(const Relation& o) const {
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & ~o.bits[i]) return false;
  return true;
}

Relation Relation::unite(const Relation& o) const {
  Relation r = *this;
  for (size_t i = 0; i < bits.size(); ++i) r.bits[i] |= o.bits[i];
  return r;
}

Relation Relation::compose(const Relation& o) const {
  Relation r = empty(n);
  for (StateId p = 0; p < n; ++p)
    for (StateId m = 0; m < n; ++m)
      if (contains(p, m))
        for (StateId q = 0; q < n; ++q)
          if (o.contains(m, q)) r.insert(p, q);
  return r;
}

std::vector<std::pair<StateId, StateId>> Relation::pairs() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q)
      if (contains(p, q)) out.emplace_back(p, q);
  return out;
}

StateSet Relation::row(StateId p) const {
  StateSet s = StateSet::empty(n);
  for (StateId q = 0; q < n; ++q)
    if (contains(p, q)) s.insert(q);
  return s;
}

StateSet Relation::column(StateId q) const {
  StateSet s = StateSet::empty(n);
  for (StateId p = 0; p < n; ++p)
    if (contains(p, q)) s.insert(p);
  return s;
}

StateSet qx_one_way(const OneWayNfa& a, const Word& u) {
  StateSet cur = StateSet::empty(a.n);
  cur.insert(a.start);
  for (SymbolId s : u) {
    StateSet next = StateSet::empty(a.n);
    for (StateId q : cur.members())
      for (StateId r : a.targets(q, s)) next.insert(r);
    cur = next;
  }
  return cur;
}

StateSet qx_two_way(const TwoWayNfa& a, const Word& u,
                    const exec::Limits& lim) {
  StateSet out = StateSet::empty(a.n);
  exec::TwoWayNfaMachine m(a);
  const int32_t frontier = int32_t(u.size()) + 1;
  exec::explore(m, u, exec::initial_of(m, u), lim,
                [&](const StateId& q, int32_t pos, const exec::Scan&) {
                  if (pos == frontier) {
                    out.insert(q);
                    return false;
                  }
                  return true;
                });
  return out;
}

Relation ltable(const TwoWayNfa& a, const Word& u, const exec::Limits& lim) {
  Relation out = Relation::empty(a.n);
  exec::TwoWayNfaMachine m(a);
  const int32_t frontier = int32_t(u.size()) + 1;
  for (StateId p = 0; p < a.n; ++p) {
    std::vector<std::pair<StateId, int32_t>> init = {
        {p, int32_t(u.size())}};
    exec::explore(m, u, init, lim,
                  [&](const StateId& q, int32_t pos, const exec::Scan&) {
                    if (pos == frontier) {
                      out.insert(p, q);
                      return false;
                    }
                    return true;
                  });
  }
  return out;
}

NormalizedTwoWayNfa normalize_restart(const TwoWayNfa& a) {
  NormalizedTwoWayNfa out;
  TwoWayNfa& b = out.inner;
  b.n = a.n + 1;
  b.alphabet = a.alphabet;
  b.start = a.start;
  b.accept = a.accept;
  b.reject = a.reject;
  b.init_delta();
  auto tape = a.tape();
  for (StateId p = 0; p < a.n; ++p)
    for (uint32_t t = 0; t < tape.count(); ++t)
      for (auto [q, d] : a.moves(p, t)) b.add_transition(p, t, q, d);
  StateId restart = a.n;
  for (SymbolId s = 0; s < a.alphabet.size(); ++s)
    b.add_transition(restart, s, restart, Dir::kLeft);
  b.add_transition(restart, tape.rend(), restart, Dir::kLeft);
  b.add_transition(restart, tape.lend(), a.start, Dir::kRight);
  out.restart = restart;
  return out;
}

TwoWayNfa with_left_table(const TwoWayNfa& a, const Relation& r) {
  if (r.n != a.n) throw std::invalid_argument("relation size mismatch");
  TwoWayNfa out = a;
  uint32_t lend = a.tape().lend();
  for (StateId p = 0; p < a.n; ++p) {
    out.delta[p][lend].clear();
    for (StateId q = 0; q < a.n; ++q)
      if (r.contains(p, q)) out.add_transition(p, lend, q, Dir::kRight);
  }
  return out;
}

Relation t_rel_from(const TwoWayNfa& a, const Relation& lt, uint32_t tsym,
                    uint32_t k) {
  Relation cur = Relation::identity(a.n);
  for (uint32_t step = 0; step < k; ++step) {
    Relation next = Relation::empty(a.n);
    for (StateId p = 0; p < a.n; ++p)
      for (StateId qs = 0; qs < a.n; ++qs) {
        if (!cur.contains(p, qs)) continue;
        for (auto [r, d] : a.moves(qs, tsym)) {
          if (d != Dir::kLeft) continue;
          for (StateId q = 0; q < a.n; ++q)
            if (lt.contains(r, q)) next.insert(p, q);
        }
      }
    cur = next;
  }
  return cur;
}

Relation s_rel_from(const TwoWayNfa& a, const Relation& lt, uint32_t tsym,
                    uint32_t k) {
  // T^{j+1} from T^j, accumulating the union.
  Relation acc = Relation::identity(a.n);
  Relation cur = Relation::identity(a.n);
  for (uint32_t j = 0; j < k; ++j) {
    Relation next = Relation::empty(a.n);
    for (StateId p = 0; p < a.n; ++p)
      for (StateId qs = 0; qs < a.n; ++qs) {
        if (!cur.contains(p, qs)) continue;
        for (auto [r, d] : a.moves(qs, tsym)) {
          if (d != Dir::kLeft) continue;
          for (StateId q = 0; q < a.n; ++q)
            if (lt.contains(r, q)) next.insert(p, q);
        }
      }
    cur = next;
    acc = acc.unite(cur);
  }
  return acc;
}

Relation s_star_from(const TwoWayNfa& a, const Relation& lt, uint32_t tsym) {
  return s_rel_from(a, lt, tsym, a.n * (a.n - 1));
}

Relation t_rel(const TwoWayNfa& a, const Word& u, uint32_t tsym, uint32_t k,
               const exec::Limits& lim) {
  return t_rel_from(a, ltable(a, u, lim), tsym, k);
}

Relation s_rel(const TwoWayNfa& a, const Word& u, uint32_t tsym, uint32_t k,
               const exec::Limits& lim) {
  return s_rel_from(a, ltable(a, u, lim), tsym, k);
}

Relation s_star(const TwoWayNfa& a, const Word& u, uint32_t tsym,
                const exec::Limits& lim) {
  return s_star_from(a, ltable(a, u, lim), tsym);
}

Relation update_ltable(const TwoWayNfa& a, const Relation& prev,
                       uint32_t tsym) {
  // One-visit relation from prev alone.
  Relation t1 = Relation::empty(a.n);
  for (StateId p = 0; p < a.n; ++p)
    for (auto [r, d] : a.moves(p, tsym)) {
      if (d != Dir::kLeft) continue;
      for (StateId q = 0; q < a.n; ++q)
        if (prev.contains(r, q)) t1.insert(p, q);
    }
  // Reflexive-transitive closure.
  Relation closure = Relation::identity(a.n).unite(t1);
  for (;;) {
    Relation next = closure.unite(closure.compose(t1));
    if (next == closure) break;
    closure = next;
  }
  // Right-move rule.
  Relation out = Relation::empty(a.n);
  for (StateId p = 0; p < a.n; ++p)
    for (StateId r = 0; r < a.n; ++r) {
      if (!closure.contains(p, r)) continue;
      for (auto [q, d] : a.moves(r, tsym))
        if (d == Dir::kRight) out.insert(p, q);
    }
  return out;
}

bool accepts_via_ltables(const NormalizedTwoWayNfa& a, const Word& w,
                         const exec::Limits& lim) {
  Relation star =
      s_star(a.inner, w, a.inner.tape().rend(), lim);
  return star.contains(a.restart, a.inner.accept);
}

std::string encode_set(const StateSet& s) {
  std::string out(s.n, '0');
  for (StateId q = 0; q < s.n; ++q)
    if (s.contains(q)) out[q] = '1';
  return out;
}

StateSet decode_set(const std::string& bits, uint32_t n) {
  if (bits.size() != n)
    throw std::invalid_argument("set encoding must have length n");
  StateSet s = StateSet::empty(n);
  for (uint32_t i = 0; i < n; ++i) {
    if (bits[i] == '1')
      s.insert(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("set encoding must be over {0,1}");
  }
  return s;
}

std::string encode_rel(const Relation& r) {
  std::string out(size_t(r.n) * r.n, '0');
  for (StateId p = 0; p < r.n; ++p)
    for (StateId q = 0; q < r.n; ++q)
      if (r.contains(p, q)) out[size_t(p) * r.n + q] = '1';
  return out;
}

Relation decode_rel(const std::string& bits, uint32_t n) {
  if (bits.size() != size_t(n) * n)
    throw std::invalid_argument("relation encoding must have length n^2");
  Relation r = Relation::empty(n);
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q) {
      char c = bits[size_t(p) * n + q];
      if (c == '1')
        r.insert(p, q);
      else if (c != '0')
        throw std::invalid_argument("relation encoding must be over {0,1}");
    }
  return r;
}

}  // namespace svnfa
