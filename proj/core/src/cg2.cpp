#include "svnfa/cg2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <functional>
#include <set>

namespace svnfa {

namespace {
using exec::Scan;
using P = Cg2State;

uint32_t ceil_log2(uint32_t x) {
  uint32_t r = 0;
  while ((1u << r) < x) ++r;
  return r;
}

Cg2State abort_state() {
  Cg2State t;
  t.phase = P::kAbort;
  return t;
}

}  // namespace

Cg2Machine::Cg2Machine(const TwoWayNfa& a, Cg2Options opts)
    : norm_(normalize_restart(a)), opts_(opts) {
  if (!validate(a).empty())
    throw std::invalid_argument("cg2 source automaton is not well-formed");
  nn_ = norm_.inner.n;
  if (nn_ > 15) throw std::invalid_argument("cg2 supports up to 14 states");
  N_ = nn_ * nn_;
  clk_ = 2 * nn_ * nn_ * nn_;
  rounds_ = std::max(1u, 2 * ceil_log2(nn_));
  pp_none_ = uint16_t(N_);
  m0_ = 0;
  uint32_t lend = norm_.inner.tape().lend();
  for (StateId p = 0; p < nn_; ++p)
    for (auto [q, d] : norm_.inner.moves(p, lend))
      if (d == Dir::kRight) ++m0_;
}

Cg2Machine build_cg2(const TwoWayNfa& a, Cg2Options opts) {
  return Cg2Machine(a, opts);
}

Cg2State Cg2Machine::initial_state() const {
  Cg2State s;
  s.phase = P::kMain;
  s.m = uint16_t(m0_);
  s.hp = uint16_t(N_);
  s.pp = pp_none_;
  return s;
}

exec::Class Cg2Machine::classify(const State& s, const exec::Scan&) const {
  switch (s.phase) {
    case P::kAcc:
      return exec::Class::kAccepting;
    case P::kRej:
      return exec::Class::kRejecting;
    case P::kAbort:
      return exec::Class::kAborting;
    default:
      return exec::Class::kLive;
  }
}

Cg2State Cg2Machine::terminal_state(exec::Class c) const {
  Cg2State t;
  t.phase = c == exec::Class::kAccepting   ? P::kAcc
            : c == exec::Class::kRejecting ? P::kRej
                                           : P::kAbort;
  return t;
}

uint32_t Cg2Machine::budget(const State& s) const {
  if (s.hrn == P::kHrnEnumS) return s.ro;
  if (s.ce == P::kCeMember)
    return std::min<uint32_t>(1u << (s.dbl - 1), N_);
  return N_;
}

// Take one symbol of the scanned cell for the simulated machine.
static uint32_t tape_symbol(const TwoWayNfa& a, const Scan& sc) {
  switch (sc.kind) {
    case Scan::kLend:
      return a.tape().lend();
    case Scan::kRend:
      return a.tape().rend();
    default:
      return sc.sym;
  }
}

// Move right out of the window fragment, back onto its anchor cell.
void Cg2Machine::exit_fragment(exec::StepSink<State>& sink, const State& s,
                               uint8_t value, uint32_t nc) const {
  State t = s;
  t.qe = value;
  t.i = 0;
  t.hp = uint16_t(s.hp + 1);
  t.clock = 0;
  switch (s.nstc) {
    case 0:
      t.phase = P::kEtYield;
      t.nstc = 0;
      break;
    case 1:
      t.phase = P::kNsSLoop;  // nstc stays: the walk resumes from here
      break;
    default:
      t.phase = P::kHrnDone;
      t.clock = uint16_t(nc);  // run length, for the haltingness report
      break;
  }
  sink.push(t, +1);
}

// Enter the window fragment with one left move from the anchor.
void Cg2Machine::enter_fragment(exec::StepSink<State>& sink, State s,
                                uint8_t start, uint8_t caller) const {
  s.i = uint16_t(s.hp - N_);
  s.clock = 0;
  s.qe = start;
  s.nstc = caller;
  s.hp = uint16_t(s.hp - 1);
  s.phase = s.hp >= N_ ? P::kNsSim : P::kNsScan;
  sink.push(s, -1);
}

void Cg2Machine::advance_main(exec::StepSink<State>& sink, uint16_t m,
                              uint16_t hp) const {
  State t;
  t.phase = P::kMain;
  t.m = m;
  t.pp = pp_none_;
  t.hp = hp == 2 * N_ - 1 ? uint16_t(N_) : uint16_t(hp + 1);
  sink.push(t, +1);
}

// Next candidate pair of the one-visit counting pass, or hand over to the
// squaring rounds when every off-diagonal pair has been tried.
void Cg2Machine::s1_advance(exec::StepSink<State>& sink, const State& s,
                            uint16_t count) const {
  State t = s;
  t.mn = count;
  t.k = 0;
  t.pp = pp_none_;
  t.pe = 0;
  t.qe = 0;
  uint32_t p = s.po, q = s.qo;
  do {
    if (q + 1u < nn_) {
      ++q;
    } else if (p + 1u < nn_) {
      ++p;
      q = 0;
    } else {
      // Pass complete.
      State u;
      u.phase = P::kSSBegin;
      u.stage = s.stage;
      u.hp = s.hp;
      u.m = count;
      u.pp = pp_none_;
      sink.push(u, 0);
      return;
    }
  } while (p == q);
  t.po = uint8_t(p);
  t.qo = uint8_t(q);
  t.phase = P::kEtChoose;
  sink.push(t, 0);
}

// Next candidate pair of the final counting pass; when done, check the
// completed block (if any) and step onto the next cell.
void Cg2Machine::ts_advance(exec::StepSink<State>& sink, const State& s,
                            const exec::Scan& sc, uint16_t count) const {
  uint32_t p = s.po, q = s.qo;
  if (q + 1u < nn_) {
    ++q;
  } else if (p + 1u < nn_) {
    ++p;
    q = 0;
  } else {
    // m now counts the table of the prefix including this cell.
    if (s.hp == 2 * N_ - 1 && !opts_.skip_table_check) {
      State u;
      u.phase = P::kCtCountL;
      u.stage = s.stage;
      u.m = count;
      u.mn = (sc.kind == Scan::kSym && sc.bit) ? 1 : 0;
      u.hp = uint16_t(s.hp - 1);
      u.pp = pp_none_;
      sink.push(u, -1);
      return;
    }
    advance_main(sink, count, s.hp);
    return;
  }
  State t = s;
  t.po = uint8_t(p);
  t.qo = uint8_t(q);
  t.mn = count;
  t.k = 0;
  t.pp = pp_none_;
  t.pe = 0;
  t.qe = 0;
  t.phase = P::kEsChoose;
  sink.push(t, 0);
}

void Cg2Machine::step(const State& s, const Scan& sc,
                      exec::StepSink<State>& sink) const {
  const uint32_t N = N_;
  const uint32_t nn = nn_;
  const TwoWayNfa& aut = norm_.inner;

  switch (s.phase) {
    case P::kMain: {
      if (sc.kind == Scan::kLend) return;
      if (sc.kind == Scan::kRend) {
        uint32_t r0 = s.hp - N;
        if (r0 > 0) {
          State t = s;
          t.phase = P::kTailL;
          t.hp = uint16_t(s.hp - 1);
          sink.push(t, -1);
          return;
        }
      }
      State t = s;
      t.phase = P::kS1Pair;
      t.stage = sc.kind == Scan::kRend ? 1 : 0;
      t.mn = uint16_t(nn);
      t.po = 0;
      t.qo = 1;
      t.pp = pp_none_;
      t.k = 0;
      sink.push(t, 0);
      return;
    }

    case P::kTailL: {
      if (sc.kind != Scan::kSym) return;
      if (sc.bit != 0) {
        sink.push(abort_state(), +1);
        return;
      }
      State t = s;
      if (s.hp == N) {
        t.phase = P::kTailR;
        t.hp = uint16_t(s.hp + 1);
        sink.push(t, +1);
        return;
      }
      t.hp = uint16_t(s.hp - 1);
      sink.push(t, -1);
      return;
    }

    case P::kTailR: {
      if (sc.kind == Scan::kRend) {
        State t = s;
        t.phase = P::kS1Pair;
        t.stage = 1;
        t.mn = uint16_t(nn);
        t.po = 0;
        t.qo = 1;
        t.pp = pp_none_;
        t.k = 0;
        sink.push(t, 0);
        return;
      }
      State t = s;
      t.hp = uint16_t(s.hp + 1);
      sink.push(t, +1);
      return;
    }

    case P::kS1Pair: {
      if (s.m == 0) {
        // No table pairs to enumerate: only the diagonal survives.
        State u;
        u.phase = P::kSSBegin;
        u.stage = s.stage;
        u.hp = s.hp;
        u.m = s.mn;
        u.pp = pp_none_;
        sink.push(u, 0);
        return;
      }
      State t = s;
      t.k = 0;
      t.pp = pp_none_;
      t.phase = P::kEtChoose;
      sink.push(t, 0);
      return;
    }

    case P::kEtChoose: {
      if (s.k >= s.m) {
        // Only the harness enters with nothing left to enumerate.
        if (s.hrn == P::kHrnEnumT) {
          State t = s;
          t.phase = P::kHrnDone;
          sink.push(t, 0);
        }
        return;
      }
      for (uint32_t pe = 0; pe < nn; ++pe) {
        State t = s;
        t.pe = uint8_t(pe);
        t.k = uint16_t(s.k + 1);
        enter_fragment(sink, t, uint8_t(pe), 0);
      }
      return;
    }

    case P::kNsSim: {
      if (sc.kind == Scan::kRend || s.hp < N) return;
      uint32_t nc = s.clock + 1;
      if (opts_.clock_enabled && nc > clk_ - 1) return;
      for (auto [r, d] : aut.moves(s.qe, tape_symbol(aut, sc))) {
        if (d == Dir::kRight) {
          if (s.hp + 1u == N + s.i) {
            exit_fragment(sink, s, uint8_t(r), nc);
          } else {
            State t = s;
            t.qe = uint8_t(r);
            t.clock = uint16_t(opts_.clock_enabled ? nc : 0);
            t.hp = uint16_t(s.hp + 1);
            sink.push(t, +1);
          }
        } else {
          if (sc.kind == Scan::kLend || s.hp == 0) continue;
          State t = s;
          t.qe = uint8_t(r);
          t.clock = uint16_t(opts_.clock_enabled ? nc : 0);
          t.hp = uint16_t(s.hp - 1);
          t.phase = t.hp >= N ? P::kNsSim : P::kNsScan;
          sink.push(t, -1);
        }
      }
      return;
    }

    case P::kNsScan: {
      if (sc.kind == Scan::kRend || s.hp >= N) return;
      uint32_t nc = s.clock + 1;
      if (opts_.clock_enabled && nc > clk_ - 1) return;
      if (sc.kind == Scan::kLend) {
        // The true endmarker: simulate directly.
        for (auto [r, d] : aut.moves(s.qe, aut.tape().lend())) {
          if (d != Dir::kRight) continue;
          if (s.hp + 1u == N + s.i) {
            exit_fragment(sink, s, uint8_t(r), nc);
          } else {
            State t = s;
            t.qe = uint8_t(r);
            t.clock = uint16_t(opts_.clock_enabled ? nc : 0);
            t.hp = uint16_t(s.hp + 1);
            t.phase = P::kNsSim;
            sink.push(t, +1);
          }
        }
        return;
      }
      // Encoded-relation lookup: a 1-bit in the row of the current state.
      if (s.qe * nn <= s.hp && s.hp < (s.qe + 1u) * nn && sc.bit == 1) {
        uint8_t target = uint8_t(s.hp % nn);
        if (s.hp + 1u == N + s.i) {
          exit_fragment(sink, s, target, nc);
        } else {
          State t = s;
          t.qe = target;
          t.clock = uint16_t(opts_.clock_enabled ? nc : 0);
          t.hp = uint16_t(s.hp + 1);
          t.phase = t.hp >= N ? P::kNsSim : P::kNsRet;
          sink.push(t, +1);
        }
      }
      if (s.hp > 0) {
        State t = s;
        t.clock = uint16_t(opts_.clock_enabled ? nc : 0);
        t.hp = uint16_t(s.hp - 1);
        sink.push(t, -1);
      }
      return;
    }

    case P::kNsRet: {
      uint32_t nc = s.clock + 1;
      if (opts_.clock_enabled && nc > clk_ - 1) return;
      if (s.hp + 1u == N + s.i) {
        exit_fragment(sink, s, s.qe, nc);
        return;
      }
      State t = s;
      t.clock = uint16_t(opts_.clock_enabled ? nc : 0);
      t.hp = uint16_t(s.hp + 1);
      if (t.hp >= N) t.phase = P::kNsSim;
      sink.push(t, +1);
      return;
    }

    case P::kEtYield: {
      uint32_t pair = uint32_t(s.pe) * nn + s.qe;
      if (s.pp != pp_none_ && pair <= s.pp) return;  // must ascend
      State g = s;
      g.pp = uint16_t(pair);
      if (s.hrn == P::kHrnEnumT) {
        if (s.k < s.m) {
          g.phase = P::kEtChoose;
        } else {
          g.phase = P::kHrnDone;
        }
        sink.push(g, 0);
        return;
      }
      // One-visit membership test: the enumerated pair closes a left move.
      bool witness = false;
      if (s.qe == s.qo) {
        for (auto [r, d] : aut.moves(s.po, tape_symbol(aut, sc)))
          if (d == Dir::kLeft && r == s.pe) witness = true;
      }
      if (witness) {
        s1_advance(sink, g, uint16_t(s.mn + 1));
        return;
      }
      if (s.k < s.m) {
        g.phase = P::kEtChoose;
        sink.push(g, 0);
        return;
      }
      s1_advance(sink, g, s.mn);
      return;
    }

    case P::kSSBegin: {
      State t = s;
      t.phase = P::kMSBegin;
      t.dbl = 1;
      t.mn = 0;
      t.po = 0;
      t.qo = 0;
      t.ro = 0;
      t.msw = 1;
      t.pp = pp_none_;
      sink.push(t, 0);
      return;
    }

    case P::kMSBegin: {
      if (s.m == 0) {
        State t = s;
        t.phase = P::kMSDone;
        t.flag = 0;
        sink.push(t, 0);
        return;
      }
      State t = s;
      t.phase = P::kEsChoose;
      t.ce = P::kCeMember;
      t.k = 0;
      t.pp = pp_none_;
      t.flag = 0;
      sink.push(t, 0);
      return;
    }

    case P::kEsChoose: {
      if (s.k >= s.m) {
        if (s.hrn == P::kHrnEnumS) {
          State t = s;
          t.phase = P::kHrnDone;
          sink.push(t, 0);
        }
        return;
      }
      uint32_t b = budget(s);
      for (uint32_t pe = 0; pe < nn; ++pe) {
        State t = s;
        t.phase = P::kNsSLoop;
        t.nstc = 1;
        t.pe = uint8_t(pe);
        t.qe = uint8_t(pe);
        t.j = uint16_t(b);
        t.k = uint16_t(s.k + 1);
        sink.push(t, 0);
      }
      return;
    }

    case P::kNsSLoop: {
      // Stop here, reporting the current state as the walk's endpoint.
      {
        State t = s;
        t.j = 0;
        t.nstc = 0;
        t.phase = s.hrn == P::kHrnSimS ? P::kHrnDone : P::kEsYield;
        sink.push(t, 0);
      }
      if (s.j >= 1 && sc.kind != Scan::kLend) {
        for (auto [r, d] : aut.moves(s.qe, tape_symbol(aut, sc))) {
          if (d != Dir::kLeft) continue;
          State t = s;
          t.j = uint16_t(s.j - 1);
          enter_fragment(sink, t, uint8_t(r), 1);
        }
      }
      return;
    }

    case P::kEsYield: {
      uint32_t pair = uint32_t(s.pe) * nn + s.qe;
      if (s.hrn == P::kHrnEnumS) {
        if (s.pp != pp_none_ && pair <= s.pp) return;
        State g = s;
        g.pp = uint16_t(pair);
        g.phase = s.k < s.m ? P::kEsChoose : P::kHrnDone;
        sink.push(g, 0);
        return;
      }
      switch (s.ce) {
        case P::kCeMember: {
          if (s.pp != pp_none_ && pair <= s.pp) return;
          State g = s;
          g.pp = uint16_t(pair);
          bool hit = s.msw == 1 ? (s.pe == s.po && s.qe == s.ro)
                                : (s.pe == s.ro && s.qe == s.qo);
          if (hit) {
            g.phase = P::kMSDone;
            g.flag = 1;
            sink.push(g, 0);
            return;
          }
          if (s.k < s.m) {
            g.phase = P::kEsChoose;
            sink.push(g, 0);
            return;
          }
          g.phase = P::kMSDone;
          g.flag = 0;
          sink.push(g, 0);
          return;
        }
        case P::kCeTable: {
          if (s.pp != pp_none_ && pair <= s.pp) return;
          State g = s;
          g.pp = uint16_t(pair);
          bool witness = false;
          if (s.pe == s.po) {
            for (auto [r, d] : aut.moves(s.qe, tape_symbol(aut, sc)))
              if (d == Dir::kRight && r == s.qo) witness = true;
          }
          if (witness) {
            ts_advance(sink, g, sc, uint16_t(s.mn + 1));
            return;
          }
          if (s.k < s.m) {
            g.phase = P::kEsChoose;
            sink.push(g, 0);
            return;
          }
          ts_advance(sink, g, sc, s.mn);
          return;
        }
        case P::kCeFinal: {
          if (s.pp != pp_none_ && pair <= s.pp) return;
          State g = s;
          g.pp = uint16_t(pair);
          if (s.pe == norm_.restart && s.qe == aut.accept) g.flag = 1;
          if (s.k < s.m) {
            g.phase = P::kEsChoose;
            sink.push(g, 0);
            return;
          }
          State v;
          v.phase = g.flag ? P::kAcc : P::kRej;
          sink.push(v, 0);
          return;
        }
        case P::kCeCheck: {
          // Close each stable-relation endpoint with a right move, then
          // verify the block annotates exactly that pair.
          for (auto [q, d] : aut.moves(s.qe, tape_symbol(aut, sc))) {
            if (d != Dir::kRight) continue;
            uint32_t tpair = uint32_t(s.pe) * nn + q;
            if (s.pp != pp_none_ && tpair <= s.pp) continue;
            State g = s;
            g.pp = uint16_t(tpair);
            g.qe = 0;
            uint32_t target_hp = N + tpair;
            if (target_hp == 2 * N - 1) {
              if (sc.kind != Scan::kSym || sc.bit != 1) continue;
              if (s.k < s.m) {
                g.phase = P::kEsChoose;
                sink.push(g, 0);
              } else {
                advance_main(sink, s.m, s.hp);
              }
              continue;
            }
            g.phase = P::kCtBitL;
            g.hp = uint16_t(s.hp - 1);
            sink.push(g, -1);
          }
          return;
        }
        default:
          return;
      }
    }

    case P::kMSDone: {
      State t = s;
      t.pe = 0;
      t.qe = 0;
      t.k = 0;
      t.pp = pp_none_;
      if (s.msw == 1) {
        if (s.flag) {
          t.msw = 2;
          t.flag = 0;
          t.phase = P::kMSBegin;
          sink.push(t, 0);
          return;
        }
      } else if (s.flag) {
        // Both halves witnessed: the pair joins the doubled relation.
        t.flag = 0;
        t.mn = uint16_t(s.mn + 1);
        goto advance_pair;
      }
      // Try the next middle state.
      if (s.ro + 1u < nn) {
        t.ro = uint8_t(s.ro + 1);
        t.msw = 1;
        t.flag = 0;
        t.phase = P::kMSBegin;
        sink.push(t, 0);
        return;
      }
    advance_pair:
      t.ro = 0;
      t.msw = 1;
      t.flag = 0;
      if (s.qo + 1u < nn) {
        t.qo = uint8_t(s.qo + 1);
        t.phase = P::kMSBegin;
        sink.push(t, 0);
        return;
      }
      if (s.po + 1u < nn) {
        t.po = uint8_t(s.po + 1);
        t.qo = 0;
        t.phase = P::kMSBegin;
        sink.push(t, 0);
        return;
      }
      // Round complete.
      t.m = t.mn;
      t.mn = 0;
      t.po = t.qo = 0;
      if (s.dbl < rounds_) {
        t.dbl = uint8_t(s.dbl + 1);
        t.phase = P::kMSBegin;
        sink.push(t, 0);
        return;
      }
      t.dbl = 0;
      if (s.stage == 0) {
        t.phase = P::kTSBegin;
        sink.push(t, 0);
        return;
      }
      if (t.m == 0) {
        State v;
        v.phase = P::kRej;
        sink.push(v, 0);
        return;
      }
      t.phase = P::kEsChoose;
      t.ce = P::kCeFinal;
      t.flag = 0;
      t.k = 0;
      t.pp = pp_none_;
      sink.push(t, 0);
      return;
    }

    case P::kTSBegin: {
      State t = s;
      t.phase = P::kEsChoose;
      t.ce = P::kCeTable;
      t.mn = 0;
      t.po = 0;
      t.qo = 0;
      t.k = 0;
      t.pp = pp_none_;
      sink.push(t, 0);
      return;
    }

    case P::kCtCountL: {
      if (sc.kind != Scan::kSym) return;
      uint32_t scratch = s.mn + (sc.bit ? 1 : 0);
      if (scratch > s.m) {
        sink.push(abort_state(), +1);
        return;
      }
      State t = s;
      if (s.hp == N) {
        if (scratch != s.m) {
          sink.push(abort_state(), +1);
          return;
        }
        t.phase = P::kCtCountR;
        t.mn = 0;
        t.hp = uint16_t(s.hp + 1);
        sink.push(t, +1);
        return;
      }
      t.mn = uint16_t(scratch);
      t.hp = uint16_t(s.hp - 1);
      sink.push(t, -1);
      return;
    }

    case P::kCtCountR: {
      State t = s;
      t.hp = uint16_t(s.hp + 1);
      if (t.hp == 2 * N - 1) {
        t.phase = P::kCtEnumBegin;
        sink.push(t, +1);
        return;
      }
      sink.push(t, +1);
      return;
    }

    case P::kCtEnumBegin: {
      if (s.m == 0) {
        advance_main(sink, s.m, s.hp);
        return;
      }
      State t = s;
      t.phase = P::kEsChoose;
      t.ce = P::kCeCheck;
      t.k = 0;
      t.pp = pp_none_;
      sink.push(t, 0);
      return;
    }

    case P::kCtBitL: {
      uint32_t target_hp = N + s.pp;
      if (s.hp == target_hp) {
        if (sc.kind != Scan::kSym || sc.bit != 1) {
          sink.push(abort_state(), +1);
          return;
        }
        State t = s;
        t.hp = uint16_t(s.hp + 1);
        t.phase = t.hp == 2 * N - 1 ? P::kCtNext : P::kCtBitR;
        sink.push(t, +1);
        return;
      }
      State t = s;
      t.hp = uint16_t(s.hp - 1);
      sink.push(t, -1);
      return;
    }

    case P::kCtBitR: {
      State t = s;
      t.hp = uint16_t(s.hp + 1);
      if (t.hp == 2 * N - 1) t.phase = P::kCtNext;
      sink.push(t, +1);
      return;
    }

    case P::kCtNext: {
      if (s.k < s.m) {
        State t = s;
        t.phase = P::kEsChoose;
        t.pe = 0;
        t.qe = 0;
        sink.push(t, 0);
        return;
      }
      advance_main(sink, s.m, s.hp);
      return;
    }

    default:
      return;  // kHrnDone and terminals
  }
}

std::pair<Cg2State, int32_t> Cg2Machine::nsimt_entry(StateId p,
                                                     int32_t driver_pos) const {
  Cg2State s;
  uint32_t dhp = driver_hp(driver_pos);
  s.i = uint16_t(dhp - N_);
  s.hp = uint16_t(dhp - 1);
  s.qe = uint8_t(p);
  s.nstc = 2;
  s.hrn = P::kHrnSimT;
  s.pp = pp_none_;
  s.phase = s.hp >= N_ ? P::kNsSim : P::kNsScan;
  return {s, driver_pos - 1};
}

std::pair<Cg2State, int32_t> Cg2Machine::nsims_entry(StateId p, uint32_t j,
                                                     int32_t driver_pos) const {
  Cg2State s;
  s.hp = uint16_t(driver_hp(driver_pos));
  s.pe = uint8_t(p);
  s.qe = uint8_t(p);
  s.j = uint16_t(j);
  s.hrn = P::kHrnSimS;
  s.nstc = 1;
  s.pp = pp_none_;
  s.phase = P::kNsSLoop;
  return {s, driver_pos};
}

std::pair<Cg2State, int32_t> Cg2Machine::enumt_entry(uint32_t m,
                                                     int32_t driver_pos) const {
  Cg2State s;
  s.hp = uint16_t(driver_hp(driver_pos));
  s.m = uint16_t(m);
  s.k = 0;
  s.pp = pp_none_;
  s.hrn = P::kHrnEnumT;
  s.phase = P::kEtChoose;
  return {s, driver_pos};
}

std::pair<Cg2State, int32_t> Cg2Machine::enums_entry(uint32_t m, uint32_t j,
                                                     int32_t driver_pos) const {
  Cg2State s;
  s.hp = uint16_t(driver_hp(driver_pos));
  s.m = uint16_t(m);
  s.ro = uint8_t(j);
  s.k = 0;
  s.pp = pp_none_;
  s.hrn = P::kHrnEnumS;
  s.phase = P::kEsChoose;
  return {s, driver_pos};
}

exec::u128 Cg2Machine::state_key(const State& s) const {
  const uint64_t N = N_, nn = nn_;
  exec::u128 key = s.phase;
  key = key * 2 + s.stage;
  key = key * 4 + s.ce;
  key = key * 3 + s.msw;
  key = key * 3 + s.nstc;
  key = key * 5 + s.hrn;
  key = key * 2 + s.flag;
  key = key * (2 * N) + s.hp;
  key = key * (N + 1) + s.m;
  key = key * (N + 1) + s.mn;
  key = key * nn + s.po;
  key = key * nn + s.qo;
  key = key * (N + 1) + s.ro;
  key = key * nn + s.pe;
  key = key * nn + s.qe;
  key = key * (N + 1) + s.pp;
  key = key * (N + 1) + s.k;
  key = key * (N + 1) + s.j;
  key = key * (rounds_ + 1) + s.dbl;
  key = key * N + s.i;
  key = key * clk_ + s.clock;
  return key;
}

exec::u128 Cg2Machine::state_key_bound() const {
  const uint64_t N = N_, nn = nn_;
  exec::u128 b = P::kPhaseCount;
  b *= 2;
  b *= 4;
  b *= 3;
  b *= 3;
  b *= 5;
  b *= 2;
  b *= 2 * N;
  b *= (N + 1);
  b *= (N + 1);
  b *= nn;
  b *= nn;
  b *= (N + 1);
  b *= nn;
  b *= nn;
  b *= (N + 1);
  b *= (N + 1);
  b *= (N + 1);
  b *= (rounds_ + 1);
  b *= N;
  b *= clk_;
  return b;
}

std::vector<std::pair<std::string, uint64_t>> Cg2Machine::field_cardinalities()
    const {
  const uint64_t N = N_, nn = nn_;
  return {
      {"phase", P::kPhaseCount},
      {"stage", 2},
      {"ce", 4},
      {"msw", 3},
      {"flag", 2},
      {"hp", 2 * N},
      {"m", N + 1},
      {"m_next", N + 1},
      {"po", nn},
      {"qo", nn},
      {"ro", nn},
      {"pe", nn},
      {"qe", nn},
      {"prev_pair", N + 1},
      {"k", N + 1},
      {"j", N + 1},
      {"dbl", rounds_ + 1},
      {"i", N},
      {"clock", clk_},
  };
}

uint64_t cg2_reachable_records(const Cg2Machine& m, uint32_t max_len,
                               const exec::Limits& lim) {
  AnnotationSpec spec = AnnotationSpec::cg2(m.normalized());
  const uint32_t syms = m.num_symbols();
  std::set<std::pair<uint64_t, uint64_t>> records;
  Word w;
  std::function<void(uint32_t)> sweep = [&](uint32_t remaining) {
    AnnotatedWord x = annotate(spec, w);
    exec::explore(m, x, exec::initial_of(m, x), lim,
                  [&](const Cg2State& s, int32_t, const exec::Scan& sc) {
                    exec::u128 k = m.state_key(s);
                    records.insert({uint64_t(k), uint64_t(k >> 64)});
                    return m.classify(s, sc) == exec::Class::kLive;
                  });
    if (remaining == 0) return;
    for (uint32_t c = 0; c < syms; ++c) {
      w.push_back(c);
      sweep(remaining - 1);
      w.pop_back();
    }
  };
  sweep(max_len);
  return records.size();
}

Cg2Report state_space_report(const Cg2Machine& m) {
  Cg2Report rep;
  rep.normalized_n = m.normalized().inner.n;
  rep.n = rep.normalized_n - 1;
  rep.per_field = m.field_cardinalities();
  auto sat_mul = [](uint64_t a, uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
  };
  uint64_t full = 1, excluded = 1;
  for (auto& [name, card] : rep.per_field) {
    full = sat_mul(full, card);
    if (name != "hp" && name != "clock") excluded = sat_mul(excluded, card);
  }
  rep.structural_bound = full;
  rep.hp_unclocked_bound = excluded;
  return rep;
}

}  // namespace svnfa
