#include "svnfa/cg1.hpp"

#include <algorithm>
#include <stdexcept>

namespace svnfa {

namespace {
using exec::Scan;
using P = Cg1State;
}  // namespace

Cg1Machine::Cg1Machine(const OneWayNfa& a, Cg1Options opts)
    : a_(a), opts_(opts), n_(a.n) {
  if (!validate(a).empty())
    throw std::invalid_argument("cg1 source automaton is not well-formed");
  if (a.n > 60) throw std::invalid_argument("cg1 supports up to 60 states");
}

Cg1Machine build_cg1(const OneWayNfa& a, Cg1Options opts) {
  return Cg1Machine(a, opts);
}

Cg1State Cg1Machine::initial_state() const {
  Cg1State s;
  s.phase = P::kDriver;
  s.m = 1;
  s.posmod = uint8_t(1 % n_);
  return s;
}

exec::Class Cg1Machine::classify(const State& s, const exec::Scan&) const {
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

Cg1State Cg1Machine::terminal_state(exec::Class c) const {
  Cg1State t;
  t.phase = c == exec::Class::kAccepting   ? P::kAcc
            : c == exec::Class::kRejecting ? P::kRej
                                           : P::kAbort;
  return t;
}

void Cg1Machine::emit(exec::StepSink<State>& sink, State s, int d) const {
  s.posmod = uint8_t((s.posmod + n_ + d) % n_);
  if (d == +1) {
    s.dist -= 1;
  } else {
    s.dist += 1;
  }
  sink.push(s, d);
}

namespace {

// Terminal failure of an annotation or tail check.
void abort_move(exec::StepSink<Cg1State>& sink, int d) {
  Cg1State ab;
  ab.phase = P::kAbort;
  sink.push(ab, d);
}

}  // namespace

// The selection block encodes the reachable set of the prefix ending at the
// last completed boundary; its distance window depends only on the anchor
// offset and on whether the anchor cell itself belongs to the target prefix.
uint32_t Cg1Machine::zone_lo(const State& s) const {
  if (s.consumer == P::kCheck) return n_;
  uint32_t anchor_mod = (s.posmod + s.dist) % n_;
  return (anchor_mod + n_ - 1) % n_ + 1;
}

// A right move inside the enumeration fragment: continue the plain walk,
// start/continue consuming, or land back on the anchor with a yield.
void Cg1Machine::emit_sim_right(exec::StepSink<State>& sink, const State& s,
                                uint8_t value, bool) const {
  const bool incl = s.consumer == P::kCheck;
  const uint32_t entry = zone_lo(s) - 1;
  const uint32_t ld = s.dist - 1;
  State t = s;
  t.q_cur = value;
  if (ld == 0 && !incl) {
    if (t.q_prev != 0 && value + 1u <= t.q_prev) return;  // must ascend
    t.phase = P::kYield;
    t.q_prev = uint8_t(value + 1);
  } else if (ld > entry) {
    t.phase = P::kBackWalk;
  } else {
    t.phase = P::kConsume;
  }
  emit(sink, t, +1);
}

void Cg1Machine::launch_enum(exec::StepSink<State>& sink, const State& s,
                             uint8_t consumer, uint8_t idx, uint8_t p_out,
                             uint8_t m_next) const {
  State t = s;
  t.phase = P::kSelWalk;
  t.consumer = consumer;
  t.idx = idx;
  t.p_out = p_out;
  t.m_next = m_next;
  t.q_prev = (idx == 1) ? 0 : s.q_prev;
  t.q_cur = 0;
  emit(sink, t, -1);
}

namespace {

// Step right onto the next driver cell with only the prefix size retained.
void advance_driver(exec::StepSink<Cg1State>& sink, uint8_t m,
                    uint8_t cur_posmod, uint32_t n) {
  Cg1State t;
  t.phase = P::kDriver;
  t.m = m;
  t.posmod = uint8_t((cur_posmod + 1) % n);
  t.dist = 0;
  sink.push(t, +1);
}

}  // namespace

// Completion of one per-cell counting pass: either verify the block that
// just ended, or move on to the next cell.
void Cg1Machine::finish_count(exec::StepSink<State>& sink, const State& s,
                              const exec::Scan& sc, uint8_t new_m) const {
  if (s.posmod == 0 && !opts_.skip_annotation_check) {
    uint8_t scratch = (sc.kind == Scan::kSym && sc.bit) ? 1 : 0;
    if (n_ == 1) {
      if (scratch != new_m) {
        abort_move(sink, -1);
        return;
      }
      if (new_m == 0) {
        advance_driver(sink, new_m, s.posmod, n_);
        return;
      }
      State u;
      u.m = new_m;
      u.posmod = s.posmod;
      launch_enum(sink, u, P::kCheck, 1, 0, 0);
      return;
    }
    State u;
    u.phase = P::kCheckCountL;
    u.m = new_m;
    u.m_next = scratch;
    u.posmod = s.posmod;
    emit(sink, u, -1);
    return;
  }
  advance_driver(sink, new_m, s.posmod, n_);
}

void Cg1Machine::step(const State& s, const Scan& sc,
                      exec::StepSink<State>& sink) const {
  const uint32_t n = n_;
  switch (s.phase) {
    case P::kDriver: {
      if (sc.kind == Scan::kLend) return;
      if (sc.kind == Scan::kRend) {
        uint32_t r0 = (s.posmod + n - 1) % n;  // input length mod n
        if (r0 > 0) {
          State t = s;
          t.phase = P::kTailL;
          emit(sink, t, -1);
          return;
        }
        if (s.m == 0) {
          State t = s;
          t.phase = P::kRejPend;
          emit(sink, t, -1);
          return;
        }
        launch_enum(sink, s, P::kMember, 1, 0, 0);
        return;
      }
      if (s.m == 0) {
        finish_count(sink, s, sc, 0);
        return;
      }
      launch_enum(sink, s, P::kCount, 1, 0, 0);
      return;
    }

    case P::kSelWalk: {
      if (sc.kind == Scan::kRend) return;
      if (sc.kind == Scan::kLend) {
        emit_sim_right(sink, s, uint8_t(a_.start), true);
        return;
      }
      uint32_t lo = zone_lo(s), hi = lo + n - 1;
      if (s.dist >= lo && s.dist <= hi && sc.bit == 1) {
        uint8_t state_id = uint8_t((s.posmod + n - 1) % n);
        emit_sim_right(sink, s, state_id, true);
      }
      if (s.dist < hi) {
        State t = s;
        emit(sink, t, -1);
      }
      return;
    }

    case P::kBackWalk:
      emit_sim_right(sink, s, s.q_cur, false);
      return;

    case P::kConsume: {
      if (sc.kind != Scan::kSym) return;
      const bool incl = s.consumer == P::kCheck;
      if (incl && s.dist == 0) {
        // The anchor cell itself is consumed, then the head hops back.
        for (StateId r : a_.targets(s.q_cur, sc.sym)) {
          if (s.q_prev != 0 && r + 1 <= s.q_prev) continue;
          State t = s;
          t.phase = P::kBounceBack;
          t.q_cur = uint8_t(r);
          t.q_prev = uint8_t(r + 1);
          emit(sink, t, -1);
        }
        return;
      }
      for (StateId r : a_.targets(s.q_cur, sc.sym))
        emit_sim_right(sink, s, uint8_t(r), false);
      return;
    }

    case P::kBounceBack: {
      State t = s;
      t.phase = P::kYield;
      emit(sink, t, +1);
      return;
    }

    case P::kYield: {
      switch (s.consumer) {
        case P::kCount: {
          if (sc.kind != Scan::kSym) return;
          const auto& row = a_.targets(s.q_cur, sc.sym);
          bool witness =
              std::binary_search(row.begin(), row.end(), StateId(s.p_out));
          if (!witness && s.idx < s.m) {
            launch_enum(sink, s, P::kCount, uint8_t(s.idx + 1), s.p_out,
                        s.m_next);
            return;
          }
          uint8_t nm = uint8_t(s.m_next + (witness ? 1 : 0));
          if (s.p_out + 1u < n) {
            launch_enum(sink, s, P::kCount, 1, uint8_t(s.p_out + 1), nm);
            return;
          }
          finish_count(sink, s, sc, nm);
          return;
        }
        case P::kMember: {
          if (s.q_cur == a_.accept) {
            State t = s;
            t.phase = P::kAccPend;
            emit(sink, t, -1);
            return;
          }
          if (s.idx < s.m) {
            launch_enum(sink, s, P::kMember, uint8_t(s.idx + 1), 0, 0);
            return;
          }
          State t = s;
          t.phase = P::kRejPend;
          emit(sink, t, -1);
          return;
        }
        case P::kCheck: {
          if (sc.kind != Scan::kSym) return;
          uint32_t target = n - 1 - s.q_cur;
          if (target == 0) {
            if (sc.bit != 1) {
              abort_move(sink, -1);
              return;
            }
            if (s.idx < s.m) {
              launch_enum(sink, s, P::kCheck, uint8_t(s.idx + 1), 0, 0);
              return;
            }
            advance_driver(sink, s.m, s.posmod, n);
            return;
          }
          State t = s;
          t.phase = P::kCheckBitL;
          emit(sink, t, -1);
          return;
        }
        default:
          return;
      }
    }

    case P::kCheckBitL: {
      if (sc.kind != Scan::kSym) return;
      if (s.dist == n - 1 - s.q_cur) {
        if (sc.bit != 1) {
          abort_move(sink, -1);
          return;
        }
        State t = s;
        t.phase = s.dist == 1 ? P::kCheckNext : P::kCheckBitR;
        emit(sink, t, +1);
        return;
      }
      State t = s;
      emit(sink, t, -1);
      return;
    }

    case P::kCheckBitR: {
      State t = s;
      if (s.dist > 1) {
        emit(sink, t, +1);
        return;
      }
      t.phase = P::kCheckNext;
      emit(sink, t, +1);
      return;
    }

    case P::kCheckNext: {
      if (s.idx < s.m) {
        launch_enum(sink, s, P::kCheck, uint8_t(s.idx + 1), 0, 0);
        return;
      }
      advance_driver(sink, s.m, s.posmod, n);
      return;
    }

    case P::kCheckCountL: {
      if (sc.kind != Scan::kSym) return;
      uint8_t scratch = uint8_t(s.m_next + sc.bit);
      if (scratch > n) return;
      if (s.dist == n - 1) {
        if (scratch != s.m) {
          abort_move(sink, +1);
          return;
        }
        State t = s;
        t.phase = s.dist == 1 ? P::kCheckEnumBegin : P::kCheckCountR;
        t.m_next = 0;
        emit(sink, t, +1);
        return;
      }
      State t = s;
      t.m_next = scratch;
      emit(sink, t, -1);
      return;
    }

    case P::kCheckCountR: {
      State t = s;
      if (s.dist > 1) {
        emit(sink, t, +1);
        return;
      }
      t.phase = P::kCheckEnumBegin;
      emit(sink, t, +1);
      return;
    }

    case P::kCheckEnumBegin: {
      if (s.m == 0) {
        advance_driver(sink, s.m, s.posmod, n);
        return;
      }
      launch_enum(sink, s, P::kCheck, 1, 0, 0);
      return;
    }

    case P::kTailL: {
      if (sc.kind != Scan::kSym) return;
      if (sc.bit != 0) {
        abort_move(sink, -1);
        return;
      }
      uint32_t anchor_mod = (s.posmod + s.dist) % n;
      uint32_t r0 = (anchor_mod + n - 1) % n;
      State t = s;
      if (s.dist == r0) {
        t.phase = s.dist == 1 ? P::kMemberBegin : P::kTailR;
        emit(sink, t, +1);
        return;
      }
      emit(sink, t, -1);
      return;
    }

    case P::kTailR: {
      State t = s;
      if (s.dist > 1) {
        emit(sink, t, +1);
        return;
      }
      t.phase = P::kMemberBegin;
      emit(sink, t, +1);
      return;
    }

    case P::kMemberBegin: {
      if (s.m == 0) {
        State t = s;
        t.phase = P::kRejPend;
        emit(sink, t, -1);
        return;
      }
      launch_enum(sink, s, P::kMember, 1, 0, 0);
      return;
    }

    case P::kAccPend: {
      State t;
      t.phase = P::kAcc;
      sink.push(t, +1);
      return;
    }
    case P::kRejPend: {
      State t;
      t.phase = P::kRej;
      sink.push(t, +1);
      return;
    }

    default:
      return;  // terminals
  }
}

exec::u128 Cg1Machine::state_key(const State& s) const {
  const uint64_t n = n_;
  exec::u128 key = s.phase;
  key = key * 4 + s.consumer;
  key = key * (n + 1) + s.m;
  key = key * (n + 1) + s.m_next;
  key = key * (n + 1) + s.idx;
  key = key * (n + 2) + s.q_prev;
  key = key * n + s.q_cur;
  key = key * n + s.p_out;
  key = key * n + s.posmod;
  key = key * (2 * n) + s.dist;
  return key;
}

exec::u128 Cg1Machine::state_key_bound() const {
  const uint64_t n = n_;
  exec::u128 b = P::kPhaseCount;
  b *= 4;
  b *= (n + 1);
  b *= (n + 1);
  b *= (n + 1);
  b *= (n + 2);
  b *= n;
  b *= n;
  b *= n;
  b *= 2 * n;
  return b;
}

std::vector<std::pair<std::string, uint64_t>> Cg1Machine::field_cardinalities()
    const {
  const uint64_t n = n_;
  return {
      {"phase", P::kPhaseCount},
      {"consumer", 4},
      {"m", n + 1},
      {"m_next", n + 1},
      {"idx", n + 1},
      {"q_prev", n + 2},
      {"q_cur", n},
      {"p_out", n},
      {"posmod", n},
      {"dist", 2 * n},
  };
}

}  // namespace svnfa
