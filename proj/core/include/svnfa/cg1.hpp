#pragma once

#include <cstdint>

#include "svnfa/annot.hpp"
#include "svnfa/annotated.hpp"
#include "svnfa/automaton.hpp"
#include "svnfa/exec.hpp"

namespace svnfa {

// Control record of the machine built from a one-way NFA. The machine walks
// the annotated tape left to right, carrying the size m of the reachable
// state set of the consumed prefix, recomputing it per cell by enumerating
// the previous set through annotation-guided simulations, checking each
// completed annotation block, and testing the accepting state at the end.
struct Cg1State {
  enum Phase : uint8_t {
    kDriver,
    kSelWalk,        // walk left to pick an annotated state (or the start)
    kBackWalk,       // plain walk right to where the simulation resumes
    kConsume,        // direct simulation, one input symbol per right move
    kBounceBack,     // extra left-right hop when the anchor cell is consumed
    kYield,          // back at the anchor with a freshly enumerated state
    kCheckCountL,
    kCheckCountR,
    kCheckEnumBegin,
    kCheckBitL,
    kCheckBitR,
    kCheckNext,
    kTailL,
    kTailR,
    kMemberBegin,
    kAccPend,
    kRejPend,
    kAcc,
    kRej,
    kAbort,
  };
  static constexpr uint32_t kPhaseCount = 20;

  enum Consumer : uint8_t { kNone = 0, kCount = 1, kCheck = 2, kMember = 3 };

  uint8_t phase = kDriver;
  uint8_t consumer = kNone;
  uint8_t m = 0;       // set size for the consumed prefix
  uint8_t m_next = 0;  // next set size in progress / count scratch
  uint8_t idx = 0;     // enumeration iteration, 1-based
  uint8_t q_prev = 0;  // 0 = none, else previous yield + 1
  uint8_t q_cur = 0;   // simulated state / current yield
  uint8_t p_out = 0;   // candidate state being counted
  uint8_t posmod = 0;  // head position mod n
  uint8_t dist = 0;    // cells left of the fragment anchor

  bool operator==(const Cg1State&) const = default;
};

struct Cg1Options {
  bool skip_annotation_check = false;  // fault injection for the harness
};

class Cg1Machine {
 public:
  using State = Cg1State;

  explicit Cg1Machine(const OneWayNfa& a, Cg1Options opts = {});

  State initial_state() const;
  int initial_pos() const { return 1; }
  void step(const State& s, const exec::Scan& sc,
            exec::StepSink<State>& sink) const;
  exec::Class classify(const State& s, const exec::Scan&) const;
  State terminal_state(exec::Class c) const;

  exec::u128 state_key(const State& s) const;
  exec::u128 state_key_bound() const;

  const OneWayNfa& source() const { return a_; }
  uint32_t num_symbols() const { return uint32_t(a_.alphabet.size()); }

  // Cardinality of each control field, as named in Cg1State order.
  std::vector<std::pair<std::string, uint64_t>> field_cardinalities() const;

 private:
  void emit(exec::StepSink<State>& sink, State s, int d) const;
  void emit_sim_right(exec::StepSink<State>& sink, const State& s,
                      uint8_t value, bool selecting) const;
  void launch_enum(exec::StepSink<State>& sink, const State& s,
                   uint8_t consumer, uint8_t idx, uint8_t p_out,
                   uint8_t m_next) const;
  void finish_count(exec::StepSink<State>& sink, const State& s,
                    const exec::Scan& sc, uint8_t new_m) const;
  uint32_t zone_lo(const State& s) const;

  OneWayNfa a_;
  Cg1Options opts_;
  uint32_t n_;
};

Cg1Machine build_cg1(const OneWayNfa& a, Cg1Options opts = {});

}  // namespace svnfa
