#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svnfa/annot.hpp"
#include "svnfa/annotated.hpp"
#include "svnfa/automaton.hpp"
#include "svnfa/exec.hpp"
#include "svnfa/tables.hpp"

namespace svnfa {

// Control record of the machine built from a two-way NFA. The head offset hp
// lives in [0, 2N) for N the annotation block size; it tracks the position
// inside a window that slides right one block at a time. The machine carries
// the current ltable size m through three counting passes per input cell and
// checks every completed annotation block against the table it encodes.
struct Cg2State {
  enum Phase : uint8_t {
    kMain,
    kS1Pair,      // next candidate pair for the one-visit relation count
    kEtChoose,    // pick the first component of the next table pair
    kNsSim,       // in-window simulation on the input track
    kNsScan,      // backward scan of the encoded relation
    kNsRet,       // return to the window midpoint after a selection
    kEtYield,
    kSSBegin,     // squaring rounds that grow the bounded-visit relation
    kMSBegin,
    kEsChoose,
    kNsSLoop,     // bounded-visit walk stationed at the anchor cell
    kEsYield,
    kMSDone,
    kTSBegin,     // final pass from the stable relation to the next ltable
    kCtCountL,
    kCtCountR,
    kCtEnumBegin,
    kCtBitL,
    kCtBitR,
    kCtNext,
    kTailL,
    kTailR,
    kHrnDone,     // fragment-harness terminal
    kAcc,
    kRej,
    kAbort,
  };
  static constexpr uint32_t kPhaseCount = 26;

  enum Ce : uint8_t { kCeMember = 0, kCeTable = 1, kCeFinal = 2, kCeCheck = 3 };
  enum Hrn : uint8_t {
    kHrnOff = 0,
    kHrnSimT = 1,
    kHrnSimS = 2,
    kHrnEnumT = 3,
    kHrnEnumS = 4
  };

  uint8_t phase = kMain;
  uint8_t stage = 0;    // 0 scanning the input, 1 deciding at the endmarker
  uint8_t ce = 0;       // consumer of the pair enumeration
  uint8_t msw = 0;      // which membership query of the squaring step
  uint8_t nstc = 0;     // 0 table-pair caller, 1 bounded-visit caller, 2 harness
  uint8_t hrn = 0;
  uint8_t flag = 0;     // membership result / verdict pair seen
  uint16_t hp = 0;
  uint16_t m = 0;       // relation size for the consumed prefix
  uint16_t mn = 0;      // next size in progress / count scratch
  uint8_t po = 0, qo = 0, ro = 0;  // candidate pair and middle state
  uint8_t pe = 0;       // chosen first component
  uint8_t qe = 0;       // yield slot, doubling as the simulated state
  uint16_t pp = 0;      // previous yielded pair index, N*N... see none value
  uint16_t k = 0;       // enumeration iteration
  uint16_t j = 0;       // remaining bounded-visit steps
  uint8_t dbl = 0;      // squaring round
  uint16_t i = 0;       // window offset of the fragment anchor
  uint16_t clock = 0;

  bool operator==(const Cg2State&) const = default;
};

struct Cg2Options {
  bool clock_enabled = true;
  bool skip_table_check = false;  // fault injection for the harness
};

class Cg2Machine {
 public:
  using State = Cg2State;

  explicit Cg2Machine(const TwoWayNfa& a, Cg2Options opts = {});

  State initial_state() const;
  int initial_pos() const { return 1; }
  void step(const State& s, const exec::Scan& sc,
            exec::StepSink<State>& sink) const;
  exec::Class classify(const State& s, const exec::Scan&) const;
  State terminal_state(exec::Class c) const;

  exec::u128 state_key(const State& s) const;
  exec::u128 state_key_bound() const;

  const TwoWayNfa& source() const { return norm_.inner; }
  const NormalizedTwoWayNfa& normalized() const { return norm_; }
  uint32_t num_symbols() const {
    return uint32_t(norm_.inner.alphabet.size());
  }
  uint32_t block_size() const { return N_; }
  uint32_t clock_limit() const { return clk_; }  // max steps per fragment run
  uint32_t initial_table_size() const { return m0_; }
  uint32_t doubling_rounds() const { return rounds_; }

  // Fragment-harness entry points; driver_pos is 1-based.
  std::pair<State, int32_t> nsimt_entry(StateId p, int32_t driver_pos) const;
  std::pair<State, int32_t> nsims_entry(StateId p, uint32_t j,
                                        int32_t driver_pos) const;
  std::pair<State, int32_t> enumt_entry(uint32_t m, int32_t driver_pos) const;
  std::pair<State, int32_t> enums_entry(uint32_t m, uint32_t j,
                                        int32_t driver_pos) const;

  std::vector<std::pair<std::string, uint64_t>> field_cardinalities() const;

 private:
  uint32_t driver_hp(int32_t pos) const { return N_ + (pos - 1) % N_; }
  uint32_t budget(const State& s) const;
  void exit_fragment(exec::StepSink<State>& sink, const State& s,
                     uint8_t value, uint32_t nc) const;
  void enter_fragment(exec::StepSink<State>& sink, State s, uint8_t start,
                      uint8_t caller) const;
  void advance_main(exec::StepSink<State>& sink, uint16_t m,
                    uint16_t hp) const;
  void s1_advance(exec::StepSink<State>& sink, const State& s,
                  uint16_t count) const;
  void ts_advance(exec::StepSink<State>& sink, const State& s,
                  const exec::Scan& sc, uint16_t count) const;

  NormalizedTwoWayNfa norm_;
  Cg2Options opts_;
  uint32_t nn_;      // normalized state count
  uint32_t N_;       // block size nn^2
  uint32_t clk_;     // 2*nn^3
  uint32_t rounds_;  // squaring rounds
  uint32_t m0_;      // empty-prefix table size
  uint16_t pp_none_;
};

Cg2Machine build_cg2(const TwoWayNfa& a, Cg2Options opts = {});

struct Cg2Report {
  uint32_t n = 0;
  uint32_t normalized_n = 0;
  uint64_t structural_bound = 0;   // product of every control field
  // The same product without the head-offset and clock components, the
  // convention under which the polynomial degree is usually quoted.
  uint64_t hp_unclocked_bound = 0;
  std::vector<std::pair<std::string, uint64_t>> per_field;
  uint64_t reachable = 0;  // 0 when not computed
};

Cg2Report state_space_report(const Cg2Machine& m);

// Distinct control records visited while deciding every well-annotated word
// up to max_len. Small sources only; used for the statistics report.
uint64_t cg2_reachable_records(const Cg2Machine& m, uint32_t max_len,
                               const exec::Limits& lim = {});

}  // namespace svnfa
