#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "svnfa/annot.hpp"
#include "svnfa/automaton.hpp"
#include "svnfa/cg1.hpp"
#include "svnfa/cg2.hpp"
#include "svnfa/exec.hpp"

namespace svnfa {

// Membership decided with nothing but the base engine.
bool oracle_membership(const OneWayNfa& a, const Word& w);
bool oracle_membership(const TwoWayNfa& a, const Word& w,
                       const exec::Limits& lim = {});

struct SweepFailure {
  std::string word;
  std::string annotation;  // bit string actually fed to the machine
  std::string expected;
  std::string got;
};

struct SweepReport {
  std::string automaton_id;
  std::string mode;
  uint32_t max_len = 0;
  uint64_t words_checked = 0;
  uint64_t accept_agreements = 0;
  uint64_t reject_agreements = 0;
  uint64_t malformed_checked = 0;
  uint64_t malformed_clean = 0;
  std::vector<SweepFailure> failures;
  bool ok() const { return failures.empty(); }
};

struct SweepOptions {
  uint32_t max_len = 6;
  uint32_t random_tracks_per_word = 0;  // extra malformed samples
  bool exhaustive_tracks_upto6 = false; // every annotation track when short
  bool bit_flips = true;
  uint64_t seed = 0;
  uint32_t jobs = 1;
  exec::Limits limits;
  bool cg2_clock = true;  // run the clocked two-way machine
  bool mutate_skip_checks = false;
  std::string automaton_id = "unnamed";
};

// Exhaustively compares the constructed machine against the membership
// oracle on annotated words up to max_len, plus malformed samples that must
// decide nothing.
SweepReport check_property_d(Mode mode, const OneWayNfa& a,
                             const SweepOptions& opts);
SweepReport check_property_d(Mode mode, const TwoWayNfa& a,
                             const SweepOptions& opts);

struct TablesSuiteOptions {
  uint32_t max_prefix = 4;
  uint32_t max_word = 6;
  exec::Limits limits;
  std::string automaton_id = "unnamed";
};

// Cross-checks the table algebra against the engine-based oracles:
// one-symbol updates, stabilization, restart row/column, recognition.
SweepReport check_tables_suite(const TwoWayNfa& a,
                               const TablesSuiteOptions& opts);

// Seeded generators used by the harness and the CLI.
OneWayNfa random_one_way(uint32_t n, uint32_t num_symbols, std::mt19937_64& rng);
TwoWayNfa random_two_way(uint32_t n, uint32_t num_symbols, std::mt19937_64& rng);

// Every word over [0, num_symbols) of length exactly len, lex order.
std::vector<Word> all_words(uint32_t num_symbols, uint32_t len);

std::string report_to_json(const SweepReport& r);

}  // namespace svnfa
