// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Scales are chosen so the whole run fits a desk machine.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pathcount.hpp"
#include "svnfa/cg1.hpp"
#include "svnfa/cg2.hpp"
#include "svnfa/compile.hpp"
#include "svnfa/verify.hpp"

using namespace svnfa;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("criterion %d [%s]: %s%s%s\n", idx, name.c_str(),
              pass ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Word unary(uint32_t k) { return Word(k, 0); }

// 1. Accept/reject paths of the one-way construction match the oracle on
// well-annotated words, for a fixture plus random machines.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<OneWayNfa> machines = {make_a1()};
  std::mt19937_64 rng(1);
  while (machines.size() < 21) {
    uint32_t n = 2 + uint32_t(rng() % 3);  // 2..4
    machines.push_back(random_one_way(n, 2, rng));
  }
  uint64_t words = 0;
  std::string fail;
  for (size_t i = 0; i < machines.size() && fail.empty(); ++i) {
    SweepOptions opts;
    opts.max_len = 8;
    opts.bit_flips = false;  // malformed inputs are criterion 2's job
    opts.jobs = 2;
    opts.automaton_id = "machine-" + std::to_string(i);
    SweepReport rep = check_property_d(Mode::kCg1, machines[i], opts);
    words += rep.words_checked;
    if (!rep.ok())
      fail = opts.automaton_id + " word '" + rep.failures[0].word + "'";
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu machines, %llu words, %.1fs%s%s", machines.size(),
                (unsigned long long)words, seconds_since(t0),
                fail.empty() ? "" : ", first failure: ", fail.c_str());
  report(1, "one-way construction vs oracle", fail.empty(), detail);
}

// 2. Single-bit flips of every annotation decide nothing.
void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<OneWayNfa> machines = {make_a1()};
  std::mt19937_64 rng(2);
  while (machines.size() < 6)
    machines.push_back(random_one_way(2 + uint32_t(rng() % 3), 2, rng));
  uint64_t flips = 0;
  std::string fail;
  for (size_t i = 0; i < machines.size() && fail.empty(); ++i) {
    SweepOptions opts;
    opts.max_len = 6;
    opts.bit_flips = true;
    opts.jobs = 2;
    opts.automaton_id = "machine-" + std::to_string(i);
    SweepReport rep = check_property_d(Mode::kCg1, machines[i], opts);
    flips += rep.malformed_checked;
    if (!rep.ok())
      fail = opts.automaton_id + " word '" + rep.failures[0].word + "'";
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "%llu flipped annotations, %.1fs%s%s",
                (unsigned long long)flips, seconds_since(t0),
                fail.empty() ? "" : ", first failure: ", fail.c_str());
  report(2, "one-way don't-care contract", fail.empty(), detail);
}

// 3. The control-record product bounds the compiled machine, with the
// constant taken from the product itself over the tested range.
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  // A fixed machine family so counts are comparable across n: a cycle with
  // an extra nondeterministic stay.
  auto family = [](uint32_t n) {
    OneWayNfa a;
    a.n = n;
    a.alphabet = {"a", "b"};
    a.init_delta();
    a.start = 0;
    a.accept = n - 1;
    for (StateId p = 0; p < n; ++p) {
      a.add_transition(p, 0, (p + 1) % n);
      a.add_transition(p, 1, p);
      a.add_transition(p, 1, (p + 1) % n);
    }
    return a;
  };
  double big_c = 0;
  std::vector<uint64_t> products, reachables;
  for (uint32_t n = 2; n <= 5; ++n) {
    Cg1Machine m = build_cg1(family(n));
    uint64_t product = 1;
    for (auto& [name, card] : m.field_cardinalities()) product *= card;
    products.push_back(product);
    big_c = std::max(big_c, double(product) / std::pow(double(n), 7));
  }
  bool ok = true;
  for (uint32_t n = 2; n <= 5; ++n) {
    CompileResult res = compile_explicit(build_cg1(family(n)));
    reachables.push_back(res.reachable_states);
    if (double(res.reachable_states) > big_c * std::pow(double(n), 7))
      ok = false;
    if (double(products[n - 2]) > big_c * std::pow(double(n), 7) + 0.5)
      ok = false;
  }
  for (size_t i = 1; i < reachables.size(); ++i)
    if (reachables[i] < reachables[i - 1]) ok = false;
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "C=%.1f; reachable n=2..5: %llu %llu %llu %llu; products "
                "%llu..%llu; %.1fs",
                big_c, (unsigned long long)reachables[0],
                (unsigned long long)reachables[1],
                (unsigned long long)reachables[2],
                (unsigned long long)reachables[3],
                (unsigned long long)products.front(),
                (unsigned long long)products.back(), seconds_since(t0));
  report(3, "one-way size bound", ok, detail);
}

// 4. Table algebra vs the engine oracles on random two-way machines.
void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<TwoWayNfa> machines = {make_a2(), make_all_accepting()};
  std::mt19937_64 rng(4);
  while (machines.size() < 22) {
    uint32_t n = 2 + uint32_t(rng() % 2);  // 2..3
    machines.push_back(random_two_way(n, machines.size() % 2 ? 1 : 2, rng));
  }
  uint64_t checks = 0;
  std::string fail;
  for (size_t i = 0; i < machines.size() && fail.empty(); ++i) {
    TablesSuiteOptions opts;
    opts.max_prefix = 4;
    opts.max_word = 6;
    opts.automaton_id = "machine-" + std::to_string(i);
    SweepReport rep = check_tables_suite(machines[i], opts);
    checks += rep.words_checked;
    if (!rep.ok()) fail = opts.automaton_id + ": " + rep.failures[0].word;
  }
  char detail[200];
  std::snprintf(detail, sizeof detail, "%zu machines, %llu identities, %.1fs%s%s",
                machines.size(), (unsigned long long)checks,
                seconds_since(t0), fail.empty() ? "" : ", first failure: ",
                fail.c_str());
  report(4, "table algebra suite", fail.empty(), detail);
}

// 5. Accept/reject paths of the two-way construction match the oracle;
// malformed samples decide nothing.
void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<TwoWayNfa> machines = {make_a2()};
  std::mt19937_64 rng(5);
  while (machines.size() < 6) {
    uint32_t n = 1 + uint32_t(rng() % 2);  // 1..2 -> normalized 2..3
    uint32_t syms = machines.size() < 4 ? 1 : 2;
    TwoWayNfa cand = random_two_way(n, syms, rng);
    machines.push_back(cand);
  }
  uint64_t words = 0, malformed = 0;
  std::string fail;
  for (size_t i = 0; i < machines.size() && fail.empty(); ++i) {
    SweepOptions opts;
    opts.max_len = 4;
    opts.bit_flips = true;
    opts.random_tracks_per_word = 2;
    opts.seed = 5000 + i;
    opts.jobs = 2;
    opts.limits.max_configs = 400'000'000;
    opts.automaton_id = "machine-" + std::to_string(i);
    SweepReport rep = check_property_d(Mode::kCg2, machines[i], opts);
    words += rep.words_checked;
    malformed += rep.malformed_checked;
    if (!rep.ok())
      fail = opts.automaton_id + " word '" + rep.failures[0].word + "'";
  }
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "%zu machines, %llu words, %llu malformed, %.1fs%s%s",
                machines.size(), (unsigned long long)words,
                (unsigned long long)malformed, seconds_since(t0),
                fail.empty() ? "" : ", first failure: ", fail.c_str());
  report(5, "two-way construction vs oracle", fail.empty(), detail);
}

// 6. Fragment endpoint sets match the table oracles; pair enumerations
// complete exactly once at the true size and never at size+1.
void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string what;
  auto run_fixture = [&](const TwoWayNfa& a, uint32_t wlen) {
    Cg2Machine machine = build_cg2(a);
    AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
    const TwoWayNfa& an = machine.normalized().inner;
    const uint32_t N = machine.block_size();
    Word w = unary(wlen);
    AnnotatedWord x = annotate(spec, w);
    auto is_done = [](const Cg2State& s, int32_t) {
      return s.phase == Cg2State::kHrnDone;
    };
    for (int32_t c = 1; c <= int32_t(x.size()) + 1 && ok; ++c) {
      Word prefix(w.begin(), w.begin() + (c - 1));
      Relation lt = ltable(an, prefix);
      for (StateId p = 0; p < an.n; ++p) {
        std::set<StateId> got, want;
        exec::explore(machine, x, {machine.nsimt_entry(p, c)}, {},
                      [&](const Cg2State& s, int32_t, const exec::Scan&) {
                        if (s.phase == Cg2State::kHrnDone) {
                          got.insert(s.qe);
                          return false;
                        }
                        return true;
                      });
        for (StateId q = 0; q < an.n; ++q)
          if (lt.contains(p, q)) want.insert(q);
        if (got != want) {
          ok = false;
          what = "simulation endpoints at position " + std::to_string(c);
        }
      }
      uint32_t tsym = c == int32_t(x.size()) + 1 ? an.tape().rend()
                                                 : w[c - 1];
      for (uint32_t j : {uint32_t(1), N}) {
        Relation expect = s_rel(an, prefix, tsym, j);
        for (StateId p = 0; p < an.n; ++p) {
          std::set<StateId> got, want;
          exec::explore(machine, x, {machine.nsims_entry(p, j, c)}, {},
                        [&](const Cg2State& s, int32_t, const exec::Scan&) {
                          if (s.phase == Cg2State::kHrnDone) {
                            got.insert(s.qe);
                            return false;
                          }
                          return true;
                        });
          for (StateId q = 0; q < an.n; ++q)
            if (expect.contains(p, q)) want.insert(q);
          if (got != want) {
            ok = false;
            what = "walk endpoints at position " + std::to_string(c);
          }
        }
      }
      uint32_t mt = lt.size();
      if (count_paths(machine, x, machine.enumt_entry(mt, c), is_done) != 1 ||
          count_paths(machine, x, machine.enumt_entry(mt + 1, c), is_done) !=
              0) {
        ok = false;
        what = "table enumeration at position " + std::to_string(c);
      }
      uint32_t ms = s_rel(an, prefix, tsym, N).size();
      if (count_paths(machine, x, machine.enums_entry(ms, N, c), is_done) !=
              1 ||
          count_paths(machine, x, machine.enums_entry(ms + 1, N, c),
                      is_done) != 0) {
        ok = false;
        what = "walk enumeration at position " + std::to_string(c);
      }
    }
  };
  run_fixture(make_a2(), 12);
  TwoWayNfa tiny;
  tiny.n = 1;
  tiny.alphabet = {"a"};
  tiny.init_delta();
  tiny.start = 0;
  tiny.accept = 0;
  run_fixture(tiny, 6);
  char detail[160];
  std::snprintf(detail, sizeof detail, "two fixtures, %.1fs%s%s",
                seconds_since(t0), ok ? "" : ", failed: ", what.c_str());
  report(6, "fragment endpoint oracles", ok, detail);
}

// 7. Clocked fragments complete exactly the endpoints the unclocked search
// finds, and the longest completing run fits under the clock.
void criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  uint32_t max_len = 0, limit = 0;
  std::vector<TwoWayNfa> machines = {make_a2(), make_all_accepting()};
  std::mt19937_64 rng(7);
  while (machines.size() < 6)
    machines.push_back(random_two_way(2, 1, rng));
  for (auto& a : machines) {
    Cg2Machine clocked = build_cg2(a, Cg2Options{true, false});
    Cg2Machine unclocked = build_cg2(a, Cg2Options{false, false});
    AnnotationSpec spec = AnnotationSpec::cg2(clocked.normalized());
    const TwoWayNfa& an = clocked.normalized().inner;
    limit = clocked.clock_limit();
    Word w = unary(2 * clocked.block_size());
    AnnotatedWord x = annotate(spec, w);
    for (int32_t c = 1; c <= int32_t(x.size()) + 1; ++c)
      for (StateId p = 0; p < an.n; ++p) {
        std::set<StateId> with_clock, without;
        exec::explore(clocked, x, {clocked.nsimt_entry(p, c)}, {},
                      [&](const Cg2State& s, int32_t, const exec::Scan&) {
                        if (s.phase == Cg2State::kHrnDone) {
                          with_clock.insert(s.qe);
                          max_len = std::max<uint32_t>(max_len, s.clock);
                          return false;
                        }
                        return true;
                      });
        exec::explore(unclocked, x, {unclocked.nsimt_entry(p, c)}, {},
                      [&](const Cg2State& s, int32_t, const exec::Scan&) {
                        if (s.phase == Cg2State::kHrnDone) {
                          without.insert(s.qe);
                          return false;
                        }
                        return true;
                      });
        if (with_clock != without) ok = false;
      }
  }
  if (max_len > limit - 1) ok = false;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu machines, longest run %u of %u allowed steps, %.1fs",
                machines.size(), max_len, limit - 1, seconds_since(t0));
  report(7, "fragment haltingness", ok, detail);
}

// 8. Disabling the annotation checks must surface malformed accepts.
void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  bool cg1_witnessed = false, cg2_witnessed = false;

  SweepOptions opts1;
  opts1.max_len = 4;
  opts1.exhaustive_tracks_upto6 = true;
  opts1.mutate_skip_checks = true;
  SweepReport rep1 = check_property_d(Mode::kCg1, make_a1(), opts1);
  for (auto& f : rep1.failures)
    if (f.got.find("accept=yes") != std::string::npos) cg1_witnessed = true;

  TwoWayNfa tiny;
  tiny.n = 1;
  tiny.alphabet = {"a"};
  tiny.init_delta();
  tiny.start = 0;
  tiny.accept = 0;
  Cg2Machine mutant = build_cg2(tiny, Cg2Options{true, true});
  AnnotationSpec spec = AnnotationSpec::cg2(mutant.normalized());
  AnnotatedWord good = annotate(spec, unary(4));
  for (uint64_t mask = 0; mask < 16 && !cg2_witnessed; ++mask) {
    AnnotatedWord x = good;
    for (size_t i = 0; i < 4; ++i) x[i].bit = uint8_t((mask >> i) & 1);
    if (x == good) continue;
    if (exec::decide(mutant, x).accept_path) cg2_witnessed = true;
  }
  char detail[120];
  std::snprintf(detail, sizeof detail,
                "cg1 witness=%s cg2 witness=%s, %.1fs",
                cg1_witnessed ? "yes" : "no", cg2_witnessed ? "yes" : "no",
                seconds_since(t0));
  report(8, "mutation sensitivity", cg1_witnessed && cg2_witnessed, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures == 0) {
    std::printf("all 8 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
