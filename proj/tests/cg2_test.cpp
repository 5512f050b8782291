#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pathcount.hpp"
#include "svnfa/cg2.hpp"
#include "svnfa/compile.hpp"
#include "svnfa/verify.hpp"

using namespace svnfa;

namespace {

Word unary(uint32_t k) { return Word(k, 0); }

using PairSet = std::set<std::pair<StateId, StateId>>;

PairSet rel_pairs(const Relation& r) {
  PairSet out;
  for (auto& p : r.pairs()) out.insert(p);
  return out;
}

// Endpoint states of all successful in-window simulations started at p.
std::set<StateId> sim_endpoints(const Cg2Machine& m, const AnnotatedWord& x,
                                std::pair<Cg2State, int32_t> entry) {
  std::set<StateId> out;
  exec::explore(m, x, {entry}, {},
                [&](const Cg2State& s, int32_t, const exec::Scan&) {
                  if (s.phase == Cg2State::kHrnDone) {
                    out.insert(s.qe);
                    return false;
                  }
                  return true;
                });
  return out;
}

}  // namespace

TEST_CASE("cg2 on a2 matches the membership oracle") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  for (uint32_t len = 0; len <= 4; ++len) {
    Word w = unary(len);
    bool member = oracle_membership(a, w);  // always false for a2
    exec::Outcome o = exec::decide(machine, annotate(spec, w));
    CHECK(o.accept_path == member);
    CHECK(o.reject_path == !member);
  }
}

TEST_CASE("cg2 on the all-accepting fixture") {
  TwoWayNfa a = make_all_accepting();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  for (uint32_t len = 0; len <= 3; ++len) {
    exec::Outcome o = exec::decide(machine, annotate(spec, unary(len)));
    CHECK(o.accept_path == true);
    CHECK(o.reject_path == false);
  }
}

TEST_CASE("cg2 decides nothing on mangled annotations") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  for (uint32_t len = 1; len <= 3; ++len) {
    AnnotatedWord good = annotate(spec, unary(len));
    for (uint64_t mask = 1; mask < (uint64_t(1) << len); ++mask) {
      AnnotatedWord x = good;
      for (size_t i = 0; i < len; ++i) x[i].bit = uint8_t((mask >> i) & 1);
      exec::Outcome o = exec::decide(machine, x);
      CHECK(o.accept_path == false);
      CHECK(o.reject_path == false);
    }
  }
}

TEST_CASE("cg2 head offset tracks the absolute position") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  const uint32_t N = machine.block_size();
  const TwoWayNfa& an = machine.normalized().inner;
  for (uint32_t len = 0; len <= 3; ++len) {
    Word w = unary(len);
    AnnotatedWord x = annotate(spec, w);
    for (auto& [s, pos] : exec::reachable_configs(machine, x)) {
      if (s.phase == Cg2State::kAcc || s.phase == Cg2State::kRej ||
          s.phase == Cg2State::kAbort)
        continue;
      CHECK(s.hp % N == (pos + N - 1) % N);
      CHECK(s.hp < 2 * N);
      if (s.phase == Cg2State::kMain) {
        REQUIRE(pos >= 1);
        Word prefix(w.begin(), w.begin() + (pos - 1));
        CHECK(s.m == ltable(an, prefix).size());
        CHECK(s.hp == N + (pos - 1) % N);
      }
    }
  }
}

TEST_CASE("in-window simulation endpoints equal the prefix tables") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  const TwoWayNfa& an = machine.normalized().inner;
  Word w = unary(12);  // long enough for completed blocks at block size 9
  AnnotatedWord x = annotate(spec, w);
  for (int32_t c = 1; c <= int32_t(x.size()) + 1; ++c) {
    Word prefix(w.begin(), w.begin() + (c - 1));
    Relation expect = ltable(an, prefix);
    for (StateId p = 0; p < an.n; ++p) {
      auto got = sim_endpoints(machine, x, machine.nsimt_entry(p, c));
      std::set<StateId> want;
      for (StateId q = 0; q < an.n; ++q)
        if (expect.contains(p, q)) want.insert(q);
      CHECK(got == want);
    }
  }
}

TEST_CASE("bounded-visit walk endpoints equal the bounded relations") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  const TwoWayNfa& an = machine.normalized().inner;
  const uint32_t N = machine.block_size();
  Word w = unary(11);
  AnnotatedWord x = annotate(spec, w);
  for (int32_t c : {1, 5, 10, int32_t(x.size()) + 1}) {
    Word prefix(w.begin(), w.begin() + (c - 1));
    uint32_t tsym =
        c == int32_t(x.size()) + 1 ? an.tape().rend() : w[c - 1];
    for (uint32_t j : {uint32_t(0), uint32_t(1), N}) {
      Relation expect = s_rel(an, prefix, tsym, j);
      for (StateId p = 0; p < an.n; ++p) {
        auto got = sim_endpoints(machine, x, machine.nsims_entry(p, j, c));
        std::set<StateId> want;
        for (StateId q = 0; q < an.n; ++q)
          if (expect.contains(p, q)) want.insert(q);
        CHECK(got == want);
      }
      if (j == N) CHECK(rel_pairs(expect) == rel_pairs(s_star(an, prefix, tsym)));
    }
  }
}

TEST_CASE("pair enumerations admit exactly one complete run") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  const TwoWayNfa& an = machine.normalized().inner;
  const uint32_t N = machine.block_size();
  Word w = unary(11);
  AnnotatedWord x = annotate(spec, w);
  auto is_done = [](const Cg2State& s, int32_t) {
    return s.phase == Cg2State::kHrnDone;
  };
  for (int32_t c : {1, 4, 10}) {
    Word prefix(w.begin(), w.begin() + (c - 1));
    uint32_t m_true = ltable(an, prefix).size();
    CHECK(count_paths(machine, x, machine.enumt_entry(m_true, c), is_done) ==
          1);
    CHECK(count_paths(machine, x, machine.enumt_entry(m_true + 1, c),
                      is_done) == 0);
    uint32_t tsym = w[c - 1];
    uint32_t ms = s_rel(an, prefix, tsym, N).size();
    CHECK(count_paths(machine, x, machine.enums_entry(ms, N, c), is_done) ==
          1);
    CHECK(count_paths(machine, x, machine.enums_entry(ms + 1, N, c),
                      is_done) == 0);
  }
}

TEST_CASE("fragment runs stay within the step clock") {
  TwoWayNfa a = make_a2();
  Cg2Machine clocked = build_cg2(a, Cg2Options{true, false});
  Cg2Machine unclocked = build_cg2(a, Cg2Options{false, false});
  AnnotationSpec spec = AnnotationSpec::cg2(clocked.normalized());
  const TwoWayNfa& an = clocked.normalized().inner;
  Word w = unary(12);
  AnnotatedWord x = annotate(spec, w);
  uint32_t max_len = 0;
  for (int32_t c = 1; c <= int32_t(x.size()) + 1; ++c)
    for (StateId p = 0; p < an.n; ++p) {
      auto ec = clocked.nsimt_entry(p, c);
      auto eu = unclocked.nsimt_entry(p, c);
      CHECK(sim_endpoints(clocked, x, ec) == sim_endpoints(unclocked, x, eu));
      exec::explore(clocked, x, {ec}, {},
                    [&](const Cg2State& s, int32_t, const exec::Scan&) {
                      if (s.phase == Cg2State::kHrnDone) {
                        max_len = std::max<uint32_t>(max_len, s.clock);
                        return false;
                      }
                      return true;
                    });
    }
  CHECK(max_len <= clocked.clock_limit() - 1);
  CHECK(max_len > 0);
}

TEST_CASE("clocked and unclocked machines decide alike at desk scale") {
  TwoWayNfa a = make_a2();
  Cg2Machine clocked = build_cg2(a, Cg2Options{true, false});
  Cg2Machine unclocked = build_cg2(a, Cg2Options{false, false});
  AnnotationSpec spec = AnnotationSpec::cg2(clocked.normalized());
  for (uint32_t len = 0; len <= 2; ++len) {
    AnnotatedWord x = annotate(spec, unary(len));
    exec::Outcome oc = exec::decide(clocked, x);
    exec::Outcome ou = exec::decide(unclocked, x);
    CHECK(oc.accept_path == ou.accept_path);
    CHECK(oc.reject_path == ou.reject_path);
  }
}

TEST_CASE("single-state source exercises the block check") {
  // One source state with no moves at all: only the empty word is accepted
  // (the initial configuration already scans the right endmarker).
  TwoWayNfa a;
  a.n = 1;
  a.alphabet = {"a"};
  a.init_delta();
  a.start = 0;
  a.accept = 0;
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  CHECK(machine.block_size() == 4);
  for (uint32_t len = 0; len <= 5; ++len) {
    Word w = unary(len);
    bool member = oracle_membership(a, w);
    CHECK(member == (len == 0));
    exec::Outcome o = exec::decide(machine, annotate(spec, w));
    CHECK(o.accept_path == member);
    CHECK(o.reject_path == !member);
  }
  // A complete block exists at length 4; flipping any bit must stall it.
  AnnotatedWord good = annotate(spec, unary(4));
  for (size_t i = 0; i < good.size(); ++i) {
    AnnotatedWord bad = good;
    bad[i].bit ^= 1;
    exec::Outcome o = exec::decide(machine, bad);
    CHECK(o.accept_path == false);
    CHECK(o.reject_path == false);
  }
}

TEST_CASE("disabling the block check lets a forged table win") {
  TwoWayNfa a;
  a.n = 1;
  a.alphabet = {"a"};
  a.init_delta();
  a.start = 0;
  a.accept = 0;
  Cg2Machine mutant = build_cg2(a, Cg2Options{true, true});
  Cg2Machine honest = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(honest.normalized());
  AnnotatedWord good = annotate(spec, unary(4));
  bool witnessed = false;
  for (uint64_t mask = 0; mask < 16; ++mask) {
    AnnotatedWord x = good;
    for (size_t i = 0; i < 4; ++i) x[i].bit = uint8_t((mask >> i) & 1);
    if (x == good) continue;
    exec::Outcome o = exec::decide(mutant, x);
    if (o.accept_path) witnessed = true;
  }
  CHECK(witnessed);
}

TEST_CASE("observed transition table reproduces the interpreted machine") {
  TwoWayNfa a;
  a.n = 1;
  a.alphabet = {"a"};
  a.init_delta();
  a.start = 0;
  a.accept = 0;
  a.add_transition(0, 0, 0, Dir::kRight);
  a.add_transition(0, a.tape().lend(), 0, Dir::kRight);
  Cg2Machine machine = build_cg2(a);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  std::vector<AnnotatedWord> inputs;
  for (uint32_t len = 0; len <= 5; ++len) {
    Word w = unary(len);
    AnnotatedWord good = annotate(spec, w);
    for (uint64_t mask = 0; mask < (uint64_t(1) << len); ++mask) {
      AnnotatedWord x = good;
      for (size_t i = 0; i < len; ++i) x[i].bit = uint8_t((mask >> i) & 1);
      inputs.push_back(x);
    }
  }
  CompileResult compiled = compile_observed(machine, inputs);
  CHECK(validate(compiled.machine).empty());
  CHECK(compiled.emitted_states > compiled.reachable_states);  // hop states
  exec::TwoWayNfaMachine em(compiled.machine);
  for (const AnnotatedWord& x : inputs) {
    exec::Outcome vm = exec::decide(machine, x);
    exec::Outcome ex = exec::decide(em, doubled_word(x));
    CHECK(vm.accept_path == ex.accept_path);
    CHECK(vm.reject_path == ex.reject_path);
    CHECK(!(vm.accept_path && vm.reject_path));
  }
}

TEST_CASE("state space report shapes and growth") {
  TwoWayNfa a = make_a2();
  Cg2Machine machine = build_cg2(a);
  Cg2Report rep = state_space_report(machine);
  CHECK(rep.n == 2);
  CHECK(rep.normalized_n == 3);
  CHECK(rep.structural_bound >= rep.hp_unclocked_bound);
  CHECK(!rep.per_field.empty());

  // Reachable records stay within the full product (tiny fixture).
  TwoWayNfa tiny;
  tiny.n = 1;
  tiny.alphabet = {"a"};
  tiny.init_delta();
  tiny.start = 0;
  tiny.accept = 0;
  Cg2Machine tm = build_cg2(tiny);
  uint64_t reach = cg2_reachable_records(tm, 4);
  CHECK(reach > 0);
  CHECK(reach <= state_space_report(tm).structural_bound);

  // The head-offset-free, unclocked figure grows within the quoted degree.
  auto bound_at = [](uint32_t n) {
    TwoWayNfa m;
    m.n = n;
    m.alphabet = {"a"};
    m.init_delta();
    m.start = 0;
    m.accept = n - 1;
    return double(state_space_report(build_cg2(m)).hp_unclocked_bound);
  };
  double slope =
      std::log(bound_at(4) / bound_at(1)) / std::log(4.0 / 1.0);
  CHECK(slope <= 18.0);
}
