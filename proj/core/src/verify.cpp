#include "svnfa/verify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "svnfa/tables.hpp"

namespace svnfa {

bool oracle_membership(const OneWayNfa& a, const Word& w) {
  return qx_one_way(a, w).contains(a.accept);
}

bool oracle_membership(const TwoWayNfa& a, const Word& w,
                       const exec::Limits& lim) {
  exec::TwoWayNfaMachine m(a);
  return exec::decide(m, w, lim).accept_path;
}

std::vector<Word> all_words(uint32_t num_symbols, uint32_t len) {
  std::vector<Word> out;
  Word w(len, 0);
  for (;;) {
    out.push_back(w);
    uint32_t i = len;
    while (i > 0) {
      if (++w[i - 1] < num_symbols) break;
      w[i - 1] = 0;
      --i;
    }
    if (i == 0) return out;
  }
}

namespace {

std::string word_str(const Word& w) {
  std::string s;
  for (SymbolId c : w) s += char('a' + c % 26);
  return s.empty() ? "(empty)" : s;
}

std::string bits_str(const AnnotatedWord& x) {
  std::string s;
  for (const auto& c : x) s += char('0' + c.bit);
  return s.empty() ? "(empty)" : s;
}

std::string outcome_str(bool acc, bool rej) {
  std::string s = "accept=";
  s += acc ? "yes" : "no";
  s += " reject=";
  s += rej ? "yes" : "no";
  return s;
}

// One work item: a word, checked against the oracle on its annotation and
// against the don't-care contract on malformed variants.
template <class DecideFn>
void sweep_word(const Word& w, bool member, const AnnotationSpec& spec,
                const SweepOptions& opts, DecideFn&& decide_on,
                SweepReport& rep, std::mt19937_64& rng) {
  AnnotatedWord good = annotate(spec, w);
  exec::Outcome out = decide_on(good);
  rep.words_checked++;
  if (out.accept_path != member || out.reject_path == member) {
    rep.failures.push_back(SweepFailure{
        word_str(w), bits_str(good),
        outcome_str(member, !member),
        outcome_str(out.accept_path, out.reject_path)});
    return;
  }
  if (member)
    rep.accept_agreements++;
  else
    rep.reject_agreements++;

  auto check_malformed = [&](const AnnotatedWord& bad) {
    if (bad == good) return;
    exec::Outcome o = decide_on(bad);
    rep.malformed_checked++;
    if (o.accept_path || o.reject_path) {
      rep.failures.push_back(SweepFailure{word_str(w), bits_str(bad),
                                          outcome_str(false, false),
                                          outcome_str(o.accept_path,
                                                      o.reject_path)});
    } else {
      rep.malformed_clean++;
    }
  };

  if (opts.exhaustive_tracks_upto6 && w.size() <= 6 && !w.empty()) {
    for (uint64_t mask = 0; mask < (uint64_t(1) << w.size()); ++mask) {
      AnnotatedWord bad = good;
      for (size_t i = 0; i < w.size(); ++i)
        bad[i].bit = uint8_t((mask >> i) & 1);
      check_malformed(bad);
    }
    return;
  }
  if (opts.bit_flips) {
    for (size_t i = 0; i < w.size(); ++i) {
      AnnotatedWord bad = good;
      bad[i].bit ^= 1;
      check_malformed(bad);
    }
  }
  for (uint32_t t = 0; t < opts.random_tracks_per_word && !w.empty(); ++t) {
    AnnotatedWord bad = good;
    for (auto& c : bad) c.bit = uint8_t(rng() & 1);
    check_malformed(bad);
  }
}

template <class DecideFn>
SweepReport run_sweep(uint32_t num_symbols, const AnnotationSpec& spec,
                      const SweepOptions& opts, DecideFn&& decide_on,
                      const std::vector<char>& membership) {
  // Enumerate all words up to max_len in a fixed order.
  std::vector<Word> words;
  for (uint32_t len = 0; len <= opts.max_len; ++len)
    for (auto& w : all_words(num_symbols, len)) words.push_back(w);

  uint32_t jobs = std::max(1u, opts.jobs);
  std::vector<SweepReport> parts(jobs);
  std::atomic<size_t> next{0};
  auto worker = [&](uint32_t id) {
    std::mt19937_64 rng(opts.seed + id * 0x9e3779b9ull);
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= words.size()) return;
      sweep_word(words[idx], membership[idx] != 0, spec, opts, decide_on,
                 parts[id], rng);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (uint32_t t = 0; t < jobs; ++t) threads.emplace_back(worker, t);
    for (auto& t : threads) t.join();
  }
  SweepReport rep;
  rep.max_len = opts.max_len;
  rep.automaton_id = opts.automaton_id;
  for (auto& p : parts) {
    rep.words_checked += p.words_checked;
    rep.accept_agreements += p.accept_agreements;
    rep.reject_agreements += p.reject_agreements;
    rep.malformed_checked += p.malformed_checked;
    rep.malformed_clean += p.malformed_clean;
    for (auto& f : p.failures) rep.failures.push_back(f);
  }
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) {
              return std::tie(a.word, a.annotation) <
                     std::tie(b.word, b.annotation);
            });
  return rep;
}

}  // namespace

SweepReport check_property_d(Mode mode, const OneWayNfa& a,
                             const SweepOptions& opts) {
  if (mode != Mode::kCg1)
    throw std::invalid_argument("one-way source requires cg1");
  AnnotationSpec spec = AnnotationSpec::cg1(a);
  Cg1Options mopts;
  mopts.skip_annotation_check = opts.mutate_skip_checks;
  Cg1Machine machine = build_cg1(a, mopts);

  std::vector<char> membership;
  for (uint32_t len = 0; len <= opts.max_len; ++len)
    for (auto& w : all_words(uint32_t(a.alphabet.size()), len))
      membership.push_back(oracle_membership(a, w) ? 1 : 0);

  SweepReport rep = run_sweep(
      uint32_t(a.alphabet.size()), spec, opts,
      [&](const AnnotatedWord& x) {
        return exec::decide(machine, x, opts.limits);
      },
      membership);
  rep.mode = "cg1";
  return rep;
}

SweepReport check_property_d(Mode mode, const TwoWayNfa& a,
                             const SweepOptions& opts) {
  if (mode != Mode::kCg2)
    throw std::invalid_argument("two-way source requires cg2");
  Cg2Options mopts;
  mopts.clock_enabled = opts.cg2_clock;
  mopts.skip_table_check = opts.mutate_skip_checks;
  Cg2Machine machine = build_cg2(a, mopts);
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());

  std::vector<char> membership;
  for (uint32_t len = 0; len <= opts.max_len; ++len)
    for (auto& w : all_words(uint32_t(a.alphabet.size()), len))
      membership.push_back(oracle_membership(a, w, opts.limits) ? 1 : 0);

  SweepReport rep = run_sweep(
      uint32_t(a.alphabet.size()), spec, opts,
      [&](const AnnotatedWord& x) {
        return exec::decide(machine, x, opts.limits);
      },
      membership);
  rep.mode = "cg2";
  return rep;
}

namespace {

void suite_expect(SweepReport& rep, bool cond, const std::string& what) {
  rep.words_checked++;
  if (cond) {
    rep.accept_agreements++;
  } else {
    rep.failures.push_back(SweepFailure{what, "", "holds", "violated"});
  }
}

}  // namespace

SweepReport check_tables_suite(const TwoWayNfa& a,
                               const TablesSuiteOptions& opts) {
  SweepReport rep;
  rep.automaton_id = opts.automaton_id;
  rep.mode = "tables";
  rep.max_len = opts.max_prefix;
  const uint32_t k = uint32_t(a.alphabet.size());
  NormalizedTwoWayNfa norm = normalize_restart(a);
  const TwoWayNfa& an = norm.inner;
  const uint32_t stab = an.n * (an.n - 1);

  std::vector<Word> prefixes;
  for (uint32_t len = 0; len <= opts.max_prefix; ++len)
    for (auto& u : all_words(k, len)) prefixes.push_back(u);

  for (const Word& u : prefixes) {
    Relation lt = ltable(an, u, opts.limits);
    // Update rule against the direct table of the extended prefix.
    for (SymbolId s = 0; s < k; ++s) {
      Word u2 = u;
      u2.push_back(s);
      Relation direct = ltable(an, u2, opts.limits);
      Relation updated = update_ltable(an, lt, s);
      suite_expect(rep, direct == updated,
                   "update == direct table after '" + word_str(u2) + "'");
    }
    // Restart row carries the frontier set; restart column stays empty.
    StateSet qx = qx_two_way(an, u, opts.limits);
    suite_expect(rep, lt.row(norm.restart) == qx,
                 "restart row == frontier set at '" + word_str(u) + "'");
    suite_expect(rep, lt.column(norm.restart).size() == 0,
                 "restart column empty at '" + word_str(u) + "'");
    // Stabilization at n(n-1), monotone below.
    for (uint32_t tsym : {uint32_t(0), an.tape().rend()}) {
      Relation star = s_star_from(an, lt, tsym);
      suite_expect(rep, s_rel_from(an, lt, tsym, stab) == star,
                   "stable at n(n-1) for '" + word_str(u) + "'");
      suite_expect(rep, s_rel_from(an, lt, tsym, stab + 3) == star,
                   "still stable past n(n-1) for '" + word_str(u) + "'");
      Relation prev = s_rel_from(an, lt, tsym, 0);
      bool mono = true;
      for (uint32_t j = 1; j <= stab; ++j) {
        Relation cur = s_rel_from(an, lt, tsym, j);
        if (!prev.subset_of(cur)) mono = false;
        prev = cur;
      }
      suite_expect(rep, mono, "bounded-visit chain monotone at '" +
                                  word_str(u) + "'");
    }
    // Left-table override identities.
    Relation back = ltable(with_left_table(an, lt), Word{}, opts.limits);
    suite_expect(rep, back == lt,
                 "override table read back at '" + word_str(u) + "'");
  }
  // Recognition through tables agrees with the engine.
  for (uint32_t len = 0; len <= opts.max_word; ++len)
    for (auto& w : all_words(k, len)) {
      bool via_tables = accepts_via_ltables(norm, w, opts.limits);
      bool via_engine = oracle_membership(a, w, opts.limits);
      bool via_engine_norm = oracle_membership(an, w, opts.limits);
      suite_expect(rep, via_tables == via_engine,
                   "tables recognition at '" + word_str(w) + "'");
      suite_expect(rep, via_engine_norm == via_engine,
                   "normalization preserves the language at '" +
                       word_str(w) + "'");
    }
  return rep;
}

OneWayNfa random_one_way(uint32_t n, uint32_t num_symbols,
                         std::mt19937_64& rng) {
  OneWayNfa a;
  a.n = n;
  for (uint32_t s = 0; s < num_symbols; ++s)
    a.alphabet.push_back(std::string(1, char('a' + s)));
  a.init_delta();
  a.start = 0;
  a.accept = uint32_t(rng() % n);
  for (StateId p = 0; p < n; ++p)
    for (SymbolId s = 0; s < num_symbols; ++s) {
      uint32_t cnt = uint32_t(rng() % 3);
      for (uint32_t t = 0; t < cnt; ++t)
        a.add_transition(p, s, uint32_t(rng() % n));
    }
  return a;
}

TwoWayNfa random_two_way(uint32_t n, uint32_t num_symbols,
                         std::mt19937_64& rng) {
  TwoWayNfa a;
  a.n = n;
  for (uint32_t s = 0; s < num_symbols; ++s)
    a.alphabet.push_back(std::string(1, char('a' + s)));
  a.init_delta();
  a.start = 0;
  a.accept = uint32_t(rng() % n);
  auto tape = a.tape();
  for (StateId p = 0; p < n; ++p)
    for (uint32_t t = 0; t < tape.count(); ++t) {
      uint32_t cnt = uint32_t(rng() % 3);
      for (uint32_t c = 0; c < cnt; ++c) {
        Dir d = (rng() & 1) ? Dir::kRight : Dir::kLeft;
        if (t == tape.lend()) d = Dir::kRight;
        if (t == tape.rend()) d = Dir::kLeft;
        a.add_transition(p, t, uint32_t(rng() % n), d);
      }
    }
  return a;
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string report_to_json(const SweepReport& r) {
  std::ostringstream o;
  o << "{\"automaton\":\"" << json_escape(r.automaton_id) << "\","
    << "\"mode\":\"" << r.mode << "\","
    << "\"max_len\":" << r.max_len << ","
    << "\"words_checked\":" << r.words_checked << ","
    << "\"accept_agreements\":" << r.accept_agreements << ","
    << "\"reject_agreements\":" << r.reject_agreements << ","
    << "\"malformed_checked\":" << r.malformed_checked << ","
    << "\"malformed_clean\":" << r.malformed_clean << ","
    << "\"failures\":[";
  for (size_t i = 0; i < r.failures.size(); ++i) {
    const auto& f = r.failures[i];
    if (i) o << ",";
    o << "{\"word\":\"" << json_escape(f.word) << "\",\"annotation\":\""
      << json_escape(f.annotation) << "\",\"expected\":\""
      << json_escape(f.expected) << "\",\"got\":\"" << json_escape(f.got)
      << "\"}";
  }
  o << "]}";
  return o.str();
}

}  // namespace svnfa
