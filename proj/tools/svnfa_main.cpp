// Command-line front end: membership oracles, table computations,
// construction of the self-verifying machines, simulation, property sweeps
// and state-space statistics.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "svnfa/annot.hpp"
#include "svnfa/cg1.hpp"
#include "svnfa/cg2.hpp"
#include "svnfa/compile.hpp"
#include "svnfa/exec.hpp"
#include "svnfa/tables.hpp"
#include "svnfa/text_format.hpp"
#include "svnfa/verify.hpp"

using namespace svnfa;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

AnyNfa load_automaton(const std::string& path) {
  return parse_automaton(read_file(path));
}

// Compiled machines carry their source embedded in comments so that
// simulate --annot auto stays self-contained.
std::string embed_source(const std::string& machine_text, Mode mode,
                         const std::string& source_text) {
  std::ostringstream out;
  out << machine_text;
  out << "# annot-mode " << (mode == Mode::kCg1 ? "cg1" : "cg2") << "\n";
  out << "# source-begin\n";
  std::istringstream in(source_text);
  std::string line;
  while (std::getline(in, line)) out << "#| " << line << "\n";
  out << "# source-end\n";
  return out.str();
}

struct EmbeddedSource {
  Mode mode;
  AnyNfa automaton;
};

std::optional<EmbeddedSource> extract_source(const std::string& text) {
  std::istringstream in(text);
  std::string line, src;
  std::optional<Mode> mode;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line.rfind("# annot-mode ", 0) == 0) {
      std::string m = line.substr(13);
      mode = m == "cg1" ? Mode::kCg1 : Mode::kCg2;
    } else if (line == "# source-begin") {
      inside = true;
    } else if (line == "# source-end") {
      inside = false;
    } else if (inside && line.rfind("#| ", 0) == 0) {
      src += line.substr(3) + "\n";
    }
  }
  if (!mode || src.empty()) return std::nullopt;
  return EmbeddedSource{*mode, parse_automaton(src)};
}

AnnotationSpec spec_for(Mode mode, const AnyNfa& a) {
  if (mode == Mode::kCg1) {
    auto* one = std::get_if<OneWayNfa>(&a);
    if (!one) throw std::runtime_error("cg1 needs a one-way automaton");
    return AnnotationSpec::cg1(*one);
  }
  auto* two = std::get_if<TwoWayNfa>(&a);
  if (!two) throw std::runtime_error("cg2 needs a two-way automaton");
  return AnnotationSpec::cg2(normalize_restart(*two));
}

Mode parse_mode(const std::string& m) {
  if (m == "cg1") return Mode::kCg1;
  if (m == "cg2") return Mode::kCg2;
  throw CLI::ValidationError("--mode must be cg1 or cg2");
}

int run(int argc, char** argv) {
  CLI::App app{"self-verifying complementation toolkit for finite automata"};
  app.require_subcommand(1);

  uint64_t cap = 10'000'000;
  bool as_json = false;
  uint32_t jobs = 1;
  uint64_t seed = 0;
  app.add_option("--cap", cap, "configuration cap for searches");
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--jobs", jobs, "parallel workers for sweeps");
  app.add_option("--seed", seed, "seed for randomized commands");

  exec::Limits lim;

  // oracle: plain membership by the base engine.
  auto* oracle = app.add_subcommand("oracle", "membership oracle");
  std::string o_aut, o_word;
  oracle->add_option("--automaton", o_aut)->required();
  oracle->add_option("--word", o_word);
  oracle->callback([&] {
    lim.max_configs = cap;
    AnyNfa a = load_automaton(o_aut);
    bool member = std::visit(
        [&](auto& m) {
          Word w = parse_word(o_word, m.alphabet);
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, OneWayNfa>)
            return oracle_membership(m, w);
          else
            return oracle_membership(m, w, lim);
        },
        a);
    if (as_json)
      std::cout << json{{"member", member}} << "\n";
    else
      std::cout << (member ? "true" : "false") << "\n";
  });

  // tables: qx / ltable / sstar / t over a prefix.
  auto* tables = app.add_subcommand("tables", "table computations");
  std::string t_aut, t_prefix, t_op;
  uint32_t t_k = 0;
  tables->add_option("--automaton", t_aut)->required();
  tables->add_option("--prefix", t_prefix)->default_val("");
  tables->add_option("--op", t_op)->required();
  tables->add_option("--k", t_k);
  tables->callback([&] {
    lim.max_configs = cap;
    AnyNfa any = load_automaton(t_aut);
    if (t_op == "qx") {
      if (auto* one = std::get_if<OneWayNfa>(&any)) {
        Word u = parse_word(t_prefix, one->alphabet);
        std::cout << encode_set(qx_one_way(*one, u)) << "\n";
        return;
      }
      auto& two = std::get<TwoWayNfa>(any);
      Word u = parse_word(t_prefix, two.alphabet);
      std::cout << encode_set(qx_two_way(two, u, lim)) << "\n";
      return;
    }
    auto* two = std::get_if<TwoWayNfa>(&any);
    if (!two) throw std::runtime_error("this op needs a two-way automaton");
    if (t_op == "ltable") {
      Word u = parse_word(t_prefix, two->alphabet);
      std::cout << encode_rel(ltable(*two, u, lim)) << "\n";
      return;
    }
    // For sstar/t the final token of the prefix names the scanned symbol;
    // `>` stands for the right endmarker.
    std::istringstream in(t_prefix);
    std::vector<std::string> toks;
    std::string tok;
    while (in >> tok) toks.push_back(tok);
    if (toks.empty())
      throw std::runtime_error("sstar/t need a prefix ending in the scanned "
                               "symbol (use > for the right endmarker)");
    std::string last = toks.back();
    toks.pop_back();
    std::string rest;
    for (auto& s : toks) rest += s + " ";
    Word u = parse_word(rest, two->alphabet);
    uint32_t tsym = last == ">" ? two->tape().rend()
                                : symbol_index(two->alphabet, last);
    if (t_op == "sstar")
      std::cout << encode_rel(s_star(*two, u, tsym, lim)) << "\n";
    else if (t_op == "t")
      std::cout << encode_rel(t_rel(*two, u, tsym, t_k, lim)) << "\n";
    else
      throw std::runtime_error("unknown op " + t_op);
  });

  // convert: build a machine and emit it.
  auto* convert = app.add_subcommand("convert", "build a machine");
  std::string c_mode, c_aut, c_emit = "explicit", c_out;
  convert->add_option("--mode", c_mode)->required();
  convert->add_option("--automaton", c_aut)->required();
  convert->add_option("--emit", c_emit);
  convert->add_option("-o,--output", c_out)->required();
  convert->callback([&] {
    Mode mode = parse_mode(c_mode);
    std::string source_text = read_file(c_aut);
    AnyNfa any = parse_automaton(source_text);
    if (c_emit != "explicit")
      throw std::runtime_error("only --emit explicit is supported");
    CompileResult res;
    if (mode == Mode::kCg1) {
      auto* one = std::get_if<OneWayNfa>(&any);
      if (!one) throw std::runtime_error("cg1 needs a one-way automaton");
      res = compile_explicit(build_cg1(*one));
    } else {
      throw std::runtime_error(
          "the two-way construction is interpreted, not compiled: its "
          "control-record space is too large to enumerate even for tiny "
          "sources; use simulate --mode cg2 instead");
    }
    write_file(c_out,
               embed_source(serialize(res.machine), mode, source_text));
    if (as_json)
      std::cout << json{{"reachable_states", res.reachable_states},
                        {"emitted_states", res.emitted_states}}
                << "\n";
    else
      std::cout << "states " << res.emitted_states << " (control records "
                << res.reachable_states << ")\n";
  });

  // simulate: run a word through a constructed machine.
  auto* simulate = app.add_subcommand("simulate", "run one input");
  std::string s_machine, s_mode, s_aut, s_word, s_annot = "auto",
              s_annot_file;
  simulate->add_option("--machine", s_machine);
  simulate->add_option("--mode", s_mode);
  simulate->add_option("--automaton", s_aut);
  simulate->add_option("--word", s_word);
  simulate->add_option("--annot", s_annot);
  simulate->add_option("--annot-file", s_annot_file);
  simulate->callback([&] {
    lim.max_configs = cap;
    exec::Outcome out;
    AnnotatedWord x;
    if (!s_machine.empty()) {
      std::string text = read_file(s_machine);
      auto any = parse_automaton(text);
      auto* two = std::get_if<TwoWayNfa>(&any);
      if (!two) throw std::runtime_error("--machine must be a 2nfa file");
      // Recover the annotated word.
      std::vector<std::string> base;  // doubled alphabet back to the source
      for (size_t i = 0; i + 1 < two->alphabet.size(); i += 2)
        base.push_back(two->alphabet[i].substr(0, two->alphabet[i].size() - 2));
      if (s_annot == "auto") {
        std::optional<EmbeddedSource> src;
        if (!s_aut.empty() && !s_mode.empty()) {
          src = EmbeddedSource{parse_mode(s_mode), load_automaton(s_aut)};
        } else {
          src = extract_source(text);
        }
        if (!src)
          throw std::runtime_error(
              "--annot auto needs an embedded source or --mode/--automaton");
        AnnotationSpec spec = spec_for(src->mode, src->automaton);
        std::vector<std::string> alpha =
            std::visit([](auto& m) { return m.alphabet; }, src->automaton);
        x = annotate(spec, parse_word(s_word, alpha));
      } else {
        x = parse_annotated_word(read_file(s_annot_file), base);
      }
      exec::TwoWayNfaMachine m(*two);
      out = exec::decide(m, doubled_word(x), lim);
    } else {
      Mode mode = parse_mode(s_mode);
      AnyNfa any = load_automaton(s_aut);
      std::vector<std::string> alpha =
          std::visit([](auto& m) { return m.alphabet; }, any);
      if (s_annot == "auto") {
        AnnotationSpec spec = spec_for(mode, any);
        x = annotate(spec, parse_word(s_word, alpha));
      } else {
        x = parse_annotated_word(read_file(s_annot_file), alpha);
      }
      if (mode == Mode::kCg1) {
        Cg1Machine m = build_cg1(std::get<OneWayNfa>(any));
        out = exec::decide(m, x, lim);
      } else {
        Cg2Machine m = build_cg2(std::get<TwoWayNfa>(any));
        out = exec::decide(m, x, lim);
      }
    }
    std::string verdict = out.accept_path   ? "ACCEPT"
                          : out.reject_path ? "REJECT"
                                            : "NEITHER";
    if (as_json)
      std::cout << json{{"verdict", verdict},
                        {"accept_path", out.accept_path},
                        {"reject_path", out.reject_path},
                        {"visited", out.visited}}
                << "\n";
    else
      std::cout << verdict << "\n";
  });

  // verify: full property sweep.
  auto* verify = app.add_subcommand("verify", "property sweep");
  std::string v_mode, v_aut;
  uint32_t v_maxlen = 6;
  uint32_t v_malformed = 0;
  bool v_unclocked = false;
  verify->add_option("--mode", v_mode)->required();
  verify->add_option("--automaton", v_aut)->required();
  verify->add_option("--max-len", v_maxlen);
  verify->add_option("--malformed", v_malformed,
                     "random annotation tracks per word");
  verify->add_flag("--unclocked", v_unclocked,
                   "drop the step clock of the two-way machine");
  verify->callback([&] {
    Mode mode = parse_mode(v_mode);
    AnyNfa any = load_automaton(v_aut);
    SweepOptions opts;
    opts.max_len = v_maxlen;
    opts.random_tracks_per_word = v_malformed;
    opts.exhaustive_tracks_upto6 = mode == Mode::kCg1;
    opts.seed = seed;
    opts.jobs = jobs;
    opts.limits.max_configs = cap;
    opts.cg2_clock = !v_unclocked;
    opts.automaton_id = v_aut;
    SweepReport rep =
        mode == Mode::kCg1
            ? check_property_d(mode, std::get<OneWayNfa>(any), opts)
            : check_property_d(mode, std::get<TwoWayNfa>(any), opts);
    if (as_json) {
      std::cout << report_to_json(rep) << "\n";
    } else {
      std::cout << "words=" << rep.words_checked
                << " accepts=" << rep.accept_agreements
                << " rejects=" << rep.reject_agreements
                << " malformed=" << rep.malformed_checked
                << " failures=" << rep.failures.size() << "\n";
      for (auto& f : rep.failures)
        std::cout << "FAIL word=" << f.word << " bits=" << f.annotation
                  << " expected " << f.expected << " got " << f.got << "\n";
    }
    if (!rep.ok()) throw std::runtime_error("verification failed");
  });

  // stats: structural bounds and reachable counts.
  auto* stats = app.add_subcommand("stats", "state-space statistics");
  std::string st_mode, st_range = "2..4", st_report;
  stats->add_option("--mode", st_mode)->required();
  stats->add_option("--n-range", st_range);
  stats->add_option("--report", st_report);
  stats->callback([&] {
    Mode mode = parse_mode(st_mode);
    auto dots = st_range.find("..");
    if (dots == std::string::npos)
      throw std::runtime_error("--n-range looks like A..B");
    uint32_t lo = uint32_t(std::stoul(st_range.substr(0, dots)));
    uint32_t hi = uint32_t(std::stoul(st_range.substr(dots + 2)));
    std::mt19937_64 rng(seed);
    json out = json::array();
    for (uint32_t n = lo; n <= hi; ++n) {
      json entry;
      entry["n"] = n;
      if (mode == Mode::kCg1) {
        OneWayNfa a = random_one_way(n, 2, rng);
        Cg1Machine m = build_cg1(a);
        uint64_t product = 1;
        json fields;
        for (auto& [name, card] : m.field_cardinalities()) {
          fields[name] = card;
          product *= card;
        }
        entry["per_field_cardinalities"] = fields;
        entry["structural_bound"] = product;
        if (n <= 5) {
          CompileResult res = compile_explicit(m);
          entry["reachable"] = res.reachable_states;
        }
      } else {
        TwoWayNfa a = random_two_way(n, 2, rng);
        Cg2Machine m = build_cg2(a);
        Cg2Report rep = state_space_report(m);
        json fields;
        for (auto& [name, card] : rep.per_field) fields[name] = card;
        entry["normalized_n"] = rep.normalized_n;
        entry["per_field_cardinalities"] = fields;
        entry["structural_bound"] = rep.structural_bound;
        entry["hp_unclocked_bound"] = rep.hp_unclocked_bound;
        if (rep.normalized_n <= 3) {
          lim.max_configs = cap;
          entry["reachable"] = cg2_reachable_records(m, 2, lim);
        }
      }
      out.push_back(entry);
    }
    std::string text = out.dump(2) + "\n";
    if (!st_report.empty()) write_file(st_report, text);
    std::cout << text;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error&) {
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
