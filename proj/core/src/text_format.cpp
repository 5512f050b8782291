#include "svnfa/text_format.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace svnfa {

namespace {

struct Line {
  int no;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{no, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

uint32_t parse_uint(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return uint32_t(v);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
}

}  // namespace

AnyNfa parse_automaton(const std::string& text) {
  auto lines = tokenize(text);
  std::map<std::string, std::pair<int, std::vector<std::string>>> headers;
  std::vector<Line> trans;
  for (auto& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "trans") {
      trans.push_back(line);
      continue;
    }
    if (key != "type" && key != "states" && key != "start" &&
        key != "accept" && key != "reject" && key != "alphabet")
      throw ParseError("unknown directive '" + key + "'", line.no);
    if (headers.count(key))
      throw ParseError("duplicate header key '" + key + "'", line.no);
    headers[key] = {line.no,
                    {line.tokens.begin() + 1, line.tokens.end()}};
  }

  auto need = [&](const std::string& key) -> std::pair<int, std::vector<std::string>>& {
    auto it = headers.find(key);
    if (it == headers.end()) throw ParseError("missing '" + key + "' header", 0);
    return it->second;
  };
  auto one_value = [&](const std::string& key) -> uint32_t {
    auto& [ln, toks] = need(key);
    if (toks.size() != 1)
      throw ParseError("'" + key + "' takes exactly one value", ln);
    return parse_uint(toks[0], ln);
  };

  auto& [type_line, type_toks] = need("type");
  if (type_toks.size() != 1 ||
      (type_toks[0] != "1nfa" && type_toks[0] != "2nfa"))
    throw ParseError("type must be 1nfa or 2nfa", type_line);
  bool two_way = type_toks[0] == "2nfa";

  uint32_t n = one_value("states");
  uint32_t start = one_value("start");
  uint32_t accept = one_value("accept");

  auto& [al_line, alphabet] = need("alphabet");
  if (alphabet.empty()) throw ParseError("alphabet nonempty", al_line);
  for (const auto& sym : alphabet) {
    if (sym == "<" || sym == ">")
      throw ParseError("endmarkers are reserved tokens", al_line);
    if (std::count(alphabet.begin(), alphabet.end(), sym) != 1)
      throw ParseError("duplicate alphabet symbol '" + sym + "'", al_line);
  }

  auto state_in_range = [&](uint32_t q, int ln) {
    if (q >= n) throw ParseError("state " + std::to_string(q) + " out of range", ln);
  };
  state_in_range(start, 0);
  state_in_range(accept, 0);

  auto sym_or_throw = [&](const std::string& tok, int ln) -> SymbolId {
    for (size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == tok) return SymbolId(i);
    throw ParseError("unknown symbol '" + tok + "'", ln);
  };

  if (!two_way) {
    if (headers.count("reject"))
      throw ParseError("reject not allowed for 1nfa",
                       headers["reject"].first);
    OneWayNfa a;
    a.n = n;
    a.alphabet = alphabet;
    a.start = start;
    a.accept = accept;
    a.init_delta();
    for (auto& line : trans) {
      if (line.tokens.size() == 5)
        throw ParseError("direction not allowed for 1nfa", line.no);
      if (line.tokens.size() != 4)
        throw ParseError("1nfa trans needs: trans <p> <sym> <q>", line.no);
      if (line.tokens[2] == "<" || line.tokens[2] == ">")
        throw ParseError("endmarkers not allowed for 1nfa", line.no);
      uint32_t p = parse_uint(line.tokens[1], line.no);
      uint32_t q = parse_uint(line.tokens[3], line.no);
      state_in_range(p, line.no);
      state_in_range(q, line.no);
      a.add_transition(p, sym_or_throw(line.tokens[2], line.no), q);
    }
    return a;
  }

  TwoWayNfa a;
  a.n = n;
  a.alphabet = alphabet;
  a.start = start;
  a.accept = accept;
  if (headers.count("reject")) a.reject = one_value("reject");
  if (a.reject) state_in_range(*a.reject, 0);
  a.init_delta();
  for (auto& line : trans) {
    if (line.tokens.size() != 5)
      throw ParseError("2nfa trans needs: trans <p> <sym|<|>> <q> <L|R>",
                       line.no);
    uint32_t p = parse_uint(line.tokens[1], line.no);
    uint32_t q = parse_uint(line.tokens[3], line.no);
    state_in_range(p, line.no);
    state_in_range(q, line.no);
    uint32_t tsym;
    if (line.tokens[2] == "<")
      tsym = a.tape().lend();
    else if (line.tokens[2] == ">")
      tsym = a.tape().rend();
    else
      tsym = sym_or_throw(line.tokens[2], line.no);
    Dir d;
    if (line.tokens[4] == "L")
      d = Dir::kLeft;
    else if (line.tokens[4] == "R")
      d = Dir::kRight;
    else
      throw ParseError("direction must be L or R", line.no);
    a.add_transition(p, tsym, q, d);
  }
  return a;
}

std::string serialize(const OneWayNfa& a) {
  std::ostringstream out;
  out << "type 1nfa\n";
  out << "states " << a.n << "\n";
  out << "start " << a.start << "\n";
  out << "accept " << a.accept << "\n";
  out << "alphabet";
  for (const auto& s : a.alphabet) out << " " << s;
  out << "\n";
  for (StateId p = 0; p < a.n; ++p)
    for (SymbolId s = 0; s < a.alphabet.size(); ++s)
      for (StateId q : a.targets(p, s))
        out << "trans " << p << " " << a.alphabet[s] << " " << q << "\n";
  return out.str();
}

std::string serialize(const TwoWayNfa& a) {
  std::ostringstream out;
  out << "type 2nfa\n";
  out << "states " << a.n << "\n";
  out << "start " << a.start << "\n";
  out << "accept " << a.accept << "\n";
  if (a.reject) out << "reject " << *a.reject << "\n";
  out << "alphabet";
  for (const auto& s : a.alphabet) out << " " << s;
  out << "\n";
  auto tape = a.tape();
  for (StateId p = 0; p < a.n; ++p)
    for (uint32_t t = 0; t < tape.count(); ++t)
      for (auto [q, d] : a.moves(p, t)) {
        std::string sym = t == tape.lend()   ? "<"
                          : t == tape.rend() ? ">"
                                             : a.alphabet[t];
        out << "trans " << p << " " << sym << " " << q << " "
            << (d == Dir::kLeft ? "L" : "R") << "\n";
      }
  return out.str();
}

Word parse_word(const std::string& text,
                const std::vector<std::string>& alphabet) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);

  auto lookup = [&](const std::string& t) -> int {
    for (size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == t) return int(i);
    return -1;
  };

  Word w;
  bool token_mode_ok = true;
  for (const auto& t : toks) {
    int s = lookup(t);
    if (s < 0) {
      token_mode_ok = false;
      break;
    }
    w.push_back(SymbolId(s));
  }
  if (token_mode_ok) return w;

  bool single_char = std::all_of(alphabet.begin(), alphabet.end(),
                                 [](const std::string& s) { return s.size() == 1; });
  if (!single_char) throw ParseError("unknown symbol in word", 0);
  w.clear();
  for (const auto& t : toks)
    for (char c : t) {
      int s = lookup(std::string(1, c));
      if (s < 0) throw ParseError(std::string("unknown symbol '") + c + "'", 0);
      w.push_back(SymbolId(s));
    }
  return w;
}

std::string format_word(const Word& w,
                        const std::vector<std::string>& alphabet) {
  std::ostringstream out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out << " ";
    out << alphabet[w[i]];
  }
  return out.str();
}

AnnotatedWord parse_annotated_word(const std::string& text,
                                   const std::vector<std::string>& alphabet) {
  std::istringstream in(text);
  AnnotatedWord x;
  std::string tok;
  while (in >> tok) {
    auto slash = tok.rfind('/');
    if (slash == std::string::npos || slash + 2 != tok.size() ||
        (tok[slash + 1] != '0' && tok[slash + 1] != '1'))
      throw ParseError("annotated symbol must look like sym/0 or sym/1", 0);
    std::string sym = tok.substr(0, slash);
    SymbolId s;
    try {
      s = symbol_index(alphabet, sym);
    } catch (const std::out_of_range&) {
      throw ParseError("unknown symbol '" + sym + "'", 0);
    }
    x.push_back(AnnotatedSymbol{s, uint8_t(tok[slash + 1] - '0')});
  }
  return x;
}

std::string format_annotated_word(const AnnotatedWord& x,
                                  const std::vector<std::string>& alphabet) {
  std::ostringstream out;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) out << " ";
    out << alphabet[x[i].input] << "/" << int(x[i].bit);
  }
  return out.str();
}

}  // namespace svnfa
