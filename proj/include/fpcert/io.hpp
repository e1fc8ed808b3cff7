#pragma once

#include "fpcert/certificate.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace fpcert {

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

// Whitespace-separated tokens; ',' is always a token of its own and '#'
// starts a comment.
inline std::vector<Token> tokenize(std::string const& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ',') {
      out.push_back({",", i + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',' && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline std::uint64_t parse_index(Token const& t, std::size_t line, char const* what) {
  if (t.text.empty() || t.text.size() > 18 || t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", line, t.column);
  return std::stoull(t.text);
}

inline Rat parse_rat_at(Token const& t, std::size_t line) {
  try {
    return parse_rat(t.text);
  } catch (ParseError const& e) {
    throw ParseError(e.what(), line, t.column);
  }
}

inline State parse_state(Token const& t, std::size_t line, std::size_t n) {
  auto s = parse_index(t, line, "state index");
  if (s >= n) throw ParseError("state " + t.text + " out of range", line, t.column);
  return s;
}

}  // namespace detail

// Line-oriented model format:
//   mdp <n>
//   state <s> <name>
//   label <name> <s>...
//   reward <s> <rat>
//   <s> <a> -> <s'> <rat> [, <s''> <rat>]...
// Actions of a state are declared in index order starting at 0.
inline Mdp parse_model(std::string const& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineNo = 0;
  std::optional<Mdp> m;
  std::vector<bool> rewarded;
  while (std::getline(in, raw)) {
    ++lineNo;
    auto tok = detail::tokenize(raw);
    if (tok.empty()) continue;
    auto const& head = tok[0].text;
    if (head == "mdp") {
      if (m) throw ParseError("duplicate 'mdp' header", lineNo, tok[0].column);
      if (tok.size() != 2) throw ParseError("expected 'mdp <states>'", lineNo, tok[0].column);
      auto n = detail::parse_index(tok[1], lineNo, "state count");
      if (n == 0) throw ParseError("model must have at least one state", lineNo, tok[1].column);
      m.emplace(n);
      rewarded.assign(n, false);
      continue;
    }
    if (!m) throw ParseError("'mdp <states>' header must come first", lineNo, tok[0].column);
    std::size_t n = m->num_states();
    if (head == "state") {
      if (tok.size() != 3) throw ParseError("expected 'state <index> <name>'", lineNo, tok[0].column);
      State s = detail::parse_state(tok[1], lineNo, n);
      if (m->has_state_name(s)) throw ParseError("state " + tok[1].text + " already named", lineNo, tok[1].column);
      m->set_state_name(s, tok[2].text);
    } else if (head == "label") {
      if (tok.size() < 2) throw ParseError("expected 'label <name> <states>...'", lineNo, tok[0].column);
      if (m->has_label(tok[1].text)) throw ParseError("duplicate label '" + tok[1].text + "'", lineNo, tok[1].column);
      m->set_label(tok[1].text, StateSet(n, false));
      for (std::size_t i = 2; i < tok.size(); ++i) m->add_to_label(tok[1].text, detail::parse_state(tok[i], lineNo, n));
    } else if (head == "reward") {
      if (tok.size() != 3) throw ParseError("expected 'reward <state> <rat>'", lineNo, tok[0].column);
      State s = detail::parse_state(tok[1], lineNo, n);
      if (rewarded[s]) throw ParseError("duplicate reward for state " + tok[1].text, lineNo, tok[1].column);
      rewarded[s] = true;
      Rat r = detail::parse_rat_at(tok[2], lineNo);
      if (sgn(r) < 0) throw ParseError("negative reward", lineNo, tok[2].column);
      m->set_reward(s, r);
    } else {
      if (tok.size() < 5 || tok[2].text != "->") throw ParseError("expected '<state> <action> -> <succ> <prob> ...'", lineNo, tok[0].column);
      State s = detail::parse_state(tok[0], lineNo, n);
      auto a = detail::parse_index(tok[1], lineNo, "action index");
      if (a != m->num_actions(s))
        throw ParseError("action " + tok[1].text + " of state " + tok[0].text + " declared out of order", lineNo, tok[1].column);
      Distribution d;
      std::size_t i = 3;
      for (;;) {
        if (i + 1 >= tok.size()) throw ParseError("expected '<succ> <prob>'", lineNo, tok[i < tok.size() ? i : tok.size() - 1].column);
        State t = detail::parse_state(tok[i], lineNo, n);
        Rat p = detail::parse_rat_at(tok[i + 1], lineNo);
        d.push_back({t, p});
        i += 2;
        if (i == tok.size()) break;
        if (tok[i].text != ",") throw ParseError("expected ',' between successors", lineNo, tok[i].column);
        ++i;
      }
      m->add_action(s, std::move(d));
    }
  }
  if (!m) throw ParseError("no states declared");
  try {
    validate_mdp(*m);
  } catch (ValidationError const& e) {
    throw ParseError(std::string("invalid model: ") + e.what());
  }
  return std::move(*m);
}

inline std::string write_model(Mdp const& m) {
  std::ostringstream out;
  out << "mdp " << m.num_states() << "\n";
  for (State s = 0; s < m.num_states(); ++s)
    if (m.has_state_name(s)) out << "state " << s << " " << m.state_name(s) << "\n";
  for (auto const& [name, set] : m.labels()) {
    out << "label " << name;
    for (State s = 0; s < set.size(); ++s)
      if (set[s]) out << " " << s;
    out << "\n";
  }
  for (State s = 0; s < m.num_states(); ++s)
    if (sgn(m.reward(s)) != 0) out << "reward " << s << " " << to_string(m.reward(s)) << "\n";
  for (State s = 0; s < m.num_states(); ++s)
    for (std::size_t a = 0; a < m.num_actions(s); ++a) {
      out << s << " " << a << " ->";
      bool first = true;
      for (auto const& t : m.action(s, a)) {
        out << (first ? " " : ", ") << t.target << " " << to_string(t.prob);
        first = false;
      }
      out << "\n";
    }
  return out.str();
}

// "Pmin=? [F label]" with an optional trailing "semantics=inf|rho" for E.
inline Query parse_query(std::string const& text) {
  static std::regex const re(R"(^\s*(Pmin|Pmax|Emin|Emax)\s*=\s*\?\s*\[\s*F\s+([A-Za-z_][A-Za-z0-9_]*)\s*\]\s*(?:semantics\s*=\s*(inf|rho))?\s*$)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re)) throw ParseError("malformed query '" + text + "'");
  Query q;
  std::string o = mt[1];
  q.objective = o == "Pmin" ? Objective::Pmin : o == "Pmax" ? Objective::Pmax : o == "Emin" ? Objective::Emin : Objective::Emax;
  q.target_label = mt[2];
  if (mt[3].matched) {
    if (!is_reward(q.objective)) throw ParseError("semantics applies to expected rewards only");
    q.semantics = mt[3] == "rho" ? Semantics::Rho : Semantics::Inf;
  }
  return q;
}

inline std::string write_query(Query const& q) {
  std::string s = std::string(to_string(q.objective)) + "=? [F " + q.target_label + "]";
  if (is_reward(q.objective)) s += std::string(" semantics=") + to_string(q.semantics);
  return s;
}

// Certificate document; several may follow each other in one file.
//   certificate
//   query Pmin=? [F target]
//   bound lower
//   epsilon 1/1000000
//   states 3
//   x 0 1/2 1
//   r inf 1 0
//   meta generator pi
//   end
inline std::string write_certificate(Certificate const& c) {
  std::ostringstream out;
  out << "certificate\n";
  out << "query " << write_query(c.query) << "\n";
  out << "bound " << to_string(c.query.bound) << "\n";
  out << "epsilon " << to_string(c.query.epsilon) << "\n";
  out << "states " << c.x.size() << "\n";
  auto row = [&](char const* key, auto const& vec) {
    out << key;
    for (auto const& v : vec) out << " " << v;
    out << "\n";
  };
  row("x", c.x);
  if (c.r) row("r", *c.r);
  if (c.r2) row("r2", *c.r2);
  if (c.sigma) row("sigma", *c.sigma);
  if (c.tin) {
    out << "tin";
    for (bool b : *c.tin) out << " " << (b ? 1 : 0);
    out << "\n";
  }
  for (auto const& [k, v] : c.meta) out << "meta " << k << " " << v << "\n";
  out << "end\n";
  return out.str();
}

inline std::vector<Certificate> parse_certificates(std::string const& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineNo = 0;
  std::vector<Certificate> out;
  std::optional<Certificate> cur;
  std::optional<std::size_t> states;
  bool haveQuery = false, haveBound = false, haveX = false;
  std::map<std::string, bool> seen;

  auto values = [&](std::vector<detail::Token> const& tok, auto parse) {
    if (!states) throw ParseError("'states' must precede vectors", lineNo, tok[0].column);
    if (tok.size() - 1 != *states) throw ParseError("dimension mismatch in '" + tok[0].text + "'", lineNo, tok[0].column);
    using T = decltype(parse(tok[0]));
    std::vector<T> v;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      try {
        v.push_back(parse(tok[i]));
      } catch (ParseError const& e) {
        throw ParseError(e.what(), lineNo, tok[i].column);
      }
    }
    return v;
  };

  while (std::getline(in, raw)) {
    ++lineNo;
    auto tok = detail::tokenize(raw);
    if (tok.empty()) continue;
    auto const& key = tok[0].text;
    if (!cur) {
      if (key != "certificate" || tok.size() != 1) throw ParseError("expected 'certificate'", lineNo, tok[0].column);
      cur.emplace();
      states.reset();
      haveQuery = haveBound = haveX = false;
      seen.clear();
      continue;
    }
    if (key != "meta" && key != "end") {
      if (seen[key]) throw ParseError("duplicate field '" + key + "'", lineNo, tok[0].column);
      seen[key] = true;
    }
    if (key == "query") {
      auto pos = raw.find("query") + 5;
      auto hash = raw.find('#');
      Query q;
      try {
        q = parse_query(raw.substr(pos, hash == std::string::npos ? std::string::npos : hash - pos));
      } catch (ParseError const& e) {
        throw ParseError(e.what(), lineNo, tok[0].column);
      }
      q.bound = cur->query.bound;
      q.epsilon = cur->query.epsilon;
      cur->query = q;
      haveQuery = true;
    } else if (key == "bound") {
      if (tok.size() != 2 || (tok[1].text != "lower" && tok[1].text != "upper"))
        throw ParseError("expected 'bound lower|upper'", lineNo, tok[0].column);
      cur->query.bound = tok[1].text == "lower" ? Bound::Lower : Bound::Upper;
      haveBound = true;
    } else if (key == "epsilon") {
      if (tok.size() != 2) throw ParseError("expected 'epsilon <rat>'", lineNo, tok[0].column);
      cur->query.epsilon = detail::parse_rat_at(tok[1], lineNo);
    } else if (key == "states") {
      if (tok.size() != 2) throw ParseError("expected 'states <n>'", lineNo, tok[0].column);
      states = detail::parse_index(tok[1], lineNo, "state count");
    } else if (key == "x") {
      cur->x = values(tok, [](detail::Token const& t) { return parse_ext_value(t.text); });
      haveX = true;
    } else if (key == "r" || key == "r2") {
      auto v = values(tok, [](detail::Token const& t) { return parse_ext_nat(t.text); });
      (key == "r" ? cur->r : cur->r2) = std::move(v);
    } else if (key == "sigma") {
      cur->sigma = values(tok, [&](detail::Token const& t) -> std::size_t { return detail::parse_index(t, lineNo, "action index"); });
    } else if (key == "tin") {
      auto v = values(tok, [&](detail::Token const& t) -> bool {
        if (t.text != "0" && t.text != "1") throw ParseError("expected 0 or 1, got '" + t.text + "'");
        return t.text == "1";
      });
      cur->tin = StateSet(v.begin(), v.end());
    } else if (key == "meta") {
      if (tok.size() < 2) throw ParseError("expected 'meta <key> <value>'", lineNo, tok[0].column);
      std::string value;
      for (std::size_t i = 2; i < tok.size(); ++i) value += (i > 2 ? " " : "") + tok[i].text;
      cur->meta[tok[1].text] = value;
    } else if (key == "end") {
      if (!haveQuery || !haveBound || !states || !haveX) throw ParseError("incomplete certificate", lineNo, tok[0].column);
      try {
        validate_certificate_shape(*cur, *states);
      } catch (CertificateError const& e) {
        throw ParseError(e.what(), lineNo, tok[0].column);
      }
      out.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw ParseError("unknown field '" + key + "'", lineNo, tok[0].column);
    }
  }
  if (cur) throw ParseError("missing 'end'", lineNo, 0);
  if (out.empty()) throw ParseError("no certificate found");
  return out;
}

inline Certificate parse_certificate(std::string const& text) {
  auto all = parse_certificates(text);
  if (all.size() != 1) throw ParseError("expected exactly one certificate, found " + std::to_string(all.size()));
  return std::move(all.front());
}

inline std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fpcert
