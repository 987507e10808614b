#include "teamlogic/parser.hpp"

#include <cctype>
#include <json.hpp>
#include <sstream>

namespace teamlogic {

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Semi,
  Dot,
  Amp,
  Pipe,
  IDisj,  // \/
  BoxOp,  // []
  DiaOp,  // <>
  Tilde,
  Bang,
  Eq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, size_t b, size_t e) { out.push_back({k, s.substr(b, e - b), {b, e}}); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t b = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      push(Tok::Ident, b, i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, b, ++i); break;
      case ')': push(Tok::RParen, b, ++i); break;
      case ',': push(Tok::Comma, b, ++i); break;
      case ';': push(Tok::Semi, b, ++i); break;
      case '.': push(Tok::Dot, b, ++i); break;
      case '&': push(Tok::Amp, b, ++i); break;
      case '|': push(Tok::Pipe, b, ++i); break;
      case '~': push(Tok::Tilde, b, ++i); break;
      case '!': push(Tok::Bang, b, ++i); break;
      case '=': push(Tok::Eq, b, ++i); break;
      case '\\':
        if (i + 1 < s.size() && s[i + 1] == '/') {
          i += 2;
          push(Tok::IDisj, b, i);
          break;
        }
        throw ParseError("stray '\\'", {b, b + 1});
      case '[':
        if (i + 1 < s.size() && s[i + 1] == ']') {
          i += 2;
          push(Tok::BoxOp, b, i);
          break;
        }
        throw ParseError("expected '[]'", {b, b + 1});
      case '<':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          i += 2;
          push(Tok::DiaOp, b, i);
          break;
        }
        throw ParseError("expected '<>'", {b, b + 1});
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", {b, b + 1});
    }
  }
  out.push_back({Tok::End, "", {s.size(), s.size()}});
  return out;
}

bool is_rel_symbol(const std::string& name) {
  if (name.size() < 3 || name[0] != 'S' || name[1] != '_') return false;
  for (size_t i = 2; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek(size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
  Token take() { return toks[pos == toks.size() - 1 ? pos : pos++]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, peek().span);
    return take();
  }

  Formula formula() {
    if (at(Tok::Ident) && (peek().text == "E" || peek().text == "A") &&
        peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot) {
      bool ex = take().text == "E";
      VarId v = intern_var(take().text);
      take();  // '.'
      Formula body = formula();
      return ex ? Formula::exists(v, body) : Formula::forall(v, body);
    }
    return idisj();
  }

  Formula idisj() {
    Formula f = lor();
    while (at(Tok::IDisj)) {
      take();
      f = Formula::idisj(f, lor());
    }
    return f;
  }

  Formula lor() {
    Formula f = land();
    while (at(Tok::Pipe)) {
      take();
      f = Formula::lor(f, land());
    }
    return f;
  }

  Formula land() {
    Formula f = prefix();
    while (at(Tok::Amp)) {
      take();
      f = Formula::land(f, prefix());
    }
    return f;
  }

  Formula prefix() {
    switch (peek().kind) {
      case Tok::BoxOp: take(); return Formula::box(prefix());
      case Tok::DiaOp: take(); return Formula::diamond(prefix());
      case Tok::Tilde: take(); return Formula::cneg(prefix());
      case Tok::Bang: {
        Token bang = take();
        if (!at(Tok::Ident))
          throw ParseError("'!' applies to atoms only", bang.span);
        return Formula::neg_atom(intern_var(take().text));
      }
      default: return primary();
    }
  }

  std::vector<VarId> var_list(const char* what) {
    std::vector<VarId> out;
    while (at(Tok::Ident)) out.push_back(intern_var(take().text));
    if (out.empty()) throw ParseError(std::string("expected ") + what, peek().span);
    return out;
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Eq: {
        take();
        expect(Tok::LParen, "'(' after '='");
        std::vector<Formula> items;
        items.push_back(formula());
        while (at(Tok::Comma)) {
          take();
          items.push_back(formula());
        }
        expect(Tok::RParen, "')'");
        Formula target = items.back();
        items.pop_back();
        return Formula::dep(std::move(items), target);
      }
      case Tok::Ident: {
        if (t.text == "ind" && peek(1).kind == Tok::LParen) {
          take();
          take();
          std::vector<VarId> cond;
          if (at(Tok::Ident)) cond = var_list("condition variables");
          expect(Tok::Semi, "';'");
          std::vector<VarId> l = var_list("variables");
          expect(Tok::Semi, "';'");
          std::vector<VarId> r = var_list("variables");
          expect(Tok::RParen, "')'");
          return Formula::indep(std::move(cond), std::move(l), std::move(r));
        }
        if (t.text == "inc" && peek(1).kind == Tok::LParen) {
          take();
          take();
          std::vector<VarId> l = var_list("variables");
          expect(Tok::Comma, "','");
          std::vector<VarId> r = var_list("variables");
          expect(Tok::RParen, "')'");
          SourceSpan span = peek().span;
          if (l.size() != r.size())
            throw ParseError("inclusion atom tuples must have equal length", span);
          return Formula::incl(std::move(l), std::move(r));
        }
        if (is_rel_symbol(t.text) && peek(1).kind == Tok::LParen) {
          std::string sym = take().text;
          take();
          std::vector<Formula> args;
          args.push_back(formula());
          while (at(Tok::Comma)) {
            take();
            args.push_back(formula());
          }
          expect(Tok::RParen, "')'");
          return Formula::rel(sym, std::move(args));
        }
        return Formula::atom(intern_var(take().text));
      }
      default:
        throw ParseError("expected a formula", t.span);
    }
  }
};

int prec_level(const Formula& f) {
  switch (f.kind()) {
    case Kind::Exists:
    case Kind::Forall: return 0;
    case Kind::IDisj: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Box:
    case Kind::Diamond:
    case Kind::CNeg:
    case Kind::NegAtom: return 4;
    default: return 5;
  }
}

void render_rec(const Formula& f, int level, std::string& out) {
  int mine = prec_level(f);
  bool parens = mine < level;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::Atom: out += var_name(f.var()); break;
    case Kind::NegAtom:
      out += '!';
      out += var_name(f.var());
      break;
    case Kind::And:
      render_rec(f.left(), 3, out);
      out += " & ";
      render_rec(f.right(), 4, out);
      break;
    case Kind::Or:
      render_rec(f.left(), 2, out);
      out += " | ";
      render_rec(f.right(), 3, out);
      break;
    case Kind::IDisj:
      render_rec(f.left(), 1, out);
      out += " \\/ ";
      render_rec(f.right(), 2, out);
      break;
    case Kind::Box:
      out += "[] ";
      render_rec(f.body(), 4, out);
      break;
    case Kind::Diamond:
      out += "<> ";
      render_rec(f.body(), 4, out);
      break;
    case Kind::CNeg:
      out += '~';
      render_rec(f.body(), 4, out);
      break;
    case Kind::Exists:
    case Kind::Forall:
      out += f.kind() == Kind::Exists ? "E " : "A ";
      out += var_name(f.var());
      out += " . ";
      render_rec(f.body(), 0, out);
      break;
    case Kind::Dep: {
      out += "=(";
      for (const auto& a : f.dep_args()) {
        render_rec(a, 0, out);
        out += ",";
      }
      render_rec(f.dep_target(), 0, out);
      out += ')';
      break;
    }
    case Kind::Indep: {
      out += "ind(";
      bool first = true;
      for (VarId v : f.tuple_cond()) {
        if (!first) out += ' ';
        out += var_name(v);
        first = false;
      }
      out += "; ";
      first = true;
      for (VarId v : f.tuple_left()) {
        if (!first) out += ' ';
        out += var_name(v);
        first = false;
      }
      out += "; ";
      first = true;
      for (VarId v : f.tuple_right()) {
        if (!first) out += ' ';
        out += var_name(v);
        first = false;
      }
      out += ')';
      break;
    }
    case Kind::Incl: {
      out += "inc(";
      bool first = true;
      for (VarId v : f.tuple_left()) {
        if (!first) out += ' ';
        out += var_name(v);
        first = false;
      }
      out += ", ";
      first = true;
      for (VarId v : f.tuple_right()) {
        if (!first) out += ' ';
        out += var_name(v);
        first = false;
      }
      out += ')';
      break;
    }
    case Kind::Rel: {
      out += f.rel_symbol();
      out += '(';
      for (size_t i = 0; i < f.child_count(); ++i) {
        if (i) out += ",";
        render_rec(f.child(i), 0, out);
      }
      out += ')';
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse_formula(const std::string& text) {
  Parser p{lex(text)};
  Formula f = p.formula();
  if (!p.at(Tok::End)) throw ParseError("trailing input after formula", p.peek().span);
  return f;
}

std::string render(const Formula& f) {
  std::string out;
  render_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------

using nlohmann::json;

namespace {
json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), {static_cast<size_t>(e.byte ? e.byte - 1 : 0),
                                static_cast<size_t>(e.byte)});
  }
}
}  // namespace

PropTeam parse_team(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("vars") || !j.contains("rows"))
    throw InvalidError("team JSON needs 'vars' and 'rows'");
  std::vector<VarId> domain;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) throw InvalidError("team variable names must be strings");
    domain.push_back(intern_var(v.get<std::string>()));
  }
  std::vector<uint32_t> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array() || row.size() != domain.size())
      throw InvalidError("team row arity differs from the variable list");
    uint32_t bits = 0;
    for (size_t i = 0; i < row.size(); ++i) {
      const auto& cell = row[i];
      int b;
      if (cell.is_number_integer())
        b = cell.get<int>();
      else if (cell.is_boolean())
        b = cell.get<bool>() ? 1 : 0;
      else
        throw InvalidError("team cells must be 0/1");
      if (b != 0 && b != 1) throw InvalidError("team cells must be 0/1");
      if (b) bits |= 1u << i;
    }
    rows.push_back(bits);
  }
  return PropTeam::of_rows(std::move(domain), std::move(rows));
}

std::string team_to_json(const PropTeam& x) {
  json j;
  j["vars"] = json::array();
  for (VarId v : x.domain) j["vars"].push_back(var_name(v));
  j["rows"] = json::array();
  for (uint32_t r : x.rows) {
    json row = json::array();
    for (size_t i = 0; i < x.domain.size(); ++i) row.push_back((r >> i) & 1);
    j["rows"].push_back(row);
  }
  return j.dump();
}

KripkeModel parse_kripke(const std::string& text, TeamMask* team_out) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("worlds"))
    throw InvalidError("Kripke JSON needs 'worlds'");
  KripkeModel m;
  m.world_count = j["worlds"].get<int>();
  if (m.world_count < 0 || m.world_count > 64)
    throw InvalidError("world count must be in 0..64");
  m.succ.assign(m.world_count, 0);
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw InvalidError("edges are [from, to] pairs");
      int a = e[0].get<int>(), b = e[1].get<int>();
      if (a < 0 || a >= m.world_count || b < 0 || b >= m.world_count)
        throw InvalidError("dangling edge endpoint");
      m.add_edge(a, b);
    }
  if (j.contains("val"))
    for (auto it = j["val"].begin(); it != j["val"].end(); ++it) {
      uint64_t mask = 0;
      for (const auto& w : it.value()) {
        int idx = w.get<int>();
        if (idx < 0 || idx >= m.world_count)
          throw InvalidError("valuation member outside the world range");
        mask |= 1ull << idx;
      }
      m.val[intern_var(it.key())] = mask;
    }
  if (j.contains("relations"))
    for (auto it = j["relations"].begin(); it != j["relations"].end(); ++it) {
      Relation rel;
      rel.arity = -1;
      for (const auto& tup : it.value()) {
        if (!tup.is_array()) throw InvalidError("relation tuples are bit arrays");
        if (rel.arity < 0) rel.arity = static_cast<int>(tup.size());
        if (static_cast<int>(tup.size()) != rel.arity)
          throw InvalidError("relation tuples must share one arity");
        uint32_t bits = 0;
        for (const auto& cell : tup) {
          int b = cell.get<int>();
          if (b != 0 && b != 1) throw InvalidError("relation tuple cells must be 0/1");
          bits = (bits << 1) | b;
        }
        rel.tuples.push_back(bits);
      }
      if (rel.arity < 0) rel.arity = 0;
      std::sort(rel.tuples.begin(), rel.tuples.end());
      rel.tuples.erase(std::unique(rel.tuples.begin(), rel.tuples.end()), rel.tuples.end());
      m.relations[it.key()] = std::move(rel);
    }
  if (team_out) {
    if (j.contains("team")) {
      TeamMask t = 0;
      for (const auto& w : j["team"]) {
        int idx = w.get<int>();
        if (idx < 0 || idx >= m.world_count) throw InvalidError("team member outside the world range");
        t |= 1ull << idx;
      }
      *team_out = t;
    } else {
      *team_out = m.all_worlds();
    }
  }
  m.validate();
  return m;
}

std::string kripke_to_json(const KripkeModel& m, const TeamMask* team) {
  json j;
  j["worlds"] = m.world_count;
  j["edges"] = json::array();
  for (int w = 0; w < m.world_count; ++w)
    for (int u = 0; u < m.world_count; ++u)
      if (m.has_edge(w, u)) j["edges"].push_back(json::array({w, u}));
  j["val"] = json::object();
  for (auto& [v, mask] : m.val) {
    json arr = json::array();
    for (int w = 0; w < m.world_count; ++w)
      if ((mask >> w) & 1) arr.push_back(w);
    j["val"][var_name(v)] = arr;
  }
  if (!m.relations.empty()) {
    j["relations"] = json::object();
    for (auto& [sym, rel] : m.relations) {
      json arr = json::array();
      for (uint32_t t : rel.tuples) {
        json tup = json::array();
        for (int i = rel.arity - 1; i >= 0; --i) tup.push_back((t >> i) & 1);
        arr.push_back(tup);
      }
      j["relations"][sym] = arr;
    }
  }
  if (team) {
    json arr = json::array();
    for (int w = 0; w < m.world_count; ++w)
      if ((*team >> w) & 1) arr.push_back(w);
    j["team"] = arr;
  }
  return j.dump();
}

}  // namespace teamlogic
