#include "teamlogic/adqbf.hpp"

#include <cctype>
#include <functional>
#include <json.hpp>
#include <random>

namespace teamlogic {

Matrix Matrix::land(Matrix a, Matrix b) {
  Matrix m{Kind::And, 0, -1, {}};
  m.kids.push_back(std::move(a));
  m.kids.push_back(std::move(b));
  return m;
}

Matrix Matrix::lor(Matrix a, Matrix b) {
  Matrix m{Kind::Or, 0, -1, {}};
  m.kids.push_back(std::move(a));
  m.kids.push_back(std::move(b));
  return m;
}

namespace {

void validate_matrix(const Matrix& m, const AdqbfInstance& inst) {
  switch (m.kind) {
    case Matrix::Kind::Var:
    case Matrix::Kind::NegVar: {
      for (VarId p : inst.pvars)
        if (p == m.var) return;
      throw InvalidError("matrix mentions a variable outside the universal block");
    }
    case Matrix::Kind::App:
    case Matrix::Kind::NegApp:
      if (m.fn < 0 || m.fn >= static_cast<int>(inst.symbols.size()))
        throw InvalidError("matrix applies an undeclared function symbol");
      return;
    case Matrix::Kind::And:
    case Matrix::Kind::Or:
      for (const auto& k : m.kids) validate_matrix(k, inst);
      return;
  }
}

}  // namespace

void AdqbfInstance::validate() const {
  if (pvars.size() > 20) throw ResourceError("too many universal variables");
  for (size_t i = 0; i < pvars.size(); ++i)
    for (size_t j = i + 1; j < pvars.size(); ++j)
      if (pvars[i] == pvars[j]) throw InvalidError("duplicate universal variable");
  std::set<size_t> used;
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (b > 0 && blocks[b].universal == blocks[b - 1].universal)
      throw InvalidError("quantifier blocks must alternate strictly");
    if (blocks[b].fns.empty() && !(b == 0 && shape == AdqbfShape::pi2))
      throw InvalidError("empty quantifier block");
    for (int fi : blocks[b].fns) {
      if (fi < 0 || fi >= static_cast<int>(symbols.size()))
        throw InvalidError("block references an undeclared symbol");
      if (!used.insert(fi).second) throw InvalidError("symbol quantified twice");
    }
  }
  if (used.size() != symbols.size()) throw InvalidError("unquantified function symbol");
  if (shape == AdqbfShape::sigma1) {
    if (blocks.size() != 1 || blocks[0].universal)
      throw InvalidError("sigma1 shape needs one existential block");
  } else {
    if (blocks.empty() || blocks.size() > 2 || !blocks[0].universal)
      throw InvalidError("pi2 shape needs a universal block, then an optional existential one");
  }
  for (const auto& s : symbols) {
    for (VarId c : s.constraint) {
      bool found = false;
      for (VarId p : pvars) found = found || p == c;
      if (!found) throw InvalidError("constraint variable outside the universal block");
    }
  }
  validate_matrix(matrix, *this);
}

namespace {

bool eval_matrix(const Matrix& m, uint32_t passign, const AdqbfInstance& inst,
                 const std::vector<WitnessFunction>& tables,
                 const std::vector<std::vector<int>>& cidx) {
  switch (m.kind) {
    case Matrix::Kind::Var:
    case Matrix::Kind::NegVar: {
      int idx = -1;
      for (size_t i = 0; i < inst.pvars.size(); ++i)
        if (inst.pvars[i] == m.var) idx = static_cast<int>(i);
      bool b = (passign >> idx) & 1;
      return m.kind == Matrix::Kind::Var ? b : !b;
    }
    case Matrix::Kind::App:
    case Matrix::Kind::NegApp: {
      uint32_t args = 0;
      for (int i : cidx[m.fn]) args = (args << 1) | ((passign >> i) & 1);
      bool b = tables[m.fn].apply(args);
      return m.kind == Matrix::Kind::App ? b : !b;
    }
    case Matrix::Kind::And:
      return eval_matrix(m.kids[0], passign, inst, tables, cidx) &&
             eval_matrix(m.kids[1], passign, inst, tables, cidx);
    case Matrix::Kind::Or:
      return eval_matrix(m.kids[0], passign, inst, tables, cidx) ||
             eval_matrix(m.kids[1], passign, inst, tables, cidx);
  }
  return false;
}

bool eval_blocks(const AdqbfInstance& inst, size_t b, std::vector<WitnessFunction>& tables,
                 const std::vector<std::vector<int>>& cidx) {
  if (b == inst.blocks.size()) {
    uint32_t space = 1u << inst.pvars.size();
    for (uint32_t pa = 0; pa < space; ++pa)
      if (!eval_matrix(inst.matrix, pa, inst, tables, cidx)) return false;
    return true;
  }
  const QuantBlock& blk = inst.blocks[b];
  // Joint mixed-radix loop over the block's tables.
  std::vector<uint64_t> limit;
  for (int fi : blk.fns) limit.push_back(WitnessFunction::table_count(inst.symbols[fi].arity()));
  std::vector<uint64_t> cur(blk.fns.size(), 0);
  while (true) {
    for (size_t i = 0; i < blk.fns.size(); ++i)
      tables[blk.fns[i]] = {inst.symbols[blk.fns[i]].arity(), static_cast<uint32_t>(cur[i])};
    bool r = eval_blocks(inst, b + 1, tables, cidx);
    if (blk.universal && !r) return false;
    if (!blk.universal && r) return true;
    int pos = static_cast<int>(cur.size()) - 1;
    while (pos >= 0 && cur[pos] + 1 == limit[pos]) cur[pos--] = 0;
    if (pos < 0) break;
    ++cur[pos];
  }
  return blk.universal;
}

}  // namespace

bool evaluate_adqbf(const AdqbfInstance& inst, const AdqbfCaps& caps) {
  inst.validate();
  uint64_t sum = 0, product = 1;
  for (const auto& s : inst.symbols) {
    if (s.arity() > 4) throw ResourceError("function arity exceeds the evaluation cap");
    uint64_t tables = WitnessFunction::table_count(s.arity());
    sum += tables;
    if (product > caps.max_table_space_product / tables)
      throw ResourceError("table space product exceeds the configured cap");
    product *= tables;
  }
  if (sum > caps.max_table_space_sum)
    throw ResourceError("table space sum exceeds the configured cap");

  std::vector<std::vector<int>> cidx(inst.symbols.size());
  for (size_t f = 0; f < inst.symbols.size(); ++f)
    for (VarId c : inst.symbols[f].constraint)
      for (size_t i = 0; i < inst.pvars.size(); ++i)
        if (inst.pvars[i] == c) cidx[f].push_back(static_cast<int>(i));

  std::vector<WitnessFunction> tables(inst.symbols.size());
  return eval_blocks(inst, 0, tables, cidx);
}

namespace {
Matrix negate_matrix(const Matrix& m) {
  switch (m.kind) {
    case Matrix::Kind::Var: return Matrix::atom(m.var, true);
    case Matrix::Kind::NegVar: return Matrix::atom(m.var, false);
    case Matrix::Kind::App: return Matrix::app(m.fn, true);
    case Matrix::Kind::NegApp: return Matrix::app(m.fn, false);
    case Matrix::Kind::And: return Matrix::lor(negate_matrix(m.kids[0]), negate_matrix(m.kids[1]));
    case Matrix::Kind::Or: return Matrix::land(negate_matrix(m.kids[0]), negate_matrix(m.kids[1]));
  }
  throw InvalidError("unreachable");
}
}  // namespace

AdqbfInstance dual_adqbf(const AdqbfInstance& inst) {
  if (!inst.pvars.empty())
    throw InvalidError("duality with universal variables leaves the ADQBF shapes");
  AdqbfInstance out = inst;
  out.matrix = negate_matrix(inst.matrix);
  for (auto& b : out.blocks) b.universal = !b.universal;
  out.shape = out.blocks.empty() || !out.blocks[0].universal ? AdqbfShape::sigma1 : AdqbfShape::pi2;
  // Reclassify: a single now-universal block reads as a degenerate pi2.
  if (out.blocks.size() == 1 && out.blocks[0].universal) out.shape = AdqbfShape::pi2;
  if (out.blocks.size() == 2 && !out.blocks[0].universal)
    throw InvalidError("dual leaves the supported shapes");
  return out;
}

AdqbfInstance random_adqbf(uint64_t seed, AdqbfShape shape, int n, int fn_count, int max_arity) {
  if (n < 0 || n > 6 || fn_count < 1 || fn_count > 6 || max_arity < 0 || max_arity > 3)
    throw ResourceError("generator parameters outside the supported ranges");
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  AdqbfInstance inst;
  inst.shape = shape;
  for (int i = 1; i <= n; ++i) inst.pvars.push_back(intern_var("p" + std::to_string(i)));
  for (int f = 0; f < fn_count; ++f) {
    FnSymbol s;
    s.name = "f" + std::to_string(f + 1);
    int arity = n == 0 ? 0 : pick(0, std::min(max_arity, n));
    std::vector<VarId> pool = inst.pvars;
    for (int a = 0; a < arity; ++a) {
      int i = pick(0, static_cast<int>(pool.size()) - 1);
      s.constraint.push_back(pool[i]);
      pool.erase(pool.begin() + i);
    }
    inst.symbols.push_back(std::move(s));
  }
  if (shape == AdqbfShape::sigma1) {
    QuantBlock b;
    b.universal = false;
    for (int f = 0; f < fn_count; ++f) b.fns.push_back(f);
    inst.blocks.push_back(std::move(b));
  } else {
    int m = pick(0, fn_count);  // size of the universal block; may be empty
    QuantBlock u, e;
    u.universal = true;
    e.universal = false;
    for (int f = 0; f < m; ++f) u.fns.push_back(f);
    for (int f = m; f < fn_count; ++f) e.fns.push_back(f);
    inst.blocks.push_back(std::move(u));
    if (!e.fns.empty()) inst.blocks.push_back(std::move(e));
  }
  // Random NNF matrix over p literals and applications.
  std::function<Matrix(int)> gen = [&](int budget) -> Matrix {
    if (budget <= 1 || pick(0, 2) == 0) {
      bool neg = pick(0, 1);
      bool use_app = inst.pvars.empty() || pick(0, 1);
      if (use_app) return Matrix::app(pick(0, fn_count - 1), neg);
      return Matrix::atom(inst.pvars[pick(0, n - 1)], neg);
    }
    int left = pick(1, budget - 1);
    Matrix a = gen(left), b = gen(budget - left);
    return pick(0, 1) ? Matrix::land(std::move(a), std::move(b))
                      : Matrix::lor(std::move(a), std::move(b));
  };
  inst.matrix = gen(pick(2, 6));
  inst.validate();
  return inst;
}

Formula lower_matrix(const AdqbfInstance& inst, const std::vector<VarId>& app_vars) {
  if (app_vars.size() != inst.symbols.size())
    throw InvalidError("one replacement variable per function symbol expected");
  std::function<Formula(const Matrix&)> go = [&](const Matrix& m) -> Formula {
    switch (m.kind) {
      case Matrix::Kind::Var: return Formula::atom(m.var);
      case Matrix::Kind::NegVar: return Formula::neg_atom(m.var);
      case Matrix::Kind::App: return Formula::atom(app_vars[m.fn]);
      case Matrix::Kind::NegApp: return Formula::neg_atom(app_vars[m.fn]);
      case Matrix::Kind::And: return Formula::land(go(m.kids[0]), go(m.kids[1]));
      case Matrix::Kind::Or: return Formula::lor(go(m.kids[0]), go(m.kids[1]));
    }
    throw InvalidError("unreachable");
  };
  return go(inst.matrix);
}

// ---------------------------------------------------------------------------
// JSON + matrix text syntax. The matrix text reuses the formula operators with
// f(p1,...) application atoms.

namespace {

struct MatrixParser {
  const std::string& text;
  const AdqbfInstance& inst;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    size_t b = pos;
    if (pos < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                   text[pos] == '_' || text[pos] == '\''))
        ++pos;
    }
    if (b == pos) throw ParseError("expected identifier in matrix", {b, b + 1});
    return text.substr(b, pos - b);
  }

  Matrix or_level() {
    Matrix m = and_level();
    while (true) {
      skip();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        m = Matrix::lor(std::move(m), and_level());
      } else {
        return m;
      }
    }
  }
  Matrix and_level() {
    Matrix m = unary();
    while (true) {
      skip();
      if (pos < text.size() && text[pos] == '&') {
        ++pos;
        m = Matrix::land(std::move(m), unary());
      } else {
        return m;
      }
    }
  }
  Matrix unary() {
    skip();
    if (pos < text.size() && text[pos] == '!') {
      ++pos;
      Matrix m = atom();
      switch (m.kind) {
        case Matrix::Kind::Var: return Matrix::atom(m.var, true);
        case Matrix::Kind::App: return Matrix::app(m.fn, true);
        default: throw ParseError("'!' applies to matrix atoms only", {pos, pos + 1});
      }
    }
    return atom();
  }
  Matrix atom() {
    skip();
    if (eat('(')) {
      Matrix m = or_level();
      if (!eat(')')) throw ParseError("expected ')' in matrix", {pos, pos + 1});
      return m;
    }
    size_t b = pos;
    std::string name = ident();
    skip();
    if (pos < text.size() && text[pos] == '(') {
      int fn = -1;
      for (size_t i = 0; i < inst.symbols.size(); ++i)
        if (inst.symbols[i].name == name) fn = static_cast<int>(i);
      if (fn < 0) throw ParseError("unknown function symbol " + name, {b, pos});
      ++pos;
      std::vector<std::string> args;
      if (!eat(')')) {
        args.push_back(ident());
        while (eat(',')) args.push_back(ident());
        if (!eat(')')) throw ParseError("expected ')' after arguments", {pos, pos + 1});
      }
      const auto& want = inst.symbols[fn].constraint;
      if (args.size() != want.size())
        throw InvalidError("application arity differs from the declared constraint");
      for (size_t i = 0; i < args.size(); ++i)
        if (intern_var(args[i]) != want[i])
          throw InvalidError("application arguments must match the declared constraint");
      return Matrix::app(fn, false);
    }
    return Matrix::atom(intern_var(name), false);
  }
};

std::string matrix_to_text(const Matrix& m, const AdqbfInstance& inst) {
  auto app_text = [&](int fn) {
    std::string s = inst.symbols[fn].name + "(";
    const auto& c = inst.symbols[fn].constraint;
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += var_name(c[i]);
    }
    return s + ")";
  };
  auto wrap = [&](const Matrix& kid) {
    std::string s = matrix_to_text(kid, inst);
    bool compound = kid.kind == Matrix::Kind::And || kid.kind == Matrix::Kind::Or;
    return compound ? "(" + s + ")" : s;
  };
  switch (m.kind) {
    case Matrix::Kind::Var: return var_name(m.var);
    case Matrix::Kind::NegVar: return "!" + var_name(m.var);
    case Matrix::Kind::App: return app_text(m.fn);
    case Matrix::Kind::NegApp: return "!" + app_text(m.fn);
    case Matrix::Kind::And: return wrap(m.kids[0]) + " & " + wrap(m.kids[1]);
    case Matrix::Kind::Or: return wrap(m.kids[0]) + " | " + wrap(m.kids[1]);
  }
  return "";
}

}  // namespace

AdqbfInstance adqbf_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), {0, 0});
  }
  AdqbfInstance inst;
  std::string shape = j.at("shape").get<std::string>();
  if (shape == "sigma1")
    inst.shape = AdqbfShape::sigma1;
  else if (shape == "pi2")
    inst.shape = AdqbfShape::pi2;
  else
    throw InvalidError("shape must be sigma1 or pi2");
  int n = j.at("n").get<int>();
  for (int i = 1; i <= n; ++i) inst.pvars.push_back(intern_var("p" + std::to_string(i)));
  for (const auto& jb : j.at("blocks")) {
    QuantBlock b;
    std::string q = jb.at("q").get<std::string>();
    if (q != "A" && q != "E") throw InvalidError("block quantifier must be A or E");
    b.universal = q == "A";
    for (const auto& jf : jb.at("fns")) {
      FnSymbol s;
      s.name = jf.at("name").get<std::string>();
      for (const auto& a : jf.at("args")) s.constraint.push_back(intern_var(a.get<std::string>()));
      b.fns.push_back(static_cast<int>(inst.symbols.size()));
      inst.symbols.push_back(std::move(s));
    }
    inst.blocks.push_back(std::move(b));
  }
  std::string mtext = j.at("matrix").get<std::string>();
  MatrixParser mp{mtext, inst};
  inst.matrix = mp.or_level();
  mp.skip();
  if (mp.pos != mtext.size())
    throw ParseError("trailing input after matrix", {mp.pos, mtext.size()});
  inst.validate();
  return inst;
}

std::string adqbf_to_json(const AdqbfInstance& inst) {
  nlohmann::json j;
  j["shape"] = inst.shape == AdqbfShape::sigma1 ? "sigma1" : "pi2";
  j["n"] = inst.pvars.size();
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : inst.blocks) {
    nlohmann::json jb;
    jb["q"] = b.universal ? "A" : "E";
    jb["fns"] = nlohmann::json::array();
    for (int fi : b.fns) {
      nlohmann::json jf;
      jf["name"] = inst.symbols[fi].name;
      jf["args"] = nlohmann::json::array();
      for (VarId c : inst.symbols[fi].constraint) jf["args"].push_back(var_name(c));
      jb["fns"].push_back(jf);
    }
    j["blocks"].push_back(jb);
  }
  j["matrix"] = matrix_to_text(inst.matrix, inst);
  return j.dump();
}

}  // namespace teamlogic
