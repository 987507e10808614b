#include "teamlogic/deciders.hpp"

#include <functional>
#include <algorithm>

namespace teamlogic {

namespace {

std::vector<VarId> sorted_by_name(const std::set<VarId>& vars) {
  std::vector<VarId> out(vars.begin(), vars.end());
  std::sort(out.begin(), out.end(),
            [](VarId a, VarId b) { return var_name(a) < var_name(b); });
  return out;
}

std::vector<VarId> joint_free_vars(const std::vector<Formula>& premises,
                                   const Formula& conclusion) {
  std::set<VarId> vars = free_vars(conclusion);
  for (const auto& p : premises) {
    auto fv = free_vars(p);
    vars.insert(fv.begin(), fv.end());
  }
  return sorted_by_name(vars);
}

PropTeam team_from_mask(const std::vector<VarId>& vars, uint64_t mask) {
  std::vector<uint32_t> rows;
  uint32_t space = 1u << vars.size();
  for (uint32_t r = 0; r < space; ++r)
    if ((mask >> r) & 1) rows.push_back(r);
  return PropTeam::of_rows(vars, std::move(rows));
}

template <typename Pred>
PropTeam minimize_team(PropTeam x, Pred pred) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < x.rows.size(); ++i) {
      PropTeam smaller = x;
      smaller.rows.erase(smaller.rows.begin() + i);
      if (pred(smaller)) {
        x = std::move(smaller);
        changed = true;
        break;
      }
    }
  }
  return x;
}

void require_emdl_family(const Formula& f, const char* who) {
  if (f.feats() & (kFeatQuant | kFeatIDisj | kFeatIndep | kFeatIncl | kFeatCNeg | kFeatRel))
    throw FragmentError(std::string(who) + " expects formulas in the EMDL family");
}

void require_mldisj_family(const Formula& f, const char* who) {
  if (f.feats() & (kFeatQuant | kFeatDepSimple | kFeatDepExt | kFeatIndep | kFeatIncl |
                   kFeatCNeg | kFeatRel))
    throw FragmentError(std::string(who) + " expects formulas in ML with idisj only");
}

void require_qplinc_family(const Formula& f, const char* who) {
  if (f.feats() & (kFeatModal | kFeatDepSimple | kFeatDepExt | kFeatIDisj | kFeatIndep |
                   kFeatCNeg | kFeatRel))
    throw FragmentError(std::string(who) + " expects formulas in the QPLInc family");
}

void require_qplind_family(const Formula& f, const char* who) {
  if (f.feats() & (kFeatModal | kFeatDepExt | kFeatIDisj | kFeatIncl | kFeatCNeg | kFeatRel))
    throw FragmentError(std::string(who) + " expects formulas in the QPLInd family");
}

// --------------------------------------------------------------------------
// Witness-tuple enumeration across the dependence atoms of several formulas.

struct WitnessSpace {
  std::vector<std::vector<DepOccurrence>> occs;   // per formula
  std::vector<std::vector<std::string>> symbols;  // per formula, per occurrence
  uint64_t tuple_count = 1;

  WitnessSpace(const std::vector<Formula>& fs, int first_symbol, const Caps& caps) {
    int sym = first_symbol;
    for (const auto& f : fs) {
      occs.push_back(dep_atoms(f));
      auto& names = symbols.emplace_back();
      for (const auto& occ : occs.back()) {
        if (occ.arity() > caps.max_dep_arity)
          throw ResourceError("dependence atom arity exceeds the configured cap");
        names.push_back("S_" + std::to_string(sym++));
        uint64_t tables = WitnessFunction::table_count(occ.arity());
        if (tuple_count > caps.max_witness_tuples / tables + 1)
          tuple_count = caps.max_witness_tuples + 1;
        else
          tuple_count *= tables;
      }
    }
  }

  int symbol_count() const {
    int n = 0;
    for (auto& v : symbols) n += static_cast<int>(v.size());
    return n;
  }
};

// Mixed-radix counter over all occurrences of a WitnessSpace.
struct TupleCursor {
  const WitnessSpace& space;
  std::vector<std::vector<WitnessFunction>> fns;  // per formula
  bool exhausted = false;

  explicit TupleCursor(const WitnessSpace& s) : space(s) {
    for (auto& o : s.occs) {
      auto& v = fns.emplace_back();
      for (auto& occ : o) v.push_back({occ.arity(), 0});
    }
  }

  bool advance() {
    for (int i = static_cast<int>(fns.size()) - 1; i >= 0; --i)
      for (int j = static_cast<int>(fns[i].size()) - 1; j >= 0; --j) {
        WitnessFunction& w = fns[i][j];
        if (w.table + 1 < WitnessFunction::table_count(w.arity)) {
          ++w.table;
          return true;
        }
        w.table = 0;
      }
    exhausted = true;
    return false;
  }

  void add_to_oracle(std::map<std::string, Relation>& rels) const {
    for (size_t i = 0; i < fns.size(); ++i) {
      auto part = oracle_from_witnesses(fns[i], space.symbols[i]);
      rels.insert(part.begin(), part.end());
    }
  }

  std::string describe() const {
    std::string out;
    for (size_t i = 0; i < fns.size(); ++i)
      for (size_t j = 0; j < fns[i].size(); ++j) {
        if (!out.empty()) out += ' ';
        out += space.symbols[i][j] + "=" + std::to_string(fns[i][j].table) + "/" +
               std::to_string(fns[i][j].arity);
      }
    return out.empty() ? "(none)" : out;
  }
};

// --------------------------------------------------------------------------
// Countermodel searches.

bool all_prop(const std::vector<Formula>& premises, const Formula& conclusion) {
  if (!is_prop_family(conclusion)) return false;
  for (const auto& p : premises)
    if (!is_prop_family(p)) return false;
  return true;
}

std::optional<PropTeam> prop_countermodel(const std::vector<Formula>& premises,
                                          const Formula& conclusion, const Caps& caps,
                                          DecideCounters& counters) {
  std::vector<VarId> vars = joint_free_vars(premises, conclusion);
  if (static_cast<int>(vars.size()) > caps.max_joint_vars) return std::nullopt;
  uint32_t rows = 1u << vars.size();
  auto is_counter = [&](const PropTeam& x) {
    for (const auto& p : premises)
      if (!check_prop(x, p, caps.check)) return false;
    return !check_prop(x, conclusion, caps.check);
  };
  uint64_t total = rows >= 64 ? 0 : (1ull << rows);
  for (uint64_t mask = 1; mask < total; ++mask) {
    ++counters.teams;
    PropTeam x = team_from_mask(vars, mask);
    if (is_counter(x)) return minimize_team(std::move(x), is_counter);
  }
  return std::nullopt;
}

void enumerate_models(int min_worlds, int max_worlds, const std::vector<VarId>& vars,
                      DecideCounters& counters,
                      const std::function<bool(const KripkeModel&)>& visit) {
  for (int w = min_worlds; w <= max_worlds; ++w) {
    if (w * static_cast<int>(vars.size()) > 24 || w * w > 36)
      throw ResourceError("model enumeration space too large");
    uint64_t redges = 1ull << (w * w);
    uint64_t rvals = 1ull << (w * vars.size());
    KripkeModel m;
    m.world_count = w;
    for (uint64_t rbits = 0; rbits < redges; ++rbits) {
      m.succ.assign(w, 0);
      for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b)
          if ((rbits >> (a * w + b)) & 1) m.add_edge(a, b);
      for (uint64_t vbits = 0; vbits < rvals; ++vbits) {
        m.val.clear();
        for (size_t i = 0; i < vars.size(); ++i) {
          uint64_t mask = (vbits >> (i * w)) & ((1ull << w) - 1);
          m.val[vars[i]] = mask;
        }
        ++counters.models;
        if (visit(m)) return;
      }
    }
  }
}

std::optional<ModalWitness> modal_countermodel(const std::vector<Formula>& premises,
                                               const Formula& conclusion, const Caps& caps,
                                               DecideCounters& counters) {
  std::set<VarId> vset = free_vars(conclusion);
  for (const auto& p : premises) {
    auto fv = free_vars(p);
    vset.insert(fv.begin(), fv.end());
  }
  std::vector<VarId> vars = sorted_by_name(vset);
  std::optional<ModalWitness> found;
  auto is_counter = [&](const KripkeModel& m, TeamMask t) {
    for (const auto& p : premises)
      if (!check_modal(m, t, p, caps.check)) return false;
    return !check_modal(m, t, conclusion, caps.check);
  };
  enumerate_models(1, caps.countermodel_worlds, vars, counters, [&](const KripkeModel& m) {
    for (TeamMask t = 1; t <= m.all_worlds(); ++t)
      if (is_counter(m, t)) {
        found = ModalWitness{m, t};
        return true;
      }
    return false;
  });
  return found;
}

// --------------------------------------------------------------------------

Verdict emdl_decide(const std::vector<Formula>& premises, const Formula& conclusion,
                    const Caps& caps, const char* who) {
  for (const auto& p : premises) require_emdl_family(p, who);
  require_emdl_family(conclusion, who);

  Verdict v;
  WitnessSpace prem_space(premises, 1, caps);
  WitnessSpace concl_space({conclusion}, 1 + prem_space.symbol_count(), caps);
  if (prem_space.tuple_count > caps.max_witness_tuples ||
      concl_space.tuple_count > caps.max_witness_tuples / std::max<uint64_t>(prem_space.tuple_count, 1))
    throw ResourceError("witness tuple space exceeds the configured cap");

  std::vector<Formula> prem_stars;
  for (size_t i = 0; i < premises.size(); ++i)
    prem_stars.push_back(star_translate(premises[i], prem_space.symbols[i]));
  Formula concl_star = star_translate(conclusion, concl_space.symbols[0]);

  TupleCursor outer(prem_space);
  while (true) {
    bool inner_found = false;
    TupleCursor inner(concl_space);
    while (true) {
      ++v.counters.witness_tuples;
      std::map<std::string, Relation> rels;
      outer.add_to_oracle(rels);
      inner.add_to_oracle(rels);
      MapOracle oracle(std::move(rels));
      Formula chi = Formula::cneg(concl_star);
      for (const auto& s : prem_stars) chi = Formula::land(s, chi);
      TableauStats ts;
      bool satisfiable = rml_satisfiable(chi, oracle, &ts);
      v.counters.absorb(ts);
      if (!satisfiable) {
        inner_found = true;
        if (premises.empty())
          v.info["witness_tables"] = inner.describe();
        break;
      }
      if (!inner.advance()) break;
    }
    if (!inner_found) {
      v.answer = false;
      v.info["failing_premise_tables"] = outer.describe();
      if (all_prop(premises, conclusion)) {
        if (auto cm = prop_countermodel(premises, conclusion, caps, v.counters))
          v.team_witness = std::move(cm);
      } else if (auto cm = modal_countermodel(premises, conclusion, caps, v.counters)) {
        v.modal_witness = std::move(cm);
      }
      return v;
    }
    if (!outer.advance()) break;
  }
  v.answer = true;
  return v;
}

}  // namespace

Verdict emdl_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                     const Caps& caps) {
  return emdl_decide(premises, conclusion, caps, "emdl_entails");
}

Verdict emdl_valid(const Formula& f, const Caps& caps) {
  return emdl_decide({}, f, caps, "emdl_valid");
}

Verdict emdl_sat(const Formula& f, const Caps& caps) {
  require_emdl_family(f, "emdl_sat");
  Verdict v;
  WitnessSpace space({f}, 1, caps);
  if (space.tuple_count > caps.max_witness_tuples)
    throw ResourceError("witness tuple space exceeds the configured cap");
  Formula star = star_translate(f, space.symbols[0]);
  TupleCursor cur(space);
  while (true) {
    ++v.counters.witness_tuples;
    std::map<std::string, Relation> rels;
    cur.add_to_oracle(rels);
    MapOracle oracle(std::move(rels));
    TableauStats ts;
    bool satisfiable = rml_satisfiable(star, oracle, &ts);
    v.counters.absorb(ts);
    if (satisfiable) {
      v.answer = true;
      v.info["witness_tables"] = cur.describe();
      if (auto w = brute_sat_modal(f, caps.countermodel_worlds, caps)) v.modal_witness = w;
      return v;
    }
    if (!cur.advance()) break;
  }
  v.answer = false;
  return v;
}

// --------------------------------------------------------------------------
// ML with intuitionistic disjunction.

namespace {

// Distinct idisj subformulas in first-seen preorder.
void collect_idisj(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::IDisj) {
    bool seen = false;
    for (auto& g : out)
      if (g == f) seen = true;
    if (!seen) out.push_back(f);
  }
  for (size_t i = 0; i < f.child_count(); ++i) collect_idisj(f.child(i), out);
}

Formula select_idisj(const Formula& f, const std::vector<Formula>& subs, uint32_t choice) {
  if (f.kind() == Kind::IDisj) {
    size_t idx = 0;
    while (idx < subs.size() && !(subs[idx] == f)) ++idx;
    bool right = (choice >> idx) & 1;
    return select_idisj(right ? f.right() : f.left(), subs, choice);
  }
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom: return f;
    case Kind::And: {
      Formula l = select_idisj(f.left(), subs, choice);
      return Formula::land(l, select_idisj(f.right(), subs, choice));
    }
    case Kind::Or: {
      Formula l = select_idisj(f.left(), subs, choice);
      return Formula::lor(l, select_idisj(f.right(), subs, choice));
    }
    case Kind::Box: return Formula::box(select_idisj(f.body(), subs, choice));
    case Kind::Diamond: return Formula::diamond(select_idisj(f.body(), subs, choice));
    default: throw FragmentError("unexpected node in an ML(idisj) formula");
  }
}

bool ml_core_entails(const std::vector<Formula>& cores, const Formula& concl_core,
                     DecideCounters& counters) {
  Formula chi = Formula::cneg(star_translate(concl_core, {}));
  for (const auto& c : cores) chi = Formula::land(star_translate(c, {}), chi);
  MapOracle empty;
  TableauStats ts;
  bool satisfiable = rml_satisfiable(chi, empty, &ts);
  counters.absorb(ts);
  return !satisfiable;
}

}  // namespace

Verdict mldisj_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                       const Caps& caps) {
  for (const auto& p : premises) require_mldisj_family(p, "mldisj_entails");
  require_mldisj_family(conclusion, "mldisj_entails");
  Verdict v;
  std::vector<std::vector<Formula>> prem_subs;
  uint64_t outer_count = 1;
  for (const auto& p : premises) {
    auto& subs = prem_subs.emplace_back();
    collect_idisj(p, subs);
    outer_count *= 1ull << subs.size();
    if (outer_count > caps.max_witness_tuples)
      throw ResourceError("selection tuple space exceeds the configured cap");
  }
  std::vector<Formula> concl_subs;
  collect_idisj(conclusion, concl_subs);
  uint64_t inner_count = 1ull << concl_subs.size();

  std::vector<uint32_t> outer(premises.size(), 0);
  while (true) {
    std::vector<Formula> cores;
    for (size_t i = 0; i < premises.size(); ++i)
      cores.push_back(select_idisj(premises[i], prem_subs[i], outer[i]));
    bool found = false;
    for (uint32_t ci = 0; ci < inner_count; ++ci) {
      ++v.counters.witness_tuples;
      if (ml_core_entails(cores, select_idisj(conclusion, concl_subs, ci), v.counters)) {
        found = true;
        break;
      }
    }
    if (!found) {
      v.answer = false;
      if (auto cm = modal_countermodel(premises, conclusion, caps, v.counters))
        v.modal_witness = std::move(cm);
      return v;
    }
    int pos = static_cast<int>(premises.size()) - 1;
    while (pos >= 0 && outer[pos] + 1 == (1u << prem_subs[pos].size())) outer[pos--] = 0;
    if (pos < 0) break;
    ++outer[pos];
  }
  v.answer = true;
  return v;
}

Verdict mldisj_valid(const Formula& f, const Caps& caps) {
  return mldisj_entails({}, f, caps);
}

Verdict mldisj_sat(const Formula& f, const Caps& caps) {
  require_mldisj_family(f, "mldisj_sat");
  Verdict v;
  std::vector<Formula> subs;
  collect_idisj(f, subs);
  for (uint32_t ci = 0; ci < (1u << subs.size()); ++ci) {
    ++v.counters.witness_tuples;
    Formula core = select_idisj(f, subs, ci);
    MapOracle empty;
    TableauStats ts;
    bool satisfiable = rml_satisfiable(star_translate(core, {}), empty, &ts);
    v.counters.absorb(ts);
    if (satisfiable) {
      v.answer = true;
      if (auto w = brute_sat_modal(f, caps.countermodel_worlds, caps)) v.modal_witness = w;
      return v;
    }
  }
  v.answer = false;
  return v;
}

// --------------------------------------------------------------------------
// MaxSub, Algorithm 2.

namespace {
PropTeam rows_team(const PropTeam& like, std::vector<uint32_t> rows) {
  return PropTeam::of_rows(like.domain, std::move(rows));
}

bool row_in(const PropTeam& x, uint32_t row) {
  return std::binary_search(x.rows.begin(), x.rows.end(), row);
}

uint32_t tuple_of(const PropTeam& x, uint32_t row, const std::vector<int>& idx) {
  uint32_t t = 0;
  for (int i : idx) t = (t << 1) | ((row >> i) & 1);
  return t;
}

std::vector<int> tuple_indices(const PropTeam& x, const std::vector<VarId>& vars) {
  std::vector<int> idx;
  for (VarId v : vars) {
    int i = x.var_index(v);
    if (i < 0) throw InvalidError("variable '" + var_name(v) + "' missing from the team domain");
    idx.push_back(i);
  }
  return idx;
}
}  // namespace

PropTeam max_sub(const PropTeam& x, const Formula& f) {
  require_qplinc_family(f, "max_sub");
  switch (f.kind()) {
    case Kind::Atom: {
      int i = tuple_indices(x, {f.var()})[0];
      std::vector<uint32_t> rows;
      for (uint32_t r : x.rows)
        if ((r >> i) & 1) rows.push_back(r);
      return rows_team(x, std::move(rows));
    }
    case Kind::NegAtom: {
      int i = tuple_indices(x, {f.var()})[0];
      std::vector<uint32_t> rows;
      for (uint32_t r : x.rows)
        if (!((r >> i) & 1)) rows.push_back(r);
      return rows_team(x, std::move(rows));
    }
    case Kind::Or: {
      PropTeam l = max_sub(x, f.left());
      PropTeam r = max_sub(x, f.right());
      std::vector<uint32_t> rows;
      std::set_union(l.rows.begin(), l.rows.end(), r.rows.begin(), r.rows.end(),
                     std::back_inserter(rows));
      return rows_team(x, std::move(rows));
    }
    case Kind::And: {
      PropTeam y = x;
      while (true) {
        PropTeam z = max_sub(max_sub(y, f.left()), f.right());
        if (z.rows == y.rows) return y;
        y = std::move(z);
      }
    }
    case Kind::Exists: {
      PropTeam dup = duplicate(x, f.var());
      PropTeam m = max_sub(dup, f.body());
      uint32_t bit = 1u << dup.var_index(f.var());
      std::vector<uint32_t> rows;
      for (uint32_t r : x.rows) {
        uint32_t base = r & ~bit;  // identical when p is fresh for x
        if (row_in(m, base) || row_in(m, base | bit)) rows.push_back(r);
      }
      return rows_team(x, std::move(rows));
    }
    case Kind::Forall: {
      PropTeam y = duplicate(x, f.var());
      uint32_t bit = 1u << y.var_index(f.var());
      while (true) {
        PropTeam m = max_sub(y, f.body());
        std::vector<uint32_t> keep;
        for (uint32_t r : y.rows)
          if (row_in(m, r & ~bit) && row_in(m, r | bit)) keep.push_back(r);
        if (keep == y.rows) break;
        y = rows_team(y, std::move(keep));
      }
      std::vector<uint32_t> rows;
      for (uint32_t r : x.rows) {
        uint32_t base = r & ~bit;
        if (row_in(y, base) && row_in(y, base | bit)) rows.push_back(r);
      }
      return rows_team(x, std::move(rows));
    }
    case Kind::Incl: {
      std::vector<int> li = tuple_indices(x, f.tuple_left());
      std::vector<int> ri = tuple_indices(x, f.tuple_right());
      PropTeam y = x;
      while (true) {
        std::set<uint32_t> right;
        for (uint32_t r : y.rows) right.insert(tuple_of(y, r, ri));
        std::vector<uint32_t> keep;
        for (uint32_t r : y.rows)
          if (right.count(tuple_of(y, r, li))) keep.push_back(r);
        if (keep == y.rows) return y;
        y = rows_team(y, std::move(keep));
      }
    }
    default:
      throw FragmentError("max_sub expects a QPLInc formula");
  }
}

// --------------------------------------------------------------------------

Verdict qplinc_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                       const Caps& caps) {
  for (const auto& p : premises) require_qplinc_family(p, "qplinc_entails");
  require_qplinc_family(conclusion, "qplinc_entails");
  Verdict v;
  std::vector<VarId> vars = joint_free_vars(premises, conclusion);
  if (static_cast<int>(vars.size()) > caps.max_joint_vars)
    throw ResourceError("joint free variables exceed the configured cap");
  uint32_t rows = 1u << vars.size();
  auto is_counter = [&](const PropTeam& x) {
    for (const auto& p : premises)
      if (!(max_sub(x, p).rows == x.rows)) return false;
    return !(max_sub(x, conclusion).rows == x.rows);
  };
  for (uint64_t mask = 1; mask < (1ull << rows); ++mask) {
    ++v.counters.teams;
    PropTeam x = team_from_mask(vars, mask);
    if (is_counter(x)) {
      v.answer = false;
      v.team_witness = minimize_team(std::move(x), is_counter);
      return v;
    }
  }
  v.answer = true;
  return v;
}

Verdict qplinc_valid(const Formula& f, const Caps& caps) {
  require_qplinc_family(f, "qplinc_valid");
  Verdict v;
  std::vector<VarId> fv = sorted_by_name(free_vars(f));

  // phi*: prefix every inclusion atom with the free variables, then close
  // universally; validity then reduces to the singleton empty-domain team.
  std::function<Formula(const Formula&)> star = [&](const Formula& g) -> Formula {
    switch (g.kind()) {
      case Kind::Incl: {
        std::vector<VarId> l = fv, r = fv;
        l.insert(l.end(), g.tuple_left().begin(), g.tuple_left().end());
        r.insert(r.end(), g.tuple_right().begin(), g.tuple_right().end());
        return Formula::incl(std::move(l), std::move(r));
      }
      case Kind::Atom:
      case Kind::NegAtom: return g;
      case Kind::And: {
        Formula l = star(g.left());
        return Formula::land(l, star(g.right()));
      }
      case Kind::Or: {
        Formula l = star(g.left());
        return Formula::lor(l, star(g.right()));
      }
      case Kind::Exists: return Formula::exists(g.var(), star(g.body()));
      case Kind::Forall: return Formula::forall(g.var(), star(g.body()));
      default: throw FragmentError("qplinc_valid expects a QPLInc formula");
    }
  };
  Formula closed = star(f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) closed = Formula::forall(*it, closed);

  PropTeam unit = PropTeam::of_rows({}, {0});
  v.answer = check_prop(unit, closed, caps.check);
  if (!v.answer) {
    // A violating singleton exists; report the first one.
    for (uint32_t r = 0; r < (1u << fv.size()); ++r) {
      ++v.counters.teams;
      PropTeam s = PropTeam::of_rows(fv, {r});
      if (!check_prop(s, f, caps.check)) {
        v.team_witness = std::move(s);
        break;
      }
    }
  }
  return v;
}

Verdict qplind_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                       const Caps& caps) {
  for (const auto& p : premises) require_qplind_family(p, "qplind_entails");
  require_qplind_family(conclusion, "qplind_entails");
  Verdict v;
  std::vector<VarId> vars = joint_free_vars(premises, conclusion);
  if (static_cast<int>(vars.size()) > caps.max_joint_vars)
    throw ResourceError("joint free variables exceed the configured cap");
  uint32_t rows = 1u << vars.size();
  auto is_counter = [&](const PropTeam& x) {
    for (const auto& p : premises)
      if (!check_prop(x, p, caps.check)) return false;
    return !check_prop(x, conclusion, caps.check);
  };
  for (uint64_t mask = 1; mask < (1ull << rows); ++mask) {
    ++v.counters.teams;
    PropTeam x = team_from_mask(vars, mask);
    if (is_counter(x)) {
      v.answer = false;
      v.team_witness = minimize_team(std::move(x), is_counter);
      return v;
    }
  }
  v.answer = true;
  return v;
}

Verdict brute_entails_prop(const std::vector<Formula>& premises, const Formula& conclusion,
                           const Caps& caps) {
  for (const auto& p : premises)
    if (!is_prop_family(p)) throw FragmentError("brute_entails_prop expects propositional-family formulas");
  if (!is_prop_family(conclusion))
    throw FragmentError("brute_entails_prop expects propositional-family formulas");
  Verdict v;
  std::vector<VarId> vars = joint_free_vars(premises, conclusion);
  if (static_cast<int>(vars.size()) > caps.max_joint_vars)
    throw ResourceError("joint free variables exceed the configured cap");
  uint32_t rows = 1u << vars.size();
  auto is_counter = [&](const PropTeam& x) {
    for (const auto& p : premises)
      if (!check_prop(x, p, caps.check)) return false;
    return !check_prop(x, conclusion, caps.check);
  };
  for (uint64_t mask = 1; mask < (1ull << rows); ++mask) {
    ++v.counters.teams;
    PropTeam x = team_from_mask(vars, mask);
    if (is_counter(x)) {
      v.answer = false;
      v.team_witness = minimize_team(std::move(x), is_counter);
      return v;
    }
  }
  v.answer = true;
  return v;
}

std::optional<ModalWitness> brute_sat_modal(const Formula& f, int max_worlds, const Caps& caps) {
  if (f.feats() & (kFeatQuant | kFeatCNeg | kFeatRel))
    throw FragmentError("brute_sat_modal expects a modal team-fragment formula");
  std::vector<VarId> vars = sorted_by_name(free_vars(f));
  std::optional<ModalWitness> found;
  DecideCounters counters;
  enumerate_models(1, max_worlds, vars, counters, [&](const KripkeModel& m) {
    for (TeamMask t = 1; t <= m.all_worlds(); ++t)
      if (check_modal(m, t, f, caps.check)) {
        found = ModalWitness{m, t};
        return true;
      }
    return false;
  });
  return found;
}

}  // namespace teamlogic
