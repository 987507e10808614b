#include "teamlogic/tableau.hpp"

#include <unordered_map>

namespace teamlogic {

namespace {

// Formula sets ordered by the first preorder position in the input; the
// deterministic selection rule picks the least-position non-atom.
struct Numbering {
  std::unordered_map<Formula, int, FormulaHash> index;
  int next = 0;

  void visit(const Formula& f) {
    index.emplace(f, next++);
    for (size_t i = 0; i < f.child_count(); ++i) visit(f.child(i));
  }
  int of(const Formula& f) {
    auto it = index.find(f);
    if (it != index.end()) return it->second;
    index.emplace(f, next);
    return next++;
  }
};

using FormulaSet = std::vector<std::pair<int, Formula>>;  // sorted by index, unique formulas

void insert(FormulaSet& s, int idx, const Formula& f) {
  for (auto& [i, g] : s)
    if (g == f) return;
  auto it = s.begin();
  while (it != s.end() && it->first < idx) ++it;
  s.insert(it, {idx, f});
}

FormulaSet without(const FormulaSet& s, const Formula& f) {
  FormulaSet out;
  out.reserve(s.size());
  for (auto& e : s)
    if (!(e.second == f)) out.push_back(e);
  return out;
}

bool intersects(const FormulaSet& a, const FormulaSet& b) {
  for (auto& x : a)
    for (auto& y : b)
      if (x.second == y.second) return true;
  return false;
}

struct Engine {
  const RelationOracle& oracle;
  LeafRule rule;
  Numbering num;
  TableauStats stats;

  // Returns the least-index non-atomic member, if any.
  const std::pair<int, Formula>* choose(const FormulaSet& s) {
    for (auto& e : s)
      if (e.second.kind() != Kind::Atom) return &e;
    return nullptr;
  }

  bool sat(FormulaSet a, FormulaSet b, FormulaSet c, FormulaSet d, int depth) {
    ++stats.calls;
    if (depth > stats.max_depth) stats.max_depth = depth;

    if (const auto* pick = choose(a)) {
      const Formula f = pick->second;
      switch (f.kind()) {
        case Kind::CNeg: {
          FormulaSet b2 = b;
          insert(b2, num.of(f.body()), f.body());
          return sat(without(a, f), std::move(b2), std::move(c), std::move(d), depth + 1);
        }
        case Kind::And: {
          FormulaSet a2 = without(a, f);
          insert(a2, num.of(f.left()), f.left());
          insert(a2, num.of(f.right()), f.right());
          return sat(std::move(a2), std::move(b), std::move(c), std::move(d), depth + 1);
        }
        case Kind::Box: {
          FormulaSet c2 = c;
          insert(c2, num.of(f.body()), f.body());
          return sat(without(a, f), std::move(b), std::move(c2), std::move(d), depth + 1);
        }
        case Kind::Rel: {
          const Relation& rel = oracle.get(f.rel_symbol());
          if (rel.arity != static_cast<int>(f.child_count()))
            throw InvalidError("relation arity mismatch for " + f.rel_symbol());
          for (uint32_t tuple : rel.tuples)
            if (branch_rel(a, b, c, d, f, tuple, true, depth)) return true;
          return false;
        }
        default: throw FragmentError("node outside the RML grammar in the tableau");
      }
    }
    if (const auto* pick = choose(b)) {
      const Formula f = pick->second;
      switch (f.kind()) {
        case Kind::CNeg: {
          FormulaSet a2 = a;
          insert(a2, num.of(f.body()), f.body());
          return sat(std::move(a2), without(b, f), std::move(c), std::move(d), depth + 1);
        }
        case Kind::And: {
          FormulaSet bl = without(b, f);
          FormulaSet br = bl;
          insert(bl, num.of(f.left()), f.left());
          insert(br, num.of(f.right()), f.right());
          return sat(a, std::move(bl), c, d, depth + 1) ||
                 sat(a, std::move(br), std::move(c), std::move(d), depth + 1);
        }
        case Kind::Box: {
          FormulaSet d2 = d;
          insert(d2, num.of(f.body()), f.body());
          return sat(std::move(a), without(b, f), std::move(c), std::move(d2), depth + 1);
        }
        case Kind::Rel: {
          const Relation& rel = oracle.get(f.rel_symbol());
          if (rel.arity != static_cast<int>(f.child_count()))
            throw InvalidError("relation arity mismatch for " + f.rel_symbol());
          for (uint32_t tuple : rel.complement())
            if (branch_rel(a, b, c, d, f, tuple, false, depth)) return true;
          return false;
        }
        default: throw FragmentError("node outside the RML grammar in the tableau");
      }
    }

    // Leaf: A and B hold atoms only.
    if (intersects(a, b)) return false;
    bool run_successors =
        rule == LeafRule::successor_driven ? !d.empty() : intersects(c, d);
    if (run_successors) {
      for (auto& [idx, df] : d) {
        FormulaSet db;
        insert(db, num.of(df), df);
        if (!sat(c, std::move(db), {}, {}, depth + 1)) return false;
      }
      return true;
    }
    return true;
  }

  bool branch_rel(const FormulaSet& a, const FormulaSet& b, const FormulaSet& c,
                  const FormulaSet& d, const Formula& f, uint32_t tuple, bool in_a,
                  int depth) {
    FormulaSet a2 = in_a ? without(a, f) : a;
    FormulaSet b2 = in_a ? b : without(b, f);
    int k = static_cast<int>(f.child_count());
    for (int j = 0; j < k; ++j) {
      const Formula& arg = f.child(j);
      bool bit = (tuple >> (k - 1 - j)) & 1;  // first argument = high bit
      if (bit)
        insert(a2, num.of(arg), arg);
      else
        insert(b2, num.of(arg), arg);
    }
    return sat(std::move(a2), std::move(b2), c, d, depth + 1);
  }
};

}  // namespace

bool tableau_sat(const TableauState& state, const RelationOracle& oracle, TableauStats* stats,
                 LeafRule rule) {
  Engine e{oracle, rule};
  FormulaSet a, b, c, d;
  for (const auto& f : state.asserted_true) {
    if (!is_rml(f)) throw FragmentError("tableau inputs must be RML formulae");
    e.num.visit(f);
    insert(a, e.num.of(f), f);
  }
  for (const auto& f : state.asserted_false) {
    if (!is_rml(f)) throw FragmentError("tableau inputs must be RML formulae");
    e.num.visit(f);
    insert(b, e.num.of(f), f);
  }
  for (const auto& f : state.boxed_true) {
    if (!is_rml(f)) throw FragmentError("tableau inputs must be RML formulae");
    e.num.visit(f);
    insert(c, e.num.of(f), f);
  }
  for (const auto& f : state.boxed_false) {
    if (!is_rml(f)) throw FragmentError("tableau inputs must be RML formulae");
    e.num.visit(f);
    insert(d, e.num.of(f), f);
  }
  bool r = e.sat(std::move(a), std::move(b), std::move(c), std::move(d), 1);
  if (stats) *stats = e.stats;
  return r;
}

bool rml_satisfiable(const Formula& f, const RelationOracle& oracle, TableauStats* stats,
                     LeafRule rule) {
  TableauState st;
  st.asserted_true.push_back(f);
  return tableau_sat(st, oracle, stats, rule);
}

}  // namespace teamlogic
