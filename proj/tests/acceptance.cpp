// Acceptance suite: nine property/oracle criteria, one pass/fail line each.
// Exit status is non-zero when any criterion fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "support/bruteforce.hpp"
#include "support/rml_brute.hpp"
#include "teamlogic/deciders.hpp"
#include "teamlogic/generators.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/reductions.hpp"
#include "teamlogic/tableau.hpp"
#include "teamlogic/teamcheck.hpp"
#include "teamlogic/witness.hpp"

using namespace teamlogic;
using namespace teamlogic::testing;

namespace {

struct Outcome {
  bool pass;
  std::string details;
};

// ---------------------------------------------------------------------------
// Formula pools enumerated by structural size with dedup.

struct Pool {
  std::vector<Formula> items;
  std::unordered_map<Formula, int, FormulaHash> index;

  int add(const Formula& f) {
    auto it = index.find(f);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(items.size());
    items.push_back(f);
    index.emplace(f, id);
    return id;
  }
};

// All formulas of each size up to max_size, built from leaves and closed under
// the given unary/binary constructors.
struct Enumerator {
  Pool pool;
  std::vector<std::vector<int>> by_size;  // size -> indices

  void seed(int size, const Formula& f) {
    ensure(size);
    int before = static_cast<int>(pool.items.size());
    int id = pool.add(f);
    if (id >= before) by_size[size].push_back(id);
  }
  void ensure(int size) {
    if (static_cast<int>(by_size.size()) <= size) by_size.resize(size + 1);
  }
};

std::vector<Formula> enumerate_rml(int max_size) {
  VarId p = intern_var("p"), q = intern_var("q");
  Enumerator e;
  e.seed(1, Formula::atom(p));
  e.seed(1, Formula::atom(q));
  for (int s = 2; s <= max_size; ++s) {
    e.ensure(s);
    for (int id : e.by_size[s - 1]) {
      Formula c = e.pool.items[id];
      e.seed(s, Formula::cneg(c));
      e.seed(s, Formula::box(c));
      e.seed(s, Formula::rel("S_1", {c}));
    }
    for (int ls = 1; ls <= s - 2; ++ls) {
      int rs = s - 1 - ls;
      for (int li : e.by_size[ls])
        for (int ri : e.by_size[rs])
          e.seed(s, Formula::land(e.pool.items[li], e.pool.items[ri]));
    }
  }
  return e.pool.items;
}

std::vector<Formula> enumerate_emdl(int max_size) {
  VarId p = intern_var("p"), q = intern_var("q");
  Enumerator e;
  e.seed(1, Formula::atom(p));
  e.seed(1, Formula::atom(q));
  e.seed(2, Formula::neg_atom(p));
  e.seed(2, Formula::neg_atom(q));
  for (int s = 2; s <= max_size; ++s) {
    e.ensure(s);
    for (int id : e.by_size[s - 1]) {
      Formula c = e.pool.items[id];
      e.seed(s, Formula::box(c));
      e.seed(s, Formula::diamond(c));
      if (is_flat(c)) e.seed(s, Formula::dep({}, c));  // constancy atom
    }
    // dependence atoms with one ML argument
    for (int as = 1; as <= s - 2; ++as) {
      int ts = s - 1 - as;
      if (static_cast<int>(e.by_size.size()) <= as || ts < 1) continue;
      for (int ai : e.by_size[as]) {
        if (!is_flat(e.pool.items[ai])) continue;
        for (int ti : e.by_size[ts]) {
          if (!is_flat(e.pool.items[ti])) continue;
          e.seed(s, Formula::dep({e.pool.items[ai]}, e.pool.items[ti]));
        }
      }
    }
    for (int ls = 1; ls <= s - 2; ++ls) {
      int rs = s - 1 - ls;
      for (int li : e.by_size[ls])
        for (int ri : e.by_size[rs]) {
          e.seed(s, Formula::land(e.pool.items[li], e.pool.items[ri]));
          e.seed(s, Formula::lor(e.pool.items[li], e.pool.items[ri]));
        }
    }
  }
  return e.pool.items;
}

std::vector<Formula> enumerate_qplinc(int max_size) {
  VarId p = intern_var("p"), q = intern_var("q");
  Enumerator e;
  e.seed(1, Formula::atom(p));
  e.seed(1, Formula::atom(q));
  e.seed(2, Formula::neg_atom(p));
  e.seed(2, Formula::neg_atom(q));
  for (VarId a : {p, q})
    for (VarId b : {p, q}) e.seed(3, Formula::incl({a}, {b}));
  for (VarId a : {p, q})
    for (VarId b : {p, q})
      for (VarId c : {p, q})
        for (VarId d : {p, q}) e.seed(5, Formula::incl({a, b}, {c, d}));
  for (int s = 3; s <= max_size; ++s) {
    e.ensure(s);
    if (s >= 3)
      for (int id : e.by_size[s - 2]) {
        Formula c = e.pool.items[id];
        e.seed(s, Formula::exists(p, c));
        e.seed(s, Formula::exists(q, c));
        e.seed(s, Formula::forall(p, c));
        e.seed(s, Formula::forall(q, c));
      }
    for (int ls = 1; ls <= s - 2; ++ls) {
      int rs = s - 1 - ls;
      for (int li : e.by_size[ls])
        for (int ri : e.by_size[rs]) {
          e.seed(s, Formula::land(e.pool.items[li], e.pool.items[ri]));
          e.seed(s, Formula::lor(e.pool.items[li], e.pool.items[ri]));
        }
    }
  }
  return e.pool.items;
}

// ---------------------------------------------------------------------------
// Criterion 1: flatness, downward closure, union closure, locality.

Outcome criterion1() {
  int violations = 0;
  long cases = 0;
  std::vector<VarId> vars = {intern_var("p"), intern_var("q"), intern_var("r")};

  {  // flatness, ML over Kripke teams
    Rng rng(9001);
    GenOptions opts;
    opts.size = 8;
    for (int i = 0; i < 500; ++i, ++cases) {
      KripkeModel m = random_kripke(rng, rng.pick(1, 4), vars);
      TeamMask team = static_cast<TeamMask>(rng.eng() % (1ull << m.world_count));
      Formula f = random_formula(rng, Fragment::ML, vars, opts);
      bool whole = check_modal(m, team, f);
      bool each = true;
      for (int w = 0; w < m.world_count; ++w)
        if ((team >> w) & 1) each = each && check_modal(m, 1ull << w, f);
      if (whole != each) ++violations;
    }
  }
  {  // flatness, QPL over propositional teams
    Rng rng(9002);
    GenOptions opts;
    opts.size = 7;
    opts.max_quant = 2;
    for (int i = 0; i < 500; ++i, ++cases) {
      PropTeam x = random_team(rng, vars, 8);
      Formula f = random_formula(rng, Fragment::QPL, vars, opts);
      bool whole = check_prop(x, f);
      bool each = true;
      for (uint32_t r : x.rows)
        each = each && check_prop(PropTeam::of_rows(x.domain, {r}), f);
      if (whole != each) ++violations;
    }
  }
  {  // downward closure: MDL, EMDL, ML(idisj) on models; QPDL on teams
    Rng rng(9003);
    GenOptions opts;
    opts.size = 7;
    std::vector<Fragment> frags = {Fragment::MDL, Fragment::EMDL, Fragment::MLIDisj};
    for (Fragment frag : frags) {
      for (int i = 0; i < 500; ++i, ++cases) {
        KripkeModel m = random_kripke(rng, rng.pick(1, 4), vars);
        TeamMask team = static_cast<TeamMask>(rng.eng() % (1ull << m.world_count));
        Formula f = random_formula(rng, frag, vars, opts);
        if (!check_modal(m, team, f)) continue;
        TeamMask sub = team & static_cast<TeamMask>(rng.eng());
        if (!check_modal(m, sub, f)) ++violations;
      }
    }
    GenOptions qopts;
    qopts.size = 6;
    qopts.max_quant = 1;
    for (int i = 0; i < 500; ++i, ++cases) {
      PropTeam x = random_team(rng, vars, 8);
      Formula f = random_formula(rng, Fragment::QPDL, vars, qopts);
      if (!check_prop(x, f)) continue;
      std::vector<uint32_t> sub;
      for (uint32_t r : x.rows)
        if (rng.coin()) sub.push_back(r);
      if (!check_prop(PropTeam::of_rows(x.domain, sub), f)) ++violations;
    }
  }
  {  // union closure, QPLInc
    Rng rng(9004);
    GenOptions opts;
    opts.size = 6;
    opts.max_quant = 1;
    for (int i = 0; i < 500; ++i, ++cases) {
      Formula f = random_formula(rng, Fragment::QPLInc, vars, opts);
      PropTeam x = random_team(rng, vars, 4);
      PropTeam y = random_team(rng, vars, 4);
      if (!check_prop(x, f) || !check_prop(y, f)) continue;
      std::vector<uint32_t> rows = x.rows;
      rows.insert(rows.end(), y.rows.begin(), y.rows.end());
      if (!check_prop(PropTeam::of_rows(vars, rows), f)) ++violations;
    }
  }
  {  // locality across the QPL family
    Rng rng(9005);
    GenOptions opts;
    opts.size = 6;
    opts.max_quant = 1;
    std::vector<Fragment> frags = {Fragment::QPL, Fragment::QPDL, Fragment::QPLInd,
                                   Fragment::QPLInc};
    for (int i = 0; i < 500; ++i, ++cases) {
      Formula f = random_formula(rng, frags[i % frags.size()], vars, opts);
      PropTeam x = random_team(rng, vars, 8);
      if (check_prop(x, f) != check_prop(restrict(x, free_vars(f)), f)) ++violations;
    }
  }

  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld cases, %d violations", cases, violations);
  return {violations == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 2: phi equivalent to the disjunction over all witness sequences,
// exhaustive over EMDL formulas of size <= 6 on two variables, dep arity <= 1.

Outcome criterion2() {
  std::vector<Formula> formulas = enumerate_emdl(6);
  std::vector<VarId> vars = {intern_var("p"), intern_var("q")};

  // substituted variants per formula, lazily shared
  struct Entry {
    Formula phi;
    std::vector<Formula> variants;
  };
  std::vector<Entry> entries;
  for (const auto& f : formulas) {
    Entry e;
    e.phi = f;
    auto occs = dep_atoms(f);
    WitnessSequence ws;
    for (auto& o : occs) ws.push_back({o.arity(), 0});
    while (true) {
      e.variants.push_back(substitute_witnesses(f, ws));
      int pos = static_cast<int>(ws.size()) - 1;
      while (pos >= 0 && ws[pos].table + 1 == WitnessFunction::table_count(ws[pos].arity))
        ws[pos--].table = 0;
      if (pos < 0) break;
      ++ws[pos].table;
    }
    entries.push_back(std::move(e));
  }

  // model family: every 2-world model, every edgeless model up to 4 worlds,
  // and a seeded sample of 3-world models; all teams of each
  std::vector<KripkeModel> models;
  for_all_models(2, vars, [&](const KripkeModel& m) { models.push_back(m); });
  for (int w = 1; w <= 4; ++w) {
    uint64_t rvals = 1ull << (w * vars.size());
    for (uint64_t vb = 0; vb < rvals; ++vb) {
      KripkeModel m;
      m.world_count = w;
      m.succ.assign(w, 0);
      for (size_t i = 0; i < vars.size(); ++i)
        m.val[vars[i]] = (vb >> (i * w)) & ((1ull << w) - 1);
      models.push_back(m);
    }
  }
  {
    Rng rng(9100);
    for (int i = 0; i < 250; ++i) models.push_back(random_kripke(rng, 3, vars));
  }

  std::atomic<long> disagreements{0};
  std::atomic<long> cases{0};
  auto worker = [&](size_t begin, size_t end) {
    for (size_t mi = begin; mi < end; ++mi) {
      const KripkeModel& m = models[mi];
      for (TeamMask team = 0; team <= m.all_worlds(); ++team) {
        for (const auto& e : entries) {
          bool direct = check_modal(m, team, e.phi);
          bool any = false;
          for (const auto& v : e.variants) {
            if (check_modal(m, team, v)) {
              any = true;
              break;
            }
          }
          ++cases;
          if (direct != any) ++disagreements;
        }
      }
    }
  };
  size_t half = models.size() / 2;
  std::thread t1(worker, 0, half);
  std::thread t2(worker, half, models.size());
  t1.join();
  t2.join();

  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu formulas, %zu models, %ld checks, %ld disagreements",
                formulas.size(), models.size(), cases.load(), disagreements.load());
  return {disagreements == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 3: tableau vs exhaustive relational-model search, all RML formulas
// of size <= 7 over two variables, relation arity 1, every oracle table.

Outcome criterion3() {
  std::vector<Formula> formulas = enumerate_rml(7);
  size_t n = formulas.size();

  // compact DAG for the model sweeps
  enum Op : uint8_t { OP_P, OP_Q, OP_CNEG, OP_BOX, OP_REL, OP_AND };
  struct DagNode {
    Op op;
    int a = -1, b = -1;
  };
  std::vector<DagNode> dag(n);
  std::unordered_map<Formula, int, FormulaHash> index;
  for (size_t i = 0; i < n; ++i) index.emplace(formulas[i], static_cast<int>(i));
  VarId pv = intern_var("p");
  for (size_t i = 0; i < n; ++i) {
    const Formula& f = formulas[i];
    switch (f.kind()) {
      case Kind::Atom: dag[i].op = f.var() == pv ? OP_P : OP_Q; break;
      case Kind::CNeg: dag[i] = {OP_CNEG, index.at(f.body()), -1}; break;
      case Kind::Box: dag[i] = {OP_BOX, index.at(f.body()), -1}; break;
      case Kind::Rel: dag[i] = {OP_REL, index.at(f.child(0)), -1}; break;
      case Kind::And: dag[i] = {OP_AND, index.at(f.left()), index.at(f.right())}; break;
      default: return {false, "unexpected node in the RML pool"};
    }
  }

  long disagreements = 0;
  long depth_violations = 0;
  int literal_gap = 0;  // formulas where the literal leaf guard defies the models
  char note[256];

  for (uint32_t table = 0; table < 4; ++table) {
    Relation rel;
    rel.arity = 1;
    if (table & 1) rel.tuples.push_back(0);
    if (table & 2) rel.tuples.push_back(1);
    std::map<std::string, Relation> rels;
    rels["S_1"] = rel;
    MapOracle oracle(rels);

    // tableau verdicts plus the depth bound
    std::vector<uint8_t> tab(n);
    for (size_t i = 0; i < n; ++i) {
      TableauStats stats;
      tab[i] = rml_satisfiable(formulas[i], oracle, &stats) ? 1 : 0;
      if (stats.max_depth > 2 * static_cast<int>(formulas[i].size()) + 1) ++depth_violations;
    }

    // brute side: sweep models, marking satisfied formulas
    std::vector<std::atomic<uint8_t>> sat(n);
    for (auto& s : sat) s.store(0, std::memory_order_relaxed);
    bool has0 = rel.member(0), has1 = rel.member(1);

    auto sweep = [&](int w, const FrameClass* frames, size_t fb, size_t fe,
                     const std::vector<int>* active) {
      uint64_t all = (1ull << w) - 1;
      uint64_t vtotal = 1ull << (2 * w);
      std::vector<uint64_t> mask(n);
      std::vector<uint64_t> succ(w);
      std::vector<uint64_t> boxtab(1ull << w);
      for (size_t fi = fb; fi < fe; ++fi) {
        uint32_t edges = frames[fi].edges;
        for (int a = 0; a < w; ++a) {
          succ[a] = 0;
          for (int b2 = 0; b2 < w; ++b2)
            if ((edges >> (a * w + b2)) & 1) succ[a] |= 1ull << b2;
        }
        for (uint64_t m2 = 0; m2 <= all; ++m2) {
          uint64_t bx = 0;
          for (int a = 0; a < w; ++a)
            if ((succ[a] & ~m2) == 0) bx |= 1ull << a;
          boxtab[m2] = bx;
        }
        for (uint64_t vb = 0; vb < vtotal; ++vb) {
          uint64_t pm = vb & all;
          uint64_t qm = (vb >> w) & all;
          auto eval_range = [&](const std::vector<int>& ids) {
            for (int i : ids) {
              const DagNode& d = dag[i];
              switch (d.op) {
                case OP_P: mask[i] = pm; break;
                case OP_Q: mask[i] = qm; break;
                case OP_CNEG: mask[i] = all & ~mask[d.a]; break;
                case OP_BOX: mask[i] = boxtab[mask[d.a]]; break;
                case OP_REL: {
                  uint64_t c = mask[d.a];
                  mask[i] = (has1 ? c : 0) | (has0 ? (all & ~c) : 0);
                  break;
                }
                case OP_AND: mask[i] = mask[d.a] & mask[d.b]; break;
              }
              if (mask[i] && !sat[i].load(std::memory_order_relaxed))
                sat[i].store(1, std::memory_order_relaxed);
            }
          };
          if (active) {
            eval_range(*active);
          } else {
            std::vector<int> everything(n);
            for (size_t i = 0; i < n; ++i) everything[i] = static_cast<int>(i);
            eval_range(everything);
          }
        }
      }
    };

    // full sweeps at 1..3 worlds
    for (int w = 1; w <= 3; ++w) {
      const auto& frames = canonical_frames(w);
      sweep(w, frames.data(), 0, frames.size(), nullptr);
    }

    // 4 worlds: only the closure of still-undecided formulas, two threads
    std::vector<int> active;
    {
      std::vector<uint8_t> need(n, 0);
      std::function<void(int)> mark = [&](int i) {
        if (need[i]) return;
        need[i] = 1;
        if (dag[i].a >= 0) mark(dag[i].a);
        if (dag[i].b >= 0) mark(dag[i].b);
      };
      for (size_t i = 0; i < n; ++i)
        if (!sat[i].load(std::memory_order_relaxed)) mark(static_cast<int>(i));
      for (size_t i = 0; i < n; ++i)  // topological: pool order is size-ascending
        if (need[i]) active.push_back(static_cast<int>(i));
    }
    const auto& frames4 = canonical_frames(4);
    size_t mid = frames4.size() / 2;
    std::thread t1(sweep, 4, frames4.data(), 0, mid, &active);
    std::thread t2(sweep, 4, frames4.data(), mid, frames4.size(), &active);
    t1.join();
    t2.join();

    for (size_t i = 0; i < n; ++i)
      if (tab[i] != sat[i].load(std::memory_order_relaxed)) ++disagreements;

    if (table == 2) {  // S_1 = {(1)}: count the literal-guard deviations
      for (size_t i = 0; i < n; ++i) {
        bool lit = rml_satisfiable(formulas[i], oracle, nullptr, LeafRule::paper_literal);
        if (lit != (sat[i].load(std::memory_order_relaxed) != 0)) ++literal_gap;
      }
    }
  }

  std::snprintf(note, sizeof note,
                "%zu formulas x 4 tables, %ld disagreements, %ld depth violations; "
                "literal leaf guard deviates on %d formulas over S_1={(1)}",
                n, disagreements, depth_violations, literal_gap);
  return {disagreements == 0 && depth_violations == 0 && literal_gap > 0, note};
}

// ---------------------------------------------------------------------------
// Criterion 4: entailment oracle agreement and the idisj split law.

Outcome criterion4() {
  long disagreements = 0;
  Caps caps;
  {
    Rng rng(9200);
    std::vector<VarId> vars = {intern_var("p"), intern_var("q"), intern_var("r")};
    GenOptions opts;
    opts.size = 6;
    int done = 0;
    while (done < 500) {
      Formula a = random_formula(rng, Fragment::PDL, vars, opts);
      Formula b = random_formula(rng, Fragment::PDL, vars, opts);
      Formula c = random_formula(rng, Fragment::PDL, vars, opts);
      if (dep_atoms(a).size() > 2 || dep_atoms(b).size() > 2 || dep_atoms(c).size() > 2)
        continue;
      ++done;
      if (emdl_entails({a, b}, c, caps).answer != brute_entails_prop({a, b}, c, caps).answer)
        ++disagreements;
    }
  }
  {
    Rng rng(9201);
    std::vector<VarId> vars = {intern_var("p"), intern_var("q")};
    GenOptions opts;
    opts.size = 5;
    for (int i = 0; i < 200; ++i) {
      Formula sigma = random_formula(rng, Fragment::ML, vars, opts);
      Formula f0 = random_formula(rng, Fragment::MLIDisj, vars, opts);
      Formula f1 = random_formula(rng, Fragment::MLIDisj, vars, opts);
      bool split = mldisj_entails({sigma}, Formula::idisj(f0, f1), caps).answer;
      bool parts = mldisj_entails({sigma}, f0, caps).answer ||
                   mldisj_entails({sigma}, f1, caps).answer;
      if (split != parts) ++disagreements;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "500 PDL triples + 200 idisj cases, %ld disagreements",
                disagreements);
  return {disagreements == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 5: MaxSub equals the enumerated unique maximal satisfying subteam.

Outcome criterion5() {
  std::vector<Formula> formulas = enumerate_qplinc(6);
  std::vector<VarId> vars = {intern_var("p"), intern_var("q")};
  long disagreements = 0;
  long membership_gaps = 0;
  long cases = 0;
  for_all_teams(vars, [&](const PropTeam& x) {
    for (const auto& f : formulas) {
      ++cases;
      PropTeam got = max_sub(x, f);
      std::vector<uint32_t> best;
      size_t nrows = x.rows.size();
      for (uint64_t mask = 0; mask < (1ull << nrows); ++mask) {
        std::vector<uint32_t> rows;
        for (size_t j = 0; j < nrows; ++j)
          if ((mask >> j) & 1) rows.push_back(x.rows[j]);
        PropTeam y = PropTeam::of_rows(vars, rows);
        if (check_prop(y, f)) {
          std::vector<uint32_t> merged;
          std::set_union(best.begin(), best.end(), y.rows.begin(), y.rows.end(),
                         std::back_inserter(merged));
          best = std::move(merged);
        }
      }
      if (got.rows != best) ++disagreements;
      if ((got.rows == x.rows) != check_prop(x, f)) ++membership_gaps;
    }
  });
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu formulas x 16 teams (%ld cases), %ld disagreements, %ld membership gaps",
                formulas.size(), cases, disagreements, membership_gaps);
  return {disagreements == 0 && membership_gaps == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 6: reductions preserve verdicts.

Outcome criterion6() {
  Caps caps;
  long failures = 0;
  int pi2_pdl = 0, pi2_ind = 0, sig1 = 0, qpdl = 0;

  // Pi2 instances through the PDL entailment construction
  for (uint64_t seed = 0; pi2_pdl < 30; ++seed) {
    AdqbfInstance inst = random_adqbf(seed, AdqbfShape::pi2, seed % 2 ? 2 : 1, 2, 1);
    if (inst.pvars.size() + inst.symbols.size() > 4) continue;
    ++pi2_pdl;
    ReductionOutput r = adqbf_pi2_to_pdl_entailment(inst);
    if (evaluate_adqbf(inst) != brute_entails_prop(r.sigma, r.psi, caps).answer) ++failures;
  }

  // the same shape through the QPLInd validity construction (capped domain)
  for (uint64_t seed = 100; pi2_ind < 30; ++seed) {
    AdqbfInstance inst = random_adqbf(seed, AdqbfShape::pi2, 1, 2, 1);
    ReductionOutput r = adqbf_to_qplind_validity(inst);
    if (free_vars(r.psi).size() > 3) continue;
    ++pi2_ind;
    if (evaluate_adqbf(inst) != brute_entails_prop({}, r.psi, caps).answer) ++failures;
  }

  // Sigma1 complements through the QPLInc entailment construction
  for (uint64_t seed = 200; sig1 < 30; ++seed) {
    AdqbfInstance inst = random_adqbf(seed, AdqbfShape::sigma1, 1, 1, 1);
    ReductionOutput r = adqbf_sigma1_complement_to_qplinc_entailment(inst);
    ++sig1;
    if (evaluate_adqbf(inst) == qplinc_entails(r.sigma, r.psi, caps).answer) ++failures;
  }

  // QPDL to MDL across all three decision kinds
  {
    Rng rng(9300);
    std::vector<VarId> vars = {intern_var("p"), intern_var("q")};
    GenOptions opts;
    opts.size = 5;
    opts.max_quant = 2;
    while (qpdl < 50) {
      Formula f = random_formula(rng, Fragment::QPDL, vars, opts);
      Formula g = random_formula(rng, Fragment::QPDL, vars, opts);
      ++qpdl;
      switch (qpdl % 3) {
        case 0: {
          ReductionOutput r = qpdl_to_mdl(DecisionKind::valid, {}, f, caps);
          bool source = brute_entails_prop({}, f, caps).answer;
          if (emdl_valid(r.psi, caps).answer != source) ++failures;
          break;
        }
        case 1: {
          ReductionOutput r = qpdl_to_mdl(DecisionKind::sat, {}, f, caps);
          bool target = emdl_sat(r.psi, caps).answer;
          // source satisfiability: a non-empty team over the free variables
          bool source = false;
          std::set<VarId> fvset = free_vars(f);
          std::vector<VarId> fv(fvset.begin(), fvset.end());
          uint32_t rows = 1u << fv.size();
          for (uint64_t mask = 1; mask < (1ull << rows) && !source; ++mask) {
            std::vector<uint32_t> rs;
            for (uint32_t x = 0; x < rows; ++x)
              if ((mask >> x) & 1) rs.push_back(x);
            source = check_prop(PropTeam::of_rows(fv, rs), f, caps.check);
          }
          if (target != source) ++failures;
          break;
        }
        default: {
          ReductionOutput r = qpdl_to_mdl(DecisionKind::entail, {g}, f, caps);
          bool source = brute_entails_prop({g}, f, caps).answer;
          if (emdl_entails(r.sigma, r.psi, caps).answer != source) ++failures;
          break;
        }
      }
    }
  }

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "pi2->PDL %d, pi2->QPLInd %d, sigma1->QPLInc %d, QPDL->MDL %d instances; "
                "%ld transfer failures",
                pi2_pdl, pi2_ind, sig1, qpdl, failures);
  return {failures == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 7: QPLInc validity equals validity over all singleton teams.

Outcome criterion7() {
  Rng rng(9400);
  std::vector<VarId> vars = {intern_var("p"), intern_var("q"), intern_var("r")};
  GenOptions opts;
  opts.size = 7;
  opts.max_quant = 1;
  Caps caps;
  long disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, Fragment::QPLInc, vars, opts);
    std::set<VarId> fvset = free_vars(f);
    std::vector<VarId> fv(fvset.begin(), fvset.end());
    bool singletons = true;
    for (uint32_t r = 0; r < (1u << fv.size()); ++r)
      singletons = singletons && check_prop(PropTeam::of_rows(fv, {r}), f, caps.check);
    if (qplinc_valid(f, caps).answer != singletons) ++disagreements;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "200 formulas, %ld disagreements", disagreements);
  return {disagreements == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 8: the Galliani translation is team-equivalent to the inclusion atom.

Outcome criterion8() {
  long disagreements = 0;
  long cases = 0;
  VarId p = intern_var("p"), q = intern_var("q"), r = intern_var("r");
  {
    Formula inc = Formula::incl({p}, {q});
    Formula tr = inclusion_to_independence({p}, {q});
    for_all_teams({p, q}, [&](const PropTeam& x) {
      ++cases;
      if (check_prop(x, inc) != check_prop(x, tr)) ++disagreements;
    });
  }
  {
    Rng rng(9500);
    std::vector<std::pair<std::vector<VarId>, std::vector<VarId>>> tuples = {
        {{p, q}, {q, r}}, {{p, r}, {q, q}}, {{r, q}, {p, q}}};
    for (auto& [l, rr] : tuples) {
      Formula inc = Formula::incl(l, rr);
      Formula tr = inclusion_to_independence(l, rr);
      for (int i = 0; i < 7; ++i) {
        PropTeam x = random_team(rng, {p, q, r}, 3);
        ++cases;
        if (check_prop(x, inc) != check_prop(x, tr)) ++disagreements;
      }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%ld teams (16 exhaustive + arity-2 spot checks), %ld disagreements",
                cases, disagreements);
  return {disagreements == 0, buf};
}

// ---------------------------------------------------------------------------
// Criterion 9: the tree encoding realizes every valuation in the n-step team.

Outcome criterion9() {
  long failures = 0;
  long satisfying = 0;
  // n = 1 on the 3-world complete binary frame, n = 2 on the 7-world frame
  for (int n = 1; n <= 2; ++n) {
    std::vector<VarId> p;
    for (int i = 0; i < n; ++i) p.push_back(intern_var(i == 0 ? "p" : "q"));
    Formula tree = tree_formula({}, p, n);
    int worlds = n == 1 ? 3 : 7;
    KripkeModel frame;
    frame.world_count = worlds;
    frame.succ.assign(worlds, 0);
    frame.add_edge(0, 1);
    frame.add_edge(0, 2);
    if (n == 2) {
      frame.add_edge(1, 3);
      frame.add_edge(1, 4);
      frame.add_edge(2, 5);
      frame.add_edge(2, 6);
    }
    uint64_t vtotal = 1ull << (worlds * n);
    for (uint64_t vb = 0; vb < vtotal; ++vb) {
      for (int i = 0; i < n; ++i)
        frame.val[p[i]] = (vb >> (i * worlds)) & ((1ull << worlds) - 1);
      if (!check_modal(frame, 0b1, tree)) continue;
      ++satisfying;
      TeamMask level = 0b1;
      for (int i = 0; i < n; ++i) level = successors(frame, level);
      std::set<uint32_t> seen;
      for (int w = 0; w < worlds; ++w)
        if ((level >> w) & 1) {
          uint32_t val = 0;
          for (int i = 0; i < n; ++i) val |= ((frame.val[p[i]] >> w) & 1) << i;
          seen.insert(val);
        }
      if (seen.size() != (1u << n)) ++failures;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "exhaustive binary-tree valuations (3 and 7 worlds), %ld satisfying, %ld failures",
                satisfying, failures);
  return {failures == 0 && satisfying > 0, buf};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Entry> criteria = {
      {"1 semantic law suites (flatness, closure, locality)", criterion1},
      {"2 witness-representation equivalence", criterion2},
      {"3 tableau vs exhaustive relational-model search", criterion3},
      {"4 entailment oracle agreement + idisj split law", criterion4},
      {"5 MaxSub against enumerated maximal subteams", criterion5},
      {"6 reduction soundness (ADQBF, QPDL->MDL)", criterion6},
      {"7 QPLInc validity via singleton teams", criterion7},
      {"8 Galliani inclusion-to-independence translation", criterion8},
      {"9 tree encoding realizes the assignment tree", criterion9},
  };
  int failed = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] criterion %s: %s (%lld ms)\n", o.pass ? "PASS" : "FAIL", c.name,
                o.details.c_str(), static_cast<long long>(ms));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  if (failed) std::printf("%d criterion(s) failed\n", failed);
  return failed ? 1 : 0;
}
