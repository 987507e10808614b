#include "teamlogic/generators.hpp"

namespace teamlogic {

namespace {

struct GenState {
  Rng& rng;
  const std::vector<VarId>& vars;
  const GenOptions& opts;
  int quant_left;

  VarId var() { return vars[rng.pick(0, static_cast<int>(vars.size()) - 1)]; }

  std::vector<VarId> tuple(int max_len) {
    int len = rng.pick(1, max_len);
    std::vector<VarId> out;
    for (int i = 0; i < len; ++i) out.push_back(var());
    return out;
  }
};

Formula gen(GenState& st, Fragment frag, int budget);

Formula gen_literal(GenState& st) {
  VarId v = st.var();
  return st.rng.coin() ? Formula::atom(v) : Formula::neg_atom(v);
}

Formula gen_special(GenState& st, Fragment frag, int budget) {
  switch (frag) {
    case Fragment::MDL:
    case Fragment::PDL:
    case Fragment::QPDL: {
      int arity = st.rng.pick(0, st.opts.max_dep_arity);
      std::vector<Formula> args;
      for (int i = 0; i < arity; ++i) args.push_back(Formula::atom(st.var()));
      return Formula::dep(std::move(args), Formula::atom(st.var()));
    }
    case Fragment::EMDL: {
      int arity = st.rng.pick(0, st.opts.max_dep_arity);
      std::vector<Formula> args;
      int piece = std::max(1, budget / (arity + 1));
      for (int i = 0; i < arity; ++i) args.push_back(gen(st, Fragment::ML, st.rng.pick(1, piece)));
      return Formula::dep(std::move(args), gen(st, Fragment::ML, st.rng.pick(1, piece)));
    }
    case Fragment::MLInd:
    case Fragment::PLInd:
    case Fragment::QPLInd: {
      std::vector<VarId> cond;
      if (st.rng.coin()) cond = st.tuple(st.opts.max_tuple);
      return Formula::indep(std::move(cond), st.tuple(st.opts.max_tuple),
                            st.tuple(st.opts.max_tuple));
    }
    case Fragment::MLInc:
    case Fragment::PLInc:
    case Fragment::QPLInc: {
      int len = st.rng.pick(1, st.opts.max_tuple);
      std::vector<VarId> l, r;
      for (int i = 0; i < len; ++i) l.push_back(st.var());
      for (int i = 0; i < len; ++i) r.push_back(st.var());
      return Formula::incl(std::move(l), std::move(r));
    }
    default: return gen_literal(st);
  }
}

bool modal_fragment(Fragment f) {
  switch (f) {
    case Fragment::ML:
    case Fragment::MDL:
    case Fragment::EMDL:
    case Fragment::MLIDisj:
    case Fragment::MLInd:
    case Fragment::MLInc: return true;
    default: return false;
  }
}

bool quant_fragment(Fragment f) {
  switch (f) {
    case Fragment::QPL:
    case Fragment::QPDL:
    case Fragment::QPLInd:
    case Fragment::QPLInc: return true;
    default: return false;
  }
}

bool has_special(Fragment f) {
  switch (f) {
    case Fragment::PL:
    case Fragment::ML:
    case Fragment::QPL:
    case Fragment::RML: return false;
    default: return true;
  }
}

Formula gen_rml(GenState& st, int budget) {
  if (budget <= 1) return Formula::atom(st.var());
  switch (st.rng.pick(0, 4)) {
    case 0: return Formula::atom(st.var());
    case 1: return Formula::cneg(gen_rml(st, budget - 1));
    case 2: return Formula::box(gen_rml(st, budget - 1));
    case 3: {
      int left = st.rng.pick(1, budget - 1);
      Formula l = gen_rml(st, left);
      return Formula::land(l, gen_rml(st, budget - 1 - left + 1));
    }
    default: {
      std::string sym = "S_" + std::to_string(st.rng.pick(1, st.opts.rel_count));
      std::vector<Formula> args;
      int piece = std::max(1, (budget - 1) / st.opts.rel_arity);
      for (int i = 0; i < st.opts.rel_arity; ++i) args.push_back(gen_rml(st, st.rng.pick(1, piece)));
      return Formula::rel(std::move(sym), std::move(args));
    }
  }
}

Formula gen(GenState& st, Fragment frag, int budget) {
  if (frag == Fragment::RML) return gen_rml(st, budget);
  if (budget <= 1) {
    if (has_special(frag) && st.rng.pick(0, 3) == 0) return gen_special(st, frag, budget);
    return gen_literal(st);
  }
  int roll = st.rng.pick(0, 9);
  if (quant_fragment(frag) && st.quant_left > 0 && roll >= 7) {
    --st.quant_left;
    VarId v = st.var();
    Formula body = gen(st, frag, budget - 2);
    return st.rng.coin() ? Formula::exists(v, body) : Formula::forall(v, body);
  }
  if (modal_fragment(frag) && roll >= 7) {
    Formula body = gen(st, frag, budget - 1);
    return st.rng.coin() ? Formula::box(body) : Formula::diamond(body);
  }
  if (frag == Fragment::MLIDisj && roll == 6) {
    int left = st.rng.pick(1, budget - 1);
    Formula l = gen(st, frag, left);
    return Formula::idisj(l, gen(st, frag, std::max(1, budget - 1 - left)));
  }
  if (has_special(frag) && roll <= 1) return gen_special(st, frag, budget);
  if (roll <= 4) {
    int left = st.rng.pick(1, budget - 1);
    Formula l = gen(st, frag, left);
    return Formula::land(l, gen(st, frag, std::max(1, budget - 1 - left)));
  }
  if (roll == 5 || roll == 6) {
    int left = st.rng.pick(1, budget - 1);
    Formula l = gen(st, frag, left);
    return Formula::lor(l, gen(st, frag, std::max(1, budget - 1 - left)));
  }
  return gen_literal(st);
}

}  // namespace

Formula random_formula(Rng& rng, Fragment frag, const std::vector<VarId>& vars,
                       const GenOptions& opts) {
  if (vars.empty()) throw InvalidError("generator needs a variable pool");
  GenState st{rng, vars, opts, opts.max_quant};
  return gen(st, frag, std::max(1, opts.size));
}

PropTeam random_team(Rng& rng, const std::vector<VarId>& vars, int max_rows) {
  uint32_t space = 1u << vars.size();
  int rows = rng.pick(0, max_rows);
  std::vector<uint32_t> out;
  for (int i = 0; i < rows; ++i) out.push_back(static_cast<uint32_t>(rng.eng() % space));
  return PropTeam::of_rows(vars, std::move(out));
}

KripkeModel random_kripke(Rng& rng, int worlds, const std::vector<VarId>& vars) {
  KripkeModel m;
  m.world_count = worlds;
  m.succ.assign(worlds, 0);
  for (int a = 0; a < worlds; ++a)
    for (int b = 0; b < worlds; ++b)
      if (rng.pick(0, 2) == 0) m.add_edge(a, b);
  for (VarId v : vars) {
    uint64_t mask = 0;
    for (int w = 0; w < worlds; ++w)
      if (rng.coin()) mask |= 1ull << w;
    m.val[v] = mask;
  }
  return m;
}

}  // namespace teamlogic
