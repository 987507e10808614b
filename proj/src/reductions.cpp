#include "teamlogic/reductions.hpp"

#include <functional>

namespace teamlogic {

namespace {

Formula box_n(Formula f, int n) {
  for (int i = 0; i < n; ++i) f = Formula::box(std::move(f));
  return f;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top_formula();
  Formula out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = Formula::land(out, fs[i]);
  return out;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom_formula();
  Formula out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = Formula::lor(out, fs[i]);
  return out;
}

}  // namespace

Formula store_formula(VarId q, int n) {
  if (n < 0) throw InvalidError("store depth must be non-negative");
  return Formula::lor(Formula::land(Formula::atom(q), box_n(Formula::atom(q), n)),
                      Formula::land(Formula::neg_atom(q), box_n(Formula::neg_atom(q), n)));
}

Formula branch_formula(VarId p, int n) {
  return Formula::land(
      Formula::land(Formula::diamond(Formula::atom(p)), Formula::diamond(Formula::neg_atom(p))),
      Formula::box(store_formula(p, n)));
}

Formula tree_formula(const std::set<VarId>& v, const std::vector<VarId>& p, int n) {
  if (n < 0 || n > static_cast<int>(p.size()))
    throw InvalidError("tree depth must fit the prefix variable list");
  for (VarId q : v)
    for (int i = 0; i < n; ++i)
      if (p[i] == q) throw InvalidError("prefix variables must be disjoint from V");
  std::vector<Formula> parts;
  for (VarId q : v) parts.push_back(store_formula(q, n));
  for (int i = 0; i < n; ++i) parts.push_back(box_n(branch_formula(p[i], n - (i + 1)), i));
  return conj_all(parts);
}

// ---------------------------------------------------------------------------
// Prenex form.

namespace {

// Makes every bound variable distinct from each other and from free vars.
Formula rename_apart(const Formula& f, std::set<VarId>& used) {
  switch (f.kind()) {
    case Kind::Exists:
    case Kind::Forall: {
      VarId v = f.var();
      Formula body = f.body();
      if (used.count(v)) {
        VarId fresh = fresh_var(var_name(v), used);
        used.insert(fresh);
        body = rename_free(body, {{v, fresh}});
        v = fresh;
      } else {
        used.insert(v);
      }
      Formula b = rename_apart(body, used);
      return f.kind() == Kind::Exists ? Formula::exists(v, b) : Formula::forall(v, b);
    }
    case Kind::And: {
      Formula l = rename_apart(f.left(), used);
      return Formula::land(l, rename_apart(f.right(), used));
    }
    case Kind::Or: {
      Formula l = rename_apart(f.left(), used);
      return Formula::lor(l, rename_apart(f.right(), used));
    }
    case Kind::IDisj: {
      Formula l = rename_apart(f.left(), used);
      return Formula::idisj(l, rename_apart(f.right(), used));
    }
    default: return f;
  }
}

struct Prenexed {
  std::vector<std::pair<Kind, VarId>> prefix;
  Formula matrix;

  Formula rebuild() const {
    Formula out = matrix;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
      out = it->first == Kind::Exists ? Formula::exists(it->second, out)
                                      : Formula::forall(it->second, out);
    return out;
  }
};

struct PrenexDriver {
  bool verify;
  const Caps& caps;

  void verify_step(const Formula& lhs, const Formula& rhs) const {
    if (!verify) return;
    if (free_vars(lhs).size() > 3) return;  // validation domain cap
    Verdict a = brute_entails_prop({lhs}, rhs, caps);
    Verdict b = brute_entails_prop({rhs}, lhs, caps);
    if (!a.answer || !b.answer)
      throw InvalidError("prenex rewrite failed oracle validation");
  }

  Prenexed pull(const Formula& f) {
    switch (f.kind()) {
      case Kind::Exists:
      case Kind::Forall: {
        Prenexed inner = pull(f.body());
        inner.prefix.insert(inner.prefix.begin(), {f.kind(), f.var()});
        return inner;
      }
      case Kind::And:
      case Kind::Or:
      case Kind::IDisj: {
        Prenexed l = pull(f.left());
        Prenexed r = pull(f.right());
        if (f.kind() == Kind::Or) {
          // A universal pulled over a splitting disjunct needs a downward
          // closed scope; otherwise the rewrite is unsound in general.
          auto guard = [&](const Prenexed& side, size_t from) {
            for (size_t i = from; i < side.prefix.size(); ++i)
              if (side.prefix[i].first == Kind::Forall && !is_downward_closed(side.matrix))
                throw InvalidError(
                    "prenex extraction rule inapplicable: universal quantifier over a "
                    "splitting disjunction with a non-downward-closed scope");
          };
          guard(l, 0);
          guard(r, 0);
        }
        Prenexed out;
        out.prefix = l.prefix;
        out.prefix.insert(out.prefix.end(), r.prefix.begin(), r.prefix.end());
        switch (f.kind()) {
          case Kind::And: out.matrix = Formula::land(l.matrix, r.matrix); break;
          case Kind::Or: out.matrix = Formula::lor(l.matrix, r.matrix); break;
          default: out.matrix = Formula::idisj(l.matrix, r.matrix); break;
        }
        Formula stepped = out.rebuild();
        Formula original =
            f.kind() == Kind::And
                ? Formula::land(l.rebuild(), r.rebuild())
                : (f.kind() == Kind::Or ? Formula::lor(l.rebuild(), r.rebuild())
                                        : Formula::idisj(l.rebuild(), r.rebuild()));
        verify_step(original, stepped);
        return out;
      }
      default: return {{}, f};
    }
  }
};

}  // namespace

Formula prenex(const Formula& f, bool verify_rewrites, const Caps& caps) {
  if (!is_prop_family(f)) throw FragmentError("prenex expects a QPL-family formula");
  std::set<VarId> used = free_vars(f);
  Formula apart = rename_apart(f, used);
  PrenexDriver driver{verify_rewrites, caps};
  return driver.pull(apart).rebuild();
}

// ---------------------------------------------------------------------------
// QPDL to MDL.

ReductionOutput qpdl_to_mdl(DecisionKind kind, const std::vector<Formula>& premises,
                            const Formula& conclusion, const Caps& caps) {
  std::vector<Formula> inputs = premises;
  inputs.push_back(conclusion);
  std::set<VarId> v;  // shared free variables
  std::set<VarId> avoid;
  for (const auto& f : inputs) {
    if (f.feats() & (kFeatModal | kFeatIDisj | kFeatIndep | kFeatIncl | kFeatDepExt |
                     kFeatCNeg | kFeatRel))
      throw FragmentError("qpdl_to_mdl expects QPDL formulas");
    auto fv = free_vars(f);
    v.insert(fv.begin(), fv.end());
    auto av = all_vars(f);
    avoid.insert(av.begin(), av.end());
  }

  struct Split {
    std::vector<std::pair<Kind, VarId>> prefix;
    Formula matrix;
  };
  std::vector<Split> splits;
  size_t m = 0;
  for (const auto& f : inputs) {
    Formula pn = prenex(f, false, caps);
    Split s;
    Formula cur = pn;
    while (cur.kind() == Kind::Exists || cur.kind() == Kind::Forall) {
      s.prefix.push_back({cur.kind(), cur.var()});
      cur = cur.body();
    }
    s.matrix = cur;
    m = std::max(m, s.prefix.size());
    splits.push_back(std::move(s));
  }

  // Shared prefix variables p#1..p#m, disjoint from every input variable.
  std::vector<VarId> shared;
  for (size_t i = 0; i < m; ++i) {
    VarId pv = fresh_var("p", avoid);
    avoid.insert(pv);
    shared.push_back(pv);
  }

  ReductionOutput out;
  std::vector<Formula> translated;
  for (auto& s : splits) {
    std::vector<std::pair<VarId, VarId>> map;
    for (size_t i = 0; i < s.prefix.size(); ++i) map.push_back({s.prefix[i].second, shared[i]});
    Formula matrix = map.empty() ? s.matrix : rename_free(s.matrix, map);
    // Pad the prefix with vacuous universals up to the shared length, then
    // replace quantifiers with modalities outside-in.
    Formula body = matrix;
    for (size_t i = m; i > s.prefix.size(); --i) body = Formula::box(body);
    for (size_t i = s.prefix.size(); i > 0; --i)
      body = s.prefix[i - 1].first == Kind::Exists ? Formula::diamond(body)
                                                   : Formula::box(body);
    translated.push_back(body);
  }

  Formula tree = tree_formula(v, shared, static_cast<int>(m));
  Formula phi1 = translated.back();
  switch (kind) {
    case DecisionKind::entail:
      for (size_t i = 0; i + 1 < translated.size(); ++i) out.sigma.push_back(translated[i]);
      out.sigma.push_back(tree);
      out.psi = phi1;
      break;
    case DecisionKind::valid:
      out.psi = Formula::lor(tree, Formula::land(tree, phi1));
      break;
    case DecisionKind::sat:
      out.psi = Formula::land(tree, phi1);
      break;
  }
  for (size_t i = 0; i < shared.size(); ++i)
    out.varmap["p" + std::to_string(i + 1)] = var_name(shared[i]);
  out.varmap["block_length"] = std::to_string(m);
  return out;
}

// ---------------------------------------------------------------------------
// ADQBF constructions.

namespace {

struct Pi2View {
  std::vector<int> universal;    // symbol indices of the universal block
  std::vector<int> existential;  // symbol indices of the existential block
};

Pi2View pi2_view(const AdqbfInstance& inst) {
  inst.validate();
  if (inst.shape != AdqbfShape::pi2) throw InvalidError("a pi2-shaped instance is required");
  Pi2View v;
  v.universal = inst.blocks[0].fns;
  if (inst.blocks.size() > 1) v.existential = inst.blocks[1].fns;
  return v;
}

std::set<VarId> instance_vars(const AdqbfInstance& inst) {
  std::set<VarId> s(inst.pvars.begin(), inst.pvars.end());
  return s;
}

// One fresh q variable per function symbol, in symbol order.
std::vector<VarId> fresh_app_vars(const AdqbfInstance& inst, std::set<VarId>& avoid,
                                  ReductionOutput& out) {
  std::vector<VarId> qs;
  for (const auto& s : inst.symbols) {
    VarId q = fresh_var("q", avoid);
    avoid.insert(q);
    qs.push_back(q);
    out.varmap[s.name] = var_name(q);
  }
  return qs;
}

}  // namespace

ReductionOutput adqbf_pi2_to_pdl_entailment(const AdqbfInstance& inst) {
  Pi2View view = pi2_view(inst);
  ReductionOutput out;
  std::set<VarId> avoid = instance_vars(inst);
  std::vector<VarId> qs = fresh_app_vars(inst, avoid, out);

  for (int fi : view.universal) {
    std::vector<Formula> args;
    for (VarId c : inst.symbols[fi].constraint) args.push_back(Formula::atom(c));
    out.sigma.push_back(Formula::dep(std::move(args), Formula::atom(qs[fi])));
  }
  Formula theta = lower_matrix(inst, qs);
  Formula psi = theta;
  for (int fi : view.existential) {
    std::vector<Formula> args;
    for (VarId c : inst.symbols[fi].constraint) args.push_back(Formula::atom(c));
    psi = Formula::lor(psi, Formula::dep(std::move(args), Formula::atom(qs[fi])));
  }
  out.psi = psi;
  return out;
}

Formula inclusion_to_independence(const std::vector<VarId>& left,
                                  const std::vector<VarId>& right,
                                  const std::set<VarId>& avoid_in) {
  if (left.size() != right.size())
    throw InvalidError("inclusion tuples must have equal length");
  size_t k = left.size();
  std::set<VarId> avoid = avoid_in;
  avoid.insert(left.begin(), left.end());
  avoid.insert(right.begin(), right.end());

  VarId v1 = fresh_var("v", avoid);
  avoid.insert(v1);
  VarId v2 = fresh_var("v", avoid);
  avoid.insert(v2);
  std::vector<VarId> rs;
  for (size_t i = 0; i < k; ++i) {
    VarId r = fresh_var("r", avoid);
    avoid.insert(r);
    rs.push_back(r);
  }

  auto eq = [](VarId a, VarId b) {
    return Formula::lor(Formula::land(Formula::atom(a), Formula::atom(b)),
                        Formula::land(Formula::neg_atom(a), Formula::neg_atom(b)));
  };
  auto neq = [](VarId a, VarId b) {
    return Formula::lor(Formula::land(Formula::atom(a), Formula::neg_atom(b)),
                        Formula::land(Formula::neg_atom(a), Formula::atom(b)));
  };
  auto tuple_eq = [&](const std::vector<VarId>& a, const std::vector<VarId>& b) {
    std::vector<Formula> parts;
    for (size_t i = 0; i < a.size(); ++i) parts.push_back(eq(a[i], b[i]));
    return conj_all(parts);
  };
  auto tuple_neq = [&](const std::vector<VarId>& a, const std::vector<VarId>& b) {
    std::vector<Formula> parts;
    for (size_t i = 0; i < a.size(); ++i) parts.push_back(neq(a[i], b[i]));
    return disj_all(parts);
  };

  Formula d1 = Formula::land(tuple_neq(rs, left), tuple_neq(rs, right));
  Formula d2 = Formula::land(neq(v1, v2), tuple_neq(rs, right));
  Formula d3 = Formula::land(Formula::lor(eq(v1, v2), tuple_eq(rs, right)),
                             Formula::indep({}, rs, {v1, v2}));
  Formula body = Formula::lor(Formula::lor(d1, d2), d3);
  for (auto it = rs.rbegin(); it != rs.rend(); ++it) body = Formula::forall(*it, body);
  body = Formula::forall(v2, body);
  body = Formula::forall(v1, body);
  return body;
}

namespace {
// dep as ind, inclusion atoms through the Galliani translation.
Formula to_pure_qplind(const Formula& f, std::set<VarId>& avoid) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
    case Kind::Indep: return f;
    case Kind::Dep: {
      std::vector<VarId> args;
      for (const auto& a : f.dep_args()) {
        if (a.kind() != Kind::Atom)
          throw FragmentError("only simple dependence atoms translate to QPLInd");
        args.push_back(a.var());
      }
      if (f.dep_target().kind() != Kind::Atom)
        throw FragmentError("only simple dependence atoms translate to QPLInd");
      VarId t = f.dep_target().var();
      return Formula::indep(std::move(args), {t}, {t});
    }
    case Kind::Incl: {
      Formula g = inclusion_to_independence(f.tuple_left(), f.tuple_right(), avoid);
      auto vars = all_vars(g);
      avoid.insert(vars.begin(), vars.end());
      return g;
    }
    case Kind::And: {
      Formula l = to_pure_qplind(f.left(), avoid);
      return Formula::land(l, to_pure_qplind(f.right(), avoid));
    }
    case Kind::Or: {
      Formula l = to_pure_qplind(f.left(), avoid);
      return Formula::lor(l, to_pure_qplind(f.right(), avoid));
    }
    case Kind::Exists: return Formula::exists(f.var(), to_pure_qplind(f.body(), avoid));
    case Kind::Forall: return Formula::forall(f.var(), to_pure_qplind(f.body(), avoid));
    default: throw FragmentError("node has no QPLInd translation");
  }
}
}  // namespace

ReductionOutput adqbf_to_qplind_validity(const AdqbfInstance& inst) {
  Pi2View view = pi2_view(inst);
  ReductionOutput out;
  std::set<VarId> avoid = instance_vars(inst);
  std::vector<VarId> qs = fresh_app_vars(inst, avoid, out);

  Formula theta = lower_matrix(inst, qs);
  Formula psi = theta;
  for (int fi : view.existential) {
    std::vector<Formula> args;
    for (VarId c : inst.symbols[fi].constraint) args.push_back(Formula::atom(c));
    psi = Formula::lor(psi, Formula::dep(std::move(args), Formula::atom(qs[fi])));
  }

  // psi_i, built from the innermost purification level outward.
  for (auto it = view.universal.rbegin(); it != view.universal.rend(); ++it) {
    int fi = *it;
    VarId ri = fresh_var("r", avoid);
    avoid.insert(ri);
    VarId rpi = fresh_var("r'", avoid);
    avoid.insert(rpi);
    out.varmap["r_" + inst.symbols[fi].name] = var_name(ri);
    out.varmap["r'_" + inst.symbols[fi].name] = var_name(rpi);

    const auto& ci = inst.symbols[fi].constraint;
    auto atoms = [&](const std::vector<VarId>& vs, VarId extra) {
      std::vector<Formula> a;
      for (VarId v : vs) a.push_back(Formula::atom(v));
      a.push_back(Formula::atom(extra));
      return a;
    };
    Formula dep1 = Formula::dep(atoms(ci, qs[fi]), Formula::atom(ri));
    Formula dep2 = Formula::dep(atoms(ci, ri), Formula::atom(qs[fi]));
    std::vector<VarId> ci_rpi = ci;
    ci_rpi.push_back(rpi);
    std::vector<VarId> ci_ri = ci;
    ci_ri.push_back(ri);
    Formula maximal = Formula::forall(
        rpi, Formula::lor(Formula::neg_atom(rpi),
                          Formula::land(Formula::atom(rpi), Formula::incl(ci_rpi, ci_ri))));
    Formula chain = Formula::lor(Formula::neg_atom(ri), Formula::land(Formula::atom(ri), psi));
    Formula body = Formula::land(Formula::land(Formula::land(dep1, dep2), maximal), chain);
    psi = Formula::exists(ri, body);
  }

  out.psi = to_pure_qplind(psi, avoid);
  return out;
}

ReductionOutput adqbf_sigma1_complement_to_qplinc_entailment(const AdqbfInstance& inst) {
  inst.validate();
  if (inst.shape != AdqbfShape::sigma1) throw InvalidError("a sigma1-shaped instance is required");
  ReductionOutput out;
  std::set<VarId> avoid = instance_vars(inst);
  std::vector<VarId> qs = fresh_app_vars(inst, avoid, out);

  VarId t = fresh_var("t", avoid);
  avoid.insert(t);
  VarId fv = fresh_var("f", avoid);
  avoid.insert(fv);
  out.varmap["t"] = var_name(t);
  out.varmap["f"] = var_name(fv);

  Formula phi1 = Formula::land(Formula::atom(t), Formula::neg_atom(fv));

  std::vector<Formula> phi2_parts;
  const std::vector<VarId>& p = inst.pvars;
  for (size_t i = 0; i < p.size(); ++i) {
    std::vector<VarId> lhs_t(p.begin(), p.begin() + i), lhs_f(p.begin(), p.begin() + i);
    std::vector<VarId> rhs(p.begin(), p.begin() + i);
    lhs_t.push_back(t);
    lhs_f.push_back(fv);
    rhs.push_back(p[i]);
    phi2_parts.push_back(
        Formula::land(Formula::incl(lhs_t, rhs), Formula::incl(lhs_f, rhs)));
  }
  Formula phi2 = conj_all(phi2_parts);

  // theta^bot with primed copies of p and q, inclusion-tied to the originals.
  Formula theta = lower_matrix(inst, qs);
  std::vector<VarId> primed_p, primed_q;
  std::vector<std::pair<VarId, VarId>> renaming;
  for (VarId pv : p) {
    VarId c = fresh_var(var_name(pv) + "'", avoid);
    avoid.insert(c);
    primed_p.push_back(c);
    renaming.push_back({pv, c});
  }
  for (VarId qv : qs) {
    VarId c = fresh_var(var_name(qv) + "'", avoid);
    avoid.insert(c);
    primed_q.push_back(c);
    renaming.push_back({qv, c});
  }
  Formula theta_bot = rename_free(negate_nnf(theta), renaming);
  std::vector<VarId> primed_all = primed_p, orig_all = p;
  primed_all.insert(primed_all.end(), primed_q.begin(), primed_q.end());
  orig_all.insert(orig_all.end(), qs.begin(), qs.end());
  Formula first = Formula::land(theta_bot, Formula::incl(primed_all, orig_all));
  for (auto it = primed_all.rbegin(); it != primed_all.rend(); ++it)
    first = Formula::exists(*it, first);

  Formula psi = first;
  for (size_t fi = 0; fi < inst.symbols.size(); ++fi) {
    const auto& ci = inst.symbols[fi].constraint;
    std::vector<VarId> vi;
    for (size_t j = 0; j < ci.size(); ++j) {
      VarId c = fresh_var("v", avoid);
      avoid.insert(c);
      vi.push_back(c);
    }
    std::vector<VarId> vit = vi, vif = vi, ciq = ci;
    vit.push_back(t);
    vif.push_back(fv);
    ciq.push_back(qs[fi]);
    Formula dis = Formula::land(Formula::incl(vit, ciq), Formula::incl(vif, ciq));
    for (auto it = vi.rbegin(); it != vi.rend(); ++it) dis = Formula::exists(*it, dis);
    psi = Formula::lor(psi, dis);
  }

  out.sigma = {phi1, phi2};
  out.psi = psi;
  return out;
}

}  // namespace teamlogic
