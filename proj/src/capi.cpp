#include "teamlogic/teamlogic.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <memory>

#include "teamlogic/adqbf.hpp"
#include "teamlogic/deciders.hpp"
#include "teamlogic/generators.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/reductions.hpp"
#include "teamlogic/teamcheck.hpp"

using nlohmann::json;
using namespace teamlogic;

struct tl_formula {
  Formula f;
};
struct tl_team {
  PropTeam t;
};
struct tl_kripke {
  KripkeModel m;
  TeamMask team;
};
struct tl_adqbf {
  AdqbfInstance inst;
};

namespace {

thread_local std::string g_last_error;

tl_status set_error(const std::exception& e) {
  g_last_error = e.what();
  if (auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case ErrorCode::parse: return TL_ERR_PARSE;
      case ErrorCode::fragment: return TL_ERR_FRAGMENT;
      case ErrorCode::resource: return TL_ERR_RESOURCE;
      case ErrorCode::invalid: return TL_ERR_INVALID;
      case ErrorCode::io: return TL_ERR_IO;
    }
  }
  return TL_ERR_INVALID;
}

template <typename Fn>
tl_status guarded(Fn&& fn) {
  try {
    fn();
    return TL_OK;
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json team_json(const PropTeam& t) { return json::parse(team_to_json(t)); }

json witness_json(const Verdict& v) {
  json w = json::object();
  if (v.team_witness) w["team"] = team_json(*v.team_witness);
  if (v.modal_witness)
    w["kripke"] = json::parse(kripke_to_json(v.modal_witness->model, &v.modal_witness->team));
  for (auto& [k, s] : v.info) w[k] = s;
  return w;
}

json counters_json(const DecideCounters& c) {
  return json{{"witness_tuples", c.witness_tuples},
              {"teams", c.teams},
              {"models", c.models},
              {"tableau_calls", c.tableau_calls},
              {"tableau_depth", c.tableau_depth}};
}

struct DecideOptions {
  bool brute = false;
  int bound = 0;
  int jobs = 1;
  Caps caps;
};

DecideOptions parse_opts(const char* opts_json) {
  DecideOptions o;
  if (!opts_json || !*opts_json) return o;
  json j = json::parse(opts_json);
  if (j.contains("oracle")) o.brute = j["oracle"] == "brute";
  if (j.contains("bound")) o.bound = j["bound"].get<int>();
  if (j.contains("jobs")) o.jobs = j["jobs"].get<int>();
  if (j.contains("caps")) {
    json c = j["caps"];
    if (c.contains("max_joint_vars")) o.caps.max_joint_vars = c["max_joint_vars"].get<int>();
    if (c.contains("max_worlds")) o.caps.max_worlds = c["max_worlds"].get<int>();
    if (c.contains("max_dep_arity")) o.caps.max_dep_arity = c["max_dep_arity"].get<int>();
    if (c.contains("max_witness_tuples"))
      o.caps.max_witness_tuples = c["max_witness_tuples"].get<uint64_t>();
  }
  return o;
}

// Joins per-formula fragments into the decider family; throws when mixed
// fragments have no shared decider.
enum class Family { emdl, mldisj, qpl_dep, qplind, qplinc, mlind, mlinc };

// Satisfiability by a non-empty team over the free variables; complete for
// the propositional families by locality.
Verdict prop_team_sat(const Formula& f, const Caps& caps) {
  Verdict r;
  std::set<VarId> vs = free_vars(f);
  std::vector<VarId> vars(vs.begin(), vs.end());
  std::sort(vars.begin(), vars.end(),
            [](VarId a, VarId b) { return var_name(a) < var_name(b); });
  if (static_cast<int>(vars.size()) > caps.max_joint_vars)
    throw ResourceError("free variables exceed the configured cap");
  uint32_t rows = 1u << vars.size();
  r.answer = false;
  for (uint64_t mask = 1; mask < (1ull << rows); ++mask) {
    ++r.counters.teams;
    std::vector<uint32_t> rs;
    for (uint32_t x = 0; x < rows; ++x)
      if ((mask >> x) & 1) rs.push_back(x);
    PropTeam x = PropTeam::of_rows(vars, rs);
    if (check_prop(x, f, caps.check)) {
      r.answer = true;
      r.team_witness = std::move(x);
      break;
    }
  }
  return r;
}

// Bounded countermodel search for the fragments with no complete decider.
Verdict bounded_modal_refute(const std::vector<Formula>& premises, const Formula& conclusion,
                             int bound, const Caps& caps) {
  Verdict v;
  auto counter = [&](const KripkeModel& m, TeamMask t) {
    for (const auto& p : premises)
      if (!check_modal(m, t, p, caps.check)) return false;
    return !check_modal(m, t, conclusion, caps.check);
  };
  std::set<VarId> vset = free_vars(conclusion);
  for (const auto& f : premises) {
    auto fv = free_vars(f);
    vset.insert(fv.begin(), fv.end());
  }
  std::vector<VarId> vars(vset.begin(), vset.end());
  std::sort(vars.begin(), vars.end(),
            [](VarId a, VarId b) { return var_name(a) < var_name(b); });
  bool found = false;
  ModalWitness fw;
  for (int w = 1; w <= bound && !found; ++w) {
    if (w * static_cast<int>(vars.size()) > 24 || w * w > 36)
      throw ResourceError("bounded search space too large");
    uint64_t redges = 1ull << (w * w), rvals = 1ull << (w * vars.size());
    KripkeModel m;
    m.world_count = w;
    for (uint64_t rb = 0; rb < redges && !found; ++rb) {
      m.succ.assign(w, 0);
      for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b)
          if ((rb >> (a * w + b)) & 1) m.add_edge(a, b);
      for (uint64_t vb = 0; vb < rvals && !found; ++vb) {
        m.val.clear();
        for (size_t i = 0; i < vars.size(); ++i)
          m.val[vars[i]] = (vb >> (i * w)) & ((1ull << w) - 1);
        ++v.counters.models;
        for (TeamMask t = 1; t <= m.all_worlds() && !found; ++t)
          if (counter(m, t)) {
            found = true;
            fw = ModalWitness{m, t};
          }
      }
    }
  }
  v.answer = !found;
  if (found) v.modal_witness = fw;
  return v;
}

Family detect_family(const std::vector<Formula>& fs) {
  uint16_t all = 0;
  for (const auto& f : fs) all |= f.feats();
  if (all & (kFeatCNeg | kFeatRel)) throw FragmentError("no decider for RML-level inputs");
  bool modal = all & kFeatModal;
  bool quant = all & kFeatQuant;
  if (modal && quant) throw FragmentError("modalities mixed with propositional quantifiers");
  bool dep = all & (kFeatDepSimple | kFeatDepExt);
  bool idj = all & kFeatIDisj;
  bool ind = all & kFeatIndep;
  bool inc = all & kFeatIncl;
  if (idj && (dep || ind || inc))
    throw FragmentError("intuitionistic disjunction mixed with dependency atoms");
  if ((dep && ind) || (dep && inc) || (ind && inc))
    throw FragmentError("mixed dependency atoms lie outside every decidable family");
  if (idj) {
    if (quant) throw FragmentError("no decider for quantified idisj formulas");
    return Family::mldisj;
  }
  if (ind) return modal ? Family::mlind : Family::qplind;
  if (inc) return modal ? Family::mlinc : Family::qplinc;
  if (quant) return Family::qpl_dep;
  return Family::emdl;  // PL/ML/PDL/MDL/EMDL all ride the witness pipeline
}

json run_decide(const std::string& mode, const std::vector<Formula>& premises,
                const Formula& conclusion, const std::string& logic, const DecideOptions& o) {
  std::vector<Formula> all = premises;
  all.push_back(conclusion);
  Family fam;
  if (logic.empty()) {
    fam = detect_family(all);
  } else {
    std::map<std::string, Family> names = {
        {"EMDL", Family::emdl},   {"MDL", Family::emdl},     {"PDL", Family::emdl},
        {"ML", Family::emdl},     {"PL", Family::emdl},      {"MLIDisj", Family::mldisj},
        {"QPL", Family::qpl_dep}, {"QPDL", Family::qpl_dep}, {"QPLInd", Family::qplind},
        {"QPLInc", Family::qplinc}, {"PLInd", Family::qplind}, {"PLInc", Family::qplinc},
        {"MLInd", Family::mlind}, {"MLInc", Family::mlinc}};
    auto it = names.find(logic);
    if (it == names.end()) throw InvalidError("unknown logic tag " + logic);
    fam = it->second;
  }

  Verdict v;
  std::string note;
  if (o.brute) {
    if (fam == Family::mlind || fam == Family::mlinc) {
      if (o.bound <= 0)
        throw FragmentError("MLInd/MLInc have no complete decider; give --oracle brute --bound N");
      if (mode == "sat") {
        auto w = brute_sat_modal(conclusion, o.bound, o.caps);
        v.answer = w.has_value();
        if (w) v.modal_witness = w;
        note = "bounded model search up to " + std::to_string(o.bound) + " worlds";
      } else {
        v = bounded_modal_refute(mode == "valid" ? std::vector<Formula>{} : premises,
                                 conclusion, o.bound, o.caps);
        note = "bounded countermodel search up to " + std::to_string(o.bound) + " worlds";
      }
    } else {
      if (mode == "entail")
        v = brute_entails_prop(premises, conclusion, o.caps);
      else if (mode == "valid")
        v = brute_entails_prop({}, conclusion, o.caps);
      else
        v = prop_team_sat(conclusion, o.caps);
      note = "exact brute-force oracle";
    }
  } else {
    switch (fam) {
      case Family::emdl:
        if (mode == "sat")
          v = emdl_sat(conclusion, o.caps);
        else if (mode == "valid")
          v = emdl_valid(conclusion, o.caps);
        else
          v = emdl_entails(premises, conclusion, o.caps);
        break;
      case Family::mldisj:
        if (mode == "sat")
          v = mldisj_sat(conclusion, o.caps);
        else if (mode == "valid")
          v = mldisj_valid(conclusion, o.caps);
        else
          v = mldisj_entails(premises, conclusion, o.caps);
        break;
      case Family::qpl_dep: {
        // QPDL rides the quantifier-to-modality reduction into MDL.
        if (mode == "sat") {
          ReductionOutput r = qpdl_to_mdl(DecisionKind::sat, {}, conclusion, o.caps);
          v = emdl_sat(r.psi, o.caps);
        } else if (mode == "valid") {
          ReductionOutput r = qpdl_to_mdl(DecisionKind::valid, {}, conclusion, o.caps);
          v = emdl_valid(r.psi, o.caps);
        } else {
          ReductionOutput r = qpdl_to_mdl(DecisionKind::entail, premises, conclusion, o.caps);
          v = emdl_entails(r.sigma, r.psi, o.caps);
        }
        note = "via the QPDL-to-MDL tree encoding";
        break;
      }
      case Family::qplind:
        if (mode == "sat") {
          v = prop_team_sat(conclusion, o.caps);
          note = "team search over the free variables (complete by locality)";
          break;
        }
        if (mode == "valid")
          v = qplind_entails({}, conclusion, o.caps);
        else
          v = qplind_entails(premises, conclusion, o.caps);
        break;
      case Family::qplinc:
        if (mode == "sat") {
          std::vector<VarId> fv;
          {
            std::set<VarId> vs = free_vars(conclusion);
            fv.assign(vs.begin(), vs.end());
          }
          Formula closed = conclusion;
          for (auto it = fv.rbegin(); it != fv.rend(); ++it)
            closed = Formula::exists(*it, closed);
          v = qplinc_valid(closed, o.caps);
          note = "sat(phi) iff valid(exists-closure of phi)";
        } else if (mode == "valid")
          v = qplinc_valid(conclusion, o.caps);
        else
          v = qplinc_entails(premises, conclusion, o.caps);
        break;
      case Family::mlind:
      case Family::mlinc:
        throw FragmentError(
            "MLInd/MLInc have no complete decider; use --oracle brute --bound N for a bounded check");
    }
  }

  json rep;
  rep["mode"] = mode;
  rep["verdict"] = v.answer;
  rep["witness"] = witness_json(v);
  rep["counters"] = counters_json(v.counters);
  if (!note.empty()) rep["note"] = note;
  return rep;
}

}  // namespace

extern "C" {

const char* tl_version(void) { return "teamlogic 0.1.0"; }

const char* tl_last_error(void) { return g_last_error.c_str(); }

void tl_string_free(char* s) { std::free(s); }

tl_status tl_formula_parse(const char* text, tl_formula** out) {
  return guarded([&] {
    if (!text || !out) throw InvalidError("null argument");
    auto f = std::make_unique<tl_formula>(tl_formula{parse_formula(text)});
    *out = f.release();
  });
}

void tl_formula_free(tl_formula* f) { delete f; }

tl_status tl_formula_render(const tl_formula* f, char** out) {
  return guarded([&] {
    if (!f || !out) throw InvalidError("null argument");
    *out = dup_string(render(f->f));
  });
}

tl_status tl_formula_fragment(const tl_formula* f, char** out) {
  return guarded([&] {
    if (!f || !out) throw InvalidError("null argument");
    *out = dup_string(fragment_name(classify(f->f)));
  });
}

tl_status tl_formula_free_vars(const tl_formula* f, char** out_json) {
  return guarded([&] {
    if (!f || !out_json) throw InvalidError("null argument");
    json arr = json::array();
    for (VarId v : free_vars(f->f)) arr.push_back(var_name(v));
    std::sort(arr.begin(), arr.end());
    *out_json = dup_string(arr.dump());
  });
}

tl_status tl_team_parse(const char* text, tl_team** out) {
  return guarded([&] {
    if (!text || !out) throw InvalidError("null argument");
    auto t = std::make_unique<tl_team>(tl_team{parse_team(text)});
    *out = t.release();
  });
}

void tl_team_free(tl_team* t) { delete t; }

tl_status tl_kripke_parse(const char* text, tl_kripke** out) {
  return guarded([&] {
    if (!text || !out) throw InvalidError("null argument");
    TeamMask team = 0;
    KripkeModel m = parse_kripke(text, &team);
    auto k = std::make_unique<tl_kripke>(tl_kripke{std::move(m), team});
    *out = k.release();
  });
}

void tl_kripke_free(tl_kripke* m) { delete m; }

tl_status tl_check_team(const tl_formula* f, const tl_team* t, int* verdict) {
  return guarded([&] {
    if (!f || !t || !verdict) throw InvalidError("null argument");
    *verdict = check_prop(t->t, f->f) ? 1 : 0;
  });
}

tl_status tl_check_kripke(const tl_formula* f, const tl_kripke* m, int* verdict) {
  return guarded([&] {
    if (!f || !m || !verdict) throw InvalidError("null argument");
    if (is_rml(f->f) && (f->f.feats() & (kFeatCNeg | kFeatRel))) {
      // Pointed check at every team world for RML inputs.
      bool ok = true;
      for (int w = 0; w < m->m.world_count; ++w)
        if ((m->team >> w) & 1) ok = ok && check_rml_pointed(m->m, w, f->f);
      *verdict = ok ? 1 : 0;
      return;
    }
    *verdict = check_modal(m->m, m->team, f->f) ? 1 : 0;
  });
}

tl_status tl_decide(const char* mode, const char* const* premises, size_t premise_count,
                    const char* conclusion, const char* logic, const char* opts_json,
                    char** report_json) {
  return guarded([&] {
    if (!mode || !conclusion || !report_json) throw InvalidError("null argument");
    std::string m = mode;
    if (m != "sat" && m != "valid" && m != "entail")
      throw InvalidError("mode must be sat, valid, or entail");
    if (m != "entail" && premise_count > 0)
      throw InvalidError("premises are only meaningful for entailment");
    std::vector<Formula> prem;
    for (size_t i = 0; i < premise_count; ++i) prem.push_back(parse_formula(premises[i]));
    Formula concl = parse_formula(conclusion);
    DecideOptions o = parse_opts(opts_json);
    auto start = std::chrono::steady_clock::now();
    json rep = run_decide(m, prem, concl, logic ? logic : "", o);
    auto end = std::chrono::steady_clock::now();
    rep["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    *report_json = dup_string(rep.dump());
  });
}

tl_status tl_reduce(const char* name, const char* input, char** out_json) {
  return guarded([&] {
    if (!name || !input || !out_json) throw InvalidError("null argument");
    std::string n = name;
    json out;
    auto emit = [&](const ReductionOutput& r) {
      out["sigma"] = json::array();
      for (const auto& s : r.sigma) out["sigma"].push_back(render(s));
      out["psi"] = render(r.psi);
      out["varmap"] = r.varmap;
    };
    if (n == "prenex") {
      Formula f = parse_formula(input);
      out["psi"] = render(prenex(f, true));
      out["sigma"] = json::array();
      out["varmap"] = json::object();
    } else if (n == "qpdl-to-mdl") {
      json j = json::parse(input);
      std::string kind = j.at("kind").get<std::string>();
      std::vector<Formula> prem;
      if (j.contains("premises"))
        for (const auto& p : j["premises"]) prem.push_back(parse_formula(p.get<std::string>()));
      Formula concl = parse_formula(j.at("conclusion").get<std::string>());
      DecisionKind k = kind == "sat"     ? DecisionKind::sat
                       : kind == "valid" ? DecisionKind::valid
                                         : DecisionKind::entail;
      emit(qpdl_to_mdl(k, prem, concl));
    } else if (n == "pi2-to-pdl") {
      emit(adqbf_pi2_to_pdl_entailment(adqbf_from_json(input)));
    } else if (n == "pi2-to-qplind") {
      emit(adqbf_to_qplind_validity(adqbf_from_json(input)));
    } else if (n == "sigma1-to-qplinc") {
      emit(adqbf_sigma1_complement_to_qplinc_entailment(adqbf_from_json(input)));
    } else if (n == "inc-to-ind") {
      Formula f = parse_formula(input);
      if (f.kind() != Kind::Incl) throw InvalidError("inc-to-ind expects an inclusion atom");
      out["psi"] = render(inclusion_to_independence(f.tuple_left(), f.tuple_right()));
      out["sigma"] = json::array();
      out["varmap"] = json::object();
    } else {
      throw InvalidError("unknown reduction " + n);
    }
    *out_json = dup_string(out.dump());
  });
}

tl_status tl_formula_generate(const char* fragment, unsigned long long seed, int size,
                              int var_count, char** out_text) {
  return guarded([&] {
    if (!fragment || !out_text) throw InvalidError("null argument");
    if (var_count < 1 || var_count > 6) throw InvalidError("var_count must be in 1..6");
    Fragment frag = Fragment::PL;
    bool found = false;
    for (int i = 0; i <= static_cast<int>(Fragment::RML); ++i)
      if (std::string(fragment_name(static_cast<Fragment>(i))) == fragment) {
        frag = static_cast<Fragment>(i);
        found = true;
      }
    if (!found) throw InvalidError("unknown fragment tag " + std::string(fragment));
    std::vector<VarId> vars;
    for (int i = 0; i < var_count; ++i)
      vars.push_back(intern_var(std::string(1, static_cast<char>('p' + i))));
    Rng rng(seed);
    GenOptions opts;
    opts.size = size;
    *out_text = dup_string(render(random_formula(rng, frag, vars, opts)));
  });
}

tl_status tl_adqbf_parse(const char* text, tl_adqbf** out) {
  return guarded([&] {
    if (!text || !out) throw InvalidError("null argument");
    auto a = std::make_unique<tl_adqbf>(tl_adqbf{adqbf_from_json(text)});
    *out = a.release();
  });
}

void tl_adqbf_free(tl_adqbf* a) { delete a; }

tl_status tl_adqbf_eval(const tl_adqbf* a, int* verdict) {
  return guarded([&] {
    if (!a || !verdict) throw InvalidError("null argument");
    *verdict = evaluate_adqbf(a->inst) ? 1 : 0;
  });
}

tl_status tl_adqbf_generate(const char* shape, unsigned long long seed, int n, int fn_count,
                            int max_arity, char** out_json) {
  return guarded([&] {
    if (!shape || !out_json) throw InvalidError("null argument");
    std::string s = shape;
    AdqbfShape sh;
    if (s == "sigma1")
      sh = AdqbfShape::sigma1;
    else if (s == "pi2")
      sh = AdqbfShape::pi2;
    else
      throw InvalidError("shape must be sigma1 or pi2");
    *out_json = dup_string(adqbf_to_json(random_adqbf(seed, sh, n, fn_count, max_arity)));
  });
}

}  // extern "C"
