#include "teamlogic/syntax.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace teamlogic {

namespace {

struct Interner {
  std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

Interner& interner() {
  static Interner* in = new Interner();
  return *in;
}

size_t mix(size_t h, size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

VarId intern_var(const std::string& name) {
  if (name.empty()) throw InvalidError("variable name must be non-empty");
  Interner& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  auto it = in.ids.find(name);
  if (it != in.ids.end()) return it->second;
  VarId id = static_cast<VarId>(in.names.size());
  in.names.push_back(name);
  in.ids.emplace(name, id);
  return id;
}

const std::string& var_name(VarId v) {
  Interner& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  return in.names.at(v);
}

VarId fresh_var(const std::string& base, const std::set<VarId>& avoid) {
  for (int k = 1;; ++k) {
    VarId v = intern_var(base + "#" + std::to_string(k));
    if (!avoid.count(v)) return v;
  }
}

struct Formula::Node {
  Kind kind;
  uint16_t feats = 0;
  VarId var = 0;
  std::vector<Formula> children;
  std::vector<VarId> cond, lhs, rhs;
  std::string symbol;
  size_t size = 1;
  size_t hash = 0;
};

namespace {

constexpr uint16_t kFeatDiamondBit = 1 << 11;

uint16_t child_feats(const std::vector<Formula>& cs) {
  uint16_t f = 0;
  for (const auto& c : cs) f |= c.feats();
  return f;
}

size_t child_size(const std::vector<Formula>& cs) {
  size_t s = 0;
  for (const auto& c : cs) s += c.size();
  return s;
}

size_t node_hash(Kind k, VarId v, const std::vector<Formula>& cs,
                 const std::vector<VarId>& a, const std::vector<VarId>& b,
                 const std::vector<VarId>& c, const std::string& sym) {
  size_t h = static_cast<size_t>(k) * 0x100000001b3ull + 17;
  h = mix(h, v);
  for (const auto& ch : cs) h = mix(h, ch.hash());
  for (VarId x : a) h = mix(h, x + 1);
  h = mix(h, 0xabc);
  for (VarId x : b) h = mix(h, x + 1);
  h = mix(h, 0xdef);
  for (VarId x : c) h = mix(h, x + 1);
  for (char ch : sym) h = mix(h, static_cast<unsigned char>(ch));
  return h;
}

constexpr uint16_t kNonRmlFeats =
    kFeatNegAtom | kFeatOr | kFeatIDisj | kFeatDiamondBit | kFeatDepSimple |
    kFeatDepExt | kFeatIndep | kFeatIncl | kFeatQuant;

bool rml_feats(uint16_t f) { return (f & kNonRmlFeats) == 0; }

bool ml_feats(uint16_t f) {
  return (f & (kFeatQuant | kFeatDepSimple | kFeatDepExt | kFeatIDisj | kFeatIndep |
               kFeatIncl | kFeatCNeg | kFeatRel)) == 0;
}

void require_valid(const Formula& f, const char* where) {
  if (!f.valid()) throw InvalidError(std::string("empty formula handle in ") + where);
}

}  // namespace

Kind Formula::kind() const { return node_->kind; }
uint16_t Formula::feats() const { return node_->feats; }
size_t Formula::size() const { return node_->size; }
size_t Formula::hash() const { return node_->hash; }
VarId Formula::var() const { return node_->var; }
const Formula& Formula::child(size_t i) const {
  if (i >= node_->children.size()) throw InvalidError("child index out of range");
  return node_->children[i];
}
size_t Formula::child_count() const { return node_->children.size(); }

std::span<const Formula> Formula::dep_args() const {
  if (kind() != Kind::Dep) throw InvalidError("dep_args on non-dep node");
  return std::span<const Formula>(node_->children.data(), node_->children.size() - 1);
}
const Formula& Formula::dep_target() const {
  if (kind() != Kind::Dep) throw InvalidError("dep_target on non-dep node");
  return node_->children.back();
}
bool Formula::dep_is_simple() const {
  for (const auto& c : node_->children)
    if (c.kind() != Kind::Atom) return false;
  return true;
}

const std::vector<VarId>& Formula::tuple_cond() const { return node_->cond; }
const std::vector<VarId>& Formula::tuple_left() const { return node_->lhs; }
const std::vector<VarId>& Formula::tuple_right() const { return node_->rhs; }
const std::string& Formula::rel_symbol() const { return node_->symbol; }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.kind != b.kind || a.hash != b.hash || a.size != b.size || a.var != b.var ||
      a.symbol != b.symbol || a.cond != b.cond || a.lhs != b.lhs || a.rhs != b.rhs ||
      a.children.size() != b.children.size())
    return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!(a.children[i] == b.children[i])) return false;
  return true;
}

Formula Formula::make(Node n) {
  n.hash = node_hash(n.kind, n.var, n.children, n.cond, n.lhs, n.rhs, n.symbol);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::atom(VarId v) {
  Node n;
  n.kind = Kind::Atom;
  n.var = v;
  n.size = 1;
  return make(std::move(n));
}

Formula Formula::neg_atom(VarId v) {
  Node n;
  n.kind = Kind::NegAtom;
  n.var = v;
  n.feats = kFeatNegAtom;
  n.size = 2;
  return make(std::move(n));
}

Formula Formula::land(Formula a, Formula b) {
  require_valid(a, "and");
  require_valid(b, "and");
  Node n;
  n.kind = Kind::And;
  n.children = {std::move(a), std::move(b)};
  n.feats = child_feats(n.children);
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::lor(Formula a, Formula b) {
  require_valid(a, "or");
  require_valid(b, "or");
  Node n;
  n.kind = Kind::Or;
  n.children = {std::move(a), std::move(b)};
  n.feats = child_feats(n.children) | kFeatOr;
  if (n.feats & (kFeatCNeg | kFeatRel))
    throw FragmentError("splitting disjunction over RML-only operands");
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::idisj(Formula a, Formula b) {
  require_valid(a, "idisj");
  require_valid(b, "idisj");
  Node n;
  n.kind = Kind::IDisj;
  n.children = {std::move(a), std::move(b)};
  n.feats = child_feats(n.children) | kFeatIDisj;
  if (n.feats & (kFeatCNeg | kFeatRel))
    throw FragmentError("intuitionistic disjunction over RML-only operands");
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::box(Formula a) {
  require_valid(a, "box");
  Node n;
  n.kind = Kind::Box;
  n.children = {std::move(a)};
  n.feats = child_feats(n.children) | kFeatModal;
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::diamond(Formula a) {
  require_valid(a, "diamond");
  Node n;
  n.kind = Kind::Diamond;
  n.children = {std::move(a)};
  n.feats = child_feats(n.children) | kFeatModal | kFeatDiamondBit;
  if (n.feats & (kFeatCNeg | kFeatRel)) throw FragmentError("diamond over RML-only operand");
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::dep(std::vector<Formula> args, Formula target) {
  require_valid(target, "dep");
  bool simple = target.kind() == Kind::Atom;
  for (const auto& a : args) {
    require_valid(a, "dep");
    if (a.kind() != Kind::Atom) simple = false;
  }
  for (const auto& a : args)
    if (!ml_feats(a.feats())) throw FragmentError("dep argument outside the ML fragment");
  if (!ml_feats(target.feats())) throw FragmentError("dep target outside the ML fragment");
  Node n;
  n.kind = Kind::Dep;
  n.children = std::move(args);
  n.children.push_back(std::move(target));
  n.feats = child_feats(n.children) | (simple ? kFeatDepSimple : kFeatDepExt);
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::indep(std::vector<VarId> cond, std::vector<VarId> left,
                       std::vector<VarId> right) {
  if (left.empty() || right.empty())
    throw InvalidError("independence atom needs non-empty left/right tuples");
  Node n;
  n.kind = Kind::Indep;
  n.cond = std::move(cond);
  n.lhs = std::move(left);
  n.rhs = std::move(right);
  n.feats = kFeatIndep;
  n.size = 1 + n.cond.size() + n.lhs.size() + n.rhs.size();
  return make(std::move(n));
}

Formula Formula::incl(std::vector<VarId> left, std::vector<VarId> right) {
  if (left.size() != right.size())
    throw InvalidError("inclusion atom tuples must have equal length");
  if (left.empty()) throw InvalidError("inclusion atom tuples must be non-empty");
  Node n;
  n.kind = Kind::Incl;
  n.lhs = std::move(left);
  n.rhs = std::move(right);
  n.feats = kFeatIncl;
  n.size = 1 + n.lhs.size() + n.rhs.size();
  return make(std::move(n));
}

Formula Formula::exists(VarId v, Formula body) {
  require_valid(body, "exists");
  Node n;
  n.kind = Kind::Exists;
  n.var = v;
  n.children = {std::move(body)};
  n.feats = child_feats(n.children) | kFeatQuant;
  if (n.feats & (kFeatCNeg | kFeatRel)) throw FragmentError("quantifier over RML-only operand");
  n.size = 2 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::forall(VarId v, Formula body) {
  require_valid(body, "forall");
  Node n;
  n.kind = Kind::Forall;
  n.var = v;
  n.children = {std::move(body)};
  n.feats = child_feats(n.children) | kFeatQuant;
  if (n.feats & (kFeatCNeg | kFeatRel)) throw FragmentError("quantifier over RML-only operand");
  n.size = 2 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::cneg(Formula a) {
  require_valid(a, "cneg");
  if (!rml_feats(a.feats())) throw FragmentError("contradictory negation outside RML");
  Node n;
  n.kind = Kind::CNeg;
  n.children = {std::move(a)};
  n.feats = child_feats(n.children) | kFeatCNeg;
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula Formula::rel(std::string symbol, std::vector<Formula> args) {
  if (symbol.empty()) throw InvalidError("relation symbol must be non-empty");
  for (const auto& a : args) {
    require_valid(a, "rel");
    if (!rml_feats(a.feats())) throw FragmentError("relational atom argument outside RML");
  }
  Node n;
  n.kind = Kind::Rel;
  n.symbol = std::move(symbol);
  n.children = std::move(args);
  n.feats = child_feats(n.children) | kFeatRel;
  n.size = 1 + child_size(n.children);
  return make(std::move(n));
}

Formula top_formula() {
  VarId t = intern_var("_t");
  return Formula::lor(Formula::atom(t), Formula::neg_atom(t));
}

Formula bottom_formula() {
  VarId t = intern_var("_t");
  return Formula::land(Formula::atom(t), Formula::neg_atom(t));
}

bool is_rml(const Formula& f) { return rml_feats(f.feats()); }
bool is_flat(const Formula& f) {
  return (f.feats() & (kFeatDepSimple | kFeatDepExt | kFeatIDisj | kFeatIndep | kFeatIncl |
                       kFeatCNeg | kFeatRel)) == 0;
}
bool is_downward_closed(const Formula& f) {
  return (f.feats() & (kFeatIndep | kFeatIncl | kFeatCNeg | kFeatRel)) == 0;
}
bool is_prop_family(const Formula& f) {
  return (f.feats() & (kFeatModal | kFeatCNeg | kFeatRel)) == 0;
}

Formula negate_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return Formula::neg_atom(f.var());
    case Kind::NegAtom: return Formula::atom(f.var());
    case Kind::And: return Formula::lor(negate_nnf(f.left()), negate_nnf(f.right()));
    case Kind::Or: return Formula::land(negate_nnf(f.left()), negate_nnf(f.right()));
    case Kind::Box: return Formula::diamond(negate_nnf(f.body()));
    case Kind::Diamond: return Formula::box(negate_nnf(f.body()));
    case Kind::Exists: return Formula::forall(f.var(), negate_nnf(f.body()));
    case Kind::Forall: return Formula::exists(f.var(), negate_nnf(f.body()));
    default:
      throw FragmentError("negation is defined only on the classical fragment");
  }
}

Formula subformula_at(const Formula& f, const Path& path) {
  Formula cur = f;
  for (size_t idx : path) {
    if (idx >= cur.child_count()) throw InvalidError("subformula path addresses no occurrence");
    cur = cur.child(idx);
  }
  return cur;
}

namespace {
Formula rebuild(const Formula& f, size_t idx, Formula replaced) {
  std::vector<Formula> cs;
  cs.reserve(f.child_count());
  for (size_t i = 0; i < f.child_count(); ++i)
    cs.push_back(i == idx ? replaced : f.child(i));
  switch (f.kind()) {
    case Kind::And: return Formula::land(cs[0], cs[1]);
    case Kind::Or: return Formula::lor(cs[0], cs[1]);
    case Kind::IDisj: return Formula::idisj(cs[0], cs[1]);
    case Kind::Box: return Formula::box(cs[0]);
    case Kind::Diamond: return Formula::diamond(cs[0]);
    case Kind::CNeg: return Formula::cneg(cs[0]);
    case Kind::Exists: return Formula::exists(f.var(), cs[0]);
    case Kind::Forall: return Formula::forall(f.var(), cs[0]);
    case Kind::Dep: {
      Formula target = cs.back();
      cs.pop_back();
      return Formula::dep(std::move(cs), target);
    }
    case Kind::Rel: return Formula::rel(f.rel_symbol(), std::move(cs));
    default: throw InvalidError("node has no children");
  }
}
}  // namespace

Formula substitute(const Formula& f, const Path& path, const Formula& theta) {
  if (path.empty()) return theta;
  size_t idx = path.front();
  if (idx >= f.child_count()) throw InvalidError("subformula path addresses no occurrence");
  Path rest(path.begin() + 1, path.end());
  return rebuild(f, idx, substitute(f.child(idx), rest, theta));
}

namespace {
VarId apply_map(VarId v, const std::vector<std::pair<VarId, VarId>>& map,
                const std::set<VarId>& bound) {
  if (bound.count(v)) return v;
  for (auto& [from, to] : map)
    if (from == v) {
      if (bound.count(to)) throw InvalidError("variable renaming would be captured");
      return to;
    }
  return v;
}

std::vector<VarId> map_tuple(const std::vector<VarId>& t,
                             const std::vector<std::pair<VarId, VarId>>& map,
                             const std::set<VarId>& bound) {
  std::vector<VarId> out;
  out.reserve(t.size());
  for (VarId v : t) out.push_back(apply_map(v, map, bound));
  return out;
}

Formula rename_rec(const Formula& f, const std::vector<std::pair<VarId, VarId>>& map,
                   std::set<VarId>& bound) {
  switch (f.kind()) {
    case Kind::Atom: return Formula::atom(apply_map(f.var(), map, bound));
    case Kind::NegAtom: return Formula::neg_atom(apply_map(f.var(), map, bound));
    case Kind::And: return Formula::land(rename_rec(f.left(), map, bound),
                                         rename_rec(f.right(), map, bound));
    case Kind::Or: return Formula::lor(rename_rec(f.left(), map, bound),
                                       rename_rec(f.right(), map, bound));
    case Kind::IDisj: return Formula::idisj(rename_rec(f.left(), map, bound),
                                            rename_rec(f.right(), map, bound));
    case Kind::Box: return Formula::box(rename_rec(f.body(), map, bound));
    case Kind::Diamond: return Formula::diamond(rename_rec(f.body(), map, bound));
    case Kind::CNeg: return Formula::cneg(rename_rec(f.body(), map, bound));
    case Kind::Dep: {
      std::vector<Formula> args;
      for (const auto& a : f.dep_args()) args.push_back(rename_rec(a, map, bound));
      return Formula::dep(std::move(args), rename_rec(f.dep_target(), map, bound));
    }
    case Kind::Indep:
      return Formula::indep(map_tuple(f.tuple_cond(), map, bound),
                            map_tuple(f.tuple_left(), map, bound),
                            map_tuple(f.tuple_right(), map, bound));
    case Kind::Incl:
      return Formula::incl(map_tuple(f.tuple_left(), map, bound),
                           map_tuple(f.tuple_right(), map, bound));
    case Kind::Exists:
    case Kind::Forall: {
      bool inserted = bound.insert(f.var()).second;
      Formula b = rename_rec(f.body(), map, bound);
      if (inserted) bound.erase(f.var());
      return f.kind() == Kind::Exists ? Formula::exists(f.var(), b)
                                      : Formula::forall(f.var(), b);
    }
    case Kind::Rel: {
      std::vector<Formula> args;
      for (size_t i = 0; i < f.child_count(); ++i)
        args.push_back(rename_rec(f.child(i), map, bound));
      return Formula::rel(f.rel_symbol(), std::move(args));
    }
  }
  throw InvalidError("unreachable");
}
}  // namespace

Formula rename_free(const Formula& f, const std::vector<std::pair<VarId, VarId>>& map) {
  std::set<VarId> bound;
  return rename_rec(f, map, bound);
}

namespace {
void collect_vars(const Formula& f, std::set<VarId>& bound, std::set<VarId>* free,
                  std::set<VarId>* all) {
  auto occur = [&](VarId v) {
    if (all) all->insert(v);
    if (free && !bound.count(v)) free->insert(v);
  };
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom: occur(f.var()); return;
    case Kind::Indep:
      for (VarId v : f.tuple_cond()) occur(v);
      [[fallthrough]];
    case Kind::Incl:
      for (VarId v : f.tuple_left()) occur(v);
      for (VarId v : f.tuple_right()) occur(v);
      return;
    case Kind::Exists:
    case Kind::Forall: {
      if (all) all->insert(f.var());
      bool inserted = bound.insert(f.var()).second;
      collect_vars(f.body(), bound, free, all);
      if (inserted) bound.erase(f.var());
      return;
    }
    default:
      for (size_t i = 0; i < f.child_count(); ++i) collect_vars(f.child(i), bound, free, all);
      return;
  }
}
}  // namespace

std::set<VarId> free_vars(const Formula& f) {
  std::set<VarId> bound, out;
  collect_vars(f, bound, &out, nullptr);
  return out;
}

std::set<VarId> all_vars(const Formula& f) {
  std::set<VarId> bound, out;
  collect_vars(f, bound, nullptr, &out);
  return out;
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::PL: return "PL";
    case Fragment::ML: return "ML";
    case Fragment::PDL: return "PDL";
    case Fragment::PLInd: return "PLInd";
    case Fragment::PLInc: return "PLInc";
    case Fragment::QPL: return "QPL";
    case Fragment::MDL: return "MDL";
    case Fragment::MLIDisj: return "MLIDisj";
    case Fragment::MLInd: return "MLInd";
    case Fragment::MLInc: return "MLInc";
    case Fragment::EMDL: return "EMDL";
    case Fragment::QPDL: return "QPDL";
    case Fragment::QPLInd: return "QPLInd";
    case Fragment::QPLInc: return "QPLInc";
    case Fragment::RML: return "RML";
  }
  return "?";
}

namespace {
// Node-set signature per fragment: BOX, DIA, QUANT, DEPS, DEPE, IDISJ, IND, INC,
// CNEGREL, NEGATOM_OR (the PL base beyond atoms/conjunction).
enum : uint16_t {
  S_BASE = 1,  // NegAtom + Or
  S_BOX = 2,
  S_DIA = 4,
  S_QUANT = 8,
  S_DEPS = 16,
  S_DEPE = 32,
  S_IDISJ = 64,
  S_IND = 128,
  S_INC = 256,
  S_CNEGREL = 512,
};

uint16_t fragment_sig(Fragment f) {
  switch (f) {
    case Fragment::PL: return S_BASE;
    case Fragment::ML: return S_BASE | S_BOX | S_DIA;
    case Fragment::PDL: return S_BASE | S_DEPS;
    case Fragment::PLInd: return S_BASE | S_IND;
    case Fragment::PLInc: return S_BASE | S_INC;
    case Fragment::QPL: return S_BASE | S_QUANT;
    case Fragment::MDL: return S_BASE | S_BOX | S_DIA | S_DEPS;
    case Fragment::MLIDisj: return S_BASE | S_BOX | S_DIA | S_IDISJ;
    case Fragment::MLInd: return S_BASE | S_BOX | S_DIA | S_IND;
    case Fragment::MLInc: return S_BASE | S_BOX | S_DIA | S_INC;
    case Fragment::EMDL: return S_BASE | S_BOX | S_DIA | S_DEPS | S_DEPE;
    case Fragment::QPDL: return S_BASE | S_QUANT | S_DEPS;
    case Fragment::QPLInd: return S_BASE | S_QUANT | S_IND;
    case Fragment::QPLInc: return S_BASE | S_QUANT | S_INC;
    case Fragment::RML: return S_BOX | S_CNEGREL;
  }
  return 0;
}
}  // namespace

bool fragment_leq(Fragment a, Fragment b) {
  uint16_t sa = fragment_sig(a), sb = fragment_sig(b);
  return (sa & ~sb) == 0;
}

Fragment classify(const Formula& f) {
  uint16_t fe = f.feats();
  if (fe & (kFeatCNeg | kFeatRel)) {
    if (rml_feats(fe)) return Fragment::RML;
    throw FragmentError("contradictory negation / relational atoms mixed with non-RML nodes");
  }
  bool modal = fe & kFeatModal;
  bool quant = fe & kFeatQuant;
  if (modal && quant)
    throw FragmentError("modalities and propositional quantifiers do not share a fragment");
  bool deps = fe & kFeatDepSimple;
  bool depe = fe & kFeatDepExt;
  bool idj = fe & kFeatIDisj;
  bool ind = fe & kFeatIndep;
  bool inc = fe & kFeatIncl;
  int extras = ((deps || depe) ? 1 : 0) + (idj ? 1 : 0) + (ind ? 1 : 0) + (inc ? 1 : 0);
  if (extras > 1)
    throw FragmentError("mixed dependency atoms/connectives lie outside every fragment");
  if (quant) {
    if (depe) throw FragmentError("extended dependence atoms need the modal family");
    if (idj) throw FragmentError("no fragment tag admits quantifiers with intuitionistic disjunction");
    if (deps) return Fragment::QPDL;
    if (ind) return Fragment::QPLInd;
    if (inc) return Fragment::QPLInc;
    return Fragment::QPL;
  }
  if (modal) {
    if (depe) return Fragment::EMDL;
    if (deps) return Fragment::MDL;
    if (idj) return Fragment::MLIDisj;
    if (ind) return Fragment::MLInd;
    if (inc) return Fragment::MLInc;
    return Fragment::ML;
  }
  if (depe) return Fragment::EMDL;
  if (deps) return Fragment::PDL;
  if (ind) return Fragment::PLInd;
  if (inc) return Fragment::PLInc;
  if (idj) return Fragment::MLIDisj;
  return Fragment::PL;
}

}  // namespace teamlogic
