// teamlogic :: formula AST, NNF discipline, fragments

#ifndef TEAMLOGIC_SYNTAX_HPP
#define TEAMLOGIC_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "teamlogic/errors.hpp"

namespace teamlogic {

// Propositional variables are interned strings: equal names, equal ids.
using VarId = uint32_t;

VarId intern_var(const std::string& name);
const std::string& var_name(VarId v);
// A name of the shape "<base>#<k>" not interned yet and distinct from `avoid`.
VarId fresh_var(const std::string& base, const std::set<VarId>& avoid);

enum class Kind : uint8_t {
  Atom,
  NegAtom,
  And,
  Or,       // splitting disjunction
  IDisj,    // intuitionistic disjunction
  Box,
  Diamond,
  Dep,      // dep(args..., target); args/target formulas, simple when all atoms
  Indep,    // ind(cond; left; right) over variable tuples
  Incl,     // left <= right over variable tuples of equal length
  Exists,
  Forall,
  CNeg,     // contradictory negation, RML only
  Rel,      // S_k(args...), RML only
};

// Feature bits, precomputed per node over the whole subtree.
enum Feat : uint16_t {
  kFeatModal = 1 << 0,
  kFeatQuant = 1 << 1,
  kFeatDepSimple = 1 << 2,
  kFeatDepExt = 1 << 3,
  kFeatIDisj = 1 << 4,
  kFeatIndep = 1 << 5,
  kFeatIncl = 1 << 6,
  kFeatCNeg = 1 << 7,
  kFeatRel = 1 << 8,
  kFeatNegAtom = 1 << 9,
  kFeatOr = 1 << 10,
};

enum class Fragment : uint8_t {
  PL,
  ML,
  PDL,
  PLInd,
  PLInc,
  QPL,
  MDL,
  MLIDisj,
  MLInd,
  MLInc,
  EMDL,
  QPDL,
  QPLInd,
  QPLInc,
  RML,
};

const char* fragment_name(Fragment f);
// Partial order by admitted node sets; false for incomparable pairs.
bool fragment_leq(Fragment a, Fragment b);

class Formula {
public:
  Formula() = default;  // empty handle; only valid after assignment

  static Formula atom(VarId v);
  static Formula atom(const std::string& name) { return atom(intern_var(name)); }
  static Formula neg_atom(VarId v);
  static Formula neg_atom(const std::string& name) { return neg_atom(intern_var(name)); }
  static Formula land(Formula a, Formula b);
  static Formula lor(Formula a, Formula b);
  static Formula idisj(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula diamond(Formula a);
  static Formula dep(std::vector<Formula> args, Formula target);
  static Formula indep(std::vector<VarId> cond, std::vector<VarId> left, std::vector<VarId> right);
  static Formula incl(std::vector<VarId> left, std::vector<VarId> right);
  static Formula exists(VarId v, Formula body);
  static Formula forall(VarId v, Formula body);
  static Formula cneg(Formula a);
  static Formula rel(std::string symbol, std::vector<Formula> args);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  uint16_t feats() const;
  size_t size() const;  // symbol count: nodes, with vars in tuples counted once each
  size_t hash() const;

  VarId var() const;                       // Atom/NegAtom/Exists/Forall
  const Formula& child(size_t i) const;    // generic child access
  size_t child_count() const;
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }
  const Formula& body() const { return child(0); }  // Box/Diamond/CNeg/Exists/Forall

  // Dep: children are args..., target
  std::span<const Formula> dep_args() const;
  const Formula& dep_target() const;
  bool dep_is_simple() const;  // all args and target are atoms

  const std::vector<VarId>& tuple_cond() const;   // Indep
  const std::vector<VarId>& tuple_left() const;   // Indep/Incl
  const std::vector<VarId>& tuple_right() const;  // Indep/Incl
  const std::string& rel_symbol() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  const void* id() const { return node_.get(); }  // stable identity for memo tables

private:
  struct Node;
  static Formula make(Node n);
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  size_t operator()(const Formula& f) const { return f.hash(); }
};

// phi^bot: classical NNF dual. Rejects Dep/Indep/Incl/IDisj/CNeg/Rel nodes.
Formula negate_nnf(const Formula& f);

// Path = child indices from the root. Replaces exactly that occurrence.
using Path = std::vector<size_t>;
Formula subformula_at(const Formula& f, const Path& path);
Formula substitute(const Formula& f, const Path& path, const Formula& theta);

// Renames free variable occurrences (including inside atom tuples). The map
// must not capture: renaming into a bound variable of f is rejected.
Formula rename_free(const Formula& f, const std::vector<std::pair<VarId, VarId>>& map);

std::set<VarId> free_vars(const Formula& f);
std::set<VarId> all_vars(const Formula& f);

// Minimal fragment admitting the node set; throws FragmentError on
// combinations outside every fragment (e.g. Rel under Diamond).
Fragment classify(const Formula& f);

// True when the node set is within the RML grammar {Atom, CNeg, And, Box, Rel}.
bool is_rml(const Formula& f);
// Flat formulas: no Dep/Indep/Incl/IDisj/CNeg/Rel anywhere.
bool is_flat(const Formula& f);
// Downward-closed by fragment: no Indep/Incl/CNeg/Rel anywhere.
bool is_downward_closed(const Formula& f);
// Propositional team family: no modal operators, no CNeg/Rel.
bool is_prop_family(const Formula& f);

// Truth constants are not primitive; p | !p and p & !p over a reserved variable.
Formula top_formula();
Formula bottom_formula();

}  // namespace teamlogic

#endif
