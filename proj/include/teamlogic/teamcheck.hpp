// teamlogic :: team-semantics satisfaction for all fragments, pointed RML semantics

#ifndef TEAMLOGIC_TEAMCHECK_HPP
#define TEAMLOGIC_TEAMCHECK_HPP

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

struct CheckLimits {
  // Disjunction splits enumerate subsets; these bound the enumeration domains.
  int max_split_bits = 24;
  int max_split_bits_general = 18;  // both disjuncts non-downward-closed
  size_t max_rows = 64;             // propositional universe rows per quantifier level
};

// M,T |= phi for the modal team fragments (ML/MDL/EMDL/MLInd/MLInc/ML with idisj).
// Rejects quantifiers and RML-only nodes.
bool check_modal(const KripkeModel& m, TeamMask team, const Formula& f,
                 const CheckLimits& limits = {});

// X |= phi for the QPL family. Quantifier-free connectives delegate through the
// induced Kripke model; quantifiers search duplication/supplementation teams.
bool check_prop(const PropTeam& x, const Formula& f, const CheckLimits& limits = {});

// Pointed satisfaction over relational Kripke models; phi must be RML.
bool check_rml_pointed(const KripkeModel& m, int world, const Formula& f);

// w_M for flat modal formulas: M,{w} |= phi.
bool holds_at_world(const KripkeModel& m, int world, const Formula& f);

// s |=_PL phi for flat propositional formulas, quantifiers ranging over values.
bool holds_at_assignment(const std::map<VarId, bool>& s, const Formula& f);

}  // namespace teamlogic

#endif
