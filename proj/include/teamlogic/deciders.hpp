// teamlogic :: satisfiability / validity / entailment deciders and exact oracles

#ifndef TEAMLOGIC_DECIDERS_HPP
#define TEAMLOGIC_DECIDERS_HPP

#include <optional>

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"
#include "teamlogic/tableau.hpp"
#include "teamlogic/teamcheck.hpp"
#include "teamlogic/witness.hpp"

namespace teamlogic {

// Exceeding a cap raises ResourceError; the procedures are exponential by
// design and must fail loudly rather than answer wrongly.
struct Caps {
  int max_dep_arity = 3;
  int max_joint_vars = 4;     // brute team enumeration over 2^(2^k) teams
  int max_worlds = 4;         // brute model search bound
  int countermodel_worlds = 3;
  uint64_t max_witness_tuples = 1ull << 20;
  CheckLimits check;
};

struct DecideCounters {
  uint64_t witness_tuples = 0;
  uint64_t teams = 0;
  uint64_t models = 0;
  uint64_t tableau_calls = 0;
  int tableau_depth = 0;

  void absorb(const TableauStats& s) {
    tableau_calls += s.calls;
    if (s.max_depth > tableau_depth) tableau_depth = s.max_depth;
  }
};

struct ModalWitness {
  KripkeModel model;
  TeamMask team = 0;
};

struct Verdict {
  bool answer = false;
  std::optional<PropTeam> team_witness;   // countermodel or satisfying team
  std::optional<ModalWitness> modal_witness;
  std::map<std::string, std::string> info;  // e.g. chosen witness tables
  DecideCounters counters;
};

// EMDL family: universal witness guesses on the premises, existential on the
// conclusion, each core decided through the star translation and the tableau.
Verdict emdl_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                     const Caps& caps = {});
Verdict emdl_valid(const Formula& f, const Caps& caps = {});
Verdict emdl_sat(const Formula& f, const Caps& caps = {});

// ML with intuitionistic disjunction: selection functions map every
// idisj occurrence to one side; cores are plain ML.
Verdict mldisj_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                       const Caps& caps = {});
Verdict mldisj_valid(const Formula& f, const Caps& caps = {});
Verdict mldisj_sat(const Formula& f, const Caps& caps = {});

// The unique maximal subteam of x satisfying a QPLInc formula.
PropTeam max_sub(const PropTeam& x, const Formula& f);

Verdict qplinc_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                       const Caps& caps = {});
Verdict qplinc_valid(const Formula& f, const Caps& caps = {});

Verdict qplind_entails(const std::vector<Formula>& premises, const Formula& conclusion,
                       const Caps& caps = {});

// Exact oracle over every team on the joint free variables.
Verdict brute_entails_prop(const std::vector<Formula>& premises, const Formula& conclusion,
                           const Caps& caps = {});

// Exhaustive pointed-model search; first witness in enumeration order, if any.
std::optional<ModalWitness> brute_sat_modal(const Formula& f, int max_worlds = 4,
                                            const Caps& caps = {});

}  // namespace teamlogic

#endif
