// teamlogic :: text syntax for formulas, JSON for teams / Kripke models
//
// Formula grammar, lowest to highest precedence:
//   E p . phi | A p . phi      quantifiers, body extends right
//   phi \/ phi                 intuitionistic disjunction
//   phi | phi                  splitting disjunction
//   phi & phi                  conjunction
//   [] <> ~ !                  prefix; ! only on atoms
//   p  =(a,...,t)  ind(c; l; r)  inc(l, r)  S_k(phi,...)  (phi)
// Identifiers match [a-zA-Z_][a-zA-Z0-9_']*; relation symbols match S_<digits>.

#ifndef TEAMLOGIC_PARSER_HPP
#define TEAMLOGIC_PARSER_HPP

#include <string>

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

Formula parse_formula(const std::string& text);

// Minimal-parentheses text accepted by parse_formula; round-trips structurally.
std::string render(const Formula& f);

// {"vars":["p",...], "rows":[[0,1,...],...]} with row arity = vars length.
PropTeam parse_team(const std::string& json_text);
std::string team_to_json(const PropTeam& x);

// {"worlds":N, "edges":[[i,j],...], "val":{"p":[world indices]},
//  "relations":{"S_k":[[bits],...]}}; an optional "team":[indices] is
// reported through team_out when given (defaults to all worlds).
KripkeModel parse_kripke(const std::string& json_text, TeamMask* team_out = nullptr);
std::string kripke_to_json(const KripkeModel& m, const TeamMask* team = nullptr);

}  // namespace teamlogic

#endif
