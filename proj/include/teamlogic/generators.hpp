// teamlogic :: seeded random formulas, teams, and models for tests and bench

#ifndef TEAMLOGIC_GENERATORS_HPP
#define TEAMLOGIC_GENERATORS_HPP

#include <random>

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int pick(int lo, int hi) { return lo + static_cast<int>(eng() % uint64_t(hi - lo + 1)); }
  bool coin() { return eng() & 1; }
};

struct GenOptions {
  int size = 8;           // node budget
  int max_quant = 1;      // quantifier occurrences (QPL family)
  int max_dep_arity = 1;
  int max_tuple = 2;      // ind/inc tuple length
  int rel_arity = 1;      // RML relation arity
  int rel_count = 1;
};

// A random formula within the given fragment (its node set never exceeds it;
// the characteristic atoms appear with high probability).
Formula random_formula(Rng& rng, Fragment frag, const std::vector<VarId>& vars,
                       const GenOptions& opts = {});

PropTeam random_team(Rng& rng, const std::vector<VarId>& vars, int max_rows);

KripkeModel random_kripke(Rng& rng, int worlds, const std::vector<VarId>& vars);

}  // namespace teamlogic

#endif
