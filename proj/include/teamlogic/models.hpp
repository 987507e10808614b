// teamlogic :: Kripke models, teams, successor machinery, propositional teams

#ifndef TEAMLOGIC_MODELS_HPP
#define TEAMLOGIC_MODELS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "teamlogic/syntax.hpp"

namespace teamlogic {

// Teams over one Kripke model are world bitmasks; worlds are 0..W-1, W <= 64.
using TeamMask = uint64_t;

// Tuples over {0,1}^k encoded with the first component as the high bit.
struct Relation {
  int arity = 0;
  std::vector<uint32_t> tuples;  // sorted ascending, unique

  bool member(uint32_t t) const;
  std::vector<uint32_t> complement() const;  // over {0,1}^arity, ascending
};

struct KripkeModel {
  int world_count = 0;
  std::vector<uint64_t> succ;       // succ[w] = successor bitmask
  std::map<VarId, uint64_t> val;    // pi
  std::map<std::string, Relation> relations;

  TeamMask all_worlds() const {
    return world_count == 64 ? ~0ull : ((1ull << world_count) - 1);
  }
  bool has_edge(int from, int to) const { return (succ[from] >> to) & 1; }
  void add_edge(int from, int to) { succ[from] |= 1ull << to; }
  uint64_t valuation(VarId v) const;  // throws if v undeclared
  void validate() const;
};

// R[T]
TeamMask successors(const KripkeModel& m, TeamMask team);

// R<T>: lazy enumeration of legal successor teams, bitmask-ascending over
// subsets of R[T]. |R<T>| can reach 2^|R[T]|; callers prune.
class SuccessorTeams {
public:
  SuccessorTeams(const KripkeModel& m, TeamMask team);
  std::optional<TeamMask> next();

private:
  const KripkeModel& model_;
  TeamMask team_;
  std::vector<int> pool_;  // worlds of R[T], ascending
  uint64_t cursor_ = 0;
  bool done_ = false;
};

// Finite set of total assignments over an ordered domain.
// Row bit i corresponds to domain[i]. Rows are kept sorted and unique.
struct PropTeam {
  std::vector<VarId> domain;
  std::vector<uint32_t> rows;

  static PropTeam over(std::vector<VarId> domain);
  static PropTeam of_rows(std::vector<VarId> domain, std::vector<uint32_t> rows);

  size_t arity() const { return domain.size(); }
  bool empty() const { return rows.empty(); }
  int var_index(VarId v) const;  // -1 when absent
  bool row_value(uint32_t row, int var_index) const { return (row >> var_index) & 1; }

  bool operator==(const PropTeam& o) const { return domain == o.domain && rows == o.rows; }
};

// X[{0,1}/p]; p is replaced when already present.
PropTeam duplicate(const PropTeam& x, VarId p);

// Per-row value choices, indexed like x.rows: 1 = {0}, 2 = {1}, 3 = {0,1}.
using SupplementFn = std::vector<uint8_t>;
// X[F/p]; F must be total with non-empty images.
PropTeam supplement(const PropTeam& x, const SupplementFn& f, VarId p);

// X restricted to a subset of its domain, set-collapsed.
PropTeam restrict(const PropTeam& x, const std::set<VarId>& keep);

// M_X = (T_X, empty R, pi); returned team covers every row-world.
std::pair<KripkeModel, TeamMask> induced_kripke(const PropTeam& x);

// All 2^k assignments over `domain` as one team.
PropTeam full_team(std::vector<VarId> domain);

}  // namespace teamlogic

#endif
