#include "teamlogic/models.hpp"

#include <algorithm>

namespace teamlogic {

bool Relation::member(uint32_t t) const {
  return std::binary_search(tuples.begin(), tuples.end(), t);
}

std::vector<uint32_t> Relation::complement() const {
  std::vector<uint32_t> out;
  uint32_t space = 1u << arity;
  out.reserve(space - tuples.size());
  for (uint32_t t = 0; t < space; ++t)
    if (!member(t)) out.push_back(t);
  return out;
}

uint64_t KripkeModel::valuation(VarId v) const {
  auto it = val.find(v);
  if (it == val.end())
    throw InvalidError("variable '" + var_name(v) + "' is not in the model's valuation domain");
  return it->second;
}

void KripkeModel::validate() const {
  if (world_count < 0 || world_count > 64) throw InvalidError("world count must be in 0..64");
  if (static_cast<int>(succ.size()) != world_count)
    throw InvalidError("successor table size mismatch");
  TeamMask all = all_worlds();
  for (uint64_t s : succ)
    if (s & ~all) throw InvalidError("edge endpoint outside the world range");
  for (auto& [v, mask] : val)
    if (mask & ~all) throw InvalidError("valuation member outside the world range");
  for (auto& [sym, rel] : relations) {
    if (rel.arity < 0 || rel.arity > 20) throw InvalidError("relation arity out of range");
    uint32_t space = 1u << rel.arity;
    for (size_t i = 0; i < rel.tuples.size(); ++i) {
      if (rel.tuples[i] >= space) throw InvalidError("relation tuple outside {0,1}^arity");
      if (i && rel.tuples[i] <= rel.tuples[i - 1])
        throw InvalidError("relation tuples must be sorted and unique");
    }
  }
}

TeamMask successors(const KripkeModel& m, TeamMask team) {
  TeamMask out = 0;
  for (int w = 0; w < m.world_count; ++w)
    if ((team >> w) & 1) out |= m.succ[w];
  return out;
}

SuccessorTeams::SuccessorTeams(const KripkeModel& m, TeamMask team)
    : model_(m), team_(team) {
  TeamMask pool = successors(m, team);
  for (int w = 0; w < m.world_count; ++w)
    if ((pool >> w) & 1) pool_.push_back(w);
}

std::optional<TeamMask> SuccessorTeams::next() {
  uint64_t limit = 1ull << pool_.size();
  while (!done_) {
    if (cursor_ >= limit) {
      done_ = true;
      break;
    }
    uint64_t bits = cursor_++;
    TeamMask candidate = 0;
    for (size_t i = 0; i < pool_.size(); ++i)
      if ((bits >> i) & 1) candidate |= 1ull << pool_[i];
    bool legal = true;
    for (int w = 0; w < model_.world_count && legal; ++w)
      if ((team_ >> w) & 1) legal = (model_.succ[w] & candidate) != 0;
    if (legal) return candidate;
  }
  return std::nullopt;
}

int PropTeam::var_index(VarId v) const {
  for (size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == v) return static_cast<int>(i);
  return -1;
}

PropTeam PropTeam::over(std::vector<VarId> d) {
  if (d.size() > 31) throw ResourceError("team domain larger than 31 variables");
  PropTeam x;
  x.domain = std::move(d);
  return x;
}

PropTeam PropTeam::of_rows(std::vector<VarId> d, std::vector<uint32_t> rows) {
  PropTeam x = over(std::move(d));
  uint32_t space_mask = x.domain.empty() ? 0 : ((1u << x.domain.size()) - 1);
  for (uint32_t r : rows)
    if (r & ~space_mask) throw InvalidError("row has bits outside the domain");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  x.rows = std::move(rows);
  return x;
}

PropTeam duplicate(const PropTeam& x, VarId p) {
  int idx = x.var_index(p);
  std::vector<VarId> domain = x.domain;
  if (idx < 0) {
    domain.push_back(p);
    idx = static_cast<int>(domain.size()) - 1;
  }
  std::vector<uint32_t> rows;
  rows.reserve(2 * x.rows.size());
  uint32_t bit = 1u << idx;
  for (uint32_t r : x.rows) {
    rows.push_back(r & ~bit);
    rows.push_back(r | bit);
  }
  return PropTeam::of_rows(std::move(domain), std::move(rows));
}

PropTeam supplement(const PropTeam& x, const SupplementFn& f, VarId p) {
  if (f.size() != x.rows.size()) throw InvalidError("supplementation function must be total");
  int idx = x.var_index(p);
  std::vector<VarId> domain = x.domain;
  if (idx < 0) {
    domain.push_back(p);
    idx = static_cast<int>(domain.size()) - 1;
  }
  uint32_t bit = 1u << idx;
  std::vector<uint32_t> rows;
  rows.reserve(2 * x.rows.size());
  for (size_t i = 0; i < x.rows.size(); ++i) {
    uint8_t choice = f[i];
    if (choice == 0 || choice > 3)
      throw InvalidError("supplementation images must be non-empty subsets of {0,1}");
    if (choice & 1) rows.push_back(x.rows[i] & ~bit);
    if (choice & 2) rows.push_back(x.rows[i] | bit);
  }
  return PropTeam::of_rows(std::move(domain), std::move(rows));
}

PropTeam restrict(const PropTeam& x, const std::set<VarId>& keep) {
  std::vector<VarId> domain;
  std::vector<int> positions;
  for (size_t i = 0; i < x.domain.size(); ++i)
    if (keep.count(x.domain[i])) {
      domain.push_back(x.domain[i]);
      positions.push_back(static_cast<int>(i));
    }
  if (domain.size() != keep.size())
    throw InvalidError("restriction set is not a subset of the team domain");
  std::vector<uint32_t> rows;
  rows.reserve(x.rows.size());
  for (uint32_t r : x.rows) {
    uint32_t proj = 0;
    for (size_t j = 0; j < positions.size(); ++j)
      if ((r >> positions[j]) & 1) proj |= 1u << j;
    rows.push_back(proj);
  }
  return PropTeam::of_rows(std::move(domain), std::move(rows));
}

std::pair<KripkeModel, TeamMask> induced_kripke(const PropTeam& x) {
  if (x.rows.size() > 64) throw ResourceError("induced model would exceed 64 worlds");
  KripkeModel m;
  m.world_count = static_cast<int>(x.rows.size());
  m.succ.assign(m.world_count, 0);
  for (size_t i = 0; i < x.domain.size(); ++i) {
    uint64_t mask = 0;
    for (size_t w = 0; w < x.rows.size(); ++w)
      if ((x.rows[w] >> i) & 1) mask |= 1ull << w;
    m.val[x.domain[i]] = mask;
  }
  TeamMask team = m.all_worlds();
  return {std::move(m), team};
}

PropTeam full_team(std::vector<VarId> domain) {
  if (domain.size() > 20) throw ResourceError("full team over more than 20 variables");
  std::vector<uint32_t> rows;
  uint32_t n = 1u << domain.size();
  rows.reserve(n);
  for (uint32_t r = 0; r < n; ++r) rows.push_back(r);
  return PropTeam::of_rows(std::move(domain), std::move(rows));
}

}  // namespace teamlogic
