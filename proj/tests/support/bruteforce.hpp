// Test-side exact oracles. Deliberately naive and independent of the library's
// evaluation paths: no flatness shortcuts, no filters, no memoization.

#ifndef TEAMLOGIC_TESTS_BRUTEFORCE_HPP
#define TEAMLOGIC_TESTS_BRUTEFORCE_HPP

#include <functional>
#include <map>

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic::testing {

// Standard pointed Kripke semantics for ML formulas.
inline bool bf_pointed(const KripkeModel& m, int w, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return (m.valuation(f.var()) >> w) & 1;
    case Kind::NegAtom: return !((m.valuation(f.var()) >> w) & 1);
    case Kind::And: return bf_pointed(m, w, f.left()) && bf_pointed(m, w, f.right());
    case Kind::Or: return bf_pointed(m, w, f.left()) || bf_pointed(m, w, f.right());
    case Kind::Box: {
      for (int u = 0; u < m.world_count; ++u)
        if (m.has_edge(w, u) && !bf_pointed(m, u, f.body())) return false;
      return true;
    }
    case Kind::Diamond: {
      for (int u = 0; u < m.world_count; ++u)
        if (m.has_edge(w, u) && bf_pointed(m, u, f.body())) return true;
      return false;
    }
    default: throw FragmentError("bf_pointed handles plain ML only");
  }
}

// Pointed relational semantics for RML formulas with relations in the model.
inline bool bf_rml_pointed(const KripkeModel& m, int w, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return (m.valuation(f.var()) >> w) & 1;
    case Kind::CNeg: return !bf_rml_pointed(m, w, f.body());
    case Kind::And: return bf_rml_pointed(m, w, f.left()) && bf_rml_pointed(m, w, f.right());
    case Kind::Box: {
      for (int u = 0; u < m.world_count; ++u)
        if (m.has_edge(w, u) && !bf_rml_pointed(m, u, f.body())) return false;
      return true;
    }
    case Kind::Rel: {
      const Relation& rel = m.relations.at(f.rel_symbol());
      uint32_t tuple = 0;
      for (size_t i = 0; i < f.child_count(); ++i)
        tuple = (tuple << 1) | (bf_rml_pointed(m, w, f.child(i)) ? 1 : 0);
      return rel.member(tuple);
    }
    default: throw FragmentError("bf_rml_pointed handles RML only");
  }
}

// Naive team semantics on Kripke models. Splits enumerate all covering pairs.
inline bool bf_team(const KripkeModel& m, TeamMask team, const Formula& f) {
  auto tuple_at = [&](int w, const std::vector<VarId>& vars) {
    uint32_t t = 0;
    for (VarId v : vars) t = (t << 1) | ((m.valuation(v) >> w) & 1);
    return t;
  };
  switch (f.kind()) {
    case Kind::Atom: {
      for (int w = 0; w < m.world_count; ++w)
        if (((team >> w) & 1) && !((m.valuation(f.var()) >> w) & 1)) return false;
      return true;
    }
    case Kind::NegAtom: {
      for (int w = 0; w < m.world_count; ++w)
        if (((team >> w) & 1) && ((m.valuation(f.var()) >> w) & 1)) return false;
      return true;
    }
    case Kind::And: return bf_team(m, team, f.left()) && bf_team(m, team, f.right());
    case Kind::IDisj: return bf_team(m, team, f.left()) || bf_team(m, team, f.right());
    case Kind::Or: {
      std::vector<int> worlds;
      for (int w = 0; w < m.world_count; ++w)
        if ((team >> w) & 1) worlds.push_back(w);
      uint64_t k = worlds.size();
      for (uint64_t a = 0; a < (1ull << k); ++a)
        for (uint64_t b = 0; b < (1ull << k); ++b) {
          if ((a | b) != (1ull << k) - 1) continue;
          TeamMask t1 = 0, t2 = 0;
          for (uint64_t i = 0; i < k; ++i) {
            if ((a >> i) & 1) t1 |= 1ull << worlds[i];
            if ((b >> i) & 1) t2 |= 1ull << worlds[i];
          }
          if (bf_team(m, t1, f.left()) && bf_team(m, t2, f.right())) return true;
        }
      return false;
    }
    case Kind::Box: return bf_team(m, successors(m, team), f.body());
    case Kind::Diamond: {
      TeamMask pool = successors(m, team);
      std::vector<int> worlds;
      for (int w = 0; w < m.world_count; ++w)
        if ((pool >> w) & 1) worlds.push_back(w);
      for (uint64_t bits = 0; bits < (1ull << worlds.size()); ++bits) {
        TeamMask cand = 0;
        for (size_t i = 0; i < worlds.size(); ++i)
          if ((bits >> i) & 1) cand |= 1ull << worlds[i];
        bool legal = true;
        for (int w = 0; w < m.world_count && legal; ++w)
          if ((team >> w) & 1) legal = (m.succ[w] & cand) != 0;
        if (legal && bf_team(m, cand, f.body())) return true;
      }
      return false;
    }
    case Kind::Dep: {
      for (int w = 0; w < m.world_count; ++w)
        for (int u = 0; u < m.world_count; ++u) {
          if (!((team >> w) & 1) || !((team >> u) & 1)) continue;
          bool same_args = true;
          for (const auto& a : f.dep_args())
            same_args = same_args && (bf_pointed(m, w, a) == bf_pointed(m, u, a));
          if (same_args &&
              bf_pointed(m, w, f.dep_target()) != bf_pointed(m, u, f.dep_target()))
            return false;
        }
      return true;
    }
    case Kind::Indep: {
      for (int w = 0; w < m.world_count; ++w)
        for (int u = 0; u < m.world_count; ++u) {
          if (!((team >> w) & 1) || !((team >> u) & 1)) continue;
          if (tuple_at(w, f.tuple_cond()) != tuple_at(u, f.tuple_cond())) continue;
          bool witnessed = false;
          for (int x = 0; x < m.world_count && !witnessed; ++x) {
            if (!((team >> x) & 1)) continue;
            witnessed = tuple_at(x, f.tuple_cond()) == tuple_at(w, f.tuple_cond()) &&
                        tuple_at(x, f.tuple_left()) == tuple_at(w, f.tuple_left()) &&
                        tuple_at(x, f.tuple_right()) == tuple_at(u, f.tuple_right());
          }
          if (!witnessed) return false;
        }
      return true;
    }
    case Kind::Incl: {
      for (int w = 0; w < m.world_count; ++w) {
        if (!((team >> w) & 1)) continue;
        bool found = false;
        for (int u = 0; u < m.world_count && !found; ++u)
          if ((team >> u) & 1)
            found = tuple_at(w, f.tuple_left()) == tuple_at(u, f.tuple_right());
        if (!found) return false;
      }
      return true;
    }
    default: throw FragmentError("bf_team: unsupported node");
  }
}

// Naive propositional team semantics with quantifiers.
inline bool bf_prop(const PropTeam& x, const Formula& f) {
  if (!(f.feats() & kFeatQuant)) {
    auto [m, team] = induced_kripke(x);
    return bf_team(m, team, f);
  }
  switch (f.kind()) {
    case Kind::Exists: {
      size_t n = x.rows.size();
      if (n == 0) return true;
      std::vector<uint8_t> digits(n, 1);
      while (true) {
        SupplementFn fn(digits.begin(), digits.end());
        if (bf_prop(supplement(x, fn, f.var()), f.body())) return true;
        size_t i = 0;
        while (i < n && digits[i] == 3) digits[i++] = 1;
        if (i == n) return false;
        ++digits[i];
      }
    }
    case Kind::Forall: return bf_prop(duplicate(x, f.var()), f.body());
    case Kind::And: return bf_prop(x, f.left()) && bf_prop(x, f.right());
    case Kind::IDisj: return bf_prop(x, f.left()) || bf_prop(x, f.right());
    case Kind::Or: {
      size_t n = x.rows.size();
      for (uint64_t a = 0; a < (1ull << n); ++a)
        for (uint64_t b = 0; b < (1ull << n); ++b) {
          if ((a | b) != (1ull << n) - 1) continue;
          std::vector<uint32_t> r1, r2;
          for (size_t i = 0; i < n; ++i) {
            if ((a >> i) & 1) r1.push_back(x.rows[i]);
            if ((b >> i) & 1) r2.push_back(x.rows[i]);
          }
          if (bf_prop(PropTeam::of_rows(x.domain, r1), f.left()) &&
              bf_prop(PropTeam::of_rows(x.domain, r2), f.right()))
            return true;
        }
      return false;
    }
    default: throw FragmentError("bf_prop: unsupported node above a quantifier");
  }
}

// All Kripke models with exactly `worlds` worlds over the variable list.
inline void for_all_models(int worlds, const std::vector<VarId>& vars,
                           const std::function<void(const KripkeModel&)>& fn) {
  uint64_t redges = 1ull << (worlds * worlds);
  uint64_t rvals = 1ull << (worlds * vars.size());
  for (uint64_t rb = 0; rb < redges; ++rb) {
    KripkeModel m;
    m.world_count = worlds;
    m.succ.assign(worlds, 0);
    for (int a = 0; a < worlds; ++a)
      for (int b = 0; b < worlds; ++b)
        if ((rb >> (a * worlds + b)) & 1) m.add_edge(a, b);
    for (uint64_t vb = 0; vb < rvals; ++vb) {
      m.val.clear();
      for (size_t i = 0; i < vars.size(); ++i)
        m.val[vars[i]] = (vb >> (i * worlds)) & ((1ull << worlds) - 1);
      fn(m);
    }
  }
}

// All teams (including the empty one) over the variable list.
inline void for_all_teams(const std::vector<VarId>& vars,
                          const std::function<void(const PropTeam&)>& fn) {
  uint32_t rows = 1u << vars.size();
  for (uint64_t mask = 0; mask < (1ull << rows); ++mask) {
    std::vector<uint32_t> rs;
    for (uint32_t r = 0; r < rows; ++r)
      if ((mask >> r) & 1) rs.push_back(r);
    fn(PropTeam::of_rows(vars, rs));
  }
}

}  // namespace teamlogic::testing

#endif
