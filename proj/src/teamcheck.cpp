#include "teamlogic/teamcheck.hpp"

#include <bit>
#include <unordered_map>

namespace teamlogic {

namespace {

uint64_t low_mask(int bits) { return bits >= 64 ? ~0ull : ((1ull << bits) - 1); }

// ---------------------------------------------------------------------------
// Modal side. Teams are world bitmasks over one fixed model.

struct ModalCtx {
  const KripkeModel& m;
  const CheckLimits& limits;
  uint64_t all;
  std::unordered_map<const void*, uint64_t> flat_masks;
  std::unordered_map<const void*, uint64_t> filter_masks;
  std::unordered_map<const void*, std::unordered_map<uint64_t, bool>> memo;

  ModalCtx(const KripkeModel& model, const CheckLimits& lim)
      : m(model), limits(lim), all(model.all_worlds()) {}
};

uint64_t box_worlds(const ModalCtx& c, uint64_t mask) {
  uint64_t out = 0;
  for (int w = 0; w < c.m.world_count; ++w)
    if ((c.m.succ[w] & ~mask) == 0) out |= 1ull << w;
  return out;
}

uint64_t diamond_worlds(const ModalCtx& c, uint64_t mask) {
  uint64_t out = 0;
  for (int w = 0; w < c.m.world_count; ++w)
    if (c.m.succ[w] & mask) out |= 1ull << w;
  return out;
}

// Pointed truth mask of a flat modal formula: bit w set iff M,{w} |= f.
uint64_t flat_mask(ModalCtx& c, const Formula& f) {
  auto it = c.flat_masks.find(f.id());
  if (it != c.flat_masks.end()) return it->second;
  uint64_t r = 0;
  switch (f.kind()) {
    case Kind::Atom: r = c.m.valuation(f.var()); break;
    case Kind::NegAtom: r = c.all & ~c.m.valuation(f.var()); break;
    case Kind::And: r = flat_mask(c, f.left()) & flat_mask(c, f.right()); break;
    case Kind::Or: r = flat_mask(c, f.left()) | flat_mask(c, f.right()); break;
    case Kind::Box: r = box_worlds(c, flat_mask(c, f.body())); break;
    case Kind::Diamond: r = diamond_worlds(c, flat_mask(c, f.body())); break;
    default: throw FragmentError("flat mask requested on a non-flat node");
  }
  c.flat_masks.emplace(f.id(), r);
  return r;
}

// Sound over-approximation: every team satisfying f lies within this mask.
uint64_t filter_mask(ModalCtx& c, const Formula& f) {
  if (is_flat(f)) return flat_mask(c, f);
  auto it = c.filter_masks.find(f.id());
  if (it != c.filter_masks.end()) return it->second;
  uint64_t r;
  switch (f.kind()) {
    case Kind::And: r = filter_mask(c, f.left()) & filter_mask(c, f.right()); break;
    case Kind::Or:
    case Kind::IDisj: r = filter_mask(c, f.left()) | filter_mask(c, f.right()); break;
    default: r = c.all; break;
  }
  c.filter_masks.emplace(f.id(), r);
  return r;
}

bool eval_modal(ModalCtx& c, uint64_t team, const Formula& f);

// Enumerates subsets of `domain` (a bitmask) in ascending bit order.
template <typename Fn>
bool any_subset(uint64_t domain, int limit_bits, const char* what, Fn&& body) {
  int k = std::popcount(domain);
  if (k > limit_bits)
    throw ResourceError(std::string(what) + ": split domain of " + std::to_string(k) +
                        " elements exceeds the configured limit");
  std::vector<uint64_t> bits;
  bits.reserve(k);
  for (int b = 0; b < 64; ++b)
    if ((domain >> b) & 1) bits.push_back(1ull << b);
  for (uint64_t m = 0;; ++m) {
    uint64_t sub = 0;
    for (int i = 0; i < k; ++i)
      if ((m >> i) & 1) sub |= bits[i];
    if (body(sub)) return true;
    if (m + 1 == (1ull << k)) return false;
  }
}

// Disjoint splits with hereditary-violation pruning; sound and complete when
// both disjuncts are downward closed.
template <typename Eval>
bool dc_split_search(const std::vector<int>& rows, size_t i, uint64_t m1, uint64_t m2,
                     Eval&& eval) {
  if (i == rows.size()) return true;
  uint64_t bit = 1ull << rows[i];
  if (eval(m1 | bit, true) && dc_split_search(rows, i + 1, m1 | bit, m2, eval)) return true;
  if (eval(m2 | bit, false) && dc_split_search(rows, i + 1, m1, m2 | bit, eval)) return true;
  return false;
}

bool eval_or_modal(ModalCtx& c, uint64_t team, const Formula& f1, const Formula& f2,
                   bool swapped) {
  if (is_flat(f1)) {
    uint64_t t1max = team & flat_mask(c, f1);
    uint64_t core = team & ~t1max;
    if (is_flat(f2)) return (core & ~flat_mask(c, f2)) == 0;
    if (is_downward_closed(f2)) return eval_modal(c, core, f2);
    uint64_t flt = filter_mask(c, f2);
    if (core & ~flt) return false;
    uint64_t dom = t1max & flt;
    return any_subset(dom, c.limits.max_split_bits, "disjunction",
                      [&](uint64_t s) { return eval_modal(c, core | s, f2); });
  }
  if (is_flat(f2) && !swapped) return eval_or_modal(c, team, f2, f1, true);
  if (is_downward_closed(f1) && is_downward_closed(f2)) {
    uint64_t flt1 = filter_mask(c, f1);
    uint64_t flt2 = filter_mask(c, f2);
    uint64_t must1 = team & ~flt2;
    uint64_t must2 = team & ~flt1;
    if ((must1 & ~flt1) || (must2 & ~flt2) || (must1 & must2)) return false;
    if (!eval_modal(c, must1, f1) || !eval_modal(c, must2, f2)) return false;
    std::vector<int> rows;
    for (int b = 0; b < 64; ++b)
      if ((team & ~must1 & ~must2) >> b & 1) rows.push_back(b);
    if (static_cast<int>(rows.size()) > c.limits.max_split_bits)
      throw ResourceError("disjunction: split domain exceeds the configured limit");
    return dc_split_search(rows, 0, must1, must2, [&](uint64_t mask, bool left) {
      return eval_modal(c, mask, left ? f1 : f2);
    });
  }
  if (is_downward_closed(f1)) {
    uint64_t dom = team & filter_mask(c, f2);
    return any_subset(dom, c.limits.max_split_bits, "disjunction", [&](uint64_t t2) {
      return eval_modal(c, t2, f2) && eval_modal(c, team & ~t2, f1);
    });
  }
  if (is_downward_closed(f2) && !swapped) return eval_or_modal(c, team, f2, f1, true);
  // Both sides non-downward-closed: overlapping splits are required.
  uint64_t flt1 = filter_mask(c, f1);
  uint64_t flt2 = filter_mask(c, f2);
  uint64_t must1 = team & ~flt2;  // rows no satisfying T2 can absorb
  if (must1 & ~flt1) return false;
  uint64_t opt1 = team & flt1 & ~must1;
  return any_subset(opt1, c.limits.max_split_bits_general, "disjunction", [&](uint64_t s1) {
    uint64_t t1 = must1 | s1;
    if (!eval_modal(c, t1, f1)) return false;
    uint64_t rest = team & ~t1;
    uint64_t overlap = t1 & flt2;
    return any_subset(overlap, c.limits.max_split_bits_general, "disjunction",
                      [&](uint64_t s2) { return eval_modal(c, rest | s2, f2); });
  });
}

// Value tuple of vars at a world, first variable as the high bit.
uint32_t world_tuple(const ModalCtx& c, int w, const std::vector<VarId>& vars) {
  uint32_t t = 0;
  for (VarId v : vars) t = (t << 1) | ((c.m.valuation(v) >> w) & 1);
  return t;
}

bool eval_dep(ModalCtx& c, uint64_t team, const Formula& f) {
  std::unordered_map<uint64_t, bool> seen;
  auto args = f.dep_args();
  for (int w = 0; w < c.m.world_count; ++w) {
    if (!((team >> w) & 1)) continue;
    uint64_t key = 0;
    for (const auto& a : args) key = (key << 1) | ((flat_mask(c, a) >> w) & 1);
    bool tv = (flat_mask(c, f.dep_target()) >> w) & 1;
    auto [it, fresh] = seen.emplace(key, tv);
    if (!fresh && it->second != tv) return false;
  }
  return true;
}

bool eval_indep(ModalCtx& c, uint64_t team, const Formula& f) {
  // For all w,w' agreeing on the condition there is w'' matching w on
  // cond+left and w' on right.
  struct Entry {
    uint32_t cond, left, right;
  };
  std::vector<Entry> rows;
  for (int w = 0; w < c.m.world_count; ++w)
    if ((team >> w) & 1)
      rows.push_back({world_tuple(c, w, f.tuple_cond()), world_tuple(c, w, f.tuple_left()),
                      world_tuple(c, w, f.tuple_right())});
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> present;
  for (auto& e : rows) present.insert({e.cond, e.left, e.right});
  for (auto& a : rows)
    for (auto& b : rows) {
      if (a.cond != b.cond) continue;
      if (!present.count({a.cond, a.left, b.right})) return false;
    }
  return true;
}

bool eval_incl(ModalCtx& c, uint64_t team, const Formula& f) {
  std::set<uint32_t> right;
  for (int w = 0; w < c.m.world_count; ++w)
    if ((team >> w) & 1) right.insert(world_tuple(c, w, f.tuple_right()));
  for (int w = 0; w < c.m.world_count; ++w)
    if ((team >> w) & 1)
      if (!right.count(world_tuple(c, w, f.tuple_left()))) return false;
  return true;
}

bool eval_modal(ModalCtx& c, uint64_t team, const Formula& f) {
  if (team == 0) return true;  // the empty team satisfies all formulae
  if (is_flat(f)) return (team & ~flat_mask(c, f)) == 0;
  auto& slot = c.memo[f.id()];
  auto it = slot.find(team);
  if (it != slot.end()) return it->second;
  bool r;
  switch (f.kind()) {
    case Kind::And:
      r = eval_modal(c, team, f.left()) && eval_modal(c, team, f.right());
      break;
    case Kind::Or:
      r = eval_or_modal(c, team, f.left(), f.right(), false);
      break;
    case Kind::IDisj:
      r = eval_modal(c, team, f.left()) || eval_modal(c, team, f.right());
      break;
    case Kind::Box:
      r = eval_modal(c, successors(c.m, team), f.body());
      break;
    case Kind::Diamond: {
      r = false;
      SuccessorTeams cursor(c.m, team);
      while (auto t = cursor.next())
        if (eval_modal(c, *t, f.body())) {
          r = true;
          break;
        }
      break;
    }
    case Kind::Dep: r = eval_dep(c, team, f); break;
    case Kind::Indep: r = eval_indep(c, team, f); break;
    case Kind::Incl: r = eval_incl(c, team, f); break;
    case Kind::Exists:
    case Kind::Forall:
      throw FragmentError("propositional quantifiers have no modal team semantics");
    default:
      throw FragmentError("RML-only node under team semantics");
  }
  c.memo[f.id()].emplace(team, r);
  return r;
}

}  // namespace

bool check_modal(const KripkeModel& m, TeamMask team, const Formula& f,
                 const CheckLimits& limits) {
  if (f.feats() & (kFeatQuant | kFeatCNeg | kFeatRel))
    throw FragmentError("check_modal expects a modal team-fragment formula");
  if (team & ~m.all_worlds()) throw InvalidError("team contains worlds outside the model");
  for (VarId v : free_vars(f)) m.valuation(v);  // Var(phi) within the valuation domain
  ModalCtx ctx(m, limits);
  return eval_modal(ctx, team, f);
}

bool holds_at_world(const KripkeModel& m, int world, const Formula& f) {
  if (!is_flat(f) || (f.feats() & kFeatQuant))
    throw FragmentError("pointed truth is defined for flat modal formulae");
  if (world < 0 || world >= m.world_count) throw InvalidError("world out of range");
  CheckLimits lim;
  ModalCtx ctx(m, lim);
  return (flat_mask(ctx, f) >> world) & 1;
}

bool holds_at_assignment(const std::map<VarId, bool>& s, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = s.find(f.var());
      if (it == s.end()) throw InvalidError("assignment misses variable " + var_name(f.var()));
      return it->second;
    }
    case Kind::NegAtom: {
      auto it = s.find(f.var());
      if (it == s.end()) throw InvalidError("assignment misses variable " + var_name(f.var()));
      return !it->second;
    }
    case Kind::And: return holds_at_assignment(s, f.left()) && holds_at_assignment(s, f.right());
    case Kind::Or: return holds_at_assignment(s, f.left()) || holds_at_assignment(s, f.right());
    case Kind::Exists:
    case Kind::Forall: {
      auto s0 = s;
      s0[f.var()] = false;
      bool r0 = holds_at_assignment(s0, f.body());
      s0[f.var()] = true;
      bool r1 = holds_at_assignment(s0, f.body());
      return f.kind() == Kind::Exists ? (r0 || r1) : (r0 && r1);
    }
    default: throw FragmentError("classical satisfaction is defined on flat formulae");
  }
}

// ---------------------------------------------------------------------------
// Propositional side. A quantifier level fixes a universe team; the team under
// evaluation is a row-index mask into that universe.

namespace {

struct PropCtx {
  const CheckLimits& limits;
  PropTeam universe;
  uint64_t all;
  std::unordered_map<const void*, uint64_t> flat_masks;
  std::unordered_map<const void*, uint64_t> filter_masks;
  std::unordered_map<const void*, std::unordered_map<uint64_t, bool>> memo;

  PropCtx(const CheckLimits& lim, PropTeam u) : limits(lim), universe(std::move(u)) {
    if (universe.rows.size() > limits.max_rows)
      throw ResourceError("propositional universe exceeds the row limit");
    all = universe.rows.empty() ? 0 : low_mask(static_cast<int>(universe.rows.size()));
  }

  std::map<VarId, bool> assignment(size_t row_idx) const {
    std::map<VarId, bool> s;
    for (size_t i = 0; i < universe.domain.size(); ++i)
      s[universe.domain[i]] = (universe.rows[row_idx] >> i) & 1;
    return s;
  }
};

bool eval_prop(PropCtx& c, uint64_t team, const Formula& f);

uint64_t flat_row_mask(PropCtx& c, const Formula& f) {
  auto it = c.flat_masks.find(f.id());
  if (it != c.flat_masks.end()) return it->second;
  uint64_t r = 0;
  for (size_t i = 0; i < c.universe.rows.size(); ++i)
    if (holds_at_assignment(c.assignment(i), f)) r |= 1ull << i;
  c.flat_masks.emplace(f.id(), r);
  return r;
}

uint64_t filter_row_mask(PropCtx& c, const Formula& f) {
  if (is_flat(f)) return flat_row_mask(c, f);
  auto it = c.filter_masks.find(f.id());
  if (it != c.filter_masks.end()) return it->second;
  uint64_t r;
  switch (f.kind()) {
    case Kind::And: r = filter_row_mask(c, f.left()) & filter_row_mask(c, f.right()); break;
    case Kind::Or:
    case Kind::IDisj: r = filter_row_mask(c, f.left()) | filter_row_mask(c, f.right()); break;
    default: r = c.all; break;
  }
  c.filter_masks.emplace(f.id(), r);
  return r;
}

PropTeam team_of_mask(const PropCtx& c, uint64_t mask) {
  std::vector<uint32_t> rows;
  for (size_t i = 0; i < c.universe.rows.size(); ++i)
    if ((mask >> i) & 1) rows.push_back(c.universe.rows[i]);
  return PropTeam::of_rows(c.universe.domain, std::move(rows));
}

bool eval_or_prop(PropCtx& c, uint64_t team, const Formula& f1, const Formula& f2,
                  bool swapped) {
  if (is_flat(f1)) {
    uint64_t t1max = team & flat_row_mask(c, f1);
    uint64_t core = team & ~t1max;
    if (is_flat(f2)) return (core & ~flat_row_mask(c, f2)) == 0;
    if (is_downward_closed(f2)) return eval_prop(c, core, f2);
    uint64_t flt = filter_row_mask(c, f2);
    if (core & ~flt) return false;
    uint64_t dom = t1max & flt;
    return any_subset(dom, c.limits.max_split_bits, "disjunction",
                      [&](uint64_t s) { return eval_prop(c, core | s, f2); });
  }
  if (is_flat(f2) && !swapped) return eval_or_prop(c, team, f2, f1, true);
  if (is_downward_closed(f1) && is_downward_closed(f2)) {
    uint64_t flt1 = filter_row_mask(c, f1);
    uint64_t flt2 = filter_row_mask(c, f2);
    uint64_t must1 = team & ~flt2;
    uint64_t must2 = team & ~flt1;
    if ((must1 & ~flt1) || (must2 & ~flt2) || (must1 & must2)) return false;
    if (!eval_prop(c, must1, f1) || !eval_prop(c, must2, f2)) return false;
    std::vector<int> rows;
    for (int b = 0; b < 64; ++b)
      if ((team & ~must1 & ~must2) >> b & 1) rows.push_back(b);
    if (static_cast<int>(rows.size()) > c.limits.max_split_bits)
      throw ResourceError("disjunction: split domain exceeds the configured limit");
    return dc_split_search(rows, 0, must1, must2, [&](uint64_t mask, bool left) {
      return eval_prop(c, mask, left ? f1 : f2);
    });
  }
  if (is_downward_closed(f1)) {
    uint64_t dom = team & filter_row_mask(c, f2);
    return any_subset(dom, c.limits.max_split_bits, "disjunction", [&](uint64_t t2) {
      return eval_prop(c, t2, f2) && eval_prop(c, team & ~t2, f1);
    });
  }
  if (is_downward_closed(f2) && !swapped) return eval_or_prop(c, team, f2, f1, true);
  uint64_t flt1 = filter_row_mask(c, f1);
  uint64_t flt2 = filter_row_mask(c, f2);
  uint64_t must1 = team & ~flt2;
  if (must1 & ~flt1) return false;
  uint64_t opt1 = team & flt1 & ~must1;
  return any_subset(opt1, c.limits.max_split_bits_general, "disjunction", [&](uint64_t s1) {
    uint64_t t1 = must1 | s1;
    if (!eval_prop(c, t1, f1)) return false;
    uint64_t rest = team & ~t1;
    uint64_t overlap = t1 & flt2;
    return any_subset(overlap, c.limits.max_split_bits_general, "disjunction",
                      [&](uint64_t s2) { return eval_prop(c, rest | s2, f2); });
  });
}

// Duplicated universe for a quantifier on p, with the team carried over.
struct Extended {
  PropCtx ctx;
  std::vector<std::pair<int, int>> ext;  // per parent row: indices of the 0/1 extensions

  Extended(PropCtx& parent, VarId p)
      : ctx(parent.limits, duplicate(parent.universe, p)) {
    int idx = ctx.universe.var_index(p);
    uint32_t bit = 1u << idx;
    ext.reserve(parent.universe.rows.size());
    for (uint32_t r : parent.universe.rows)
      ext.push_back({row_index(r & ~bit), row_index(r | bit)});
  }

  int row_index(uint32_t row) const {
    auto& rows = ctx.universe.rows;
    auto it = std::lower_bound(rows.begin(), rows.end(), row);
    if (it == rows.end() || *it != row) throw InvalidError("extension row missing");
    return static_cast<int>(it - rows.begin());
  }
};

// Detects a conjunct dep(a1..ak, p) with atomic args not mentioning p; any
// witnessing supplementation is then a single-valued function of the argument
// values, which cuts the search to one bit per argument class.
bool dep_target_classes(PropCtx& c, const Formula& body, VarId p, uint64_t team,
                        std::vector<int>& class_of) {
  std::vector<Formula> stack = {body};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.kind() == Kind::And) {
      stack.push_back(g.left());
      stack.push_back(g.right());
      continue;
    }
    if (g.kind() != Kind::Dep) continue;
    if (g.dep_target().kind() != Kind::Atom || g.dep_target().var() != p) continue;
    bool ok = true;
    std::vector<int> arg_idx;
    for (const auto& a : g.dep_args()) {
      if (a.kind() != Kind::Atom || a.var() == p) {
        ok = false;
        break;
      }
      int idx = c.universe.var_index(a.var());
      if (idx < 0) {
        ok = false;
        break;
      }
      arg_idx.push_back(idx);
    }
    if (!ok) continue;
    std::map<uint32_t, int> classes;
    class_of.assign(c.universe.rows.size(), -1);
    for (size_t i = 0; i < c.universe.rows.size(); ++i) {
      if (!((team >> i) & 1)) continue;
      uint32_t key = 0;
      for (int idx : arg_idx) key = (key << 1) | ((c.universe.rows[i] >> idx) & 1);
      auto [it, fresh] = classes.emplace(key, static_cast<int>(classes.size()));
      class_of[i] = it->second;
    }
    return true;
  }
  return false;
}

bool eval_exists(PropCtx& c, uint64_t team, const Formula& f) {
  VarId p = f.var();
  const Formula& body = f.body();
  Extended e(c, p);

  std::vector<int> live;  // parent rows in the team
  for (size_t i = 0; i < c.universe.rows.size(); ++i)
    if ((team >> i) & 1) live.push_back(static_cast<int>(i));

  uint64_t flt = filter_row_mask(e.ctx, body);
  std::vector<uint8_t> allowed(live.size());
  for (size_t j = 0; j < live.size(); ++j) {
    auto [i0, i1] = e.ext[live[j]];
    uint8_t a = 0;
    if ((flt >> i0) & 1) a |= 1;
    if ((flt >> i1) & 1) a |= 2;
    if (a == 0) return false;
    allowed[j] = a;
  }

  auto run = [&](const std::vector<uint8_t>& choice) {
    uint64_t sub = 0;
    for (size_t j = 0; j < live.size(); ++j) {
      auto [i0, i1] = e.ext[live[j]];
      if (choice[j] & 1) sub |= 1ull << i0;
      if (choice[j] & 2) sub |= 1ull << i1;
    }
    return eval_prop(e.ctx, sub, body);
  };

  // Flat body: rows choose values independently, and `allowed` is exact.
  if (is_flat(body)) return true;

  std::vector<int> class_of;
  if (dep_target_classes(c, body, p, team, class_of)) {
    int nclasses = 0;
    for (int i : live) nclasses = std::max(nclasses, class_of[i] + 1);
    if (nclasses <= 24) {
      for (uint32_t bits = 0; bits < (1u << nclasses); ++bits) {
        std::vector<uint8_t> choice(live.size());
        bool feasible = true;
        for (size_t j = 0; j < live.size() && feasible; ++j) {
          uint8_t v = ((bits >> class_of[live[j]]) & 1) ? 2 : 1;
          if (!(allowed[j] & v)) feasible = false;
          choice[j] = v;
        }
        if (feasible && run(choice)) return true;
      }
      return false;
    }
  }

  // Mixed-radix enumeration, images in the order {0} < {1} < {0,1}; the first
  // team row is the most significant digit. Downward-closed bodies only need
  // single-valued functions; the filter removes unusable values up front.
  bool dc = is_downward_closed(body);
  std::vector<std::vector<uint8_t>> options(live.size());
  for (size_t j = 0; j < live.size(); ++j) {
    for (uint8_t v : {uint8_t{1}, uint8_t{2}, uint8_t{3}}) {
      if (dc && v == 3) continue;
      if (v & ~allowed[j]) continue;
      options[j].push_back(v);
    }
    if (options[j].empty()) return false;
  }
  std::vector<size_t> digit(live.size(), 0);
  while (true) {
    std::vector<uint8_t> choice(live.size());
    for (size_t j = 0; j < live.size(); ++j) choice[j] = options[j][digit[j]];
    if (run(choice)) return true;
    int pos = static_cast<int>(live.size()) - 1;
    while (pos >= 0 && digit[pos] + 1 == options[pos].size()) digit[pos--] = 0;
    if (pos < 0) return false;
    ++digit[pos];
  }
}

bool eval_prop(PropCtx& c, uint64_t team, const Formula& f) {
  if (team == 0) return true;
  if ((f.feats() & kFeatQuant) == 0) {
    // Quantifier-free: delegate through the induced Kripke model.
    auto& slot = c.memo[f.id()];
    auto it = slot.find(team);
    if (it != slot.end()) return it->second;
    auto [model, all] = induced_kripke(team_of_mask(c, team));
    bool r = check_modal(model, all, f, c.limits);
    c.memo[f.id()].emplace(team, r);
    return r;
  }
  auto& slot = c.memo[f.id()];
  auto it = slot.find(team);
  if (it != slot.end()) return it->second;
  bool r;
  switch (f.kind()) {
    case Kind::And: r = eval_prop(c, team, f.left()) && eval_prop(c, team, f.right()); break;
    case Kind::Or: r = eval_or_prop(c, team, f.left(), f.right(), false); break;
    case Kind::IDisj: r = eval_prop(c, team, f.left()) || eval_prop(c, team, f.right()); break;
    case Kind::Exists: r = eval_exists(c, team, f); break;
    case Kind::Forall: {
      Extended e(c, f.var());
      uint64_t sub = 0;
      for (size_t i = 0; i < c.universe.rows.size(); ++i)
        if ((team >> i) & 1) {
          sub |= 1ull << e.ext[i].first;
          sub |= 1ull << e.ext[i].second;
        }
      r = eval_prop(e.ctx, sub, f.body());
      break;
    }
    default: throw FragmentError("unexpected node in the QPL family");
  }
  c.memo[f.id()].emplace(team, r);
  return r;
}

}  // namespace

bool check_prop(const PropTeam& x, const Formula& f, const CheckLimits& limits) {
  if (!is_prop_family(f))
    throw FragmentError("check_prop expects a quantified propositional formula");
  for (VarId v : free_vars(f))
    if (x.var_index(v) < 0)
      throw InvalidError("free variable '" + var_name(v) + "' missing from the team domain");
  PropCtx ctx(limits, x);
  return eval_prop(ctx, ctx.all, f);
}

// ---------------------------------------------------------------------------
// Pointed RML semantics.

namespace {

struct RmlCtx {
  const KripkeModel& m;
  uint64_t all;
  std::unordered_map<const void*, uint64_t> masks;
};

uint64_t rml_mask(RmlCtx& c, const Formula& f) {
  auto it = c.masks.find(f.id());
  if (it != c.masks.end()) return it->second;
  uint64_t r = 0;
  switch (f.kind()) {
    case Kind::Atom: r = c.m.valuation(f.var()); break;
    case Kind::CNeg: r = c.all & ~rml_mask(c, f.body()); break;
    case Kind::And: r = rml_mask(c, f.left()) & rml_mask(c, f.right()); break;
    case Kind::Box: {
      uint64_t child = rml_mask(c, f.body());
      for (int w = 0; w < c.m.world_count; ++w)
        if ((c.m.succ[w] & ~child) == 0) r |= 1ull << w;
      break;
    }
    case Kind::Rel: {
      auto rit = c.m.relations.find(f.rel_symbol());
      if (rit == c.m.relations.end())
        throw InvalidError("missing relation interpretation for " + f.rel_symbol());
      const Relation& rel = rit->second;
      if (rel.arity != static_cast<int>(f.child_count()))
        throw InvalidError("relation arity mismatch for " + f.rel_symbol());
      std::vector<uint64_t> argmasks;
      for (size_t i = 0; i < f.child_count(); ++i) argmasks.push_back(rml_mask(c, f.child(i)));
      for (int w = 0; w < c.m.world_count; ++w) {
        uint32_t tuple = 0;
        for (uint64_t am : argmasks) tuple = (tuple << 1) | ((am >> w) & 1);
        if (rel.member(tuple)) r |= 1ull << w;
      }
      break;
    }
    default: throw FragmentError("node outside the RML grammar");
  }
  c.masks.emplace(f.id(), r);
  return r;
}

}  // namespace

bool check_rml_pointed(const KripkeModel& m, int world, const Formula& f) {
  if (!is_rml(f)) throw FragmentError("check_rml_pointed expects an RML formula");
  if (world < 0 || world >= m.world_count) throw InvalidError("world out of range");
  RmlCtx ctx{m, m.all_worlds(), {}};
  return (rml_mask(ctx, f) >> world) & 1;
}

}  // namespace teamlogic
