#include <doctest.h>

#include "teamlogic/generators.hpp"
#include "teamlogic/models.hpp"
#include "teamlogic/parser.hpp"

using namespace teamlogic;

namespace {
KripkeModel model_with_edges(int worlds, std::vector<std::pair<int, int>> edges) {
  KripkeModel m;
  m.world_count = worlds;
  m.succ.assign(worlds, 0);
  for (auto [a, b] : edges) m.add_edge(a, b);
  return m;
}
}  // namespace

TEST_CASE("successors of a team") {
  KripkeModel m = model_with_edges(3, {{0, 1}, {0, 2}});
  CHECK(successors(m, 0b001) == 0b110);
  CHECK(successors(m, 0) == 0);
  KripkeModel cyc = model_with_edges(2, {{0, 1}, {1, 0}});
  CHECK(successors(cyc, 0b11) == 0b11);
}

TEST_CASE("legal successor teams enumerate in bitmask order") {
  KripkeModel m1 = model_with_edges(2, {{0, 1}});
  SuccessorTeams one(m1, 0b01);
  CHECK(one.next() == TeamMask{0b10});
  CHECK(!one.next().has_value());

  KripkeModel m2 = model_with_edges(3, {{0, 1}, {0, 2}});
  SuccessorTeams s(m2, 0b001);
  std::vector<TeamMask> seen;
  while (auto t = s.next()) seen.push_back(*t);
  CHECK(seen == std::vector<TeamMask>{0b010, 0b100, 0b110});

  KripkeModel dead = model_with_edges(1, {});
  SuccessorTeams none(dead, 0b1);
  CHECK(!none.next().has_value());

  // empty team: the empty successor team is legal
  SuccessorTeams empty(m2, 0);
  CHECK(empty.next() == TeamMask{0});
  CHECK(!empty.next().has_value());
}

TEST_CASE("successor teams satisfy the covering condition") {
  Rng rng(5);
  std::vector<VarId> vars = {intern_var("p")};
  for (int i = 0; i < 50; ++i) {
    KripkeModel m = random_kripke(rng, 4, vars);
    TeamMask team = static_cast<TeamMask>(rng.pick(0, 15));
    TeamMask pool = successors(m, team);
    SuccessorTeams s(m, team);
    std::set<TeamMask> seen;
    while (auto t = s.next()) {
      CHECK((*t & ~pool) == 0);
      CHECK(seen.insert(*t).second);  // pairwise distinct
      for (int w = 0; w < 4; ++w)
        if ((team >> w) & 1) CHECK((m.succ[w] & *t) != 0);
    }
  }
}

TEST_CASE("duplication extends or overwrites") {
  VarId p = intern_var("p"), q = intern_var("q");
  PropTeam x = PropTeam::of_rows({q}, {1});
  PropTeam d = duplicate(x, p);
  CHECK(d.rows.size() == 2);
  CHECK(d.domain == std::vector<VarId>{q, p});

  CHECK(duplicate(PropTeam::over({q}), p).empty());

  PropTeam y = PropTeam::of_rows({p}, {0});
  PropTeam dy = duplicate(y, p);
  CHECK(dy.rows == std::vector<uint32_t>{0, 1});
}

TEST_CASE("supplementation respects per-row images") {
  VarId p = intern_var("p"), q = intern_var("q");
  PropTeam x = PropTeam::of_rows({q}, {0});
  PropTeam s = supplement(x, {2}, p);  // image {1}
  CHECK(s.rows == std::vector<uint32_t>{0b10});

  PropTeam x2 = PropTeam::of_rows({q}, {0, 1});
  PropTeam s2 = supplement(x2, {3, 1}, p);  // {0,1} then {0}
  CHECK(s2.rows.size() == 3);

  CHECK(supplement(PropTeam::over({q}), {}, p).empty());
  CHECK_THROWS_AS(supplement(x2, {3}, p), InvalidError);      // partial
  CHECK_THROWS_AS(supplement(x2, {0, 1}, p), InvalidError);   // empty image
}

TEST_CASE("duplication properties") {
  Rng rng(7);
  VarId p = intern_var("p");
  std::vector<VarId> vars = {intern_var("q"), intern_var("r")};
  for (int i = 0; i < 100; ++i) {
    PropTeam x = random_team(rng, vars, 6);
    PropTeam d = duplicate(x, p);
    CHECK(d.rows.size() <= 2 * x.rows.size());
    std::set<VarId> rest(vars.begin(), vars.end());
    CHECK(restrict(d, rest) == restrict(x, rest));
    // supplementing with the full image equals duplication
    SupplementFn full(x.rows.size(), 3);
    CHECK(supplement(x, full, p) == d);
  }
}

TEST_CASE("restriction projects and collapses") {
  VarId p = intern_var("p"), q = intern_var("q");
  PropTeam x = PropTeam::of_rows({p, q}, {0b00, 0b10});  // {p=0,q=0},{p=0,q=1}
  PropTeam r = restrict(x, {p});
  CHECK(r.domain == std::vector<VarId>{p});
  CHECK(r.rows == std::vector<uint32_t>{0});

  CHECK(restrict(x, {p, q}) == x);
  CHECK(restrict(PropTeam::over({p}), {p}).empty());
  CHECK_THROWS_AS(restrict(x, {intern_var("zz")}), InvalidError);
}

TEST_CASE("induced Kripke models") {
  VarId p = intern_var("p"), q = intern_var("q");
  PropTeam x = PropTeam::of_rows({p, q}, {0b01, 0b10});
  auto [m, team] = induced_kripke(x);
  CHECK(m.world_count == 2);
  CHECK(team == 0b11);
  for (uint64_t s : m.succ) CHECK(s == 0);
  // row [p=1,q=0] is world 0 (rows sorted ascending: 0b01 then 0b10)
  CHECK(((m.valuation(p) >> 0) & 1) == 1);
  CHECK(((m.valuation(q) >> 0) & 1) == 0);

  auto [em, eteam] = induced_kripke(PropTeam::over({p}));
  CHECK(em.world_count == 0);
  CHECK(eteam == 0);
}
