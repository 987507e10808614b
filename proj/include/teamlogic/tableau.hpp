// teamlogic :: recursive Sat(A,B,C,D) procedure for pointed RML satisfiability
// against a fixed relation oracle

#ifndef TEAMLOGIC_TABLEAU_HPP
#define TEAMLOGIC_TABLEAU_HPP

#include <map>

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

class RelationOracle {
public:
  virtual ~RelationOracle() = default;
  virtual const Relation* find(const std::string& symbol) const = 0;
  const Relation& get(const std::string& symbol) const {
    const Relation* r = find(symbol);
    if (!r) throw InvalidError("no oracle interpretation for relation " + symbol);
    return *r;
  }
};

class MapOracle : public RelationOracle {
public:
  MapOracle() = default;
  explicit MapOracle(std::map<std::string, Relation> rels) : rels_(std::move(rels)) {}
  const Relation* find(const std::string& symbol) const override {
    auto it = rels_.find(symbol);
    return it == rels_.end() ? nullptr : &it->second;
  }

private:
  std::map<std::string, Relation> rels_;
};

// A: asserted true, B: asserted false, C: boxed true, D: boxed false.
struct TableauState {
  std::vector<Formula> asserted_true;
  std::vector<Formula> asserted_false;
  std::vector<Formula> boxed_true;
  std::vector<Formula> boxed_false;
};

// The leaf guard with empty A\B conflicts: the source algorithm tests
// C and D for a shared member before recursing into successor states, which
// skips the successor check when C and D are disjoint. The successor-driven
// rule instead recurses whenever D is non-empty; an exhaustive model-search
// suite adjudicates between the two (see tests), and successor-driven is the
// default because the literal guard returns true on unsatisfiable inputs
// such as [] S_1(p) & ~[] p over S_1 = {(1)}.
enum class LeafRule { successor_driven, paper_literal };

struct TableauStats {
  int max_depth = 0;
  uint64_t calls = 0;
};

bool tableau_sat(const TableauState& state, const RelationOracle& oracle,
                 TableauStats* stats = nullptr,
                 LeafRule rule = LeafRule::successor_driven);

// Sat({phi}, {}, {}, {}).
bool rml_satisfiable(const Formula& f, const RelationOracle& oracle,
                     TableauStats* stats = nullptr,
                     LeafRule rule = LeafRule::successor_driven);

}  // namespace teamlogic

#endif
