// teamlogic :: witness functions for dependence atoms, D(f,d), star translation

#ifndef TEAMLOGIC_WITNESS_HPP
#define TEAMLOGIC_WITNESS_HPP

#include <map>

#include "teamlogic/models.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

// f : {0,1}^arity -> {0,1}. Table bit at index b is f(b); the first argument
// is the high bit of b. Tables enumerate as integers counting upward.
struct WitnessFunction {
  int arity = 0;
  uint32_t table = 0;

  bool apply(uint32_t args) const { return (table >> args) & 1; }
  static uint64_t table_count(int arity) { return 1ull << (1u << arity); }
};

// One function per dependence-atom occurrence, in preorder.
using WitnessSequence = std::vector<WitnessFunction>;

struct DepOccurrence {
  Path path;
  Formula atom;
  int arity() const { return static_cast<int>(atom.dep_args().size()); }
};

// Left-to-right preorder listing, possibly with repetitions.
std::vector<DepOccurrence> dep_atoms(const Formula& f);

// D(f,d): the 2^n-way splitting disjunction over argument value vectors,
// enumerated from all-true down to all-false.
Formula witness_formula(const WitnessFunction& f, const Formula& dep_atom);

// phi(f/d): every dependence atom replaced by its witnessing ML formula.
Formula substitute_witnesses(const Formula& f, const WitnessSequence& ws);

// EMDL -> RML: dep atoms become relational atoms under the given per-occurrence
// symbols; !, <>, and | rewrite to ~, ~[]~, and ~(~ . & ~ .).
Formula star_translate(const Formula& f, const std::vector<std::string>& symbols);

// S := {(a,b) : f(a)=b} per occurrence symbol.
std::map<std::string, Relation> oracle_from_witnesses(const WitnessSequence& ws,
                                                      const std::vector<std::string>& symbols);

}  // namespace teamlogic

#endif
