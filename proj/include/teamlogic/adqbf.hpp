// teamlogic :: alternating dependency QBF instances, truth evaluation, generators

#ifndef TEAMLOGIC_ADQBF_HPP
#define TEAMLOGIC_ADQBF_HPP

#include <cstdint>

#include "teamlogic/syntax.hpp"
#include "teamlogic/witness.hpp"

namespace teamlogic {

// Quantifier-free matrix over the universal variables and applied function
// symbols. Kept out of the public Formula type; lowered on demand.
struct Matrix {
  enum class Kind : uint8_t { Var, NegVar, App, NegApp, And, Or };
  Kind kind;
  VarId var = 0;        // Var / NegVar
  int fn = -1;          // App / NegApp: index into the instance's symbol list
  std::vector<Matrix> kids;

  static Matrix atom(VarId v, bool neg) { return {neg ? Kind::NegVar : Kind::Var, v, -1, {}}; }
  static Matrix app(int fn_index, bool neg) {
    return {neg ? Kind::NegApp : Kind::App, 0, fn_index, {}};
  }
  static Matrix land(Matrix a, Matrix b);
  static Matrix lor(Matrix a, Matrix b);
};

struct FnSymbol {
  std::string name;
  std::vector<VarId> constraint;  // drawn from the universal variables
  int arity() const { return static_cast<int>(constraint.size()); }
};

struct QuantBlock {
  bool universal = false;
  std::vector<int> fns;  // indices into symbols
};

enum class AdqbfShape { sigma1, pi2 };

struct AdqbfInstance {
  AdqbfShape shape = AdqbfShape::sigma1;
  std::vector<FnSymbol> symbols;
  std::vector<QuantBlock> blocks;  // strictly alternating; only a pi2 first block may be empty
  std::vector<VarId> pvars;        // the universally quantified propositional variables
  Matrix matrix;

  void validate() const;
};

struct AdqbfCaps {
  uint64_t max_table_space_sum = 1ull << 16;   // sum over symbols of 2^(2^arity)
  uint64_t max_table_space_product = 1ull << 20;
};

bool evaluate_adqbf(const AdqbfInstance& inst, const AdqbfCaps& caps = {});

// Deterministic per seed. n universal variables p1..pn, `fn_count` function
// symbols with constraint arities up to `max_arity`.
AdqbfInstance random_adqbf(uint64_t seed, AdqbfShape shape, int n, int fn_count, int max_arity);

// Matrix negated in NNF and every quantifier flipped (including the p-block
// reading); used by the duality regression.
AdqbfInstance dual_adqbf(const AdqbfInstance& inst);

AdqbfInstance adqbf_from_json(const std::string& text);
std::string adqbf_to_json(const AdqbfInstance& inst);

// The matrix as a propositional formula, each application f_i(c_i) replaced by
// the given variable.
Formula lower_matrix(const AdqbfInstance& inst, const std::vector<VarId>& app_vars);

}  // namespace teamlogic

#endif
