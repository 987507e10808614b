// teamlogic :: prenex form, quantifier-to-modality tree encoding, ADQBF
// constructions, inclusion-in-independence translation

#ifndef TEAMLOGIC_REDUCTIONS_HPP
#define TEAMLOGIC_REDUCTIONS_HPP

#include "teamlogic/adqbf.hpp"
#include "teamlogic/deciders.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

struct ReductionOutput {
  std::vector<Formula> sigma;
  Formula psi;
  std::map<std::string, std::string> varmap;  // bookkeeping of introduced variables
};

// Prenex normal form for the QPL family. Universal quantifiers are pulled over
// splitting disjunctions only when the quantified scope is downward closed;
// with verify_rewrites set, the non-schematic pulls are additionally validated
// against the exact team oracle, and a failed validation raises InvalidError
// instead of producing an unverified rewrite.
Formula prenex(const Formula& f, bool verify_rewrites = false, const Caps& caps = {});

// Store(p,n) = (p & []^n p) | (!p & []^n !p)
Formula store_formula(VarId q, int n);
// Branch(p,n) = <>p & <>!p & [] Store(p,n)
Formula branch_formula(VarId p, int n);
// tree(V,p,n): every q in V stored to depth n, level i branching on p_{i+1}.
Formula tree_formula(const std::set<VarId>& v, const std::vector<VarId>& p, int n);

enum class DecisionKind { sat, valid, entail };

// QPDL decision problems to MDL: quantifiers become modalities under the
// complete-binary-tree encoding over a shared prefix variable list.
ReductionOutput qpdl_to_mdl(DecisionKind kind, const std::vector<Formula>& premises,
                            const Formula& conclusion, const Caps& caps = {});

// Pi2-ADQBF truth to PDL entailment: Sigma = {dep(c_i, q_i)} over the
// universal block, psi = theta | dep-disjunction over the existential block.
ReductionOutput adqbf_pi2_to_pdl_entailment(const AdqbfInstance& inst);

// Pi2-ADQBF truth to QPLInd validity via the purification formulas; the
// output is pure QPLInd (dep as ind, inclusions through the translation).
ReductionOutput adqbf_to_qplind_validity(const AdqbfInstance& inst);

// Complement of Sigma1-ADQBF truth to QPLInc entailment.
ReductionOutput adqbf_sigma1_complement_to_qplinc_entailment(const AdqbfInstance& inst);

// Galliani's translation of one inclusion atom into QPLInd; fresh variables
// avoid `avoid` as well as both tuples.
Formula inclusion_to_independence(const std::vector<VarId>& left,
                                  const std::vector<VarId>& right,
                                  const std::set<VarId>& avoid = {});

}  // namespace teamlogic

#endif
