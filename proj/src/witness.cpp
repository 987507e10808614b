#include "teamlogic/witness.hpp"

namespace teamlogic {

namespace {
void collect_deps(const Formula& f, Path& path, std::vector<DepOccurrence>& out) {
  if (f.kind() == Kind::Dep) {
    out.push_back({path, f});
    return;  // dep arguments are ML, no nested dependence atoms
  }
  for (size_t i = 0; i < f.child_count(); ++i) {
    path.push_back(i);
    collect_deps(f.child(i), path, out);
    path.pop_back();
  }
}
}  // namespace

std::vector<DepOccurrence> dep_atoms(const Formula& f) {
  std::vector<DepOccurrence> out;
  Path path;
  collect_deps(f, path, out);
  return out;
}

Formula witness_formula(const WitnessFunction& f, const Formula& dep_atom) {
  if (dep_atom.kind() != Kind::Dep) throw InvalidError("witness_formula expects a dep atom");
  auto args = dep_atom.dep_args();
  int n = static_cast<int>(args.size());
  if (f.arity != n) throw InvalidError("witness arity differs from the dependence atom");
  const Formula& target = dep_atom.dep_target();
  auto signed_form = [](const Formula& g, bool positive) {
    return positive ? g : negate_nnf(g);
  };
  Formula out;
  for (int a = (1 << n) - 1; a >= 0; --a) {
    Formula conj;
    for (int i = 0; i < n; ++i) {
      bool ai = (a >> (n - 1 - i)) & 1;  // first argument = high bit
      Formula lit = signed_form(args[i], ai);
      conj = conj.valid() ? Formula::land(conj, lit) : lit;
    }
    Formula last = signed_form(target, f.apply(static_cast<uint32_t>(a)));
    conj = conj.valid() ? Formula::land(conj, last) : last;
    out = out.valid() ? Formula::lor(out, conj) : conj;
  }
  return out;
}

namespace {
Formula substitute_rec(const Formula& f, const WitnessSequence& ws, size_t& k) {
  if (f.kind() == Kind::Dep) {
    if (k >= ws.size()) throw InvalidError("witness sequence shorter than the occurrence list");
    return witness_formula(ws[k++], f);
  }
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
    case Kind::Indep:
    case Kind::Incl: return f;
    case Kind::And: {
      Formula l = substitute_rec(f.left(), ws, k);
      return Formula::land(l, substitute_rec(f.right(), ws, k));
    }
    case Kind::Or: {
      Formula l = substitute_rec(f.left(), ws, k);
      return Formula::lor(l, substitute_rec(f.right(), ws, k));
    }
    case Kind::IDisj: {
      Formula l = substitute_rec(f.left(), ws, k);
      return Formula::idisj(l, substitute_rec(f.right(), ws, k));
    }
    case Kind::Box: return Formula::box(substitute_rec(f.body(), ws, k));
    case Kind::Diamond: return Formula::diamond(substitute_rec(f.body(), ws, k));
    case Kind::Exists: return Formula::exists(f.var(), substitute_rec(f.body(), ws, k));
    case Kind::Forall: return Formula::forall(f.var(), substitute_rec(f.body(), ws, k));
    default: throw FragmentError("witness substitution is defined on the EMDL family");
  }
}
}  // namespace

Formula substitute_witnesses(const Formula& f, const WitnessSequence& ws) {
  size_t k = 0;
  Formula out = substitute_rec(f, ws, k);
  if (k != ws.size()) throw InvalidError("witness sequence longer than the occurrence list");
  return out;
}

namespace {
Formula star_rec(const Formula& f, const std::vector<std::string>& symbols, size_t& k) {
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::NegAtom: return Formula::cneg(Formula::atom(f.var()));
    case Kind::And: {
      Formula l = star_rec(f.left(), symbols, k);
      return Formula::land(l, star_rec(f.right(), symbols, k));
    }
    case Kind::Or: {
      Formula l = star_rec(f.left(), symbols, k);
      Formula r = star_rec(f.right(), symbols, k);
      return Formula::cneg(Formula::land(Formula::cneg(l), Formula::cneg(r)));
    }
    case Kind::Box: return Formula::box(star_rec(f.body(), symbols, k));
    case Kind::Diamond:
      return Formula::cneg(Formula::box(Formula::cneg(star_rec(f.body(), symbols, k))));
    case Kind::Dep: {
      if (k >= symbols.size()) throw InvalidError("symbol assignment shorter than the occurrence list");
      std::string sym = symbols[k++];
      std::vector<Formula> args;
      size_t dummy = 0;
      std::vector<std::string> none;
      for (const auto& a : f.dep_args()) args.push_back(star_rec(a, none, dummy));
      args.push_back(star_rec(f.dep_target(), none, dummy));
      return Formula::rel(std::move(sym), std::move(args));
    }
    default: throw FragmentError("star translation is defined on the EMDL family");
  }
}
}  // namespace

Formula star_translate(const Formula& f, const std::vector<std::string>& symbols) {
  size_t k = 0;
  Formula out = star_rec(f, symbols, k);
  if (k != symbols.size()) throw InvalidError("symbol assignment longer than the occurrence list");
  return out;
}

std::map<std::string, Relation> oracle_from_witnesses(const WitnessSequence& ws,
                                                      const std::vector<std::string>& symbols) {
  if (ws.size() != symbols.size())
    throw InvalidError("witness sequence and symbol assignment differ in length");
  std::map<std::string, Relation> out;
  for (size_t i = 0; i < ws.size(); ++i) {
    Relation rel;
    rel.arity = ws[i].arity + 1;
    for (uint32_t a = 0; a < (1u << ws[i].arity); ++a)
      rel.tuples.push_back((a << 1) | (ws[i].apply(a) ? 1u : 0u));
    auto [it, fresh] = out.emplace(symbols[i], rel);
    if (!fresh && !(it->second.arity == rel.arity && it->second.tuples == rel.tuples))
      throw InvalidError("symbol assigned to two distinct witness functions");
  }
  return out;
}

}  // namespace teamlogic
