#pragma once

// Finite-dimensional right modules over a fixed algebra, module maps, and
// the constructive module-category toolbox: hom spaces, kernels, quotients,
// radicals, projective covers, injective hulls, decompositions, extensions.
//
// Elements are row vectors; a acts by v |-> v * actionOf(a).

#include <cstdint>
#include <optional>
#include <vector>

#include "stmod/algebra.hpp"

namespace stmod {

struct Module {
  AlgebraPtr A;
  int dim = 0;
  std::string name;
  std::vector<FpMatrix> action;  // one dim x dim matrix per algebra basis element

  FpMatrix actionOf(const FpMatrix& a) const;
  void validate() const;
};

struct ModuleMap {
  Module src, tgt;
  FpMatrix matrix;  // src.dim x tgt.dim

  bool commutesWithAction() const;
};

Module zeroModule(const AlgebraPtr& a);
Module regularModule(const AlgebraPtr& a);

ModuleMap identityMap(const Module& m);
ModuleMap zeroMap(const Module& src, const Module& tgt);
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);  // f then g

struct SumDecomposition {
  Module total;
  std::vector<ModuleMap> inclusions;   // piece -> total
  std::vector<ModuleMap> projections;  // total -> piece
};
SumDecomposition directSum(const std::vector<Module>& pieces);

// Smallest submodule (as a row basis) containing the given row vectors.
FpMatrix spin(const Module& m, const FpMatrix& seedRows);

struct Submodule {
  Module mod;
  ModuleMap inclusion;  // mod -> ambient
};
struct Quotient {
  Module mod;
  ModuleMap projection;  // ambient -> mod
  FpMatrix reps;         // mod.dim x ambient.dim, a linear section of the projection
};

Submodule submodule(const Module& m, const FpMatrix& closedRowBasis);
Quotient quotientModule(const Module& m, const FpMatrix& closedRowBasis);

std::vector<FpMatrix> homBasis(const Module& x, const Module& y);
int homDim(const Module& x, const Module& y);

Submodule kernel(const ModuleMap& f);
Submodule image(const ModuleMap& f);   // submodule of the target
Quotient cokernel(const ModuleMap& f);

Submodule radicalSubmodule(const Module& m);  // M * J
Submodule socleSubmodule(const Module& m);    // annihilator of J
Quotient topQuotient(const Module& m);        // M / MJ

// Solve h * pi = f with h a module map; exists whenever q is projective and
// pi surjective (and possibly in other cases).
std::optional<ModuleMap> factorThrough(const ModuleMap& f, const ModuleMap& pi);

enum class Verdict { Yes, No, Inconclusive };

struct IsoResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<ModuleMap> witness;
};
// Exhaustive over the hom space when p^dim is small (certified verdict),
// seeded random search otherwise.
IsoResult isIsomorphic(const Module& x, const Module& y, uint64_t seed = 1, int trialBudget = 512);

struct Summand {
  Module piece;
  ModuleMap inclusion;   // piece -> m
  ModuleMap projection;  // m -> piece
};
struct Decomposition {
  std::vector<Summand> summands;
  bool certified = true;  // endomorphism search was exhaustive at every split
};
Decomposition decompose(const Module& m, uint64_t seed = 1, int trialBudget = 4096);

// One simple submodule; certified smallest when the search is exhaustive.
Submodule simpleSubmodule(const Module& m);

// Simple factors of some composition series, innermost first.
std::vector<Module> compositionFactors(const Module& m);

// Indecomposable projectives P_i = e_i A up to isomorphism, and their tops.
struct IndecProjectives {
  std::vector<Module> projectives;
  std::vector<Module> simples;
  std::vector<ModuleMap> tops;     // projection P_i -> S_i
  std::vector<int> idemToClass;    // idempotent index -> class index
};
const IndecProjectives& indecProjectives(const AlgebraPtr& a);

// Index of the class isomorphic to m among projectives (or simples); -1 if none.
int projectiveClassOf(const Module& m);
int simpleClassOf(const Module& m);

struct Cover {
  Module proj;            // direct sum of standard indecomposable projectives
  std::vector<int> parts; // class indices of the summands
  ModuleMap map;          // proj -> m, surjective with superfluous kernel
};
Cover projectiveCover(const Module& m);

bool isProjectiveModule(const Module& m);

struct Hull {
  Module inj;
  ModuleMap map;  // m -> inj, injective essential embedding
};
Hull injectiveHull(const Module& m);

// Direct sum of the non-projective summands of m.
struct Stripped {
  Module mod;
  std::vector<int> droppedProjectiveParts;  // class indices of removed projectives
};
Stripped stripProjectiveSummands(const Module& m, uint64_t seed = 1);

struct ShortExact {
  Module X, Y, Z;
  ModuleMap f;  // X -> Y
  ModuleMap g;  // Y -> Z
};
void checkShortExact(const ShortExact& s);

int ext1Dim(const Module& z, const Module& x);
// Extensions of z by x realizing a basis of Ext^1, plus the split one when
// includeSplit is set.
std::vector<ShortExact> ext1Extensions(const Module& z, const Module& x, bool includeSplit = false);

// --- bootstrap helpers used while constructing raw algebras ---------------
FpMatrix radicalOfAlgebraFromSimples(const AlgebraPtr& a);
std::vector<Idempotent> computePrimitiveIdempotents(const AlgebraPtr& a);

// Per-algebra lazy caches (also used by the functor layer).
struct Algebra::Caches {
  std::optional<Module> regular;
  std::optional<IndecProjectives> indecs;
  std::vector<int> projInjectiveFlags;  // per projective class: 1/0, empty = unknown
  std::vector<int> stpFlags;            // per projective class: 1/0, empty = unknown
  std::optional<int> selfInjective;     // tri-state
};
Algebra::Caches& cachesOf(const AlgebraPtr& a);

}  // namespace stmod
