#pragma once

// The functor layer: star duality (-)* = Hom_A(-, A), the linear dual D,
// the Nakayama functor and its inverse, transpose, syzygy, stable hom
// spaces, projective-injective and strongly projective-injective classes,
// nu-dominant dimension, and the self-injectivity test via reflexivity.

#include "stmod/module.hpp"

namespace stmod {

// Hom_A(X, A) as a right module over A^op, with the hom basis kept so maps
// and double-dual evaluations can be transported.
struct StarModule {
  Module mod;
  std::vector<FpMatrix> homs;  // basis elements as x.dim x A.dim matrices
};

StarModule starModule(const Module& x);

// star is contravariant: a map X -> Y induces star(Y) -> star(X).
ModuleMap starMap(const ModuleMap& f, const StarModule& sx, const StarModule& sy);

// The canonical evaluation X -> X**; X is reflexive when it is invertible.
ModuleMap evaluationMap(const Module& x, const StarModule& sx, const StarModule& ssx);
bool isReflexive(const Module& x);

// Linear dual over the opposite algebra (actions transpose).
Module dualD(const Module& x);
// D is contravariant; for f: X -> Y this is D(Y) -> D(X) with the transposed
// matrix.
ModuleMap dualDMap(const ModuleMap& f);

Module nakayama(const Module& x);         // D(X*)
Module nakayamaInverse(const Module& x);  // (DX)*
Module transpose(const Module& x);        // coker(P0* -> P1*) over A^op
Module syzygy(const Module& x);           // kernel of the projective cover

// dim Hom(X,Y) modulo maps factoring through a projective.
int stableHomDim(const Module& x, const Module& y);

// Indecomposable injectives D(e_i A^op), indexed like the opposite algebra's
// projective classes.
const std::vector<Module>& indecInjectives(const AlgebraPtr& a);

// Projective classes whose module is also injective.
std::vector<int> projInjectiveClasses(const AlgebraPtr& a);
// Projective classes all of whose Nakayama iterates stay projective.
std::vector<int> stronglyProjInjectiveClasses(const AlgebraPtr& a);

bool isProjInjectiveModule(const Module& m);  // every summand projective-injective
bool isStpModule(const Module& m);            // every summand strongly projective-injective

// Number of leading terms of the minimal injective coresolution that are
// strongly projective-injective; `cap` is returned when the coresolution
// stays strongly projective-injective that far (or terminates).
int nuDominantDimension(const Module& x, int cap = 8);
int nuDominantDimensionOfAlgebra(const AlgebraPtr& a, int cap = 8);

bool isSelfInjective(const AlgebraPtr& a);

// Identify a projective module with the standard sum of indecomposable
// projectives; iso maps the standard sum onto m.
struct ProjectivePresentation {
  std::vector<int> parts;
  Module standard;
  ModuleMap iso;  // standard -> m, invertible
};
ProjectivePresentation presentProjective(const Module& m);

}  // namespace stmod
