#pragma once

// Bimodules, tensor functors, and verification of stable equivalences of
// Morita type.  An (A, B)-bimodule is stored as a right module over the
// enveloping algebra A^op (x) B; restriction to either side and the tensor
// product over the middle algebra are explicit coequalizer constructions.
// A verified pair (M, N) with M (x) N = A (+) projective and N (x) M =
// B (+) projective transports complexes, hull certificates, and relation
// lattices from one algebra to the other by componentwise tensoring.

#include "stmod/kato.hpp"

namespace stmod {

struct Bimodule {
  AlgebraPtr A, B;  // left algebra, right algebra
  Module env;       // right module over envelopingAlgebra(A, B)
  std::string name;

  int dim() const { return env.dim; }
  // Action matrices of a single side on the underlying space.
  std::vector<FpMatrix> leftActions() const;   // one per basis element of A
  std::vector<FpMatrix> rightActions() const;  // one per basis element of B
  Module restrictToRight() const;  // forget the left action: a B-module
  Module restrictToLeft() const;   // forget the right action: an A^op-module
};

// Build a bimodule from commuting one-sided actions on F_p^dim.
Bimodule bimoduleFromActions(const AlgebraPtr& a, const AlgebraPtr& b, int dim,
                             const std::vector<FpMatrix>& left, const std::vector<FpMatrix>& right,
                             const std::string& name);

// A as the (A, A)-bimodule.
Bimodule regularBimodule(const AlgebraPtr& a);

// The classical Morita context between A and the n x n matrix algebra over
// A: rows(a, n) is A^{1 x n} as an (A, M_n(A))-bimodule and cols(a, n) is
// A^{n x 1} as an (M_n(A), A)-bimodule.
Bimodule rowBimodule(const AlgebraPtr& a, int n);
Bimodule colBimodule(const AlgebraPtr& a, int n);

// X (x)_A M for a right A-module X: quotient of the plain tensor product by
// the balancing relations, with the induced right B-action.
Module tensorOverA(const Module& x, const Bimodule& m);
ModuleMap tensorMapOverA(const ModuleMap& f, const Bimodule& m);

// (M (x)_B N) for M an (A, B)- and N a (B, C)-bimodule.
Bimodule tensorBimodules(const Bimodule& m, const Bimodule& n);

// Projectivity over the enveloping algebra.
bool isProjectiveBimodule(const Bimodule& p);

struct MoritaReport {
  bool mProjectiveRight = false, mProjectiveLeft = false;
  bool nProjectiveRight = false, nProjectiveLeft = false;
  bool mnSplitsRegular = false;  // M (x) N = A (+) (projective bimodule)
  bool nmSplitsRegular = false;  // N (x) M = B (+) (projective bimodule)
  bool mHasProjectiveSummand = false, nHasProjectiveSummand = false;
  bool verified = false;  // all four projectivities and both splittings
  std::vector<std::string> notes;
};

MoritaReport verifyStableMoritaType(const Bimodule& m, const Bimodule& n);

// Componentwise - (x)_A M on a complex of projectives, with terms rewritten
// in the standard part form over B.  Throws std::invalid_argument unless the
// report is verified.
Complex transportComplex(const Complex& f, const Bimodule& m, const MoritaReport& report);

}  // namespace stmod
