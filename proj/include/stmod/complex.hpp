#pragma once

// Cochain complexes of finitely generated projectives, materialized on a
// finite degree window.  A complex may continue past the window; what is
// known about the invisible part is recorded as a tail certificate:
//
//   LeftTail::Zero       terms below the window vanish
//   LeftTail::Acyclic    H^k(F) = 0 for every k < lo (e.g. a minimal
//                        projective resolution continues to the left)
//   RightTail::Zero      terms above the window vanish
//   RightTail::DualAcyclic  H_k(Hom(F,A)) = 0 for every k > hi (e.g. the
//                        star-dual of a minimal resolution continues)
//
// Complexes built from generators carry a regeneration closure that
// materializes the same complex on a wider window; widening is
// deterministic, so re-materialized windows agree degree by degree.
//
// Every term is stored as a standard direct sum of the algebra's
// indecomposable projectives (the `parts` class indices), which is what
// makes Gaussian minimalization and part-wise bookkeeping possible.

#include <functional>

#include "stmod/functors.hpp"

namespace stmod {

enum class LeftTail { Zero, Acyclic };
enum class RightTail { Zero, DualAcyclic };

struct Term {
  std::vector<int> parts;
  Module mod;
};

Term termFromParts(const AlgebraPtr& a, const std::vector<int>& parts);
Term zeroTerm(const AlgebraPtr& a);

struct Complex {
  AlgebraPtr A;
  int lo = 0, hi = -1;  // inclusive window; empty when lo > hi
  std::vector<Term> terms;
  std::vector<FpMatrix> diffs;  // diffs[k-lo]: term(k) -> term(k+1)
  LeftTail leftTail = LeftTail::Zero;
  RightTail rightTail = RightTail::Zero;
  std::function<Complex(int, int)> regen;

  bool inWindow(int k) const { return k >= lo && k <= hi; }
  const Term& term(int k) const;
  const FpMatrix& diff(int k) const;  // k in [lo, hi-1]
  bool isBounded() const { return leftTail == LeftTail::Zero && rightTail == RightTail::Zero; }
  void check() const;  // structural validation: shapes, module maps, d*d = 0
};

struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Complex zeroComplex(const AlgebraPtr& a);
// Literal bounded complex (Zero tails) from explicit terms/differentials.
Complex boundedComplex(const AlgebraPtr& a, int lo, std::vector<Term> terms, std::vector<FpMatrix> diffs);
Complex stalkComplex(const AlgebraPtr& a, int degree, const Term& t);

// Widen the window (never shrinks).  Pads with zero terms on Zero-tail sides
// and regenerates otherwise; throws WindowError if neither is possible.
Complex ensureWindow(const Complex& f, int lo, int hi);

Complex shift(const Complex& f, int n);          // F[n]^k = F^{k+n}, differential times (-1)^n
Complex truncateAbove(const Complex& f, int k);  // keep degrees <= k
Complex truncateBelow(const Complex& f, int k);  // keep degrees >= k

struct CohomologyData {
  Module H;
  FpMatrix cocycles;      // rows: basis of ker d^k in term coordinates
  FpMatrix reps;          // H.dim x term(k).mod.dim: representatives of a basis of H
  FpMatrix classOfCocycle;  // cocycles.rows x H.dim: class map on the kernel basis
};

Module cohomology(const Complex& f, int k);
CohomologyData cohomologyData(const Complex& f, int k);

// Star-dual complex over the opposite algebra: G^m = (F^{-m})*.
Complex dualComplex(const Complex& f);
// H_k(Hom(F, A)) = H^{-k}(dualComplex(F)).
Module dualHomology(const Complex& f, int k);

struct ChainMap {
  Complex src, tgt;  // identical windows
  std::vector<FpMatrix> comps;
  std::function<ChainMap(int, int)> regen;

  const FpMatrix& comp(int k) const;
  void check() const;
};

ChainMap identityChainMap(const Complex& f);
ChainMap composeChainMaps(const ChainMap& f, const ChainMap& g);
ChainMap ensureWindowMap(const ChainMap& u, int lo, int hi);
// Aligns two bounded complexes on a common window and wraps the components.
ChainMap literalChainMap(const Complex& src, const Complex& tgt, int lo, std::vector<FpMatrix> comps);

// Mapping cone C^k = F^{k+1} (+) G^k with differential
// [[-d_F, u],[0, d_G]].  Consumes a one-degree margin on each side so the
// tail certificates of the cone are justified.
Complex cone(const ChainMap& u);

struct Minimalization {
  Complex min;
  ChainMap to;    // original -> min
  ChainMap from;  // min -> original
};
// Gaussian cancellation of invertible differential components between
// isomorphic indecomposable parts; bounded complexes only.
Minimalization minimalize(const Complex& f);
bool isMinimal(const Complex& f);

// Chain map space between bounded complexes (as per-degree component lists).
std::vector<std::vector<FpMatrix>> chainMapBasis(const Complex& f, const Complex& g);
// Dimension of the null-homotopic chain maps F -> G.
int nullHomotopicDim(const Complex& f, const Complex& g);
// Hom_{K(proj)}(F, G) = 0?
bool allChainMapsNullHomotopic(const Complex& f, const Complex& g);
bool isNullHomotopic(const ChainMap& u);

// Isomorphism in the homotopy category of bounded complexes, decided through
// minimal representatives.
Verdict homotopyEquivalent(const Complex& f, const Complex& g, uint64_t seed = 1, int trialBudget = 512);

}  // namespace stmod
