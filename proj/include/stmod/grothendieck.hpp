#pragma once

// Grothendieck groups of the stable module category presented by generators
// and relations.  Generators are the indecomposable non-projective modules
// discovered by a closure procedure; relations are harvested from short
// exact sequences (all of them, or only the perfect ones, i.e. those that
// stay exact under Hom(-, A)).  The resulting abelian group is computed via
// Smith normal form.  sigma sends a module class to the class of its
// complete resolution; sigmaTilde evaluates the inverse on a complex from
// its cohomology, via injective hulls of composition factors.

#include <string>

#include "stmod/int_matrix.hpp"
#include "stmod/kato.hpp"

namespace stmod {

struct PoolEntry {
  Module mod;
  std::string label;
  std::string origin;  // which closure step produced it
};

struct ModulePool {
  AlgebraPtr A;
  std::vector<PoolEntry> entries;
  bool closed = false;  // the closure reached a fixed point within the caps

  // Index of the entry isomorphic to x, or -1.
  int find(const Module& x) const;
};

ModulePool buildPool(const AlgebraPtr& a, int dimCap = 12, uint64_t seed = 1, int sizeCap = 64);

// Integer coefficient vector over the pool generators.
using PoolClass = std::vector<long long>;

// Class of a module: strip projective summands, decompose, locate each piece
// in the pool.  Throws std::out_of_range when a piece is missing.
PoolClass classOf(const ModulePool& pool, const Module& x);

enum class RelationMode { Stable, Perfect };

struct Harvest {
  IntMatrix relations;  // one row per harvested sequence, columns = pool entries
  int sequencesSeen = 0;
  bool exhaustive = false;  // every Ext space among the tested ends had dim <= 1
};

Harvest harvestRelations(const ModulePool& pool, RelationMode mode, uint64_t seed = 1);

struct GroupPresentation {
  std::vector<std::string> generators;
  IntMatrix relations;
  std::vector<BigInt> invariantFactors;  // the nontrivial (> 1) torsion factors
  int freeRank = 0;
  std::string exactnessStamp;  // "exact" or "upper bound"
};

GroupPresentation presentGroup(const ModulePool& pool, const Harvest& h);
GroupPresentation g0(const AlgebraPtr& a, RelationMode mode, int dimCap = 12, uint64_t seed = 1);

// Do two coefficient vectors define the same element of the presented group?
bool sameClassInPresentation(const GroupPresentation& pres, const PoolClass& x, const PoolClass& y);

// [x] as the class of its complete resolution; projective summands drop out.
PoolClass sigma(const ModulePool& pool, const Module& x);

// Evaluate the inverse map on a complex whose cohomology vanishes below l
// and whose dual homology vanishes at r and above:
//   sum_{k=l}^{r-1} (-1)^k ([I_{H^k}] - [C_{H^k}]) + (-1)^r [H^r(tau_{<=r})]
// where I_X is the direct sum of the injective hulls of the composition
// factors of X and C_X the direct sum of the corresponding cokernels.
PoolClass sigmaTilde(const ModulePool& pool, const Complex& f, int l, int r);

}  // namespace stmod
