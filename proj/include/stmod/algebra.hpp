#pragma once

// Finite-dimensional associative F_p-algebras with a fixed basis, given by
// structure constants.  Bound quiver algebras (path algebras modulo an
// admissible ideal) are the main construction path; arbitrary structure
// constant input is also supported.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stmod/fp_matrix.hpp"

namespace stmod {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// A complete set of orthogonal primitive idempotents, each stored as a row
// coordinate vector in the algebra basis.
struct Idempotent {
  FpMatrix vec;  // 1 x dim
  std::string label;
};

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  int p = 2;
  int dim = 0;
  std::string name;
  std::vector<std::string> basisLabels;
  // table[i] row j = coordinates of basis_i * basis_j.
  std::vector<FpMatrix> table;
  FpMatrix unit;                        // 1 x dim
  std::vector<Idempotent> idempotents;  // orthogonal, primitive, summing to the unit
  FpMatrix radicalBasis;                // rows span the Jacobson radical

  // Product of two elements given as 1 x dim row vectors.
  FpMatrix multiply(const FpMatrix& x, const FpMatrix& y) const;
  // Matrix of right multiplication v |-> v * a (row-vector convention).
  FpMatrix rightMultiplication(const FpMatrix& a) const;
  // Matrix of left multiplication v |-> a * v.
  FpMatrix leftMultiplication(const FpMatrix& a) const;
  FpMatrix basisVector(int i) const;

  bool isUnit(const FpMatrix& a) const;  // invertible element test

  // Structural sanity checks: associativity on basis triples, unit laws,
  // idempotent axioms, radical ideal property and nilpotency.
  void validate() const;

  AlgebraPtr opposite() const;

  mutable std::weak_ptr<const Algebra> oppositeOf_;  // set when this algebra was built as an opposite

  // Lazily computed per-algebra caches (indecomposable projectives and the
  // like) live here; see module.cpp.
  struct Caches;
  mutable std::shared_ptr<Caches> caches;

 private:
  mutable std::shared_ptr<const Algebra> opposite_;
};

struct QuiverSpec {
  int p = 2;
  std::vector<std::string> vertices;
  struct Arrow {
    std::string name, source, target;
  };
  std::vector<Arrow> arrows;
  // Each relation is an F_p-combination of parallel paths; a path is the
  // list of arrow names in composition order (first arrow first).
  struct RelationTerm {
    int coefficient = 1;
    std::vector<std::string> path;
  };
  using Relation = std::vector<RelationTerm>;
  std::vector<Relation> relations;
  int nilpotencyCap = 10;  // paths of this length are forced to zero
};

// Path algebra of the quiver modulo the relations plus all paths of length
// >= nilpotencyCap.  Basis: the surviving paths (vertices are the idempotent
// paths of length zero).
AlgebraPtr buildBoundQuiverAlgebra(const QuiverSpec& spec);

// Algebra from raw structure constants.  When no idempotents are supplied a
// complete orthogonal primitive set is computed by decomposing the regular
// module, and the radical is computed from the annihilators of the
// composition factors of the regular module.
AlgebraPtr buildStructureConstantAlgebra(int p, const std::vector<FpMatrix>& table, const FpMatrix& unit,
                                         std::vector<Idempotent> idempotents = {},
                                         std::optional<FpMatrix> radicalBasis = std::nullopt,
                                         std::string name = "A");

// A^op times B: basis pairs (i,j), product (a o b)(a' o b') = (a'a) o (bb').
// Primitive idempotents are the pairs of the factors' idempotents.
AlgebraPtr envelopingAlgebra(const AlgebraPtr& aOp, const AlgebraPtr& b);

// n x n matrices over A, with idempotents E_kk * e_i.
AlgebraPtr matrixAlgebra(const AlgebraPtr& a, int n);

// Built-in example algebras used across tests and the command line tool.
AlgebraPtr pathAlgebraA2(int p = 2);          // quiver 1 -> 2
AlgebraPtr dualNumbers(int p = 2);            // k[x]/(x^2), self-injective local
AlgebraPtr cyclicNakayamaRadSquare(int p = 2);// two-vertex cyclic quiver, rad^2 = 0

}  // namespace stmod
