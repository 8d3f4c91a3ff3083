#include "stmod/algebra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "stmod/module.hpp"

namespace stmod {

FpMatrix Algebra::basisVector(int i) const {
  FpMatrix v(1, dim, p);
  v.at(0, i) = 1;
  return v;
}

FpMatrix Algebra::multiply(const FpMatrix& x, const FpMatrix& y) const {
  FpMatrix out(1, dim, p);
  for (int i = 0; i < dim; ++i) {
    if (!x.at(0, i)) continue;
    // x_i * (y * table[i]) contributes x_i * y_j * (b_i b_j).
    FpMatrix part = (y * table[i]).scaled(x.at(0, i));
    out = out + part;
  }
  return out;
}

FpMatrix Algebra::rightMultiplication(const FpMatrix& a) const {
  FpMatrix m(dim, dim, p);
  for (int i = 0; i < dim; ++i) m.setBlock(i, 0, multiply(basisVector(i), a));
  return m;
}

FpMatrix Algebra::leftMultiplication(const FpMatrix& a) const {
  FpMatrix m(dim, dim, p);
  for (int i = 0; i < dim; ++i) m.setBlock(i, 0, multiply(a, basisVector(i)));
  return m;
}

bool Algebra::isUnit(const FpMatrix& a) const { return inverse(rightMultiplication(a)).has_value(); }

void Algebra::validate() const {
  if (int(table.size()) != dim) throw std::logic_error(name + ": table size mismatch");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        FpMatrix lhs = multiply(multiply(basisVector(i), basisVector(j)), basisVector(k));
        FpMatrix rhs = multiply(basisVector(i), multiply(basisVector(j), basisVector(k)));
        if (lhs != rhs) throw std::logic_error(name + ": associativity fails on basis triple");
      }
  for (int i = 0; i < dim; ++i) {
    if (multiply(unit, basisVector(i)) != basisVector(i) || multiply(basisVector(i), unit) != basisVector(i))
      throw std::logic_error(name + ": unit law fails");
  }
  FpMatrix sum(1, dim, p);
  for (size_t i = 0; i < idempotents.size(); ++i) {
    const FpMatrix& e = idempotents[i].vec;
    if (multiply(e, e) != e) throw std::logic_error(name + ": non-idempotent element in idempotent list");
    for (size_t j = 0; j < idempotents.size(); ++j)
      if (i != j && !multiply(e, idempotents[j].vec).isZero())
        throw std::logic_error(name + ": idempotents not orthogonal");
    sum = sum + e;
  }
  if (sum != unit) throw std::logic_error(name + ": idempotents do not sum to the unit");
  // Radical: two-sided ideal, nilpotent, and each corner e(A/J)e one-dimensional
  // (the algebras handled here are split over F_p).
  FpMatrix j = radicalBasis;
  for (int r = 0; r < j.rows(); ++r)
    for (int i = 0; i < dim; ++i) {
      if (!inRowSpace(j, multiply(j.row(r), basisVector(i))) ||
          !inRowSpace(j, multiply(basisVector(i), j.row(r))))
        throw std::logic_error(name + ": radical is not a two-sided ideal");
    }
  FpMatrix power = j;
  for (int step = 0; step < dim && !power.isZero(); ++step) {
    FpMatrix next(0, dim, p);
    for (int r = 0; r < power.rows(); ++r)
      for (int s = 0; s < j.rows(); ++s) next = vstack(next, multiply(power.row(r), j.row(s)));
    power = rowSpaceBasis(next);
  }
  if (!power.isZero() && power.rows() > 0) throw std::logic_error(name + ": radical is not nilpotent");
  for (const auto& idem : idempotents) {
    FpMatrix corner(0, dim, p);
    for (int i = 0; i < dim; ++i) corner = vstack(corner, multiply(multiply(idem.vec, basisVector(i)), idem.vec));
    FpMatrix cornerRad(0, dim, p);
    for (int r = 0; r < j.rows(); ++r)
      cornerRad = vstack(cornerRad, multiply(multiply(idem.vec, j.row(r)), idem.vec));
    if (rank(corner) - rank(cornerRad) != 1)
      throw std::logic_error(name + ": idempotent " + idem.label + " is not primitive (or algebra not split)");
  }
}

AlgebraPtr Algebra::opposite() const {
  if (auto orig = oppositeOf_.lock()) return orig;
  if (opposite_) return opposite_;
  auto op = std::make_shared<Algebra>();
  op->p = p;
  op->dim = dim;
  op->name = name + "^op";
  op->basisLabels = basisLabels;
  op->table.assign(dim, FpMatrix(dim, dim, p));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) op->table[i].setBlock(j, 0, multiply(basisVector(j), basisVector(i)));
  op->unit = unit;
  op->idempotents = idempotents;
  op->radicalBasis = radicalBasis;
  op->oppositeOf_ = weak_from_this();
  opposite_ = op;
  return op;
}

// ---------------------------------------------------------------------------
// Bound quiver algebras.

namespace {

struct Path {
  int source = 0, target = 0;
  std::vector<int> arrows;  // arrow indices, composition order
};

}  // namespace

AlgebraPtr buildBoundQuiverAlgebra(const QuiverSpec& spec) {
  if (!isSupportedPrime(spec.p)) throw std::invalid_argument("unsupported prime");
  const int p = spec.p;
  std::map<std::string, int> vertexIndex, arrowIndex;
  for (size_t i = 0; i < spec.vertices.size(); ++i) {
    if (vertexIndex.count(spec.vertices[i])) throw std::invalid_argument("duplicate vertex");
    vertexIndex[spec.vertices[i]] = int(i);
  }
  std::vector<int> arrowSrc, arrowTgt;
  for (size_t i = 0; i < spec.arrows.size(); ++i) {
    const auto& a = spec.arrows[i];
    if (arrowIndex.count(a.name) || vertexIndex.count(a.name)) throw std::invalid_argument("duplicate arrow name");
    if (!vertexIndex.count(a.source) || !vertexIndex.count(a.target))
      throw std::invalid_argument("arrow endpoint is not a vertex: " + a.name);
    arrowIndex[a.name] = int(i);
    arrowSrc.push_back(vertexIndex.at(a.source));
    arrowTgt.push_back(vertexIndex.at(a.target));
  }

  // Enumerate all paths of length < nilpotencyCap.
  std::vector<Path> paths;
  std::map<std::vector<int>, int> pathIdx;  // by (source, arrows...) key
  auto keyOf = [](const Path& q) {
    std::vector<int> k;
    k.push_back(q.source);
    k.insert(k.end(), q.arrows.begin(), q.arrows.end());
    return k;
  };
  for (size_t v = 0; v < spec.vertices.size(); ++v) {
    Path q;
    q.source = q.target = int(v);
    pathIdx[keyOf(q)] = int(paths.size());
    paths.push_back(q);
  }
  for (size_t begin = 0, len = 0; len + 1 < size_t(spec.nilpotencyCap); ++len) {
    size_t end = paths.size();
    for (size_t i = begin; i < end; ++i)
      for (size_t a = 0; a < spec.arrows.size(); ++a) {
        if (paths[i].target != arrowSrc[a]) continue;
        Path q = paths[i];
        q.arrows.push_back(int(a));
        q.target = arrowTgt[a];
        pathIdx[keyOf(q)] = int(paths.size());
        paths.push_back(q);
        if (paths.size() > 50000) throw std::runtime_error("path explosion; lower nilpotencyCap");
      }
    begin = end;
  }
  const int np = int(paths.size());

  // Column order for reduction: longest paths first, so the surviving basis
  // prefers short paths (vertices and arrows in particular).
  std::vector<int> order(np);
  for (int i = 0; i < np; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (paths[a].arrows.size() != paths[b].arrows.size()) return paths[a].arrows.size() > paths[b].arrows.size();
    return keyOf(paths[a]) > keyOf(paths[b]);
  });
  std::vector<int> colOf(np);
  for (int i = 0; i < np; ++i) colOf[order[i]] = i;

  // Relation vectors in path coordinates.
  auto pathOfNames = [&](const std::vector<std::string>& names) -> std::optional<int> {
    if (names.empty()) throw std::invalid_argument("empty relation path");
    if (names.size() < 2) throw std::invalid_argument("relations must involve paths of length >= 2");
    std::vector<int> key;
    int src = -1, at = -1;
    for (const auto& n : names) {
      if (!arrowIndex.count(n)) throw std::invalid_argument("unknown arrow in relation: " + n);
      int a = arrowIndex.at(n);
      if (src < 0)
        src = arrowSrc[a];
      else if (arrowSrc[a] != at)
        throw std::invalid_argument("relation path is not composable");
      at = arrowTgt[a];
      key.push_back(a);
    }
    if (names.size() >= size_t(spec.nilpotencyCap)) return std::nullopt;  // already zero
    key.insert(key.begin(), src);
    return pathIdx.at(key);
  };

  FpMatrix gens(0, np, p);
  for (const auto& rel : spec.relations) {
    FpMatrix v(1, np, p);
    for (const auto& term : rel) {
      auto idx = pathOfNames(term.path);
      if (!idx) continue;
      v.at(0, colOf[*idx]) = uint8_t((v.at(0, colOf[*idx]) + ((term.coefficient % p) + p)) % p);
    }
    gens = vstack(gens, v);
  }
  // Also kill the length-cap truncation boundary implicitly: products of
  // surviving paths that reach the cap are treated as zero below.

  // Close the relation span under left/right multiplication by arrows.
  auto composeWithArrow = [&](int pIdx, int a, bool onLeft) -> std::optional<int> {
    const Path& q = paths[pIdx];
    Path r;
    if (onLeft) {
      if (arrowTgt[a] != q.source) return std::nullopt;
      r.source = arrowSrc[a];
      r.target = q.target;
      r.arrows.push_back(a);
      r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    } else {
      if (q.target != arrowSrc[a]) return std::nullopt;
      r.source = q.source;
      r.target = arrowTgt[a];
      r.arrows = q.arrows;
      r.arrows.push_back(a);
    }
    if (int(r.arrows.size()) >= spec.nilpotencyCap) return -1;  // truncated to zero
    std::vector<int> k;
    k.push_back(r.source);
    k.insert(k.end(), r.arrows.begin(), r.arrows.end());
    return pathIdx.at(k);
  };

  FpMatrix ideal = rowSpaceBasis(gens);
  for (bool grew = true; grew;) {
    grew = false;
    FpMatrix next = ideal;
    for (int r = 0; r < ideal.rows(); ++r)
      for (size_t a = 0; a < spec.arrows.size(); ++a)
        for (bool left : {true, false}) {
          FpMatrix v(1, np, p);
          for (int c = 0; c < np; ++c) {
            if (!ideal.at(r, c)) continue;
            auto idx = composeWithArrow(order[c], int(a), left);
            if (!idx || *idx < 0) continue;
            v.at(0, colOf[*idx]) = uint8_t((v.at(0, colOf[*idx]) + ideal.at(r, c)) % p);
          }
          if (!v.isZero() && !inRowSpace(ideal, v)) {
            next = vstack(next, v);
            grew = true;
          }
        }
    ideal = rowSpaceBasis(next);
  }

  RowReduction idealRed = rowReduce(ideal);
  std::vector<bool> isPivot(np, false);
  for (int c : idealRed.pivots) isPivot[c] = true;

  std::vector<int> survivors;  // path indices, sorted by length then key
  for (int c = np - 1; c >= 0; --c)
    if (!isPivot[c]) survivors.push_back(order[c]);
  std::sort(survivors.begin(), survivors.end(), [&](int a, int b) {
    if (paths[a].arrows.size() != paths[b].arrows.size()) return paths[a].arrows.size() < paths[b].arrows.size();
    return keyOf(paths[a]) < keyOf(paths[b]);
  });
  const int dim = int(survivors.size());
  std::vector<int> survivorPos(np, -1);
  for (int i = 0; i < dim; ++i) survivorPos[survivors[i]] = i;

  // Reduce a path-space vector modulo the ideal and read off coordinates in
  // the surviving basis.
  auto reduceToBasis = [&](FpMatrix v) {
    for (size_t i = 0; i < idealRed.pivots.size(); ++i) {
      int c = idealRed.pivots[i];
      if (v.at(0, c)) v = v - idealRed.rref.row(int(i)).scaled(v.at(0, c));
    }
    FpMatrix out(1, dim, p);
    for (int c = 0; c < np; ++c)
      if (v.at(0, c)) out.at(0, survivorPos[order[c]]) = v.at(0, c);
    return out;
  };

  auto alg = std::make_shared<Algebra>();
  alg->p = p;
  alg->dim = dim;
  alg->name = "quiver";
  for (int i = 0; i < dim; ++i) {
    const Path& q = paths[survivors[i]];
    std::string label;
    if (q.arrows.empty())
      label = "e_" + spec.vertices[q.source];
    else
      for (int a : q.arrows) label += spec.arrows[a].name;
    alg->basisLabels.push_back(label);
  }
  alg->table.assign(dim, FpMatrix(dim, dim, p));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const Path& x = paths[survivors[i]];
      const Path& y = paths[survivors[j]];
      if (x.target != y.source) continue;
      Path z;
      z.source = x.source;
      z.target = y.target;
      z.arrows = x.arrows;
      z.arrows.insert(z.arrows.end(), y.arrows.begin(), y.arrows.end());
      if (int(z.arrows.size()) >= spec.nilpotencyCap) continue;
      std::vector<int> k;
      k.push_back(z.source);
      k.insert(k.end(), z.arrows.begin(), z.arrows.end());
      FpMatrix v(1, np, p);
      v.at(0, colOf[pathIdx.at(k)]) = 1;
      alg->table[i].setBlock(j, 0, reduceToBasis(v));
    }
  alg->unit = FpMatrix(1, dim, p);
  for (size_t vtx = 0; vtx < spec.vertices.size(); ++vtx) {
    std::vector<int> k{int(vtx)};
    FpMatrix v(1, np, p);
    v.at(0, colOf[pathIdx.at(k)]) = 1;
    FpMatrix e = reduceToBasis(v);
    alg->unit = alg->unit + e;
    alg->idempotents.push_back({e, "e_" + spec.vertices[vtx]});
  }
  FpMatrix rad(0, dim, p);
  for (int i = 0; i < dim; ++i)
    if (!paths[survivors[i]].arrows.empty()) rad = vstack(rad, alg->basisVector(i));
  alg->radicalBasis = rad;
  alg->validate();
  return alg;
}

// ---------------------------------------------------------------------------
// Raw structure constants, tensor and matrix constructions.

AlgebraPtr buildStructureConstantAlgebra(int p, const std::vector<FpMatrix>& table, const FpMatrix& unit,
                                         std::vector<Idempotent> idempotents,
                                         std::optional<FpMatrix> radicalBasis, std::string name) {
  auto alg = std::make_shared<Algebra>();
  alg->p = p;
  alg->dim = int(table.size());
  alg->name = std::move(name);
  alg->table = table;
  alg->unit = unit;
  for (int i = 0; i < alg->dim; ++i) alg->basisLabels.push_back("b" + std::to_string(i));
  if (radicalBasis)
    alg->radicalBasis = *radicalBasis;
  else
    alg->radicalBasis = radicalOfAlgebraFromSimples(alg);
  if (!idempotents.empty())
    alg->idempotents = std::move(idempotents);
  else
    alg->idempotents = computePrimitiveIdempotents(alg);
  alg->validate();
  return alg;
}

AlgebraPtr envelopingAlgebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->p != b->p) throw std::invalid_argument("envelopingAlgebra: modulus mismatch");
  const int p = a->p, da = a->dim, db = b->dim, dim = da * db;
  auto idx = [&](int i, int j) { return i * db + j; };
  std::vector<FpMatrix> table(dim, FpMatrix(dim, dim, p));
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          // (a_i (x) b_j) * (a_k (x) b_l) = (a_k a_i) (x) (b_j b_l): the first
          // factor carries the opposite multiplication.
          FpMatrix x = a->multiply(a->basisVector(k), a->basisVector(i));
          FpMatrix y = b->multiply(b->basisVector(j), b->basisVector(l));
          for (int u = 0; u < da; ++u) {
            if (!x.at(0, u)) continue;
            for (int v = 0; v < db; ++v)
              table[idx(i, j)].at(idx(k, l), idx(u, v)) =
                  uint8_t((table[idx(i, j)].at(idx(k, l), idx(u, v)) + x.at(0, u) * y.at(0, v)) % p);
          }
        }
  auto tensorVec = [&](const FpMatrix& x, const FpMatrix& y) {
    FpMatrix out(1, dim, p);
    for (int u = 0; u < da; ++u)
      for (int v = 0; v < db; ++v) out.at(0, idx(u, v)) = uint8_t((x.at(0, u) * y.at(0, v)) % p);
    return out;
  };
  FpMatrix unit = tensorVec(a->unit, b->unit);
  std::vector<Idempotent> idems;
  for (const auto& ea : a->idempotents)
    for (const auto& eb : b->idempotents) idems.push_back({tensorVec(ea.vec, eb.vec), ea.label + "(x)" + eb.label});
  // J(A^op (x) B) = J (x) B + A (x) J over the perfect field F_p.
  FpMatrix rad(0, dim, p);
  for (int r = 0; r < a->radicalBasis.rows(); ++r)
    for (int j = 0; j < db; ++j) rad = vstack(rad, tensorVec(a->radicalBasis.row(r), b->basisVector(j)));
  for (int i = 0; i < da; ++i)
    for (int r = 0; r < b->radicalBasis.rows(); ++r) rad = vstack(rad, tensorVec(a->basisVector(i), b->radicalBasis.row(r)));
  return buildStructureConstantAlgebra(p, table, unit, idems, rowSpaceBasis(rad),
                                       a->name + "^op(x)" + b->name);
}

AlgebraPtr matrixAlgebra(const AlgebraPtr& a, int n) {
  const int p = a->p, da = a->dim, dim = n * n * da;
  auto idx = [&](int r, int c, int i) { return (r * n + c) * da + i; };
  std::vector<FpMatrix> table(dim, FpMatrix(dim, dim, p));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < da; ++i)
        for (int s = 0; s < n; ++s)
          for (int t = 0; t < n; ++t)
            for (int j = 0; j < da; ++j) {
              if (c != s) continue;
              FpMatrix prod = a->multiply(a->basisVector(i), a->basisVector(j));
              for (int u = 0; u < da; ++u)
                table[idx(r, c, i)].at(idx(s, t, j), idx(r, t, u)) = prod.at(0, u);
            }
  FpMatrix unit(1, dim, p);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < da; ++i) unit.at(0, idx(r, r, i)) = a->unit.at(0, i);
  std::vector<Idempotent> idems;
  for (int r = 0; r < n; ++r)
    for (const auto& e : a->idempotents) {
      FpMatrix v(1, dim, p);
      for (int i = 0; i < da; ++i) v.at(0, idx(r, r, i)) = e.vec.at(0, i);
      idems.push_back({v, "E" + std::to_string(r) + std::to_string(r) + e.label});
    }
  FpMatrix rad(0, dim, p);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int s = 0; s < a->radicalBasis.rows(); ++s) {
        FpMatrix v(1, dim, p);
        for (int i = 0; i < da; ++i) v.at(0, idx(r, c, i)) = a->radicalBasis.at(s, i);
        rad = vstack(rad, v);
      }
  return buildStructureConstantAlgebra(p, table, unit, idems, rowSpaceBasis(rad),
                                       "M" + std::to_string(n) + "(" + a->name + ")");
}

AlgebraPtr pathAlgebraA2(int p) {
  QuiverSpec q;
  q.p = p;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", "1", "2"}};
  q.nilpotencyCap = 3;
  auto alg = buildBoundQuiverAlgebra(q);
  const_cast<Algebra&>(*alg).name = "kA2";
  return alg;
}

AlgebraPtr dualNumbers(int p) {
  QuiverSpec q;
  q.p = p;
  q.vertices = {"1"};
  q.arrows = {{"x", "1", "1"}};
  q.relations = {{{1, {"x", "x"}}}};
  q.nilpotencyCap = 4;
  auto alg = buildBoundQuiverAlgebra(q);
  const_cast<Algebra&>(*alg).name = "k[x]/(x^2)";
  return alg;
}

AlgebraPtr cyclicNakayamaRadSquare(int p) {
  QuiverSpec q;
  q.p = p;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", "1", "2"}, {"b", "2", "1"}};
  q.relations = {{{1, {"a", "b"}}}, {{1, {"b", "a"}}}};
  q.nilpotencyCap = 4;
  auto alg = buildBoundQuiverAlgebra(q);
  const_cast<Algebra&>(*alg).name = "Nakayama2";
  return alg;
}

}  // namespace stmod
