#include "stmod/functors.hpp"

#include <map>
#include <stdexcept>

namespace stmod {

namespace {

FpMatrix vectorizeMaps(const std::vector<FpMatrix>& maps, int rows, int cols, int p) {
  FpMatrix out(int(maps.size()), rows * cols, p);
  for (size_t i = 0; i < maps.size(); ++i)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out.at(int(i), r * cols + c) = maps[i].at(r, c);
  return out;
}

FpMatrix vectorizeOne(const FpMatrix& m) {
  FpMatrix out(1, m.rows() * m.cols(), m.modulus());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(0, r * m.cols() + c) = m.at(r, c);
  return out;
}

}  // namespace

StarModule starModule(const Module& x) {
  const AlgebraPtr a = x.A;
  const AlgebraPtr op = a->opposite();
  StarModule out;
  out.homs = homBasis(x, regularModule(a));
  out.mod.A = op;
  out.mod.dim = int(out.homs.size());
  out.mod.name = "(" + x.name + ")*";
  FpMatrix table = vectorizeMaps(out.homs, x.dim, a->dim, a->p);
  for (int i = 0; i < a->dim; ++i) {
    // The opposite acts by postcomposing with left multiplication:
    // (phi . a)(x) = a * phi(x).
    FpMatrix lm = a->leftMultiplication(a->basisVector(i));
    FpMatrix act(out.mod.dim, out.mod.dim, a->p);
    for (int t = 0; t < out.mod.dim; ++t) {
      auto coords = coordinatesInRows(table, vectorizeOne(out.homs[t] * lm));
      if (!coords) throw std::logic_error("starModule: hom space not closed under the action");
      act.setBlock(t, 0, *coords);
    }
    out.mod.action.push_back(act);
  }
  return out;
}

ModuleMap starMap(const ModuleMap& f, const StarModule& sx, const StarModule& sy) {
  const AlgebraPtr a = f.src.A;
  FpMatrix table = vectorizeMaps(sx.homs, f.src.dim, a->dim, a->p);
  FpMatrix m(sy.mod.dim, sx.mod.dim, a->p);
  for (int t = 0; t < sy.mod.dim; ++t) {
    auto coords = coordinatesInRows(table, vectorizeOne(f.matrix * sy.homs[t]));
    if (!coords) throw std::logic_error("starMap: precomposition left the hom space");
    m.setBlock(t, 0, *coords);
  }
  return {sy.mod, sx.mod, m};
}

ModuleMap evaluationMap(const Module& x, const StarModule& sx, const StarModule& ssx) {
  const AlgebraPtr a = x.A;
  const AlgebraPtr op = a->opposite();
  FpMatrix table = vectorizeMaps(ssx.homs, sx.mod.dim, op->dim, a->p);
  FpMatrix m(x.dim, ssx.mod.dim, a->p);
  for (int r = 0; r < x.dim; ++r) {
    // ev(x): phi |-> phi(x), written in the chosen basis of X**.
    FpMatrix evx(sx.mod.dim, a->dim, a->p);
    FpMatrix e(1, x.dim, a->p);
    e.at(0, r) = 1;
    for (int t = 0; t < sx.mod.dim; ++t) evx.setBlock(t, 0, e * sx.homs[t]);
    auto coords = coordinatesInRows(table, vectorizeOne(evx));
    if (!coords) throw std::logic_error("evaluationMap: evaluation is not in the double-dual hom space");
    m.setBlock(r, 0, *coords);
  }
  return {x, ssx.mod, m};
}

bool isReflexive(const Module& x) {
  StarModule sx = starModule(x);
  StarModule ssx = starModule(sx.mod);
  ModuleMap ev = evaluationMap(x, sx, ssx);
  return x.dim == ssx.mod.dim && inverse(ev.matrix).has_value();
}

Module dualD(const Module& x) {
  Module d;
  d.A = x.A->opposite();
  d.dim = x.dim;
  d.name = "D(" + x.name + ")";
  for (auto& m : x.action) d.action.push_back(m.transpose());
  return d;
}

ModuleMap dualDMap(const ModuleMap& f) { return {dualD(f.tgt), dualD(f.src), f.matrix.transpose()}; }

Module nakayama(const Module& x) {
  Module n = dualD(starModule(x).mod);
  n.name = "nu(" + x.name + ")";
  return n;
}

Module nakayamaInverse(const Module& x) {
  Module n = starModule(dualD(x)).mod;
  n.name = "nu^{-1}(" + x.name + ")";
  return n;
}

Module transpose(const Module& x) {
  Cover p0 = projectiveCover(x);
  Submodule om = kernel(p0.map);
  Cover p1 = projectiveCover(om.mod);
  ModuleMap d1 = compose(p1.map, om.inclusion);  // P1 -> P0
  StarModule s0 = starModule(p0.proj);
  StarModule s1 = starModule(p1.proj);
  ModuleMap d1star = starMap(d1, s1, s0);  // P0* -> P1*
  Module tr = cokernel(d1star).mod;
  tr.name = "Tr(" + x.name + ")";
  return tr;
}

Module syzygy(const Module& x) {
  Cover c = projectiveCover(x);
  Module s = kernel(c.map).mod;
  s.name = "Omega(" + x.name + ")";
  return s;
}

int stableHomDim(const Module& x, const Module& y) {
  if (x.dim == 0 || y.dim == 0) return 0;
  auto homs = homBasis(x, y);
  if (homs.empty()) return 0;
  // Any map through a projective factors through the projective cover of y.
  Cover c = projectiveCover(y);
  std::vector<FpMatrix> trivial;
  for (auto& q : homBasis(x, c.proj)) trivial.push_back(q * c.map.matrix);
  FpMatrix hv = vectorizeMaps(homs, x.dim, y.dim, x.A->p);
  FpMatrix tv = vectorizeMaps(trivial, x.dim, y.dim, x.A->p);
  return rank(hv) - rank(tv);
}

const std::vector<Module>& indecInjectives(const AlgebraPtr& a) {
  static std::map<const Algebra*, std::vector<Module>> cache;
  auto it = cache.find(a.get());
  if (it != cache.end()) return it->second;
  std::vector<Module> injs;
  for (const auto& q : indecProjectives(a->opposite()).projectives) {
    Module i = dualD(q);
    i.name = "D(" + q.name + ")";
    injs.push_back(i);
  }
  return cache[a.get()] = std::move(injs);
}

std::vector<int> projInjectiveClasses(const AlgebraPtr& a) {
  auto& c = cachesOf(a);
  const auto& ip = indecProjectives(a);
  if (c.projInjectiveFlags.empty()) {
    c.projInjectiveFlags.assign(ip.projectives.size(), 0);
    for (size_t i = 0; i < ip.projectives.size(); ++i)
      for (const auto& inj : indecInjectives(a))
        if (isIsomorphic(ip.projectives[i], inj).verdict == Verdict::Yes) {
          c.projInjectiveFlags[i] = 1;
          break;
        }
  }
  std::vector<int> out;
  for (size_t i = 0; i < c.projInjectiveFlags.size(); ++i)
    if (c.projInjectiveFlags[i]) out.push_back(int(i));
  return out;
}

std::vector<int> stronglyProjInjectiveClasses(const AlgebraPtr& a) {
  auto& c = cachesOf(a);
  const auto& ip = indecProjectives(a);
  const int n = int(ip.projectives.size());
  if (c.stpFlags.empty()) {
    // nu maps an indecomposable projective either out of the projectives or
    // onto another indecomposable projective class; the class map is
    // eventually periodic, so following it for n steps decides the orbit.
    std::vector<int> next(n, -1);
    for (int i = 0; i < n; ++i) {
      Module nu = nakayama(ip.projectives[i]);
      next[i] = projectiveClassOf(nu);
    }
    c.stpFlags.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      int at = i;
      bool stays = true;
      for (int step = 0; step <= n; ++step) {
        at = next[at];
        if (at < 0) {
          stays = false;
          break;
        }
      }
      c.stpFlags[i] = stays ? 1 : 0;
    }
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (c.stpFlags[i]) out.push_back(i);
  return out;
}

namespace {

bool summandsInClasses(const Module& m, const std::vector<int>& classes) {
  if (m.dim == 0) return true;
  Decomposition dec = decompose(m);
  for (auto& s : dec.summands) {
    int cls = projectiveClassOf(s.piece);
    bool ok = false;
    for (int c : classes)
      if (c == cls) ok = true;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool isProjInjectiveModule(const Module& m) { return summandsInClasses(m, projInjectiveClasses(m.A)); }
bool isStpModule(const Module& m) { return summandsInClasses(m, stronglyProjInjectiveClasses(m.A)); }

int nuDominantDimension(const Module& x, int cap) {
  Module cur = x;
  for (int n = 0; n < cap; ++n) {
    if (cur.dim == 0) return cap;  // resolution terminated: every further term is zero
    Hull h = injectiveHull(cur);
    if (!isStpModule(h.inj)) return n;
    cur = cokernel(h.map).mod;
  }
  return cap;
}

int nuDominantDimensionOfAlgebra(const AlgebraPtr& a, int cap) {
  return nuDominantDimension(regularModule(a), cap);
}

bool isSelfInjective(const AlgebraPtr& a) {
  auto& c = cachesOf(a);
  if (!c.selfInjective) {
    const auto& ip = indecProjectives(a);
    c.selfInjective = int(projInjectiveClasses(a).size() == ip.projectives.size());
  }
  return *c.selfInjective != 0;
}

ProjectivePresentation presentProjective(const Module& m) {
  Cover c = projectiveCover(m);
  if (c.proj.dim != m.dim) throw std::invalid_argument("presentProjective: module is not projective");
  ProjectivePresentation out;
  out.parts = c.parts;
  out.standard = c.proj;
  out.iso = c.map;
  return out;
}

}  // namespace stmod
