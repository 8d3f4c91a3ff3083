#include "stmod/module.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stmod {

namespace {

// Deterministic element enumeration helper: when p^n is small we walk every
// coefficient vector, otherwise we draw seeded random ones.
class CoefficientSource {
 public:
  CoefficientSource(int n, int p, uint64_t seed, int budget)
      : n_(n), p_(p), rng_(seed ^ 0x9e3779b97f4a7c15ull), budget_(budget) {
    double total = std::pow(double(p), double(n));
    exhaustive_ = total <= 65536.0;
    count_ = exhaustive_ ? long(total) : budget;
    current_.assign(n, 0);
  }

  bool exhaustive() const { return exhaustive_; }
  long count() const { return count_; }

  std::vector<int> get(long i) {
    if (exhaustive_) {
      std::vector<int> v(n_);
      long x = i;
      for (int k = 0; k < n_; ++k) {
        v[k] = int(x % p_);
        x /= p_;
      }
      return v;
    }
    std::uniform_int_distribution<int> d(0, p_ - 1);
    std::vector<int> v(n_);
    for (int k = 0; k < n_; ++k) v[k] = d(rng_);
    return v;
  }

 private:
  int n_, p_;
  std::mt19937_64 rng_;
  int budget_;
  bool exhaustive_ = false;
  long count_ = 0;
  std::vector<int> current_;
};

FpMatrix combine(const std::vector<FpMatrix>& basis, const std::vector<int>& coeffs) {
  FpMatrix out = basis.at(0).scaled(coeffs.at(0));
  for (size_t i = 1; i < basis.size(); ++i) out = out + basis[i].scaled(coeffs[i]);
  return out;
}

}  // namespace

FpMatrix Module::actionOf(const FpMatrix& a) const {
  FpMatrix out(dim, dim, A->p);
  for (int i = 0; i < A->dim; ++i)
    if (a.at(0, i)) out = out + action[i].scaled(a.at(0, i));
  return out;
}

void Module::validate() const {
  if (int(action.size()) != A->dim) throw std::logic_error("Module: action table size mismatch");
  if (actionOf(A->unit) != FpMatrix::identity(dim, A->p)) throw std::logic_error("Module: unit acts nontrivially");
  for (int i = 0; i < A->dim; ++i)
    for (int j = 0; j < A->dim; ++j)
      if (actionOf(A->multiply(A->basisVector(i), A->basisVector(j))) != action[i] * action[j])
        throw std::logic_error("Module: action is not multiplicative");
}

bool ModuleMap::commutesWithAction() const {
  for (int i = 0; i < src.A->dim; ++i)
    if (src.action[i] * matrix != matrix * tgt.action[i]) return false;
  return true;
}

Module zeroModule(const AlgebraPtr& a) {
  Module m;
  m.A = a;
  m.dim = 0;
  m.name = "0";
  m.action.assign(a->dim, FpMatrix(0, 0, a->p));
  return m;
}

Module regularModule(const AlgebraPtr& a) {
  auto& c = cachesOf(a);
  if (!c.regular) {
    Module m;
    m.A = a;
    m.dim = a->dim;
    m.name = a->name;
    for (int i = 0; i < a->dim; ++i) m.action.push_back(a->rightMultiplication(a->basisVector(i)));
    c.regular = m;
  }
  return *c.regular;
}

ModuleMap identityMap(const Module& m) { return {m, m, FpMatrix::identity(m.dim, m.A->p)}; }
ModuleMap zeroMap(const Module& src, const Module& tgt) { return {src, tgt, FpMatrix(src.dim, tgt.dim, src.A->p)}; }

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (f.tgt.dim != g.src.dim) throw std::invalid_argument("compose: shape mismatch");
  return {f.src, g.tgt, f.matrix * g.matrix};
}

SumDecomposition directSum(const std::vector<Module>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("directSum: empty");
  const AlgebraPtr a = pieces[0].A;
  SumDecomposition out;
  int total = 0;
  for (const auto& m : pieces) total += m.dim;
  out.total.A = a;
  out.total.dim = total;
  out.total.name = "sum";
  for (int i = 0; i < a->dim; ++i) {
    FpMatrix act(total, total, a->p);
    int off = 0;
    for (const auto& m : pieces) {
      act.setBlock(off, off, m.action[i]);
      off += m.dim;
    }
    out.total.action.push_back(act);
  }
  int off = 0;
  for (const auto& m : pieces) {
    FpMatrix inc(m.dim, total, a->p);
    inc.setBlock(0, off, FpMatrix::identity(m.dim, a->p));
    FpMatrix prj(total, m.dim, a->p);
    prj.setBlock(off, 0, FpMatrix::identity(m.dim, a->p));
    out.inclusions.push_back({m, out.total, inc});
    out.projections.push_back({out.total, m, prj});
    off += m.dim;
  }
  return out;
}

FpMatrix spin(const Module& m, const FpMatrix& seedRows) {
  FpMatrix span = rowSpaceBasis(seedRows);
  for (bool grew = true; grew;) {
    grew = false;
    FpMatrix next = span;
    for (int r = 0; r < span.rows(); ++r)
      for (int i = 0; i < m.A->dim; ++i) {
        FpMatrix v = span.row(r) * m.action[i];
        if (!v.isZero() && !inRowSpace(span, v)) {
          next = vstack(next, v);
          grew = true;
        }
      }
    span = rowSpaceBasis(next);
  }
  return span;
}

Submodule submodule(const Module& m, const FpMatrix& basis) {
  Submodule out;
  out.mod.A = m.A;
  out.mod.dim = basis.rows();
  out.mod.name = m.name + ".sub";
  for (int i = 0; i < m.A->dim; ++i) {
    FpMatrix moved = basis * m.action[i];
    auto coords = coordinatesInRows(basis, moved);
    if (!coords) throw std::invalid_argument("submodule: basis is not action-closed");
    out.mod.action.push_back(*coords);
  }
  out.inclusion = {out.mod, m, basis};
  return out;
}

Quotient quotientModule(const Module& m, const FpMatrix& basis) {
  const int p = m.A->p, n = m.dim;
  RowReduction red = rowReduce(basis);
  std::vector<bool> isPivot(n, false);
  for (int c : red.pivots) isPivot[c] = true;
  std::vector<int> freeCols;
  for (int c = 0; c < n; ++c)
    if (!isPivot[c]) freeCols.push_back(c);
  const int q = int(freeCols.size());

  // Reduce a vector modulo the subspace, then read the free coordinates.
  auto project = [&](FpMatrix v) {
    for (size_t i = 0; i < red.pivots.size(); ++i)
      if (v.at(0, red.pivots[i])) v = v - red.rref.row(int(i)).scaled(v.at(0, red.pivots[i]));
    FpMatrix out(1, q, p);
    for (int j = 0; j < q; ++j) out.at(0, j) = v.at(0, freeCols[j]);
    return out;
  };

  Quotient out;
  out.mod.A = m.A;
  out.mod.dim = q;
  out.mod.name = m.name + ".quot";
  out.reps = FpMatrix(q, n, p);
  for (int j = 0; j < q; ++j) out.reps.at(j, freeCols[j]) = 1;
  FpMatrix proj(n, q, p);
  for (int r = 0; r < n; ++r) {
    FpMatrix e(1, n, p);
    e.at(0, r) = 1;
    proj.setBlock(r, 0, project(e));
  }
  for (int i = 0; i < m.A->dim; ++i) out.mod.action.push_back(out.reps * m.action[i] * proj);
  out.projection = {m, out.mod, proj};
  return out;
}

std::vector<FpMatrix> homBasis(const Module& x, const Module& y) {
  const int p = x.A->p, dx = x.dim, dy = y.dim, n = dx * dy;
  if (n == 0) return {};
  // Unknown F (dx x dy) with action_X(a) F = F action_Y(a) for every basis a.
  FpMatrix constraints(x.A->dim * n, n, p);
  for (int a = 0; a < x.A->dim; ++a) {
    const FpMatrix& ax = x.action[a];
    const FpMatrix& ay = y.action[a];
    for (int s = 0; s < dx; ++s)
      for (int t = 0; t < dy; ++t) {
        int row = a * n + s * dy + t;
        for (int u = 0; u < dx; ++u)
          constraints.at(row, u * dy + t) = uint8_t((constraints.at(row, u * dy + t) + ax.at(s, u)) % p);
        for (int u = 0; u < dy; ++u)
          constraints.at(row, s * dy + u) = uint8_t((constraints.at(row, s * dy + u) + p - ay.at(u, t)) % p);
      }
  }
  FpMatrix sols = rowReduce(constraints).kernel;
  std::vector<FpMatrix> out;
  for (int r = 0; r < sols.rows(); ++r) {
    FpMatrix f(dx, dy, p);
    for (int s = 0; s < dx; ++s)
      for (int t = 0; t < dy; ++t) f.at(s, t) = sols.at(r, s * dy + t);
    out.push_back(f);
  }
  return out;
}

int homDim(const Module& x, const Module& y) {
  if (x.dim == 0 || y.dim == 0) return 0;
  return int(homBasis(x, y).size());
}

Submodule kernel(const ModuleMap& f) { return submodule(f.src, leftKernel(f.matrix)); }
Submodule image(const ModuleMap& f) { return submodule(f.tgt, rowSpaceBasis(f.matrix)); }
Quotient cokernel(const ModuleMap& f) { return quotientModule(f.tgt, rowSpaceBasis(f.matrix)); }

Submodule radicalSubmodule(const Module& m) {
  const FpMatrix& j = m.A->radicalBasis;
  FpMatrix gen(0, m.dim, m.A->p);
  for (int r = 0; r < j.rows(); ++r) gen = vstack(gen, m.actionOf(j.row(r)));
  return submodule(m, rowSpaceBasis(gen));
}

Submodule socleSubmodule(const Module& m) {
  const FpMatrix& j = m.A->radicalBasis;
  FpMatrix stacked(m.dim, 0, m.A->p);
  for (int r = 0; r < j.rows(); ++r) stacked = hstack(stacked, m.actionOf(j.row(r)));
  if (stacked.cols() == 0) return submodule(m, FpMatrix::identity(m.dim, m.A->p));
  return submodule(m, leftKernel(stacked));
}

Quotient topQuotient(const Module& m) { return quotientModule(m, radicalSubmodule(m).inclusion.matrix); }

std::optional<ModuleMap> factorThrough(const ModuleMap& f, const ModuleMap& pi) {
  const Module& q = f.src;
  const Module& m = pi.src;
  const int p = q.A->p, dq = q.dim, dm = m.dim, n = dq * dm;
  if (n == 0) {
    if (f.matrix.isZero()) return ModuleMap{q, m, FpMatrix(dq, dm, p)};
    return std::nullopt;
  }
  // Unknown H (dq x dm): module map constraints plus H * pi = f.
  int nConstraints = q.A->dim * n + dq * pi.tgt.dim;
  FpMatrix c(nConstraints, n, p);
  FpMatrix rhs(nConstraints, 1, p);
  for (int a = 0; a < q.A->dim; ++a)
    for (int s = 0; s < dq; ++s)
      for (int t = 0; t < dm; ++t) {
        int row = a * n + s * dm + t;
        for (int u = 0; u < dq; ++u)
          c.at(row, u * dm + t) = uint8_t((c.at(row, u * dm + t) + q.action[a].at(s, u)) % p);
        for (int u = 0; u < dm; ++u)
          c.at(row, s * dm + u) = uint8_t((c.at(row, s * dm + u) + p - m.action[a].at(u, t)) % p);
      }
  int base = q.A->dim * n;
  for (int s = 0; s < dq; ++s)
    for (int t = 0; t < pi.tgt.dim; ++t) {
      int row = base + s * pi.tgt.dim + t;
      for (int u = 0; u < dm; ++u) c.at(row, s * dm + u) = pi.matrix.at(u, t);
      rhs.at(row, 0) = f.matrix.at(s, t);
    }
  auto sol = solveLinear(c, rhs);
  if (!sol) return std::nullopt;
  FpMatrix h(dq, dm, p);
  for (int s = 0; s < dq; ++s)
    for (int t = 0; t < dm; ++t) h.at(s, t) = sol->at(s * dm + t, 0);
  return ModuleMap{q, m, h};
}

IsoResult isIsomorphic(const Module& x, const Module& y, uint64_t seed, int trialBudget) {
  if (x.dim != y.dim) return {Verdict::No, std::nullopt};
  if (x.dim == 0) return {Verdict::Yes, ModuleMap{x, y, FpMatrix(0, 0, x.A->p)}};
  auto homs = homBasis(x, y);
  if (homs.empty()) return {Verdict::No, std::nullopt};
  CoefficientSource src(int(homs.size()), x.A->p, seed, trialBudget);
  for (long i = 0; i < src.count(); ++i) {
    FpMatrix f = combine(homs, src.get(i));
    if (inverse(f).has_value()) return {Verdict::Yes, ModuleMap{x, y, f}};
  }
  return {src.exhaustive() ? Verdict::No : Verdict::Inconclusive, std::nullopt};
}

namespace {

// Fitting decomposition along a single endomorphism, if it splits m.
struct FittingSplit {
  FpMatrix imageBasis, kernelBasis;
};

std::optional<FittingSplit> fittingSplit(const Module& m, const FpMatrix& endo) {
  FpMatrix s = endo;
  int prev = -1;
  for (int step = 0; step < m.dim + 1; ++step) {
    int r = rank(s);
    if (r == prev) break;
    prev = r;
    s = s * s;
  }
  int r = rank(s);
  if (r == 0 || r == m.dim) return std::nullopt;
  FittingSplit out;
  out.imageBasis = rowSpaceBasis(s);
  out.kernelBasis = leftKernel(s);
  return out;
}

void decomposeInto(const Module& m, const ModuleMap& incl, const ModuleMap& proj, Decomposition& out,
                   uint64_t seed, int trialBudget) {
  if (m.dim == 0) return;
  auto endos = homBasis(m, m);
  CoefficientSource src(int(endos.size()), m.A->p, seed, trialBudget);
  for (long i = 0; i < src.count(); ++i) {
    FpMatrix e = combine(endos, src.get(i));
    auto split = fittingSplit(m, e);
    if (!split) continue;
    // m = image + kernel of the stable power; build both summands with the
    // projections along each other.
    const FpMatrix& ib = split->imageBasis;
    const FpMatrix& kb = split->kernelBasis;
    Submodule imSub = submodule(m, ib);
    Submodule kerSub = submodule(m, kb);
    // Projection onto the image along the kernel: v * s expressed in image
    // coordinates, corrected by the inverse of s restricted to the image.
    FpMatrix s = e;
    int prev = -1;
    for (int step = 0; step < m.dim + 1; ++step) {
      int r0 = rank(s);
      if (r0 == prev) break;
      prev = r0;
      s = s * s;
    }
    auto t = coordinatesInRows(ib, ib * s);
    auto tInv = inverse(*t);
    FpMatrix toIm(m.dim, ib.rows(), m.A->p);
    for (int r0 = 0; r0 < m.dim; ++r0) {
      FpMatrix ev(1, m.dim, m.A->p);
      ev.at(0, r0) = 1;
      toIm.setBlock(r0, 0, *coordinatesInRows(ib, ev * s));
    }
    FpMatrix imProj = toIm * *tInv;
    FpMatrix kerEndo = FpMatrix::identity(m.dim, m.A->p) - imProj * ib;
    FpMatrix kerProj(m.dim, kb.rows(), m.A->p);
    for (int r0 = 0; r0 < m.dim; ++r0)
      kerProj.setBlock(r0, 0, *coordinatesInRows(kb, kerEndo.row(r0)));

    ModuleMap imIncl = compose(imSub.inclusion, incl);
    ModuleMap imPrj = compose(proj, ModuleMap{m, imSub.mod, imProj});
    ModuleMap kIncl = compose(kerSub.inclusion, incl);
    ModuleMap kPrj = compose(proj, ModuleMap{m, kerSub.mod, kerProj});
    decomposeInto(imSub.mod, imIncl, imPrj, out, seed * 2 + 1, trialBudget);
    decomposeInto(kerSub.mod, kIncl, kPrj, out, seed * 2 + 2, trialBudget);
    return;
  }
  if (!src.exhaustive()) out.certified = false;
  out.summands.push_back({m, incl, proj});
}

}  // namespace

Decomposition decompose(const Module& m, uint64_t seed, int trialBudget) {
  Decomposition out;
  decomposeInto(m, identityMap(m), identityMap(m), out, seed, trialBudget);
  return out;
}

Submodule simpleSubmodule(const Module& m) {
  if (m.dim == 0) throw std::invalid_argument("simpleSubmodule: zero module");
  FpMatrix seed(1, m.dim, m.A->p);
  seed.at(0, 0) = 1;
  FpMatrix w = spin(m, seed);
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    CoefficientSource src(w.rows(), m.A->p, 17, 2048);
    for (long i = 1; i < src.count(); ++i) {
      auto coeffs = src.get(i);
      FpMatrix v(1, m.dim, m.A->p);
      bool nz = false;
      for (int r = 0; r < w.rows(); ++r)
        if (coeffs[r]) {
          v = v + w.row(r).scaled(coeffs[r]);
          nz = true;
        }
      if (!nz || v.isZero()) continue;
      FpMatrix w2 = spin(m, v);
      if (w2.rows() < w.rows()) {
        w = w2;
        shrunk = true;
        break;
      }
    }
  }
  return submodule(m, w);
}

std::vector<Module> compositionFactors(const Module& m) {
  std::vector<Module> out;
  Module cur = m;
  while (cur.dim > 0) {
    Submodule s = simpleSubmodule(cur);
    out.push_back(s.mod);
    cur = quotientModule(cur, s.inclusion.matrix).mod;
  }
  return out;
}

Algebra::Caches& cachesOf(const AlgebraPtr& a) {
  if (!a->caches) a->caches = std::make_shared<Algebra::Caches>();
  return *a->caches;
}

const IndecProjectives& indecProjectives(const AlgebraPtr& a) {
  auto& c = cachesOf(a);
  if (!c.indecs) {
    IndecProjectives out;
    Module reg = regularModule(a);
    for (size_t i = 0; i < a->idempotents.size(); ++i) {
      FpMatrix gen(0, a->dim, a->p);
      for (int j = 0; j < a->dim; ++j) gen = vstack(gen, a->multiply(a->idempotents[i].vec, a->basisVector(j)));
      Module p = submodule(reg, rowSpaceBasis(gen)).mod;
      p.name = "P(" + a->idempotents[i].label + ")";
      int cls = -1;
      for (size_t k = 0; k < out.projectives.size(); ++k)
        if (isIsomorphic(out.projectives[k], p).verdict == Verdict::Yes) {
          cls = int(k);
          break;
        }
      if (cls < 0) {
        cls = int(out.projectives.size());
        out.projectives.push_back(p);
      }
      out.idemToClass.push_back(cls);
    }
    for (auto& p : out.projectives) {
      Quotient t = topQuotient(p);
      t.mod.name = "top(" + p.name + ")";
      out.simples.push_back(t.mod);
      out.tops.push_back(t.projection);
    }
    c.indecs = std::move(out);
  }
  return *c.indecs;
}

int projectiveClassOf(const Module& m) {
  const auto& ip = indecProjectives(m.A);
  for (size_t i = 0; i < ip.projectives.size(); ++i)
    if (isIsomorphic(ip.projectives[i], m).verdict == Verdict::Yes) return int(i);
  return -1;
}

int simpleClassOf(const Module& m) {
  const auto& ip = indecProjectives(m.A);
  for (size_t i = 0; i < ip.simples.size(); ++i)
    if (isIsomorphic(ip.simples[i], m).verdict == Verdict::Yes) return int(i);
  return -1;
}

namespace {

// Maps P_i -> t hitting a simple-by-simple decomposition of the semisimple
// module t.
void semisimpleCoverInto(const Module& t, std::vector<std::pair<int, ModuleMap>>& out) {
  if (t.dim == 0) return;
  const auto& ip = indecProjectives(t.A);
  Submodule s = simpleSubmodule(t);
  int cls = -1;
  std::optional<ModuleMap> w;
  for (size_t i = 0; i < ip.simples.size(); ++i) {
    auto iso = isIsomorphic(ip.simples[i], s.mod);
    if (iso.verdict == Verdict::Yes) {
      cls = int(i);
      w = iso.witness;
      break;
    }
  }
  if (cls < 0) throw std::logic_error("semisimpleCover: unrecognized simple composition factor");
  ModuleMap toT = compose(compose(ip.tops[cls], *w), s.inclusion);
  Quotient q = quotientModule(t, s.inclusion.matrix);
  std::vector<std::pair<int, ModuleMap>> rest;
  semisimpleCoverInto(q.mod, rest);
  out.push_back({cls, toT});
  for (auto& [cls2, f] : rest) {
    auto lifted = factorThrough(f, q.projection);
    if (!lifted) throw std::logic_error("semisimpleCover: lift failed");
    out.push_back({cls2, *lifted});
  }
}

}  // namespace

Cover projectiveCover(const Module& m) {
  const auto& ip = indecProjectives(m.A);
  Cover out;
  if (m.dim == 0) {
    out.proj = zeroModule(m.A);
    out.map = zeroMap(out.proj, m);
    return out;
  }
  Quotient top = topQuotient(m);
  std::vector<std::pair<int, ModuleMap>> pieces;
  semisimpleCoverInto(top.mod, pieces);
  std::vector<Module> projs;
  for (auto& [cls, f] : pieces) {
    out.parts.push_back(cls);
    projs.push_back(ip.projectives[cls]);
  }
  SumDecomposition sum = directSum(projs);
  out.proj = sum.total;
  FpMatrix toTop(out.proj.dim, top.mod.dim, m.A->p);
  {
    int off = 0;
    for (size_t i = 0; i < pieces.size(); ++i) {
      toTop.setBlock(off, 0, pieces[i].second.matrix);
      off += projs[i].dim;
    }
  }
  auto lifted = factorThrough(ModuleMap{out.proj, top.mod, toTop}, top.projection);
  if (!lifted) throw std::logic_error("projectiveCover: lift through the top failed");
  out.map = *lifted;
  if (rank(out.map.matrix) != m.dim) throw std::logic_error("projectiveCover: cover is not surjective");
  return out;
}

bool isProjectiveModule(const Module& m) {
  Cover c = projectiveCover(m);
  return c.proj.dim == m.dim;
}

Hull injectiveHull(const Module& m) {
  // Dualize: the injective hull is the dual of the projective cover of the
  // dual module over the opposite algebra.  With the transpose convention
  // D(D(X)) is literally X again.
  AlgebraPtr op = m.A->opposite();
  Module d;
  d.A = op;
  d.dim = m.dim;
  d.name = "D(" + m.name + ")";
  for (int i = 0; i < m.A->dim; ++i) d.action.push_back(m.action[i].transpose());
  Cover c = projectiveCover(d);
  Hull out;
  out.inj.A = m.A;
  out.inj.dim = c.proj.dim;
  out.inj.name = "I";
  for (int i = 0; i < m.A->dim; ++i) out.inj.action.push_back(c.proj.action[i].transpose());
  out.map = {m, out.inj, c.map.matrix.transpose()};
  return out;
}

Stripped stripProjectiveSummands(const Module& m, uint64_t seed) {
  Decomposition dec = decompose(m, seed);
  Stripped out;
  std::vector<Module> keep;
  for (auto& s : dec.summands) {
    int cls = projectiveClassOf(s.piece);
    if (cls >= 0)
      out.droppedProjectiveParts.push_back(cls);
    else
      keep.push_back(s.piece);
  }
  if (keep.empty())
    out.mod = zeroModule(m.A);
  else if (keep.size() == 1)
    out.mod = keep[0];
  else
    out.mod = directSum(keep).total;
  return out;
}

void checkShortExact(const ShortExact& s) {
  if (!s.f.commutesWithAction() || !s.g.commutesWithAction()) throw std::logic_error("short exact: maps are not module maps");
  if (rank(s.f.matrix) != s.X.dim) throw std::logic_error("short exact: f not injective");
  if (rank(s.g.matrix) != s.Z.dim) throw std::logic_error("short exact: g not surjective");
  FpMatrix im = rowSpaceBasis(s.f.matrix);
  FpMatrix ker = leftKernel(s.g.matrix);
  if (im.rows() != ker.rows() || !(s.f.matrix * s.g.matrix).isZero())
    throw std::logic_error("short exact: middle not exact");
  for (int r = 0; r < ker.rows(); ++r)
    if (!inRowSpace(im, ker.row(r))) throw std::logic_error("short exact: middle not exact");
}

namespace {

struct TwoStepResolution {
  Cover p0;        // P0 ->> Z
  Submodule omega; // ker(P0 -> Z) inside P0
  Cover p1;        // P1 ->> omega
  ModuleMap d1;    // P1 -> P0
  Submodule omega2;
  Cover p2;
  ModuleMap d2;    // P2 -> P1
};

TwoStepResolution twoStepResolution(const Module& z) {
  TwoStepResolution r;
  r.p0 = projectiveCover(z);
  r.omega = kernel(r.p0.map);
  r.p1 = projectiveCover(r.omega.mod);
  r.d1 = compose(r.p1.map, r.omega.inclusion);
  r.omega2 = kernel(r.p1.map);
  r.p2 = projectiveCover(r.omega2.mod);
  r.d2 = compose(r.p2.map, r.omega2.inclusion);
  return r;
}

// Vectorize hom-space elements so subspace ranks can be compared.
FpMatrix vectorizeAll(const std::vector<FpMatrix>& maps, int rows, int cols, int p) {
  FpMatrix out(int(maps.size()), rows * cols, p);
  for (size_t i = 0; i < maps.size(); ++i)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out.at(int(i), r * cols + c) = maps[i].at(r, c);
  return out;
}

}  // namespace

int ext1Dim(const Module& z, const Module& x) {
  if (z.dim == 0 || x.dim == 0) return 0;
  TwoStepResolution r = twoStepResolution(z);
  auto h1 = homBasis(r.p1.proj, x);
  std::vector<FpMatrix> cocycles;
  for (auto& f : h1)
    if ((r.d2.matrix * f).isZero()) cocycles.push_back(f);
  std::vector<FpMatrix> coboundaries;
  for (auto& g : homBasis(r.p0.proj, x)) coboundaries.push_back(r.d1.matrix * g);
  int p = z.A->p;
  FpMatrix cv = vectorizeAll(cocycles, r.p1.proj.dim, x.dim, p);
  FpMatrix bv = vectorizeAll(coboundaries, r.p1.proj.dim, x.dim, p);
  return rank(cv) - rank(bv);
}

std::vector<ShortExact> ext1Extensions(const Module& z, const Module& x, bool includeSplit) {
  std::vector<ShortExact> out;
  const int p = z.A->p;
  auto makeSplit = [&]() {
    SumDecomposition s = directSum({x, z});
    ShortExact e{x, s.total, z, s.inclusions[0], s.projections[1]};
    return e;
  };
  if (z.dim == 0 || x.dim == 0) {
    if (includeSplit) out.push_back(makeSplit());
    return out;
  }
  TwoStepResolution r = twoStepResolution(z);

  // Independent cocycles modulo coboundaries.
  auto h1 = homBasis(r.p1.proj, x);
  std::vector<FpMatrix> cocycles;
  for (auto& f : h1)
    if ((r.d2.matrix * f).isZero()) cocycles.push_back(f);
  std::vector<FpMatrix> coboundaries;
  for (auto& g : homBasis(r.p0.proj, x)) coboundaries.push_back(r.d1.matrix * g);
  FpMatrix bspan = rowSpaceBasis(vectorizeAll(coboundaries, r.p1.proj.dim, x.dim, p));
  FpMatrix running = bspan;
  std::vector<FpMatrix> reps;
  for (auto& f : cocycles) {
    FpMatrix v = vectorizeAll({f}, r.p1.proj.dim, x.dim, p);
    if (running.rows() == 0 || !inRowSpace(running, v)) {
      reps.push_back(f);
      running = rowSpaceBasis(vstack(running, v));
    }
  }

  // Right inverse of P1 ->> omega to induce omega -> x from each cocycle.
  FpMatrix covT = r.p1.map.matrix.transpose();
  auto rinvT = solveLinear(covT, FpMatrix::identity(r.omega.mod.dim, p));
  if (!rinvT) throw std::logic_error("ext1: cover has no linear section");
  FpMatrix rinv = rinvT->transpose();  // omega.dim x P1.dim

  for (auto& xi : reps) {
    FpMatrix xiBar = rinv * xi;  // omega -> x
    // Middle term (x + P0) / graph with f and g as in the pushout.
    SumDecomposition amb = directSum({x, r.p0.proj});
    FpMatrix graph(r.omega.mod.dim, amb.total.dim, p);
    graph.setBlock(0, 0, -xiBar);
    graph.setBlock(0, x.dim, r.omega.inclusion.matrix);
    Quotient q = quotientModule(amb.total, rowSpaceBasis(graph));
    ShortExact e;
    e.X = x;
    e.Z = z;
    e.Y = q.mod;
    e.f = compose(amb.inclusions[0], q.projection);
    FpMatrix gmat(amb.total.dim, z.dim, p);
    gmat.setBlock(x.dim, 0, r.p0.map.matrix);
    e.g = {q.mod, z, q.reps * gmat};
    checkShortExact(e);
    out.push_back(e);
  }
  if (includeSplit) out.push_back(makeSplit());
  return out;
}

FpMatrix radicalOfAlgebraFromSimples(const AlgebraPtr& a) {
  // J(A) is the common annihilator of the composition factors of A_A.
  Module reg;
  reg.A = a;
  reg.dim = a->dim;
  for (int i = 0; i < a->dim; ++i) reg.action.push_back(a->rightMultiplication(a->basisVector(i)));
  std::vector<Module> factors = compositionFactors(reg);
  FpMatrix stacked(a->dim, 0, a->p);
  for (const auto& s : factors) {
    FpMatrix block(a->dim, s.dim * s.dim, a->p);
    for (int i = 0; i < a->dim; ++i)
      for (int r = 0; r < s.dim; ++r)
        for (int c = 0; c < s.dim; ++c) block.at(i, r * s.dim + c) = s.action[i].at(r, c);
    stacked = hstack(stacked, block);
  }
  if (stacked.cols() == 0) return FpMatrix(0, a->dim, a->p);
  return leftKernel(stacked);
}

std::vector<Idempotent> computePrimitiveIdempotents(const AlgebraPtr& a) {
  Module reg = regularModule(a);
  Decomposition dec = decompose(reg, 5);
  if (!dec.certified)
    throw std::runtime_error("computePrimitiveIdempotents: decomposition of the regular module not certified");
  std::vector<Idempotent> out;
  for (size_t k = 0; k < dec.summands.size(); ++k) {
    // The projection endomorphism of A_A onto the summand is a left
    // multiplication; evaluating at 1 recovers the idempotent element.
    FpMatrix endo = dec.summands[k].projection.matrix * dec.summands[k].inclusion.matrix;
    out.push_back({a->unit * endo, "f" + std::to_string(k)});
  }
  return out;
}

}  // namespace stmod
