#include "stmod/kato.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stmod {

namespace {

// ---------------------------------------------------------------------------
// Stripping projective summands with the section/retraction pair.

struct StripData {
  Module mod;      // direct sum of the non-projective summands
  ModuleMap incl;  // mod -> x
  ModuleMap proj;  // x -> mod
};

StripData stripWithMaps(const Module& x) {
  StripData out;
  if (x.dim == 0) {
    out.mod = zeroModule(x.A);
    out.incl = zeroMap(out.mod, x);
    out.proj = zeroMap(x, out.mod);
    return out;
  }
  Decomposition dec = decompose(x);
  std::vector<const Summand*> keep;
  for (const auto& s : dec.summands)
    if (!isProjectiveModule(s.piece)) keep.push_back(&s);
  if (keep.empty()) {
    out.mod = zeroModule(x.A);
    out.incl = zeroMap(out.mod, x);
    out.proj = zeroMap(x, out.mod);
    return out;
  }
  std::vector<Module> pieces;
  for (auto* s : keep) pieces.push_back(s->piece);
  Module sum = pieces.size() == 1 ? pieces[0] : directSum(pieces).total;
  FpMatrix incl(sum.dim, x.dim, x.A->p), proj(x.dim, sum.dim, x.A->p);
  int off = 0;
  for (auto* s : keep) {
    incl.setBlock(off, 0, s->inclusion.matrix);
    proj.setBlock(0, off, s->projection.matrix);
    off += s->piece.dim;
  }
  out.mod = sum;
  out.incl = ModuleMap{sum, x, incl};
  out.proj = ModuleMap{x, sum, proj};
  return out;
}

// Solve (g then v) = t for a module map v: g.tgt -> t.tgt.
std::optional<ModuleMap> factorLeft(const ModuleMap& t, const ModuleMap& g) {
  const Module& c = g.tgt;
  const Module& b = t.tgt;
  const int p = c.A->p;
  if (t.src.dim == 0 || b.dim == 0) return ModuleMap{c, b, FpMatrix(c.dim, b.dim, p)};
  auto basis = homBasis(c, b);
  FpMatrix vecs(int(basis.size()), t.src.dim * b.dim, p);
  for (int i = 0; i < int(basis.size()); ++i) {
    FpMatrix m = g.matrix * basis[i];
    for (int r = 0; r < m.rows(); ++r)
      for (int col = 0; col < m.cols(); ++col) vecs.at(i, r * b.dim + col) = m.at(r, col);
  }
  FpMatrix rhs(1, t.src.dim * b.dim, p);
  for (int r = 0; r < t.matrix.rows(); ++r)
    for (int col = 0; col < t.matrix.cols(); ++col) rhs.at(0, r * b.dim + col) = t.matrix.at(r, col);
  auto coords = coordinatesInRows(vecs, rhs);
  if (!coords) return std::nullopt;
  FpMatrix v(c.dim, b.dim, p);
  for (int i = 0; i < int(basis.size()); ++i)
    if (coords->at(0, i)) v = v + basis[i].scaled(coords->at(0, i));
  return ModuleMap{c, b, v};
}

Complex trimZeroEdges(const Complex& f) {
  if (!f.isBounded()) return f;
  int lo = f.lo, hi = f.hi;
  while (lo < hi && f.term(lo).mod.dim == 0) ++lo;
  while (hi > lo && f.term(hi).mod.dim == 0) --hi;
  if (lo == f.lo && hi == f.hi) return f;
  std::vector<Term> terms;
  std::vector<FpMatrix> diffs;
  for (int k = lo; k <= hi; ++k) terms.push_back(f.term(k));
  for (int k = lo; k < hi; ++k) diffs.push_back(f.diff(k));
  return boundedComplex(f.A, lo, std::move(terms), std::move(diffs));
}

Complex katoComplexStripped(const Module& xs, int lo, int hi);

}  // namespace

// ---------------------------------------------------------------------------
// Minimal projective resolutions as complexes.

ModuleMap resolutionAugmentation(const Module& x) { return projectiveCover(x).map; }

Complex minResolutionComplex(const Module& x, int lo) {
  const AlgebraPtr a = x.A;
  lo = std::min(lo, 0);
  if (x.dim == 0) return ensureWindow(zeroComplex(a), lo, 0);
  Cover c0 = projectiveCover(x);
  std::vector<Term> rev = {termFromParts(a, c0.parts)};
  std::vector<FpMatrix> revDiffs;
  Submodule syz = kernel(ModuleMap{rev[0].mod, x, c0.map.matrix});
  bool terminated = false;
  for (int k = -1; k >= lo; --k) {
    if (syz.mod.dim == 0) {
      terminated = true;
      break;
    }
    Cover c = projectiveCover(syz.mod);
    Term t = termFromParts(a, c.parts);
    revDiffs.push_back(c.map.matrix * syz.inclusion.matrix);
    syz = kernel(ModuleMap{t.mod, syz.mod, c.map.matrix});
    rev.push_back(std::move(t));
  }
  if (!terminated && syz.mod.dim == 0) terminated = true;
  Complex out;
  out.A = a;
  out.hi = 0;
  out.lo = -int(rev.size()) + 1;
  out.terms.assign(rev.rbegin(), rev.rend());
  out.diffs.assign(revDiffs.rbegin(), revDiffs.rend());
  out.leftTail = terminated ? LeftTail::Zero : LeftTail::Acyclic;
  out.rightTail = RightTail::Zero;
  if (!terminated) {
    Module base = x;
    out.regen = [base](int a2, int b2) {
      return ensureWindow(minResolutionComplex(base, std::min(a2, 0)), a2, b2);
    };
  }
  out.check();
  return out;
}

// ---------------------------------------------------------------------------
// The complete-resolution complex.

namespace {

Complex katoComplexStripped(const Module& xs, int lo, int hi) {
  const AlgebraPtr a = xs.A;
  lo = std::min(lo, -1);
  hi = std::max(hi, 1);
  if (xs.dim == 0) return ensureWindow(zeroComplex(a), lo, hi);

  Complex left = minResolutionComplex(xs, lo);
  LeftTail leftTail = left.leftTail;
  left = ensureWindow(left, lo, 0);

  Complex out;
  out.A = a;
  out.lo = lo;
  out.hi = hi;
  for (int k = lo; k <= 0; ++k) out.terms.push_back(left.term(k));
  for (int k = lo; k < 0; ++k) out.diffs.push_back(left.diff(k));

  StarModule sx = starModule(xs);
  if (sx.mod.dim == 0) {
    for (int n = 1; n <= hi; ++n) out.terms.push_back(zeroTerm(a));
    for (int n = 0; n < hi; ++n)
      out.diffs.push_back(FpMatrix(out.terms[n - lo].mod.dim, out.terms[n + 1 - lo].mod.dim, a->p));
    out.leftTail = leftTail;
    out.rightTail = RightTail::Zero;
  } else {
    Complex qRaw = minResolutionComplex(sx.mod, -(hi - 1));
    bool qTerminated = qRaw.leftTail == LeftTail::Zero;
    bool rightZero = qTerminated && qRaw.lo > -hi;
    Complex q = ensureWindow(qRaw, -(hi - 1), 0);

    std::vector<StarModule> st;      // st[n-1] = star of Q^{1-n}, n = 1..hi
    std::vector<ProjectivePresentation> pres;
    for (int n = 1; n <= hi; ++n) {
      st.push_back(starModule(q.term(1 - n).mod));
      pres.push_back(presentProjective(st.back().mod));
    }
    for (int n = 1; n <= hi; ++n) {
      Term t;
      t.parts = pres[n - 1].parts;
      t.mod = pres[n - 1].standard;
      out.terms.push_back(std::move(t));
    }
    // splice differential F^0 -> F^1
    {
      ModuleMap pi = resolutionAugmentation(xs);
      StarModule ssx = starModule(sx.mod);
      ModuleMap ev = evaluationMap(xs, sx, ssx);
      ModuleMap augQ = resolutionAugmentation(sx.mod);
      ModuleMap sAug = starMap(augQ, st[0], ssx);  // star(s) -> star(Q^0)
      auto inv1 = inverse(pres[0].iso.matrix);
      if (!inv1) throw std::logic_error("katoComplex: presentation not invertible");
      out.diffs.push_back(pi.matrix * ev.matrix * sAug.matrix * *inv1);
    }
    for (int n = 1; n < hi; ++n) {
      ModuleMap dq{q.term(-n).mod, q.term(1 - n).mod, q.diff(-n)};
      ModuleMap sm = starMap(dq, st[n], st[n - 1]);  // star(Q^{1-n}) -> star(Q^{-n})
      auto inv = inverse(pres[n].iso.matrix);
      if (!inv) throw std::logic_error("katoComplex: presentation not invertible");
      out.diffs.push_back(pres[n - 1].iso.matrix * sm.matrix * *inv);
    }
    out.leftTail = leftTail;
    out.rightTail = rightZero ? RightTail::Zero : RightTail::DualAcyclic;
  }

  Module base = xs;
  out.regen = [base](int a2, int b2) { return katoComplexStripped(base, a2, b2); };
  out.check();
  // Interior window sanity: the complex is exact in negative degrees and its
  // star-dual is exact in the non-negative ones.
  for (int k = lo + 1; k <= -1; ++k)
    if (cohomology(out, k).dim != 0) throw std::logic_error("katoComplex: nonzero cohomology below zero");
  for (int k = 0; k <= hi - 1; ++k)
    if (dualHomology(out, k).dim != 0) throw std::logic_error("katoComplex: dual homology nonzero at or above zero");
  return out;
}

}  // namespace

Complex katoComplex(const Module& x, int lo, int hi) {
  return katoComplexStripped(stripWithMaps(x).mod, lo, hi);
}

// ---------------------------------------------------------------------------
// Window membership in L and the stable inverse.

namespace {

// Returns (side, degree) with side 'H' for nonzero H^k, 'D' for nonzero
// H_k(Hom(f,A)); nullopt when the window satisfies the L conditions.
std::optional<std::pair<char, int>> lWindowFailure(const Complex& f) {
  for (int k = f.lo; k <= -1; ++k)
    if (k <= f.hi && cohomology(f, k).dim != 0) return std::make_pair('H', k);
  for (int k = std::max(0, f.lo); k <= f.hi; ++k)
    if (dualHomology(f, k).dim != 0) return std::make_pair('D', k);
  return std::nullopt;
}

}  // namespace

bool inLWindowConditions(const Complex& f) { return !lWindowFailure(f).has_value(); }

Module stableInverse(const Complex& f) {
  if (!inLWindowConditions(f)) throw std::invalid_argument("stableInverse: window fails the L conditions");
  Complex g = ensureWindow(f, std::min(f.lo, -1), std::max(f.hi, 0));
  Quotient cok = cokernel(ModuleMap{g.term(-1).mod, g.term(0).mod, g.diff(-1)});
  return stripWithMaps(cok.mod).mod;
}

// ---------------------------------------------------------------------------
// Perpendicularity and hull membership.

PerpResult inPerp(const Module& x, const std::vector<Module>& targets) {
  PerpResult out;
  for (size_t i = 0; i < targets.size(); ++i) {
    auto hb = homBasis(x, targets[i]);
    if (!hb.empty()) {
      out.ok = false;
      out.failTarget = int(i);
      out.witness = ModuleMap{x, targets[i], hb[0]};
      break;
    }
  }
  bool allInjective = true;
  for (const auto& t : targets)
    if (t.dim == 0 || !isProjectiveModule(dualD(t))) allInjective = false;
  if (allInjective && !targets.empty() && x.dim > 0) {
    bool viaFactors = true;
    for (const auto& s : compositionFactors(x)) {
      for (const auto& t : targets)
        if (homDim(s, t) != 0) viaFactors = false;
      if (!viaFactors) break;
    }
    if (viaFactors != out.ok) throw std::logic_error("inPerp: composition-factor criterion disagrees");
  }
  return out;
}

HullCertificate hullMembership(const Complex& f) {
  HullCertificate cert;
  const AlgebraPtr a = f.A;

  // r: the largest window degree with nonzero dual homology, plus one.  The
  // tail certificates cover everything above the window.
  int m = f.lo - 1;
  for (int k = f.hi; k >= f.lo; --k)
    if (dualHomology(f, k).dim != 0) {
      m = k;
      break;
    }
  cert.r = m + 1;

  // l: the first window degree with nonzero cohomology (everything below the
  // window vanishes by the tail certificate).
  std::map<int, Module> hCache;
  int l = f.hi + 1;
  for (int k = f.lo; k <= f.hi; ++k) {
    Module h = cohomology(f, k);
    if (h.dim != 0) {
      hCache.emplace(k, h);
      l = k;
      break;
    }
  }
  cert.l = l;

  cert.inL = l >= 0 && m <= -1;
  if (l < 0) cert.lowerFailDegree = l;
  if (m >= 0) cert.dualFailDegree = m;

  const auto& ip = indecProjectives(a);
  auto projCls = projInjectiveClasses(a);
  auto stpCls = stronglyProjInjectiveClasses(a);
  std::vector<Module> projTargets, stpTargets;
  for (int cls : projCls) projTargets.push_back(ip.projectives[cls]);
  for (int cls : stpCls) stpTargets.push_back(ip.projectives[cls]);

  cert.inHP = true;
  cert.inHstp = true;
  for (int k = l; k < cert.r; ++k) {
    auto it = hCache.find(k);
    Module h = it != hCache.end() ? it->second : cohomology(f, k);
    if (h.dim == 0) continue;
    PerpResult pr = inPerp(h, projTargets);
    if (!pr.ok) {
      cert.inHP = false;
      cert.projPerpFailures.push_back({k, projCls[pr.failTarget], *pr.witness});
    }
    PerpResult sr = inPerp(h, stpTargets);
    if (!sr.ok) {
      cert.inHstp = false;
      cert.stpPerpFailures.push_back({k, stpCls[sr.failTarget], *sr.witness});
    }
  }
  if (cert.inL && !(cert.inHP && cert.inHstp))
    throw std::logic_error("hullMembership: complex in L failed a perpendicularity check");
  if (cert.inHP && !cert.inHstp)
    throw std::logic_error("hullMembership: strongly projective-injective targets exceed projective-injectives");

  cert.verdict = cert.inL      ? HullVerdict::InL
                 : cert.inHP   ? HullVerdict::InHP
                 : cert.inHstp ? HullVerdict::InHstp
                               : HullVerdict::InHp;
  return cert;
}

// ---------------------------------------------------------------------------
// Perfect exact sequences.

bool isPerfectExact(const ShortExact& s) {
  if (rank(s.f.matrix) != s.X.dim) return false;
  if (rank(s.g.matrix) != s.Z.dim) return false;
  if (s.Y.dim != s.X.dim + s.Z.dim) return false;
  if (s.X.dim > 0 && s.Z.dim > 0 && !(s.f.matrix * s.g.matrix).isZero()) return false;
  StarModule sx = starModule(s.X), sy = starModule(s.Y), sz = starModule(s.Z);
  ModuleMap gs = starMap(s.g, sy, sz);  // star(Z) -> star(Y)
  ModuleMap fs = starMap(s.f, sx, sy);  // star(Y) -> star(X)
  if (rank(gs.matrix) != sz.mod.dim) return false;
  if (rank(fs.matrix) != sx.mod.dim) return false;
  if (sy.mod.dim != sz.mod.dim + sx.mod.dim) return false;
  if (sz.mod.dim > 0 && sx.mod.dim > 0 && !(gs.matrix * fs.matrix).isZero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lifting module maps to complete resolutions.

namespace {

ChainMap liftStripped(const ModuleMap& fbar, int lo, int hi) {
  lo = std::min(lo, -1);
  hi = std::max(hi, 1);
  Complex F = katoComplexStripped(fbar.src, lo, hi);
  Complex G = katoComplexStripped(fbar.tgt, lo, hi);
  std::map<int, FpMatrix> comp;

  ModuleMap piF = resolutionAugmentation(fbar.src);
  ModuleMap piG = resolutionAugmentation(fbar.tgt);
  auto u0 = factorThrough(compose(piF, fbar), piG);
  if (!u0) throw std::logic_error("liftModuleMap: lift through the cover failed");
  comp[0] = u0->matrix;
  for (int k = -1; k >= lo; --k) {
    ModuleMap rhs{F.term(k).mod, G.term(k + 1).mod, F.diff(k) * comp[k + 1]};
    auto uk = factorThrough(rhs, ModuleMap{G.term(k).mod, G.term(k + 1).mod, G.diff(k)});
    if (!uk) throw std::logic_error("liftModuleMap: downward lift failed");
    comp[k] = uk->matrix;
  }
  for (int k = 1; k <= hi; ++k) {
    ModuleMap t{F.term(k - 1).mod, G.term(k).mod, comp[k - 1] * G.diff(k - 1)};
    auto uk = factorLeft(t, ModuleMap{F.term(k - 1).mod, F.term(k).mod, F.diff(k - 1)});
    if (!uk) throw std::logic_error("liftModuleMap: upward lift failed");
    comp[k] = uk->matrix;
  }
  ChainMap u;
  u.src = F;
  u.tgt = G;
  for (int k = lo; k <= hi; ++k) u.comps.push_back(comp[k]);
  ModuleMap base = fbar;
  u.regen = [base](int a2, int b2) { return liftStripped(base, a2, b2); };
  u.check();
  return u;
}

}  // namespace

ChainMap liftModuleMap(const ModuleMap& f, int lo, int hi) {
  StripData xd = stripWithMaps(f.src);
  StripData yd = stripWithMaps(f.tgt);
  ModuleMap fbar = compose(compose(xd.incl, f), yd.proj);
  return liftStripped(fbar, lo, hi);
}

Verdict checkPerfectTriangle(const ShortExact& s, int lo, int hi, uint64_t seed) {
  lo = std::min(lo, -4);
  hi = std::max(hi, 4);
  ChainMap u = liftModuleMap(s.f, lo, hi);
  Complex c = cone(u);
  if (!inLWindowConditions(c)) return Verdict::No;
  Module zc = stableInverse(c);
  Module zs = stripWithMaps(s.Z).mod;
  if (zc.dim != zs.dim) return Verdict::No;
  return isIsomorphic(zc, zs, seed).verdict;
}

// ---------------------------------------------------------------------------
// Removal of the lowest cohomology.

namespace {

ChainMap removalMap(const Complex& f0, int k, const ModuleMap& hInto, int lo, int hi) {
  Complex f = ensureWindow(f0, std::min(std::min(f0.lo, k - 1), lo), std::max(std::max(f0.hi, k + 1), hi));
  CohomologyData cd = cohomologyData(f, k);
  Quotient cok = cokernel(ModuleMap{f.term(k - 1).mod, f.term(k).mod, f.diff(k - 1)});
  FpMatrix psi = hInto.matrix * cd.reps * cok.projection.matrix;
  Cover c = projectiveCover(hInto.src);
  Complex p = ensureWindow(shift(minResolutionComplex(hInto.src, f.lo - k), -k), f.lo, f.hi);
  auto top = factorThrough(ModuleMap{p.term(k).mod, cok.mod, c.map.matrix * psi}, cok.projection);
  if (!top) throw std::logic_error("removeLowestCohomology: lift through the cokernel failed");
  std::map<int, FpMatrix> comp;
  comp[k] = top->matrix;
  for (int j = k + 1; j <= f.hi; ++j) comp[j] = FpMatrix(p.term(j).mod.dim, f.term(j).mod.dim, f.A->p);
  for (int j = k - 1; j >= f.lo; --j) {
    ModuleMap rhs{p.term(j).mod, f.term(j + 1).mod, p.diff(j) * comp[j + 1]};
    auto uj = factorThrough(rhs, ModuleMap{f.term(j).mod, f.term(j + 1).mod, f.diff(j)});
    if (!uj) throw std::logic_error("removeLowestCohomology: downward lift failed");
    comp[j] = uj->matrix;
  }
  ChainMap v;
  v.src = p;
  v.tgt = f;
  for (int j = f.lo; j <= f.hi; ++j) v.comps.push_back(comp[j]);
  Complex fBase = f0;
  ModuleMap hBase = hInto;
  v.regen = [fBase, k, hBase](int a2, int b2) { return removalMap(fBase, k, hBase, a2, b2); };
  v.check();
  return v;
}

}  // namespace

RemovalData removeLowestCohomology(const Complex& f0, int k, const ModuleMap& hInto) {
  Complex f = ensureWindow(f0, std::min(f0.lo, k - 1), std::max(f0.hi, k + 1));
  for (int j = f.lo; j < k; ++j)
    if (cohomology(f, j).dim != 0)
      throw std::invalid_argument("removeLowestCohomology: nonzero cohomology below the requested degree");
  CohomologyData cd = cohomologyData(f, k);
  if (hInto.tgt.dim != cd.H.dim) throw std::invalid_argument("removeLowestCohomology: submodule target mismatch");
  if (rank(hInto.matrix) != hInto.src.dim)
    throw std::invalid_argument("removeLowestCohomology: the submodule map is not injective");

  RemovalData out;
  out.map = removalMap(f, k, hInto, f.lo, f.hi);
  out.resolution = out.map.src;
  out.cone = cone(out.map);

  // H^{<k} of the cone vanishes on the window.
  for (int j = out.cone.lo; j < k; ++j)
    if (cohomology(out.cone, j).dim != 0) throw std::logic_error("removeLowestCohomology: cone has low cohomology");
  // The truncations at and above k agree term by term.
  for (int j = k; j <= out.cone.hi; ++j) {
    if (out.cone.term(j).parts != f.term(j).parts)
      throw std::logic_error("removeLowestCohomology: upper terms of the cone changed");
    if (j < out.cone.hi && out.cone.diff(j) != f.diff(j))
      throw std::logic_error("removeLowestCohomology: upper differentials of the cone changed");
  }
  // The short exact sequence 0 -> h -> H^k(f) -> H^k(cone) -> 0.
  CohomologyData cdC = cohomologyData(out.cone, k);
  auto coords = coordinatesInRows(cdC.cocycles, cd.reps);
  if (!coords) throw std::logic_error("removeLowestCohomology: cocycle transport failed");
  ModuleMap induced{cd.H, cdC.H, *coords * cdC.classOfCocycle};
  out.onCohomology = ShortExact{hInto.src, cd.H, cdC.H, hInto, induced};
  checkShortExact(out.onCohomology);

  // For k = 0 and f in L the cone stays in L, with a short exact sequence on
  // the stable inverses.
  if (k == 0 && inLWindowConditions(f)) {
    if (!inLWindowConditions(out.cone)) throw std::logic_error("removeLowestCohomology: cone left L");
    Quotient cokF = cokernel(ModuleMap{f.term(-1).mod, f.term(0).mod, f.diff(-1)});
    Quotient cokC = cokernel(ModuleMap{out.cone.term(-1).mod, out.cone.term(0).mod, out.cone.diff(-1)});
    if (cokC.mod.dim != cokF.mod.dim - hInto.src.dim)
      throw std::logic_error("removeLowestCohomology: stable-inverse dimensions do not match");
  }
  return out;
}

Reduction reduceToResolutions(const Complex& f0, int l, int r) {
  if (l > r) throw std::invalid_argument("reduceToResolutions: l > r");
  Complex cur = ensureWindow(f0, std::min(f0.lo, l - 1), std::max(f0.hi, r + (r - l) + 2));
  for (int j = cur.lo; j < l; ++j)
    if (cohomology(cur, j).dim != 0) throw std::invalid_argument("reduceToResolutions: nonzero cohomology below l");
  Reduction out;
  out.r = r;
  for (int k = l; k < r; ++k) {
    Module h = cohomology(cur, k);
    ReductionPart part;
    part.degree = k;
    part.cohomology = h;
    part.resolution = minResolutionComplex(h, cur.lo - k);
    out.parts.push_back(part);
    if (h.dim != 0) cur = removeLowestCohomology(cur, k, identityMap(h)).cone;
  }
  Complex res = ensureWindow(cur, r - 1, r);
  Quotient cok = cokernel(ModuleMap{res.term(r - 1).mod, res.term(r).mod, res.diff(r - 1)});
  out.residueModule = stripWithMaps(cok.mod).mod;
  out.residue = katoComplexStripped(out.residueModule, f0.lo, f0.hi);
  return out;
}

// ---------------------------------------------------------------------------
// The derived Nakayama functor on bounded complexes of projectives.

namespace {

// A bounded complex whose terms need not be projective.
struct ModComplex {
  AlgebraPtr A;
  int lo = 0;
  std::vector<Module> terms;   // degrees lo .. lo + terms.size() - 1
  std::vector<FpMatrix> diffs;

  int hi() const { return lo + int(terms.size()) - 1; }
  const Module& term(int k) const { return terms[k - lo]; }
  const FpMatrix& diff(int k) const { return diffs[k - lo]; }
};

int modCohomologyDim(const ModComplex& m, int k) {
  if (k < m.lo || k > m.hi()) return 0;
  int dim = m.term(k).dim;
  int rOut = k < m.hi() ? rank(m.diff(k)) : 0;
  int rIn = k > m.lo ? rank(m.diff(k - 1)) : 0;
  return dim - rOut - rIn;
}

struct ResolvedComplex {
  Complex p;
  std::vector<FpMatrix> q;  // q[j - p.lo]: p.term(j).dim x (term of the resolved complex, 0 outside)
};

ResolvedComplex projResolve(const ModComplex& m0, int depth);

// The gluing chain map shift(resolution of the lower part, -1) -> resolution
// of the top stalk, recomputed deterministically for any window.
ChainMap glueMap(const ModComplex& m, int depth, int wlo, int whi) {
  int lo = m.lo, hi = m.hi();
  ModComplex b{m.A, lo, {m.terms.begin(), m.terms.end() - 1}, {m.diffs.begin(), m.diffs.end() - 1}};
  ResolvedComplex rb = projResolve(b, std::min(depth, wlo - 1));
  const Module& top = m.terms.back();
  Complex ps = shift(minResolutionComplex(top, std::min(std::min(depth, wlo - 1) - hi, 0)), -hi);
  Complex x = shift(rb.p, -1);
  int a2 = std::min({x.lo, ps.lo, wlo});
  int b2 = std::max({x.hi, ps.hi, whi, hi});
  x = ensureWindow(x, a2, b2);
  ps = ensureWindow(ps, a2, b2);

  std::map<int, FpMatrix> comp;
  for (int j = hi + 1; j <= b2; ++j) comp[j] = FpMatrix(x.term(j).mod.dim, ps.term(j).mod.dim, m.A->p);
  {
    // anchor: (q_B at hi-1) then d^{hi-1} lifted through the cover of the top term
    FpMatrix qb = rb.q[hi - 1 - rb.p.lo];
    ModuleMap aug = resolutionAugmentation(top);
    auto u = factorThrough(ModuleMap{x.term(hi).mod, top, qb * m.diff(hi - 1)}, aug);
    if (!u) throw std::logic_error("nuK: glue anchor lift failed");
    comp[hi] = u->matrix;
  }
  for (int j = hi - 1; j >= a2; --j) {
    ModuleMap rhs{x.term(j).mod, ps.term(j + 1).mod, x.diff(j) * comp[j + 1]};
    auto u = factorThrough(rhs, ModuleMap{ps.term(j).mod, ps.term(j + 1).mod, ps.diff(j)});
    if (!u) throw std::logic_error("nuK: glue descent failed");
    comp[j] = u->matrix;
  }
  ChainMap out;
  out.src = x;
  out.tgt = ps;
  for (int j = a2; j <= b2; ++j) out.comps.push_back(comp[j]);
  ModComplex base = m;
  out.regen = [base, depth](int aa, int bb) { return glueMap(base, depth, aa, bb); };
  out.check();
  return out;
}

ResolvedComplex projResolve(const ModComplex& m0, int depth) {
  ModComplex m = m0;
  while (!m.terms.empty() && m.terms.front().dim == 0) {
    m.terms.erase(m.terms.begin());
    if (!m.diffs.empty()) m.diffs.erase(m.diffs.begin());
    ++m.lo;
  }
  while (!m.terms.empty() && m.terms.back().dim == 0) {
    m.terms.pop_back();
    if (!m.diffs.empty()) m.diffs.pop_back();
  }
  ResolvedComplex out;
  if (m.terms.empty()) {
    out.p = zeroComplex(m0.A);
    out.q = {FpMatrix(0, 0, m0.A->p)};
    return out;
  }
  if (m.terms.size() == 1) {
    out.p = shift(minResolutionComplex(m.terms[0], std::min(depth - m.lo, 0)), -m.lo);
    ModuleMap aug = resolutionAugmentation(m.terms[0]);
    for (int j = out.p.lo; j <= out.p.hi; ++j)
      out.q.push_back(j == m.lo ? aug.matrix : FpMatrix(out.p.term(j).mod.dim, 0, m0.A->p));
    return out;
  }
  int hi = m.hi();
  ChainMap u = glueMap(m, depth, depth, hi);
  ResolvedComplex rb = projResolve({m.A, m.lo, {m.terms.begin(), m.terms.end() - 1}, {m.diffs.begin(), m.diffs.end() - 1}},
                                   std::min(depth, u.src.lo - 1));
  out.p = cone(u);
  for (int j = out.p.lo; j <= out.p.hi; ++j) {
    // cone term = (lower-part resolution)^j (+) (top stalk resolution)^j
    int mdim = j >= m.lo && j <= hi ? m.term(j).dim : 0;
    int xdim = j + 1 >= u.src.lo && j + 1 <= u.src.hi ? u.src.term(j + 1).mod.dim : 0;
    int sdim = j >= u.tgt.lo && j <= u.tgt.hi ? u.tgt.term(j).mod.dim : 0;
    FpMatrix qj(xdim + sdim, mdim, m.A->p);
    if (j <= hi - 1 && j >= rb.p.lo && j <= rb.p.hi && mdim > 0 && rb.q[j - rb.p.lo].cols() == mdim)
      qj.setBlock(0, 0, rb.q[j - rb.p.lo]);
    if (j == hi && mdim > 0) qj.setBlock(xdim, 0, resolutionAugmentation(m.terms.back()).matrix);
    out.q.push_back(std::move(qj));
  }
  return out;
}

}  // namespace

Complex nuK(const Complex& f) {
  if (!f.isBounded()) throw std::invalid_argument("nuK: a bounded complex of projectives is required");
  if (trimZeroEdges(f).term(trimZeroEdges(f).lo).mod.dim == 0) return zeroComplex(f.A);
  ModComplex m;
  m.A = f.A;
  m.lo = f.lo;
  std::vector<StarModule> stars;
  for (int k = f.lo; k <= f.hi; ++k) stars.push_back(starModule(f.term(k).mod));
  for (int k = f.lo; k <= f.hi; ++k) m.terms.push_back(dualD(stars[k - f.lo].mod));
  for (int k = f.lo; k < f.hi; ++k) {
    ModuleMap d{f.term(k).mod, f.term(k + 1).mod, f.diff(k)};
    ModuleMap sm = starMap(d, stars[k - f.lo], stars[k + 1 - f.lo]);
    m.diffs.push_back(dualDMap(sm).matrix);
  }
  int depth = f.lo - (f.hi - f.lo) - f.A->dim - 2;
  ResolvedComplex r = projResolve(m, depth);
  Complex out = r.p;
  // quasi-isomorphism sanity check on the window
  for (int k = m.lo; k <= m.hi(); ++k) {
    int expected = modCohomologyDim(m, k);
    if (cohomology(out, k).dim != expected) throw std::logic_error("nuK: resolution is not a quasi-isomorphism");
  }
  if (out.isBounded()) out = trimZeroEdges(minimalize(out).min);
  return out;
}

// ---------------------------------------------------------------------------
// Corner acyclicity and total acyclicity.

CornerAcyclicity eAeAcyclicTest(const Complex& f0) {
  CornerAcyclicity out;
  const AlgebraPtr a = f0.A;
  auto stp = stronglyProjInjectiveClasses(a);
  if (stp.empty()) {
    out.stpEmpty = true;
    return out;
  }
  const auto& ip = indecProjectives(a);
  FpMatrix e(1, a->dim, a->p);
  std::vector<char> taken(ip.projectives.size(), 0);
  for (size_t i = 0; i < a->idempotents.size(); ++i) {
    int cls = ip.idemToClass[i];
    if (std::find(stp.begin(), stp.end(), cls) != stp.end() && !taken[cls]) {
      e = e + a->idempotents[i].vec;
      taken[cls] = 1;
    }
  }
  Complex f = ensureWindow(f0, f0.lo - 1, f0.hi + 1);
  std::vector<FpMatrix> bases;
  for (int k = f.lo; k <= f.hi; ++k) bases.push_back(rowSpaceBasis(f.term(k).mod.actionOf(e)));
  std::vector<FpMatrix> corner;
  for (int k = f.lo; k < f.hi; ++k) {
    auto coords = coordinatesInRows(bases[k + 1 - f.lo], bases[k - f.lo] * f.diff(k));
    if (!coords) throw std::logic_error("eAeAcyclicTest: corner differential left the corner");
    corner.push_back(*coords);
  }
  for (int k = f0.lo; k <= f0.hi; ++k) {
    int dim = bases[k - f.lo].rows();
    int rOut = rank(corner[k - f.lo]);
    int rIn = rank(corner[k - 1 - f.lo]);
    if (dim - rOut - rIn != 0) {
      out.acyclic = false;
      out.failDegree = k;
      return out;
    }
  }
  return out;
}

bool totallyAcyclicOnWindow(const Complex& f) {
  for (int k = f.lo; k <= f.hi; ++k) {
    if (cohomology(f, k).dim != 0) return false;
    if (dualHomology(f, k).dim != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The self-injectivity probe suite.

SelfInjectiveReport selfInjectiveSuite(const AlgebraPtr& a, int lo, int hi) {
  lo = std::min(lo, -3);
  hi = std::max(hi, 3);
  SelfInjectiveReport rep;
  rep.selfInjective = isSelfInjective(a);
  const auto& ip = indecProjectives(a);

  std::vector<Module> raw = ip.simples;
  for (const auto& p : ip.projectives) {
    Module rad = radicalSubmodule(p).mod;
    if (rad.dim > 0) raw.push_back(rad);
  }
  rep.reflexivityProbe = true;
  for (const auto& x : raw)
    if (!isReflexive(x)) {
      rep.reflexivityProbe = false;
      rep.notes.push_back("reflexivity fails for " + (x.name.empty() ? std::string("a probe module") : x.name));
      break;
    }

  std::vector<Module> stripped;
  for (const auto& x : raw) {
    Module s = stripWithMaps(x).mod;
    if (s.dim == 0) continue;
    bool dup = false;
    for (const auto& y : stripped)
      if (y.dim == s.dim && isIsomorphic(y, s).verdict == Verdict::Yes) dup = true;
    if (!dup) stripped.push_back(s);
    if (stripped.size() >= 4) break;
  }
  rep.vacuous = stripped.empty();

  rep.shiftClosureProbe = true;
  rep.totalAcyclicityProbe = true;
  rep.lEqualsHPProbe = true;
  for (const auto& x : stripped) {
    Complex fx = katoComplexStripped(x, lo, hi);
    if (rep.totalAcyclicityProbe && !totallyAcyclicOnWindow(fx)) {
      rep.totalAcyclicityProbe = false;
      rep.notes.push_back("complete resolution of " + x.name + " is not totally acyclic on the window");
    }
    Complex fx1 = ensureWindow(shift(fx, 1), lo, hi);
    if (rep.shiftClosureProbe) {
      auto fail = lWindowFailure(fx1);
      if (fail) {
        rep.shiftClosureProbe = false;
        rep.shiftFailDegree = fail->second;
        std::ostringstream os;
        os << "shifted complete resolution of " << x.name << " leaves L: "
           << (fail->first == 'H' ? "cohomology" : "dual homology") << " nonzero at degree " << fail->second;
        rep.notes.push_back(os.str());
      }
    }
    if (rep.lEqualsHPProbe) {
      HullCertificate cert = hullMembership(fx1);
      if (cert.inHP && !cert.inL) {
        rep.lEqualsHPProbe = false;
        rep.notes.push_back("shifted complete resolution of " + x.name + " lies in H^P but not in L");
      }
    }
  }

  rep.coneClosureProbe = true;
  int budget = 6;
  for (const auto& x : stripped) {
    for (const auto& y : stripped) {
      if (budget <= 0) break;
      for (const auto& h : homBasis(x, y)) {
        if (budget-- <= 0) break;
        ChainMap u = liftModuleMap(ModuleMap{x, y, h}, lo, hi);
        if (!inLWindowConditions(cone(u))) {
          rep.coneClosureProbe = false;
          rep.notes.push_back("cone of a lifted map " + x.name + " -> " + y.name + " leaves L");
          break;
        }
      }
      if (!rep.coneClosureProbe) break;
    }
    if (!rep.coneClosureProbe || budget <= 0) break;
  }
  rep.triangulatedProbe = rep.shiftClosureProbe && rep.coneClosureProbe;

  auto projCls = projInjectiveClasses(a);
  rep.projAllProbe = projCls.size() == ip.projectives.size();
  for (int cls = 0; cls < int(ip.projectives.size()); ++cls)
    if (std::find(projCls.begin(), projCls.end(), cls) == projCls.end())
      rep.nonInjectiveProjClasses.push_back(cls);

  if (rep.vacuous) rep.notes.push_back("all probe complexes vanish; the probes are vacuous");
  if (rep.selfInjective)
    rep.consistent = rep.reflexivityProbe && rep.shiftClosureProbe && rep.coneClosureProbe &&
                     rep.triangulatedProbe && rep.lEqualsHPProbe && rep.totalAcyclicityProbe && rep.projAllProbe;
  else
    rep.consistent = !(rep.reflexivityProbe && rep.shiftClosureProbe && rep.lEqualsHPProbe &&
                       rep.totalAcyclicityProbe && rep.projAllProbe);
  return rep;
}

}  // namespace stmod
