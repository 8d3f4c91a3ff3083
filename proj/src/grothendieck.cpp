#include "stmod/grothendieck.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stmod {

namespace {

std::vector<Module> nonProjectivePieces(const Module& x) {
  std::vector<Module> out;
  if (x.dim == 0) return out;
  for (const auto& s : decompose(x).summands)
    if (!isProjectiveModule(s.piece)) out.push_back(s.piece);
  return out;
}

Module cosyzygy(const Module& x) { return cokernel(injectiveHull(x).map).mod; }

}  // namespace

int ModulePool::find(const Module& x) const {
  for (int i = 0; i < int(entries.size()); ++i)
    if (entries[i].mod.dim == x.dim && isIsomorphic(entries[i].mod, x).verdict == Verdict::Yes) return i;
  return -1;
}

ModulePool buildPool(const AlgebraPtr& a, int dimCap, uint64_t seed, int sizeCap) {
  (void)seed;
  ModulePool pool;
  pool.A = a;
  const auto& ip = indecProjectives(a);

  std::vector<std::pair<Module, std::string>> frontier;
  auto offer = [&](const Module& x, const std::string& origin) {
    for (const auto& piece : nonProjectivePieces(x)) {
      if (piece.dim > dimCap) continue;
      if (pool.find(piece) >= 0) continue;
      if (int(pool.entries.size()) >= sizeCap) throw std::runtime_error("buildPool: size cap exceeded");
      PoolEntry e;
      e.mod = piece;
      std::ostringstream lbl;
      lbl << (piece.name.empty() ? "G" + std::to_string(pool.entries.size()) : piece.name);
      e.label = lbl.str();
      e.origin = origin;
      pool.entries.push_back(e);
      frontier.push_back({piece, origin});
    }
  };

  for (const auto& s : ip.simples) offer(s, "simple");
  std::vector<Module> injectives;
  for (const auto& p : ip.projectives) injectives.push_back(dualD(starModule(p).mod));
  for (const auto& i : injectives) offer(i, "injective");
  for (const auto& p : ip.projectives) frontier.push_back({p, "projective"});

  pool.closed = true;
  int rounds = 0;
  while (!frontier.empty()) {
    if (++rounds > 8 * sizeCap) {
      pool.closed = false;
      break;
    }
    auto [x, _] = frontier.back();
    frontier.pop_back();
    if (x.dim == 0) continue;
    offer(syzygy(x), "syzygy");
    offer(cosyzygy(x), "cosyzygy");
    offer(radicalSubmodule(x).mod, "radical");
    Quotient top = topQuotient(x);
    offer(top.mod, "top");
    Submodule soc = socleSubmodule(x);
    offer(cokernel(soc.inclusion).mod, "socle quotient");
    Module nu = nakayama(x);
    if (nu.dim <= dimCap) offer(nu, "nakayama image");
    for (const auto& e : pool.entries) {
      if (ext1Dim(x, e.mod) == 0) continue;
      for (const auto& s : ext1Extensions(x, e.mod)) offer(s.Y, "extension middle");
    }
  }
  return pool;
}

PoolClass classOf(const ModulePool& pool, const Module& x) {
  PoolClass out(pool.entries.size(), 0);
  for (const auto& piece : nonProjectivePieces(x)) {
    int idx = pool.find(piece);
    if (idx < 0) throw std::out_of_range("classOf: indecomposable summand missing from the pool");
    ++out[idx];
  }
  return out;
}

namespace {

PoolClass minus(const PoolClass& a, const PoolClass& b) {
  PoolClass out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

bool isZeroClass(const PoolClass& c) {
  return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
}

}  // namespace

Harvest harvestRelations(const ModulePool& pool, RelationMode mode, uint64_t seed) {
  const AlgebraPtr a = pool.A;
  const auto& ip = indecProjectives(a);

  std::vector<Module> ends;
  for (const auto& e : pool.entries) ends.push_back(e.mod);
  if (mode == RelationMode::Stable)
    for (const auto& p : ip.projectives) ends.push_back(p);
  size_t nSingles = ends.size();
  for (size_t i = 0; i < nSingles && nSingles <= 8; ++i)
    for (size_t j = i; j < nSingles; ++j) ends.push_back(directSum({ends[i], ends[j]}).total);

  Harvest h;
  // With one-dimensional Ext spaces between indecomposable ends, scaling an
  // extension class does not change its middle term, so enumerating a basis
  // realizes every non-split sequence with those ends; sequences with
  // decomposable ends reduce to these by pulling back along the summand
  // inclusions.  Sum-shaped ends below only contribute extra relation rows.
  h.exhaustive = true;
  for (size_t i = 0; i < nSingles; ++i)
    for (size_t j = 0; j < nSingles; ++j)
      if (ext1Dim(ends[i], ends[j]) > 1) h.exhaustive = false;
  std::set<std::vector<long long>> rows;
  for (const auto& z : ends) {
    for (const auto& x : ends) {
      int d = ext1Dim(z, x);
      if (d == 0) continue;
      for (const auto& s : ext1Extensions(z, x)) {
        ++h.sequencesSeen;
        if (mode == RelationMode::Perfect && !isPerfectExact(s)) continue;
        PoolClass row = classOf(pool, s.X);
        PoolClass mid = classOf(pool, s.Y);
        PoolClass zc = classOf(pool, s.Z);
        for (size_t i = 0; i < row.size(); ++i) row[i] += zc[i] - mid[i];
        if (!isZeroClass(row)) rows.insert(row);
      }
    }
  }
  (void)seed;
  IntMatrix m(int(rows.size()), int(pool.entries.size()));
  int r = 0;
  for (const auto& row : rows) {
    for (int c = 0; c < int(row.size()); ++c) m.at(r, c) = row[c];
    ++r;
  }
  h.relations = m;
  return h;
}

GroupPresentation presentGroup(const ModulePool& pool, const Harvest& h) {
  GroupPresentation pres;
  for (const auto& e : pool.entries) pres.generators.push_back(e.label);
  pres.relations = h.relations;
  SmithResult snf = smithNormalForm(h.relations);
  for (const auto& d : snf.invariantFactors)
    if (d > 1) pres.invariantFactors.push_back(d);
  pres.freeRank = int(pool.entries.size()) - int(snf.invariantFactors.size());
  pres.exactnessStamp = (pool.closed && h.exhaustive) ? "exact" : "upper bound";
  return pres;
}

GroupPresentation g0(const AlgebraPtr& a, RelationMode mode, int dimCap, uint64_t seed) {
  ModulePool pool = buildPool(a, dimCap, seed);
  return presentGroup(pool, harvestRelations(pool, mode, seed));
}

bool sameClassInPresentation(const GroupPresentation& pres, const PoolClass& x, const PoolClass& y) {
  PoolClass d = minus(x, y);
  if (isZeroClass(d)) return true;
  IntMatrix v(1, int(d.size()));
  for (int c = 0; c < int(d.size()); ++c) v.at(0, c) = d[c];
  SmithResult snf = smithNormalForm(pres.relations);
  return inRowLattice(snf, pres.relations, v);
}

PoolClass sigma(const ModulePool& pool, const Module& x) { return classOf(pool, x); }

PoolClass sigmaTilde(const ModulePool& pool, const Complex& f0, int l, int r) {
  if (l > r) throw std::invalid_argument("sigmaTilde: l > r");
  Complex f = ensureWindow(f0, std::min(f0.lo, l - 1), std::max(f0.hi, r));
  PoolClass out(pool.entries.size(), 0);
  auto add = [&](const PoolClass& c, long long sign) {
    for (size_t i = 0; i < out.size(); ++i) out[i] += sign * c[i];
  };
  for (int k = l; k < r; ++k) {
    Module h = cohomology(f, k);
    if (h.dim == 0) continue;
    long long sign = (k % 2 == 0) ? 1 : -1;
    for (const auto& s : compositionFactors(h)) {
      Hull hull = injectiveHull(s);
      add(classOf(pool, hull.inj), sign);
      add(classOf(pool, cokernel(hull.map).mod), -sign);
    }
  }
  Module tail = cokernel(ModuleMap{f.term(r - 1).mod, f.term(r).mod, f.diff(r - 1)}).mod;
  add(classOf(pool, tail), (r % 2 == 0) ? 1 : -1);
  return out;
}

}  // namespace stmod
