#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stmod/complex.hpp"
#include "stmod/functors.hpp"

using namespace stmod;

namespace {

// Minimal projective resolution of the simple at vertex 1 over the A2 path
// algebra: 0 -> P2 -> P1 -> S1 -> 0, as a complex in degrees [-1, 0].
struct A2Resolution {
  AlgebraPtr a;
  Complex cx;
  Module s1;
};

A2Resolution a2Resolution() {
  A2Resolution r;
  r.a = pathAlgebraA2(2);
  const auto& ip = indecProjectives(r.a);
  // Pick the simple with a 2-dimensional projective cover.
  r.s1 = ip.simples[0];
  for (size_t i = 0; i < ip.simples.size(); ++i)
    if (ip.projectives[i].dim == 2) r.s1 = ip.simples[i];
  Cover c0 = projectiveCover(r.s1);
  Submodule k = kernel(c0.map);
  Cover c1 = projectiveCover(k.mod);
  FpMatrix d = c1.map.matrix * k.inclusion.matrix;
  Term t0;
  t0.parts = c0.parts;
  t0.mod = c0.proj;
  Term t1;
  t1.parts = c1.parts;
  t1.mod = c1.proj;
  r.cx = boundedComplex(r.a, -1, {t1, t0}, {d});
  return r;
}

}  // namespace

TEST_CASE("bounded complex validates and computes cohomology") {
  auto r = a2Resolution();
  r.cx.check();
  CHECK(r.cx.term(-1).mod.dim == 1);
  CHECK(r.cx.term(0).mod.dim == 2);
  CHECK(cohomology(r.cx, -1).dim == 0);
  Module h0 = cohomology(r.cx, 0);
  CHECK(h0.dim == 1);
  CHECK(isIsomorphic(h0, r.s1).verdict == Verdict::Yes);
  CHECK(cohomology(r.cx, 3).dim == 0);
  CHECK(cohomology(r.cx, -4).dim == 0);
}

TEST_CASE("stalk complexes and window padding") {
  auto a = pathAlgebraA2(2);
  const auto& ip = indecProjectives(a);
  int big = ip.projectives[0].dim == 2 ? 0 : 1;
  Complex st = stalkComplex(a, 0, termFromParts(a, {big}));
  CHECK(cohomology(st, 0).dim == 2);
  CHECK(cohomology(st, 1).dim == 0);
  Complex wide = ensureWindow(st, -3, 2);
  wide.check();
  CHECK(wide.lo == -3);
  CHECK(wide.hi == 2);
  CHECK(wide.term(-2).mod.dim == 0);
  CHECK(cohomology(wide, 0).dim == 2);
}

TEST_CASE("shift moves cohomology and keeps d*d = 0") {
  auto r = a2Resolution();
  Complex s = shift(r.cx, 1);
  s.check();
  CHECK(s.lo == -2);
  CHECK(s.hi == -1);
  CHECK(cohomology(s, -1).dim == 1);
  CHECK(cohomology(s, 0).dim == 0);
  Complex back = shift(s, -1);
  CHECK(back.lo == r.cx.lo);
  CHECK(back.diff(-1) == r.cx.diff(-1));
}

TEST_CASE("brutal truncations") {
  auto r = a2Resolution();
  Complex above = truncateAbove(r.cx, -1);
  CHECK(above.hi == -1);
  CHECK(cohomology(above, -1).dim == 1);  // the kernel term survives untouched
  Complex below = truncateBelow(r.cx, 0);
  CHECK(below.lo == 0);
  CHECK(cohomology(below, 0).dim == 2);  // nothing maps in any more
}

TEST_CASE("cone of an inclusion computes the quotient") {
  auto a = pathAlgebraA2(2);
  auto r = a2Resolution();
  Complex f = stalkComplex(a, 0, r.cx.term(-1));  // P2 in degree 0
  Complex g = stalkComplex(a, 0, r.cx.term(0));   // P1 in degree 0
  ChainMap u;
  u.src = f;
  u.tgt = g;
  u.comps = {r.cx.diff(-1)};
  u.check();
  Complex c = cone(u);
  c.check();
  CHECK(c.lo == -1);
  CHECK(c.hi == 0);
  CHECK(cohomology(c, -1).dim == 0);
  Module h0 = cohomology(c, 0);
  CHECK(h0.dim == 1);
  CHECK(isIsomorphic(h0, r.s1).verdict == Verdict::Yes);
}

TEST_CASE("cone of the identity is contractible") {
  auto r = a2Resolution();
  Complex c = cone(identityChainMap(r.cx));
  c.check();
  for (int k = c.lo; k <= c.hi; ++k) CHECK(cohomology(c, k).dim == 0);
  Minimalization m = minimalize(c);
  for (int k = m.min.lo; k <= m.min.hi; ++k) CHECK(m.min.term(k).mod.dim == 0);
  CHECK(homotopyEquivalent(c, zeroComplex(r.a)) == Verdict::Yes);
}

TEST_CASE("minimalize cancels identity pairs and returns witnesses") {
  auto a = pathAlgebraA2(2);
  auto r = a2Resolution();
  // Degree 0: P1 + P1, degree 1: P1, differential projects onto the second
  // copy. Minimal form keeps a single P1 in degree 0.
  const auto& ip = indecProjectives(a);
  int big = 0;
  for (size_t i = 0; i < ip.projectives.size(); ++i)
    if (ip.projectives[i].dim == 2) big = int(i);
  Term two = termFromParts(a, {big, big});
  Term one = termFromParts(a, {big});
  FpMatrix d(4, 2, 2);
  d.at(2, 0) = 1;
  d.at(3, 1) = 1;
  Complex c = boundedComplex(a, 0, {two, one}, {d});
  CHECK(!isMinimal(c));
  Minimalization m = minimalize(c);
  CHECK(isMinimal(m.min));
  CHECK(m.min.term(0).mod.dim == 2);
  CHECK(m.min.term(1).mod.dim == 0);
  m.to.check();
  m.from.check();
  ChainMap round = composeChainMaps(m.from, m.to);  // min -> original -> min
  for (int k = round.src.lo; k <= round.src.hi; ++k)
    CHECK(round.comp(k) == FpMatrix::identity(round.src.term(k).mod.dim, 2));
  CHECK(homotopyEquivalent(c, m.min) == Verdict::Yes);
  CHECK(homotopyEquivalent(c, stalkComplex(a, 0, one)) == Verdict::Yes);
}

TEST_CASE("chain map spaces and homotopies") {
  auto a = pathAlgebraA2(2);
  const auto& ip = indecProjectives(a);
  int big = ip.projectives[0].dim == 2 ? 0 : 1;
  int small = 1 - big;
  Complex p1 = stalkComplex(a, 0, termFromParts(a, {big}));
  Complex p2 = stalkComplex(a, 0, termFromParts(a, {small}));
  CHECK(chainMapBasis(p1, p1).size() == 1);
  CHECK(chainMapBasis(p2, p1).size() == 1);
  CHECK(chainMapBasis(p1, p2).size() == 0);
  CHECK(allChainMapsNullHomotopic(p1, p2));
  CHECK(!allChainMapsNullHomotopic(p2, p1));
  CHECK(isNullHomotopic(identityChainMap(p1)) == false);
  auto r = a2Resolution();
  Complex c = cone(identityChainMap(r.cx));
  CHECK(isNullHomotopic(identityChainMap(c)));
}

TEST_CASE("homotopy equivalence distinguishes shifts and different stalks") {
  auto a = pathAlgebraA2(2);
  auto r = a2Resolution();
  CHECK(homotopyEquivalent(r.cx, r.cx) == Verdict::Yes);
  CHECK(homotopyEquivalent(r.cx, shift(r.cx, 1)) == Verdict::No);
  const auto& ip = indecProjectives(a);
  int big = ip.projectives[0].dim == 2 ? 0 : 1;
  CHECK(homotopyEquivalent(r.cx, stalkComplex(a, 0, termFromParts(a, {big}))) == Verdict::No);
}

TEST_CASE("dual complex transports differentials and detects the transpose") {
  auto r = a2Resolution();
  Complex d = dualComplex(r.cx);
  d.check();
  CHECK(d.lo == 0);
  CHECK(d.hi == 1);
  CHECK(d.A->dim == r.a->dim);
  // Hom(S1, A) vanishes, so nothing survives in degree 0 of the dual.
  CHECK(dualHomology(r.cx, 0).dim == 0);
  // The cokernel in degree 1 is the transpose of S1, which is 1-dimensional.
  CHECK(cohomology(d, 1).dim == 1);
  Complex dd = dualComplex(d);
  dd.check();
  CHECK(dd.lo == -1);
  CHECK(dd.hi == 0);
  CHECK(dd.term(0).mod.dim == 2);
  CHECK(dd.term(-1).mod.dim == 1);
  CHECK(homotopyEquivalent(dd, r.cx) == Verdict::Yes);
}
