"""Ideal and submodule algebra over graded rings.

Sums, products, powers, intersections, colon and saturation, degree
truncation, annihilators, Krull dimension, Hilbert series / function /
polynomial, and degree windows (indeg, end).  Submodules are immutable
values; Groebner bases, minimal generators and Hilbert data are cached
lazily on the instance.

The Hilbert series of a quotient F/N is computed from the initial module of
a reduced basis of N by the standard pivot recursion on monomial ideals; it
requires every variable to have positive weight (over a base ring the graded
pieces are not finite dimensional).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .ring import Ring, RingError, Polynomial, mon_divides, mon_div
from .groebner import (FreeModule, Vec, GroebnerBasis, buchberger,
                       groebner_basis, normal_form, SyzygyContext,
                       kernel_of_map)

PLUS_INF = float("inf")
MINUS_INF = float("-inf")


class IdealOpError(ValueError):
    """Contract violation in an ideal/submodule operation."""


# ---------------------------------------------------------------------------
# submodules

class Submodule:
    """A finitely generated graded submodule of a twisted free module."""

    __slots__ = ("module", "gens", "_gb", "_min_gens")

    def __init__(self, module: FreeModule, gens):
        self.module = module
        cleaned = []
        for g in gens:
            if g.is_zero():
                continue
            if g.module != module:
                if g.module.ring != module.ring or g.module.twists != module.twists:
                    raise RingError("generator in a different module")
                g = Vec(module, dict(g.terms))
            cleaned.append(g)
        self.gens = tuple(cleaned)
        self._gb = None
        self._min_gens = None

    @property
    def ring(self) -> Ring:
        return self.module.ring

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(list(self.gens), self.module)
        return self._gb

    def is_zero(self):
        return len(self.gb()) == 0

    def contains(self, v: Vec) -> bool:
        return self.gb().contains(v)

    def contains_submodule(self, other: "Submodule") -> bool:
        gb = self.gb()
        return all(gb.contains(g) for g in other.gens)

    def equals(self, other: "Submodule") -> bool:
        return self.gb().elements == other.gb().elements

    def min_gens(self):
        """Minimal homogeneous generators, chosen degree-greedily from the
        reduced basis (graded Nakayama makes the count per degree canonical)."""
        if self._min_gens is not None:
            return self._min_gens
        cands = list(self.gb().elements)
        for g in cands:
            if not g.is_homogeneous():
                raise IdealOpError("minimal generators need homogeneous input")
        key = self.module.term_key
        cands.sort(key=lambda g: (g.degree(), key(g.lead_term())))
        acc = []
        for g in cands:
            if not acc:
                acc.append(g)
                continue
            gbacc = buchberger(acc, self.module)
            if not normal_form(g, gbacc).is_zero():
                acc.append(g)
        self._min_gens = tuple(acc)
        return self._min_gens

    def min_gen_degrees(self):
        return tuple(g.degree() for g in self.min_gens())

    def indeg(self):
        """Smallest degree of a nonzero piece (+inf for the zero module)."""
        degs = self.min_gen_degrees()
        return min(degs) if degs else PLUS_INF

    def max_gen_degree(self):
        degs = self.min_gen_degrees()
        return max(degs) if degs else MINUS_INF

    def __repr__(self):
        return "Submodule(" + "; ".join(str(g) for g in self.gens) + ")"


def ideal(ring: Ring, polys) -> Submodule:
    """The rank-one case: an ideal with its generators."""
    M = FreeModule(ring, (0,))
    vecs = []
    for p in polys:
        if isinstance(p, str):
            p = ring.parse(p)
        vecs.append(M.from_poly(p))
    return Submodule(M, vecs)


def ideal_gens(I: Submodule):
    return [g.component(0) for g in I.gens]


def zero_ideal(ring: Ring) -> Submodule:
    return ideal(ring, [])


def unit_ideal(ring: Ring) -> Submodule:
    return ideal(ring, [ring.one()])


# ---------------------------------------------------------------------------
# quotient modules (presentations)

class QuotientModule:
    """F/N for a twisted free module F and relation submodule N."""

    __slots__ = ("module", "relations", "_rel_gb")

    def __init__(self, module: FreeModule, relations=()):
        self.module = module
        rel = relations.gens if isinstance(relations, Submodule) else tuple(relations)
        self.relations = Submodule(module, rel)
        self._rel_gb = None

    @property
    def ring(self):
        return self.module.ring

    def rel_gb(self):
        return self.relations.gb()

    def is_zero(self):
        gb = self.rel_gb()
        return all(gb.contains(self.module.basis(i))
                   for i in range(self.module.rank))

    def __repr__(self):
        return f"Quotient({self.module!r} / {self.relations!r})"


def free_quotient(ring: Ring, twists=(0,)) -> QuotientModule:
    return QuotientModule(FreeModule(ring, tuple(twists)), ())


def quotient_by_ideal(I: Submodule) -> QuotientModule:
    """S/I as a module."""
    return QuotientModule(FreeModule(I.ring, (0,)), I.gens)


def module_of_submodule(N: Submodule) -> QuotientModule:
    """Present the submodule N itself: free module on its minimal generators
    modulo their syzygies."""
    gens = N.min_gens()
    ring = N.ring
    if not gens:
        return QuotientModule(FreeModule(ring, ()), ())
    twists = tuple(g.degree() for g in gens)
    syz = SyzygyContext(list(gens), N.module).syzygies()
    F0 = FreeModule(ring, twists)
    rels = [Vec(F0, dict(s.terms)) for s in syz]
    return QuotientModule(F0, rels)


def as_quotient(M) -> QuotientModule:
    if isinstance(M, QuotientModule):
        return M
    if isinstance(M, Submodule):
        return module_of_submodule(M)
    if isinstance(M, Ring):
        return free_quotient(M)
    raise TypeError(f"cannot present {M!r}")


# ---------------------------------------------------------------------------
# combine: sum / product / power / intersection

def combine(op, A: Submodule, B=None, t=None) -> Submodule:
    if op == "sum":
        _same_module(A, B)
        return Submodule(A.module, A.gens + B.gens)
    if op == "product":
        return product(A, B)
    if op == "power":
        return power(A, t if t is not None else B)
    if op == "intersection":
        return intersection(A, B)
    raise IdealOpError(f"unknown combine op {op!r}")


def _same_module(A, B):
    if A.module != B.module:
        raise RingError("submodules live in different modules")


def _is_ideal(A: Submodule):
    return A.module.rank == 1 and A.module.twists == (0,)


def product(I: Submodule, M: Submodule) -> Submodule:
    """I*M for an ideal I and a submodule M (covers ideal*ideal)."""
    if I.ring != M.ring:
        raise RingError("operands live in different rings")
    if not _is_ideal(I):
        raise IdealOpError("product needs an ideal on the left")
    out = []
    for f in I.gens:
        p = f.component(0)
        for g in M.gens:
            out.append(g.poly_mul(p))
    return Submodule(M.module, out)


def power(I: Submodule, t: int) -> Submodule:
    """I^t, computed iteratively with interreduction after each step."""
    if not _is_ideal(I):
        raise IdealOpError("powers are defined for ideals")
    if t < 0:
        raise IdealOpError("negative power")
    if t == 0:
        return unit_ideal(I.ring)
    acc = I
    for _ in range(t - 1):
        prod_ = product(I, acc)
        acc = Submodule(prod_.module, prod_.min_gens())
    return acc


_AUX = "@t"


def intersection(A: Submodule, B: Submodule) -> Submodule:
    """A ∩ B by the auxiliary-variable elimination trick; the helper variable
    has weight zero so homogeneous input stays homogeneous."""
    _same_module(A, B)
    ring = A.ring
    ext = ring.extended((_AUX,), (0,))
    aux_idx = ext.nvars - 1
    from .ring import BlockOrder
    elim_order = BlockOrder([(aux_idx,), tuple(range(ring.nvars))], ext.weights)
    ext = ext.with_order(elim_order)
    M = FreeModule(ext, A.module.twists)
    t = ext.var(aux_idx)
    one = ext.one()

    def up(v):
        return Vec(M, {(c, e + (0,)): co for (c, e), co in v.terms.items()})

    gens = [up(g).poly_mul(t) for g in A.gens]
    gens += [up(g).poly_mul(one - t) for g in B.gens]
    basis = buchberger(gens, M)
    out = []
    for b in basis:
        if all(e[aux_idx] == 0 for (_, e) in b.terms):
            out.append(Vec(A.module, {(c, e[:-1]): co for (c, e), co in b.terms.items()}))
    return Submodule(A.module, out)


# ---------------------------------------------------------------------------
# colon and saturation

def _divide_by(v: Vec, f: Polynomial) -> Vec:
    comps = [exact_div(p, f) for p in v.components()]
    return v.module.from_polys(comps)


def exact_div(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, raising if f does not divide g."""
    if g.is_zero():
        return g
    ring = g.ring
    fld = ring.field
    rem = dict(g.terms)
    quo = {}
    fexp, fc = f.lt()
    while rem:
        exp = max(rem, key=ring.order.key)
        c = rem[exp]
        if not mon_divides(fexp, exp):
            raise IdealOpError("division is not exact")
        m = mon_div(exp, fexp)
        q = fld.div(c, fc)
        quo[m] = q
        for e2, c2 in f.terms.items():
            t2 = tuple(a + b for a, b in zip(e2, m))
            acc = fld.sub(rem.get(t2, fld.zero), fld.mul(q, c2))
            if fld.is_zero(acc):
                rem.pop(t2, None)
            else:
                rem[t2] = acc
    return Polynomial(ring, quo)


def colon(A: Submodule, J) -> Submodule:
    """A : J = { v | J v ⊆ A } for an ideal J (or a single polynomial)."""
    if isinstance(J, Polynomial):
        J = ideal(A.ring, [J])
    if A.ring != J.ring:
        raise RingError("operands live in different rings")
    polys = [g.component(0) for g in J.gens]
    if not polys:
        raise IdealOpError("colon by the zero ideal")
    result = None
    for f in polys:
        fF = Submodule(A.module, [A.module.basis(i).poly_mul(f)
                                  for i in range(A.module.rank)])
        meet = intersection(A, fF)
        q = Submodule(A.module, [_divide_by(g, f) for g in meet.gens])
        result = q if result is None else intersection(result, q)
    return result


def saturate(A: Submodule, J=None, max_steps=64):
    """A : J^∞ by iterated colon until the basis stabilizes.

    J defaults to the irrelevant ideal of the positive-weight variables.
    Returns (saturation, steps)."""
    ring = A.ring
    if J is None:
        J = irrelevant_ideal(ring)
    cur = A
    for step in range(max_steps):
        nxt = colon(cur, J)
        if nxt.equals(cur):
            return cur, step
        cur = nxt
    raise IdealOpError("saturation did not stabilize")


def irrelevant_ideal(ring: Ring) -> Submodule:
    return ideal(ring, [ring.var(i) for i in ring.positive_indices])


def module_quotient_ideal(N: Submodule, v: Vec) -> Submodule:
    """N :_S v = { f in S | f v in N }, via marked kernel computation."""
    syz = kernel_of_map([v], N.module, target_rels=list(N.gens))
    ring = N.ring
    return ideal(ring, [s.component(0) for s in syz])


def annihilator(Q: QuotientModule) -> Submodule:
    """ann(F/N) = ∩_c (N : e_c)."""
    N = Q.relations
    result = None
    for c in range(Q.module.rank):
        part = module_quotient_ideal(N, Q.module.basis(c))
        result = part if result is None else intersection(result, part)
    if result is None:
        return unit_ideal(Q.ring)
    return result


# ---------------------------------------------------------------------------
# truncation

def truncate_below(I: Submodule, mu) -> Submodule:
    """Ideal generated by the minimal generators of I of degree <= mu."""
    keep = [g for g in I.min_gens() if g.degree() <= mu]
    return Submodule(I.module, keep)


# ---------------------------------------------------------------------------
# initial data, dimension

def initial_exponents(Q: QuotientModule):
    """Per component: minimal generators of the initial (monomial) ideal."""
    by_comp = {c: [] for c in range(Q.module.rank)}
    for g in Q.rel_gb():
        (comp, exp) = g.lead_term()
        by_comp[comp].append(exp)
    return {c: _minimalize_monomials(exps) for c, exps in by_comp.items()}


def _minimalize_monomials(exps):
    out = []
    for e in sorted(exps, key=sum):
        if not any(mon_divides(o, e) for o in out):
            out.append(e)
    return out


def monomial_ideal_dimension(exps, nvars) -> int:
    """dim S/(monomial ideal): the largest variable set meeting no
    generator's support entirely (complement of a minimal cover)."""
    if any(sum(e) == 0 for e in exps):
        return -1  # unit ideal: empty quotient
    supports = [frozenset(i for i, v in enumerate(e) if v) for e in exps]
    best = 0
    for mask in range(1 << nvars):
        keep = {i for i in range(nvars) if mask >> i & 1}
        if len(keep) <= best:
            continue
        if all(not s <= keep for s in supports):
            best = len(keep)
    return best


def dimension(M) -> int:
    """Krull dimension of a module (quotient presentation or submodule).

    Returns -inf for the zero module."""
    Q = as_quotient(M)
    if Q.module.rank == 0:
        return MINUS_INF
    init = initial_exponents(Q)
    nv = Q.ring.nvars
    best = MINUS_INF
    for c in range(Q.module.rank):
        d = monomial_ideal_dimension(init[c], nv)
        if d >= 0:
            best = max(best, d)
    return best


# ---------------------------------------------------------------------------
# Hilbert series / function / polynomial

class HilbertData:
    """Exact Hilbert series num(z) / prod_i (1 - z^{w_i}) of a graded module.

    ``num`` is a Laurent polynomial as dict degree -> int; the denominator
    exponents are the (positive) variable weights.
    """

    __slots__ = ("num", "weights", "_hp")

    def __init__(self, num: dict, weights):
        self.num = {k: v for k, v in num.items() if v}
        self.weights = tuple(weights)
        self._hp = None

    def __eq__(self, other):
        return (isinstance(other, HilbertData) and other.num == self.num
                and other.weights == self.weights)

    def is_zero(self):
        return not self.num

    def __sub__(self, other):
        if self.weights != other.weights:
            raise IdealOpError("Hilbert data over different denominators")
        num = dict(self.num)
        for k, v in other.num.items():
            num[k] = num.get(k, 0) - v
        return HilbertData(num, self.weights)

    def shift(self, a):
        """Series of M(-a): multiply by z^a."""
        return HilbertData({k + a: v for k, v in self.num.items()}, self.weights)

    def min_exp(self):
        return min(self.num) if self.num else None

    def max_exp(self):
        return max(self.num) if self.num else None

    def function(self, lo, hi):
        """Exact Hilbert function values on [lo, hi]."""
        if self.is_zero():
            return {mu: 0 for mu in range(lo, hi + 1)}
        base = self.min_exp()
        length = hi - base + 1
        if length <= 0:
            return {mu: 0 for mu in range(lo, hi + 1)}
        coeffs = [0] * length
        for k, v in self.num.items():
            if k - base < length:
                coeffs[k - base] += v
        for w in self.weights:
            # multiply by 1/(1 - z^w): prefix recurrence
            for i in range(w, length):
                coeffs[i] += coeffs[i - w]
        out = {}
        for mu in range(lo, hi + 1):
            idx = mu - base
            out[mu] = coeffs[idx] if 0 <= idx < length else 0
        return out

    def value(self, mu):
        return self.function(mu, mu)[mu]

    def first_nonzero(self, hard_cap=None):
        """Degree of the first nonzero series coefficient (indeg); None if 0."""
        if self.is_zero():
            return None
        lo = self.min_exp()
        hi = self.max_exp() + (hard_cap if hard_cap is not None else 0)
        vals = self.function(lo, max(lo, hi))
        for mu in range(lo, max(lo, hi) + 1):
            if vals[mu]:
                return mu
        raise IdealOpError("nonzero series with no coefficient in the window")

    def pole_order(self):
        """Order of the pole at z=1 (the Krull dimension for a module)."""
        if self.is_zero():
            return MINUS_INF
        num, k = self._reduced()
        return len(self.weights) - k

    def _reduced(self):
        """Divide out (1 - z) factors; valid for standard weights."""
        if any(w != 1 for w in self.weights):
            raise IdealOpError("Hilbert polynomial requires standard grading")
        base = self.min_exp()
        coeffs = [0] * (self.max_exp() - base + 1)
        for kk, v in self.num.items():
            coeffs[kk - base] = v
        k = 0
        while k < len(self.weights) and sum(coeffs) == 0:
            # num(z) = (1-z) q(z)  =>  q_i = sum_{j<=i} num_j
            run = 0
            q = []
            for c in coeffs[:-1]:
                run += c
                q.append(run)
            coeffs = q if q else [0]
            k += 1
        return (base, coeffs), k

    def hilbert_polynomial(self) -> "HilbertPolynomial":
        """Exact Hilbert polynomial (standard grading only)."""
        if self._hp is not None:
            return self._hp
        if self.is_zero():
            self._hp = HilbertPolynomial(())
            return self._hp
        (base, coeffs), k = self._reduced()
        D = len(self.weights) - k
        if D <= 0:
            self._hp = HilbertPolynomial(())
            return self._hp
        total = [Fraction(0)] * D
        for j, c in enumerate(coeffs):
            if not c:
                continue
            shift = base + j
            # binomial C(mu - shift + D - 1, D - 1) as a polynomial in mu
            poly = [Fraction(1)]
            for i in range(D - 1):
                # multiply by (mu - shift + D - 1 - i)
                a = Fraction(D - 1 - i - shift)
                poly = _poly_mul_linear(poly, a)
            fact = 1
            for i in range(1, D):
                fact *= i
            poly = [p / fact for p in poly]
            for i, p in enumerate(poly):
                total[i] += c * p
        while total and total[-1] == 0:
            total.pop()
        self._hp = HilbertPolynomial(tuple(total))
        return self._hp


def _poly_mul_linear(poly, a):
    """poly(mu) * (mu + a), coefficients ascending."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i] += c * a
        out[i + 1] += c
    return out


class HilbertPolynomial:
    """Polynomial in one variable with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INF

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, HilbertPolynomial) and other.coeffs == self.coeffs

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return HilbertPolynomial(out)

    def __call__(self, mu):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * mu + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*mu^{i}" if i else f"{c}"
                          for i, c in enumerate(self.coeffs) if c != 0)


@lru_cache(maxsize=None)
def _monomial_numerator(exps, weights):
    """Numerator of the Hilbert series of S/(monomial ideal), as a tuple of
    (degree, coeff) pairs.  Pivot recursion: split along a shared variable."""
    exps = _minimalize_monomials(list(exps))
    if not exps:
        return ((0, 1),)
    if any(sum(e) == 0 for e in exps):
        return ()
    deg = lambda e: sum(a * w for a, w in zip(e, weights))
    pairwise_coprime = True
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            if not all(a == 0 or b == 0 for a, b in zip(exps[i], exps[j])):
                pairwise_coprime = False
                break
        if not pairwise_coprime:
            break
    if pairwise_coprime:
        num = {0: 1}
        for e in exps:
            d = deg(e)
            new = {}
            for k, v in num.items():
                new[k] = new.get(k, 0) + v
                new[k + d] = new.get(k + d, 0) - v
            num = {k: v for k, v in new.items() if v}
        return tuple(sorted(num.items()))
    # pivot on the most shared variable
    nv = len(exps[0])
    counts = [sum(1 for e in exps if e[i]) for i in range(nv)]
    piv = max(range(nv), key=lambda i: counts[i])
    pe = tuple(1 if i == piv else 0 for i in range(nv))
    # I + (x): generators not using x survive, plus x itself
    plus = tuple(e for e in exps if e[piv] == 0) + (pe,)
    # I : x: divide the pivot exponent once
    coln = tuple(tuple(max(a - b, 0) for a, b in zip(e, pe)) for e in exps)
    out = {}
    for k, v in _monomial_numerator(tuple(sorted(plus)), weights):
        out[k] = out.get(k, 0) + v
    w = weights[piv]
    for k, v in _monomial_numerator(tuple(sorted(coln)), weights):
        out[k + w] = out.get(k + w, 0) + v
    return tuple(sorted((k, v) for k, v in out.items() if v))


def hilbert_series(M) -> HilbertData:
    """Hilbert series of a module; needs all variables of positive weight."""
    Q = as_quotient(M)
    ring = Q.ring
    if ring.base_indices:
        raise IdealOpError("Hilbert series needs a field base (no weight-0 variables)")
    weights = ring.weights
    init = initial_exponents(Q)
    num = {}
    for c in range(Q.module.rank):
        part = _monomial_numerator(tuple(sorted(init[c])), weights)
        a = Q.module.twists[c]
        for k, v in part:
            num[k + a] = num.get(k + a, 0) + v
    return HilbertData(num, weights)


def hilbert_series_of_submodule(N: Submodule) -> HilbertData:
    """HS(N) = HS(F) - HS(F/N)."""
    F_free = QuotientModule(N.module, ())
    return hilbert_series(F_free) - hilbert_series(QuotientModule(N.module, N.gens))


def hilbert_polynomial(M) -> HilbertPolynomial:
    return hilbert_series(M).hilbert_polynomial()


# ---------------------------------------------------------------------------
# degree windows

class GradedWindow:
    __slots__ = ("indeg", "end")

    def __init__(self, indeg, end):
        self.indeg = indeg
        self.end = end

    def __repr__(self):
        return f"GradedWindow(indeg={self.indeg}, end={self.end})"


def indeg_of(M):
    """Initial degree of a module (+inf for the zero module)."""
    if isinstance(M, Submodule):
        return M.indeg()
    Q = as_quotient(M)
    if Q.ring.base_indices:
        # surviving basis vectors give the initial degree (bigraded families)
        gb = Q.rel_gb()
        alive = [Q.module.twists[i] for i in range(Q.module.rank)
                 if not gb.contains(Q.module.basis(i))]
        if not alive:
            return PLUS_INF
        return min(alive)
    hs = hilbert_series(Q)
    d = hs.first_nonzero()
    return PLUS_INF if d is None else d


def end_of(M):
    """Top nonzero degree; defined for finite-length modules only."""
    Q = as_quotient(M)
    if Q.ring.base_indices:
        raise IdealOpError("end is computed over a field base")
    if dimension(Q) > 0:
        raise IdealOpError("end requested for a module of positive dimension")
    hs = hilbert_series(Q)
    if hs.is_zero():
        return MINUS_INF
    lo, hi = hs.min_exp(), hs.max_exp()
    vals = hs.function(lo, hi)
    last = MINUS_INF
    for mu in range(lo, hi + 1):
        if vals[mu]:
            last = mu
    return last


def graded_window(M) -> GradedWindow:
    ind = indeg_of(M)
    try:
        e = end_of(M)
    except IdealOpError:
        e = PLUS_INF
    return GradedWindow(ind, e)
