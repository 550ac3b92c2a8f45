"""Groebner bases for submodules of graded free modules.

The one engine underneath everything: Buchberger with the product criterion
(component-pure elements only; it is not valid for general module elements)
and the chain criterion, normal forms, syzygies and lifts through an
elimination order on an extended free module, kernels of maps, and block
elimination of variables.

A module term is a pair (component, exponent).  Orders are graded (weighted
degree plus component twist first), then the ring order, then position.  For
the extended modules used by syzygy computations the original components
dominate all auxiliary ones, which is an elimination order: basis elements
with zero original part have auxiliary parts generating exactly the syzygies.
"""

from __future__ import annotations

import heapq

from .ring import (Ring, RingError, Polynomial, mon_mul, mon_div, mon_divides,
                   mon_lcm, mon_coprime)


class FreeModule:
    """Free module over a ring with a per-component degree shift (twist)."""

    __slots__ = ("ring", "twists", "elim_rank", "_key")

    def __init__(self, ring: Ring, twists, elim_rank=None):
        self.ring = ring
        self.twists = tuple(twists)
        self.elim_rank = elim_rank
        self._key = (ring, self.twists, elim_rank)

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Free(rank={self.rank}, twists={self.twists})"

    def term_key(self, term):
        comp, exp = term
        g = self.ring.wdeg(exp) + self.twists[comp]
        k = self.ring.order.key(exp)
        if self.elim_rank is None:
            return (g, k, -comp)
        part = 0 if comp < self.elim_rank else 1
        return (1 - part, g, k, -comp)

    def zero(self):
        return Vec(self, {})

    def basis(self, i):
        f = self.ring.field
        exp = (0,) * self.ring.nvars
        return Vec(self, {(i, exp): f.one})

    def from_polys(self, polys):
        f = self.ring.field
        terms = {}
        for i, p in enumerate(polys):
            if p is None:
                continue
            if p.ring != self.ring:
                raise RingError("component in a different ring")
            for exp, c in p.terms.items():
                terms[(i, exp)] = c
        return Vec(self, terms)

    def from_poly(self, p, comp=0):
        if p.ring != self.ring:
            raise RingError("component in a different ring")
        return Vec(self, {(comp, exp): c for exp, c in p.terms.items()})


class Vec:
    """Immutable element of a free module: dict (comp, exp) -> coefficient."""

    __slots__ = ("module", "terms", "_lt")

    def __init__(self, module, terms):
        self.module = module
        self.terms = terms
        self._lt = None

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Vec) and other.module == self.module
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.module, frozenset(self.terms.items())))

    def lt(self):
        if self._lt is None:
            if not self.terms:
                raise ValueError("zero vector has no leading term")
            term = max(self.terms, key=self.module.term_key)
            self._lt = (term, self.terms[term])
        return self._lt

    def lead_term(self):
        return self.lt()[0]

    def lead_coeff(self):
        return self.lt()[1]

    def component(self, i) -> Polynomial:
        ring = self.module.ring
        return Polynomial(ring, {exp: c for (comp, exp), c in self.terms.items()
                                 if comp == i})

    def components(self):
        return [self.component(i) for i in range(self.module.rank)]

    def support_components(self):
        return sorted({comp for comp, _ in self.terms})

    def __add__(self, other):
        f = self.module.ring.field
        terms = dict(self.terms)
        for t, c in other.terms.items():
            acc = f.add(terms.get(t, f.zero), c)
            if f.is_zero(acc):
                terms.pop(t, None)
            else:
                terms[t] = acc
        return Vec(self.module, terms)

    def __neg__(self):
        f = self.module.ring.field
        return Vec(self.module, {t: f.neg(c) for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        f = self.module.ring.field
        c = f.coerce(c) if not isinstance(c, type(f.zero)) else c
        if f.is_zero(c):
            return self.module.zero()
        return Vec(self.module, {t: f.mul(v, c) for t, v in self.terms.items()})

    def mul_monomial(self, exp, coeff):
        f = self.module.ring.field
        return Vec(self.module,
                   {(comp, mon_mul(e, exp)): f.mul(c, coeff)
                    for (comp, e), c in self.terms.items()})

    def poly_mul(self, p: Polynomial):
        f = self.module.ring.field
        out = {}
        for pe, pc in p.terms.items():
            for (comp, e), c in self.terms.items():
                key = (comp, mon_mul(e, pe))
                acc = f.add(out.get(key, f.zero), f.mul(pc, c))
                if f.is_zero(acc):
                    out.pop(key, None)
                else:
                    out[key] = acc
        return Vec(self.module, out)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.module.ring.field.inv(self.lead_coeff()))

    def degree(self):
        """Common graded degree (wdeg + twist) of all terms, else None."""
        if self.is_zero():
            return None
        ring, tw = self.module.ring, self.module.twists
        degs = {ring.wdeg(e) + tw[comp] for comp, e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return self.is_zero() or self.degree() is not None

    def max_degree(self):
        ring, tw = self.module.ring, self.module.twists
        return max((ring.wdeg(e) + tw[comp] for comp, e in self.terms), default=None)

    def move_to(self, module):
        """Same terms, reinterpreted in a compatible module (order change)."""
        if module.ring != self.module.ring or module.rank < self.module.rank:
            if module.ring.vars != self.module.ring.vars:
                raise RingError("incompatible module move")
        return Vec(module, dict(self.terms))

    def __str__(self):
        return "[" + ", ".join(str(p) for p in self.components()) + "]"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# reduction

def normal_form(v: Vec, basis, trace=None) -> Vec:
    """Full normal form of v against monic basis elements.

    No term of the result is divisible by any leading term of the basis;
    v - NF(v) lies in the submodule the basis generates.
    """
    module = v.module
    f = module.ring.field
    by_comp = {}
    for g in basis:
        if g.is_zero():
            continue
        (comp, exp), _ = g.lt()
        by_comp.setdefault(comp, []).append((exp, g))
    work = dict(v.terms)
    out = {}
    key = module.term_key
    while work:
        term = max(work, key=key)
        comp, exp = term
        c = work[term]
        hit = None
        for gexp, g in by_comp.get(comp, ()):
            if mon_divides(gexp, exp):
                hit = (gexp, g)
                break
        if hit is None:
            out[term] = c
            del work[term]
            continue
        gexp, g = hit
        m = mon_div(exp, gexp)
        if trace is not None:
            trace.append(f"reduce {term} by lt {(comp, gexp)}")
        for (c2, e2), cv in g.terms.items():
            t2 = (c2, mon_mul(e2, m))
            acc = f.sub(work.get(t2, f.zero), f.mul(c, cv))
            if f.is_zero(acc):
                work.pop(t2, None)
            else:
                work[t2] = acc
    return Vec(module, out)


def _spair(f_el: Vec, g_el: Vec):
    """S-vector of two monic elements with the same leading component."""
    (cf, ef), _ = f_el.lt()
    (cg, eg), _ = g_el.lt()
    lcm = mon_lcm(ef, eg)
    one = f_el.module.ring.field.one
    return (f_el.mul_monomial(mon_div(lcm, ef), one)
            - g_el.mul_monomial(mon_div(lcm, eg), one))


def buchberger(gens, module: FreeModule, trace=None):
    """Reduced Groebner basis of the submodule generated by gens.

    Deterministic: normal pair selection (graded key of the lcm term, then
    generator indices), product criterion for component-pure pairs, chain
    criterion, full interreduction at the end.
    """
    G = []
    pure = []  # component index if all terms in one component, else None
    for g in gens:
        if g.is_zero():
            continue
        G.append(g.monic())
        sup = G[-1].support_components()
        pure.append(sup[0] if len(sup) == 1 else None)

    key = module.term_key
    pending = set()
    heap = []

    def push_pair(i, j):
        gi, gj = G[i], G[j]
        (ci, ei), _ = gi.lt()
        (cj, ej), _ = gj.lt()
        if ci != cj:
            return
        if (pure[i] is not None and pure[i] == pure[j]
                and mon_coprime(ei, ej)):
            return  # product criterion (valid: both are polynomials times e_c)
        lcm = mon_lcm(ei, ej)
        heapq.heappush(heap, (key((ci, lcm)), i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push_pair(i, j)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        gi, gj = G[i], G[j]
        (ci, ei), _ = gi.lt()
        (_, ej), _ = gj.lt()
        lcm = mon_lcm(ei, ej)
        # chain criterion: a third element dividing the lcm whose pairs with
        # both i and j were already handled lets us drop this pair
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            (ck, ek), _ = G[k].lt()
            if ck == ci and mon_divides(ek, lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = _spair(gi, gj)
        r = normal_form(s, G, trace=trace)
        if trace is not None:
            trace.append(f"pair ({i},{j}) -> {'0' if r.is_zero() else 'new'}")
        if r.is_zero():
            continue
        r = r.monic()
        G.append(r)
        sup = r.support_components()
        pure.append(sup[0] if len(sup) == 1 else None)
        t = len(G) - 1
        for i2 in range(t):
            push_pair(i2, t)

    return _reduce_basis(G, module)


def _reduce_basis(G, module):
    """Minimalize and tail-reduce; canonical descending order, monic."""
    key = module.term_key
    order = sorted((g for g in G if not g.is_zero()),
                   key=lambda g: key(g.lead_term()))
    kept = []
    for g in order:
        (c, e) = g.lead_term()
        redundant = any(kc == c and mon_divides(ke, e)
                        for (kc, ke) in (h.lead_term() for h in kept))
        if not redundant:
            kept.append(g)
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: key(g.lead_term()), reverse=True)
    return tuple(reduced)


class GroebnerBasis:
    """A reduced basis with its module; equality is element-wise."""

    __slots__ = ("module", "elements")

    def __init__(self, module, elements):
        self.module = module
        self.elements = tuple(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis)
                and other.module == self.module
                and other.elements == self.elements)

    def __hash__(self):
        return hash((self.module, self.elements))

    def normal_form(self, v):
        return normal_form(v, self.elements)

    def contains(self, v):
        return self.normal_form(v).is_zero()

    def lead_terms(self):
        return [g.lead_term() for g in self.elements]

    def __repr__(self):
        return "GB{" + "; ".join(str(g) for g in self.elements) + "}"


def groebner_basis(gens, module=None, trace=None) -> GroebnerBasis:
    if module is None:
        if not gens:
            raise ValueError("need a module for an empty generating set")
        module = gens[0].module
    return GroebnerBasis(module, buchberger(gens, module, trace=trace))


def verify_groebner(gb: GroebnerBasis) -> bool:
    """Re-check the Buchberger criterion: every S-pair reduces to zero."""
    els = gb.elements
    for j in range(len(els)):
        for i in range(j):
            (ci, _), _ = els[i].lt()
            (cj, _), _ = els[j].lt()
            if ci != cj:
                continue
            if not normal_form(_spair(els[i], els[j]), els).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# syzygies and lifts via an extended module

class SyzygyContext:
    """Extended-module basis for a generating set: syzygies, lifts, image GB.

    Works over F + S^s with the F-part dominating (elimination).  Optional
    ``plain`` generators participate without auxiliary markers, which turns
    syzygies into kernel computations modulo those relations.
    """

    def __init__(self, gens, module: FreeModule, plain=(), aux_twists=None):
        self.module = module
        self.gens = tuple(gens)
        r = module.rank
        s = len(self.gens)
        ring = module.ring
        if aux_twists is None:
            aux_twists = []
            for g in self.gens:
                d = g.degree()
                aux_twists.append(d if d is not None else (g.max_degree() or 0))
        self.aux_module = FreeModule(ring, tuple(aux_twists))
        self.ext_module = FreeModule(ring, module.twists + tuple(aux_twists),
                                     elim_rank=r)
        f = ring.field
        ext_gens = []
        for i, g in enumerate(self.gens):
            terms = dict(g.terms)
            terms[(r + i, (0,) * ring.nvars)] = f.one
            ext_gens.append(Vec(self.ext_module, terms))
        for p in plain:
            ext_gens.append(Vec(self.ext_module, dict(p.terms)))
        self._basis = buchberger(ext_gens, self.ext_module)
        self._r = r
        self._s = s

    def _split(self, vec):
        head, tail = {}, {}
        for (comp, exp), c in vec.terms.items():
            if comp < self._r:
                head[(comp, exp)] = c
            else:
                tail[(comp - self._r, exp)] = c
        return Vec(self.module, head), Vec(self.aux_module, tail)

    def syzygies(self):
        """Generators of the syzygy module of the marked generators."""
        out = []
        for b in self._basis:
            head, tail = self._split(b)
            if head.is_zero() and not tail.is_zero():
                out.append(tail)
        return out

    def image_groebner(self) -> GroebnerBasis:
        """GB of the submodule generated by gens + plain (projection)."""
        out = []
        for b in self._basis:
            head, _ = self._split(b)
            if not head.is_zero():
                out.append(head)
        return GroebnerBasis(self.module, _reduce_basis(out, self.module))

    def lift(self, v: Vec):
        """Coefficients c with v = sum c_i gens_i (mod plain); None if not in."""
        ext_v = Vec(self.ext_module, dict(v.terms))
        r = normal_form(ext_v, self._basis)
        head, tail = self._split(r)
        if not head.is_zero():
            return None
        return -tail


def syzygies(gens, module=None):
    """First syzygy module of homogeneous generators."""
    if module is None:
        module = gens[0].module
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("syzygies require homogeneous generators")
    return SyzygyContext(gens, module).syzygies()


def kernel_of_map(cols, target_module: FreeModule, target_rels=(),
                  source_twists=None):
    """Kernel of the map sending source basis vector i to cols[i], into the
    quotient of the target by ``target_rels``.  Returns vectors of source
    coefficients; pass source_twists explicitly when columns may be zero."""
    ctx = SyzygyContext(cols, target_module, plain=target_rels,
                        aux_twists=source_twists)
    return ctx.syzygies()


# ---------------------------------------------------------------------------
# elimination

def eliminate_ideal(gens, block_indices, restrict=True):
    """Generators of the ideal intersected with the subring without the block.

    Uses a block order placing the eliminated variables first; the returned
    generators are the block-free elements of the reduced basis, either in
    the original ring or (restrict=True) in the subring on the other
    variables.
    """
    if not gens:
        return [], None
    ring = gens[0].ring
    block = tuple(block_indices)
    if not block:
        return list(gens), ring
    rest = tuple(i for i in range(ring.nvars) if i not in block)
    elim_ring = ring.with_order(BlockOrderFor(ring, block, rest))
    M = FreeModule(elim_ring, (0,))
    moved = [M.from_poly(Polynomial(elim_ring, dict(g.terms))) for g in gens]
    basis = buchberger(moved, M)
    free = []
    for b in basis:
        if all(all(exp[i] == 0 for i in block) for (_, exp) in b.terms):
            free.append(b.component(0))
    if not restrict:
        back = [Polynomial(ring, dict(p.terms)) for p in free]
        return back, ring
    sub = ring.restricted(rest)
    index_map = [None] * ring.nvars
    for j, i in enumerate(rest):
        index_map[i] = j
    return [p.map_to(sub, index_map) for p in free], sub


def BlockOrderFor(ring, block, rest):
    from .ring import BlockOrder
    return BlockOrder([block, rest], ring.weights)
