"""Cohomological invariants of graded modules and of families over a base.

The vector a^i(M) (top degrees of local cohomology supported in the
irrelevant ideal) is computed through graded duality against the canonical
twist: a^i(M) = -indeg Ext^{n-i}(M, S) - sigma, with the initial degree of
each Ext read off an exact Hilbert-series subtraction of kernel and image of
the dualized minimal resolution.  Everything stays finitely generated and
exact; no Cech complexes.

Families live over rings with weight-0 base variables.  Tor against the
residue field at the origin is the Koszul homology of the base variables;
fibers at rational points come from substituting the point into the
presentation.  The cohomological dimension of a family equals the dimension
of its origin fiber (top base change), and for a module over a field base it
is the Krull dimension.
"""

from __future__ import annotations

from itertools import combinations

from .ring import Ring, RingError, Polynomial
from .groebner import FreeModule, Vec, SyzygyContext, groebner_basis
from .ideals import (Submodule, QuotientModule, as_quotient, ideal,
                     hilbert_series, hilbert_series_of_submodule, HilbertData,
                     dimension, saturate, quotient_by_ideal, MINUS_INF,
                     IdealOpError, irrelevant_ideal)
from .resolution import free_resolution, betti_table, Resolution
from . import rng as rng_mod


class CohomologyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# a-invariants via duality

class AInvariants:
    """a^0..a^n over {-inf} u Z, with reg, a*, and cohomological dimension."""

    __slots__ = ("a", "n")

    def __init__(self, a, n):
        self.a = dict(a)
        self.n = n

    def __getitem__(self, i):
        return self.a.get(i, MINUS_INF)

    @property
    def reg(self):
        vals = [v + i for i, v in self.a.items() if v != MINUS_INF]
        return max(vals) if vals else MINUS_INF

    @property
    def a_star(self):
        vals = [v for v in self.a.values() if v != MINUS_INF]
        return max(vals) if vals else MINUS_INF

    @property
    def cd(self):
        vals = [i for i, v in self.a.items() if v != MINUS_INF]
        return max(vals) if vals else MINUS_INF

    def vector(self):
        return [self[i] for i in range(self.n + 1)]

    def __repr__(self):
        return f"AInvariants({self.vector()})"


def _dual_module(ring, twists):
    return FreeModule(ring, tuple(-a for a in twists))


def _transposed_rows(res: Resolution, j):
    """Columns of d_j^T : F_{j-1}^dual -> F_j^dual (one per row of d_j)."""
    target = _dual_module(res.quotient.ring, res.twists(j))
    rows = []
    for r in range(res.modules[j - 1].rank):
        comps = [res.entry(j, r, c) for c in range(res.modules[j].rank)]
        rows.append(target.from_polys(comps))
    return rows, target


def _ext_kernel_image(res: Resolution, j):
    """Generators of ker(d_{j+1}^T) and im(d_j^T) inside F_j^dual."""
    ring = res.quotient.ring
    Fdual = _dual_module(ring, res.twists(j))
    if j < res.length:
        cols, target = _transposed_rows(res, j + 1)
        ker = SyzygyContext(cols, target, aux_twists=Fdual.twists).syzygies()
        ker = [Vec(Fdual, dict(k.terms)) for k in ker]
    else:
        ker = [Fdual.basis(i) for i in range(Fdual.rank)]
    if j >= 1:
        im, _ = _transposed_rows(res, j)
        im = [Vec(Fdual, dict(v.terms)) for v in im if not v.is_zero()]
    else:
        im = []
    return ker, im, Fdual


def ext_module(M, i) -> QuotientModule:
    """Presentation of Ext^i(M, S) as ker/im of the dualized resolution."""
    Q = as_quotient(M)
    if Q.ring.base_indices:
        raise CohomologyError("Ext duality runs over a field base")
    res = free_resolution(Q)
    if i < 0 or i > res.length:
        return QuotientModule(FreeModule(Q.ring, ()), ())
    ker, im, Fdual = _ext_kernel_image(res, i)
    if not ker:
        return QuotientModule(FreeModule(Q.ring, ()), ())
    ctx = SyzygyContext(ker, Fdual)
    rels = list(ctx.syzygies())
    for v in im:
        lifted = ctx.lift(v)
        if lifted is None:
            raise CohomologyError("image does not lift into the kernel")
        rels.append(lifted)
    F = ctx.aux_module
    return QuotientModule(F, [Vec(F, dict(r.terms)) for r in rels])


def a_invariants(M) -> AInvariants:
    """a^i via duality; exact Hilbert-series subtraction finds each indeg."""
    Q = as_quotient(M)
    ring = Q.ring
    if ring.base_indices:
        raise CohomologyError("a-invariants run over a field base; compute "
                              "fibers or stalk data for families instead")
    n, sigma = ring.n, ring.sigma
    res = free_resolution(Q)
    a = {i: MINUS_INF for i in range(n + 1)}
    for j in range(res.length + 1):
        i = n - j
        if i < 0:
            continue
        ker, im, Fdual = _ext_kernel_image(res, j)
        if not ker:
            continue
        hs_ker = hilbert_series_of_submodule(Submodule(Fdual, ker))
        hs_im = (hilbert_series_of_submodule(Submodule(Fdual, im))
                 if im else HilbertData({}, ring.weights))
        diff = hs_ker - hs_im
        if diff.is_zero():
            continue
        bound = max(k.degree() for k in ker)
        lo = diff.min_exp()
        vals = diff.function(lo, max(lo, bound))
        indeg = None
        for mu in range(lo, max(lo, bound) + 1):
            if vals[mu]:
                indeg = mu
                break
        if indeg is None:
            raise CohomologyError("nonzero Ext with empty window")
        a[i] = -indeg - sigma
    return AInvariants(a, n)


def reg_from_coh(M):
    return a_invariants(M).reg


def cd_irrelevant(M):
    """Cohomological dimension for the irrelevant ideal.

    Over a field base this is the Krull dimension (positive grading,
    finitely generated); for a local-base family it is the dimension of the
    origin fiber (top base change)."""
    Q = as_quotient(M)
    if Q.ring.base_indices:
        return dimension(fiber_module(Q, origin_point(Q.ring)))
    return dimension(Q)


# ---------------------------------------------------------------------------
# families: fibers

def fiber_ring(ring: Ring) -> Ring:
    if not ring.base_indices:
        return ring
    return ring.restricted(ring.positive_indices, order="grevlex",
                           local_base=False)


def origin_point(ring: Ring):
    return tuple(ring.field.zero for _ in ring.base_indices)


def fiber_module(Q: QuotientModule, point) -> QuotientModule:
    """Base change to the rational point: substitute base coordinates into
    the presentation matrix; the result is presented over the fiber ring."""
    ring = Q.ring
    base = ring.base_indices
    if len(point) != len(base):
        raise CohomologyError("one coordinate per base variable required")
    assignments = {i: c for i, c in zip(base, point)}
    fr = fiber_ring(ring)
    index_map = [None] * ring.nvars
    for j, i in enumerate(ring.positive_indices):
        index_map[i] = j
    F = FreeModule(fr, Q.module.twists)
    rels = []
    for g in Q.relations.gens:
        comps = [p.substitute(assignments).map_to(fr, index_map)
                 for p in g.components()]
        v = F.from_polys(comps)
        if not v.is_zero():
            rels.append(v)
    return QuotientModule(F, rels)


def sample_base_points(ring: Ring, trials: int, seed: int, extra=()):
    pts = [tuple(ring.field.coerce(c) for c in p) for p in extra]
    for idx in range(trials):
        stream = rng_mod.derived(seed, idx)
        pts.append(tuple(rng_mod.sample_field_element(stream, ring.field)
                         for _ in ring.base_indices))
    return pts


def max_fiber_dimension(Q: QuotientModule, trials: int, seed: int,
                        extra_points=()):
    """Sampled lower bound for the maximal fiber dimension of a family.

    Returns (max_dim, certificates) where certificates lists (point, dim)."""
    if trials <= 0 and not extra_points:
        raise CohomologyError("need at least one sample point")
    certs = []
    best = MINUS_INF
    for p in sample_base_points(Q.ring, trials, seed, extra_points):
        d = dimension(fiber_module(Q, p))
        certs.append((p, d))
        if d != MINUS_INF and (best == MINUS_INF or d > best):
            best = d
    return best, certs


# ---------------------------------------------------------------------------
# Tor against the residue field: Koszul homology machinery

def _koszul_layer(F: FreeModule, mult, q):
    """Component data of F ⊗ Λ^q on the multipliers `mult` (list of polys).

    Components are (subset, F-component) pairs flattened in subset-major
    order; multiplying by a weight-0 base variable keeps the X-twists, and a
    positive-degree multiplier adds its degree to the twist."""
    ring = F.ring
    subs = list(combinations(range(len(mult)), q))
    twists = []
    for s in subs:
        shift = sum(m.multidegree() for m in (mult[i] for i in s))
        for a in F.twists:
            twists.append(a + shift)
    return subs, FreeModule(ring, tuple(twists))


def _koszul_boundary(F: FreeModule, mult, q, subs_q, mod_q, subs_q1, mod_q1):
    """Columns of the boundary (F ⊗ Λ^q) -> (F ⊗ Λ^{q-1})."""
    rank = F.rank
    pos_of = {s: i for i, s in enumerate(subs_q1)}
    cols = []
    fld = F.ring.field
    for si, s in enumerate(subs_q):
        for c in range(rank):
            terms = {}
            for pos, i in enumerate(s):
                rest = tuple(x for x in s if x != i)
                tgt = pos_of[rest] * rank + c
                sign = fld.one if pos % 2 == 0 else fld.neg(fld.one)
                for e, cv in mult[i].terms.items():
                    key = (tgt, e)
                    acc = fld.add(terms.get(key, fld.zero), fld.mul(sign, cv))
                    if fld.is_zero(acc):
                        terms.pop(key, None)
                    else:
                        terms[key] = acc
            cols.append(Vec(mod_q1, terms))
    return cols


def _spread_relations(rel_gens, F: FreeModule, subs, mod):
    """Copies of the relation submodule in each Koszul summand."""
    rank = F.rank
    out = []
    for si in range(len(subs)):
        for g in rel_gens:
            out.append(Vec(mod, {(si * rank + c, e): v
                                 for (c, e), v in g.terms.items()}))
    return out


def koszul_homology_presentation(Q: QuotientModule, mult, q) -> QuotientModule:
    """Presentation of H_q(Q ⊗ Koszul(mult)) over the ring of Q.

    The generators are kernel elements of the q-th boundary modulo the
    relations; relations are the lifted boundaries from level q+1 plus the
    spread relations of Q plus the syzygies of the kernel generators."""
    ring = Q.ring
    F = Q.module
    rels = list(Q.relations.gens)
    subs_q, mod_q = _koszul_layer(F, mult, q)
    if not subs_q:
        return QuotientModule(FreeModule(ring, ()), ())
    spread_q = _spread_relations(rels, F, subs_q, mod_q)
    if q >= 1:
        subs_q1, mod_q1 = _koszul_layer(F, mult, q - 1)
        d_q = _koszul_boundary(F, mult, q, subs_q, mod_q, subs_q1, mod_q1)
        spread_q1 = _spread_relations(rels, F, subs_q1, mod_q1)
        ker = SyzygyContext(d_q, mod_q1, plain=spread_q1,
                            aux_twists=mod_q.twists).syzygies()
        Z = [Vec(mod_q, dict(k.terms)) for k in ker]
    else:
        Z = [mod_q.basis(i) for i in range(mod_q.rank)]
    if not Z:
        return QuotientModule(FreeModule(ring, ()), ())
    subs_q2, mod_q2 = _koszul_layer(F, mult, q + 1)
    bdry = (_koszul_boundary(F, mult, q + 1, subs_q2, mod_q2, subs_q, mod_q)
            if subs_q2 else [])
    ctx = SyzygyContext(Z, mod_q)
    new_rels = list(ctx.syzygies())
    for v in bdry + spread_q:
        if v.is_zero():
            continue
        lifted = ctx.lift(v)
        if lifted is None:
            raise CohomologyError("boundary does not lift into the kernel")
        if not lifted.is_zero():
            new_rels.append(lifted)
    FH = ctx.aux_module
    return QuotientModule(FH, [Vec(FH, dict(r.terms)) for r in new_rels])


def tor_base(Q: QuotientModule, q: int) -> QuotientModule:
    """Tor_q of a family against the residue field at the base origin,
    presented over the fiber ring (the base variables act as zero)."""
    if q < 0:
        raise CohomologyError("negative homological degree")
    ring = Q.ring
    if not ring.base_indices:
        raise CohomologyError("Tor against the base needs base variables")
    mult = [ring.var(i) for i in ring.base_indices]
    H = koszul_homology_presentation(Q, mult, q)
    # the base acts as zero on the homology: base change the presentation
    return fiber_module(H, origin_point(ring))


def specialization_tor(fiber_forms, q: int) -> QuotientModule:
    """Tor_q against the residue field for the family of generically-deformed
    forms specializing to ``fiber_forms``.

    With fully generic coefficient deformations the forms are a regular
    sequence over the deformed base, so their Koszul complex is a flat
    resolution and the Tor is the Koszul homology of the specialized forms
    over the fiber ring itself."""
    if not fiber_forms:
        raise CohomologyError("need at least one form")
    ring = fiber_forms[0].ring
    free = QuotientModule(FreeModule(ring, (0,)), ())
    return koszul_homology_presentation(free, list(fiber_forms), q)


# ---------------------------------------------------------------------------
# Hilbert-polynomial flatness comparison

def flatness_defect(Q: QuotientModule, p1, p2, degree_threshold: int):
    """Hilbert polynomials of two fibers and whether their difference has
    degree < threshold.  Standard grading on the positive variables only."""
    ring = Q.ring
    if any(ring.weights[i] != 1 for i in ring.positive_indices):
        raise CohomologyError("flatness comparison needs standard positive weights")
    f1 = fiber_module(Q, p1)
    f2 = fiber_module(Q, p2)
    hp1 = hilbert_series(f1).hilbert_polynomial()
    hp2 = hilbert_series(f2).hilbert_polynomial()
    diff = hp1 - hp2
    return diff.degree() < degree_threshold, diff, hp1, hp2


# ---------------------------------------------------------------------------
# fiber reports (used by the blowup pipeline and family sampling)

class FiberReport:
    """Invariants of one fiber: scheme conventions (saturated ideal)."""

    __slots__ = ("point", "ideal_strings", "a", "reg", "dim", "module_dim",
                 "hilbert_poly")

    def __init__(self, point, ideal_strings, a, reg, dim, module_dim,
                 hilbert_poly):
        self.point = point
        self.ideal_strings = ideal_strings
        self.a = a
        self.reg = reg
        self.dim = dim
        self.module_dim = module_dim
        self.hilbert_poly = hilbert_poly

    def as_json(self):
        from .report import encode_value
        return {
            "point": [str(c) for c in self.point],
            "fiber_ideal": list(self.ideal_strings),
            "a": [encode_value(v) for v in self.a.vector()],
            "reg": encode_value(self.reg),
            "dim": encode_value(self.dim),
            "hilbert_poly": [str(c) for c in self.hilbert_poly.coeffs],
        }


def scheme_fiber_report(fiber_ideal: Submodule, point) -> FiberReport:
    """Saturate, then read the scheme-level invariants of the fiber."""
    satd, _ = saturate(fiber_ideal)
    Q = quotient_by_ideal(satd)
    ai = a_invariants(Q)
    reg = max((ai[i] + i for i in range(1, ai.n + 1) if ai[i] != MINUS_INF),
              default=MINUS_INF)
    mdim = dimension(Q)
    pdim = mdim - 1 if mdim != MINUS_INF else MINUS_INF
    hp = hilbert_series(Q).hilbert_polynomial()
    gens = [str(g.component(0)) for g in satd.min_gens()]
    return FiberReport(point, gens, ai, reg, pdim, mdim, hp)
