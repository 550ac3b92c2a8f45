"""Graded polynomial rings, monomial orders, and exact polynomial arithmetic.

Monomials are exponent tuples.  A ring splits its variables into
positive-weight ones (projective coordinates, count ``n``, weight sum
``sigma``) and weight-0 base variables (coordinates on the parameter space; a
ring may additionally be flagged local at the base origin).  A variable may
carry a second integer grading component (``tweights``), used for the bigraded
ambient rings of blowup computations.

All monomial orders compare (weighted degree, total degree, tie-break);
including the total degree keeps the order a well-order even when weight-0
variables are present.
"""

from __future__ import annotations

from .field import PrimeField, QQ, FieldError, field_from_spec

INHOMOGENEOUS = "inhomogeneous"


class RingError(ValueError):
    """Invalid ring construction or mixed-ring arithmetic."""


# ---------------------------------------------------------------------------
# monomials = exponent tuples

def mon_mul(u, v):
    return tuple(a + b for a, b in zip(u, v))


def mon_divides(u, v):
    """u | v componentwise."""
    return all(a <= b for a, b in zip(u, v))


def mon_div(u, v):
    """u / v, assuming v | u."""
    return tuple(a - b for a, b in zip(u, v))


def mon_lcm(u, v):
    return tuple(max(a, b) for a, b in zip(u, v))


def mon_coprime(u, v):
    return all(a == 0 or b == 0 for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """Key-function based order; larger key = larger monomial."""

    tag = "?"

    def key(self, exp):
        raise NotImplementedError

    def sort_terms(self, terms):
        return sorted(terms, key=lambda t: self.key(t[0]), reverse=True)

    def __repr__(self):
        return self.tag


class GrevLex(MonomialOrder):
    """Weighted degree, then total degree, then reverse lexicographic."""

    def __init__(self, weights):
        self.weights = tuple(weights)
        self.tag = "grevlex"

    def key(self, exp):
        w = self.weights
        wdeg = sum(e * wi for e, wi in zip(exp, w))
        return (wdeg, sum(exp), tuple(-e for e in reversed(exp)))


class Lex(MonomialOrder):
    def __init__(self):
        self.tag = "lex"

    def key(self, exp):
        return exp


class BlockOrder(MonomialOrder):
    """Block elimination order: earlier blocks dominate; grevlex inside each.

    A monomial containing any variable of an earlier block is larger than any
    monomial in later blocks only, so the ideal generated by elements free of
    the first block is stable under reduction (elimination property).
    """

    def __init__(self, blocks, weights):
        self.blocks = tuple(tuple(b) for b in blocks)
        self.weights = tuple(weights)
        self.tag = "block(" + "|".join(",".join(map(str, b)) for b in self.blocks) + ")"

    def key(self, exp):
        parts = []
        for block in self.blocks:
            sub = tuple(exp[i] for i in block)
            wdeg = sum(exp[i] * self.weights[i] for i in block)
            parts.append((wdeg, sum(sub), tuple(-e for e in reversed(sub))))
        return tuple(parts)


def make_order(tag, weights, nvars, positive_indices, base_indices):
    if tag == "grevlex":
        return GrevLex(weights)
    if tag == "lex":
        return Lex()
    if tag == "grevlex-over-base-block":
        # positive variables dominate; used for families over a base.
        return BlockOrder([positive_indices, base_indices], weights)
    raise RingError(f"unknown order tag {tag!r}")


# ---------------------------------------------------------------------------
# rings

class Ring:
    """A graded polynomial ring over an exact field.

    weights[i] >= 1 marks a projective-type variable, weights[i] == 0 a base
    variable.  ``tweights`` is the optional second grading (blowup parameter
    degree).  ``local_base`` means degree-0 variables are coordinates of a
    local ring at the base origin; it changes minimalization rules downstream,
    not the arithmetic here.
    """

    __slots__ = ("field", "vars", "weights", "tweights", "order", "local_base",
                 "n", "sigma", "positive_indices", "base_indices", "_key")

    def __init__(self, field, variables, weights, tweights=None, order="grevlex",
                 local_base=False):
        variables = tuple(variables)
        if not variables:
            raise RingError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable names")
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(variables):
            raise RingError("one weight per variable required")
        if any(w < 0 for w in weights):
            raise RingError("weights must be non-negative")
        if all(w == 0 for w in weights):
            raise RingError("at least one variable must have positive weight")
        self.field = field
        self.vars = variables
        self.weights = weights
        self.tweights = tuple(int(t) for t in tweights) if tweights else (0,) * len(variables)
        self.positive_indices = tuple(i for i, w in enumerate(weights) if w > 0)
        self.base_indices = tuple(i for i, w in enumerate(weights) if w == 0)
        self.n = len(self.positive_indices)
        self.sigma = sum(weights)
        self.local_base = bool(local_base)
        if isinstance(order, MonomialOrder):
            self.order = order
        else:
            self.order = make_order(order, weights, len(variables),
                                    self.positive_indices, self.base_indices)
        self._key = (field, variables, weights, self.tweights, self.order.tag,
                     self.local_base)

    # rings with equal construction data are interchangeable
    def __eq__(self, other):
        return isinstance(other, Ring) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        base = ",".join(self.vars[i] for i in self.base_indices)
        pos = ",".join(self.vars[i] for i in self.positive_indices)
        inside = f"{base};{pos}" if base else pos
        loc = " local" if self.local_base else ""
        return f"{self.field!r}[{inside}]{loc}"

    @property
    def nvars(self):
        return len(self.vars)

    @property
    def is_bigraded(self):
        return any(t != 0 for t in self.tweights)

    def wdeg(self, exp):
        return sum(e * w for e, w in zip(exp, self.weights))

    def tdeg(self, exp):
        return sum(e * t for e, t in zip(exp, self.tweights))

    def total_deg(self, exp):
        return sum(exp)

    def var_index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise RingError(f"no variable {name!r} in {self!r}") from None

    # --- element constructors -------------------------------------------
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(self.field.one)

    def const(self, c):
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i):
        if isinstance(i, str):
            i = self.var_index(i)
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def monomial(self, exp, coeff=None):
        coeff = self.field.one if coeff is None else self.field.coerce(coeff)
        if self.field.is_zero(coeff):
            return self.zero()
        return Polynomial(self, {tuple(exp): coeff})

    def from_terms(self, items):
        terms = {}
        f = self.field
        for exp, c in items:
            c = f.coerce(c)
            exp = tuple(exp)
            acc = f.add(terms.get(exp, f.zero), c)
            if f.is_zero(acc):
                terms.pop(exp, None)
            else:
                terms[exp] = acc
        return Polynomial(self, terms)

    def parse(self, text):
        return parse_polynomial(self, text)

    # --- derived rings ----------------------------------------------------
    def with_order(self, order):
        return Ring(self.field, self.vars, self.weights, self.tweights,
                    order, self.local_base)

    def extended(self, names, weights, tweights=None, order=None):
        """Append fresh variables (used for intersection/blowup tricks)."""
        tweights = tweights or [0] * len(names)
        new = Ring(self.field, self.vars + tuple(names),
                   self.weights + tuple(weights),
                   self.tweights + tuple(tweights),
                   order if order is not None else self.order.tag,
                   self.local_base)
        return new

    def restricted(self, keep_indices, order="grevlex", local_base=None,
                   weights=None, tweights=None):
        keep = tuple(keep_indices)
        return Ring(self.field,
                    tuple(self.vars[i] for i in keep),
                    weights if weights is not None else tuple(self.weights[i] for i in keep),
                    tweights if tweights is not None else tuple(self.tweights[i] for i in keep),
                    order,
                    self.local_base if local_base is None else local_base)


def make_ring(field_spec, variables, weights, order_tag="grevlex", local_base=False):
    """Build a ring from plain data; weights may be ints or (deg, tdeg) pairs."""
    field = field_from_spec(field_spec) if isinstance(field_spec, str) else field_spec
    ws, ts = [], []
    for w in weights:
        if isinstance(w, tuple):
            ws.append(w[0])
            ts.append(w[1])
        else:
            ws.append(w)
            ts.append(0)
    return Ring(field, variables, ws, ts, order_tag, local_base)


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Immutable exact polynomial: dict exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lt = None

    # --- basics -----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.ring == self.ring
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def sorted_terms(self):
        """Terms in strictly descending monomial order (canonical form)."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lt(self):
        """(exponent, coeff) of the leading term."""
        if self._lt is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            key = self.ring.order.key
            exp = max(self.terms, key=key)
            self._lt = (exp, self.terms[exp])
        return self._lt

    def lm(self):
        return self.lt()[0]

    def lc(self):
        return self.lt()[1]

    # --- arithmetic ---------------------------------------------------------
    def _require_same_ring(self, other):
        if self.ring != other.ring:
            raise RingError("operands live in different rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._require_same_ring(other)
        f = self.ring.field
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            acc = f.add(terms.get(exp, f.zero), c)
            if f.is_zero(acc):
                terms.pop(exp, None)
            else:
                terms[exp] = acc
        return Polynomial(self.ring, terms)

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._require_same_ring(other)
        f = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mon_mul(e1, e2)
                acc = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if f.is_zero(acc):
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        f = self.ring.field
        c = f.coerce(c)
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_monomial(self, exp, coeff):
        f = self.ring.field
        return Polynomial(self.ring,
                          {mon_mul(e, exp): f.mul(c, coeff) for e, c in self.terms.items()})

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    # --- grading ------------------------------------------------------------
    def wdeg(self):
        """Max weighted degree over terms (-inf marker: None for 0)."""
        if self.is_zero():
            return None
        return max(self.ring.wdeg(e) for e in self.terms)

    def multidegree(self):
        """Common multidegree of all terms, or the inhomogeneous marker.

        Returns an int for singly graded rings, a (deg, tdeg) pair for
        bigraded ones, None for the zero polynomial.
        """
        if self.is_zero():
            return None
        ring = self.ring
        bi = ring.is_bigraded
        degs = {(ring.wdeg(e), ring.tdeg(e)) if bi else ring.wdeg(e)
                for e in self.terms}
        if len(degs) > 1:
            return INHOMOGENEOUS
        return next(iter(degs))

    def is_homogeneous(self):
        return self.multidegree() != INHOMOGENEOUS

    def total_multidegree(self):
        """Homogeneity check for the all-variables-count-1 grading."""
        if self.is_zero():
            return None
        degs = {sum(e) for e in self.terms}
        return next(iter(degs)) if len(degs) == 1 else INHOMOGENEOUS

    # --- substitution / restriction ------------------------------------------
    def substitute(self, assignments):
        """Replace variables (by index) with field constants; exact."""
        f = self.ring.field
        consts = {i: f.coerce(c) for i, c in assignments.items()}
        out = {}
        for exp, c in self.terms.items():
            val = c
            new = list(exp)
            dead = False
            for i, cv in consts.items():
                e = exp[i]
                if e:
                    if f.is_zero(cv):
                        dead = True
                        break
                    val = f.mul(val, _field_pow(f, cv, e))
                new[i] = 0
            if dead:
                continue
            key = tuple(new)
            acc = f.add(out.get(key, f.zero), val)
            if f.is_zero(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return Polynomial(self.ring, out)

    def map_to(self, target, index_map):
        """Reinterpret in `target`; index_map[i] = target index of our var i
        (None only allowed when the variable does not occur)."""
        if target.field != self.ring.field:
            raise RingError("map_to requires the same coefficient field")
        out = {}
        for exp, c in self.terms.items():
            new = [0] * target.nvars
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                j = index_map[i]
                if j is None:
                    raise RingError(f"variable {self.ring.vars[i]} does not exist in target")
                new[j] = e
            out[tuple(new)] = c
        return Polynomial(target, out)

    def eval_at(self, point):
        """Full evaluation at a point (one coordinate per variable)."""
        if len(point) != self.ring.nvars:
            raise RingError("one coordinate per variable required")
        f = self.ring.field
        total = f.zero
        pt = [f.coerce(c) for c in point]
        for exp, c in self.terms.items():
            val = c
            for i, e in enumerate(exp):
                if e:
                    if f.is_zero(pt[i]):
                        val = f.zero
                        break
                    val = f.mul(val, _field_pow(f, pt[i], e))
            total = f.add(total, val)
        return total

    # --- display --------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


def _field_pow(f, c, e):
    acc = f.one
    for _ in range(e):
        acc = f.mul(acc, c)
    return acc


def poly_arithmetic(op, f, g=None):
    """Dispatch wrapper: op in {add, sub, mul, scalar_mul}."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# canonical text format: "coeff*x^a*y^b" terms joined by +/-, descending order

def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    ring = p.ring
    fld = ring.field
    pieces = []
    for exp, c in p.sorted_terms():
        txt = fld.format(c)
        neg = txt.startswith("-")
        if neg:
            txt = txt[1:]
        mono = "*".join(
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(ring.vars, exp) if e
        )
        if mono:
            body = mono if txt == "1" else f"{txt}*{mono}"
        else:
            body = txt
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("-" if neg else "+") + body)
    return "".join(pieces)


class PolyParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at column {pos + 1})")
        self.pos = pos


class _PolyScanner:
    """Tokenizer for polynomial expressions over a fixed ring.

    Identifier characters are matched greedily against the ring's variable
    names (longest match first), so juxtaposition like `bX1` reads as b*X1.
    """

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.pos = 0
        self.names = sorted(ring.vars, key=len, reverse=True)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_var(self):
        for name in self.names:
            if self.text.startswith(name, self.pos):
                nxt = self.pos + len(name)
                # don't let var "x" swallow prefix of an unknown identifier
                rest = self.text[nxt:nxt + 1]
                if rest.isalnum() or rest == "_":
                    # only accept if the remainder also scans as variables
                    save = self.pos
                    self.pos = nxt
                    if self._rest_scans():
                        return name
                    self.pos = save
                    continue
                self.pos = nxt
                return name
        return None

    def _rest_scans(self):
        save = self.pos
        ch = self.text[self.pos:self.pos + 1]
        if not (ch.isalnum() or ch == "_"):
            return True
        if ch.isdigit():
            return True
        ok = self.take_var() is not None
        self.pos = save
        return ok

    def take_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            return None
        return int(self.text[start:self.pos])


def parse_polynomial(ring, text):
    """Parse the canonical format (plus parentheses and juxtaposition)."""
    sc = _PolyScanner(ring, text)
    p = _parse_sum(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise PolyParseError(f"unexpected {sc.text[sc.pos]!r}", sc.pos)
    return p


def _parse_sum(sc):
    ch = sc.peek()
    sign = 1
    if ch == "+" or ch == "-":
        sc.pos += 1
        sign = -1 if ch == "-" else 1
    p = _parse_product(sc)
    if sign < 0:
        p = -p
    while True:
        ch = sc.peek()
        if ch != "+" and ch != "-":
            return p
        sc.pos += 1
        q = _parse_product(sc)
        p = p - q if ch == "-" else p + q


def _parse_product(sc):
    p = _parse_power(sc)
    while True:
        ch = sc.peek()
        if ch == "*":
            sc.pos += 1
            p = p * _parse_power(sc)
        elif ch == "(" or ch.isalpha() or ch == "_" or ch.isdigit():
            p = p * _parse_power(sc)
        else:
            return p


def _parse_power(sc):
    base = _parse_atom(sc)
    while sc.peek() == "^":
        sc.pos += 1
        e = sc.take_int()
        if e is None:
            raise PolyParseError("exponent expected after '^'", sc.pos)
        base = base ** e
    return base


def _parse_atom(sc):
    ch = sc.peek()
    if ch == "(":
        sc.pos += 1
        p = _parse_sum(sc)
        if sc.peek() != ")":
            raise PolyParseError("missing ')'", sc.pos)
        sc.pos += 1
        return p
    if ch.isdigit():
        num = sc.take_int()
        if sc.peek() == "/":
            sc.pos += 1
            den = sc.take_int()
            if den is None:
                raise PolyParseError("denominator expected after '/'", sc.pos)
            from fractions import Fraction
            return sc.ring.const(Fraction(num, den))
        return sc.ring.const(num)
    if ch.isalpha() or ch == "_":
        name = sc.take_var()
        if name is None:
            raise PolyParseError(f"unknown variable near {sc.text[sc.pos:sc.pos+8]!r}", sc.pos)
        return sc.ring.var(name)
    raise PolyParseError("term expected", sc.pos)
