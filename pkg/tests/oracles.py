"""Independent brute-force oracles used by the test suite.

Everything here avoids the Groebner path on purpose: graded pieces are
enumerated as explicit monomial bases and all ranks come from Gaussian
elimination over the exact field.  Tor modules are read off the Koszul
complex of the variables, degree by degree.
"""

from itertools import combinations

from regulus.ring import Polynomial


def monomials_of_degree(ring, d):
    """All exponent tuples of weighted degree d (weights all positive)."""
    weights = ring.weights
    n = ring.nvars
    out = []

    def rec(i, rem, acc):
        if i == n - 1:
            w = weights[i]
            if rem % w == 0:
                out.append(tuple(acc + [rem // w]))
            return
        w = weights[i]
        e = 0
        while e * w <= rem:
            rec(i + 1, rem - e * w, acc + [e])
            e += 1

    if d < 0:
        return []
    rec(0, d, [])
    return out


def rank_of(rows, field):
    """Row rank by Gaussian elimination over the exact field."""
    mat = [list(r) for r in rows if any(not field.is_zero(c) for c in r)]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    while mat and col < ncols:
        piv = None
        for i in range(rank, len(mat)):
            if not field.is_zero(mat[i][col]):
                piv = i
                break
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = field.inv(mat[rank][col])
        mat[rank] = [field.mul(c, inv) for c in mat[rank]]
        for i in range(len(mat)):
            if i != rank and not field.is_zero(mat[i][col]):
                factor = mat[i][col]
                mat[i] = [field.sub(a, field.mul(factor, b))
                          for a, b in zip(mat[i], mat[rank])]
        rank += 1
        col += 1
    return rank


def graded_piece_dim_of_ideal(gens, d):
    """dim_k I_d for an ideal with the given homogeneous generators."""
    if not gens:
        return 0
    ring = gens[0].ring
    basis = monomials_of_degree(ring, d)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens:
        gd = g.multidegree()
        for m in monomials_of_degree(ring, d - gd):
            row = [ring.field.zero] * len(basis)
            for e, c in g.terms.items():
                e2 = tuple(a + b for a, b in zip(e, m))
                row[index[e2]] = ring.field.add(row[index[e2]], c)
            rows.append(row)
    if not rows:
        return 0
    return rank_of(rows, ring.field)


def hilbert_function_of_quotient(gens, d):
    """dim_k (S/I)_d by monomial counting and rank."""
    if not gens:
        return 0
    ring = gens[0].ring
    return len(monomials_of_degree(ring, d)) - graded_piece_dim_of_ideal(gens, d)


def monomial_quotient_dimension(ring, exps):
    """Brute-force Krull dimension of S/(monomial ideal) over variable subsets."""
    n = ring.nvars
    supports = [frozenset(i for i, v in enumerate(e) if v) for e in exps]
    if any(not s for s in supports):
        return -1
    best = 0
    for size in range(n, 0, -1):
        for keep in combinations(range(n), size):
            ks = set(keep)
            if all(not s <= ks for s in supports):
                return size
    return best


def koszul_tor_dims(ring, gens, j, mu):
    """dim_k Tor_j(S/I, k)_mu read from the Koszul complex on the variables.

    Tor_j(M, k)_mu = H_j(M ⊗ K(x_1..x_n))_mu with M = S/I; each term of the
    complex is a direct sum of shifted copies of M and the differentials are
    signed multiplications by variables.  Pure linear algebra on graded
    pieces: independent of any Groebner computation.
    """
    n = ring.nvars
    if j < 0 or j > n:
        return 0
    subsets = {q: list(combinations(range(n), q))
               for q in (j - 1, j, j + 1) if 0 <= q <= n}

    def piece_basis(q, d):
        """Basis of (S ⊗ Λ^q)_d: (subset, exponent) pairs."""
        out = []
        for sub in subsets.get(q, []):
            shift = sum(ring.weights[i] for i in sub)
            for e in monomials_of_degree(ring, d - shift):
                out.append((sub, e))
        return out

    # represent M_d as S_d with I_d spanned rows appended; compute ranks of
    # [boundary | I-span] minus rank[I-span]
    def ideal_rows(d, basis_idx):
        rows = []
        for g in gens:
            gd = g.multidegree()
            for m in monomials_of_degree(ring, d - gd):
                row = [ring.field.zero] * len(basis_idx)
                for e, c in g.terms.items():
                    e2 = tuple(a + b for a, b in zip(e, m))
                    row[basis_idx[e2]] = ring.field.add(row[basis_idx[e2]], c)
                rows.append(row)
        return rows

    def boundary_matrix(q, d):
        """Rows: images of (M ⊗ Λ^q)_d basis in (M ⊗ Λ^{q-1})_d ambient S-coords."""
        dom = piece_basis(q, d)
        cod = piece_basis(q - 1, d)
        cod_idx = {b: i for i, b in enumerate(cod)}
        # ambient columns: (subset, monomial) of codomain
        rows = []
        for sub, e in dom:
            row = [ring.field.zero] * len(cod)
            for pos, i in enumerate(sub):
                rest = tuple(x for x in sub if x != i)
                e2 = list(e)
                e2[i] += 1
                key = (rest, tuple(e2))
                sign = ring.field.one if pos % 2 == 0 else ring.field.neg(ring.field.one)
                row[cod_idx[key]] = ring.field.add(row[cod_idx[key]], sign)
            rows.append(row)
        return dom, cod, rows

    # dim H_j = dim ker(d_j) - dim im(d_{j+1}) computed inside M (mod I):
    # rank computations with the ideal rows appended to kill I-multiples.
    dim_term = 0
    # dimension of (M ⊗ Λ^j)_mu = sum over subsets of dim M_{mu - shift}
    for sub in subsets[j]:
        shift = sum(ring.weights[i] for i in sub)
        d = mu - shift
        basis = monomials_of_degree(ring, d)
        if not basis:
            continue
        bidx = {e: i for i, e in enumerate(basis)}
        irows = ideal_rows(d, bidx)
        dim_term += len(basis) - (rank_of(irows, ring.field) if irows else 0)

    def map_rank(q):
        """Rank of d_q on (M ⊗ Λ^q)_mu as a map of M-pieces."""
        if q < 1:
            return 0
        dom, cod, rows = boundary_matrix(q, mu)
        if not dom or not cod:
            return 0
        # columns grouped per codomain basis element; kill I inside each copy
        cod_by_sub = {}
        for idx, (sub, e) in enumerate(cod):
            cod_by_sub.setdefault(sub, []).append(idx)
        # build the I-span rows in codomain coordinates
        irows = []
        for sub in sorted(cod_by_sub):
            shift = sum(ring.weights[i] for i in sub)
            d = mu - shift
            basis = monomials_of_degree(ring, d)
            bidx = {e: i for i, e in enumerate(basis)}
            local = ideal_rows(d, bidx)
            offset = {e: cod.index((sub, e)) for e in basis}
            for lr in local:
                row = [ring.field.zero] * len(cod)
                for e, i in bidx.items():
                    row[offset[e]] = lr[i]
                irows.append(row)
        base_rank = rank_of(irows, ring.field) if irows else 0
        return rank_of(rows + irows, ring.field) - base_rank

    rank_dj = map_rank(j)
    rank_dj1 = map_rank(j + 1)
    return dim_term - rank_dj - rank_dj1


def betti_number_oracle(ring, gens, j, mu):
    """b_{j,mu} = dim Tor_j(S/I, k)_mu via the Koszul oracle."""
    return koszul_tor_dims(ring, gens, j, mu)
