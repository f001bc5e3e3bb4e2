"""Free modules over the polynomial ring.

Matrices of polynomials, module Groebner bases under a position-over-term
order, Schreyer-style syzygy computation, and exact lifting of a vector
through the image of a matrix.  Vectors are lists of polynomials; internally
module terms are keyed by (position, exponent tuple).
"""

from __future__ import annotations

from itertools import combinations

from .poly import (
    GREVLEX,
    Polynomial,
    RingMismatchError,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


class NotInImageError(ValueError):
    """The target vector is not in the image of the matrix."""

    def __init__(self, remainder):
        self.remainder = remainder
        super().__init__(
            "vector is not in the image; nonzero remainder "
            + str([str(p) for p in remainder])
        )


class PolyMatrix:
    """Rectangular matrix of polynomials over a shared ring."""

    def __init__(self, rows, ring=None):
        rows = [list(r) for r in rows]
        if ring is None:
            if not rows or not rows[0]:
                raise ValueError("need a ring for an empty matrix")
            ring = rows[0][0].ring
        for r in rows:
            for p in r:
                if p.ring != ring:
                    raise RingMismatchError("matrix entries in different rings")
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix must be rectangular")
        self.rows = rows
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zero(cls, ring, nrows, ncols):
        return cls([[ring.zero()] * ncols for _ in range(nrows)], ring)

    @classmethod
    def identity(cls, ring, n):
        return cls(
            [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)],
            ring,
        )

    @classmethod
    def from_strings(cls, ring, rows):
        return cls([[ring.poly(t) for t in r] for r in rows], ring)

    @classmethod
    def from_columns(cls, columns, ring=None):
        if ring is None:
            ring = columns[0][0].ring
        nrows = len(columns[0]) if columns else 0
        return cls(
            [[columns[j][i] for j in range(len(columns))] for i in range(nrows)], ring
        )

    def column(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def entries(self):
        return [p for r in self.rows for p in r]

    def is_zero(self):
        return all(p.is_zero() for p in self.entries())

    def transpose(self):
        return PolyMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.ring,
        )

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            return PolyMatrix(
                [
                    [
                        sum(
                            (self.rows[i][k] * other.rows[k][j] for k in range(self.ncols)),
                            self.ring.zero(),
                        )
                        for j in range(other.ncols)
                    ]
                    for i in range(self.nrows)
                ],
                self.ring,
            )
        # vector (list of polynomials)
        if len(other) != self.ncols:
            raise ValueError("vector length must equal the column count")
        return [
            sum((self.rows[i][k] * other[k] for k in range(self.ncols)), self.ring.zero())
            for i in range(self.nrows)
        ]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.nrows)
                for j in range(self.ncols)
            )
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(p) for p in r) for r in self.rows)
        return f"PolyMatrix[{body}]"

    def to_text(self):
        """`matrix r c` header plus one row per line, entries ';'-separated."""
        lines = [f"matrix {self.nrows} {self.ncols}"]
        for r in self.rows:
            lines.append("; ".join(str(p) for p in r))
        return "\n".join(lines)


def det_bareiss(M):
    """Exact determinant of a square PolyMatrix by fraction-free elimination."""
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    from .groebner import divide_exact

    n = M.nrows
    ring = M.ring
    a = [[M.rows[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return ring.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev) if not num.is_zero() else ring.zero()
            a[i][k] = ring.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


# -- module term order and division -------------------------------------------


class ModuleOrder:
    """Position-over-term order: lower position index wins, then the ring order."""

    def __init__(self, order=GREVLEX):
        self.order = order

    def key(self, pos, exps):
        return (-pos, self.order.key(exps))


def _vector_terms(vec):
    for pos, p in enumerate(vec):
        for exps, c in p.terms.items():
            yield pos, exps, c


def _leading(vec, morder):
    best = None
    for pos, exps, c in _vector_terms(vec):
        k = morder.key(pos, exps)
        if best is None or k > best[0]:
            best = (k, pos, exps, c)
    if best is None:
        raise ValueError("zero vector has no leading term")
    return best[1], best[2], best[3]


def _vec_is_zero(vec):
    return all(p.is_zero() for p in vec)


def _vec_sub_term(vec, w, pos_shift_unused, t_exps, t_coeff):
    """vec - (t_coeff * x^t_exps) * w, componentwise."""
    return [
        p - q.term_mul(t_exps, t_coeff) if not q.is_zero() else p
        for p, q in zip(vec, w)
    ]


def _vec_scale(vec, c):
    return [p.scale(c) for p in vec]


def module_normal_form(vec, basis, morder):
    """Divide a vector by module basis vectors; returns (quotients, remainder)."""
    ring = vec[0].ring
    leads = [_leading(w, morder) for w in basis]
    quotients = [ring.zero() for _ in basis]
    remainder = [ring.zero() for _ in vec]
    work = [Polynomial(ring, dict(p.terms)) for p in vec]
    while not _vec_is_zero(work):
        pos, exps, coeff = _leading(work, morder)
        hit = False
        for i, (lpos, lexps, lcoeff) in enumerate(leads):
            if lpos == pos and monomial_divides(lexps, exps):
                t_exps = monomial_div(exps, lexps)
                t_coeff = ring.coeff_div(coeff, lcoeff)
                quotients[i] = quotients[i] + Polynomial(ring, {t_exps: t_coeff})
                work = _vec_sub_term(work, basis[i], None, t_exps, t_coeff)
                hit = True
                break
        if not hit:
            remainder[pos] = remainder[pos] + Polynomial(ring, {exps: coeff})
            newterms = dict(work[pos].terms)
            del newterms[exps]
            work[pos] = Polynomial(ring, newterms)
    return quotients, remainder


def _vec_monic(vec, morder):
    ring = vec[0].ring
    _, _, lc = _leading(vec, morder)
    return _vec_scale(vec, ring.coeff_div(ring.coeff(1), lc))


def module_groebner(columns, morder=None, order=GREVLEX):
    """Module Groebner basis of the given vectors, with representations.

    Returns (basis, reps) where each basis vector equals
    sum(reps[k][j] * columns[j]).
    """
    if morder is None:
        morder = ModuleOrder(order)
    ring = columns[0][0].ring
    ncols = len(columns)
    basis = []
    reps = []
    for j, col in enumerate(columns):
        if _vec_is_zero(col):
            continue
        _, _, lc = _leading(col, morder)
        inv = ring.coeff_div(ring.coeff(1), lc)
        basis.append(_vec_scale(col, inv))
        rep = [ring.zero()] * ncols
        rep[j] = ring.constant(inv)
        reps.append(rep)

    def pair_key(i, j):
        pi, ei, _ = _leading(basis[i], morder)
        pj, ej, _ = _leading(basis[j], morder)
        lcm = monomial_lcm(ei, ej)
        return (sum(lcm), lcm, i, j)

    pairs = {
        (i, j)
        for i, j in combinations(range(len(basis)), 2)
        if _leading(basis[i], morder)[0] == _leading(basis[j], morder)[0]
    }
    while pairs:
        i, j = min(pairs, key=lambda p: pair_key(*p))
        pairs.discard((i, j))
        svec, srep = _module_spair(basis, reps, i, j, morder, ring)
        q, rem = module_normal_form(svec, basis, morder)
        if _vec_is_zero(rem):
            continue
        rrep = list(srep)
        for k, qk in enumerate(q):
            if not qk.is_zero():
                rrep = [a - qk * b for a, b in zip(rrep, reps[k])]
        _, _, lc = _leading(rem, morder)
        inv = ring.coeff_div(ring.coeff(1), lc)
        basis.append(_vec_scale(rem, inv))
        reps.append([p.scale(inv) for p in rrep])
        knew = len(basis) - 1
        pnew, _, _ = _leading(basis[knew], morder)
        pairs.update(
            (m, knew)
            for m in range(knew)
            if _leading(basis[m], morder)[0] == pnew
        )
    return basis, reps


def _module_spair(basis, reps, i, j, morder, ring):
    """S-vector of basis[i], basis[j] (same leading position) and its rep."""
    pi, ei, ci = _leading(basis[i], morder)
    pj, ej, cj = _leading(basis[j], morder)
    assert pi == pj
    lcm = monomial_lcm(ei, ej)
    ti = monomial_div(lcm, ei)
    tj = monomial_div(lcm, ej)
    mi = Polynomial(ring, {ti: ring.coeff_div(ring.coeff(1), ci)})
    mj = Polynomial(ring, {tj: ring.coeff_div(ring.coeff(1), cj)})
    svec = [mi * a - mj * b for a, b in zip(basis[i], basis[j])]
    srep = [mi * a - mj * b for a, b in zip(reps[i], reps[j])]
    return svec, srep


def syzygy_matrix(M, order=GREVLEX):
    """Matrix whose columns generate the kernel of M (as column combinations).

    Schreyer's construction: syzygies of the module GB from all same-position
    S-pair reductions, mapped back through the GB representations, together
    with the columns of I - P*Q expressing the redundancy of the input
    columns.  Zero and duplicate columns are dropped.
    """
    if M.is_zero():
        return PolyMatrix.identity(M.ring, M.ncols)
    ring = M.ring
    morder = ModuleOrder(order)
    cols = M.columns()
    basis, reps = module_groebner(cols, morder)
    s = len(basis)
    m = len(cols)

    syz_cols = []
    # Schreyer: every same-position S-pair of the final GB reduces to zero
    for i, j in combinations(range(s), 2):
        pi, _, _ = _leading(basis[i], morder)
        pj, _, _ = _leading(basis[j], morder)
        if pi != pj:
            continue
        svec, srep = _module_spair(basis, reps, i, j, morder, ring)
        q, rem = module_normal_form(svec, basis, morder)
        if not _vec_is_zero(rem):
            raise AssertionError("S-pair of a Groebner basis failed to reduce to zero")
        syz = list(srep)
        for k, qk in enumerate(q):
            if not qk.is_zero():
                syz = [a - qk * b for a, b in zip(syz, reps[k])]
        syz_cols.append(syz)

    # columns of I - P*Q: each input column re-expressed through the GB
    for j, col in enumerate(cols):
        if _vec_is_zero(col):
            unit = [ring.zero()] * m
            unit[j] = ring.one()
            syz_cols.append(unit)
            continue
        q, rem = module_normal_form(col, basis, morder)
        if not _vec_is_zero(rem):
            raise AssertionError("input column failed to reduce against its own GB")
        syz = [ring.zero()] * m
        syz[j] = ring.one()
        for k, qk in enumerate(q):
            if not qk.is_zero():
                syz = [a - qk * b for a, b in zip(syz, reps[k])]
        syz_cols.append(syz)

    # drop zero columns and duplicates, deterministically
    seen = []
    kept = []
    for col in syz_cols:
        if _vec_is_zero(col):
            continue
        key = tuple(str(p) for p in col)
        if key in seen:
            continue
        seen.append(key)
        kept.append(col)
    kept = prune_redundant_columns(kept, morder)
    if not kept:
        return PolyMatrix.zero(ring, M.ncols, 0)
    return PolyMatrix.from_columns(kept, ring)


def prune_redundant_columns(columns, morder=None, order=GREVLEX):
    """Drop columns lying in the submodule generated by the remaining ones."""
    if morder is None:
        morder = ModuleOrder(order)
    cols = [c for c in columns if not _vec_is_zero(c)]
    idx = len(cols) - 1
    while idx >= 0 and len(cols) > 1:
        others = cols[:idx] + cols[idx + 1 :]
        basis, _ = module_groebner(others, morder)
        _, rem = module_normal_form(cols[idx], basis, morder)
        if _vec_is_zero(rem):
            cols = others
            idx = min(idx, len(cols)) - 1
        else:
            idx -= 1
    return cols


def lift_through(b, M, order=GREVLEX):
    """Solve M x = b exactly; raises NotInImageError with the remainder if unsolvable."""
    if len(b) != M.nrows:
        raise ValueError("vector length must equal the row count")
    ring = M.ring
    if _vec_is_zero(b):
        return [ring.zero()] * M.ncols
    morder = ModuleOrder(order)
    cols = [c for c in M.columns()]
    basis, reps = module_groebner(cols, morder)
    q, rem = module_normal_form(b, basis, morder)
    if not _vec_is_zero(rem):
        raise NotInImageError(rem)
    x = [ring.zero()] * M.ncols
    for k, qk in enumerate(q):
        if not qk.is_zero():
            x = [a + qk * b2 for a, b2 in zip(x, reps[k])]
    return x
