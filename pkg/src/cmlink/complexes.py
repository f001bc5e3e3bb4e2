"""Chain complexes of free modules.

Koszul complexes by contraction, free resolutions by iterated syzygies with
unit-entry pruning, degreewise exactness verification, and the
Cohen-Macaulay test (resolution length against codimension).
"""

from __future__ import annotations

import json
from itertools import combinations

from .groebner import GREVLEX, Ideal, ideal_codim
from .modules import (
    NotInImageError,
    PolyMatrix,
    lift_through,
    syzygy_matrix,
)
from .poly import Polynomial


class ComplexError(ValueError):
    pass


class ChainComplex:
    """Differentials d_1, ..., d_l with cols(d_k) == rows(d_{k+1}).

    Module ranks are rows(d_1), cols(d_1), cols(d_2), ...
    """

    def __init__(self, differentials, check_composition=True):
        diffs = list(differentials)
        if not diffs:
            raise ComplexError("a complex needs at least one differential")
        ring = diffs[0].ring
        for a, b in zip(diffs, diffs[1:]):
            if a.ncols != b.nrows:
                raise ComplexError("differential shapes do not chain")
            if check_composition and not (a * b).is_zero():
                raise ComplexError("d_k * d_{k+1} != 0")
        self.differentials = diffs
        self.ring = ring

    @property
    def length(self):
        return len(self.differentials)

    def ranks(self):
        out = [self.differentials[0].nrows]
        for d in self.differentials:
            out.append(d.ncols)
        return out

    def to_json(self):
        return json.dumps(
            {
                "ring": self.ring.header(),
                "ranks": self.ranks(),
                "differentials": [d.to_text() for d in self.differentials],
            },
            indent=2,
        )

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks()})"


def koszul_subsets(p, k):
    """Size-k subsets of {0,...,p-1} in lexicographic order."""
    return list(combinations(range(p), k))


class KoszulComplex(ChainComplex):
    """Koszul complex of a tuple f: differentials by contraction with sum f_i e_i*."""

    def __init__(self, tuple_f):
        f = list(tuple_f)
        if not f:
            raise ComplexError("empty tuple")
        ring = f[0].ring
        if any(g.is_zero() for g in f):
            raise ComplexError("zero entry in the tuple")
        p = len(f)
        diffs = []
        for k in range(1, p + 1):
            rows_idx = koszul_subsets(p, k - 1)
            cols_idx = koszul_subsets(p, k)
            row_pos = {s: i for i, s in enumerate(rows_idx)}
            mat = [[ring.zero() for _ in cols_idx] for _ in rows_idx]
            for cj, subset in enumerate(cols_idx):
                for j, elem in enumerate(subset):
                    rest = subset[:j] + subset[j + 1 :]
                    sign = -1 if j % 2 else 1
                    entry = f[elem] if sign > 0 else -f[elem]
                    mat[row_pos[rest]][cj] = mat[row_pos[rest]][cj] + entry
            diffs.append(PolyMatrix(mat, ring))
        super().__init__(diffs, check_composition=True)
        self.tuple_f = f

    @property
    def p(self):
        return len(self.tuple_f)


def koszul_complex(f):
    return KoszulComplex(f)


class FreeResolution(ChainComplex):
    def __init__(self, differentials, ideal, minimal):
        super().__init__(differentials, check_composition=True)
        if self.differentials[0].nrows != 1:
            raise ComplexError("rank of the augmentation module must be 1")
        self.ideal = ideal
        self.minimal = minimal


def free_resolution(J, minimalize=True, order=GREVLEX):
    """Free resolution of the cyclic quotient by J, via iterated syzygies.

    d_1 is the row of generators; each next differential generates the kernel
    of the previous one.  With `minimalize`, constant (hence invertible)
    entries are pivoted away until no differential entry has a nonzero
    constant term.  Length is capped at the variable count.
    """
    ring = J.ring
    if J.is_zero():
        raise ComplexError("zero ideal has no finite free resolution of this form")
    if J.is_unit(order):
        raise ComplexError("unit ideal is not a proper ideal")
    d1 = PolyMatrix([list(J.gens)], ring)
    diffs = [d1]
    cap = ring.nvars + 1
    while True:
        syz = syzygy_matrix(diffs[-1], order)
        if syz.ncols == 0:
            break
        diffs.append(syz)
        if len(diffs) > cap:
            raise ComplexError(
                "resolution exceeded the Hilbert syzygy bound; this is a bug"
            )
    if minimalize:
        diffs = _prune_units(diffs)
    minimal = all(
        p.constant_term_at_origin() == 0 for d in diffs for p in d.entries()
    )
    return FreeResolution(diffs, J, minimal)


def _prune_units(diffs):
    """Remove rank-trivial summands by pivoting on constant entries.

    Pivoting is restricted to entries that are nonzero constants (units of the
    polynomial ring); row/column operations stay exact and the complex
    property is preserved.
    """
    ring = diffs[0].ring
    mats = [[list(r) for r in d.rows] for d in diffs]

    def find_pivot():
        for k, m in enumerate(mats):
            for i, row in enumerate(m):
                for j, p in enumerate(row):
                    if not p.is_zero() and p.is_constant():
                        return k, i, j
        return None

    while True:
        hit = find_pivot()
        if hit is None:
            break
        k, i, j = hit
        m = mats[k]
        u = m[i][j]
        uinv = ring.coeff_div(ring.coeff(1), u.constant_term())
        ncols = len(m[0])
        nrows = len(m)
        # column operations clearing row i (basis change in source module)
        for j2 in range(ncols):
            if j2 != j and not m[i][j2].is_zero():
                factor = m[i][j2].scale(uinv)
                for r in range(nrows):
                    m[r][j2] = m[r][j2] - m[r][j] * factor
                if k + 1 < len(mats):
                    nxt = mats[k + 1]
                    for c in range(len(nxt[0]) if nxt else 0):
                        nxt[j][c] = nxt[j][c] + factor * nxt[j2][c]
        # row operations clearing column j (basis change in target module)
        for i2 in range(nrows):
            if i2 != i and not m[i2][j].is_zero():
                factor = m[i2][j].scale(uinv)
                for c in range(ncols):
                    m[i2][c] = m[i2][c] - factor * m[i][c]
                if k > 0:
                    prev = mats[k - 1]
                    for r in range(len(prev)):
                        prev[r][i] = prev[r][i] + prev[r][i2] * factor
        # delete row i and column j; shrink neighbours accordingly
        mats[k] = [
            [p for j2, p in enumerate(row) if j2 != j]
            for i2, row in enumerate(m)
            if i2 != i
        ]
        if k + 1 < len(mats):
            mats[k + 1] = [row for r, row in enumerate(mats[k + 1]) if r != j]
        if k > 0:
            mats[k - 1] = [
                [p for c, p in enumerate(row) if c != i] for row in mats[k - 1]
            ]
        # drop empty trailing differentials
        while mats and (not mats[-1] or not mats[-1][0]):
            mats.pop()
    out = []
    for m in mats:
        if not m or not m[0]:
            break
        out.append(PolyMatrix(m, ring))
    return out


class ExactnessReport:
    def __init__(self, failures):
        self.failures = failures  # list of (degree, reason, witness)

    @property
    def exact(self):
        return not self.failures

    def to_json(self):
        return json.dumps(
            {
                "exact": self.exact,
                "failures": [
                    {
                        "degree": deg,
                        "reason": reason,
                        "witness": [str(p) for p in witness],
                    }
                    for deg, reason, witness in self.failures
                ],
            },
            indent=2,
        )


def verify_exactness(C, order=GREVLEX):
    """Check ker(d_k) == im(d_{k+1}) for k = 1..length by double inclusion.

    At the top degree the next image is zero, so the last differential must be
    injective.  Failures are report content, not exceptions.
    """
    failures = []
    diffs = C.differentials
    for k in range(1, len(diffs) + 1):
        dk = diffs[k - 1]
        nxt = diffs[k] if k < len(diffs) else None
        # im(d_{k+1}) subset of ker(d_k)
        if nxt is not None:
            prod = dk * nxt
            if not prod.is_zero():
                col = next(j for j in range(prod.ncols) if not all(p.is_zero() for p in prod.column(j)))
                failures.append((k, "composition d_k d_{k+1} != 0", nxt.column(col)))
                continue
        # ker(d_k) subset of im(d_{k+1})
        ker = syzygy_matrix(dk, order)
        for j in range(ker.ncols):
            v = ker.column(j)
            if nxt is None:
                failures.append((k, "kernel of the last differential is nonzero", v))
                break
            try:
                lift_through(v, nxt, order)
            except NotInImageError:
                failures.append((k, "kernel vector not in the image", v))
                break
    return ExactnessReport(failures)


def is_cohen_macaulay(J, order=GREVLEX):
    """(flag, codim, minimal resolution length)."""
    codim = ideal_codim(J, order)
    res = free_resolution(J, minimalize=True, order=order)
    return res.length == codim, codim, res.length
