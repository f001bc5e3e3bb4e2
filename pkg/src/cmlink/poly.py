"""Exact sparse multivariate polynomials.

Coefficients are arbitrary-precision rationals, or elements of the fraction
field QQ(params) when the ring designates a parameter block.  Monomials are
exponent tuples of fixed length; term order objects provide sort keys for
lex, graded-reverse-lex and block-elimination orders.  No floating point
anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import sympy


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class SingularMatrixError(ValueError):
    """Linear change of variables is not invertible."""


class ParseError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class OriginPoleError(ValueError):
    """A fraction-field coefficient has a denominator vanishing at the origin."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class Ring:
    """Polynomial ring QQ[vars] or QQ(params)[vars].

    The parameter block, when present, is inverted: coefficients are reduced
    rational functions in the parameters.
    """

    def __init__(self, variables, params=()):
        variables = tuple(variables)
        params = tuple(params)
        for name in variables + params:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name {name!r}")
        if len(set(variables + params)) != len(variables) + len(params):
            raise ValueError("variable/parameter names must be distinct")
        self.variables = variables
        self.params = params
        self.nvars = len(variables)
        self._param_syms = sympy.symbols(params) if params else ()
        self._zero_exps = (0,) * self.nvars

    @property
    def has_params(self):
        return bool(self.params)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.params == other.params
        )

    def __hash__(self):
        return hash((self.variables, self.params))

    def __repr__(self):
        if self.params:
            return f"Ring({', '.join(self.variables)} over QQ({', '.join(self.params)}))"
        return f"Ring({', '.join(self.variables)} over QQ)"

    def header(self):
        """The `ring ...` header line for text formats."""
        field = f"QQ({','.join(self.params)})" if self.params else "QQ"
        return f"ring {','.join(self.variables)} over {field}"

    # -- coefficient field ---------------------------------------------------

    def coeff(self, value):
        """Canonicalize `value` into the coefficient field."""
        if self.has_params:
            if isinstance(value, Fraction):
                value = sympy.Rational(value.numerator, value.denominator)
            expr = sympy.sympify(value)
            if not (expr.is_Rational or expr.is_polynomial(*self._param_syms)):
                expr = sympy.cancel(expr)
            allowed = set(self._param_syms)
            if not expr.free_symbols <= allowed:
                bad = expr.free_symbols - allowed
                raise ValueError(f"coefficient uses non-parameter symbols {bad}")
            return expr
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, sympy.Expr) and value.is_Rational:
            return Fraction(int(value.p), int(value.q))
        raise ValueError(f"cannot coerce {value!r} into QQ")

    def coeff_is_zero(self, c):
        if self.has_params:
            return c.is_zero is True or sympy.cancel(c) == 0
        return c == 0

    def coeff_add(self, a, b):
        return sympy.cancel(a + b) if self.has_params else a + b

    def coeff_mul(self, a, b):
        return sympy.cancel(a * b) if self.has_params else a * b

    def coeff_div(self, a, b):
        if self.has_params:
            if self.coeff_is_zero(b):
                raise ZeroDivisionError("division by zero coefficient")
            return sympy.cancel(a / b)
        return a / b

    def coeff_neg(self, a):
        return -a

    def coeff_at_origin(self, c):
        """Value of a coefficient at params = 0, as a Fraction."""
        if not self.has_params:
            return c
        num, den = sympy.fraction(sympy.cancel(c))
        subs = {s: 0 for s in self._param_syms}
        d0 = den.subs(subs)
        if d0 == 0:
            raise OriginPoleError(f"denominator of {c} vanishes at the origin")
        val = sympy.Rational(num.subs(subs)) / sympy.Rational(d0)
        return Fraction(int(val.p), int(val.q))

    def coeff_str(self, c):
        if self.has_params:
            return str(c).replace(" ", "")
        return str(c)

    # -- constructors --------------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, value):
        c = self.coeff(value)
        if self.coeff_is_zero(c):
            return Polynomial(self, {})
        return Polynomial(self, {self._zero_exps: c})

    def var(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.coeff(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def param(self, name):
        if name not in self.params:
            raise ValueError(f"{name!r} is not a parameter of {self!r}")
        return self.constant(sympy.Symbol(name))

    def poly(self, text):
        return parse_poly(text, self)


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials; `key` returns a sort key (larger = greater).

    kind is 'lex', 'grevlex' or 'block' (block-elimination order whose first
    block has size `block`, grevlex within each block).  `perm` optionally
    permutes variables before comparison.
    """

    kind: str
    block: int = 0
    perm: tuple = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block order needs a positive first-block size")

    def key(self, exps):
        if self.perm is not None:
            exps = tuple(exps[i] for i in self.perm)
        if self.kind == "lex":
            return exps
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        head, tail = exps[: self.block], exps[self.block :]
        return (_grevlex_key(head), _grevlex_key(tail))

    def greater(self, a, b):
        return self.key(a) > self.key(b)


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def lex_order(perm=None):
    return MonomialOrder("lex", perm=perm)


def grevlex_order(perm=None):
    return MonomialOrder("grevlex", perm=perm)


def block_order(first_block_size, perm=None):
    return MonomialOrder("block", block=first_block_size, perm=perm)


GREVLEX = grevlex_order()
LEX = lex_order()


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """a | b exponentwise."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a):
    return sum(a)


class Polynomial:
    """Immutable sparse polynomial: map from exponent tuple to nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # owned dict; never mutated after construction

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(e == self.ring._zero_exps for e in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring._zero_exps, self.ring.coeff(0))

    def constant_term_at_origin(self):
        """Constant term with parameters also set to zero."""
        return self.ring.coeff_at_origin(self.constant_term())

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coefficient_in(self, i, k):
        """Coefficient of var_i^k, a polynomial free of var_i."""
        out = {}
        for exps, c in self.terms.items():
            if exps[i] == k:
                key = exps[:i] + (0,) + exps[i + 1 :]
                out[key] = c
        return Polynomial(self.ring, out)

    def involves(self, i):
        return any(e[i] for e in self.terms)

    def sorted_terms(self, order=GREVLEX):
        """Terms in descending order."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order=GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def leading_monomial(self, order=GREVLEX):
        return self.leading_term(order)[0]

    def leading_coeff(self, order=GREVLEX):
        return self.leading_term(order)[1]

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        self._check_ring(other)
        ring = self.ring
        out = dict(self.terms)
        for exps, c in other.terms.items():
            if exps in out:
                s = ring.coeff_add(out[exps], c)
                if ring.coeff_is_zero(s):
                    del out[exps]
                else:
                    out[exps] = s
            else:
                out[exps] = c
        return Polynomial(ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_ring(other)
        ring = self.ring
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = monomial_mul(e1, e2)
                prod = ring.coeff_mul(c1, c2)
                if exps in out:
                    s = ring.coeff_add(out[exps], prod)
                    if ring.coeff_is_zero(s):
                        del out[exps]
                    else:
                        out[exps] = s
                elif not ring.coeff_is_zero(prod):
                    out[exps] = prod
        return Polynomial(ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.ring.coeff(c)
        if self.ring.coeff_is_zero(c):
            return self.ring.zero()
        return Polynomial(
            self.ring, {e: self.ring.coeff_mul(v, c) for e, v in self.terms.items()}
        )

    def term_mul(self, exps, c):
        """Multiply by the single term c * x^exps."""
        ring = self.ring
        return Polynomial(
            ring,
            {monomial_mul(e, exps): ring.coeff_mul(v, c) for e, v in self.terms.items()},
        )

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = self.ring.constant(other)
            else:
                return NotImplemented
        if self.ring != other.ring:
            return False
        if not self.ring.has_params:
            return self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self):
        ring = self.ring
        return hash(
            (ring, frozenset((e, ring.coeff_str(c)) for e, c in self.terms.items()))
        )

    # -- substitution --------------------------------------------------------

    def substitute(self, mapping):
        """Substitute var_i -> mapping[i] (a Polynomial) for each key of mapping."""
        ring = self.ring
        for q in mapping.values():
            if q.ring != ring:
                raise RingMismatchError("substitution target in wrong ring")
        powers = {}

        def power(i, e):
            if (i, e) not in powers:
                powers[(i, e)] = mapping[i] ** e
            return powers[(i, e)]

        out = ring.zero()
        for exps, c in self.terms.items():
            residual = list(exps)
            piece = None
            for i in mapping:
                if exps[i]:
                    residual[i] = 0
                    p = power(i, exps[i])
                    piece = p if piece is None else piece * p
            base = Polynomial(ring, {tuple(residual): c})
            out = out + (base if piece is None else base * piece)
        return out

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        pieces = []
        for exps, c in self.sorted_terms(GREVLEX):
            mono = "*".join(
                ring.variables[i] if e == 1 else f"{ring.variables[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            if ring.has_params and not c.is_Rational:
                cs = f"({ring.coeff_str(c)})"
                piece = cs if not mono else f"{cs}*{mono}"
                pieces.append(("+", piece))
                continue
            frac = c if isinstance(c, Fraction) else Fraction(int(c.p), int(c.q))
            sign = "-" if frac < 0 else "+"
            mag = -frac if frac < 0 else frac
            if not mono:
                piece = str(mag)
            elif mag == 1:
                piece = mono
            else:
                piece = f"{mag}*{mono}"
            pieces.append((sign, piece))
        sign0, piece0 = pieces[0]
        text = ("-" if sign0 == "-" else "") + piece0
        for sign, piece in pieces[1:]:
            text += f" {sign} {piece}"
        return text

    def __repr__(self):
        return f"<{self} in {self.ring!r}>"

    # -- sympy bridge --------------------------------------------------------

    def to_sympy(self):
        syms = sympy.symbols(self.ring.variables) if self.ring.variables else ()
        if self.ring.nvars == 1:
            syms = (syms,) if isinstance(syms, sympy.Symbol) else syms
        expr = sympy.Integer(0)
        for exps, c in self.terms.items():
            mono = sympy.Integer(1)
            for s, e in zip(syms, exps):
                if e:
                    mono *= s**e
            cexpr = (
                c
                if self.ring.has_params
                else sympy.Rational(c.numerator, c.denominator)
            )
            expr += cexpr * mono
        return expr

    @classmethod
    def from_sympy(cls, expr, ring):
        """Read a sympy expression whose poly variables occur polynomially."""
        expr = sympy.cancel(sympy.together(expr))
        if not ring.variables:
            return ring.constant(expr)
        syms = sympy.symbols(ring.variables)
        if ring.nvars == 1:
            syms = (syms,) if isinstance(syms, sympy.Symbol) else syms
        num, den = sympy.fraction(expr)
        for s in syms:
            if den.has(s):
                raise ValueError(f"denominator involves ring variable {s}")
        if ring.params:
            p = sympy.Poly(num, *syms)
        else:
            p = sympy.Poly(num, *syms, domain="QQ")
        terms = {}
        for exps, c in p.terms():
            coeff = p.domain.to_sympy(c)
            if den != 1:
                coeff = sympy.cancel(coeff / den)
            coeff = ring.coeff(coeff)
            if not ring.coeff_is_zero(coeff):
                terms[tuple(exps)] = coeff
        return Polynomial(ring, terms)


# -- linear changes of variables ---------------------------------------------


def _mat_det(rows):
    """Exact determinant by fraction-free elimination over QQ."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    sign = 1
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        det *= m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return sign * det


def _mat_inv(rows):
    n = len(rows)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pivval = aug[k][k]
        aug[k] = [v / pivval for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    return tuple(tuple(r[n:]) for r in aug)


class LinearChange:
    """Invertible rational matrix: old var_i = sum_j matrix[i][j] * new var_j."""

    def __init__(self, matrix):
        rows = tuple(tuple(Fraction(v) for v in r) for r in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if _mat_det(rows) == 0:
            raise SingularMatrixError("linear change must be invertible")
        self.matrix = rows
        self.size = n

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def inverse(self):
        return LinearChange(_mat_inv(self.matrix))

    def compose(self, other):
        """Change sending old -> self -> other coordinates (matrix product)."""
        if self.size != other.size:
            raise ValueError("size mismatch")
        n = self.size
        prod = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        return LinearChange(prod)

    def is_identity(self):
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.size)
            for j in range(self.size)
        )

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix

    def __repr__(self):
        return f"LinearChange({self.matrix})"


def apply_linear_change(p, change):
    """Compose p with the linear map: substitute old var_i by its expansion."""
    ring = p.ring
    if change.size != ring.nvars:
        raise ValueError("linear change size must equal the variable count")
    mapping = {}
    for i in range(ring.nvars):
        row = change.matrix[i]
        q = ring.zero()
        for j, v in enumerate(row):
            if v:
                q = q + ring.var(j).scale(v)
        mapping[i] = q
    return p.substitute(mapping)


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])"
)


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if not m.lastgroup == "ws":
            tokens.append((m.lastgroup, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def parse(self):
        p = self.expr()
        kind, lexeme, _, _ = self.peek()
        if kind != "end":
            self.error(f"unexpected token {lexeme!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            q = self.term()
            p = p - q if op == "-" else p + q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[1] == "*":
            self.next()
            p = p * self.factor()
        return p

    def factor(self):
        kind, lexeme, line, col = self.peek()
        if kind == "int":
            self.next()
            num = int(lexeme)
            if self.peek()[1] == "/":
                self.next()
                dkind, dlex, dline, dcol = self.next()
                if dkind != "int":
                    raise ParseError("'/' is only allowed between integer literals", dline, dcol)
                if int(dlex) == 0:
                    raise ParseError("zero denominator", dline, dcol)
                return self.ring.constant(Fraction(num, int(dlex)))
            return self.ring.constant(num)
        if kind == "name":
            self.next()
            if lexeme in self.ring.variables:
                base = self.ring.var(lexeme)
            elif lexeme in self.ring.params:
                base = self.ring.param(lexeme)
            else:
                raise ParseError(f"unknown variable {lexeme!r}", line, col)
            return self.maybe_power(base)
        if lexeme == "(":
            self.next()
            p = self.expr()
            ck, clex, cline, ccol = self.next()
            if clex != ")":
                raise ParseError("expected ')'", cline, ccol)
            return self.maybe_power(p)
        if lexeme == "/":
            raise ParseError("'/' is only allowed between integer literals", line, col)
        self.error(f"unexpected token {lexeme!r}")

    def maybe_power(self, base):
        if self.peek()[1] == "^":
            self.next()
            kind, lexeme, line, col = self.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", line, col)
            return base ** int(lexeme)
        return base


def parse_poly(text, ring):
    """Parse a polynomial expression over `ring`.

    Grammar: sums of products of integer/rational literals, variables,
    parameters, powers and parenthesized subexpressions.  '/' appears only
    in rational literals.
    """
    return _Parser(_tokenize(text), ring).parse()


_RING_HEADER_RE = re.compile(
    r"^\s*ring\s+(?P<vars>[^\s]+)\s+over\s+QQ(\((?P<params>[^)]*)\))?\s*$"
)


def parse_ring_header(line):
    m = _RING_HEADER_RE.match(line)
    if not m:
        raise ParseError(f"bad ring header {line.strip()!r}", 1, 1)
    variables = [v.strip() for v in m.group("vars").split(",") if v.strip()]
    params = m.group("params")
    params = [p.strip() for p in params.split(",") if p.strip()] if params else []
    return Ring(variables, params)


def poly_mul(p, q):
    """Exact product (spec-level alias for `p * q`)."""
    return p * q
