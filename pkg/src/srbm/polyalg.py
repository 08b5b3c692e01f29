"""Exact arithmetic substrate: rationals, polynomials in d, reduced rational
functions of d, and moment polynomials in t over that coefficient field.

Everything in this module is exact; no floats enter anywhere.  The canonical
form for moment coefficients is a reduced rational function of d with monic
denominator.  Expressions in the display variables c_m are only an ingest /
output syntax (see ``substitute_c_form`` and ``to_c_form``): the c-form is not
unique, the rational-function form is.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "DomainError",
    "ParseError",
    "InvariantError",
    "PolyD",
    "RatFunc",
    "MomentPoly",
    "c_value",
    "substitute_c_form",
    "eval_moment",
    "limit_d_infinity",
    "to_c_form",
]


class DomainError(ValueError):
    """Argument outside the operation's domain."""


class ParseError(ValueError):
    """Malformed c-form expression."""


class InvariantError(RuntimeError):
    """Internal invariant breach (data corruption, not user error)."""


# ---------------------------------------------------------------------------
# polynomials in d
# ---------------------------------------------------------------------------

class PolyD:
    """Dense univariate polynomial in the symbol d with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((Fraction(c),))

    @classmethod
    def d_power(cls, k):
        return cls((0,) * k + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyD(out)

    def __neg__(self):
        return PolyD(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Fraction) or isinstance(other, int):
            return PolyD(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyD()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return PolyD(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyD(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= c * oc
        return PolyD(quot), PolyD(rem)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == 1:
            return self
        return PolyD(tuple(c / lead for c in self.coeffs))

    @staticmethod
    def gcd(a, b):
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def evaluate(self, dval):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * dval + c
        return acc

    def __eq__(self, other):
        return isinstance(other, PolyD) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*d" if c != 1 else "d")
            else:
                parts.append(f"{c}*d^{i}" if c != 1 else f"d^{i}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# reduced rational functions of d
# ---------------------------------------------------------------------------

class RatFunc:
    """Rational function of d, stored reduced with monic denominator.

    This is the unique normal form used for every moment coefficient; equality
    and hashing are decidable and canonical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, PolyD):
            num = PolyD.const(num)
        if den is None:
            den = PolyD.const(1)
        elif not isinstance(den, PolyD):
            den = PolyD.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = PolyD()
            self.den = PolyD.const(1)
            return
        g = PolyD.gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(PolyD.const(c))

    @classmethod
    def d_power(cls, k):
        """d**k for any integer k (negative powers allowed)."""
        if k >= 0:
            return cls(PolyD.d_power(k))
        return cls(PolyD.const(1), PolyD.d_power(-k))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, k):
        if k < 0:
            return RatFunc.const(1) / self ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, dval):
        dval = Fraction(dval)
        den = self.den.evaluate(dval)
        if den == 0:
            raise InvariantError(f"denominator vanishes at d={dval}")
        return self.num.evaluate(dval) / den

    def limit_d_infinity(self):
        """Limit as d -> infinity; requires deg(num) <= deg(den)."""
        dn, dd = self.num.degree, self.den.degree
        if self.is_zero():
            return Fraction(0)
        if dn > dd:
            raise InvariantError("rational function diverges as d -> infinity")
        if dn < dd:
            return Fraction(0)
        return self.num.leading() / self.den.leading()

    def d_valuation_is_zero(self):
        """True iff neither numerator nor denominator vanish at d=0."""
        if self.is_zero():
            return True
        return self.num.coeffs[0] != 0 and self.den.coeffs[0] != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == PolyD.const(1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def to_json(self):
        return {"num": [str(c) for c in self.num.coeffs],
                "den": [str(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(PolyD([Fraction(c) for c in obj["num"]]),
                   PolyD([Fraction(c) for c in obj["den"]]))


# ---------------------------------------------------------------------------
# c_m display coefficients
# ---------------------------------------------------------------------------

def _double_factorial_odd(m):
    """(2m-1)!! as an integer."""
    return math.factorial(2 * m) // (2 ** m * math.factorial(m))


@lru_cache(maxsize=None)
def _c_value_symbolic(m):
    den = PolyD.const(1)
    for j in range(1, m):
        den = den * PolyD((2 * j, 1))  # (d + 2j)
    return RatFunc(PolyD.const(_double_factorial_odd(m)), den)


def c_value(m, d=None):
    """c_m = (2m-1)!! / ((d+2)(d+4)...(d+2m-2)); c_1 = 1.

    With ``d=None`` returns the symbolic RatFunc, otherwise the exact
    Fraction at the given rational d.
    """
    if m < 1:
        raise DomainError(f"c_value requires m >= 1, got {m}")
    sym = _c_value_symbolic(m)
    if d is None:
        return sym
    return sym.evaluate(Fraction(d))


@lru_cache(maxsize=None)
def c_over_d(m):
    """c_m / d as a RatFunc; the weight of one vector average of degree 2m."""
    return _c_value_symbolic(m) / RatFunc.d_power(1)


# ---------------------------------------------------------------------------
# moment polynomials in t
# ---------------------------------------------------------------------------

class MomentPoly:
    """Polynomial in t with RatFunc-of-d coefficients; zero terms dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not isinstance(v, RatFunc):
                    v = RatFunc.const(v)
                if not v.is_zero():
                    self.terms[k] = v

    @classmethod
    def one(cls):
        return cls({0: RatFunc.const(1)})

    @classmethod
    def t_power(cls, k, coeff=1):
        return cls({k: coeff if isinstance(coeff, RatFunc) else RatFunc.const(coeff)})

    def coeff(self, k):
        return self.terms.get(k, RatFunc.const(0))

    def degree(self):
        return max(self.terms) if self.terms else -1

    def is_t_free(self):
        return all(k == 0 for k in self.terms)

    def __add__(self, other):
        if not isinstance(other, MomentPoly):
            other = MomentPoly({0: RatFunc.const(other)})
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, RatFunc.const(0)) + v
        return MomentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MomentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MomentPoly):
            other = MomentPoly({0: RatFunc.const(other)})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MomentPoly):
            other = MomentPoly({0: RatFunc.const(other)})
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = ka + kb
                p = va * vb
                out[k] = out.get(k, RatFunc.const(0)) + p
        return MomentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MomentPoly):
            if not other.is_t_free():
                raise ParseError("division only by t-free expressions")
            other = other.coeff(0)
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return MomentPoly({k: v / other for k, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ParseError("negative powers are not polynomial")
        out = MomentPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, MomentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            if k == 0:
                parts.append(f"{v!r}")
            else:
                tk = "t" if k == 1 else f"t^{k}"
                parts.append(f"({v!r})*{tk}")
        return " + ".join(parts)

    def to_json(self):
        return [{"t_power": k, **self.terms[k].to_json()}
                for k in sorted(self.terms)]

    @classmethod
    def from_json(cls, arr):
        return cls({e["t_power"]: RatFunc.from_json(e) for e in arr})


def eval_moment(p, t, d):
    """Exact evaluation of a MomentPoly at rational t and d >= 1."""
    d = Fraction(d)
    if d < 1:
        raise DomainError(f"eval_moment requires d >= 1, got {d}")
    t = Fraction(t)
    return sum((v.evaluate(d) * t ** k for k, v in p.terms.items()), Fraction(0))


def limit_d_infinity(p):
    """d -> infinity limit of a MomentPoly: dict of t-power -> Fraction."""
    out = {}
    for k, v in p.terms.items():
        lim = v.limit_d_infinity()
        if lim:
            out[k] = lim
    return out


# ---------------------------------------------------------------------------
# c-form expression parsing (ingest syntax for the published tables)
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(c_?\d+|t)|(\*\*|[()+\-*/^]))")


def _tokenize(expr):
    pos = 0
    tokens = []
    while pos < len(expr):
        m = _TOKEN_RE.match(expr, pos)
        if not m or m.end() == pos:
            rest = expr[pos:].strip()
            if not rest:
                break
            raise ParseError(f"unexpected input at {rest[:20]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name.replace("_", "")))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse_expr(self):
        val = self.parse_term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.next()
            rhs = self.parse_term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def parse_term(self):
        val = self.parse_factor()
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok in ("*", "/"):
                self.next()
                rhs = self.parse_factor()
                val = val * rhs if tok == "*" else val / rhs
            elif kind in ("num", "name") or (kind == "op" and tok == "("):
                val = val * self.parse_factor()  # juxtaposition
            else:
                return val

    def parse_factor(self):
        kind, tok = self.peek()
        if kind == "op" and tok == "-":
            self.next()
            return -self.parse_factor()
        val = self.parse_primary()
        if self.peek() == ("op", "^"):
            self.next()
            kind, e = self.next()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            val = val ** e
        return val

    def parse_primary(self):
        kind, tok = self.next()
        if kind == "num":
            return MomentPoly({0: RatFunc.const(tok)})
        if kind == "name":
            if tok == "t":
                return MomentPoly.t_power(1)
            m = int(tok[1:])
            if m < 1:
                raise ParseError(f"unknown symbol {tok!r}")
            return MomentPoly({0: c_value(m)})
        if kind == "op" and tok == "(":
            val = self.parse_expr()
            if self.next() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return val
        raise ParseError(f"unexpected token {tok!r}")


def substitute_c_form(expression):
    """Parse a formal polynomial in t and c_2..c_k, substituting each c_m by
    its exact rational function of d; returns the canonical MomentPoly."""
    parser = _Parser(_tokenize(expression))
    val = parser.parse_expr()
    if parser.i != len(parser.tokens):
        raise ParseError("trailing input in expression")
    return val


# ---------------------------------------------------------------------------
# best-effort c-form display (explicitly non-canonical)
# ---------------------------------------------------------------------------

def _c_monomials(max_weight, max_m=6):
    """Multisets of parts in 2..max_m with sum of (m-1) bounded by max_weight."""
    out = [()]
    def rec(prefix, weight, start):
        for m in range(start, max_m + 1):
            w = weight + m - 1
            if w > max_weight:
                break
            mono = prefix + (m,)
            out.append(mono)
            rec(mono, w, m)
    rec((), 0, 2)
    return out


def _solve_exact(rows, rhs):
    """Gaussian elimination over Fraction; returns solution or None."""
    n, m = len(rows), len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if aug[r][m] != 0:
            return None
    sol = [Fraction(0)] * m
    for r, col in enumerate(pivots):
        sol[col] = aug[r][m]
    return sol


def _ratfunc_to_c_form(f):
    basis_monos = _c_monomials(f.den.degree + 2)
    basis = []
    for mono in basis_monos:
        v = RatFunc.const(1)
        for m in mono:
            v = v * c_value(m)
        basis.append(v)
    samples = [Fraction(k) for k in range(1, len(basis) + 4)]
    rows = [[b.evaluate(s) for b in basis] for s in samples]
    rhs = [f.evaluate(s) for s in samples]
    sol = _solve_exact(rows, rhs)
    if sol is None:
        return None
    check = RatFunc.const(0)
    for q, b in zip(sol, basis):
        if q:
            check = check + RatFunc.const(q) * b
    if check != f:
        return None
    parts = []
    for q, mono in zip(sol, basis_monos):
        if not q:
            continue
        sym = "*".join(f"c{m}" for m in mono)
        if not mono:
            parts.append(str(q))
        elif q == 1:
            parts.append(sym)
        else:
            parts.append(f"{q}*{sym}")
    return " + ".join(parts) if parts else "0"


def to_c_form(p):
    """Best-effort display of a MomentPoly in terms of t and c_m symbols.

    The c-form is non-unique; this is output syntax only, never used for
    equality.  Returns None when a coefficient has no c-monomial expansion.
    """
    parts = []
    for k in sorted(p.terms):
        cf = _ratfunc_to_c_form(p.terms[k])
        if cf is None:
            return None
        if k == 0:
            parts.append(cf)
        else:
            tk = "t" if k == 1 else f"t^{k}"
            parts.append(tk if cf == "1" else f"({cf}) {tk}")
    return " + ".join(parts) if parts else "0"
