"""Exact scalars, rational functions in q, and sparse exact linear algebra.

All arithmetic is over the rationals (``gmpy2.mpq``).  Nothing in this module
touches floating point.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import DimensionError, ParseError, PoleAtQ, RootOfUnity

Rat = type(mpq())

#: fraction of nonzero entries above which elimination switches to dense rows
DENSE_THRESHOLD = 0.3


_RAT_RE = re.compile(r"[+-]?\d+(/[+-]?\d+)?")


def rat(x) -> Rat:
    """Coerce ints, Fractions, mpq and strings such as ``"7/3"`` to ``mpq``."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not _RAT_RE.fullmatch(s):
            raise ParseError(f"not an exact rational 'a' or 'a/b': {x!r}")
        try:
            return mpq(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an exact rational: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return mpq(x)


def rat_str(x) -> str:
    """Serialize a rational as ``"num/den"`` (denominator always present)."""
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"


def qint(n: int, q) -> Rat:
    """The q-integer ``(q**n - 1)/(q - 1)``, for every integer ``n``.

    At ``q == 1`` this is the continuous extension ``n``.
    """
    q = rat(q)
    if q == 1:
        return mpq(n)
    if q == 0 and n < 0:
        raise ZeroDivisionError("negative power of q = 0")
    return (q**n - 1) / (q - 1)


def qfact(n: int, q) -> Rat:
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    out = mpq(1)
    for k in range(1, n + 1):
        v = qint(k, q)
        if v == 0:
            raise RootOfUnity(f"[{k}]_q vanishes at q = {rat(q)}")
        out *= v
    return out


def check_not_root_of_unity(q, bound: int) -> None:
    """Raise RootOfUnity if some ``[k]_q`` or ``[k]_{1/q}`` with k <= bound is 0."""
    q = rat(q)
    if q == 0:
        raise RootOfUnity("q = 0 is not admissible")
    qfact(bound, q)
    qfact(bound, 1 / q)


# ---------------------------------------------------------------------------
# integer polynomials (coefficient tuples, constant term first)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def poly_neg(a):
    return tuple(-x for x in a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_eval(a, x):
    acc = mpq(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _poly_divmod_q(a, b):
    a = [mpq(x) for x in a]
    quo = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    lead = mpq(b[-1])
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lead
        quo[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a = list(_trim(a))
    return _trim(quo), _trim(a)


def _primitive(a):
    """Scale a rational polynomial to a primitive integer one with positive lead."""
    if not a:
        return ()
    den = 1
    for x in a:
        den = gmpy2.lcm(den, mpq(x).denominator)
    ints = [int(mpq(x) * den) for x in a]
    g = 0
    for x in ints:
        g = gmpy2.gcd(g, x)
    g = int(g)
    if ints[-1] < 0:
        g = -g
    return tuple(x // g for x in ints)


def poly_gcd(a, b):
    """Primitive gcd in Z[q] (positive leading coefficient)."""
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    return _primitive(a)


def poly_exact_div(a, b):
    quo, rem = _poly_divmod_q(a, b)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


def poly_str(a, var="q") -> str:
    terms = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = "".join(f" {sgn} {b}" for sgn, b in terms).strip()
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


class RatFunc:
    """A reduced quotient of integer polynomials in q."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer: Sequence[int] = (), denom: Sequence[int] = (1,)):
        numer, denom = _trim(int(x) for x in numer), _trim(int(x) for x in denom)
        if not denom:
            raise ZeroDivisionError("denominator is identically zero")
        if not numer:
            denom = (1,)
        else:
            g = poly_gcd(numer, denom)
            if g != (1,):
                numer = poly_exact_div(numer, g)
                denom = poly_exact_div(denom, g)
            # content of numer/denom may still share an integer factor
            numer, denom = _normalise_content(numer, denom)
        self.numer = tuple(int(x) for x in numer)
        self.denom = tuple(int(x) for x in denom)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = rat(c)
        return cls((int(c.numerator),), (int(c.denominator),))

    @classmethod
    def q(cls) -> "RatFunc":
        return cls((0, 1))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Rat, Fraction)):
            return RatFunc.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(
            poly_add(poly_mul(self.numer, other.denom), poly_mul(other.numer, self.denom)),
            poly_mul(self.denom, other.denom),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(poly_neg(self.numer), self.denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(poly_mul(self.numer, other.numer), poly_mul(self.denom, other.denom))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.numer:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(poly_mul(self.numer, other.denom), poly_mul(self.denom, other.numer))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.const(1) / (self ** (-k))
        out = RatFunc.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        return hash((self.numer, self.denom))

    def __call__(self, q) -> Rat:
        return eval_ratfunc(self, q)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.denom == (1,):
            return poly_str(self.numer)
        return f"({poly_str(self.numer)})/({poly_str(self.denom)})"


def _normalise_content(numer, denom):
    g = 0
    for x in numer + denom:
        g = gmpy2.gcd(g, int(x))
    g = int(g) or 1
    if denom[-1] < 0:
        g = -g
    return tuple(int(x) // g for x in numer), tuple(int(x) // g for x in denom)


def eval_ratfunc(f: RatFunc, q) -> Rat:
    q = rat(q)
    den = poly_eval(f.denom, q)
    if den == 0:
        raise PoleAtQ(f"{f} has a pole at q = {q}")
    return poly_eval(f.numer, q) / den


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_ratfunc(text: str, var: str = "q") -> RatFunc:
    """Parse strings like ``"q-1"``, ``"(q^2-1)/(q+1)"`` or ``"-1"``."""
    src = str(text).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return RatFunc.const(node.value)
        if isinstance(node, ast.Name) and node.id == var:
            return RatFunc.q()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                    raise ParseError(f"exponent must be an integer literal in {text!r}")
                return left ** (sign * exp.value)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            try:
                return left / right
            except ZeroDivisionError as exc:
                raise ParseError(f"division by zero in {text!r}") from exc
        raise ParseError(f"unsupported syntax in {text!r}")

    return walk(tree)


# ---------------------------------------------------------------------------
# sparse exact matrices


class ExactMatrix:
    """Immutable sparse matrix over Q, stored row-major as ``{row: {col: value}}``.

    Zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.rows, self.cols = int(rows), int(cols)
        data: dict[int, dict[int, Rat]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = rat(v)
            if v:
                data.setdefault(r, {})[c] = v
        self._data = data

    @classmethod
    def _wrap(cls, rows, cols, data) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._data = {r: row for r, row in data.items() if row}
        return m

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._wrap(n, n, {i: {i: mpq(1)} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._wrap(rows, cols, {})

    @classmethod
    def scalar(cls, n: int, c) -> "ExactMatrix":
        c = rat(c)
        return cls._wrap(n, n, {i: {i: c} for i in range(n)} if c else {})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "ExactMatrix":
        data: dict[int, dict[int, Rat]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    data.setdefault(r, {})[c] = rat(v)
        return cls._wrap(nrows, len(columns), data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        r, c = rc
        return self._data.get(r, {}).get(c, mpq(0))

    def items(self):
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def row(self, r: int) -> dict:
        return dict(self._data.get(r, {}))

    def columns(self) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.cols)]
        for r, row in self._data.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def density(self) -> float:
        size = self.rows * self.cols
        return self.nnz / size if size else 0.0

    def to_dense(self) -> list[list[Rat]]:
        out = [[mpq(0)] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def transpose(self) -> "ExactMatrix":
        data: dict[int, dict[int, Rat]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return ExactMatrix._wrap(self.cols, self.rows, data)

    T = property(transpose)

    def apply(self, vec: Mapping[int, object]) -> dict[int, Rat]:
        """Sparse matrix-vector product; ``vec`` maps column index to value."""
        out: dict[int, Rat] = {}
        for r, row in self._data.items():
            acc = mpq(0)
            if len(row) <= len(vec):
                for c, v in row.items():
                    x = vec.get(c)
                    if x:
                        acc += v * x
            else:
                for c, x in vec.items():
                    v = row.get(c)
                    if v:
                        acc += v * x
            if acc:
                out[r] = acc
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._data
        data: dict[int, dict[int, Rat]] = {}
        for r, row in self._data.items():
            acc: dict[int, Rat] = {}
            for k, a in row.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                data[r] = acc
        return ExactMatrix._wrap(self.rows, other.cols, data)

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                s = tgt.get(c, 0) + sign * v
                if s:
                    tgt[c] = s
                else:
                    tgt.pop(c, None)
        return ExactMatrix._wrap(self.rows, self.cols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        c = rat(c)
        if not c:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix._wrap(
            self.rows, self.cols, {r: {k: v * c for k, v in row.items()} for r, row in self._data.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def is_zero(self) -> bool:
        return not self._data

    def scalar_value(self):
        """Return c if the matrix equals c times the identity, else None."""
        if self.rows != self.cols:
            return None
        if self.rows == 0:
            return mpq(0)
        c = self[0, 0]
        for r in range(self.rows):
            row = self._data.get(r, {})
            if c:
                if len(row) != 1 or row.get(r) != c:
                    return None
            elif row:
                return None
        return c

    def trace(self) -> Rat:
        return sum((row.get(r, mpq(0)) for r, row in self._data.items()), mpq(0))

    def first_difference(self, other: "ExactMatrix"):
        """Lexicographically first (row, col) where two equal-shape matrices differ."""
        for r in sorted(set(self._data) | set(other._data)):
            a, b = self._data.get(r, {}), other._data.get(r, {})
            for c in sorted(set(a) | set(b)):
                if a.get(c, 0) != b.get(c, 0):
                    return (r, c)
        return None

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def kron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Kronecker product; index (a, b) flattens to ``a * dim_B + b``."""
    data: dict[int, dict[int, Rat]] = {}
    for ra, rowa in A._data.items():
        for rb, rowb in B._data.items():
            row = {}
            for ca, va in rowa.items():
                base = ca * B.cols
                for cb, vb in rowb.items():
                    row[base + cb] = va * vb
            data[ra * B.rows + rb] = row
    return ExactMatrix._wrap(A.rows * B.rows, A.cols * B.cols, data)


# ---------------------------------------------------------------------------
# elimination


class RowEchelon:
    """Incrementally maintained reduced row echelon form of sparse vectors.

    Every stored row has a 1 at its pivot (its leading column) and zeros in
    all other pivot columns, so the form does not depend on insertion order.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Rat]] = {}   # pivot -> row

    def reduce(self, vec: Mapping[int, object]) -> dict[int, Rat]:
        v = {k: rat(x) for k, x in vec.items() if x}
        for p in [p for p in v if p in self.rows]:
            f = v.get(p)
            if not f:
                continue
            for c, x in self.rows[p].items():
                s = v.get(c, 0) - f * x
                if s:
                    v[c] = s
                else:
                    v.pop(c, None)
        return v

    def add(self, vec: Mapping[int, object]) -> int | None:
        """Insert a vector; return its new pivot, or None if it was dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for c, x in v.items():
                    s = row.get(c, 0) - f * x
                    if s:
                        row[c] = s
                    else:
                        row.pop(c, None)
        self.rows[p] = v
        return p

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict[int, Rat]]:
        return [self.rows[p] for p in self.pivots]


def _dense_rref(rows: list[list[Rat]], ncols: int):
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(M: ExactMatrix, dense_threshold: float | None = None):
    """Reduced row echelon form: (list of pivot rows as dicts, pivot columns)."""
    thr = DENSE_THRESHOLD if dense_threshold is None else dense_threshold
    if M.rows and M.cols and M.density() > thr:
        rows, pivots = _dense_rref(M.to_dense(), M.cols)
        return [{c: x for c, x in enumerate(row) if x} for row in rows], pivots
    ech = RowEchelon()
    for r in sorted(M._data):
        ech.add(M._data[r])
    return ech.basis(), ech.pivots


def rank(M: ExactMatrix) -> int:
    return len(rref(M)[1])


def rank_and_kernel(M: ExactMatrix) -> tuple[int, list[tuple[Rat, ...]]]:
    """Exact rank and a kernel basis (dense tuples, one per free column)."""
    rows, pivots = rref(M)
    pivset = set(pivots)
    kernel = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [mpq(0)] * M.cols
        v[f] = mpq(1)
        for p, row in zip(pivots, rows):
            x = row.get(f)
            if x:
                v[p] = -x
        kernel.append(tuple(v))
    return len(pivots), kernel


def matrix_from_vectors(vectors: Iterable[Sequence], length: int) -> ExactMatrix:
    """Stack dense vectors as the columns of a matrix."""
    cols = [{i: x for i, x in enumerate(v) if x} for v in vectors]
    return ExactMatrix.from_columns(length, cols)


def determinant(M: ExactMatrix) -> Rat:
    if M.rows != M.cols:
        raise DimensionError("determinant of a non-square matrix")
    a = M.to_dense()
    n = M.rows
    det = mpq(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return mpq(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(M: ExactMatrix) -> ExactMatrix:
    n = M.rows
    if n != M.cols:
        raise DimensionError("inverse of a non-square matrix")
    aug = [row + [mpq(1) if i == j else mpq(0) for j in range(n)] for i, row in enumerate(M.to_dense())]
    rows, pivots = _dense_rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix.from_dense([row[n:] for row in rows])
