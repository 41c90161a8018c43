"""Quantum exterior and symmetric algebras, Poincare series and birank.

Degree-n components are realized as images of the projectors Y_n (exterior)
and X_n (symmetric) inside V^(x)n.  Bases are kept in reduced row echelon
form, so the coordinates of any image vector are its entries at the pivots.

Because ``Y_{n+1} = c * C_{n+1} (Y_n (x) id)`` for the minimal left coset
sum ``C_{n+1}``, the image in degree n+1 is spanned by ``Y_{n+1}(b (x) x_i)``
over basis vectors b of degree n; that saves building any full projector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .errors import Undetermined, RootSignViolation
from .exact import ExactMatrix, Rat, RowEchelon, qint
from .hecke import ANTI, SYM, HeckeSym, apply_coset_sum

DEFAULT_MAX_DEGREE = 7
DEFAULT_GUARD = 2


@dataclass(frozen=True)
class Degree:
    n: int
    basis: tuple          # sparse dict vectors in V^(x)n (RREF rows)
    pivots: tuple         # pivot index of each basis vector

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, vec) -> list[Rat]:
        return [vec.get(p, mpq(0)) for p in self.pivots]


class GradedSpace:
    """Degree-wise image bases and the insertion/stripping maps between them.

    ``insert(n, i)`` is the matrix of ``b -> P_{n+1}(b (x) x_i)`` from degree n
    to degree n+1; ``strip(n, s)`` is the matrix of contracting the last
    tensor slot against the dual basis vector ``xi^s``, degree n to n-1.
    """

    def __init__(self, sym: HeckeSym, kind: str):
        self.sym = sym
        self.kind = kind
        self._degrees = [Degree(0, ({0: mpq(1)},), (0,))]
        self._insert: dict[int, list[ExactMatrix]] = {}
        self._strip: dict[tuple[int, int], ExactMatrix] = {}

    def _extend(self) -> None:
        sym, d = self.sym, self.sym.d
        prev = self._degrees[-1]
        n = prev.n + 1
        sym.check_power(n)
        ratio = 1 / qint(n, sym.q if self.kind == SYM else 1 / sym.q)
        images = []
        ech = RowEchelon()
        for b in prev.basis:
            for i in range(d):
                v = {k * d + i: x for k, x in b.items()}
                w = apply_coset_sum(sym, self.kind, v, n)
                w = {k: x * ratio for k, x in w.items()}
                images.append(w)
                ech.add(w)
        deg = Degree(n, tuple(ech.basis()), tuple(ech.pivots))
        mats = []
        for i in range(d):
            cols = [deg.coords(images[a * d + i]) for a in range(prev.dim)]
            mats.append(ExactMatrix(deg.dim, prev.dim,
                                    {(r, c): x for c, col in enumerate(cols) for r, x in enumerate(col) if x}))
        self._insert[prev.n] = mats
        self._degrees.append(deg)

    def degree(self, n: int) -> Degree:
        with self.sym._lock:
            while len(self._degrees) <= n:
                if self._degrees[-1].dim == 0:
                    # higher components vanish once one does
                    m = len(self._degrees)
                    self._insert[m - 1] = [ExactMatrix.zeros(0, 0)] * self.sym.d
                    self._degrees.append(Degree(m, (), ()))
                else:
                    self._extend()
            return self._degrees[n]

    def dim(self, n: int) -> int:
        return self.degree(n).dim

    def insert(self, n: int, i: int) -> ExactMatrix:
        self.degree(n + 1)
        return self._insert[n][i]

    def strip(self, n: int, s: int) -> ExactMatrix:
        """Contract the last slot with xi^s: degree n -> degree n-1."""
        if n == 0:
            raise ValueError("cannot strip a slot from degree 0")
        key = (n, s)
        with self.sym._lock:
            if key not in self._strip:
                d = self.sym.d
                hi, lo = self.degree(n), self.degree(n - 1)
                ent = {}
                for c, b in enumerate(hi.basis):
                    sub = {k // d: x for k, x in b.items() if k % d == s}
                    for r, x in enumerate(lo.coords(sub)):
                        if x:
                            ent[(r, c)] = x
                self._strip[key] = ExactMatrix(lo.dim, hi.dim, ent)
            return self._strip[key]


def exterior(sym: HeckeSym) -> GradedSpace:
    return sym.cached(("graded", ANTI), lambda: GradedSpace(sym, ANTI))


def symmetric(sym: HeckeSym) -> GradedSpace:
    return sym.cached(("graded", SYM), lambda: GradedSpace(sym, SYM))


def lambda_dim(sym: HeckeSym, k: int) -> int:
    """dim of the degree-k quantum exterior power (rank of Y_k)."""
    return exterior(sym).dim(k)


def sym_dim(sym: HeckeSym, l: int) -> int:
    """dim of the degree-l quantum symmetric power (rank of X_l)."""
    return symmetric(sym).dim(l)


# ---------------------------------------------------------------------------
# rational reconstruction


def berlekamp_massey(seq: Sequence) -> tuple[list[Rat], int, int]:
    """Minimal LFSR over Q.

    Returns ``(C, L, last)``: connection polynomial C (C[0] = 1), register
    length L, and the index of the last term that changed the register
    (-1 if none did).
    """
    s = [mpq(x) for x in seq]
    C, B = [mpq(1)], [mpq(1)]
    L, m, b = 0, 1, mpq(1)
    last = -1
    for i in range(len(s)):
        disc = s[i]
        for j in range(1, L + 1):
            if j < len(C):
                disc += C[j] * s[i - j]
        if disc == 0:
            m += 1
            continue
        last = i
        coef = disc / b
        T = list(C)
        if len(C) < len(B) + m:
            C = C + [mpq(0)] * (len(B) + m - len(C))
        for j, x in enumerate(B):
            C[j + m] -= coef * x
        if 2 * L <= i:
            L, B, b, m = i + 1 - L, T, disc, 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C, L, last


def _as_ints(p):
    return [int(x) if x.denominator == 1 else x for x in p]


def _guarded_pade(coeffs, guard):
    """Smallest-order (numer deg a, denom deg b) fit, overdetermined by ``guard`` equations."""
    s = [mpq(x) for x in coeffs]
    K = len(s) - 1
    for L in range(1, K + 2):
        cands = sorted({(a, b) for a in range(L) for b in range(L + 1) if max(a + 1, b) == L},
                       key=lambda ab: (ab[0] + ab[1], ab[1]))
        for a, b in cands:
            if K - a < b + guard:
                continue
            ech = RowEchelon()
            consistent = True
            for i in range(a + 1, K + 1):
                # sum_{j=1..b} D_j s_{i-j} = -s_i ; column b holds the right-hand side
                row = {j - 1: s[i - j] for j in range(1, b + 1) if i - j >= 0 and s[i - j]}
                if s[i]:
                    row[b] = -s[i]
                p = ech.add(row)
                if p == b:
                    consistent = False
                    break
            if not consistent:
                continue
            D = [mpq(1)] + [mpq(0)] * b
            for p, row in ech.rows.items():
                D[p + 1] = row.get(b, mpq(0))
            numer = [sum((D[j] * s[i - j] for j in range(min(i, b) + 1)), mpq(0)) for i in range(a + 1)]
            return numer, D
    return None


def reconstruct_rational(coeffs: Sequence[int], guard: int = DEFAULT_GUARD):
    """Generating function ``numer/denom`` of an integer sequence, or raise Undetermined.

    Berlekamp-Massey is tried first and accepted when its register has not
    changed over the last ``guard`` terms.  Short terminating sequences never
    stabilize that way (BM needs 2L terms), so the fallback fits the smallest
    recurrence order whose linear system has ``guard`` more equations than
    unknowns.  The result is reduced with denom(0) = 1.
    """
    if not coeffs or coeffs[0] != 1:
        raise ValueError("series must start with 1")
    C, L, last = berlekamp_massey(coeffs)
    N = len(coeffs)
    if N - 1 - last >= guard and N >= 2 * L:
        numer = [sum((c * coeffs[i - j] for j, c in enumerate(C) if i - j >= 0), mpq(0)) for i in range(L)]
    else:
        fit = _guarded_pade(coeffs, guard)
        if fit is None:
            raise Undetermined(f"no recurrence stable over {guard} guard terms within {N} terms")
        numer, C = fit
    numer, denom = _reduce_fraction(numer, C)
    return _as_ints(numer), _as_ints(denom)


def _reduce_fraction(numer, denom):
    from .exact import _poly_divmod_q, _trim

    a, b = _trim(numer), _trim(denom)
    x, y = a, b
    while y:
        _, r = _poly_divmod_q(x, y)
        x, y = y, r
    g = list(x)
    if len(g) > 1:
        a, _ = _poly_divmod_q(a, g)
        b, _ = _poly_divmod_q(b, g)
    c0 = b[0]
    return [mpq(v) / c0 for v in a], [mpq(v) / c0 for v in b]


def series_mul(a, b, K):
    out = [mpq(0)] * (K + 1)
    for i, x in enumerate(a[: K + 1]):
        if x:
            for j, y in enumerate(b[: K + 1 - i]):
                out[i + j] += x * y
    return out


@dataclass(frozen=True)
class PoincareReport:
    lambda_dims: tuple
    sym_dims: tuple
    numer: tuple
    denom: tuple
    birank: tuple | None      # None means undetermined
    roots_ok: bool
    duality_ok: bool
    detail: str = ""


def _sympy_poly(coeffs):
    import sympy

    t = sympy.Symbol("t")
    return sympy.Poly([sympy.Rational(int(mpq(c).numerator), int(mpq(c).denominator))
                       for c in reversed(coeffs)], t)


def root_signs_ok(numer, denom) -> bool:
    """All roots of numer real and negative, all roots of denom real and positive.

    Exact: real roots are isolated by sympy and counted with multiplicity.
    Both constant terms are 1, so 0 is never a root.
    """
    m, n = len(numer) - 1, len(denom) - 1
    if m > 0 and sum(1 for r in _sympy_poly(numer).real_roots() if r < 0) != m:
        return False
    if n > 0 and sum(1 for r in _sympy_poly(denom).real_roots() if r > 0) != n:
        return False
    return True


def poincare(sym: HeckeSym, K: int = DEFAULT_MAX_DEGREE, guard: int = DEFAULT_GUARD) -> PoincareReport:
    lam = [lambda_dim(sym, k) for k in range(K + 1)]
    sdim = [sym_dim(sym, l) for l in range(K + 1)]
    alt = [(-1) ** k * x for k, x in enumerate(lam)]
    prod = series_mul(alt, sdim, K)
    duality = prod == [1] + [0] * K
    try:
        numer, denom = reconstruct_rational(lam, guard)
    except Undetermined as exc:
        return PoincareReport(tuple(lam), tuple(sdim), (), (), None, False, duality, str(exc))
    roots = root_signs_ok(numer, denom)
    return PoincareReport(tuple(lam), tuple(sdim), tuple(numer), tuple(denom),
                          (len(numer) - 1, len(denom) - 1), roots, duality)


def birank(sym: HeckeSym, K: int = DEFAULT_MAX_DEGREE, guard: int = DEFAULT_GUARD) -> tuple[int, int]:
    """Degrees (m, n) of numerator and denominator of the exterior Poincare series."""
    rep = sym.cached(("poincare", K, guard), lambda: poincare(sym, K, guard))
    if rep.birank is None:
        raise Undetermined(rep.detail)
    if not rep.roots_ok:
        raise RootSignViolation(f"Poincare series {rep.numer}/{rep.denom} has misplaced roots or poles")
    if not rep.duality_ok:
        raise RootSignViolation("P_S(t) P_Lambda(-t) != 1")
    return rep.birank
