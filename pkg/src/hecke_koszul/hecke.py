"""Hecke symmetries and the Hecke-algebra action on tensor powers.

Conventions
-----------
``R`` is a ``d**2 x d**2`` matrix with ``R[(k,l),(i,j)] = R^{kl}_{ij}``, i.e.
``R(x_i (x) x_j) = sum x_k (x) x_l R^{kl}_{ij}``, and a pair index ``(i,j)`` is
flattened to ``i*d + j`` (0-based).  Tensor powers use big-endian
lexicographic flattening: ``(i_1,...,i_n) -> sum i_k d**(n-k)``.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Callable, Mapping

from gmpy2 import mpq

from .errors import AxiomViolation, DimensionError, ResourceCapExceeded, RootOfUnity, SingularHalfAdjoint
from .exact import (
    ExactMatrix,
    Rat,
    RowEchelon,
    check_not_root_of_unity,
    inverse,
    kron,
    qfact,
    rank,
    rat,
)

DEFAULT_MAX_AMBIENT_DIM = 200_000


def _side(R: ExactMatrix) -> int:
    d = round(R.rows ** 0.5)
    if R.rows != R.cols or d * d != R.rows:
        raise DimensionError(f"R must be d^2 x d^2, got {R.rows}x{R.cols}")
    return d


def _digits(idx: int, d: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, r = divmod(idx, d)
        out.append(r + 1)
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class AxiomReport:
    braid: bool
    quadratic: bool
    half_adjoint_invertible: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.braid and self.quadratic and self.half_adjoint_invertible

    def failed(self) -> list[str]:
        names = {"braid": self.braid, "quadratic": self.quadratic,
                 "half_adjoint_invertible": self.half_adjoint_invertible}
        return [k for k, v in names.items() if not v]


def half_adjoint(R: ExactMatrix) -> ExactMatrix:
    """The reshuffled matrix with ``(R#)^{kl}_{ij} = R^{ik}_{jl}``."""
    d = _side(R)
    ent = {}
    for r, c, v in R.items():
        i, k = divmod(r, d)
        j, l = divmod(c, d)
        ent[(k * d + l, i * d + j)] = v
    return ExactMatrix(d * d, d * d, ent)


def _contraction_matrix(R: ExactMatrix) -> ExactMatrix:
    # Rt[(m,n),(k,l)] = R^{nk}_{ml}; then P~ Rt = Delta with P~[(i,j),(m,n)] = P^{im}_{jn}
    d = _side(R)
    ent = {}
    for r, c, v in R.items():
        n, k = divmod(r, d)
        m, l = divmod(c, d)
        ent[(m * d + n, k * d + l)] = v
    return ExactMatrix(d * d, d * d, ent)


def check_hecke(R: ExactMatrix, q) -> AxiomReport:
    """Check the braid relation, the quadratic relation and half-adjoint invertibility."""
    d = _side(R)
    q = rat(q)
    N = d * d
    witnesses = {}
    I = ExactMatrix.identity(d)
    R1, R2 = kron(R, I), kron(I, R)
    lhs, rhs = R1 @ R2 @ R1, R2 @ R1 @ R2
    braid = lhs == rhs
    if not braid:
        r, c = lhs.first_difference(rhs)
        witnesses["braid"] = {"out": _digits(r, d, 3), "in": _digits(c, d, 3),
                              "lhs": lhs[r, c], "rhs": rhs[r, c]}
    Id = ExactMatrix.identity(N)
    quad = (R + Id) @ (R - Id * q)
    quadratic = quad.is_zero()
    if not quadratic:
        r, c, v = next(quad.items())
        witnesses["quadratic"] = {"out": _digits(r, d, 2), "in": _digits(c, d, 2), "value": v}
    ha_rank = rank(half_adjoint(R))
    half_ok = ha_rank == N
    if not half_ok:
        witnesses["half_adjoint_invertible"] = {"rank": ha_rank, "size": N}
    return AxiomReport(braid, quadratic, half_ok, witnesses)


# ---------------------------------------------------------------------------


class HeckeSym:
    """A validated Hecke symmetry at a specialized value of q.

    Derived data (P, the quantum rank, graded projector images) is computed
    on first use and cached; the cache is guarded so concurrent readers see
    a single computation.
    """

    def __init__(self, R: ExactMatrix, q, *, name: str | None = None, validate: bool = True,
                 max_ambient_dim: int = DEFAULT_MAX_AMBIENT_DIM):
        self.d = _side(R)
        self.q = rat(q)
        self.R = R
        self.name = name or f"R(d={self.d})"
        self.max_ambient_dim = max_ambient_dim
        if self.q == 0:
            raise RootOfUnity("q = 0 is not admissible")
        check_not_root_of_unity(self.q, 2)
        self.report = check_hecke(R, self.q) if validate else None
        if self.report is not None and not self.report.ok:
            raise AxiomViolation(
                f"{self.name} violates: {', '.join(self.report.failed())}", self.report)
        self._lock = threading.RLock()
        self._cache: dict = {}
        self._cols = [[] for _ in range(self.d * self.d)]
        for r, c, v in R.items():
            self._cols[c].append((r, v))

    def cached(self, key, factory: Callable):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = factory()
            return self._cache[key]

    @property
    def P(self) -> ExactMatrix:
        return self.cached("P", lambda: compute_P(self))

    @property
    def rank_q(self) -> Rat:
        return self.cached("rank_q", lambda: quantum_rank(self))

    def check_power(self, n: int) -> None:
        if self.d**n > self.max_ambient_dim:
            raise ResourceCapExceeded(
                f"V^(x){n} has dimension {self.d**n} > cap {self.max_ambient_dim}")

    def apply_Ri(self, vec: Mapping[int, Rat], i: int, n: int) -> dict[int, Rat]:
        """Apply R acting on tensor slots i, i+1 (1-based) of V^(x)n to a sparse vector."""
        d = self.d
        stride = d ** (n - i - 1)
        dd = d * d
        out: dict[int, Rat] = {}
        cols = self._cols
        for idx, x in vec.items():
            pair = (idx // stride) % dd
            base = idx - pair * stride
            for kl, v in cols[pair]:
                j = base + kl * stride
                s = out.get(j, 0) + v * x
                if s:
                    out[j] = s
                else:
                    out.pop(j, None)
        return out

    def conjugate(self, g: ExactMatrix, name: str | None = None) -> "HeckeSym":
        """The same symmetry written in the basis changed by ``g`` on V."""
        gg = kron(g, g)
        Rg = gg @ self.R @ inverse(gg)
        return HeckeSym(Rg, self.q, name=name or f"{self.name}^g", max_ambient_dim=self.max_ambient_dim)

    def __repr__(self):
        return f"HeckeSym({self.name}, d={self.d}, q={self.q})"


def compute_P(sym: HeckeSym) -> ExactMatrix:
    """The matrix P with ``P^{im}_{jn} R^{nk}_{ml} = delta^i_l delta^k_j``.

    Returned in the same layout as R: ``P[(i,m),(j,n)] = P^{im}_{jn}``.
    """
    d = sym.d
    Rt = _contraction_matrix(sym.R)
    try:
        Rt_inv = inverse(Rt)
    except ZeroDivisionError as exc:
        raise SingularHalfAdjoint(f"{sym.name}: half adjoint is singular") from exc
    # P~ = Delta Rt^{-1}; Delta[(i,j),(k,l)] = [k==j][l==i]  ->  row (i,j) of P~ is row (j,i) of Rt^{-1}
    ent = {}
    for r, c, v in Rt_inv.items():
        j, i = divmod(r, d)
        m, n = divmod(c, d)
        ent[(i * d + m, j * d + n)] = v
    P = ExactMatrix(d * d, d * d, ent)
    if not _recontracts(P, sym.R, d):
        raise SingularHalfAdjoint(f"{sym.name}: P failed re-contraction")
    return P


def _recontracts(P: ExactMatrix, R: ExactMatrix, d: int) -> bool:
    acc: dict = {}
    for r1, c1, p in P.items():
        i, m = divmod(r1, d)
        j, n = divmod(c1, d)
        for r2, c2, v in R.items():
            n2, k = divmod(r2, d)
            m2, l = divmod(c2, d)
            if n2 == n and m2 == m:
                key = (i, j, k, l)
                acc[key] = acc.get(key, 0) + p * v
    for i, j, k, l in itertools.product(range(d), repeat=4):
        want = 1 if (i == l and k == j) else 0
        if acc.get((i, j, k, l), 0) != want:
            return False
    return True


def recontraction_defect(P: ExactMatrix, R: ExactMatrix) -> bool:
    """True iff P and R satisfy the defining contraction identity exactly."""
    return _recontracts(P, R, _side(R))


def quantum_rank(sym: HeckeSym) -> Rat:
    """``rank_q R = sum_{i,j} P^{ij}_{ij}``."""
    d = sym.d
    P = sym.P
    return sum((P[i * d + j, i * d + j] for i in range(d) for j in range(d)), mpq(0))


def trace_matrix(sym: HeckeSym) -> ExactMatrix:
    """``C^i_j = sum_k P^{ik}_{jk}``; it satisfies ``tr_2(R C_2) = id``."""
    d = sym.d
    P = sym.P
    return ExactMatrix(d, d, {(i, j): sum((P[i * d + k, j * d + k] for k in range(d)), mpq(0))
                              for i in range(d) for j in range(d)})


def hecke_operator(sym: HeckeSym, i: int, n: int) -> ExactMatrix:
    """``R_i = id^(i-1) (x) R (x) id^(n-i-1)`` on V^(x)n."""
    if not 1 <= i <= n - 1:
        raise IndexError(f"position {i} outside 1..{n - 1}")
    d = sym.d
    return kron(kron(ExactMatrix.identity(d ** (i - 1)), sym.R), ExactMatrix.identity(d ** (n - i - 1)))


# ---------------------------------------------------------------------------
# q-(anti)symmetrizers

SYM, ANTI = "symmetrizer", "antisymmetrizer"


def coset_weight(sym: HeckeSym, kind: str) -> Rat:
    """Per-generator weight: 1 for the symmetrizer, -1/q for the antisymmetrizer."""
    return mpq(1) if kind == SYM else -1 / sym.q


def normalizer(sym: HeckeSym, kind: str, n: int) -> Rat:
    """``[n]_q!`` (symmetrizer) or ``[n]_{1/q}!`` (antisymmetrizer)."""
    return qfact(n, sym.q if kind == SYM else 1 / sym.q)


def apply_coset_sum(sym: HeckeSym, kind: str, vec: Mapping[int, Rat], n: int, top: int | None = None):
    """Apply ``sum_c w(c) T_c`` over minimal left coset reps of S_{top-1} in S_top.

    The reps are ``e, s_{top-1}, s_{top-2}s_{top-1}, ..., s_1...s_{top-1}``,
    acting on the first ``top`` slots of V^(x)n.
    """
    top = n if top is None else top
    c = coset_weight(sym, kind)
    t = dict(vec)
    acc = dict(vec)
    for j in range(top - 1, 0, -1):
        t = sym.apply_Ri(t, j, n)
        if c != 1:
            t = {k: v * c for k, v in t.items()}
        for k, v in t.items():
            s = acc.get(k, 0) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    return acc


def apply_projector(sym: HeckeSym, kind: str, vec: Mapping[int, Rat], n: int) -> dict[int, Rat]:
    """Apply X_n or Y_n to a sparse vector of V^(x)n (full coset recursion)."""
    v = dict(vec)
    for top in range(2, n + 1):
        v = apply_coset_sum(sym, kind, v, n, top)
    inv = 1 / normalizer(sym, kind, n)
    return {k: x * inv for k, x in v.items()}


@dataclass(frozen=True)
class ProjectorRep:
    n: int
    kind: str
    matrix: ExactMatrix
    image_basis: tuple

    @property
    def rank(self) -> int:
        return len(self.image_basis)


def _projector(sym: HeckeSym, n: int, kind: str) -> ProjectorRep:
    if n < 0:
        raise ValueError("tensor power must be non-negative")
    normalizer(sym, kind, n)   # raises RootOfUnity early
    sym.check_power(n)
    dim = sym.d**n
    cols = [apply_projector(sym, kind, {e: mpq(1)}, n) for e in range(dim)]
    M = ExactMatrix.from_columns(dim, cols)
    ech = RowEchelon()
    for col in cols:
        ech.add(col)
    return ProjectorRep(n, kind, M, tuple(ech.basis()))


def symmetrizer(sym: HeckeSym, n: int) -> ProjectorRep:
    """The q-symmetrizer ``X_n = (sum_w T_w) / [n]_q!`` on V^(x)n."""
    return sym.cached(("projector", SYM, n), lambda: _projector(sym, n, SYM))


def antisymmetrizer(sym: HeckeSym, n: int) -> ProjectorRep:
    """The q-antisymmetrizer ``Y_n = (sum_w (-q)^(-l(w)) T_w) / [n]_{1/q}!``."""
    return sym.cached(("projector", ANTI, n), lambda: _projector(sym, n, ANTI))
