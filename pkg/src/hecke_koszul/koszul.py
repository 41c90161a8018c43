"""The Koszul bicomplex Lambda^k (x) (S^l)^* of a Hecke symmetry.

A term is realized as ``Hom(S^l, Lambda^k)``: a linear map
``f: V^(x)l -> V^(x)k`` with ``f = Y_k f X_l``.  Under the reversed pairing
(the dual of ``V (x) W`` is ``W^* (x) V^*``) this is the same space as the
image of ``Y_k (x) X_l^*`` inside ``V^(x)k (x) V^*(x)l``, and

* ``d f  = Y_{k+1} (f (x) id) X_{l+1}``  (insert ``sum_i x_i (x) xi^i``),
* ``d' f = [k]_q [l]_q  Y_{k-1} tr_C(f) X_{l-1}``, where ``tr_C`` contracts
  the innermost ``V (x) V^*`` pair against ``C^i_j = sum_k P^{ik}_{jk}``.

In coordinates a term element is a ``dim Lambda^k x dim S^l`` matrix M
flattened row-major; both differentials are sums of Kronecker products of
the insertion / stripping maps of :class:`~hecke_koszul.qspaces.GradedSpace`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from gmpy2 import mpq

from .errors import NotCommuting, NotOneDimensional
from .exact import ExactMatrix, Rat, RowEchelon, determinant, inverse, kron, qint, rank_and_kernel, rat
from .hecke import HeckeSym, symmetrizer, antisymmetrizer, trace_matrix
from .qspaces import exterior, symmetric


@dataclass(frozen=True)
class KoszulTerm:
    k: int
    l: int
    dim: int              # dim Lambda^k * dim S^l
    ambient_dim: int      # d**(k + l)
    basis: tuple = ()     # sparse vectors of V^(x)k (x) V^*(x)l, one per coordinate


@dataclass(frozen=True)
class KoszulEntry:
    term_dim: int
    rank_out: int
    rank_in: int

    @property
    def homology(self) -> int:
        return self.term_dim - self.rank_out - self.rank_in


@dataclass(frozen=True)
class KoszulTable:
    kmax: int
    lmax: int
    q: Rat
    entries: Mapping[tuple[int, int], KoszulEntry]
    birank: tuple | None = None

    def homology(self, k: int, l: int) -> int:
        return self.entries[(k, l)].homology

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {kl: e.homology for kl, e in sorted(self.entries.items()) if e.homology}

    def grid(self) -> list[list[int]]:
        """Homology dimensions, rows indexed by k and columns by l."""
        return [[self.homology(k, l) for l in range(self.lmax + 1)] for k in range(self.kmax + 1)]

    def same_homology(self, other: "KoszulTable") -> bool:
        return self.grid() == other.grid() and all(
            self.entries[kl] == other.entries[kl] for kl in self.entries)


@dataclass(frozen=True)
class GurevichResult:
    k: int
    l: int
    lhs_is_scalar: bool
    scalar: Rat | None
    expected: Rat
    matches: bool


@dataclass(frozen=True)
class HomologyGenerator:
    m: int
    n: int
    coords: tuple                 # in the term basis, first nonzero = 1
    complement_pivots: tuple = field(default=())   # coordinates of im d zeroed out

    def __len__(self):
        return len(self.coords)


class KoszulComplex:
    def __init__(self, sym: HeckeSym):
        self.sym = sym
        self.ext = exterior(sym)
        self.sym_alg = symmetric(sym)
        self._C = None
        self._cache: dict = {}

    # -- terms ------------------------------------------------------------
    def term(self, k: int, l: int) -> KoszulTerm:
        """The term with its basis realized in the ambient mixed tensor space."""
        n = self.dim(k, l)
        basis = tuple(self.embed(k, l, [mpq(i == j) for i in range(n)]) for j in range(n))
        return KoszulTerm(k, l, n, self.sym.d ** (k + l), basis)

    def dim(self, k: int, l: int) -> int:
        if k < 0 or l < 0:
            return 0
        return self.ext.dim(k) * self.sym_alg.dim(l)

    def _memo(self, key, fn):
        with self.sym._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    @property
    def C(self) -> ExactMatrix:
        if self._C is None:
            self._C = trace_matrix(self.sym)
        return self._C

    # -- differentials ----------------------------------------------------
    def d(self, k: int, l: int) -> ExactMatrix:
        """d^{k,l}: K^{k,l} -> K^{k+1,l+1}."""
        def build():
            src, tgt = self.dim(k, l), self.dim(k + 1, l + 1)
            out = ExactMatrix.zeros(tgt, src)
            if not src or not tgt:
                return out
            for i in range(self.sym.d):
                out = out + kron(self.ext.insert(k, i), self.sym_alg.strip(l + 1, i).T)
            return out
        return self._memo(("d", k, l), build)

    def dprime(self, k: int, l: int) -> ExactMatrix:
        """d'^{k,l}: K^{k,l} -> K^{k-1,l-1} (zero when k or l is 0)."""
        def build():
            src = self.dim(k, l)
            if k == 0 or l == 0:
                return ExactMatrix.zeros(0, src)
            tgt = self.dim(k - 1, l - 1)
            out = ExactMatrix.zeros(tgt, src)
            if not src or not tgt:
                return out
            for t, s, c in self.C.items():
                # C[t, s] pairs x_s (last V slot) with xi^t (first V* slot)
                out = out + kron(self.ext.strip(k, s), self.sym_alg.insert(l - 1, t).T) * c
            q = self.sym.q
            return out * (qint(k, q) * qint(l, q))
        return self._memo(("dp", k, l), build)

    def rank_d(self, k: int, l: int) -> int:
        if k < 0 or l < 0:
            return 0
        return self._memo(("rank", k, l), lambda: rank_and_kernel(self.d(k, l))[0])

    # -- identities and homology -----------------------------------------
    def gurevich(self, k: int, l: int) -> GurevichResult:
        q = self.sym.q
        n = self.dim(k, l)
        op = self.dprime(k + 1, l + 1) @ self.d(k, l)
        if k > 0 and l > 0:
            op = op + (self.d(k - 1, l - 1) @ self.dprime(k, l)) * q
        s = op.scalar_value()
        expected = q**k * (self.sym.rank_q + qint(l - k, q))
        if n == 0:
            return GurevichResult(k, l, True, None, expected, True)
        return GurevichResult(k, l, s is not None, s, expected, s == expected)

    def entry(self, k: int, l: int) -> KoszulEntry:
        return KoszulEntry(self.dim(k, l), self.rank_d(k, l), self.rank_d(k - 1, l - 1))

    def homology_table(self, kmax: int, lmax: int | None = None) -> KoszulTable:
        """Homology dimensions for 0 <= k <= kmax, 0 <= l <= lmax.

        Outgoing differentials are always computed, including from the last
        row and column, so every entry is the homology of the full complex.
        """
        lmax = kmax if lmax is None else lmax
        ents = {(k, l): self.entry(k, l) for k in range(kmax + 1) for l in range(lmax + 1)}
        return KoszulTable(kmax, lmax, self.sym.q, ents)

    def _image_echelon(self, m: int, n: int) -> RowEchelon:
        ech = RowEchelon()
        if m >= 1 and n >= 1:
            for col in self.d(m - 1, n - 1).columns():
                ech.add(col)
        return ech

    def homology_generator(self, m: int, n: int) -> HomologyGenerator:
        """A representative of the one-dimensional homology at (m, n).

        Kernel vectors of d^{m,n} are reduced modulo the row echelon form of
        im d^{m-1,n-1}, which zeroes the image pivots; the first nonzero
        reduced vector, scaled so its first nonzero coordinate is 1, is returned.
        """
        h = self.entry(m, n).homology
        if h != 1:
            raise NotOneDimensional(f"homology at ({m},{n}) has dimension {h}")
        _, kernel = rank_and_kernel(self.d(m, n))
        img = self._image_echelon(m, n)
        for v in kernel:
            red = img.reduce({i: x for i, x in enumerate(v) if x})
            if red:
                lead = red[min(red)]
                coords = [mpq(0)] * self.dim(m, n)
                for i, x in red.items():
                    coords[i] = x / lead
                return HomologyGenerator(m, n, tuple(coords), tuple(img.pivots))
        raise NotOneDimensional(f"no homology class found at ({m},{n})")

    # -- group action -------------------------------------------------------
    def action(self, g: ExactMatrix, g_inv: ExactMatrix, k: int, l: int) -> ExactMatrix:
        """Matrix of ``f -> g^(x)k f g^(-1)(x)l`` on K^{k,l}.

        Valid when g (x) g commutes with R, which makes it commute with the
        projectors.
        """
        Ga = _power_on_degree(self.ext, g, k)
        H = _power_on_degree(self.sym_alg, g_inv, l)
        return kron(Ga, H.T)

    # -- ambient realization ------------------------------------------------
    def embed(self, k: int, l: int, coords) -> dict[int, Rat]:
        """Coordinates -> vector of V^(x)k (x) V^*(x)l (V^* block in reversed order)."""
        d = self.sym.d
        lam, sdeg = self.ext.degree(k), self.sym_alg.degree(l)
        X = symmetrizer(self.sym, l).matrix
        r = sdeg.dim
        out: dict[int, Rat] = {}
        for idx, x in enumerate(coords):
            if not x:
                continue
            a, c = divmod(idx, r)
            sigma = X.row(sdeg.pivots[c])
            for u, y in lam.basis[a].items():
                for v, z in sigma.items():
                    key = u * d**l + _reverse_index(v, d, l)
                    s = out.get(key, 0) + x * y * z
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return out


def _power_on_degree(space, g: ExactMatrix, n: int) -> ExactMatrix:
    deg = space.degree(n)
    d = space.sym.d
    cols = []
    for b in deg.basis:
        cols.append({i: x for i, x in enumerate(deg.coords(apply_tensor_power(g, b, n, d))) if x})
    return ExactMatrix.from_columns(deg.dim, cols)


def apply_tensor_power(g: ExactMatrix, vec: Mapping[int, Rat], n: int, d: int) -> dict[int, Rat]:
    """Apply ``g (x) ... (x) g`` (n factors) to a sparse vector of V^(x)n."""
    gcols = g.columns()
    v = dict(vec)
    for slot in range(n):
        stride = d ** (n - 1 - slot)
        out: dict[int, Rat] = {}
        for idx, x in v.items():
            j = (idx // stride) % d
            base = idx - j * stride
            for i, y in gcols[j].items():
                key = base + i * stride
                s = out.get(key, 0) + x * y
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        v = out
    return v


def _reverse_index(idx: int, d: int, n: int) -> int:
    out = 0
    for _ in range(n):
        idx, r = divmod(idx, d)
        out = out * d + r
    return out


def koszul(sym: HeckeSym) -> KoszulComplex:
    return sym.cached("koszul", lambda: KoszulComplex(sym))


# ---------------------------------------------------------------------------
# ambient-space operators (used to cross-check the factored differentials)


def dual_basis_insert(k: int, l: int, d: int) -> ExactMatrix:
    """``V^(x)k (x) V^*(x)l -> V^(x)k+1 (x) V^*(x)l+1``, inserting ``sum_i x_i (x) xi^i``."""
    ent = {}
    dl = d**l
    for a in range(d**k):
        for b in range(dl):
            src = a * dl + b
            for i in range(d):
                ent[((a * d + i) * (dl * d) + i * dl + b, src)] = 1
    return ExactMatrix(d ** (k + l + 2), d ** (k + l), ent)


def dual_symmetrizer(sym: HeckeSym, l: int) -> ExactMatrix:
    """``J X_l^T J`` on V^*(x)l, J the index-reversal permutation."""
    X = symmetrizer(sym, l).matrix
    d = sym.d
    ent = {(_reverse_index(c, d, l), _reverse_index(r, d, l)): v for r, c, v in X.items()}
    return ExactMatrix(X.rows, X.cols, ent)


def ambient_projector(sym: HeckeSym, k: int, l: int) -> ExactMatrix:
    """``Y_k (x) X_l^*`` on V^(x)k (x) V^*(x)l."""
    return kron(antisymmetrizer(sym, k).matrix, dual_symmetrizer(sym, l))


def differential_d(sym: HeckeSym, k: int, l: int) -> ExactMatrix:
    return koszul(sym).d(k, l)


def codifferential_dprime(sym: HeckeSym, k: int, l: int) -> ExactMatrix:
    return koszul(sym).dprime(k, l)


def gurevich_identity(sym: HeckeSym, k: int, l: int) -> GurevichResult:
    return koszul(sym).gurevich(k, l)


def homology_table(sym: HeckeSym, kmax: int, lmax: int | None = None) -> KoszulTable:
    return koszul(sym).homology_table(kmax, lmax)


def homology_generator(sym: HeckeSym, m: int, n: int) -> HomologyGenerator:
    return koszul(sym).homology_generator(m, n)


# ---------------------------------------------------------------------------
# Berezinian


@dataclass(frozen=True)
class SuperMatrixPoint:
    """Block-diagonal even supermatrix diag(A, D)."""

    A: ExactMatrix
    D: ExactMatrix

    def __post_init__(self):
        for name, M in (("A", self.A), ("D", self.D)):
            if M.rows != M.cols:
                raise ValueError(f"{name} must be square")
            if M.rows and determinant(M) == 0:
                raise ValueError(f"{name} must be invertible")

    @property
    def Z(self) -> ExactMatrix:
        m, n = self.A.rows, self.D.rows
        ent = {(r, c): v for r, c, v in self.A.items()}
        ent.update({(m + r, m + c): v for r, c, v in self.D.items()})
        return ExactMatrix(m + n, m + n, ent)

    def berezinian(self) -> Rat:
        dA = determinant(self.A) if self.A.rows else mpq(1)
        dD = determinant(self.D) if self.D.rows else mpq(1)
        return dA / dD


def random_point(m: int, n: int, rng: random.Random, bound: int = 4) -> SuperMatrixPoint:
    def block(size):
        while True:
            M = ExactMatrix.from_dense(
                [[mpq(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(size)]
                 for _ in range(size)])
            if determinant(M) != 0:
                return M
    return SuperMatrixPoint(block(m), block(n))


@dataclass(frozen=True)
class BerezinianResult:
    scalar_action: Rat
    berezinian: Rat
    commutes: bool

    @property
    def equal(self) -> bool:
        return self.scalar_action == self.berezinian


def berezinian_check(mn: tuple[int, int], point: SuperMatrixPoint,
                     complex_: KoszulComplex | None = None) -> BerezinianResult:
    """Scalar by which diag(A, D) acts on the homology generator at (m, n).

    The action is ``Z^(x)m (x) (Z^-T)^(x)n``; it is first checked to commute
    with d and d' on every map into or out of the (m, n) term.
    """
    m, n = mn
    if complex_ is None:
        from .zoo import super_flip
        complex_ = koszul(super_flip(m, n))
    K = complex_
    Z = point.Z
    Zi = inverse(Z)
    act = {(k, l): K.action(Z, Zi, k, l) for k, l in
           [(m - 1, n - 1), (m, n), (m + 1, n + 1)] if k >= 0 and l >= 0}
    pairs = [((m - 1, n - 1), (m, n)), ((m, n), (m + 1, n + 1))]
    for src, tgt in pairs:
        if src not in act:
            continue
        if act[tgt] @ K.d(*src) != K.d(*src) @ act[src]:
            raise NotCommuting(f"action does not commute with d at {src}")
        if K.dprime(*tgt) @ act[tgt] != act[src] @ K.dprime(*tgt):
            raise NotCommuting(f"action does not commute with d' at {tgt}")
    gen = K.homology_generator(m, n)
    h = {i: x for i, x in enumerate(gen.coords) if x}
    w = act[(m, n)].apply(h)
    img = K._image_echelon(m, n)
    w_red, h_red = img.reduce(w), img.reduce(h)
    p = min(h_red)
    lam = w_red.get(p, mpq(0)) / h_red[p]
    if {i: x * lam for i, x in h_red.items()} != w_red:
        raise NotCommuting("homology class is not an eigenvector of the action")
    return BerezinianResult(lam, point.berezinian(), True)


__all__ = [
    "KoszulTerm", "KoszulEntry", "KoszulTable", "GurevichResult", "HomologyGenerator", "KoszulComplex",
    "koszul", "dual_basis_insert", "dual_symmetrizer", "ambient_projector", "differential_d",
    "codifferential_dprime", "gurevich_identity", "homology_table", "homology_generator",
    "SuperMatrixPoint", "random_point", "berezinian_check", "BerezinianResult", "apply_tensor_power",
]
