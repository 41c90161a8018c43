"""Built-in Hecke symmetries and the R-matrix file loader.

R-matrix files are YAML (JSON is accepted as a subset)::

    dim: 2
    q_excluded: ["-1"]
    entries:
      - {out: [1, 1], in: [1, 1], value: "q"}
      - {out: [2, 1], in: [1, 2], value: "1"}
      ...

Indices are 1-based; ``value`` is a fraction of integer polynomials in q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import yaml

from .errors import AxiomViolation, MismatchedQ, ParseError
from .exact import ExactMatrix, RatFunc, eval_ratfunc, parse_ratfunc, rat
from .hecke import DEFAULT_MAX_AMBIENT_DIM, HeckeSym


@dataclass(frozen=True)
class RFamily:
    """A q-dependent R-matrix: sparse map (k, l, i, j) -> RatFunc (0-based)."""

    name: str
    d: int
    entries: Mapping[tuple[int, int, int, int], RatFunc]
    q_excluded: tuple = field(default=())

    def matrix_at(self, q) -> ExactMatrix:
        q = rat(q)
        d = self.d
        ent = {}
        for (k, l, i, j), f in self.entries.items():
            v = eval_ratfunc(f, q)
            if v:
                ent[(k * d + l, i * d + j)] = v
        return ExactMatrix(d * d, d * d, ent)

    def at(self, q, max_ambient_dim: int = DEFAULT_MAX_AMBIENT_DIM) -> HeckeSym:
        q = rat(q)
        if q in self.q_excluded:
            raise ValueError(f"q = {q} is excluded for {self.name}")
        return HeckeSym(self.matrix_at(q), q, name=self.name, max_ambient_dim=max_ambient_dim)


def _glue(R1e: Mapping, d1: int, R2e: Mapping, d2: int, q) -> dict:
    """Entries of the Hecke sum on V1 (+) V2.

    For v in V1, w in V2:  R(v w) = w v  and  R(w v) = q v w + (q - 1) w v.
    """
    ent = dict(((k, l, i, j), f) for (k, l, i, j), f in R1e.items())
    for (k, l, i, j), f in R2e.items():
        ent[(k + d1, l + d1, i + d1, j + d1)] = f
    one = RatFunc.const(1) if isinstance(q, RatFunc) else 1
    for a in range(d1):
        for b in range(d1, d1 + d2):
            ent[(b, a, a, b)] = one
            ent[(a, b, b, a)] = q
            ent[(b, a, b, a)] = q - 1
    return ent


def dj_family(N: int) -> RFamily:
    if N < 1:
        raise ValueError("N must be >= 1")
    q = RatFunc.q()
    ent: dict = {(0, 0, 0, 0): q}
    for n in range(1, N):
        ent = _glue(ent, n, {(0, 0, 0, 0): q}, 1, q)
    return RFamily(f"dj{N}", N, ent, (rat(-1), rat(0)))


def odd_family() -> RFamily:
    return RFamily("odd", 1, {(0, 0, 0, 0): RatFunc.const(-1)}, (rat(-1), rat(0)))


def sum_family(F1: RFamily, F2: RFamily) -> RFamily:
    ent = _glue(F1.entries, F1.d, F2.entries, F2.d, RatFunc.q())
    excl = tuple(sorted(set(F1.q_excluded) | set(F2.q_excluded)))
    return RFamily(f"{F1.name}+{F2.name}", F1.d + F2.d, ent, excl)


def drinfeld_jimbo(N: int, q, **kw) -> HeckeSym:
    """Standard deformation of GL(N).

    ``R(x_i x_i) = q x_i x_i``; ``R(x_i x_j) = x_j x_i`` for i < j;
    ``R(x_i x_j) = q x_j x_i + (q - 1) x_i x_j`` for i > j.
    """
    return dj_family(N).at(q, **kw)


def super_flip(m: int, n: int, **kw) -> HeckeSym:
    """The super flip on a (m|n)-dimensional superspace (q = 1)."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    d = m + n
    ent = {}
    for i in range(d):
        for j in range(d):
            sign = -1 if (i >= m and j >= m) else 1
            ent[(j * d + i, i * d + j)] = sign
    return HeckeSym(ExactMatrix(d * d, d * d, ent), 1, name=f"superflip({m}|{n})", **kw)


def odd_point(q, **kw) -> HeckeSym:
    """d = 1, R = [-1]: odd of rank 1 for every admissible q."""
    return odd_family().at(q, **kw)


def hecke_sum(R1: HeckeSym, R2: HeckeSym, **kw) -> HeckeSym:
    if R1.q != R2.q:
        raise MismatchedQ(f"q mismatch: {R1.q} vs {R2.q}")
    q = R1.q

    def entries(S):
        d = S.d
        return {(r // d, r % d, c // d, c % d): v for r, c, v in S.R.items()}

    ent = _glue(entries(R1), R1.d, entries(R2), R2.d, q)
    d = R1.d + R2.d
    M = ExactMatrix(d * d, d * d, {(k * d + l, i * d + j): v for (k, l, i, j), v in ent.items()})
    return HeckeSym(M, q, name=f"{R1.name}+{R2.name}", **kw)


# ---------------------------------------------------------------------------
# names used by the CLI: dj, superflip, odd, sum:dj1+odd


def family_from_spec(spec: str) -> RFamily:
    """``dj3``, ``odd``, or ``sum:dj1+odd`` (components folded left to right)."""
    spec = spec.strip()
    if spec.startswith("sum:"):
        parts = [p for p in spec[4:].split("+") if p]
        if len(parts) < 2:
            raise ParseError(f"a Hecke sum needs at least two summands: {spec!r}")
        fam = family_from_spec(parts[0])
        for p in parts[1:]:
            fam = sum_family(fam, family_from_spec(p))
        return fam
    if spec == "odd":
        return odd_family()
    if spec.startswith("dj") and spec[2:].isdigit():
        return dj_family(int(spec[2:]))
    raise ParseError(f"unknown family {spec!r}")


def load_family(path) -> RFamily:
    text = Path(path).read_text()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: not valid YAML/JSON: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise ParseError(f"{path}: expected fields 'dim' and 'entries'")
    d = doc["dim"]
    if not isinstance(d, int) or d < 1:
        raise ParseError(f"{path}: dim must be a positive integer")
    ent = {}
    for n, rec in enumerate(doc["entries"] or []):
        try:
            (k, l), (i, j) = rec["out"], rec["in"]
            value = rec["value"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path}: entry {n} needs out: [k,l], in: [i,j], value") from exc
        for x in (k, l, i, j):
            if not isinstance(x, int) or not 1 <= x <= d:
                raise ParseError(f"{path}: entry {n} index {x!r} outside 1..{d}")
        f = parse_ratfunc(str(value))
        ent[(k - 1, l - 1, i - 1, j - 1)] = ent.get((k - 1, l - 1, i - 1, j - 1), RatFunc.const(0)) + f
    excl = tuple(rat(str(x)) for x in doc.get("q_excluded") or [])
    return RFamily(Path(path).stem, d, {k: v for k, v in ent.items() if v.numer}, excl)


def load_rmatrix(path, q, **kw) -> HeckeSym:
    """Load an R-matrix file and specialize it at q; raises AxiomViolation on non-Hecke input."""
    return load_family(path).at(q, **kw)


def dump_family(fam: RFamily) -> str:
    """Serialize a family in the R-matrix file format."""
    entries = [
        {"out": [k + 1, l + 1], "in": [i + 1, j + 1], "value": str(f).replace(" ", "")}
        for (k, l, i, j), f in sorted(fam.entries.items())
    ]
    doc = {"dim": fam.d, "entries": entries}
    if fam.q_excluded:
        doc["q_excluded"] = [f"{x.numerator}/{x.denominator}" for x in fam.q_excluded]
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)


__all__ = [
    "RFamily", "AxiomViolation", "dj_family", "odd_family", "sum_family", "family_from_spec",
    "drinfeld_jimbo", "super_flip", "odd_point", "hecke_sum", "load_family", "load_rmatrix",
    "dump_family",
]
