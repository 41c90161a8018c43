import pytest
from gmpy2 import mpq

from hecke_koszul.errors import AxiomViolation, MismatchedQ, ParseError, PoleAtQ
from hecke_koszul.exact import ExactMatrix, rat
from hecke_koszul.hecke import check_hecke
from hecke_koszul.qspaces import birank
from hecke_koszul.zoo import (dj_family, drinfeld_jimbo, dump_family, family_from_spec, hecke_sum,
                              load_family, load_rmatrix, odd_point, super_flip)


def test_dj1_is_q():
    assert drinfeld_jimbo(1, 7).R == ExactMatrix.from_dense([[7]])


def test_dj2_mixed_block_eigenvalues():
    # the block on span{x1 x2, x2 x1} has characteristic polynomial (t - q)(t + 1)
    q = mpq(3)
    R = drinfeld_jimbo(2, q).R
    a, b, c, e = R[1, 1], R[1, 2], R[2, 1], R[2, 2]
    assert a + e == q - 1 and a * e - b * c == -q


@pytest.mark.parametrize("N", [2, 3, 4])
@pytest.mark.parametrize("q", ["2", "3", "1/2"])
def test_dj_is_hecke(N, q):
    assert drinfeld_jimbo(N, rat(q)).report.ok


def test_super_flip_entries():
    assert super_flip(1, 0).R == ExactMatrix.identity(1)
    R = super_flip(1, 1).R
    assert R[3, 3] == -1 and R[1, 2] == 1 and R[2, 1] == 1 and R[0, 0] == 1


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4) if m + n])
def test_super_flip_squares_to_one(m, n):
    R = super_flip(m, n).R
    assert R @ R == ExactMatrix.identity(R.rows)


def test_odd_point_projectors():
    from hecke_koszul.hecke import antisymmetrizer, symmetrizer
    sym = odd_point(4)
    assert symmetrizer(sym, 2).matrix.is_zero()
    assert antisymmetrizer(sym, 2).matrix == ExactMatrix.identity(1)


def test_hecke_sum_mismatched_q():
    with pytest.raises(MismatchedQ):
        hecke_sum(drinfeld_jimbo(1, 2), odd_point(3))


def test_hecke_sum_biranks_add():
    q = mpq(5, 2)
    assert birank(hecke_sum(drinfeld_jimbo(2, q), odd_point(q))) == (2, 1)
    s = hecke_sum(hecke_sum(drinfeld_jimbo(1, q), odd_point(q)), odd_point(q))
    assert birank(s) == (1, 2)


def test_hecke_sum_at_q_one_is_super_flip_like():
    s = hecke_sum(super_flip(1, 0), odd_point(1))
    assert s.R == super_flip(1, 1).R


def test_family_spec_matches_constructor():
    fam = family_from_spec("sum:dj1+odd")
    q = mpq(7, 3)
    assert fam.at(q).R == hecke_sum(drinfeld_jimbo(1, q), odd_point(q)).R
    with pytest.raises(ParseError):
        family_from_spec("gl3")


def test_file_round_trip(tmp_path):
    p = tmp_path / "dj2.yaml"
    p.write_text(dump_family(dj_family(2)))
    for q in ("2", "1/3"):
        assert load_rmatrix(p, rat(q)).R == drinfeld_jimbo(2, rat(q)).R


def test_json_file_accepted(tmp_path):
    p = tmp_path / "odd.json"
    p.write_text('{"dim": 1, "entries": [{"out": [1, 1], "in": [1, 1], "value": "-1"}]}')
    assert load_rmatrix(p, 3).R == odd_point(3).R


@pytest.mark.parametrize("text", [
    "dim: 2\n",
    "dim: 0\nentries: []\n",
    "dim: 2\nentries:\n  - {out: [1, 3], in: [1, 1], value: q}\n",
    "dim: 2\nentries:\n  - {out: [1], in: [1, 1], value: q}\n",
    "dim: 2\nentries:\n  - {out: [1, 1], in: [1, 1], value: 'q^^2'}\n",
    "dim: [2\n",
])
def test_malformed_files(tmp_path, text):
    p = tmp_path / "bad.yaml"
    p.write_text(text)
    with pytest.raises(ParseError):
        load_family(p)


def test_non_hecke_file(tmp_path):
    p = tmp_path / "bad.yaml"
    p.write_text("dim: 2\nentries:\n"
                 "  - {out: [1, 1], in: [1, 1], value: q}\n"
                 "  - {out: [2, 2], in: [2, 2], value: q}\n"
                 "  - {out: [2, 1], in: [1, 2], value: '1'}\n"
                 "  - {out: [1, 2], in: [2, 1], value: '1'}\n"
                 "  - {out: [2, 1], in: [2, 1], value: q-1}\n")
    with pytest.raises(AxiomViolation) as exc:
        load_rmatrix(p, 2)
    assert exc.value.report.failed()
    assert exc.value.report.witnesses


def test_pole_in_file(tmp_path):
    p = tmp_path / "pole.yaml"
    p.write_text("dim: 1\nentries:\n  - {out: [1, 1], in: [1, 1], value: '(q^3-q)/(q^2-1)'}\n")
    # the removable singularity at q = 1 cancels; a genuine pole does not
    assert load_rmatrix(p, 1).R == ExactMatrix.identity(1)
    p.write_text("dim: 1\nentries:\n  - {out: [1, 1], in: [1, 1], value: '1/(q-2)'}\n")
    with pytest.raises(PoleAtQ):
        load_rmatrix(p, 2)


def test_excluded_q():
    with pytest.raises(ValueError):
        dj_family(2).at(-1)


def test_opposite_convention_loads_via_file(tmp_path):
    # mixed block with the (q-1) term on the other side is also Hecke
    fam = dj_family(2)
    flipped = {(i, j, k, l): f for (k, l, i, j), f in fam.entries.items()}
    p = tmp_path / "dj2t.yaml"
    p.write_text(dump_family(type(fam)("dj2t", 2, flipped)))
    sym = load_rmatrix(p, 3)
    assert sym.R == drinfeld_jimbo(2, 3).R.T
    assert check_hecke(sym.R, 3).ok
