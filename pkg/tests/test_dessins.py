import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lame_monodromy.dessins import (
    Passport,
    _compose,
    check_riemann_hurwitz,
    enumerate_dessins,
    export_graph,
    passport_for,
)
from lame_monodromy.geom import ClosureLimitError, InvalidInputError
from lame_monodromy.goldens import expected_passport, passport_table


def test_riemann_hurwitz_values():
    assert check_riemann_hurwitz(3, [[1, 1, 1], [3], [3]]) == 0
    assert check_riemann_hurwitz(18, [[2] * 9, [3] * 6, [8, 5, 5]]) == 1
    with pytest.raises(InvalidInputError):
        check_riemann_hurwitz(2, [[2], [2], [2]])  # parity-inconsistent
    with pytest.raises(InvalidInputError):
        check_riemann_hurwitz(4, [[2, 2], [3], [4]])  # fiber sums differ


def test_elliptic_passport_family_matches_reference():
    rows = passport_table()
    assert len(rows) == 1
    for k in range(3):
        n, signature, degree, genus, partitions = expected_passport(rows[0], k)
        got = passport_for(n, signature, "elliptic")
        assert len(got) == 1
        p = got[0]
        assert p.degree == degree == 60 * k + 18
        assert p.genus == genus == 1
        assert p.partitions == tuple(
            tuple(sorted(partitions[key], reverse=True))
            for key in ("0", "1", "infinity")
        )


@pytest.mark.parametrize(
    "n,signature,degree,parts",
    [
        (F(1, 6), (2, 3, 4), 2, ((1, 1), (2,), (2,))),
        (F(1, 4), (2, 3, 4), 3, ((1, 1, 1), (3,), (3,))),
        (F(1, 10), (2, 3, 5), 3, ((1, 1, 1), (3,), (3,))),
        (F(1, 6), (2, 3, 5), 5, ((2, 1, 1, 1), (3, 2), (5,))),
        (F(3, 10), (2, 3, 5), 9, ((2, 2, 2, 1, 1, 1), (3, 3, 3), (5, 4))),
    ],
)
def test_algebraic_passports(n, signature, degree, parts):
    got = passport_for(n, signature, "algebraic")
    assert any(p.degree == degree and p.partitions == parts for p in got)
    for p in got:
        assert p.genus == 0


def test_passport_for_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        passport_for(F(1, 4), (2, 2, 4), "algebraic")
    with pytest.raises(InvalidInputError):
        passport_for(F(1, 4), (2, 3, 4), "parabolic")
    diag = []
    assert passport_for(F(1, 7), (2, 3, 4), "algebraic", diag) == []
    assert diag  # non-integral degree is reported


@given(st.integers(0, 4))
@settings(max_examples=5, deadline=None)
def test_every_passport_passes_riemann_hurwitz(k):
    n = F(3, 10) + k
    for p in passport_for(n, (2, 3, 5), "elliptic"):
        assert check_riemann_hurwitz(p.degree, p.partitions) == p.genus


def test_enumerate_unique_classes():
    p = passport_for(F(1, 4), (2, 3, 4), "algebraic")[0]
    maps = enumerate_dessins(p)
    assert len(maps) == 1
    m = maps[0]
    d = p.degree
    identity = tuple(range(d))
    # defining relation of a constellation
    assert _compose(_compose(m.sigma0, m.sigma1), m.sigma_inf) == identity


def test_enumerate_three_classes_at_degree_ten():
    p = Passport(
        signature=(2, 3, 4), kind="algebraic", degree=10,
        partitions=((2, 2, 2, 2, 1, 1), (4, 3, 3), (4, 4, 2)), genus=0,
    )
    assert len(enumerate_dessins(p)) == 3


def test_enumerate_respects_cap():
    p = passport_for(F(3, 10), (2, 3, 5), "elliptic")[0]  # degree 18
    with pytest.raises(ClosureLimitError):
        enumerate_dessins(p, cap=12)


def test_export_graph_round_trip():
    p = passport_for(F(1, 6), (2, 3, 5), "algebraic")[0]
    m = enumerate_dessins(p)[0]
    data = json.loads(json.dumps(export_graph(m)))
    assert data["degree"] == p.degree
    assert sorted(len(c) for c in data["black_vertices"]) == sorted(p.partitions[0])
    assert sorted(len(c) for c in data["white_vertices"]) == sorted(p.partitions[1])
    assert sorted(len(c) for c in data["faces"]) == sorted(p.partitions[2])
    dot = export_graph(m, "dot")
    assert dot.startswith("graph dessin {")
    assert dot.count("--") == p.degree
