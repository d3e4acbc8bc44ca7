from math import comb

import pytest

from mtg.cli import parse_family_spec
from mtg.graphs import FamilySpec, SpecError
from mtg.theta import (
    ThetaResult,
    UncoveredFamilyError,
    m_from_count,
    qp_values,
    seq_value,
    theta_formula,
)


def formula(text: str) -> ThetaResult:
    return theta_formula(parse_family_spec(text))


def brute_q(m):
    # q_m counted directly: m pure triples, C(m,3) mixed ones, plus one
    return len([(i, i, i) for i in range(m)]) + len([1 for i in range(m) for j in range(i + 1, m)
                                                     for l in range(j + 1, m)]) + 1


def test_sequence_examples():
    v = qp_values(1)
    assert (v.q, v.p) == (2, 3)
    v = qp_values(3)
    assert (v.q, v.p, v.s, v.t) == (5, 6, 5, 4)
    v = qp_values(0)
    assert (v.q, v.p) == (1, 2)
    with pytest.raises(ValueError):
        seq_value("x", 2)


def test_m_from_count_examples():
    assert m_from_count(2, "q") == (2, True)
    assert m_from_count(7, "q") == (4, False)
    assert m_from_count(16, "q") == (6, True)
    with pytest.raises(ValueError):
        m_from_count(1, "p")


@pytest.mark.parametrize("name", ["q", "p", "s", "t"])
def test_m_from_count_brackets(name):
    for n in range(seq_value(name, 0), 200):
        m, boundary = m_from_count(n, name)
        assert seq_value(name, m - 1) <= n <= seq_value(name, m) - 1
        assert boundary == (n == seq_value(name, m - 1))


def test_formula_examples():
    assert formula("cluster:0,0,2").value == 3
    assert formula("cluster:3,2,0").value == 2
    assert formula("cluster:0,0,10").value == 10
    assert formula("multipartite:0,0,3").value == 4
    assert formula("cluster:0,0,0,2").value == 3
    assert formula("tent:7").value == 3


def test_cluster_triangle_values():
    got = [formula(f"cluster:0,0,{n}").value for n in range(2, 17)]
    assert got == [3, 5, 6, 7, 8, 8, 8, 9, 10, 10, 10, 10, 10, 10, 11]


def test_cluster_triangle_scan():
    q = [brute_q(m) for m in range(12)]
    assert q == [m + comb(m, 3) + 1 for m in range(12)]
    prev = 0
    for n in range(2, 61):
        # piecewise definition evaluated by scanning for the bracket
        m = next(m for m in range(1, 12) if q[m - 1] <= n <= q[m] - 1)
        expected = 2 * m - 1 if n == q[m - 1] else 2 * m
        res = formula(f"cluster:0,0,{n}")
        assert res.value == expected and res.boundary == (n == q[m - 1])
        assert res.value >= prev
        prev = res.value


def test_paths_and_small_families():
    assert [formula(f"path:{n}").value for n in range(1, 7)] == [0, 1, 1, 2, 2, 2]
    assert formula("cycle:4").value == 2 and formula("cycle:3").value == 1
    assert formula("ladder:1").value == 1 and formula("ladder:5").value == 2
    assert [formula(f"tent:{n}").value for n in range(1, 6)] == [1, 1, 1, 3, 3]
    assert formula("complete:1").value == 0 and formula("complete:6").value == 1
    assert formula("cluster:0,3").value == 2 and formula("cluster:0,1").value == 1


def test_linear_forest_fallbacks():
    assert formula("lforest:3").value == 0
    assert formula("lforest:2,0,1").value == 1
    assert formula("lforest:0,0,0,1").value == 2
    assert formula("lforest:1,2").value == 2
    assert formula("union(path:2; path:3)").value == 2


def test_cluster_multipartite_consistency():
    for n1 in range(4):
        for n2 in range(4):
            for n3 in range(12):
                if n1 + n2 + n3 < 2:
                    continue
                a = formula(f"cluster:{n1},{n2},{n3}")
                b = formula(f"multipartite:{n1},{n2},{n3}")
                if a.exact and b.exact:
                    assert abs(a.value - b.value) <= 1


def test_complement_resolution():
    assert formula("complement(cluster:0,0,2)") == formula("multipartite:0,0,2")
    assert formula("complement(complement(tent:5))") == formula("tent:5")
    res = formula("complement(path:4)")
    assert (res.lo, res.hi) == (2, 3)


def test_general_clusters():
    assert formula("cluster:0,0,3,1").value == 6
    assert formula("cluster:1,0,1,0,1").value == 3
    res = formula("cluster:0,0,1,5")
    assert not res.exact and res.source == "bounds only"
    assert formula("cluster:1,1,0,1").value == 2


def test_errors():
    with pytest.raises(UncoveredFamilyError):
        formula("cycle:6")
    with pytest.raises(SpecError):
        theta_formula(FamilySpec("cluster", (0, 0, 0)))
    with pytest.raises(ValueError):
        formula("cluster:0,0,1,5").value
