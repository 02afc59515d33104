"""Tables, axioms, orbits, constructors, enumeration."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandlekit.quandles import (
    MalformedTableError,
    QuandleTable,
    are_isomorphic,
    conjugation_quandle,
    dihedral_quandle,
    dual,
    enumerate_quandles,
    load_quandle_file,
    orbits,
    rows_from_doc,
    subquandle_on_orbit,
    trivial_quandle,
    validate_quandle,
)

D3_ROWS = [[0, 2, 1], [2, 1, 0], [1, 0, 2]]


def brute_force_is_quandle(rows):
    """Oracle: check the axioms straight from their statements."""
    n = len(rows)
    if any(rows[a][a] != a for a in range(n)):
        return False
    for b in range(n):
        if sorted(rows[a][b] for a in range(n)) != list(range(n)):
            return False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rows[rows[a][b]][c] != rows[rows[a][c]][rows[b][c]]:
                    return False
    return True


def brute_force_isomorphism(t1, t2):
    """Oracle: search all relabelings directly."""
    n = len(t1)
    if n != len(t2):
        return None
    for perm in itertools.permutations(range(n)):
        if all(perm[t1[a][b]] == t2[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            return perm
    return None


def test_d3_is_a_quandle():
    report = validate_quandle(D3_ROWS)
    assert report.valid
    assert report.violations == ()


def test_dihedral_matches_frozen_d3_rows():
    assert [list(r) for r in dihedral_quandle(3).table] == D3_ROWS


def test_axiom_violations_are_reported_with_witnesses():
    rows = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]  # columns not bijective
    report = validate_quandle(rows)
    assert not report.valid
    assert report.for_axiom(2)
    # idempotence violation
    rows = [[1, 1], [0, 0]]
    report = validate_quandle(rows)
    assert any(v.axiom == 1 for v in report.violations)


def test_structural_errors_raise_not_report():
    with pytest.raises(MalformedTableError):
        validate_quandle([[0, 1], [1]])
    with pytest.raises(MalformedTableError):
        validate_quandle([[0, 2], [2, 1]])  # entry out of range
    with pytest.raises(MalformedTableError):
        validate_quandle([])


def test_dual_undoes_the_operation():
    for q in (dihedral_quandle(5), trivial_quandle(4)):
        d = dual(q)
        assert validate_quandle([list(r) for r in d.table]).valid
        for a in range(q.n):
            for b in range(q.n):
                assert d.op(q.op(a, b), b) == a
                assert q.op(d.op(a, b), b) == a
        assert dual(d).table == q.table


def test_trivial_and_dihedral_families_are_quandles():
    for n in range(1, 8):
        assert brute_force_is_quandle([list(r) for r in trivial_quandle(n).table])
        assert brute_force_is_quandle([list(r) for r in dihedral_quandle(n).table])


def _symmetric_group_table(k):
    elems = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(elems)}
    # product g.h = apply g first, then h
    table = [[index[tuple(h[g[i]] for i in range(k))] for h in elems] for g in elems]
    return table, elems


def test_conjugation_quandle_of_s3_transpositions_is_dihedral():
    table, elems = _symmetric_group_table(3)
    rep = elems.index((1, 0, 2))  # a transposition
    q, cls = conjugation_quandle(table, rep)
    assert q.n == 3
    assert len(cls) == 3
    # independent relabeling search against D3
    assert brute_force_isomorphism([list(r) for r in q.table], D3_ROWS) is not None
    assert are_isomorphic(q, dihedral_quandle(3))


def test_conjugation_quandle_rejects_non_groups():
    with pytest.raises(ValueError):
        conjugation_quandle([[0, 1], [1, 1]], 0)  # 1 has no inverse
    with pytest.raises(ValueError):
        conjugation_quandle([[0, 0], [1, 1]], 0)  # no identity element
    bad_assoc = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(ValueError):
        conjugation_quandle(bad_assoc, 0)


def test_orbits_dihedral_even_odd_split():
    part = orbits(dihedral_quandle(4))
    assert part.blocks == ((0, 2), (1, 3))
    assert part.orbit_of == (0, 1, 0, 1)
    assert not part.connected
    assert orbits(dihedral_quandle(3)).connected
    assert orbits(trivial_quandle(3)).count == 3


def test_orbit_subquandle_is_closed_and_valid():
    q = dihedral_quandle(6)
    sub, emb = subquandle_on_orbit(q, 0)
    assert emb == (0, 2, 4)
    assert brute_force_is_quandle([list(r) for r in sub.table])
    for i, x in enumerate(emb):
        for j, y in enumerate(emb):
            assert emb[sub.op(i, j)] == q.op(x, y)


def exhaustive_quandles(n):
    """Oracle: filter every function table (only feasible for n <= 3)."""
    out = []
    for values in itertools.product(range(n), repeat=n * n):
        rows = [list(values[i * n:(i + 1) * n]) for i in range(n)]
        if brute_force_is_quandle(rows):
            out.append(tuple(tuple(r) for r in rows))
    return sorted(out)


def test_enumeration_matches_exhaustive_scan_small_orders():
    for n in (1, 2, 3):
        assert [q.table for q in enumerate_quandles(n)] == exhaustive_quandles(n)


def test_enumeration_iso_class_counts():
    assert len(enumerate_quandles(1, dedupe_iso=True)) == 1
    assert len(enumerate_quandles(2, dedupe_iso=True)) == 1
    assert len(enumerate_quandles(3, dedupe_iso=True)) == 3
    assert len(enumerate_quandles(4, dedupe_iso=True)) == 7


def test_enumeration_order_4_all_valid_and_deduped_consistently():
    raw = enumerate_quandles(4)
    assert all(brute_force_is_quandle([list(r) for r in q.table]) for q in raw)
    classes = enumerate_quandles(4, dedupe_iso=True)
    for q in classes:
        assert any(are_isomorphic(q, other) for other in raw)
    # every raw table is isomorphic to exactly one representative
    for q in raw[:20]:
        assert sum(are_isomorphic(q, rep) for rep in classes) == 1


def test_enumeration_rejects_out_of_range_orders():
    with pytest.raises(ValueError):
        enumerate_quandles(0)
    with pytest.raises(ValueError):
        enumerate_quandles(6)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=9))
def test_dihedral_odd_orders_are_connected(n):
    part = orbits(dihedral_quandle(n))
    if n % 2 == 1:
        assert part.connected
    else:
        assert part.count == 2 or n == 2


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=4), st.randoms(use_true_random=False))
def test_relabeling_preserves_validity_and_iso_class(n, rng):
    q = dihedral_quandle(n)
    perm = list(range(n))
    rng.shuffle(perm)
    relabeled = q.relabeled(perm)
    assert brute_force_is_quandle([list(r) for r in relabeled.table])
    assert are_isomorphic(q, relabeled)


def test_table_documents_round_trip(tmp_path):
    rows, labels = rows_from_doc({"n": 3, "table": D3_ROWS, "labels": ["a", "b", "c"]})
    assert rows == tuple(tuple(r) for r in D3_ROWS)
    assert labels == ("a", "b", "c")
    with pytest.raises(MalformedTableError):
        rows_from_doc({"n": 4, "table": D3_ROWS})
    with pytest.raises(MalformedTableError):
        rows_from_doc({"table": D3_ROWS, "labels": ["a"]})
    p = tmp_path / "q.json"
    p.write_text('{"n": 3, "table": [[0,2,1],[2,1,0],[1,0,2]]}')
    rows, labels = load_quandle_file(p)
    assert rows == tuple(tuple(r) for r in D3_ROWS) and labels is None
    p.write_text("{not json")
    with pytest.raises(MalformedTableError):
        load_quandle_file(p)


def test_involutory_flag():
    assert dihedral_quandle(5).is_involutory
    assert trivial_quandle(3).is_involutory
    gf4 = QuandleTable.from_rows([[0, 3, 1, 2], [2, 1, 3, 0], [3, 0, 2, 1], [1, 2, 0, 3]])
    assert not gf4.is_involutory
