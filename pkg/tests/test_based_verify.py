import pytest

from heckecells.based import (BasedAlgebra, BasedAlgebraError, iso_check,
                              iso_search)
from heckecells.convalg import build_conv_algebra, target_from_json
from heckecells.jring import j_cell_algebra
from heckecells.repring import connected_reductive_spec
from heckecells.verify import blocks_respected, conjecture_harness
from heckecells.weyl import build_root_datum

SL2_2PT = {"fusion": {"kind": "connected_reductive", "group": "SL2"},
           "set": {"points": 2}}


def small_algebra():
    # 2x2 matrix units as a based algebra
    basis = [(0, 0), (0, 1), (1, 0), (1, 1)]
    idx = {b: i for i, b in enumerate(basis)}
    sc = {}
    for a, (i, j) in enumerate(basis):
        for b, (k, l) in enumerate(basis):
            if j == k:
                sc[(a, b)] = {idx[(i, l)]: 1}
    return BasedAlgebra(
        name="M2", labels=tuple(f"E{i}{j}" for i, j in basis), sc=sc,
        complete={(a, b) for a in range(4) for b in range(4)},
        distinguished=frozenset({idx[(0, 0)], idx[(1, 1)]}),
        row_of=(0, 0, 1, 1), col_of=(0, 1, 0, 1),
        order_key=tuple(range(4)))


def test_iso_check_identity():
    alg = small_algebra()
    rep = iso_check(alg, alg, {i: i for i in range(4)})
    assert rep.verdict == "consistent"
    assert rep.checked_triples == 16


def test_iso_check_symmetric_under_inverse():
    alg = small_algebra()
    # swap the two points: a nontrivial automorphism
    f = {0: 3, 1: 2, 2: 1, 3: 0}
    rep = iso_check(alg, alg, f)
    assert rep.verdict == "consistent"
    finv = {v: k for k, v in f.items()}
    assert iso_check(alg, alg, finv).verdict == "consistent"


def test_iso_check_rejects_bad_partition():
    alg = small_algebra()
    with pytest.raises(BasedAlgebraError):
        iso_check(alg, alg, {0: 0, 1: 2, 2: 1, 3: 3})


def test_iso_check_refutes_off_diagonal_distinguished():
    alg = small_algebra()
    other = BasedAlgebra(
        name="M2-bad", labels=alg.labels, sc=alg.sc, complete=alg.complete,
        distinguished=frozenset({1, 2}), row_of=alg.row_of,
        col_of=alg.col_of, order_key=alg.order_key)
    rep = iso_check(alg, other, {i: i for i in range(4)})
    assert rep.verdict == "refuted-on-ball"


def test_iso_search_finds_self_iso():
    alg = small_algebra()
    rep = iso_search(alg, alg)
    assert rep.verdict == "consistent"
    rep2 = iso_search(alg, alg)
    assert rep.to_json() == rep2.to_json()  # deterministic


def test_iso_search_exhausts_on_size_mismatch():
    sl2 = connected_reductive_spec("SL2")
    a2 = build_conv_algebra(sl2, 2, 2)
    a3 = build_conv_algebra(sl2, 3, 2)
    rep = iso_search(a2, a3)
    assert rep.verdict == "exhausted"


def test_big_cell_vs_m2_exact_sizes(a1_tables_ext):
    ct = a1_tables_ext
    side_j = j_cell_algebra(ct, ct.lowest_cell())
    _, side_k = target_from_json(SL2_2PT, 11)  # 48 = 48, no trimming
    assert side_j.size == side_k.size == 48
    rep = iso_search(side_j, side_k, opposite=True, convention="opposite")
    assert rep.verdict == "consistent"
    assert len(rep.bijection) == 48
    # the found bijection realizes w -> E_ij V(l(w) - 1)
    lengths = {lab: len([c for c in lab.replace("pi", "")
                         .split("s") if c]) for lab in side_j.labels}
    for la, lb in rep.bijection:
        v_label = int(lb.split("V(")[1].rstrip(")"))
        assert v_label == lengths[la] - 1


def test_identity_cell_vs_trivial_point(a1_tables):
    ct = a1_tables
    e_cell = ct.two_sided_cell_of(0)
    side_j = j_cell_algebra(ct, e_cell)
    target = {"fusion": {"kind": "finite", "group": "trivial"},
              "set": {"orbits": [{"stabilizer": "full"}]}}
    _, side_k = target_from_json(target, 0)
    rep = iso_search(side_j, side_k)
    assert rep.verdict == "consistent"
    assert rep.bijection == [("e", "O0:triv")]


def test_harness_consistent(a1_tables_ext):
    d = build_root_datum("A1", "sc")
    rep = conjecture_harness(d, "lowest", SL2_2PT, 12, 6,
                             tables=a1_tables_ext)
    assert rep.verdict == "consistent"
    assert rep.convention == "opposite"
    assert rep.meta["truncated_to"] == 28
    assert len(rep.bijection) == 28
    side_j = j_cell_algebra(a1_tables_ext, a1_tables_ext.lowest_cell())
    _, side_k = target_from_json(SL2_2PT, 6)
    assert blocks_respected(side_j, side_k, rep)


def test_harness_determinism(a1_tables_ext):
    d = build_root_datum("A1", "sc")
    r1 = conjecture_harness(d, "lowest", SL2_2PT, 12, 6, tables=a1_tables_ext)
    r2 = conjecture_harness(d, "lowest", SL2_2PT, 12, 6, tables=a1_tables_ext)
    assert r1.to_json() == r2.to_json()


def test_harness_refuses_unstabilized():
    from heckecells.cells import UnstabilizedError, build_cell_tables
    d = build_root_datum("A1", "sc")
    small = build_cell_tables(d, 2, extended=True)
    with pytest.raises(UnstabilizedError):
        conjecture_harness(d, "lowest", SL2_2PT, 2, 2, tables=small)


def test_truncate_keeps_exact_rows():
    alg = small_algebra()
    cut = alg.truncate([0, 1, 3])
    assert cut.size == 3
    # pairs whose product leaves the kept set become incomplete
    kept_labels = set(cut.labels)
    for (i, j) in cut.complete:
        for k in cut.sc.get((i, j), {}):
            assert cut.labels[k] in kept_labels
