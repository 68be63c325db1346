"""Hypergraph construction and kernel equivalence tests."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypershard import _core, hypergraph as hg_mod, minterm as mt
from hypershard._core import _kernels_py
from hypershard.minterm import AccessList

from .oracles import naive_cut_weight
from .test_minterm import fixture_schema_workload


def fixture_hypergraph():
    schema, workload = fixture_schema_workload()
    minterms = mt.enumerate_minterms(schema, workload)
    access = mt.compute_access(schema, minterms, workload)
    return hg_mod.build_hypergraph(minterms, access), access


def test_build_fixture():
    hg, access = fixture_hypergraph()
    assert hg.num_vertices == 6
    assert hg.size_weights == [3, 8, 60, 180, 188, 563]
    assert hg.access_weights == [3, 1, 3, 3, 2, 1]
    assert hg.edges == [
        ((0, 1, 2, 3, 4, 5), 1),
        ((0, 2, 3, 4), 1),
        ((2, 3), 1),
    ]
    assert hg.singleton_edge_count == 1  # t2 touches one group
    assert sum(w for _, w in hg.edges) + hg.singleton_edge_count == 4


def test_duplicate_access_sets_merge():
    base = AccessList(
        txn_accesses=[("a", (0, 1)), ("b", (0, 1)), ("c", (1, 2)), ("d", (2,)), ("e", ())],
        counts={0: 2, 1: 3, 2: 2},
        full_scan_statements=0,
    )
    minterms = [mt.MinTerm(i, "r", (), (), 10) for i in range(3)]
    hg = hg_mod.build_hypergraph(minterms, base)
    assert hg.edges == [((0, 1), 2), ((1, 2), 1)]
    # empty and single-group transactions both count as intrinsically local
    assert hg.singleton_edge_count == 2
    assert sum(w for _, w in hg.edges) + hg.singleton_edge_count == 5


def test_dense_id_check():
    minterms = [mt.MinTerm(5, "r", (), (), 10)]
    with pytest.raises(ValueError):
        hg_mod.build_hypergraph(minterms, AccessList([], {5: 0}, 0))


def test_cut_weight_fixture():
    hg, _ = fixture_hypergraph()
    assert hg.cut_weight([0] * 6) == 0
    # splitting {2,3} away cuts the 6-group edge and the 4-group edge
    assert hg.cut_weight([0, 0, 1, 1, 0, 0]) == 2
    # isolating vertex 1 cuts only the full edge
    assert hg.cut_weight([0, 1, 0, 0, 0, 0]) == 1
    # {2,3} stay together in part 2, so only the two wider edges are cut
    assert hg.cut_weight([0, 1, 2, 2, 0, 1]) == 2


def test_part_loads_and_incident_cut():
    hg, _ = fixture_hypergraph()
    size, acc = hg.part_loads([0, 0, 1, 1, 0, 0], 2)
    assert size == [3 + 8 + 188 + 563, 60 + 180]
    assert acc == [3 + 1 + 2 + 1, 3 + 3]
    inc = hg.incident_cut_per_part([0, 0, 1, 1, 0, 0], 2)
    assert inc == [2, 2]  # both cut edges touch both parts


def test_empty_edge_list():
    minterms = [mt.MinTerm(0, "r", (), (), 4), mt.MinTerm(1, "r", (), (), 6)]
    access = AccessList([("a", (0,)), ("b", (1,))], {0: 1, 1: 1}, 0)
    hg = hg_mod.build_hypergraph(minterms, access)
    assert hg.edges == []
    assert hg.singleton_edge_count == 2
    assert hg.cut_weight([0, 1]) == 0


def test_dump_text_frozen():
    hg, _ = fixture_hypergraph()
    text = hg_mod.dump_text(hg)
    lines = text.splitlines()
    assert lines[0] == "3 6"
    assert lines[1] == "1 0 1 2 3 4 5"
    assert lines[2] == "1 0 2 3 4"
    assert lines[3] == "1 2 3"
    assert lines[4] == "3 3"  # vertex 0: size access
    assert len(lines) == 1 + 3 + 6


# ---------------------------------------------------------------------------
# kernel equivalence and oracle agreement
# ---------------------------------------------------------------------------


@st.composite
def random_instance(draw):
    n = draw(st.integers(min_value=2, max_value=9))
    n_edges = draw(st.integers(min_value=0, max_value=8))
    edges = []
    for _ in range(n_edges):
        size = draw(st.integers(min_value=2, max_value=min(4, n)))
        vs = tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=size, max_size=size))))
        w = draw(st.integers(min_value=1, max_value=9))
        edges.append((vs, w))
    vsize = [draw(st.integers(min_value=0, max_value=20)) for _ in range(n)]
    vacc = [draw(st.integers(min_value=0, max_value=20)) for _ in range(n)]
    k = draw(st.integers(min_value=2, max_value=3))
    parts = [draw(st.integers(0, k - 1)) for _ in range(n)]
    return edges, vsize, vacc, k, parts


def to_csr(edges, vsize, vacc):
    eptr = np.zeros(len(edges) + 1, dtype=np.int64)
    eind = np.zeros(sum(len(vs) for vs, _ in edges), dtype=np.int64)
    ew = np.zeros(len(edges), dtype=np.int64)
    pos = 0
    for e, (vs, w) in enumerate(edges):
        ew[e] = w
        for v in vs:
            eind[pos] = v
            pos += 1
        eptr[e + 1] = pos
    return eptr, eind, ew, np.asarray(vsize, np.int64), np.asarray(vacc, np.int64)


@settings(max_examples=60, deadline=None)
@given(random_instance())
def test_cut_weight_matches_oracle(instance):
    edges, vsize, vacc, k, parts = instance
    eptr, eind, ew, _, _ = to_csr(edges, vsize, vacc)
    got = _core.cut_weight(eptr, eind, ew, np.asarray(parts, np.int64))
    assert got == naive_cut_weight(edges, parts)


@settings(max_examples=40, deadline=None)
@given(random_instance())
def test_backends_agree(instance):
    compiled = pytest.importorskip("hypershard._core._kernels")
    edges, vsize, vacc, k, parts = instance
    eptr, eind, ew, vs, va = to_csr(edges, vsize, vacc)
    cap_s = max(sum(vsize), 1)
    cap_a = max(sum(vacc), 1)
    p1 = np.asarray(parts, np.int64)
    p2 = p1.copy()
    cut1 = compiled.refine(eptr, eind, ew, vs, va, p1, k, cap_s, cap_a, 8)
    cut2 = _kernels_py.refine(eptr, eind, ew, vs, va, p2, k, cap_s, cap_a, 8)
    assert cut1 == cut2
    assert list(p1) == list(p2)
    b1 = compiled.brute_force(eptr, eind, ew, vs, va, k, cap_s, cap_a)
    b2 = _kernels_py.brute_force(eptr, eind, ew, vs, va, k, cap_s, cap_a)
    assert b1[0] == b2[0] and b1[1] == b2[1]
    if b1[2] is None:
        assert b2[2] is None
    else:
        assert list(b1[2]) == list(b2[2])


@settings(max_examples=40, deadline=None)
@given(random_instance())
def test_refine_never_increases_cut_and_respects_caps(instance):
    edges, vsize, vacc, k, parts = instance
    eptr, eind, ew, vs, va = to_csr(edges, vsize, vacc)
    p = np.asarray(parts, np.int64)
    before_cut = _core.cut_weight(eptr, eind, ew, p)
    cap_s = max(sum(vsize) // k + max(vsize, default=0), 1)
    cap_a = max(sum(vacc) // k + max(vacc, default=0), 1)

    def loads(arr):
        ls = [0] * k
        la = [0] * k
        for v in range(len(vsize)):
            ls[arr[v]] += vsize[v]
            la[arr[v]] += vacc[v]
        return ls, la

    ls0, la0 = loads(p)
    over0 = sum(max(0, x - cap_s) for x in ls0) + sum(max(0, x - cap_a) for x in la0)
    after_cut = _core.refine(eptr, eind, ew, vs, va, p, k, cap_s, cap_a, 8)
    assert after_cut == _core.cut_weight(eptr, eind, ew, p)
    assert after_cut <= before_cut
    ls1, la1 = loads(p)
    over1 = sum(max(0, x - cap_s) for x in ls1) + sum(max(0, x - cap_a) for x in la1)
    assert over1 <= over0


@settings(max_examples=25, deadline=None)
@given(random_instance())
def test_brute_force_matches_exhaustive_oracle(instance):
    from .oracles import exhaustive_min_cut

    edges, vsize, vacc, k, _parts = instance
    eptr, eind, ew, vs, va = to_csr(edges, vsize, vacc)
    cap_s = max(int(np.ceil(sum(vsize) / k * 1.3)), max(vsize, default=0))
    cap_a = max(int(np.ceil(sum(vacc) / k * 1.3)), max(vacc, default=0))
    bal, any_cut, parts = _core.brute_force(eptr, eind, ew, vs, va, k, cap_s, cap_a)
    obal, oany = exhaustive_min_cut(
        edges, list(zip(vsize, vacc)), k, cap_s, cap_a
    )
    assert any_cut == oany
    assert (bal if bal >= 0 else None) == obal
    if parts is not None:
        assert _core.cut_weight(eptr, eind, ew, parts) == bal
