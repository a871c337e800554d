from __future__ import annotations

import json

import pytest

from leibniz_cohomology.cochain_complexes import TensorCochain, leibniz_coboundary
from leibniz_cohomology.cohomology_engine import (
    Budget,
    ChainMap,
    ComplexHandle,
    NotACocycle,
    NotAChainMap,
    ResourceLimit,
    cohomology_dims,
    differential_rank,
    induced_map_rank,
    is_coboundary,
    is_cocycle,
    long_exact_sequence,
)
from leibniz_cohomology.exact_linalg import RankConfig, SparseRationalMatrix
from leibniz_cohomology.lie_core import build_h_n, build_j_n, build_sl_2, build_so_n, make_module

H3 = build_h_n(3)


def dims(handle, top, mode="exact"):
    return cohomology_dims(handle, top, mode).dims


def test_leibniz_h3_low_degrees():
    assert dims(ComplexHandle.leibniz(H3), 3) == [0, 1, 1, 1]


def test_leibniz_h3_ranks():
    # frozen from a dense SVD rank of operator-built matrices
    h = ComplexHandle.leibniz(H3)
    assert [differential_rank(h, k, "exact").rank for k in range(4)] == [6, 29, 186, 1109]


@pytest.mark.parametrize("kind,expected", [
    ("trivial", [1, 0, 0, 2, 0, 0, 1]),
    ("adjoint", [0, 1, 1, 0, 1, 1, 0]),
    ("coadjoint", [0, 1, 1, 0, 1, 1, 0]),
])
def test_lie_h3(kind, expected):
    assert dims(ComplexHandle.ce(H3, kind), 6) == expected


def test_coadjoint_via_homology_side():
    assert dims(ComplexHandle.homology(H3), 6) == [0, 1, 1, 0, 1, 1, 0]


@pytest.mark.parametrize("alg,expected", [
    (build_so_n(3), [1, 0, 0, 1]),
    (build_so_n(4), [1, 0, 0, 2, 0, 0, 1]),
    (build_sl_2(), [1, 0, 0, 1]),
])
def test_lie_trivial_compact(alg, expected):
    assert dims(ComplexHandle.ce(alg, "trivial"), len(expected) - 1) == expected


def test_abelian_leibniz_has_zero_differential():
    assert dims(ComplexHandle.leibniz(build_j_n(2)), 1) == [2, 4]


def test_relative_complexes():
    assert dims(ComplexHandle.cr(H3), 3) == [2, 0, 0, 1]
    assert dims(ComplexHandle.rel(H3), 2) == [0, 2, 2]


def test_k_min_window():
    report = cohomology_dims(ComplexHandle.leibniz(H3), 3, "exact", k_min=2)
    assert report.dims == [1, 1]
    assert [d.degree for d in report.degrees] == [2, 3]


def test_modular_matches_exact():
    for h, top in ((ComplexHandle.leibniz(H3), 3), (ComplexHandle.ce(H3, "trivial"), 6),
                   (ComplexHandle.rel(H3), 2), (ComplexHandle.cr(H3), 3)):
        assert dims(h, top, "modular") == dims(h, top, "exact")


def test_report_schema_and_determinism():
    h = ComplexHandle.leibniz(H3)
    a = cohomology_dims(h, 2, "exact").dumps()
    b = cohomology_dims(h, 2, "exact").dumps()
    assert a == b
    data = json.loads(a)
    assert set(data) == {"algebra", "n", "coefficients", "complex", "dims", "ranks", "exactness"}
    assert data["dims"] == {"0": 0, "1": 1, "2": 1}
    assert data["n"] == 3


def test_representatives_are_nontrivial_cocycles():
    h = ComplexHandle.ce(H3, "adjoint")
    report = cohomology_dims(h, 4, "exact", representatives=True)
    for deg in report.degrees:
        assert len(deg.representatives) == deg.dim
        for rep in deg.representatives:
            assert is_cocycle(rep, h)
            assert is_coboundary(rep, h)[0] is False


def test_coboundary_witness():
    adj = make_module(H3, "adjoint")
    h = ComplexHandle.leibniz(H3)
    g = TensorCochain(1, 6, 6, {((0,), 3): 1, ((4,), 1): 2})
    f = leibniz_coboundary(g, H3, adj)
    ok, w = is_coboundary(f, h)
    assert ok
    assert dict(leibniz_coboundary(w, H3, adj).items()) == dict(f.items())


def test_not_a_cocycle():
    h = ComplexHandle.leibniz(H3)
    f = TensorCochain(1, 6, 6, {((3,), 3): 1, ((0,), 3): 1})
    assert not is_cocycle(f, h)
    with pytest.raises(NotACocycle):
        is_coboundary(f, h)


def test_resource_limit():
    h = ComplexHandle.leibniz(H3)
    with pytest.raises(ResourceLimit) as err:
        cohomology_dims(h, 2, "exact", budget=Budget(exact_rows=100))
    assert err.value.required["rows"] == 216
    with pytest.raises(ResourceLimit):
        cohomology_dims(h, 2, "auto", budget=Budget(exact_rows=10, modular_rows=100))


def test_auto_switches_to_modular():
    h = ComplexHandle.leibniz(H3)
    report = cohomology_dims(h, 2, "auto", budget=Budget(exact_rows=100))
    assert report.dims == [0, 1, 1]
    assert report.degrees[1].rank_out.method == "modular"


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("LEIBNIZ_COH_EXACT_ROWS", "17")
    assert Budget.from_env().exact_rows == 17
    monkeypatch.setenv("LEIBNIZ_COH_PRIMES", "5")
    assert RankConfig.from_env().min_primes == 5


def test_induced_maps():
    cl = ComplexHandle.leibniz(H3)
    ce = ComplexHandle.ce(H3)
    assert [induced_map_rank(ChainMap.identity(cl), k) for k in range(4)] == [0, 1, 1, 1]
    assert [induced_map_rank(ChainMap.zero(ce, cl), k) for k in range(3)] == [0, 0, 0]
    # H^2_Lie -> HL^2 is an isomorphism of 1-dimensional spaces
    assert [induced_map_rank(ChainMap.skew_inclusion(ce, cl), k) for k in range(4)] == [0, 1, 1, 0]


def test_not_a_chain_map():
    cl = ComplexHandle.leibniz(H3)

    def doubled(k, cols):
        m = SparseRationalMatrix.from_entries(cl.dim(k), len(cols), [(int(c), j, 1) for j, c in enumerate(cols)])
        return m.scale(2) if k == 1 else m

    with pytest.raises(NotAChainMap):
        induced_map_rank(ChainMap(cl, cl, doubled), 1)


def test_lie_to_leibniz_sequence():
    report = long_exact_sequence("rel", H3, through=4, verify_lifts=True)
    assert report.exact
    assert len(report.nodes) == 14
    assert report.dims["B"] == {0: 0, 1: 1, 2: 1, 3: 1, 4: 1}
    assert report.dims["Q"][2] == 0
    assert report.maps["iota"][2] == 1
    assert report.lifts_checked > 0


def test_coadjoint_sequence():
    report = long_exact_sequence("coadjoint", H3, through=3)
    assert report.exact
    assert report.group("HR^0(g)") == 2
    assert report.group("HR^3(g)") == 1
    assert json.loads(report.dumps())["complex"] == "les:coadjoint"


def test_unknown_sequence():
    with pytest.raises(ValueError):
        long_exact_sequence("sideways", H3)
