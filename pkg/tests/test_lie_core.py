from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz_cohomology.lie_core import (
    AntisymmetryViolation,
    GModule,
    InvalidDimension,
    JacobiViolation,
    LieAlgebra,
    ModuleAxiomViolation,
    ParseError,
    algebra_to_dict,
    build_h_n,
    build_j_n,
    build_sl_2,
    build_so_n,
    builtin_algebra,
    dual,
    dump_algebra,
    exterior_power,
    j_part,
    load_algebra,
    make_module,
    quotient_algebra,
    restrict,
    so_part,
    tensor,
)

ALGEBRAS = [build_h_n(3), build_h_n(4), build_so_n(4), build_sl_2(), build_j_n(2)]


def _vec(alg, label, value=1):
    return {alg.index(label): Fraction(value)}


@pytest.mark.parametrize("n,dim", [(2, 3), (3, 6), (4, 10), (5, 15)])
def test_h_n_dimension(n, dim):
    h = build_h_n(n)
    assert h.dim == dim
    assert len(h.subalgebras["so"]) == n * (n - 1) // 2
    assert len(h.subalgebras["J"]) == n


def test_rotation_translation_bracket():
    h = build_h_n(3)
    # [a_12, d_1] = -d_2 for a_12 = x1 d2 - x2 d1
    assert h.bracket(h.index("a_1_2"), h.index("d_1")) == _vec(h, "d_2", -1)
    assert h.bracket(h.index("a_1_2"), h.index("d_3")) == {}


def test_so3_brackets_close():
    so = build_so_n(3)
    a12, a13, a23 = (so.index(x) for x in ("a_1_2", "a_1_3", "a_2_3"))
    assert so.bracket(a12, a23) == {a13: 1}


def test_sl2_brackets():
    s = build_sl_2()
    e, f, h = (s.index(x) for x in "efh")
    assert s.bracket(e, f) == {h: 1}
    assert s.bracket(h, e) == {e: 2}
    assert s.bracket(h, f) == {f: -2}


def test_ideal_and_quotient():
    h = build_h_n(3)
    assert j_part(h).is_ideal()
    assert not so_part(h).is_ideal()
    q = quotient_algebra(j_part(h))
    assert q.dim == 3
    assert not q.is_abelian()


def test_builtin_lookup():
    assert builtin_algebra("h_n", 4).dim == 10
    assert builtin_algebra("sl_2").dim == 3
    with pytest.raises(InvalidDimension):
        builtin_algebra("h_n")
    with pytest.raises(InvalidDimension):
        build_h_n(1)


def test_jacobi_violation_detected():
    with pytest.raises(JacobiViolation):
        LieAlgebra(["a", "b", "c"], {(0, 1): {2: 1}, (0, 2): {0: 1}})


def test_antisymmetry_violation_detected():
    with pytest.raises(AntisymmetryViolation):
        LieAlgebra(["a", "b"], {(0, 1): {0: 1}, (1, 0): {0: 1}})
    with pytest.raises(AntisymmetryViolation):
        LieAlgebra(["a", "b"], {(0, 0): {1: 1}})


def test_json_round_trip():
    for alg in ALGEBRAS:
        buf = io.StringIO(dump_algebra(alg))
        back = load_algebra(buf)
        assert algebra_to_dict(back) == algebra_to_dict(alg)


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    json.dumps({"labels": ["a", "b"], "dim": 3}),
    json.dumps({"labels": ["a", "b"], "brackets": [{"i": 1, "j": 0, "coeffs": []}]}),
    json.dumps({"labels": ["a", "b"], "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 5, "value": "1"}]}]}),
    json.dumps({"labels": ["a", "b"], "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 0, "value": 1.5}]}]}),
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        load_algebra(io.StringIO(text))


def test_bad_module_rejected():
    s = build_sl_2()
    # scalar action 1 on e, 0 elsewhere breaks [h, e] = 2e
    with pytest.raises(ModuleAxiomViolation):
        GModule(s, 1, [{(0, 0): 1}, {}, {}])


def test_coadjoint_is_minus_transpose():
    h = build_h_n(3)
    adj, co = make_module(h, "adjoint"), make_module(h, "coadjoint")
    for i in range(h.dim):
        a = adj.action_matrix(i).to_dense()
        c = co.action_matrix(i).to_dense()
        assert all(c[r][s] == -a[s][r] for r in range(h.dim) for s in range(h.dim))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_jacobi_builtin(alg):
    alg.check_jacobi()


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_module_axioms(alg):
    for kind in ("adjoint", "coadjoint", "trivial"):
        make_module(alg, kind).check_axiom()
    adj = make_module(alg, "adjoint")
    dual(adj).check_axiom()
    exterior_power(adj, 2).check_axiom()
    tensor(adj, make_module(alg, "coadjoint")).check_axiom()


def test_restricted_module():
    h = build_h_n(3)
    sub = restrict(make_module(h, "adjoint"), so_part(h))
    sub.check_axiom()
    assert sub.dim == 6


coeffs = st.dictionaries(st.integers(0, 9), st.integers(-3, 3), max_size=4)


@given(st.sampled_from(range(len(ALGEBRAS))), coeffs, coeffs, coeffs)
def test_jacobi_on_random_elements(which, x, y, z):
    alg = ALGEBRAS[which]
    x, y, z = ({k: v for k, v in w.items() if k < alg.dim} for w in (x, y, z))
    br = alg.bracket_vectors
    total: dict = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        for k, v in br(a, br(b, c)).items():
            total[k] = total.get(k, 0) + v
    assert not any(total.values())


@given(st.sampled_from(range(len(ALGEBRAS))), st.integers(0, 9), st.integers(0, 9), coeffs)
def test_module_axiom_on_random_vectors(which, i, j, v):
    alg = ALGEBRAS[which]
    i, j = i % alg.dim, j % alg.dim
    V = make_module(alg, "coadjoint")
    v = {k: val for k, val in v.items() if k < V.dim}
    lhs: dict = {}
    for sign, (p, q) in ((1, (i, j)), (-1, (j, i))):
        for k, val in V.act(p, V.act(q, v)).items():
            lhs[k] = lhs.get(k, 0) + sign * val
    rhs: dict = {}
    for m, c in alg.bracket(i, j).items():
        for k, val in V.act(m, v).items():
            rhs[k] = rhs.get(k, 0) + c * val
    keys = set(lhs) | set(rhs)
    assert all(lhs.get(k, 0) == rhs.get(k, 0) for k in keys)
