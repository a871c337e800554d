"""Exact checks of the coboundary relations and invariances of the named cochains.

Three complexes are involved, all realized inside the cochains of ``h_n``:

* the Leibniz complex ``CL*(h_n; h_n)`` for the full extensions of I and rho;
* ``Hom(Lambda^k J_n, h_n)`` for Gamma and mu: since ``J_n`` is an abelian
  ideal, the Chevalley-Eilenberg coboundary of the zero extension,
  restricted to J-tuples, is the coboundary of that complex;
* ``Hom(h_n (x) Lambda^k J_n, F)`` with the dual ``d*`` of the homology
  differential, for the scalar elements.

Invariance is tested in the same module forms: the cochain action on the
full extension, restricted back to the generating support.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..cochain_complexes import (
    HomologyChain,
    WedgeCochain,
    ce_coboundary,
    g_action,
    homology_differential,
    invariant_subspace,
    leibniz_coboundary,
)
from ..lie_core import exterior_power, make_module, restrict, so_part, submodule, tensor
from .catalog import NamedCochain, NamedCochainCatalog, build_catalog

Sparse = dict[tuple[tuple[int, ...], int], Fraction]


@dataclass
class Check:
    name: str
    complex: str
    holds: bool
    expected: bool = True
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.holds == self.expected

    def to_json(self) -> dict:
        out = {"name": self.name, "complex": self.complex, "holds": self.holds,
               "expected": self.expected, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.detail)
        return out


@dataclass
class VerificationReport:
    kind: str
    n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# ---------------------------------------------------------------- helpers

def _first_difference(lhs: Sparse, rhs: Sparse):
    for key in sorted(set(lhs) | set(rhs)):
        if lhs.get(key, 0) != rhs.get(key, 0):
            return key
    return None


def _describe(cat: NamedCochainCatalog, key, lhs: Sparse, rhs: Sparse, adjoint: bool) -> dict:
    labels = cat.algebra.labels
    tup, t = key
    return {"tuple": [labels[x] for x in tup], "target": labels[t] if adjoint else "1",
            "lhs": str(lhs.get(key, 0)), "rhs": str(rhs.get(key, 0))}


def _scaled(f: Sparse, c) -> Sparse:
    return {k: c * v for k, v in f.items() if c * v}


def _compare(cat, name, complex_, lhs: Sparse, rhs: Sparse, adjoint: bool, **detail) -> Check:
    key = _first_difference(lhs, rhs)
    witness = None if key is None else _describe(cat, key, lhs, rhs, adjoint)
    return Check(name, complex_, key is None, True, witness, detail)


def _proportionality(lhs: Sparse, rhs: Sparse):
    """``c`` with ``lhs == c * rhs``, or ``None``."""
    if not rhs:
        return Fraction(0) if not lhs else None
    key = next(iter(rhs))
    c = Fraction(lhs.get(key, 0)) / rhs[key]
    return c if _scaled(rhs, c) == {k: v for k, v in lhs.items() if v} else None


def j_complex_coboundary(cat: NamedCochainCatalog, f: NamedCochain) -> Sparse:
    """Coboundary in ``Hom(Lambda^* J_n, h_n)`` of an entry supported on J-wedges."""
    J = cat.domains()["J"]
    wedge = WedgeCochain(f.arity, cat.algebra.dim, f.module_dim, f.generating)
    out = ce_coboundary(wedge, cat.algebra, cat.module(f))
    return {k: v for k, v in out.items() if set(k[0]) <= J}


def mixed_coboundary(cat: NamedCochainCatalog, f: NamedCochain) -> Sparse:
    """``d*`` in ``Hom(h_n (x) Lambda^* J_n, F)``; keys ``((x, z_1..z_{k+1}), 0)``.

    ``(d* f)(x (x) z) = f(d(x (x) z))`` with ``d`` the homology differential
    of ``h_n`` with adjoint coefficients, which maps ``h_n (x) Lambda J_n``
    into itself.
    """
    h = cat.algebra
    adj = make_module(h, "adjoint")
    J = sorted(cat.domains()["J"])
    k1 = f.arity  # f has h slot + (arity - 1) wedge slots; d* raises the wedge degree by one
    out = {}
    for z in itertools.combinations(J, k1):
        for x in range(h.dim):
            image = homology_differential(HomologyChain(k1, h.dim, h.dim, {(z, x): 1}), h, adj)
            value = sum((f.extended.value((s,) + tup).get(0, 0) * c for (tup, s), c in image.items()),
                        Fraction(0))
            if value:
                out[((x,) + z, 0)] = value
    return out


def _mixed_form(f: NamedCochain, doms) -> Sparse:
    """Generating-support values with the wedge part in increasing order."""
    return {k: v for k, v in f.restricted(doms).items() if list(k[0][1:]) == sorted(set(k[0][1:]))}


# ---------------------------------------------------------------- relations

def verify_relations(n: int, catalog: NamedCochainCatalog | None = None) -> VerificationReport:
    """Each stated relation, evaluated exactly on both sides."""
    cat = catalog or build_catalog(n)
    h = cat.algebra
    adj = make_module(h, "adjoint")
    doms = cat.domains()
    report = VerificationReport("relations", n)

    for name in ("I", "rho"):
        d = leibniz_coboundary(cat[name].extended, h, adj)
        report.checks.append(_compare(cat, f"delta {name} = 0", "leibniz", dict(d.items()), {}, True))

    lhs = j_complex_coboundary(cat, cat["Gamma"])
    mu = dict(cat["mu"].generating)
    factor = (n - 1) * (-1) ** (n - 1)
    observed = _proportionality(lhs, mu)
    report.checks.append(_compare(
        cat, "delta Gamma = (n-1)(-1)^(n-1) mu", "hom(wedge J, h)", lhs, _scaled(mu, factor), True,
        stated_factor=str(factor), observed_factor=None if observed is None else str(observed)))

    mixed = "hom(h (x) wedge J, F)"
    lhs = mixed_coboundary(cat, cat["g*"])
    rhs = _scaled(_mixed_form(cat["s*"], doms), -2)
    report.checks.append(_compare(cat, "delta g* = -2 s*", mixed, lhs, rhs, False))
    for name in cat.variants["gamma*"] + cat.variants["w*"]:
        lhs = mixed_coboundary(cat, cat[name])
        report.checks.append(_compare(cat, f"delta {name} = 0", mixed, lhs, {}, False))
    return report


# ---------------------------------------------------------------- invariance

def _action_witness(cat: NamedCochainCatalog, f: NamedCochain, generators) -> dict | None:
    doms = cat.domains()
    allowed = [doms[s] for s in f.slots]
    V = cat.module(f)
    labels = cat.algebra.labels
    for g in generators:
        moved = g_action(g, f.extended, cat.algebra, V)
        for (tup, t), v in sorted(moved.items()):
            if all(x in dom for x, dom in zip(tup, allowed)):
                return {"generator": labels[g], "tuple": [labels[x] for x in tup],
                        "target": labels[t] if f.coefficients == "adjoint" else "1", "value": str(v)}
    return None


# which elements are claimed invariant under which algebra
H_INVARIANT = ("I", "gamma*")
SO_INVARIANT = ("rho", "Gamma", "mu", "g*", "s*", "w*", "v*")


def verify_invariance(n: int, catalog: NamedCochainCatalog | None = None) -> VerificationReport:
    """``g . f = 0`` on the generating support, with a witness when it fails.

    Also records the expected failure of J_n-invariance for rho and the
    behavior of the alternative sign variants.
    """
    cat = catalog or build_catalog(n)
    doms = cat.domains()
    h_gens = range(cat.algebra.dim)
    so_gens = sorted(doms["so"])
    J_gens = sorted(doms["J"])
    report = VerificationReport("invariance", n)

    def add(name, acting, gens, expected=True):
        w = _action_witness(cat, cat[name], gens)
        report.checks.append(Check(f"{acting} . {name} = 0", "module form", w is None, expected, w))

    for name in H_INVARIANT:
        add(name, "h_n", h_gens)
    for name in SO_INVARIANT:
        add(name, "so(n)", so_gens)
    add("rho", "J_n", J_gens, expected=False)
    add("w*_uniform", "so(n)", so_gens, expected=False)
    add("gamma*_unsigned", "so(n)", so_gens, expected=False)
    return report


# ---------------------------------------------------------------- invariant tables

def invariant_tables(n: int, k_max: int | None = None) -> dict[str, list[int]]:
    """so(n)-invariant dimensions of ``Lambda^k J``, ``J (x) Lambda^k J``, ``so(n) (x) Lambda^k J``."""
    cat = build_catalog(n)
    sub = so_part(cat.algebra)
    adj = restrict(make_module(cat.algebra, "adjoint"), sub)
    J_idx = sorted(cat.domains()["J"])
    so_idx = sorted(cat.domains()["so"])
    J = submodule(adj, J_idx)
    so = submodule(adj, so_idx)
    top = n if k_max is None else k_max
    tables: dict[str, list[int]] = {"wedge J": [], "J (x) wedge J": [], "so (x) wedge J": []}
    for k in range(top + 1):
        w = exterior_power(J, k)
        tables["wedge J"].append(len(invariant_subspace(w)))
        tables["J (x) wedge J"].append(len(invariant_subspace(tensor(J, w))))
        tables["so (x) wedge J"].append(len(invariant_subspace(tensor(so, w))))
    return tables


def expected_invariant_tables(n: int) -> dict[str, list[int | None]]:
    """The stated tables; ``None`` where two stated cases coincide and no value is given."""
    wedge = [1 if k in (0, n) else 0 for k in range(n + 1)]
    jw = [1 if k in (1, n - 1) else 0 for k in range(n + 1)]
    sw: list[int | None] = [1 if k in (2, n - 2) else 0 for k in range(n + 1)]
    if n == 4:
        sw[2] = None
    return {"wedge J": wedge, "J (x) wedge J": jw, "so (x) wedge J": sw}
