"""Exact identity checks for the coboundary of a connection, and a seeded battery."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .connection import (
    Connection,
    Metric,
    NotSymmetric,
    covariant_derivative,
    curvature,
    delta_nabla,
    delta_nabla_sum,
    laplace_beltrami,
    trace_sum,
)
from .fields import RationalFunction, Space, VectorField

IDENTITIES = ("repeated_slot", "trace")
BATTERY = ("one_dim", "laplacian", "repeated_slot", "trace")
DEFAULT_SEED = 20240601


@dataclass
class IdentityReport:
    which: str
    holds: bool
    lhs: list[str]
    rhs: list[str]

    def to_json(self) -> dict:
        return {"identity": self.which, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


def verify_identity(which: str, C: Connection, inputs) -> IdentityReport:
    """Check one of the symmetric-connection identities exactly.

    ``repeated_slot`` with ``inputs = (X, Z)``:
    ``dnabla(X, X, Z) = R(X, Z, X) - nabla_X nabla_X Z + nabla_{nabla_X X} Z``.

    ``trace`` with ``inputs = Z`` (or ``(Z,)``):
    ``dnabla(sum_i d_i (x) d_i (x) Z) = sum_i R(d_i, Z, d_i) + Laplace(Z)``.
    """
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity {which!r}; choose from {IDENTITIES}")
    if not C.is_symmetric:
        raise NotSymmetric(f"the {which} identity needs a symmetric connection")
    nab = lambda a, b: covariant_derivative(C, a, b)  # noqa: E731
    if which == "repeated_slot":
        X, Z = inputs
        lhs = delta_nabla(C, X, X, Z)
        rhs = curvature(C, X, Z, X) - nab(X, nab(X, Z)) + nab(nab(X, X), Z)
    else:
        Z = inputs[0] if isinstance(inputs, (tuple, list)) else inputs
        lhs = delta_nabla_sum(C, trace_sum(C, Z))
        rhs = laplace_beltrami(C, Z)
        for i in range(C.space.n):
            d = C.space.partial(i)
            rhs = rhs + curvature(C, d, Z, d)
    return IdentityReport(which, lhs == rhs, lhs.strings(), rhs.strings())


def one_dim_formula(space: Space, f1, f2, f3) -> VectorField:
    """``(f1' f2 f3' - f1 f2' f3' - f1 f2 f3'') d/dx`` on the line."""
    f1, f2, f3 = (space.function(f) for f in (f1, f2, f3))
    d = lambda f: space.diff(f, 0)  # noqa: E731
    return VectorField(space, [d(f1) * f2 * d(f3) - f1 * d(f2) * d(f3) - f1 * f2 * d(d(f3))])


def flat_laplacian(space: Space, f) -> RationalFunction:
    f = space.function(f)
    out = space.zero()
    for i in range(space.n):
        out += space.diff(space.diff(f, i), i)
    return out


def random_polynomial(space: Space, degree: int, rng: random.Random, span: int = 5) -> RationalFunction:
    """Dense random polynomial of total degree ``<= degree`` with integer coefficients."""
    x = space.coordinates
    out = space.zero()

    def monomials(k, start):
        if k == 0:
            yield space.function(1)
            return
        for i in range(start, space.n):
            for rest in monomials(k - 1, i):
                yield x[i] * rest

    for k in range(degree + 1):
        for m in monomials(k, 0):
            out += rng.randint(-span, span) * m
    return out


def random_field(space: Space, degree: int, rng: random.Random) -> VectorField:
    return VectorField(space, [random_polynomial(space, degree, rng) for _ in range(space.n)])


@dataclass
class BatteryReport:
    identity: str
    dim: int
    degree: int
    cases: int
    seed: int
    passed: int = 0
    counterexample: dict | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.counterexample is None and self.passed == self.cases

    def to_json(self) -> dict:
        out = {"identity": self.identity, "dim": self.dim, "degree": self.degree, "cases": self.cases,
               "seed": self.seed, "passed": self.passed, "ok": self.ok,
               "counterexample": self.counterexample}
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def run_battery(identity: str, dim: int = 2, degree: int = 3, cases: int = 20,
                seed: int = DEFAULT_SEED) -> BatteryReport:
    """Seeded random instances of one identity on flat space.

    ``one_dim`` forces ``dim = 1``; ``laplacian`` uses constant ``Z`` with
    Pythagorean-style rational entries and ``f`` random.
    """
    if identity not in BATTERY:
        raise ValueError(f"unknown identity {identity!r}; choose from {BATTERY}")
    if identity == "one_dim":
        dim = 1
    rng = random.Random(seed)
    space = Space(dim)
    C = Connection.flat(space)
    report = BatteryReport(identity, dim, degree, cases, seed)
    for _ in range(cases):
        if identity == "one_dim":
            fs = [random_polynomial(space, degree, rng) for _ in range(3)]
            X = [VectorField(space, [f]) for f in fs]
            lhs = delta_nabla(C, *X)
            rhs = one_dim_formula(space, *fs)
            inputs = {"f1": str(fs[0].as_expr()), "f2": str(fs[1].as_expr()), "f3": str(fs[2].as_expr())}
        elif identity == "laplacian":
            f = random_polynomial(space, degree, rng)
            Z = space.constant_field([rng.randint(-3, 3) for _ in range(dim)])
            lhs = delta_nabla_sum(C, trace_sum(C, Z.scale(f)))
            rhs = Z.scale(-flat_laplacian(space, f))
            inputs = {"f": str(f.as_expr()), "Z": Z.strings()}
        elif identity == "repeated_slot":
            X, Z = random_field(space, degree, rng), random_field(space, degree, rng)
            r = verify_identity("repeated_slot", C, (X, Z))
            lhs, rhs = r.lhs, r.rhs
            inputs = {"X": X.strings(), "Z": Z.strings()}
        else:
            Z = random_field(space, degree, rng)
            r = verify_identity("trace", C, Z)
            lhs, rhs = r.lhs, r.rhs
            inputs = {"Z": Z.strings()}
        if lhs == rhs:
            report.passed += 1
        elif report.counterexample is None:
            report.counterexample = {"inputs": inputs,
                                     "lhs": lhs if isinstance(lhs, list) else lhs.strings(),
                                     "rhs": rhs if isinstance(rhs, list) else rhs.strings()}
    return report


def hyperbolic_plane() -> tuple[Metric, Connection]:
    """Upper half-plane metric ``delta_ij / x2^2`` with its Levi-Civita connection."""
    space = Space(2)
    metric = Metric.conformal(space, 1 / space.coordinates[1] ** 2)
    return metric, Connection.levi_civita(metric)


def round_sphere_chart() -> tuple[Metric, Connection]:
    """Stereographic chart of the unit sphere, metric ``4 delta_ij / (1 + |x|^2)^2``."""
    space = Space(2)
    x, y = space.coordinates
    metric = Metric.conformal(space, 4 / (1 + x ** 2 + y ** 2) ** 2)
    return metric, Connection.levi_civita(metric)


def standard_checks() -> list[tuple[str, bool, dict]]:
    """Fixed exact instances: ``(name, holds, detail)`` triples."""
    from fractions import Fraction

    from .connection import ricci, scalar_curvature

    out = []
    line = Space(1)
    x = line.coordinates[0]
    f = x ** 3 - 2 * x ** 2 + 5
    dx = line.partial(0)
    got = delta_nabla(Connection.flat(line), dx, dx, line.vector_field([f]))
    want = line.vector_field([-line.diff(line.diff(f, 0), 0)])
    out.append(("second derivative", got == want, {"f": str(f.as_expr()), "value": got.strings()}))

    plane = Space(2)
    flat = Connection.flat(plane)
    x1, x2 = plane.coordinates
    f = x1 ** 3 * x2
    Z = plane.constant_field([Fraction(3, 5), Fraction(4, 5)])
    got = delta_nabla_sum(flat, trace_sum(flat, Z.scale(f)))
    lap = flat_laplacian(plane, f)
    out.append(("laplacian", got == Z.scale(-lap), {"f": str(f.as_expr()), "value": got.strings()}))
    inner = Metric.euclidean(plane).inner(got, Z)
    out.append(("laplacian inner product", inner == -lap, {"value": str(inner.as_expr())}))

    for g, expect_zero in ((x1 ** 2 - x2 ** 2, True), (x1 ** 2 + x2 ** 2, False)):
        for j in range(2):
            Zf = plane.partial(j).scale(g)
            got = delta_nabla_sum(flat, trace_sum(flat, Zf))
            name = f"{'harmonic' if expect_zero else 'non-harmonic'} f d_{j + 1}"
            out.append((name, got.is_zero() == expect_zero,
                        {"f": str(g.as_expr()), "value": got.strings()}))

    for dim in (2, 3):
        space = Space(dim)
        C = Connection.flat(space)
        X = [space.partial(i).scale(space.coordinates[i] ** 2 + 1) for i in range(dim)]
        zero = all(curvature(C, a, b, c).is_zero() for a in X for b in X for c in X)
        out.append((f"flat curvature R^{dim}", zero, {}))

    metric, C = hyperbolic_plane()
    space = C.space
    y1, y2 = space.coordinates
    Z = space.vector_field([y2, 0])
    out.append(("trace identity, hyperbolic", verify_identity("trace", C, Z).holds, {"Z": Z.strings()}))
    X = space.vector_field([y1 * y2, 1])
    out.append(("repeated-slot identity, hyperbolic",
                verify_identity("repeated_slot", C, (X, Z)).holds, {"X": X.strings(), "Z": Z.strings()}))
    s = scalar_curvature(C, metric)
    out.append(("scalar curvature, hyperbolic", s == space.function(-2), {"value": str(s.as_expr())}))
    d1, d2 = space.partial(0), space.partial(1)
    sec = metric.inner(curvature(C, d1, d2, d2), d1) / (metric.g[0][0] * metric.g[1][1])
    out.append(("sectional curvature, hyperbolic", sec == space.function(-1), {"value": str(sec.as_expr())}))

    metric, C = round_sphere_chart()
    s = scalar_curvature(C, metric)
    out.append(("scalar curvature, sphere", s == space.function(2), {"value": str(s.as_expr())}))
    ric = ricci(C, metric, d1, d1)
    out.append(("ricci equals metric, sphere", ric == metric.g[0][0], {"value": str(ric.as_expr())}))
    return out
