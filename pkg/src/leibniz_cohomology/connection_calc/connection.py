"""Affine connections by Christoffel symbols, curvature, the coboundary of a
connection viewed as a Leibniz 2-cochain on vector fields, and Ricci/scalar
curvature of a metric."""
from __future__ import annotations

from typing import Iterable, Sequence

from ..exact_linalg import DimensionMismatch
from .fields import RationalFunction, Space, VectorField, vf_bracket


class NotSymmetric(ValueError):
    """The connection has torsion but a symmetric one is required."""


class NotLeviCivita(ValueError):
    """The connection is not the Levi-Civita connection of the given metric."""


class DegenerateMetric(ValueError):
    """The metric matrix is not symmetric or not invertible."""


def _solve_inverse(space: Space, rows: list[list[RationalFunction]]):
    """Gauss-Jordan inverse over the rational function field; ``None`` if singular."""
    n = len(rows)
    one, zero = space.function(1), space.zero()
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class Metric:
    """Symmetric, invertible matrix ``g_ij`` of rational functions."""

    def __init__(self, space: Space, matrix: Sequence[Sequence[object]]):
        n = space.n
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise DimensionMismatch(f"metric must be {n} x {n}")
        g = [[space.function(v) for v in row] for row in matrix]
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise DegenerateMetric("metric matrix is not symmetric")
        inverse = _solve_inverse(space, g)
        if inverse is None:
            raise DegenerateMetric("metric matrix is singular")
        self.space = space
        self.g = g
        self.inverse = inverse

    @classmethod
    def euclidean(cls, space: Space) -> "Metric":
        n = space.n
        return cls(space, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def conformal(cls, space: Space, factor) -> "Metric":
        """``factor * delta_ij``."""
        f = space.function(factor)
        n = space.n
        return cls(space, [[f if i == j else 0 for j in range(n)] for i in range(n)])

    def inner(self, X: VectorField, Y: VectorField) -> RationalFunction:
        X._same(Y)
        n = self.space.n
        out = self.space.zero()
        for i in range(n):
            for j in range(n):
                if self.g[i][j]:
                    out += self.g[i][j] * X[i] * Y[j]
        return out


class Connection:
    """``(nabla_X Y)^k = X(Y^k) + sum_ij Gamma^k_ij X^i Y^j``.

    ``christoffel`` is indexed ``[k][i][j]``.  With ``symmetric=True`` the
    symmetry ``Gamma^k_ij = Gamma^k_ji`` is checked at construction.
    """

    def __init__(self, space: Space, christoffel=None, symmetric: bool = False):
        n = space.n
        zero = space.zero()
        if christoffel is None:
            gamma = [[[zero] * n for _ in range(n)] for _ in range(n)]
        elif isinstance(christoffel, dict):
            gamma = [[[zero] * n for _ in range(n)] for _ in range(n)]
            for (k, i, j), v in christoffel.items():
                gamma[k][i][j] = space.function(v)
        else:
            if len(christoffel) != n or any(len(a) != n or any(len(b) != n for b in a) for a in christoffel):
                raise DimensionMismatch(f"Christoffel symbols must be {n} x {n} x {n}")
            gamma = [[[space.function(v) for v in row] for row in plane] for plane in christoffel]
        self.space = space
        self.gamma = gamma
        if symmetric and not self.is_symmetric:
            raise NotSymmetric("Christoffel symbols are not symmetric in the lower indices")

    @property
    def is_symmetric(self) -> bool:
        n = self.space.n
        return all(self.gamma[k][i][j] == self.gamma[k][j][i]
                   for k in range(n) for i in range(n) for j in range(i))

    @classmethod
    def flat(cls, space: Space) -> "Connection":
        return cls(space, None, symmetric=True)

    @classmethod
    def levi_civita(cls, metric: Metric) -> "Connection":
        """``Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)``."""
        space = metric.space
        n = space.n
        g, ginv = metric.g, metric.inverse
        dg = [[[space.diff(g[a][b], c) for c in range(n)] for b in range(n)] for a in range(n)]
        gamma = [[[space.zero()] * n for _ in range(n)] for _ in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    acc = space.zero()
                    for l in range(n):
                        if ginv[k][l]:
                            acc += ginv[k][l] * (dg[j][l][i] + dg[i][l][j] - dg[i][j][l])
                    gamma[k][i][j] = acc / 2
        return cls(space, gamma, symmetric=True)

    def compatible_with(self, metric: Metric) -> bool:
        """``d_k g_ij = sum_l (Gamma^l_ki g_lj + Gamma^l_kj g_il)`` for all ``i, j, k``."""
        space = self.space
        n = space.n
        g = metric.g
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    rhs = space.zero()
                    for l in range(n):
                        rhs += self.gamma[l][k][i] * g[l][j] + self.gamma[l][k][j] * g[i][l]
                    if space.diff(g[i][j], k) != rhs:
                        return False
        return True

    def check(self, *fields: VectorField) -> None:
        for X in fields:
            if not isinstance(X, VectorField) or X.space != self.space:
                raise DimensionMismatch("vector field does not live on the connection's space")


def covariant_derivative(C: Connection, X: VectorField, Y: VectorField) -> VectorField:
    C.check(X, Y)
    n = C.space.n
    comps = []
    for k in range(n):
        acc = X(Y[k])
        plane = C.gamma[k]
        for i in range(n):
            if not X[i]:
                continue
            for j in range(n):
                if plane[i][j] and Y[j]:
                    acc += plane[i][j] * X[i] * Y[j]
        comps.append(acc)
    return VectorField(C.space, comps)


def curvature(C: Connection, X: VectorField, Y: VectorField, Z: VectorField) -> VectorField:
    """``R(X, Y, Z) = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``."""
    nab = lambda a, b: covariant_derivative(C, a, b)  # noqa: E731
    return nab(X, nab(Y, Z)) - nab(Y, nab(X, Z)) - nab(vf_bracket(X, Y), Z)


def delta_nabla(C: Connection, X1: VectorField, X2: VectorField, X3: VectorField) -> VectorField:
    """Coboundary of ``nabla(X (x) Y) = nabla_X Y`` in the Leibniz complex of vector fields."""
    C.check(X1, X2, X3)
    nab = lambda a, b: covariant_derivative(C, a, b)  # noqa: E731
    br = vf_bracket
    return (-br(X1, nab(X2, X3)) + br(X2, nab(X1, X3)) - br(X3, nab(X1, X2))
            + nab(br(X1, X2), X3) - nab(br(X1, X3), X2) - nab(X1, br(X2, X3)))


def delta_nabla_sum(C: Connection, triples: Iterable[tuple[VectorField, VectorField, VectorField]]) -> VectorField:
    """``delta nabla`` extended additively over a formal sum of triples."""
    out = VectorField(C.space, [0] * C.space.n)
    for X1, X2, X3 in triples:
        out = out + delta_nabla(C, X1, X2, X3)
    return out


def laplace_beltrami(C: Connection, Z: VectorField) -> VectorField:
    """``sum_i (-nabla_i nabla_i Z + nabla_{nabla_i d_i} Z)`` in the ambient coordinates."""
    C.check(Z)
    out = VectorField(C.space, [0] * C.space.n)
    for i in range(C.space.n):
        d = C.space.partial(i)
        out = out - covariant_derivative(C, d, covariant_derivative(C, d, Z)) \
            + covariant_derivative(C, covariant_derivative(C, d, d), Z)
    return out


def trace_sum(C: Connection, Z: VectorField) -> list[tuple[VectorField, VectorField, VectorField]]:
    """The formal sum ``sum_i d_i (x) d_i (x) Z``."""
    return [(C.space.partial(i), C.space.partial(i), Z) for i in range(C.space.n)]


def require_levi_civita(C: Connection, metric: Metric) -> None:
    if metric.space != C.space:
        raise DimensionMismatch("metric and connection live on different spaces")
    if not C.is_symmetric:
        raise NotLeviCivita("connection is not symmetric")
    if not C.compatible_with(metric):
        raise NotLeviCivita("connection is not compatible with the metric")


def ricci(C: Connection, metric: Metric, Z: VectorField, Y: VectorField) -> RationalFunction:
    """Trace of ``W -> R(W, Z, Y)``."""
    require_levi_civita(C, metric)
    C.check(Z, Y)
    out = C.space.zero()
    for i in range(C.space.n):
        out += curvature(C, C.space.partial(i), Z, Y)[i]
    return out


def scalar_curvature(C: Connection, metric: Metric) -> RationalFunction:
    """``sum_jk g^jk Ric(d_j, d_k)``."""
    require_levi_civita(C, metric)
    space = C.space
    out = space.zero()
    for j in range(space.n):
        for k in range(space.n):
            if metric.inverse[j][k]:
                out += metric.inverse[j][k] * ricci(C, metric, space.partial(j), space.partial(k))
    return out
