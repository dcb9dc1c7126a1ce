"""Network vector fields: assembly, evaluation, differentiation, restriction.

The component for vertex k is F(x_k) plus one coupling term per edge
whose head contains k, fed with the tail states in ascending vertex
order.  Everything is expanded once into sparse polynomials, so rhs and
Jacobian evaluations, invariance checks and identity tests all run off
the same exact coefficient maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from ._poly import CompiledPoly, Poly
from .coupling import CouplingScheme
from .hypergraph import Hypergraph


class PolyVectorField:
    """A vector field on R^n whose components are sparse polynomials."""

    def __init__(self, polys: Sequence[Poly]):
        self.polys = tuple(polys)
        self.n = self.polys[0].n
        if any(p.n != self.n for p in self.polys):
            raise ValueError("mixed variable counts")
        self._compiled = [CompiledPoly(p) for p in self.polys]
        self._jac_polys = [[p.diff(j) for j in range(self.n)] for p in self.polys]
        self._jac_compiled = [[CompiledPoly(q) for q in row] for row in self._jac_polys]

    @property
    def dim(self) -> int:
        return len(self.polys)

    def rhs(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"state must have length {self.n}")
        return np.array([c(x) for c in self._compiled])

    def jacobian(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"state must have length {self.n}")
        return np.array([[c(x) for c in row] for row in self._jac_compiled])

    def __call__(self, t, x) -> np.ndarray:
        """ODE-solver calling convention."""
        return self.rhs(x)

    def equals(self, other: "PolyVectorField", tol: float = 0.0) -> bool:
        return self.dim == other.dim and all(
            p.equals(q, tol) for p, q in zip(self.polys, other.polys))

    def max_coeff_diff(self, other: "PolyVectorField") -> float:
        return max(p.max_coeff_diff(q) for p, q in zip(self.polys, other.polys))


@dataclass(frozen=True)
class NetworkSystem:
    """A hypergraph together with a coupling scheme; one-dimensional node states."""

    hypergraph: Hypergraph
    scheme: CouplingScheme

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @cached_property
    def field(self) -> PolyVectorField:
        return PolyVectorField([self._component(k) for k in range(1, self.n + 1)])

    def _component(self, k: int) -> Poly:
        n = self.n
        p = Poly(n)
        for (power,), coeff in self.scheme.internal.coeffs.items():
            key = [0] * n
            key[k - 1] = power
            p = p + Poly(n, {tuple(key): coeff})
        for e in self.hypergraph.in_edges(k):
            g = self.scheme.coupling_for(e)
            slots = [k] + sorted(e.tail)
            for exps, coeff in g.orbit_terms():
                key = [0] * n
                for v, ee in zip(slots, exps):
                    key[v - 1] += ee
                p = p + Poly(n, {tuple(key): coeff})
        return p

    def rhs(self, x) -> np.ndarray:
        return self.field.rhs(x)

    def jacobian(self, x) -> np.ndarray:
        return self.field.jacobian(x)

    def __call__(self, t, x) -> np.ndarray:
        return self.field.rhs(x)

    def to_json(self) -> dict:
        return {"hypergraph": self.hypergraph.to_json(), "scheme": self.scheme.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "NetworkSystem":
        return cls(Hypergraph.from_json(obj["hypergraph"]),
                   CouplingScheme.from_json(obj["scheme"]))


def _as_field(sys) -> PolyVectorField:
    return sys.field if isinstance(sys, NetworkSystem) else sys


@dataclass(frozen=True)
class ReducedField:
    """Restriction of a field to an invariant subspace, in class coordinates."""

    field: PolyVectorField
    lift_map: tuple[int, ...]  # original variable index -> class index (or -1 for zeroed)

    def lift(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.array([0.0 if j < 0 else u[j] for j in self.lift_map])

    def rhs(self, u) -> np.ndarray:
        return self.field.rhs(u)

    def jacobian(self, u) -> np.ndarray:
        return self.field.jacobian(u)

    def __call__(self, t, u) -> np.ndarray:
        return self.field.rhs(u)


def restrict(sys, partition) -> ReducedField:
    """Restrict to a synchrony subspace; one coordinate per partition class.

    Raises ValueError when the subspace is not invariant for this
    concrete system (coefficient-level check, not sampling).
    """
    field = _as_field(sys)
    n = field.n
    if partition.n != n:
        raise ValueError("partition size does not match system dimension")
    classes = sorted(partition.classes, key=min)
    target = [0] * n
    for idx, cls_ in enumerate(classes):
        for v in cls_:
            target[v - 1] = idx
    collapsed = [p.collapse(target, len(classes)) for p in field.polys]
    for cls_ in classes:
        members = sorted(cls_)
        rep = collapsed[members[0] - 1]
        for other in members[1:]:
            if not collapsed[other - 1].equals(rep, tol=0.0):
                raise ValueError(
                    f"subspace {partition} is not invariant: components {members[0]} "
                    f"and {other} disagree on it")
    reduced = PolyVectorField([collapsed[min(cls_) - 1] for cls_ in classes])
    return ReducedField(reduced, tuple(target))


def restrict_zero_section(sys, zero_vars: Sequence[int]) -> ReducedField:
    """Restrict to the coordinate subspace {x_j = 0 for j in zero_vars}.

    Valid when each zeroed component vanishes identically there (the
    extinction planes of odd-in-own-variable systems).
    """
    field = _as_field(sys)
    n = field.n
    zeros = set(zero_vars)
    keep = [v for v in range(1, n + 1) if v not in zeros]
    target: list[int | None] = [None] * n
    for idx, v in enumerate(keep):
        target[v - 1] = idx
    collapsed = [p.collapse(target, len(keep)) for p in field.polys]
    for v in zeros:
        if not collapsed[v - 1].is_zero():
            raise ValueError(f"{{x_{v} = 0}} is not invariant for this system")
    reduced = PolyVectorField([collapsed[v - 1] for v in keep])
    lift_map = tuple(-1 if v in zeros else keep.index(v) for v in range(1, n + 1))
    return ReducedField(reduced, lift_map)


def relabel_system(sys: NetworkSystem, mapping: dict[int, int]) -> NetworkSystem:
    """Apply a vertex relabeling to hypergraph (and per-edge couplings)."""
    h = sys.hypergraph.relabel(mapping)
    scheme = sys.scheme
    if scheme.per_edge is not None:
        from .coupling import CouplingScheme
        per_edge = {e.relabel(mapping): g for e, g in scheme.per_edge.items()}
        scheme = CouplingScheme(scheme.internal, per_edge=per_edge)
    return NetworkSystem(h, scheme)
