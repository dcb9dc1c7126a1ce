"""Synchrony subspaces: balanced partitions, census, synchronous linearization.

Robust invariance (holding for every admissible coupling scheme) is
decided combinatorially through the balanced-partition condition; the
numerical probes built on random generic schemes only ever falsify,
they never certify.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coupling import random_generic_scheme
from .hypergraph import Hypergraph
from .system import NetworkSystem

COINCIDENCE_RTOL = 1e-9


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty vertex classes covering 1..n."""

    n: int
    classes: tuple[frozenset[int], ...]

    def __post_init__(self):
        classes = tuple(sorted((frozenset(c) for c in self.classes), key=min))
        object.__setattr__(self, "classes", classes)
        seen: set[int] = set()
        for c in classes:
            if not c:
                raise ValueError("empty partition class")
            if c & seen:
                raise ValueError("partition classes overlap")
            seen |= c
        if seen != set(range(1, self.n + 1)):
            raise ValueError("partition does not cover 1..n")

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        return cls(n, tuple(frozenset(c) for c in classes))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_classes(n, [[v] for v in range(1, n + 1)])

    @classmethod
    def full_sync(cls, n: int) -> "Partition":
        return cls.from_classes(n, [range(1, n + 1)])

    @classmethod
    def all_but_one(cls, n: int, j: int) -> "Partition":
        """The partition behind S_j = {x_l = x_k for all k, l != j}."""
        rest = [v for v in range(1, n + 1) if v != j]
        return cls.from_classes(n, [rest, [j]])

    def class_index(self) -> dict[int, int]:
        out = {}
        for i, c in enumerate(self.classes):
            for v in c:
                out[v] = i
        return out

    def lift(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        idx = self.class_index()
        return np.array([u[idx[v]] for v in range(1, self.n + 1)])

    def subspace_distance(self, x) -> float:
        """Max deviation of x from the synchrony pattern."""
        x = np.asarray(x, dtype=float)
        worst = 0.0
        for c in self.classes:
            vals = [x[v - 1] for v in c]
            worst = max(worst, max(vals) - min(vals))
        return worst

    def to_json(self) -> list[list[int]]:
        return [sorted(c) for c in self.classes]

    def __str__(self) -> str:
        return "|".join(",".join(map(str, sorted(c))) for c in self.classes)


def is_balanced(h: Hypergraph, p: Partition) -> bool:
    """Same-class vertices receive identical multisets of class-typed inputs.

    For each vertex the incoming edges are typed by (order, multiset of
    tail classes); equality of these multisets across each class is
    exactly invariance of the synchrony subspace for every homogeneous
    scheme.
    """
    if p.n != h.n:
        raise ValueError("partition size does not match hypergraph")
    idx = p.class_index()

    def signature(k: int) -> Counter:
        sig: Counter = Counter()
        for e in h.in_edges(k):
            tail_classes = tuple(sorted(idx[v] for v in e.tail))
            sig[(e.order, tail_classes)] += 1
        return sig

    for c in p.classes:
        members = sorted(c)
        ref = signature(members[0])
        for k in members[1:]:
            if signature(k) != ref:
                return False
    return True


def full_sync_balance(h: Hypergraph) -> bool:
    """Fully synchronous subspace robustly invariant: per-order in-degree constant."""
    return is_balanced(h, Partition.full_sync(h.n))


PAIR_SUBSPACES = {1: "S1", 2: "S2", 3: "S3"}


@dataclass(frozen=True)
class SubspaceCensus:
    """Which of the canonical 3-vertex synchrony subspaces are robust."""

    delta: bool
    s1: bool
    s2: bool
    s3: bool

    def names(self) -> tuple[str, ...]:
        out = []
        if self.delta:
            out.append("Delta")
        for j, flag in ((1, self.s1), (2, self.s2), (3, self.s3)):
            if flag:
                out.append(PAIR_SUBSPACES[j])
        return tuple(out)

    def pair_count(self) -> int:
        return int(self.s1) + int(self.s2) + int(self.s3)

    def invariant_pairs(self) -> tuple[int, ...]:
        return tuple(j for j, flag in ((1, self.s1), (2, self.s2), (3, self.s3)) if flag)

    def to_json(self) -> dict:
        return {"subspaces": list(self.names())}


def robust_subspace_census(h: Hypergraph) -> SubspaceCensus:
    """Balanced check of Delta and the three pair subspaces of a 3-vertex hypergraph."""
    if h.n != 3:
        raise ValueError("census is defined for 3 vertices")
    return SubspaceCensus(
        delta=full_sync_balance(h),
        s1=is_balanced(h, Partition.all_but_one(3, 1)),
        s2=is_balanced(h, Partition.all_but_one(3, 2)),
        s3=is_balanced(h, Partition.all_but_one(3, 3)),
    )


def local_obstruction_field(h: Hypergraph) -> str:
    """'ok' iff exactly two pair subspaces are robust (plus freedoms of Delta).

    'too-many-subspaces' flags the all-pairs case, whose synchronous
    linearization is forced to carry a double transverse eigenvalue;
    'too-few-subspaces' means there is no second invariant plane to hold
    the return connection.
    """
    census = robust_subspace_census(h)
    pairs = census.pair_count()
    if pairs == 3:
        return "too-many-subspaces"
    if pairs < 2:
        return "too-few-subspaces"
    return "ok"


# -- linearization at synchronous points ---------------------------------

def _closed_form_eigvals_3x3(M: np.ndarray) -> np.ndarray:
    """Real-coefficient characteristic cubic solved in closed form.

    Uses the trigonometric form for three real roots and the Cardano
    branch otherwise (complex pair returned as conjugates).
    """
    a = -float(np.trace(M))
    b = 0.5 * (np.trace(M) ** 2 - np.trace(M @ M))
    c = -float(np.linalg.det(M))
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    shift = -a / 3.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc <= 0:
        r = np.sqrt(-p ** 3 / 27.0) if p < 0 else 0.0
        if r == 0.0:
            roots = np.array([shift, shift, shift])
        else:
            phi = np.arccos(np.clip(-q / (2.0 * r), -1.0, 1.0))
            m = 2.0 * np.sqrt(-p / 3.0)
            roots = shift + m * np.cos((phi + 2.0 * np.pi * np.arange(3)) / 3.0)
        return np.sort(roots)[::-1].astype(complex)
    sq = np.sqrt(disc)
    u = np.cbrt(-q / 2.0 + sq)
    v = np.cbrt(-q / 2.0 - sq)
    real_root = shift + u + v
    re = shift - (u + v) / 2.0
    im = (u - v) * np.sqrt(3.0) / 2.0
    return np.array([real_root, re + 1j * im, re - 1j * im])


def eigensystem(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors with closed-form values for n <= 3.

    Larger matrices fall back to the numerical eigensolver; a residual
    check guards both paths.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    vals_num, vecs = np.linalg.eig(M)
    if n == 1:
        vals = np.array([M[0, 0]], dtype=complex)
    elif n == 2:
        tr, det = np.trace(M), np.linalg.det(M)
        disc = complex(tr * tr / 4.0 - det) ** 0.5
        vals = np.array([tr / 2.0 + disc, tr / 2.0 - disc])
    elif n == 3:
        vals = _closed_form_eigvals_3x3(M)
    else:
        vals = vals_num
    # pair closed-form values with numerically computed eigenvectors
    order = []
    remaining = list(range(n))
    for lam in vals:
        j = min(remaining, key=lambda i: abs(vals_num[i] - lam))
        order.append(j)
        remaining.remove(j)
    vecs = vecs[:, order]
    scale = max(1.0, float(np.abs(M).max()))
    for i, lam in enumerate(vals):
        residual = np.linalg.norm(M @ vecs[:, i] - lam * vecs[:, i])
        if residual > 1e-9 * scale:
            # repeated eigenvalues can defeat the pairing; fall back wholesale
            return vals_num, np.linalg.eig(M)[1]
    return vals, vecs


def _membership_tags(v: np.ndarray, n: int, tol: float = 1e-7) -> tuple[str, ...]:
    tags = []
    vn = v / max(np.abs(v).max(), 1e-300)
    if np.all(np.abs(vn - vn[0]) < tol):
        tags.append("Delta")
    for j in range(1, n + 1):
        rest = [vn[i - 1] for i in range(1, n + 1) if i != j]
        if max(rest) - min(rest) < tol:
            tags.append(f"S{j}")
    return tuple(tags)


@dataclass(frozen=True)
class SyncLinearization:
    """Jacobian data at a synchronous point (z, ..., z)."""

    z: float
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    subspace_tags: tuple[tuple[str, ...], ...]
    multiplicities: tuple[int, ...]

    def eigenvalue_in(self, name: str) -> complex:
        """The eigenvalue whose eigenvector lies in the named subspace (not Delta)."""
        for lam, tags in zip(self.eigenvalues, self.subspace_tags):
            if name in tags and "Delta" not in tags:
                return lam
        raise KeyError(f"no transverse eigenvector inside {name}")

    def to_json(self) -> dict:
        return {
            "z": self.z,
            "matrix": self.matrix.tolist(),
            "eigenvalues": [[lam.real, lam.imag] for lam in self.eigenvalues],
            "subspaces": [list(t) for t in self.subspace_tags],
            "multiplicities": list(self.multiplicities),
        }


def sync_linearization(sys: NetworkSystem, z: float) -> SyncLinearization:
    """Linearize at (z, .., z); tag eigenvectors by the subspaces containing them.

    Requires the fully synchronous subspace to be robustly invariant for
    the underlying hypergraph.  Coinciding eigenvalues are reported with
    a multiplicity flag instead of being perturbed apart.
    """
    if not full_sync_balance(sys.hypergraph):
        raise ValueError("fully synchronous subspace is not invariant for this hypergraph")
    x = np.full(sys.n, float(z))
    M = sys.jacobian(x)
    vals, vecs = eigensystem(M)
    mult = []
    for lam in vals:
        m = sum(1 for other in vals if abs(other - lam) < COINCIDENCE_RTOL * max(1.0, abs(lam)))
        mult.append(m)
    tags = tuple(_membership_tags(np.real(vecs[:, i]), sys.n)
                 if abs(np.imag(vals[i])) < 1e-12 else ()
                 for i in range(len(vals)))
    return SyncLinearization(float(z), M, vals, vecs, tags, tuple(mult))


# -- randomized falsification probes --------------------------------------

def probe_invariance_drift(h: Hypergraph, p: Partition, n_schemes: int = 20,
                           t_end: float = 10.0, seed: int = 0,
                           max_degree: int = 3) -> float:
    """Worst drift away from a synchrony subspace across random generic schemes.

    A falsifier: large drift disproves robust invariance, small drift
    proves nothing.  Initial conditions start exactly on the subspace.
    """
    from .simulator import integrate  # deferred: simulator depends on system only

    max_order = max(h.orders(), default=2)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n_schemes):
        scheme = random_generic_scheme(max_order, max_degree, seed=int(rng.integers(2 ** 31)))
        sys = NetworkSystem(h, scheme)
        u = rng.uniform(-0.6, 0.6, size=len(p.classes))
        x0 = p.lift(u)
        traj = integrate(sys, x0, t_end=t_end, tol=1e-10)
        drift = max(p.subspace_distance(traj.states[:, i]) for i in range(traj.states.shape[1]))
        worst = max(worst, drift)
    return worst
