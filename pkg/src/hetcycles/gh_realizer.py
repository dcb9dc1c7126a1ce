"""Realizing the three-saddle cubic cycle as hypergraph network dynamics.

The reference vector field is the classic cubic on R^3 whose axis
equilibria form an attracting heteroclinic cycle for parameters
(a, b, c) with a + b + c = -1, -1/3 < a < 0 and c < a < b < 0.
``realize_gh`` decides for a given 3-vertex hypergraph whether some
polynomial coupling scheme assembles exactly to that field, returning
either the scheme or an obstruction verdict with a machine-checkable
witness.  The 3-uniform case reduces to integer input-count arithmetic
solved exactly over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._poly import Poly
from .coupling import CouplingScheme, SymmetricPolynomial, internal_poly, random_generic_scheme
from .hypergraph import (RIGHT, Hyperedge, Hypergraph, classical_ring_all_to_all,
                         enumerate_hyperedges, input_profile_3uniform)
from .system import NetworkSystem, PolyVectorField

IDENTITY_TOL = 1e-12


# -- reference system ------------------------------------------------------

@dataclass(frozen=True)
class GHParams:
    a: float
    b: float
    c: float

    def is_admissible(self, tol: float = 1e-12) -> bool:
        return (abs(self.a + self.b + self.c + 1.0) <= tol
                and -1.0 / 3.0 < self.a < 0.0
                and self.c < self.a < self.b < 0.0)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


def check_gh_conditions(p: GHParams, tol: float = 1e-12) -> bool:
    """Existence conditions for the three-saddle cycle of the reference field."""
    return p.is_admissible(tol)


def gh_reference_field(p: GHParams) -> PolyVectorField:
    """The cubic reference field; equivariant under coordinate sign flips
    and the cyclic permutation of the three coordinates."""
    a, b, c = p.a, p.b, p.c
    rows = []
    specs = [  # per row: (linear var, cubic var, b-partner, c-partner)
        (1, (1, 2), (1, 3)),
        (2, (2, 3), (1, 2)),
        (3, (1, 3), (2, 3)),
    ]
    for k, bpair, cpair in specs:
        coeffs = {}
        key = [0, 0, 0]
        key[k - 1] = 1
        coeffs[tuple(key)] = 1.0
        key[k - 1] = 3
        coeffs[tuple(key)] = a

        def mixed(pair, receiver):
            kk = [0, 0, 0]
            i, j = pair
            other = i if j == receiver else j
            kk[receiver - 1] = 1
            kk[other - 1] = 2
            return tuple(kk)

        coeffs[mixed(bpair, k)] = b
        coeffs[mixed(cpair, k)] = c
        rows.append(Poly(3, coeffs))
    return PolyVectorField(rows)


def gh_equilibria(p: GHParams) -> list[np.ndarray]:
    """The three axis saddles of the reference field."""
    xi = 1.0 / np.sqrt(-p.a)
    return [np.array([xi, 0, 0]), np.array([0, xi, 0]), np.array([0, 0, xi])]


# -- group actions and identity checks -------------------------------------

GENERATORS = {
    "rho": ((2, 3, 1), (1, 1, 1)),     # (x1,x2,x3) -> (x2,x3,x1)
    "tau1": ((1, 2, 3), (-1, 1, 1)),
    "tau2": ((1, 2, 3), (1, -1, 1)),
    "tau3": ((1, 2, 3), (1, 1, -1)),
}


def equivariance_check(field_like, element, tol: float = IDENTITY_TOL) -> bool:
    """Exact polynomial test of rhs(gamma x) == gamma rhs(x).

    ``element`` is a generator name from GENERATORS or a pair
    (pi, signs) with 1-based pi: (gamma x)_i = signs[i] * x_{pi[i]}.
    """
    f = field_like.field if isinstance(field_like, NetworkSystem) else field_like
    pi, signs = GENERATORS[element] if isinstance(element, str) else element
    n = f.n
    perm0 = [pi[i] - 1 for i in range(n)]
    for k in range(n):
        lhs = f.polys[k].permute_signed(perm0, signs)
        rhs = f.polys[pi[k] - 1].scale(float(signs[k]))
        if not lhs.equals(rhs, tol):
            return False
    return True


# -- obstruction witnesses ---------------------------------------------------

@dataclass(frozen=True)
class InputSwapWitness:
    """Row k of any realizable field is invariant under swapping x_i and x_j;
    the reference field is not (its two mixed cubic coefficients differ)."""

    row: int
    swap: tuple[int, int]
    probe_homogeneous: bool = True
    note: str = ""

    def target_violates(self, target: PolyVectorField, tol: float = IDENTITY_TOL) -> bool:
        i, j = self.swap
        perm0 = list(range(target.n))
        perm0[i - 1], perm0[j - 1] = j - 1, i - 1
        p = target.polys[self.row - 1]
        return not p.equals(p.permute_signed(perm0, [1] * target.n), tol)

    def holds_for(self, sys: NetworkSystem, tol: float = IDENTITY_TOL) -> bool:
        i, j = self.swap
        perm0 = list(range(sys.n))
        perm0[i - 1], perm0[j - 1] = j - 1, i - 1
        p = sys.field.polys[self.row - 1]
        return p.equals(p.permute_signed(perm0, [1] * sys.n), tol)

    def probe(self, h: Hypergraph, n_schemes: int = 20, seed: int = 0,
              nodeunspecific: bool = False) -> bool:
        """Random-scheme confirmation that assembled rows carry the symmetry."""
        rng = np.random.default_rng(seed)
        max_order = max(h.orders(), default=2)
        for _ in range(n_schemes):
            scheme = random_generic_scheme(max_order, 3, int(rng.integers(2 ** 31)))
            if nodeunspecific:
                scheme = _strip_node_dependence(scheme)
            if not self.holds_for(NetworkSystem(h, scheme), tol=1e-9):
                return False
        return True

    def to_json(self) -> dict:
        return {"kind": "input-swap", "row": self.row, "swap": list(self.swap),
                "note": self.note}


@dataclass(frozen=True)
class MonomialPairWitness:
    """Node-independent couplings force two mixed monomials of a row to share
    a coefficient; the reference field gives them distinct ones."""

    row: int
    mono_a: tuple[int, int, int]
    mono_b: tuple[int, int, int]
    note: str = ""

    def target_violates(self, target: PolyVectorField, tol: float = IDENTITY_TOL) -> bool:
        p = target.polys[self.row - 1]
        return abs(p.c.get(self.mono_a, 0.0) - p.c.get(self.mono_b, 0.0)) > tol

    def holds_for(self, sys: NetworkSystem, tol: float = 1e-9) -> bool:
        p = sys.field.polys[self.row - 1]
        return abs(p.c.get(self.mono_a, 0.0) - p.c.get(self.mono_b, 0.0)) <= tol

    def probe(self, h: Hypergraph, n_schemes: int = 20, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        max_order = max(h.orders(), default=2)
        for _ in range(n_schemes):
            scheme = _strip_node_dependence(
                random_generic_scheme(max_order, 3, int(rng.integers(2 ** 31))))
            if not self.holds_for(NetworkSystem(h, scheme)):
                return False
        return True

    def to_json(self) -> dict:
        return {"kind": "monomial-pair", "row": self.row,
                "monomials": [list(self.mono_a), list(self.mono_b)], "note": self.note}


def _strip_node_dependence(scheme: CouplingScheme) -> CouplingScheme:
    per_order = {}
    for m, g in scheme.per_order.items():
        coeffs = {(0, rest): v for (e0, rest), v in g.coeffs.items() if e0 == 0}
        if not coeffs:  # keep a nonzero generic input-only term
            coeffs = {(0, tuple([1] + [0] * (m - 2))): 0.7}
        per_order[m] = SymmetricPolynomial(m, coeffs)
    return CouplingScheme(scheme.internal, per_order=per_order)


# -- generic linear realization solver ---------------------------------------

def _coupling_basis_keys(arity: int, max_degree: int, nodeunspecific: bool):
    keys = []
    for e0 in range(0, max_degree + 1):
        if nodeunspecific and e0 > 0:
            continue
        for pattern in itertools.combinations_with_replacement(range(max_degree + 1),
                                                               arity - 1):
            rest = tuple(sorted(pattern, reverse=True))
            deg = e0 + sum(rest)
            if sum(rest) == 0 or deg > max_degree or deg == 0:
                continue
            keys.append((e0, rest))
    return keys


def _solve_scheme(h: Hypergraph, target: PolyVectorField, homogeneous: bool,
                  nodeunspecific: bool, max_degree: int = 3):
    """Least-squares solve for scheme coefficients assembling to ``target``.

    The assembled field is linear in the scheme coefficients, so
    realizability within the bounded-degree family is a linear algebra
    question.  Returns (scheme, residual) with scheme None when no exact
    solution exists.
    """
    n = h.n
    unknowns: list[tuple] = [("F", (d,)) for d in range(1, max_degree + 1)]
    if homogeneous:
        for m in h.orders():
            for key in _coupling_basis_keys(m, max_degree, nodeunspecific):
                unknowns.append(("order", m, key))
    else:
        for e in h.edges:
            for key in _coupling_basis_keys(e.order, max_degree, nodeunspecific):
                unknowns.append(("edge", e, key))

    monomials = sorted({k for p in target.polys for k in p.c}
                       | {k for u in unknowns for k in _assembled_keys(h, u, n)})
    mono_index = {k: i for i, k in enumerate(monomials)}
    rows = len(monomials) * n
    A = np.zeros((rows, len(unknowns)))
    t_vec = np.zeros(rows)
    for comp in range(n):
        for key, v in target.polys[comp].c.items():
            t_vec[comp * len(monomials) + mono_index[key]] = v
    for col, u in enumerate(unknowns):
        for comp, key, v in _assembled_entries(h, u, n):
            A[comp * len(monomials) + mono_index[key], col] += v

    sol, *_ = np.linalg.lstsq(A, t_vec, rcond=None)
    residual = float(np.linalg.norm(A @ sol - t_vec))
    if residual > 1e-8 * max(1.0, float(np.linalg.norm(t_vec))):
        return None, residual
    sol = np.where(np.abs(sol) < 1e-11, 0.0, sol)
    scheme = _scheme_from_solution(h, unknowns, sol, homogeneous)
    assembled = NetworkSystem(h, scheme).field
    if assembled.max_coeff_diff(target) > 1e-9:
        return None, residual
    return scheme, residual


def _assembled_entries(h: Hypergraph, unknown, n: int):
    """(component, monomial, coefficient) contributions of one unit basis element."""
    if unknown[0] == "F":
        (d,) = unknown[1]
        for k in range(1, n + 1):
            key = [0] * n
            key[k - 1] = d
            yield k - 1, tuple(key), 1.0
        return
    kind = unknown[0]
    e0, rest = unknown[-1]
    if kind == "order":
        m = unknown[1]
        edges = [e for e in h.edges if e.order == m]
    else:
        edges = [unknown[1]]
    patterns = set(itertools.permutations(rest))
    for e in edges:
        slots_tail = sorted(e.tail)
        for k in e.head:
            for pat in patterns:
                key = [0] * n
                key[k - 1] += e0
                for v, ee in zip(slots_tail, pat):
                    key[v - 1] += ee
                yield k - 1, tuple(key), 1.0


def _assembled_keys(h: Hypergraph, unknown, n: int):
    return {key for _comp, key, _v in _assembled_entries(h, unknown, n)}


def _scheme_from_solution(h: Hypergraph, unknowns, sol, homogeneous: bool) -> CouplingScheme:
    internal = {}
    per_order: dict[int, dict] = {}
    per_edge: dict[Hyperedge, dict] = {}
    for u, v in zip(unknowns, sol):
        if v == 0.0 and u[0] != "F":
            continue
        if u[0] == "F":
            if v != 0.0:
                internal[u[1][0]] = float(v)
        elif u[0] == "order":
            per_order.setdefault(u[1], {})[u[2]] = float(v)
        else:
            per_edge.setdefault(u[1], {})[u[2]] = float(v)
    F = internal_poly(internal)
    if homogeneous:
        orders = {m: SymmetricPolynomial(m, cs) for m, cs in per_order.items() if cs}
        for m in h.orders():
            if m not in orders:  # edge present but coupling identically zero
                orders[m] = SymmetricPolynomial(m, {(0, tuple([1] + [0] * (m - 2))): 0.0})
        return CouplingScheme(F, per_order=orders)
    edges = {}
    for e in h.edges:
        cs = per_edge.get(e, {})
        edges[e] = SymmetricPolynomial(e.order, cs)
    return CouplingScheme(F, per_edge=edges)


# -- realization result -------------------------------------------------------

@dataclass(frozen=True)
class RealizationResult:
    status: str  # "realized" | "obstructed"
    params: GHParams
    scheme: CouplingScheme | None = None
    hypergraph: Hypergraph | None = None
    reason: str = ""
    tag: str = ""
    witness: object | None = None
    residual: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def realized(self) -> bool:
        return self.status == "realized"

    def to_json(self) -> dict:
        out = {"status": self.status, "params": self.params.to_json(),
               "reason": self.reason, "tag": self.tag}
        if self.scheme is not None:
            out["scheme"] = self.scheme.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


def realize_gh(h: Hypergraph, p: GHParams, homogeneous: bool = True,
               nodeunspecific: bool = False) -> RealizationResult:
    """Decide realizability of the reference cubic on a 3-vertex hypergraph.

    On success the returned scheme assembles to the reference field as an
    exact coefficient-map identity.  On failure the verdict names the
    structural reason and carries a witness that can be re-checked
    mechanically (a forced input symmetry the reference field violates,
    or the integer input-count arithmetic that has no solution).
    """
    if h.n != 3:
        raise ValueError("realization analysis is for 3-vertex hypergraphs")
    if not p.is_admissible():
        raise ValueError(f"parameters {p} violate the cycle-existence conditions")
    target = gh_reference_field(p)
    scheme, residual = _solve_scheme(h, target, homogeneous, nodeunspecific)
    if scheme is not None:
        return RealizationResult("realized", p, scheme=scheme, hypergraph=h,
                                 residual=residual)
    return _diagnose(h, p, target, homogeneous, nodeunspecific, residual)


def _diagnose(h: Hypergraph, p: GHParams, target: PolyVectorField,
              homogeneous: bool, nodeunspecific: bool, residual: float) -> RealizationResult:
    def result(reason, tag, witness=None, detail=None):
        return RealizationResult("obstructed", p, hypergraph=h, reason=reason, tag=tag,
                                 witness=witness, residual=residual, detail=detail or {})

    if h.is_undirected and h.edges:
        w = InputSwapWitness(1, (2, 3), probe_homogeneous=True,
                             note="undirected edges force order-homogeneous coupling on "
                                  "any cyclically equivariant field, making each row "
                                  "input-symmetric")
        return result("undirected-symmetry", "obstruction:undirected", w)
    if nodeunspecific:
        j = RIGHT[1]
        mono_a = [0, 0, 0]
        mono_a[0] = 1
        mono_a[j - 1] = 2
        mono_b = [0, 0, 0]
        mono_b[0] = 2
        mono_b[j - 1] = 1
        w = MonomialPairWitness(1, tuple(mono_a), tuple(mono_b),
                                note="without node-state dependence a mixed term only "
                                     "arises from a tail containing the receiver, and "
                                     "input symmetry then forces its mirror term")
        return result("nodeunspecific-coupling", "obstruction:nodeunspecific", w)
    if h.is_m_uniform(4):
        w = InputSwapWitness(1, (2, 3),
                             note="order-4 tails contain all three vertices, so every "
                                  "row is symmetric in the two non-receiving states")
        return result("symmetric-inputs", "obstruction:4-uniform", w)
    if h.edges and all(e.order == 3 and not e.degenerate for e in h.edges):
        w = InputSwapWitness(1, (2, 3),
                             note="true 2-to-1 inputs feed both neighbors through one "
                                  "symmetric coupling slot pair")
        return result("symmetric-inputs", "obstruction:two-to-one-only", w)
    if homogeneous and h.is_m_uniform(3):
        profiles = input_profile_3uniform(h)
        tuples = {k: v.as_tuple() for k, v in profiles.items()}
        if len(set(tuples.values())) > 1:
            return result("nonuniform-input-counts", "obstruction:uniform3-profile",
                          detail={"profiles": {str(k): list(v) for k, v in tuples.items()}})
        pi, phi, psi = tuples[1]
        detail = {"profile": [pi, phi, psi],
                  "forced_ratio": [pi + phi, pi + psi],
                  "target_ratio": [p.b, p.c]}
        return result("integer-count-ratio", "obstruction:uniform3-ratio", detail=detail)
    if homogeneous and h.is_m_uniform(2):
        w = InputSwapWitness(1, (2, 3),
                             note="one pairwise coupling shared by all edges cannot "
                                  "distinguish the two in-neighbors")
        return result("homogeneous-pairwise", "obstruction:2-uniform-homogeneous", w)
    return result("no-polynomial-scheme", "obstruction:unresolved")


# -- explicit constructions for the canonical hypergraphs ---------------------

def scheme_two_type_classical(p: GHParams) -> tuple[Hypergraph, CouplingScheme]:
    """Per-edge pairwise couplings of two types on the all-to-all digraph."""
    h = classical_ring_all_to_all()
    b_edges = {Hyperedge(frozenset({RIGHT[k]}), frozenset({k})) for k in (1, 2, 3)}
    per_edge = {}
    for e in h.edges:
        coeff = p.b if e in b_edges else p.c
        per_edge[e] = SymmetricPolynomial(2, {(1, (2,)): coeff})
    F = internal_poly({1: 1.0, 3: p.a})
    return h, CouplingScheme(F, per_edge=per_edge)


def scheme_pair_plus_triplet(p: GHParams) -> tuple[Hypergraph, CouplingScheme]:
    """Homogeneous scheme on the pairwise-plus-true-triplet hypergraph."""
    from .hypergraph import gh_pair_plus_triplet
    h = gh_pair_plus_triplet()
    F = internal_poly({1: 1.0, 3: p.a})
    g2 = SymmetricPolynomial(2, {(1, (2,)): p.b - p.c})
    g3 = SymmetricPolynomial(3, {(1, (2, 0)): p.c})
    return h, CouplingScheme(F, per_order={2: g2, 3: g3})


def scheme_pair_plus_degenerate(p: GHParams) -> tuple[Hypergraph, CouplingScheme]:
    """Homogeneous scheme on the pairwise-plus-degenerate hypergraph; the
    self-input of the order-3 coupling shifts the cubic internal term."""
    from .hypergraph import gh_pair_plus_degenerate
    h = gh_pair_plus_degenerate()
    F = internal_poly({1: 1.0, 3: p.a - p.c})
    g2 = SymmetricPolynomial(2, {(1, (2,)): p.b})
    g3 = SymmetricPolynomial(3, {(1, (2, 0)): p.c})
    return h, CouplingScheme(F, per_order={2: g2, 3: g3})


def scheme_uniform3(triple: tuple[int, int, int],
                    alpha: Fraction | None = None) -> tuple[Hypergraph, CouplingScheme, GHParams]:
    """Homogeneous order-3 scheme for an admissible input-count triple."""
    interval = uniform3_alpha_interval(*triple)
    if not interval.feasible:
        raise ValueError(f"triple {triple} admits no parameter choice")
    if alpha is None:
        alpha = interval.midpoint()
    params = interval.params(alpha)
    h = construct_config_hypergraph(*triple)
    F = internal_poly({1: 1.0, 3: float(params.alpha)})
    g3 = SymmetricPolynomial(3, {(1, (2, 0)): float(params.beta)})
    return h, CouplingScheme(F, per_order={3: g3}), GHParams(float(params.a),
                                                             float(params.b),
                                                             float(params.c))


# -- 3-uniform input-count analysis -------------------------------------------

@dataclass(frozen=True)
class UniformParams:
    alpha: Fraction
    beta: Fraction
    a: Fraction
    b: Fraction
    c: Fraction


@dataclass(frozen=True)
class AlphaInterval:
    """Open feasibility interval for the cubic internal coefficient alpha."""

    triple: tuple[int, int, int]
    lower: Fraction
    upper: Fraction
    violated: tuple[str, ...] = ()

    @property
    def feasible(self) -> bool:
        return not self.violated and self.lower < self.upper

    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def params(self, alpha: Fraction) -> UniformParams:
        """Parameters induced by alpha: beta = -(alpha+1)/(2(P+F+S)),
        a = alpha + beta (F+S), b = beta (P+F), c = beta (P+S)."""
        pi, phi, psi = self.triple
        alpha = Fraction(alpha)
        s = pi + phi + psi
        beta = -(alpha + 1) / (2 * s)
        return UniformParams(alpha, beta,
                             a=alpha + beta * (phi + psi),
                             b=beta * (pi + phi),
                             c=beta * (pi + psi))

    def to_json(self) -> dict:
        return {"triple": list(self.triple),
                "feasible": self.feasible,
                "lower": [self.lower.numerator, self.lower.denominator],
                "upper": [self.upper.numerator, self.upper.denominator],
                "violated": list(self.violated)}


def _count_conditions(pi: int, phi: int, psi: int) -> tuple[str, ...]:
    """Combinatorial constraints on realizable, cycle-supporting triples."""
    bad = []
    counts = (pi, phi, psi)
    if pi + phi == 0:
        bad.append("pair-coefficient-vanishes")        # b = beta(P+F) must be negative
    if not phi < psi:
        bad.append("self-input-order")                 # b > c forces F < S
    if any(x > 4 or x < 0 for x in counts):
        bad.append("class-capacity")                   # at most 4 edges per input class
    for i in range(3):
        if counts[i] == 2 and all(counts[j] == 0 for j in range(3) if j != i):
            bad.append("isolated-pair-class")
            break
    if max(counts) - min(counts) > 2:
        bad.append("class-spread")
    if pi == 4 and psi == 4 and phi < 3:
        bad.append("saturated-classes")
    return tuple(dict.fromkeys(bad))


def uniform3_alpha_interval(pi: int, phi: int, psi: int) -> AlphaInterval:
    """Feasible alpha interval for per-vertex input counts (true, right, left).

    Lower bound: max of the -1/3 < a bound and the c < a bound; upper
    bound: min of the a < 0 bound and the a < b bound.  Empty interval or
    a violated count condition means the triple is infeasible.
    """
    if (pi, phi, psi) == (0, 0, 0):
        raise ValueError("at least one input class must be nonempty")
    if min(pi, phi, psi) < 0:
        raise ValueError("input counts are nonnegative")
    lo_outer = Fraction(-2 * pi + phi + psi, 6 * pi + 3 * phi + 3 * psi)
    up_outer = Fraction(phi + psi, 2 * pi + phi + psi)
    lo_order = Fraction(-(pi - phi), 3 * pi + phi + 2 * psi)
    up_order = Fraction(-(pi - psi), 3 * pi + 2 * phi + psi)
    lower = max(lo_outer, lo_order)
    upper = min(up_outer, up_order)
    violated = _count_conditions(pi, phi, psi)
    return AlphaInterval((pi, phi, psi), lower, upper, violated)


@lru_cache(maxsize=1)
def uniform3_admissible_configs() -> tuple[tuple[int, int, int], ...]:
    """All input-count triples in {0..4}^3 supporting the cycle, by brute force."""
    out = []
    for tri in itertools.product(range(5), repeat=3):
        if tri == (0, 0, 0):
            continue
        interval = uniform3_alpha_interval(*tri)
        if interval.feasible:
            out.append(tri)
    return tuple(sorted(out))


@lru_cache(maxsize=1)
def _order3_orbits() -> tuple[tuple[tuple[Hyperedge, ...], tuple[int, int, int]], ...]:
    """Orbits of the 21 order-3 edges under the cyclic vertex rotation,
    with the per-vertex input-count contribution of each orbit."""
    rot = {1: 2, 2: 3, 3: 1}
    all3 = [e for e in enumerate_hyperedges(3, 2) if e.order == 3]
    seen: set = set()
    orbits = []
    for e in sorted(all3, key=lambda e: e._key):
        if e._key in seen:
            continue
        orbit = [e]
        cur = e
        for _ in range(2):
            cur = cur.relabel(rot)
            orbit.append(cur)
        orbit_set = {o._key for o in orbit}
        seen |= orbit_set
        h = Hypergraph(3, tuple({o._key: o for o in orbit}.values()))
        prof = input_profile_3uniform(h)[1].as_tuple()
        orbits.append((tuple(orbit), prof))
    return tuple(orbits)


def construct_config_hypergraph(pi: int, phi: int, psi: int,
                                check_conditions: bool = True) -> Hypergraph:
    """A 3-uniform hypergraph whose input profile is (pi, phi, psi) everywhere.

    Searches cyclically symmetric candidates first (unions of rotation
    orbits realize vertex-independent profiles automatically), then falls
    back to a depth-first search over all 21 order-3 edges.
    """
    target = (pi, phi, psi)
    if check_conditions:
        bad = _count_conditions(*target)
        if bad:
            raise ValueError(f"triple {target} violates count conditions: {bad}")
    orbits = _order3_orbits()
    options = sorted(range(len(orbits)), key=lambda i: orbits[i][0][0]._key)
    for r in range(1, len(options) + 1):
        for combo in itertools.combinations(options, r):
            total = tuple(sum(orbits[i][1][j] for i in combo) for j in range(3))
            if total == target:
                edges = tuple(e for i in combo for e in orbits[i][0])
                return Hypergraph(3, edges)

    # general (non-symmetric) fallback
    all3 = [e for e in enumerate_hyperedges(3, 2) if e.order == 3]
    contribs = []
    for e in all3:
        h1 = Hypergraph(3, (e,))
        prof = input_profile_3uniform(h1)
        contribs.append(tuple(prof[k].as_tuple() for k in (1, 2, 3)))
    want = (target, target, target)

    def dfs(idx, acc, chosen):
        if acc == want:
            return chosen
        if idx == len(all3):
            return None
        for k in range(3):
            for j in range(3):
                if acc[k][j] > want[k][j]:
                    return None
        took = dfs(idx + 1,
                   tuple(tuple(a + c for a, c in zip(acc[k], contribs[idx][k]))
                         for k in range(3)),
                   chosen + [all3[idx]])
        if took is not None:
            return took
        return dfs(idx + 1, acc, chosen)

    zero = ((0, 0, 0),) * 3
    chosen = dfs(0, zero, [])
    if chosen is None:
        raise ValueError(f"no 3-uniform hypergraph realizes input profile {target}")
    return Hypergraph(3, tuple(chosen))


def uniform3_sweep() -> list[dict]:
    """Report row per admissible triple: interval, midpoint parameters, example."""
    rows = []
    for tri in uniform3_admissible_configs():
        interval = uniform3_alpha_interval(*tri)
        params = interval.params(interval.midpoint())
        h = construct_config_hypergraph(*tri)
        rows.append({
            "triple": list(tri),
            "alpha_interval": interval.to_json(),
            "alpha": [params.alpha.numerator, params.alpha.denominator],
            "params": {"a": float(params.a), "b": float(params.b), "c": float(params.c)},
            "example_hypergraph": h.to_json(),
        })
    return rows
