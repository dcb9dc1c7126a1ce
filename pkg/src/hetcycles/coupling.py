"""Polynomial internal dynamics and input-symmetric coupling functions.

A coupling function of order m takes the receiving node state z plus
m-1 input states and must be invariant under permutations of the
inputs.  Coefficients live on canonical (sorted) input exponents; a
term's value is the sum over the distinct permutations of its exponent
pattern.  Terms constant in the inputs are forbidden: couplings must
depend on the tail.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .hypergraph import Hyperedge

CanonKey = tuple[int, tuple[int, ...]]  # (z exponent, input exponents sorted descending)


def _canon(exponents: Iterable[int]) -> CanonKey:
    exps = tuple(int(e) for e in exponents)
    if not exps:
        raise ValueError("need at least the z exponent")
    return exps[0], tuple(sorted(exps[1:], reverse=True))


def _distinct_permutations(pattern: tuple[int, ...]):
    return set(itertools.permutations(pattern))


class SymmetricPolynomial:
    """Input-permutation-invariant polynomial G(z; y_1..y_{m-1})."""

    __slots__ = ("arity", "coeffs", "symmetrized")

    def __init__(self, arity: int, coeffs: Mapping[CanonKey, float] | None = None,
                 symmetrized: bool = False):
        if arity < 2:
            raise ValueError("coupling arity is at least 2 (z plus one input)")
        self.arity = int(arity)
        self.coeffs: dict[CanonKey, float] = {}
        self.symmetrized = symmetrized
        if coeffs:
            for key, v in coeffs.items():
                e0, rest = key
                if len(rest) != arity - 1:
                    raise ValueError(f"exponent arity mismatch in {key}")
                if all(e == 0 for e in rest):
                    raise ValueError("terms constant in the inputs are not allowed")
                k = _canon((e0, *rest))
                if v != 0.0:
                    self.coeffs[k] = self.coeffs.get(k, 0.0) + float(v)
            for k in [k for k, v in self.coeffs.items() if v == 0.0]:
                del self.coeffs[k]

    @classmethod
    def from_terms(cls, arity: int, terms: Iterable[tuple[Iterable[int], float]],
                   symmetrize: bool = True) -> "SymmetricPolynomial":
        """Build from raw (exponents, coeff) monomials.

        Non-symmetric input is averaged over input permutations (with a
        warning and a flag) rather than rejected.
        """
        raw: dict[tuple[int, ...], float] = {}
        for exps, v in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ValueError(f"term {exps} has arity {len(exps)}, expected {arity}")
            raw[exps] = raw.get(exps, 0.0) + float(v)
        canon: dict[CanonKey, float] = {}
        asym = False
        for exps, v in raw.items():
            if all(e == 0 for e in exps[1:]):
                raise ValueError("terms constant in the inputs are not allowed")
            canon.setdefault(_canon(exps), 0.0)
        for key in canon:
            e0, pattern = key
            orbit = _distinct_permutations(pattern)
            vals = [raw.get((e0, *p), 0.0) for p in orbit]
            if max(vals) != min(vals):
                asym = True
            canon[key] = sum(vals) / len(vals)
        if asym:
            if not symmetrize:
                raise ValueError("monomial list is not input-symmetric")
            warnings.warn("non-symmetric coupling terms were averaged over input "
                          "permutations", stacklevel=2)
        return cls(arity, canon, symmetrized=asym)

    # -- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        return max((e0 + sum(rest) for (e0, rest) in self.coeffs), default=0)

    @property
    def nodeunspecific(self) -> bool:
        return all(e0 == 0 for (e0, _rest) in self.coeffs)

    def orbit_terms(self):
        """Yield (full exponent tuple, coefficient) over all monomials."""
        for (e0, pattern), v in sorted(self.coeffs.items()):
            for p in sorted(_distinct_permutations(pattern)):
                yield (e0, *p), v

    # -- evaluation / calculus -------------------------------------------
    def evaluate(self, z: float, y) -> float:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.arity - 1,):
            raise ValueError(f"expected {self.arity - 1} inputs, got {y.shape}")
        total = 0.0
        with np.errstate(under="ignore"):
            for exps, v in self.orbit_terms():
                term = v * z ** exps[0]
                for yi, e in zip(y, exps[1:]):
                    if e:
                        term *= yi ** e
                total += term
        return float(total)

    def partial(self, slot: int) -> "SlotPolynomial":
        """Exact partial derivative with respect to slot (1 = z, 2.. = inputs)."""
        if not 1 <= slot <= self.arity:
            raise ValueError(f"slot {slot} out of range 1..{self.arity}")
        out: dict[tuple[int, ...], float] = {}
        i = slot - 1
        for exps, v in self.orbit_terms():
            if exps[i] == 0:
                continue
            d = list(exps)
            d[i] -= 1
            key = tuple(d)
            out[key] = out.get(key, 0.0) + v * exps[i]
        return SlotPolynomial(self.arity, out)

    def as_slot_polynomial(self) -> "SlotPolynomial":
        return SlotPolynomial(self.arity, {exps: v for exps, v in self.orbit_terms()})

    # -- serialization -----------------------------------------------------
    def to_json(self) -> list[dict]:
        return [{"exponents": [e0, *rest], "coeff": v}
                for (e0, rest), v in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, arity: int, obj: list[dict]) -> "SymmetricPolynomial":
        return cls(arity, {_canon(t["exponents"]): t["coeff"] for t in obj})

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetricPolynomial) and self.arity == other.arity \
            and self.coeffs == other.coeffs

    def __repr__(self) -> str:  # pragma: no cover
        return f"SymmetricPolynomial(arity={self.arity}, {self.coeffs})"


class SlotPolynomial:
    """Plain polynomial in (z, y_1, ..): derivative results and internal dynamics."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Mapping[tuple[int, ...], float] | None = None):
        self.arity = int(arity)
        self.coeffs: dict[tuple[int, ...], float] = {}
        if coeffs:
            for k, v in coeffs.items():
                k = tuple(int(e) for e in k)
                if len(k) != arity:
                    raise ValueError("exponent arity mismatch")
                if v != 0.0:
                    self.coeffs[k] = self.coeffs.get(k, 0.0) + float(v)

    def evaluate(self, args) -> float:
        args = np.asarray(args, dtype=float)
        if args.shape != (self.arity,):
            raise ValueError(f"expected {self.arity} arguments")
        total = 0.0
        with np.errstate(under="ignore"):
            for exps, v in self.coeffs.items():
                term = v
                for a, e in zip(args, exps):
                    if e:
                        term *= a ** e
                total += term
        return float(total)

    def diff(self, slot: int) -> "SlotPolynomial":
        out: dict[tuple[int, ...], float] = {}
        i = slot - 1
        for exps, v in self.coeffs.items():
            if exps[i] == 0:
                continue
            d = list(exps)
            d[i] -= 1
            out[tuple(d)] = out.get(tuple(d), 0.0) + v * exps[i]
        return SlotPolynomial(self.arity, out)

    def to_json(self) -> list[dict]:
        return [{"exponents": list(k), "coeff": v} for k, v in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, arity: int, obj: list[dict]) -> "SlotPolynomial":
        return cls(arity, {tuple(t["exponents"]): t["coeff"] for t in obj})

    def __eq__(self, other) -> bool:
        return isinstance(other, SlotPolynomial) and self.arity == other.arity \
            and self.coeffs == other.coeffs


def internal_poly(coeffs_by_power: Mapping[int, float]) -> SlotPolynomial:
    """Univariate internal dynamics F(z) from {power: coefficient}."""
    return SlotPolynomial(1, {(int(p),): c for p, c in coeffs_by_power.items()})


@dataclass(frozen=True)
class CouplingScheme:
    """Internal dynamics plus couplings, either one per order or one per edge."""

    internal: SlotPolynomial
    per_order: Mapping[int, SymmetricPolynomial] | None = None
    per_edge: Mapping[Hyperedge, SymmetricPolynomial] | None = None

    def __post_init__(self):
        if self.internal.arity != 1:
            raise ValueError("internal dynamics must be univariate")
        if (self.per_order is None) == (self.per_edge is None):
            raise ValueError("exactly one of per_order / per_edge must be given")
        if self.per_order is not None:
            object.__setattr__(self, "per_order", dict(self.per_order))
            for m, g in self.per_order.items():
                if g.arity != m:
                    raise ValueError(f"order-{m} coupling has arity {g.arity}")
        else:
            object.__setattr__(self, "per_edge", dict(self.per_edge))
            for e, g in self.per_edge.items():
                if g.arity != e.order:
                    raise ValueError(f"coupling arity {g.arity} does not match {e}")

    @property
    def homogeneous(self) -> bool:
        return self.per_order is not None

    @property
    def nodeunspecific(self) -> bool:
        return all(g.nodeunspecific for g in self._couplings())

    def _couplings(self):
        return (self.per_order or self.per_edge).values()

    def coupling_for(self, e: Hyperedge) -> SymmetricPolynomial:
        if self.per_order is not None:
            try:
                return self.per_order[e.order]
            except KeyError:
                raise KeyError(f"scheme has no order-{e.order} coupling for {e}") from None
        try:
            return self.per_edge[e]
        except KeyError:
            raise KeyError(f"scheme has no coupling for edge {e}") from None

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        out = {"internal": self.internal.to_json()}
        if self.per_order is not None:
            out["mode"] = "homogeneous"
            out["orders"] = {str(m): g.to_json() for m, g in sorted(self.per_order.items())}
        else:
            out["mode"] = "per_edge"
            out["edges"] = [{"edge": e.to_json(), "poly": g.to_json()}
                            for e, g in sorted(self.per_edge.items(), key=lambda kv: kv[0]._key)]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CouplingScheme":
        internal = SlotPolynomial.from_json(1, obj["internal"])
        if obj["mode"] == "homogeneous":
            per_order = {int(m): SymmetricPolynomial.from_json(int(m), g)
                         for m, g in obj["orders"].items()}
            return cls(internal, per_order=per_order)
        per_edge = {Hyperedge.from_json(item["edge"]):
                    SymmetricPolynomial.from_json(len(item["edge"]["tail"]) + 1, item["poly"])
                    for item in obj["edges"]}
        return cls(internal, per_edge=per_edge)


def odd_even_symmetry_check(scheme: CouplingScheme) -> bool:
    """True iff F is odd in z and every coupling term is odd in z, even per input.

    These parities make every assembled vector field component flip sign
    with its own variable and stay fixed under flipping any other one,
    which is the symmetry class whose perturbations preserve the
    three-saddle cycle.
    """
    if any(p % 2 == 0 for (p,) in scheme.internal.coeffs):
        return False
    for g in scheme._couplings():
        for (e0, rest) in g.coeffs:
            if e0 % 2 == 0 or any(e % 2 == 1 for e in rest):
                return False
    return True


def random_generic_scheme(max_order: int, max_degree: int, seed: int) -> CouplingScheme:
    """Homogeneous scheme with every admissible coefficient drawn nonzero.

    Deterministic in the seed; coefficients are uniform on +-[0.2, 1.0],
    so no cancellation is exact.  Used as a genericity probe when testing
    robust invariance claims.
    """
    if max_order < 2 or max_degree < 1:
        raise ValueError("need max_order >= 2 and max_degree >= 1")
    rng = np.random.default_rng(seed)

    def draw() -> float:
        return float(rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 1.0))

    internal = internal_poly({p: draw() for p in range(1, max_degree + 1)})
    per_order = {}
    for m in range(2, max_order + 1):
        coeffs = {}
        for e0 in range(0, max_degree):
            for pattern in itertools.combinations_with_replacement(range(0, max_degree + 1),
                                                                   m - 1):
                rest = tuple(sorted(pattern, reverse=True))
                if sum(rest) == 0 or e0 + sum(rest) > max_degree:
                    continue
                coeffs[(e0, rest)] = draw()
        per_order[m] = SymmetricPolynomial(m, coeffs)
    return CouplingScheme(internal, per_order=per_order)
