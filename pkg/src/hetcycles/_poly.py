"""Sparse multivariate polynomials over float coefficients.

Internal workhorse for assembling network vector fields symbolically, so
that invariance, equivariance and realization checks can be decided as
coefficient-map identities instead of sampling.  Exponent tuples index a
dict of coefficients; everything stays exact as long as the coefficient
arithmetic is (sums and integer-multiple products of the inputs).
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

Key = tuple[int, ...]


class Poly:
    """Polynomial in ``n`` variables, stored as {exponent tuple: coefficient}."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs: Mapping[Key, float] | None = None):
        self.n = int(n)
        self.c: dict[Key, float] = {}
        if coeffs:
            for k, v in coeffs.items():
                if v != 0.0:
                    self.c[tuple(k)] = self.c.get(tuple(k), 0.0) + v
            self._prune()

    def _prune(self) -> None:
        for k in [k for k, v in self.c.items() if v == 0.0]:
            del self.c[k]

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls(n)

    @classmethod
    def const(cls, n: int, value: float) -> "Poly":
        return cls(n, {(0,) * n: value})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        key = [0] * n
        key[i] = 1
        return cls(n, {tuple(key): 1.0})

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        out = Poly(self.n)
        out.c = dict(self.c)
        for k, v in other.c.items():
            out.c[k] = out.c.get(k, 0.0) + v
        out._prune()
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1.0)

    def __mul__(self, other: "Poly") -> "Poly":
        out = Poly(self.n)
        acc = out.c
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                acc[k] = acc.get(k, 0.0) + v1 * v2
        out._prune()
        return out

    def scale(self, s: float) -> "Poly":
        return Poly(self.n, {k: s * v for k, v in self.c.items()})

    def pow(self, e: int) -> "Poly":
        out = Poly.const(self.n, 1.0)
        for _ in range(e):
            out = out * self
        return out

    # -- calculus -----------------------------------------------------
    def diff(self, i: int) -> "Poly":
        out = Poly(self.n)
        for k, v in self.c.items():
            if k[i] == 0:
                continue
            kk = list(k)
            kk[i] -= 1
            out.c[tuple(kk)] = out.c.get(tuple(kk), 0.0) + v * k[i]
        out._prune()
        return out

    # -- evaluation ---------------------------------------------------
    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        total = 0.0
        for k, v in self.c.items():
            term = v
            for xi, e in zip(x, k):
                if e:
                    term *= xi ** e
            total += term
        return total

    # -- substitutions ------------------------------------------------
    def permute_signed(self, perm: Iterable[int], signs: Iterable[int] | None = None) -> "Poly":
        """Substitute x_i -> sign_i * x_perm[i] (perm maps old index -> new index)."""
        perm = list(perm)
        signs = list(signs) if signs is not None else [1] * self.n
        out = Poly(self.n)
        for k, v in self.c.items():
            kk = [0] * self.n
            s = 1.0
            for i, e in enumerate(k):
                kk[perm[i]] += e
                if signs[i] < 0 and e % 2 == 1:
                    s = -s
            key = tuple(kk)
            out.c[key] = out.c.get(key, 0.0) + s * v
        out._prune()
        return out

    def collapse(self, target: Iterable[int | None], n_new: int) -> "Poly":
        """Substitute x_i -> u_target[i], or 0 when target[i] is None."""
        target = list(target)
        out = Poly(n_new)
        for k, v in self.c.items():
            kk = [0] * n_new
            dead = False
            for i, e in enumerate(k):
                if e == 0:
                    continue
                if target[i] is None:
                    dead = True
                    break
                kk[target[i]] += e
            if not dead:
                key = tuple(kk)
                out.c[key] = out.c.get(key, 0.0) + v
        out._prune()
        return out

    # -- comparisons --------------------------------------------------
    def max_coeff_diff(self, other: "Poly") -> float:
        keys = set(self.c) | set(other.c)
        if not keys:
            return 0.0
        return max(abs(self.c.get(k, 0.0) - other.c.get(k, 0.0)) for k in keys)

    def equals(self, other: "Poly", tol: float = 0.0) -> bool:
        return self.max_coeff_diff(other) <= tol

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol for v in self.c.values())

    def total_degree(self) -> int:
        return max((sum(k) for k in self.c), default=0)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            mono = "*".join(f"x{i + 1}^{e}" for i, e in enumerate(k) if e)
            parts.append(f"{self.c[k]:+g}" + (f"*{mono}" if mono else ""))
        return " ".join(parts)


class CompiledPoly:
    """Array form of a Poly for fast repeated evaluation."""

    __slots__ = ("exps", "coeffs", "n")

    def __init__(self, p: Poly):
        self.n = p.n
        items = sorted(p.c.items())
        self.exps = np.array([k for k, _ in items], dtype=np.int64).reshape(len(items), p.n)
        self.coeffs = np.array([v for _, v in items], dtype=float)

    def __call__(self, x) -> float:
        if len(self.coeffs) == 0:
            return 0.0
        x = np.asarray(x, dtype=float)
        with np.errstate(under="ignore"):
            monomials = np.prod(np.power(x[None, :], self.exps), axis=1)
            return float(monomials @ self.coeffs)


def finite_difference_jacobian(f, x, step: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian; the independent oracle for symbolic derivatives."""
    x = np.asarray(x, dtype=float)
    fx = np.asarray(f(x), dtype=float)
    J = np.zeros((fx.size, x.size))
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = step
        J[:, j] = (np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2.0 * step)
    return J
