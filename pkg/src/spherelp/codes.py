"""Weighted spherical codes: example configurations, energy, design checks.

A weighted code is a tuple of distinct unit vectors with positive weights
summing to 1.  The bundled configurations are the ones whose energies the
bounds are tested against: the pentakis dodecahedron (icosahedron plus
dodecahedron with dual weights) and the union of a cube with a
cross-polytope in n dimensions, plus the individual polytopes and regular
polygons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb, fsum, sqrt

import numpy as np

from .orthopoly import MonomialPoly, gegenbauer_table, to_gegenbauer
from .potentials import Potential, potential_eval

GOLDEN = (1 + sqrt(5)) / 2


@dataclass
class WeightedCode:
    """Distinct unit vectors with positive weights summing to 1."""

    n: int
    points: np.ndarray
    weights: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] != self.n:
            raise ValueError("points must be an N x n array")
        if self.weights.shape != (self.points.shape[0],):
            raise ValueError("one weight per point required")
        norms = np.linalg.norm(self.points, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("points must be unit vectors")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        dist = np.linalg.norm(self.points[:, None] - self.points[None, :], axis=2)
        if np.min(dist + 2.0 * np.eye(self.points.shape[0])) <= 1e-9:
            raise ValueError("points must be pairwise distinct")
        self._gram = np.clip(self.points @ self.points.T, -1.0, 1.0)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def s_w(self) -> float:
        """Sum of squared weights."""
        return float(np.dot(self.weights, self.weights))

    @property
    def n_w(self) -> float:
        """Effective cardinality 1 / sum of squared weights."""
        return 1.0 / self.s_w

    @property
    def variance(self) -> float:
        return self.s_w / self.size - 1.0 / self.size**2

    @property
    def max_inner_product(self) -> float:
        off = self._gram[~np.eye(self.size, dtype=bool)]
        return float(np.max(off))

    def gram(self) -> np.ndarray:
        return self._gram.copy()


@dataclass(frozen=True)
class DesignCheckReport:
    strength: int
    moments: tuple[float, ...]
    tol: float


def energy(code: WeightedCode, h: Potential) -> float:
    """Weighted h-energy: sum over ordered distinct pairs of w_i w_j h(x_i . x_j).

    Terms are accumulated with exact (compensated) summation so the result
    matches high-precision reference values to the last printed digit.
    """
    if code.max_inner_product >= 1.0 - 1e-15:
        raise ValueError("coincident points: energy would need h(1)")
    g = code._gram
    w = code.weights
    terms = []
    for i in range(code.size):
        vals = potential_eval(h, g[i, i + 1 :])
        terms.extend(2.0 * w[i] * w[i + 1 :] * np.atleast_1d(vals))
    return fsum(terms)


def weighted_moment(code: WeightedCode, ell: int) -> float:
    """Moment M_ell: the full double sum of P_ell over the Gram matrix."""
    if ell < 1:
        raise ValueError("moment order must be >= 1")
    table = gegenbauer_table(code.n, ell, code._gram)
    return float(code.weights @ table[ell] @ code.weights)


def design_strength(code: WeightedCode, tau_max: int, tol: float = 1e-9) -> DesignCheckReport:
    """Largest tau <= tau_max with M_1, ..., M_tau all below tol."""
    if tau_max < 1:
        raise ValueError("tau_max must be >= 1")
    table = gegenbauer_table(code.n, tau_max, code._gram)
    moments = tuple(float(code.weights @ table[ell] @ code.weights) for ell in range(1, tau_max + 1))
    strength = 0
    for value in moments:
        if abs(value) > tol:
            break
        strength += 1
    return DesignCheckReport(strength, moments, tol)


def design_point_identity_check(
    code: WeightedCode, tau: int, trials: int, seed: int = 0
) -> float:
    """Max residual of sum_j w_j f(x . x_j) = f_0 over random f and random x.

    f ranges over random polynomials of degree <= tau, x over random unit
    vectors; f_0 is the mean of f against the inner-product measure.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        coeffs = rng.standard_normal(tau + 1)
        f0 = to_gegenbauer(MonomialPoly(tuple(coeffs)), code.n).coeffs[0]
        x = rng.standard_normal(code.n)
        x /= np.linalg.norm(x)
        inner = code.points @ x
        lhs = float(code.weights @ np.polynomial.polynomial.polyval(inner, coeffs))
        worst = max(worst, abs(lhs - f0))
    return worst


def _surface_monomial_integral(n: int, powers) -> float:
    """Exact integral of prod x_i**powers[i] over the unit sphere (probability
    surface measure): zero for any odd exponent, else a double-factorial ratio."""
    if any(p % 2 for p in powers):
        return 0.0
    total = sum(powers)
    num = 1.0
    for p in powers:
        for i in range(1, p, 2):
            num *= i
    den = 1.0
    for i in range(0, total, 2):
        den *= n + i
    return num / den


def sphere_quadrature_check(code: WeightedCode, tau: int, trials: int, seed: int = 0) -> float:
    """Max residual of the cubature identity on random n-variate polynomials.

    Compares the weighted node sum with the exact surface integral from
    closed-form monomial moments, for random sparse polynomials of total
    degree <= tau.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        residual = 0.0
        for _ in range(rng.integers(1, 6)):
            coeff = float(rng.standard_normal())
            powers = rng.multinomial(rng.integers(0, tau + 1), np.full(code.n, 1.0 / code.n))
            node_sum = float(code.weights @ np.prod(code.points**powers, axis=1))
            residual += coeff * (node_sum - _surface_monomial_integral(code.n, powers))
        worst = max(worst, abs(residual))
    return worst


def _cyclic(v):
    v = list(v)
    return [tuple(v[i:] + v[:i]) for i in range(len(v))]


def icosahedron() -> WeightedCode:
    # oriented as the dual of :func:`dodecahedron` (vertices over its faces)
    pts = []
    for sa in (1.0, -1.0):
        for sb in (1.0, -1.0):
            pts.extend(_cyclic((0.0, sa * GOLDEN, sb)))
    arr = np.asarray(pts) / sqrt(1 + GOLDEN**2)
    return WeightedCode(3, arr, np.full(12, 1 / 12), "icosahedron")


def dodecahedron() -> WeightedCode:
    pts = [
        (sa, sb, sc)
        for sa in (1.0, -1.0)
        for sb in (1.0, -1.0)
        for sc in (1.0, -1.0)
    ]
    for sa in (1.0, -1.0):
        for sb in (1.0, -1.0):
            pts.extend(_cyclic((0.0, sa / GOLDEN, sb * GOLDEN)))
    arr = np.asarray(pts) / sqrt(3)
    return WeightedCode(3, arr, np.full(20, 1 / 20), "dodecahedron")


def cube(n: int) -> WeightedCode:
    pts = np.array([[1 - 2 * ((i >> j) & 1) for j in range(n)] for i in range(2**n)], dtype=float)
    return WeightedCode(n, pts / sqrt(n), np.full(2**n, 1.0 / 2**n), f"cube:{n}")


def crosspolytope(n: int) -> WeightedCode:
    pts = np.vstack([np.eye(n), -np.eye(n)])
    return WeightedCode(n, pts, np.full(2 * n, 1.0 / (2 * n)), f"crosspolytope:{n}")


def regular_ngon(count: int) -> WeightedCode:
    angles = 2 * np.pi * np.arange(count) / count
    pts = np.column_stack([np.cos(angles), np.sin(angles)])
    return WeightedCode(2, pts, np.full(count, 1.0 / count), f"ngon:{count}")


def pentakis_dodecahedron() -> WeightedCode:
    ico, dod = icosahedron(), dodecahedron()
    pts = np.vstack([ico.points, dod.points])
    weights = np.concatenate([np.full(12, 5 / 168), np.full(20, 9 / 280)])
    return WeightedCode(3, pts, weights, "pentakis_dodecahedron")


def cube_crosspolytope(n: int) -> WeightedCode:
    """Dual union: cross-polytope points at weight 1/(2n + n^2), cube points
    at weight n^2 / (2^n (2n + n^2)).  It is a weighted 5-design for n >= 3
    and the equi-weighted regular 8-gon for n = 2."""
    if n < 2:
        raise ValueError("cube_crosspolytope needs n >= 2")
    w_p = 1.0 / (2 * n + n * n)
    w_c = n * n / (2**n * (2 * n + n * n))
    pts = np.vstack([crosspolytope(n).points, cube(n).points])
    weights = np.concatenate([np.full(2 * n, w_p), np.full(2**n, w_c)])
    return WeightedCode(n, pts, weights, f"cube_crosspolytope:{n}")


def twenty_four_cell() -> WeightedCode:
    code = cube_crosspolytope(4)
    return WeightedCode(4, code.points, code.weights, "twenty_four_cell")


_BUILDERS = {
    "pentakis_dodecahedron": lambda n: pentakis_dodecahedron(),
    "cube_crosspolytope": lambda n: cube_crosspolytope(_require_dim(n)),
    "regular_ngon": lambda n: regular_ngon(_require_dim(n)),
    "icosahedron": lambda n: icosahedron(),
    "dodecahedron": lambda n: dodecahedron(),
    "cube": lambda n: cube(_require_dim(n)),
    "crosspolytope": lambda n: crosspolytope(_require_dim(n)),
    "twenty_four_cell": lambda n: twenty_four_cell(),
}


def _require_dim(n):
    if n is None:
        raise ValueError("this configuration needs a dimension or point-count parameter")
    return int(n)


def build_config(name: str, n: int | None = None) -> WeightedCode:
    """Construct a named configuration; n is the dimension (or the point
    count for regular polygons)."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown configuration {name!r}") from None
    return builder(n)


def with_equal_weights(code: WeightedCode) -> WeightedCode:
    return WeightedCode(
        code.n,
        code.points,
        np.full(code.size, 1.0 / code.size),
        f"{code.name}:equal" if code.name else "",
    )


def closed_form_energy(name: str, n: int | None, h: Potential) -> float:
    """Closed-form weighted energy of the two flagship configurations,
    written from their inner-product distributions."""

    def H(t):
        return float(potential_eval(h, t))

    if name == "pentakis_dodecahedron":
        a = sqrt(1 - 2 / sqrt(5)) / sqrt(3)
        b = sqrt(1 + 2 / sqrt(5)) / sqrt(3)
        w_i, w_d = 5 / 168, 9 / 280
        r5 = sqrt(5)
        return fsum(
            [
                12 * w_i**2 * (H(-1) + 5 * H(-1 / r5) + 5 * H(1 / r5)),
                120 * w_i * w_d * (H(a) + H(-a) + H(b) + H(-b)),
                20 * w_d**2 * (H(-1) + 6 * H(-1 / 3) + 6 * H(1 / 3) + 3 * H(-r5 / 3) + 3 * H(r5 / 3)),
            ]
        )
    if name == "cube_crosspolytope":
        n = _require_dim(n)
        w_p = 1.0 / (2 * n + n * n)
        w_c = n * n / (2**n * (2 * n + n * n))
        rn = sqrt(n)
        terms = [
            2 * n * w_p**2 * (H(-1) + (2 * n - 2) * H(0)),
            2 ** (n + 1) * n * w_p * w_c * (H(1 / rn) + H(-1 / rn)),
        ]
        terms.extend(
            2**n * w_c**2 * comb(n, k) * H(-1 + 2 * k / n) for k in range(n)
        )
        return fsum(terms)
    raise ValueError(f"no closed-form energy for {name!r}")


def code_to_json(code: WeightedCode) -> str:
    payload = {
        "n": code.n,
        "points": [[float(x) for x in p] for p in code.points],
        "weights": [float(w) for w in code.weights],
    }
    if code.name:
        payload["name"] = code.name
    return json.dumps(payload)


def code_from_json(text: str) -> WeightedCode:
    data = json.loads(text)
    return WeightedCode(
        int(data["n"]),
        np.asarray(data["points"], dtype=float),
        np.asarray(data["weights"], dtype=float),
        data.get("name", ""),
    )
