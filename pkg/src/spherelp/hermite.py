"""Hermite interpolation on node multisets via Newton divided differences.

Certificate polynomials for both bound directions interpolate a potential
h at quadrature nodes: doubled nodes match h and h', simple nodes match
the value only.  Confluent divided differences consume the closed-form
first derivative; dominance of the interpolant over (or under) h is always
verified on a dense grid rather than assumed from the error formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orthopoly import GegenbauerSeries, MonomialPoly, to_gegenbauer
from .potentials import Potential, potential_derivative, potential_eval


@dataclass(frozen=True)
class NodeMultiset:
    """Strictly ascending nodes with multiplicities 1 or 2.

    Multiplicity 1 is allowed only at -1 (even-degree lower bound) or at
    the largest node (upper bound, where only the value is matched).
    """

    entries: tuple[tuple[float, int], ...]

    def __post_init__(self):
        nodes = [e[0] for e in self.entries]
        if any(b - a <= 0 for a, b in zip(nodes, nodes[1:])):
            raise ValueError("nodes must be strictly ascending")
        for node, mult in self.entries:
            if mult not in (1, 2):
                raise ValueError("multiplicities must be 1 or 2")
            if mult == 1 and node != -1.0 and node != nodes[-1]:
                raise ValueError("simple nodes allowed only at -1 or at the right endpoint")

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def expanded(self) -> list[float]:
        return [node for node, mult in self.entries for _ in range(mult)]


def ulb_nodes(nodes, eps: int) -> NodeMultiset:
    """Lower-bound multiset: all nodes doubled, except -1 simple when eps = 1."""
    entries = [(float(a), 2) for a in nodes]
    if eps == 1:
        entries[0] = (entries[0][0], 1)
    return NodeMultiset(tuple(entries))


def uub_nodes(nodes, eps: int) -> NodeMultiset:
    """Upper-bound multiset: interior nodes doubled, s simple, -1 simple if present."""
    entries = [(float(a), 2) for a in nodes]
    entries[-1] = (entries[-1][0], 1)
    if eps == 1:
        entries[0] = (entries[0][0], 1)
    return NodeMultiset(tuple(entries))


@dataclass
class InterpolantReport:
    """Hermite interpolant with both basis representations.

    ``node_residual`` is the largest relative defect of the interpolation
    conditions; ``residual_sign`` and ``max_violation`` are filled in by
    :func:`verify_dominance`.
    """

    poly: MonomialPoly
    gegenbauer: GegenbauerSeries
    node_residual: float
    residual_sign: str | None = None
    max_violation: float | None = None


def _newton_coefficients(z: np.ndarray, values: np.ndarray, derivs: dict[float, float]) -> np.ndarray:
    table = values.astype(float).copy()
    coeffs = [table[0]]
    for order in range(1, z.size):
        new = np.empty(z.size - order)
        for i in range(new.size):
            dz = z[i + order] - z[i]
            if dz == 0.0:
                new[i] = derivs[z[i]]  # confluent pair: slot holds h'(node)
            else:
                new[i] = (table[i + 1] - table[i]) / dz
        table = new
        coeffs.append(table[0])
    return np.asarray(coeffs)


def _newton_to_monomial(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.array([coeffs[-1]])
    for c, zj in zip(coeffs[-2::-1], z[-2::-1]):
        out = np.concatenate(([0.0], out)) - zj * np.concatenate((out, [0.0]))
        out[0] += c
    return out


def hermite_interpolant(h: Potential, nodes: NodeMultiset, n: int) -> InterpolantReport:
    """Interpolate h on the multiset: values everywhere, h' at doubled nodes.

    Newton's divided-difference form on the expanded (confluent) node list;
    the result has degree <= total - 1.  Interpolation conditions are
    re-checked to 1e-10 relative.
    """
    pts = np.array([node for node, _ in nodes.entries])
    if np.any(pts >= 1.0):
        raise ValueError("interpolation nodes must lie below 1")
    z = np.asarray(nodes.expanded())
    values = potential_eval(h, z)
    derivs = {
        node: float(potential_derivative(h, node))
        for node, mult in nodes.entries
        if mult == 2
    }
    newton = _newton_coefficients(z, np.asarray(values), derivs)
    mono = _newton_to_monomial(newton, z)
    poly = MonomialPoly(tuple(mono))
    series = to_gegenbauer(poly, n)

    hvals = potential_eval(h, pts)
    scale = max(1.0, float(np.max(np.abs(hvals))))
    residual = float(np.max(np.abs(poly(pts) - hvals))) / scale
    dpoly = poly.derivative()
    for node, mult in nodes.entries:
        if mult == 2:
            residual = max(residual, abs(float(dpoly(node)) - derivs[node]) / scale)
    return InterpolantReport(poly, series, residual)


def dominance_grid(lo: float, hi: float, nodes, points: int = 4001) -> np.ndarray:
    """Uniform grid on [lo, hi] refined near the interpolation nodes."""
    grid = [np.linspace(lo, hi, points)]
    for a in nodes:
        local = a + np.linspace(-1e-3, 1e-3, 81)
        grid.append(np.clip(local, lo, hi))
    return np.unique(np.concatenate(grid))


def verify_dominance(
    report: InterpolantReport,
    h: Potential,
    interval: tuple[float, float],
    direction: str,
    nodes=(),
) -> tuple[bool, float]:
    """Check f <= h ("below") or f >= h ("above") on the interval.

    Samples a 4001-point grid plus local refinement near the given nodes;
    tolerates violations up to 1e-9.  Records the outcome on the report and
    returns (ok, max_violation).
    """
    if direction not in ("below", "above"):
        raise ValueError("direction must be 'below' or 'above'")
    lo, hi = interval
    grid = dominance_grid(lo, min(hi, 1.0 - 1e-9), nodes)
    diff = potential_eval(h, grid) - report.poly(grid)
    if direction == "below":
        violation = max(0.0, -float(np.min(diff)))
    else:
        violation = max(0.0, float(np.max(diff)))
    ok = violation <= 1e-9
    if np.all(diff >= 0):
        sign = "below"
    elif np.all(diff <= 0):
        sign = "above"
    else:
        sign = "mixed"
    report.residual_sign = sign
    report.max_violation = violation
    return ok, violation
