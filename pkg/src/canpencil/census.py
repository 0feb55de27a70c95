"""Finite-field census: nodes, branch incidence, and a quasi-smoothness sweep.

Characteristic-p results are sanity evidence, never proof: generic
smoothness is a characteristic-0 statement, so the sweep can falsify a
member but cannot verify the family.  The driver policy is to regenerate a
member on a char-p singularity and to raise an alarm only when failures
persist across several seeds.

The fiber of the ambient bundle is the weighted projective space
P(1:1:2:3); points are classes of (x0, x1, y, z) != 0 modulo
(x0, x1, y, z) ~ (l*x0, l*x1, l^2*y, l^3*z).  The canonical representative
normalizes the first nonzero coordinate to 1 whenever the weighted action
allows it (always, for x0 or x1 nonzero) and otherwise takes the
lexicographically smallest orbit element, which resolves the square/cube
class ambiguity deterministically.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Tuple

from .binform import BinForm, roots
from .fields import FieldSpec
from .family import SurfaceEquations
from .sections import BundleData, FiberMonomial, GradedSection

_Y = FiberMonomial(0, 0, 1, 0)
_X1SQ = FiberMonomial(0, 2, 0, 0)


@dataclass(frozen=True, order=True)
class WPSPoint:
    """A point of the bundle over F_p: base in P^1, fiber in P(1:1:2:3)."""

    base: Tuple[int, int]
    fiber: Tuple[int, int, int, int]

    def to_json_dict(self) -> dict:
        return {"base": list(self.base), "fiber": list(self.fiber)}


def canonical_fiber_rep(p: int, v: Tuple[int, int, int, int]) -> Tuple[int, int, int, int]:
    x0, x1, y, z = (c % p for c in v)
    if x0 == x1 == y == z == 0:
        raise ValueError("the origin is not a point of the weighted fiber")
    if x0 != 0:
        l = pow(x0, -1, p)
    elif x1 != 0:
        l = pow(x1, -1, p)
    else:
        # only y and z survive; minimize (l^2 y, l^3 z) lexicographically
        best = None
        for l in range(1, p):
            cand = (0, 0, l * l * y % p, pow(l, 3, p) * z % p)
            if best is None or cand < best:
                best = cand
        return best
    return (l * x0 % p, l * x1 % p, l * l * y % p, pow(l, 3, p) * z % p)


def enumerate_fiber_classes(p: int) -> List[Tuple[int, int, int, int]]:
    """All weighted-projective classes of the fiber, canonical and sorted."""
    seen = set()
    # x0 = 1 stratum: free (x1, y, z)
    for x1 in range(p):
        for y in range(p):
            for z in range(p):
                seen.add((1, x1, y, z))
    # x0 = 0, x1 = 1 stratum
    for y in range(p):
        for z in range(p):
            seen.add((0, 1, y, z))
    # x0 = x1 = 0: orbit representatives computed explicitly
    for y in range(p):
        for z in range(p):
            if y or z:
                seen.add(canonical_fiber_rep(p, (0, 0, y, z)))
    return sorted(seen)


def base_points(p: int) -> List[Tuple[int, int]]:
    return [(a, 1) for a in range(p)] + [(1, 0)]


def enumerate_points(pg: int, theta: int, p: int) -> Iterator[WPSPoint]:
    """Every point of the bundle over F_p exactly once, in canonical order."""
    BundleData(pg, theta)
    _check_prime(p)
    fibers = enumerate_fiber_classes(p)
    for base in base_points(p):
        for fiber in fibers:
            yield WPSPoint(base, fiber)


def _check_prime(p: int) -> FieldSpec:
    return FieldSpec.prime_field(p)  # rejects 2, 3, composites


def _as_prime_equations(eqs: SurfaceEquations, p: int) -> SurfaceEquations:
    """Equations over F_p: reduce a rational member, or verify the field."""
    spec = _check_prime(p)
    if eqs.field.is_prime_field:
        if eqs.field.p != p:
            raise ValueError(f"member lives over F_{eqs.field.p}, cannot census at p = {p}")
        return eqs
    def reduce_section(s: GradedSection) -> GradedSection:
        terms = {m: BinForm(spec, [spec.normalize(c) for c in coeff.coeffs])
                 for m, coeff in s.terms.items()}
        return GradedSection(s.bundle, spec, s.bidegree, terms)
    return SurfaceEquations(eqs.bundle, spec, reduce_section(eqs.Q), reduce_section(eqs.G))


# ---------------------------------------------------------------------------
# node census at {x0 = x1 = 0}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeRecord:
    point: WPSPoint
    multiplicity: int
    a1_ok: bool
    hessian_det: int

    def to_json_dict(self) -> dict:
        return {
            "point": self.point.to_json_dict(),
            "multiplicity": self.multiplicity,
            "type": "A1" if self.a1_ok else "degenerate",
            "hessian_det": self.hessian_det,
        }


@dataclass(frozen=True)
class NodeCensus:
    nodes: Tuple[NodeRecord, ...]
    bound: int  # 2 p_g - 2 + theta, the count over the algebraic closure
    rational_multiplicity_total: int
    roots_outside_field: bool


def _chart_value_and_derivative(form: BinForm, base: Tuple[int, int]):
    """(f, df/dlocal) at a base point, in the chart where it is finite."""
    a, b = base
    if b != 0:
        return form.evaluate(a, b), form.deriv_t0().evaluate(a, b)
    return form.evaluate(1, 0), form.deriv_t1().evaluate(1, 0)


def node_census(eqs: SurfaceEquations, p: int) -> NodeCensus:
    """Nodes of C = Q intersect {z = 0} along the section x0 = x1 = 0.

    They sit over the F_p-zeros of q_y at the fiber point (0:0:1:0).  Near
    such a point the chart y != 0 of the conic bundle has the invariant
    coordinates v = x0*x1/y, w = x1^2/y in which C is the hypersurface

        v^2 + q_x(t) w^2 + q_y(t) w = 0,

    so the singularity is an ordinary double point exactly when the
    Hessian of that local equation is invertible, which happens exactly at
    simple roots of q_y (the determinant is -2 * q_y'(t)^2).  The literal
    3x3 Hessian is assembled and tested rather than shortcut.
    """
    eqs = _as_prime_equations(eqs, p)
    qy = eqs.q_y
    if qy.is_zero:
        raise ValueError("q_y vanishes identically; the node census is undefined")
    qx = eqs.q_x
    found = roots(qy)
    records = []
    for base in sorted(found):
        mult = found[base]
        qx_val, _ = _chart_value_and_derivative(qx, base) if not qx.is_zero else (0, 0)
        _, qy_d = _chart_value_and_derivative(qy, base)
        hess = (
            (2, 0, 0),
            (0, 2 * qx_val % p, qy_d % p),
            (0, qy_d % p, 0),
        )
        det = (
            hess[0][0] * (hess[1][1] * hess[2][2] - hess[1][2] * hess[2][1])
            - hess[0][1] * (hess[1][0] * hess[2][2] - hess[1][2] * hess[2][0])
            + hess[0][2] * (hess[1][0] * hess[2][1] - hess[1][1] * hess[2][0])
        ) % p
        records.append(
            NodeRecord(
                point=WPSPoint(base, (0, 0, 1, 0)),
                multiplicity=mult,
                a1_ok=det != 0,
                hessian_det=det,
            )
        )
    total = sum(found.values())
    bound = 2 * eqs.bundle.pg - 2 + eqs.bundle.theta
    return NodeCensus(
        nodes=tuple(records),
        bound=bound,
        rational_multiplicity_total=total,
        roots_outside_field=total < bound,
    )


# ---------------------------------------------------------------------------
# branch disjointness at the nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchViolation:
    point: WPSPoint
    branch_value: int  # always 0: recorded for the report schema

    def to_json_dict(self) -> dict:
        return {"point": self.point.to_json_dict(), "branch_value": self.branch_value}


def branch_disjointness(eqs: SurfaceEquations, p: int) -> List[BranchViolation]:
    """Nodes where the branch curve passes through the branch point set.

    The branch form is the z-free part of G; at a node x0 = x1 = 0, y = 1
    only the y^3-coefficient survives.  A nonempty list is a report about
    the member, not an error.
    """
    eqs = _as_prime_equations(eqs, p)
    census = node_census(eqs, p)
    violations = []
    for rec in census.nodes:
        t0, t1 = rec.point.base
        value = 0
        for mono, coeff in eqs.branch_terms().items():
            if mono.i == 0 and mono.j == 0:
                value = (value + coeff.evaluate(t0, t1)) % p
        if value == 0:
            violations.append(BranchViolation(rec.point, 0))
    return violations


# ---------------------------------------------------------------------------
# quasi-smoothness sweep
# ---------------------------------------------------------------------------


def _sqrt_table(p: int) -> Dict[int, List[int]]:
    table: Dict[int, List[int]] = {}
    for r in range(p):
        table.setdefault(r * r % p, []).append(r)
    return table


def quasi_smooth_sweep(
    eqs: SurfaceEquations,
    p: int,
    base_order: Optional[List[Tuple[int, int]]] = None,
) -> List[WPSPoint]:
    """Rational points of the affine cone over X where the Jacobian drops rank.

    For each base point the fiber equations are scalarized; cone points are
    enumerated by solving Q for x0 and G for z through square-root tables,
    so the cost is about p^2 fiber pairs per base point.  At every cone
    point (x0, x1, y, z) != 0 with Q = G = 0 the 2x5 Jacobian in
    (x0, x1, y, z, t) is tested; rank < 2 points are collapsed to one
    canonical weighted-orbit representative per base point.  The result is
    sorted and independent of the processing order.
    """
    eqs = _as_prime_equations(eqs, p)
    sqrt = _sqrt_table(p)
    failures = set()
    bases = base_order if base_order is not None else base_points(p)
    branch = [(m.i, m.j, m.k, c) for m, c in eqs.branch_terms().items()]
    qx_form, qy_form = eqs.q_x, eqs.q_y

    for base in bases:
        qx, qx_d = _chart_value_and_derivative(qx_form, base) if not qx_form.is_zero else (0, 0)
        qy, qy_d = _chart_value_and_derivative(qy_form, base) if not qy_form.is_zero else (0, 0)
        gl = []
        for (i, j, k, coeff) in branch:
            val, dval = _chart_value_and_derivative(coeff, base)
            if val or dval:
                gl.append((i, j, k, val % p, dval % p))
        for x1 in range(p):
            x1sq = x1 * x1 % p
            for y in range(p):
                rhs = (-(qx * x1sq + qy * y)) % p
                for x0 in sqrt.get(rhs, ()):
                    # branch value and its partials at (x0, x1, y)
                    b_val = b_x0 = b_x1 = b_y = b_t = 0
                    for (i, j, k, g, gd) in gl:
                        mono = pow(x0, i, p) * pow(x1, j, p) % p * pow(y, k, p) % p
                        b_val = (b_val + g * mono) % p
                        b_t = (b_t + gd * mono) % p
                        if i:
                            b_x0 = (b_x0 + g * i * pow(x0, i - 1, p) * pow(x1, j, p) * pow(y, k, p)) % p
                        if j:
                            b_x1 = (b_x1 + g * j * pow(x0, i, p) * pow(x1, j - 1, p) * pow(y, k, p)) % p
                        if k:
                            b_y = (b_y + g * k * pow(x0, i, p) * pow(x1, j, p) * pow(y, k - 1, p)) % p
                    for z in sqrt.get((-b_val) % p, ()):
                        if x0 == 0 and x1 == 0 and y == 0 and z == 0:
                            continue
                        row_q = (2 * x0 % p, 2 * qx * x1 % p, qy % p, 0,
                                 (qx_d * x1sq + qy_d * y) % p)
                        row_g = (b_x0, b_x1, b_y, 2 * z % p, b_t)
                        if _rank_below_two(row_q, row_g, p):
                            failures.add(WPSPoint(base, canonical_fiber_rep(p, (x0, x1, y, z))))
    return sorted(failures)


def _rank_below_two(r1, r2, p: int) -> bool:
    for a in range(5):
        for b in range(a + 1, 5):
            if (r1[a] * r2[b] - r1[b] * r2[a]) % p:
                return False
    return True


# ---------------------------------------------------------------------------
# assembled report
# ---------------------------------------------------------------------------


@dataclass
class SingularReport:
    p_nodes: int
    p_sweep: Optional[int]
    nodes: NodeCensus = None
    branch_hits: List[BranchViolation] = dc_field(default_factory=list)
    cone_singularities: List[WPSPoint] = dc_field(default_factory=list)
    sweep_skipped: bool = False
    timings: Dict[str, float] = dc_field(default_factory=dict)

    @property
    def clean(self) -> bool:
        nodes_ok = all(r.a1_ok for r in self.nodes.nodes)
        return nodes_ok and not self.branch_hits and not self.cone_singularities

    def to_json_dict(self) -> dict:
        return {
            "prime_nodes": self.p_nodes,
            "prime_sweep": self.p_sweep,
            "node_bound": self.nodes.bound,
            "node_count": len(self.nodes.nodes),
            "roots_outside_field": self.nodes.roots_outside_field,
            "nodes": [r.to_json_dict() for r in self.nodes.nodes],
            "branch_hits": [v.to_json_dict() for v in self.branch_hits],
            "cone_singularities": [q.to_json_dict() for q in self.cone_singularities],
            "sweep_skipped": self.sweep_skipped,
            "clean": self.clean,
            "timings": self.timings,
        }


def run_census(
    eqs: SurfaceEquations,
    p_nodes: int = 101,
    p_sweep: Optional[int] = 11,
    skip_sweep: bool = False,
) -> SingularReport:
    """Node census plus branch check, and optionally the full sweep.

    Members over a prime field are censused at their own prime; rational
    members are reduced modulo the requested primes.
    """
    if eqs.field.is_prime_field:
        p_nodes = eqs.field.p
        p_sweep = eqs.field.p
    report = SingularReport(p_nodes=p_nodes, p_sweep=None if skip_sweep else p_sweep)
    t0 = time.perf_counter()
    report.nodes = node_census(eqs, p_nodes)
    report.branch_hits = branch_disjointness(eqs, p_nodes)
    report.timings["nodes_s"] = round(time.perf_counter() - t0, 6)
    if not skip_sweep:
        t1 = time.perf_counter()
        report.cone_singularities = quasi_smooth_sweep(eqs, p_sweep)
        report.timings["sweep_s"] = round(time.perf_counter() - t1, 6)
    else:
        report.sweep_skipped = True
    return report
