"""Special toric towers: validation, inductive fan construction, the
congruent birational identification with projective space over the base,
base change to a curve germ, local model descriptors, and the lc-place
transfer check.

Lattice conventions.  Level i lives in N_i = Z^(p+i-1) with coordinates
ordered (t_1..t_p, a_2, ..., a_i): each level appends its new coordinate
at the end, and the projection N_i -> N_(i-1) drops the last coordinate.
A node move's character over the level-(i-1) torus therefore has exponent
vector t_exponents + alpha_exponents in these coordinates.

A node move with character exponent m first restricts the previous level
to the regularity subfan (cones with <m,u> >= 0 on all rays); each
surviving cone sigma then lifts to

    sigma~ = {(v, s) : v in sigma, 0 <= s <= <m, v>},

generated by (u, 0) and (u, <m,u>) over the rays u of sigma.  This is the
fan of the chart carved out by the node equation: its dual is the semigroup
cone spanned by sigma-dual x {0}, the new coordinate, and (m, -1), which
node_chart_dual_violations cross-checks through an independent dual-cone
computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .lattice import (
    Cone,
    DEFAULT_MAX_RAYS,
    Fan,
    LatticeError,
    ResourceCapError,
    Violation,
    dot,
    dual_cone,
    identity_matrix,
    is_zero,
    kernel_basis,
    orthant_fan,
    primitive,
    product_fan,
    projective_fan,
    unit_vector,
    vneg,
)
from .toric import (
    NoCentreError,
    NotQCartier,
    boundary_divisor,
    canonical_divisor,
    cartier_data,
    regularity_subfan,
)


@dataclass(frozen=True)
class ProductMove:
    """Multiply the previous level by an affine line."""


@dataclass(frozen=True)
class NodeMove:
    """Carve the node equation a*a' = lambda out of the previous level.

    The character lambda has exponents over (a_2..a_(i-1), t_1..t_p); both
    tuples may contain negative entries and the trivial character is allowed.
    """

    alpha_exponents: tuple
    t_exponents: tuple

    def lattice_exponents(self):
        """Exponent vector in level-(i-1) lattice coordinates (t's first)."""
        return tuple(self.t_exponents) + tuple(self.alpha_exponents)


Move = Union[ProductMove, NodeMove]


@dataclass(frozen=True)
class TowerSpec:
    """Symbolic tower description: base dimension and ordered moves.

    Move k (0-based) builds level k+2; a node move there may reference the
    variables a_2..a_(k+1), so its alpha_exponents must have length k.
    """

    base_dim: int
    moves: tuple

    @property
    def depth(self):
        return len(self.moves) + 1


@dataclass(frozen=True)
class CurveGermData:
    """Vanishing orders (c_1..c_p) of the base coordinates along a curve germ,
    and whether the germ centre lies on the boundary of the curve."""

    orders: tuple
    on_boundary: bool


@dataclass(frozen=True)
class LocalModel:
    """Fibration-local classification of a torus orbit at some level."""

    kind: str  # "smooth_plain" | "smooth_on_section" | "node"
    node_character: Optional[NodeMove] = None


@dataclass(frozen=True)
class TowerLevel:
    fan: Fan
    boundary: "ToricDivisor"
    projection: Optional[tuple]  # lattice map to the previous level; None at level 1


@dataclass(frozen=True)
class TowerModel:
    spec: TowerSpec
    levels: tuple

    @property
    def depth(self):
        return len(self.levels)


@dataclass(frozen=True)
class ProjectiveModel:
    """The product fan of A^p with P^(d-1) plus the lattice identification
    (shared torus coordinates t_1..t_p, a_2..a_d) and its boundary."""

    fan: Fan
    identification: tuple
    boundary: "ToricDivisor"


@dataclass
class CheckOutcome:
    """Aggregated result of a batch check: counts plus violation witnesses."""

    checked: int = 0
    passed: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    skips: list = field(default_factory=list)

    def ok(self):
        return not self.violations

    def add_violation(self, kind, detail, **witness):
        self.violations.append({"kind": kind, "detail": detail, **witness})

    def add_skip(self, reason, **witness):
        self.skipped += 1
        self.skips.append({"reason": reason, **witness})


def validate_tower(spec):
    """Violations of the tower invariants; empty list means valid."""
    violations = []
    if spec.base_dim < 1:
        violations.append(Violation("base-dim", f"base_dim {spec.base_dim} must be >= 1"))
    for k, move in enumerate(spec.moves):
        level = k + 2
        if isinstance(move, ProductMove):
            continue
        if not isinstance(move, NodeMove):
            violations.append(Violation("move-type", f"move {k} has unknown type {type(move).__name__}"))
            continue
        if len(move.alpha_exponents) != k:
            violations.append(
                Violation(
                    "alpha-arity",
                    f"move {k} (level {level}): alpha_exponents has length "
                    f"{len(move.alpha_exponents)}, expected {k} "
                    f"(only a_2..a_{level - 1} are defined)",
                )
            )
        if len(move.t_exponents) != spec.base_dim:
            violations.append(
                Violation(
                    "t-arity",
                    f"move {k} (level {level}): t_exponents has length "
                    f"{len(move.t_exponents)}, expected {spec.base_dim}",
                )
            )
    return violations


def _require_valid(spec):
    violations = validate_tower(spec)
    if violations:
        raise LatticeError("invalid tower spec: " + "; ".join(v.detail for v in violations))


def build_model(spec, max_rays=DEFAULT_MAX_RAYS):
    """Realize the tower as one fan per level with coordinate projections."""
    _require_valid(spec)
    fan = orthant_fan(spec.base_dim)
    levels = [TowerLevel(fan=fan, boundary=boundary_divisor(fan), projection=None)]
    for move in spec.moves:
        prev = levels[-1].fan
        n = prev.ambient_dim
        new_coord = unit_vector(n + 1, n)
        if isinstance(move, ProductMove):
            cones = []
            for cone in prev.maximal_cones:
                gens = [g + (0,) for g in cone.generators] + [new_coord]
                cones.append(Cone._from_canonical(n + 1, tuple(sorted(gens))))
            fan = Fan(n + 1, cones)
        else:
            m = move.lattice_exponents()
            sub = regularity_subfan(prev, m)
            cones = []
            for cone in sub.maximal_cones:
                gens = set()
                for u in cone.generators:
                    gens.add(u + (0,))
                    gens.add(u + (dot(m, u),))
                cones.append(Cone._from_canonical(n + 1, tuple(sorted(gens))))
            fan = Fan(n + 1, cones)
        if len(fan.all_rays) > max_rays:
            raise ResourceCapError(
                f"level fan has {len(fan.all_rays)} rays, exceeding cap {max_rays}"
            )
        projection = tuple(unit_vector(n + 1, i) for i in range(n))
        levels.append(
            TowerLevel(fan=fan, boundary=boundary_divisor(fan), projection=projection)
        )
    return TowerModel(spec=spec, levels=tuple(levels))


def projective_model(spec):
    """The congruent birational model: fan of A^p x P^(d-1) with the identity
    lattice identification of Z^(p+d-1) and its full toric boundary."""
    _require_valid(spec)
    p, d = spec.base_dim, spec.depth
    if d == 1:
        fan = orthant_fan(p)
    else:
        fan = product_fan(orthant_fan(p), projective_fan(d - 1))
    return ProjectiveModel(
        fan=fan,
        identification=identity_matrix(p + d - 1),
        boundary=boundary_divisor(fan),
    )


def _zero_support_evaluator(fan):
    """Fast a(e) evaluator for a pair with canonical + boundary = 0.

    cartier_data must succeed with all-zero vectors; returns a callable
    giving a(e) (always 0 on the support) or None off support.
    """
    cd = cartier_data(fan, canonical_divisor(fan) + boundary_divisor(fan))
    if isinstance(cd, NotQCartier):
        return None, cd

    def evaluate(e):
        val = cd.evaluate(e)
        return None if val is None else -val

    return evaluate, cd


def sample_primitive_vectors(fan, samples, rng):
    """Seeded primitive vectors in the fan support: per sample, a random
    maximal cone and a random non-negative integer combination (entries <= 10)
    of its rays, primitivized.  Yields None for degenerate (zero) draws."""
    cones = fan.maximal_cones
    for _ in range(samples):
        cone = cones[rng.randrange(len(cones))]
        if not cone.generators:
            yield None
            continue
        v = (0,) * fan.ambient_dim
        for u in cone.generators:
            c = rng.randint(0, 10)
            if c:
                v = tuple(x + c * y for x, y in zip(v, u))
        yield None if is_zero(v) else primitive(v)


def lc_place_transfer_check(spec, samples, seed, max_rays=DEFAULT_MAX_RAYS, model=None):
    """Check that toric valuations of (V_d, C_d) are lc places of (P, G).

    Every ray of the level-d fan and `samples` seeded primitive vectors in its
    support must have log discrepancy exactly 0 for both pairs (both have
    canonical + boundary = 0).  Violations carry the witness vector.
    """
    _require_valid(spec)
    if model is None:
        model = build_model(spec, max_rays=max_rays)
    proj = projective_model(spec)
    out = CheckOutcome()
    fan_v = model.levels[-1].fan
    eval_v, cd_v = _zero_support_evaluator(fan_v)
    eval_p, cd_p = _zero_support_evaluator(proj.fan)
    if eval_v is None:
        out.add_violation("cartier", f"K+C not Q-Cartier on V_d: {cd_v.message}")
        return out
    if eval_p is None:
        out.add_violation("cartier", f"K+G not Q-Cartier on P: {cd_p.message}")
        return out
    rng = random.Random(seed)
    vectors = [("ray", r) for r in fan_v.all_rays]
    vectors += [
        ("sample", v) for v in sample_primitive_vectors(fan_v, samples, rng)
    ]
    for origin, e in vectors:
        out.checked += 1
        if e is None:
            out.add_skip("degenerate sample (zero vector)", origin=origin)
            continue
        a_v = eval_v(e)
        if a_v is None:
            out.add_skip("no centre on V_d", vector=list(e), origin=origin)
            continue
        a_p = eval_p(e)
        if a_p is None:
            out.add_violation(
                "no-centre-on-P",
                "vector lies in |Sigma_V| but not in |Sigma_P|",
                vector=list(e),
                origin=origin,
            )
            continue
        if a_v != 0 or a_p != 0:
            out.add_violation(
                "lc-transfer",
                f"log discrepancies a_V={a_v}, a_P={a_p} differ from 0",
                vector=list(e),
                origin=origin,
            )
        else:
            out.passed += 1
    return out


def base_change_to_curve(spec, germ):
    """Base change of the tower to a curve germ, as a symbolic transform.

    Each node character with t-exponents (n_1..n_p) becomes a character in
    the single parameter t with exponent sum(c_j * n_j); alpha exponents and
    product moves are untouched.  Unit factors never change exponents, so the
    germ is fully described by its vanishing orders and boundary flag.
    """
    _require_valid(spec)
    if len(germ.orders) != spec.base_dim:
        raise LatticeError(
            f"germ has {len(germ.orders)} orders, tower base dimension is {spec.base_dim}"
        )
    if any(c < 0 for c in germ.orders):
        raise LatticeError("vanishing orders must be non-negative")
    if not germ.on_boundary and any(c != 0 for c in germ.orders):
        raise LatticeError(
            "a germ off the boundary has no vanishing: all orders must be 0"
        )
    moves = []
    for move in spec.moves:
        if isinstance(move, ProductMove):
            moves.append(move)
        else:
            t_exp = sum(c * nu for c, nu in zip(germ.orders, move.t_exponents))
            moves.append(
                NodeMove(
                    alpha_exponents=tuple(move.alpha_exponents),
                    t_exponents=(t_exp,),
                )
            )
    return TowerSpec(base_dim=1, moves=tuple(moves))


def local_model_at(model, level, cone):
    """Classify the torus orbit of a level-`level` cone relative to the
    fibration to the previous level.

    Product move: smooth_on_section iff the cone contains the new-coordinate
    ray (the vanishing section of the new variable).  Node move: node iff both
    branch coordinates vanish on the orbit, i.e. some ray has positive last
    coordinate and some ray (v, s) has <m, v> - s > 0; otherwise smooth_plain.
    """
    if level == 1:
        raise LatticeError("base level has no fibration structure")
    if not 2 <= level <= model.depth:
        raise LatticeError(f"level {level} out of range 2..{model.depth}")
    fan = model.levels[level - 1].fan
    if cone.ambient_dim != fan.ambient_dim or not fan.contains_cone(cone):
        raise LatticeError("cone does not belong to the level fan")
    move = model.spec.moves[level - 2]
    n = fan.ambient_dim
    if isinstance(move, ProductMove):
        if cone.contains(unit_vector(n, n - 1)):
            return LocalModel(kind="smooth_on_section")
        return LocalModel(kind="smooth_plain")
    m = move.lattice_exponents()
    alpha_vanishes = any(g[-1] > 0 for g in cone.generators)
    alpha_prime_vanishes = any(dot(m, g[:-1]) - g[-1] > 0 for g in cone.generators)
    if alpha_vanishes and alpha_prime_vanishes:
        return LocalModel(kind="node", node_character=move)
    return LocalModel(kind="smooth_plain")


def torus_splitting_check(model):
    """Fan-level shadow of the torus splitting and fiber integrality:
    projections are coordinate projections with rank-one kernel, every cone
    maps into a cone below, and the fiber over the zero cone is {0} or a
    single new ray."""
    out = CheckOutcome()
    for i in range(1, model.depth):
        level = model.levels[i]
        prev = model.levels[i - 1]
        n_prev, n_cur = prev.fan.ambient_dim, level.fan.ambient_dim
        out.checked += 1
        proj = level.projection
        expected = tuple(unit_vector(n_cur, j) for j in range(n_prev))
        if n_cur != n_prev + 1 or proj != expected:
            out.add_violation(
                "splitting",
                f"level {i + 1}: projection is not the coordinate projection "
                "dropping one new coordinate",
                level=i + 1,
            )
            continue
        kernel = kernel_basis(proj, n_cur)
        if len(kernel) != 1:
            out.add_violation(
                "splitting",
                f"level {i + 1}: projection kernel has rank {len(kernel)}, expected 1",
                level=i + 1,
            )
            continue
        ok = True
        for cone in level.fan.maximal_cones:
            images = [g[:n_prev] for g in cone.generators]
            nonzero = [v for v in images if not is_zero(v)]
            if nonzero and not any(
                all(t.contains(v) for v in nonzero) for t in prev.fan.maximal_cones
            ):
                out.add_violation(
                    "projection",
                    f"level {i + 1}: cone {list(cone.generators)} does not project "
                    "into a cone of the previous level",
                    level=i + 1,
                )
                ok = False
            fiber_rays = [g for g in cone.generators if is_zero(g[:n_prev])]
            if len(fiber_rays) > 1:
                out.add_violation(
                    "fiber",
                    f"level {i + 1}: cone over the zero cone has "
                    f"{len(fiber_rays)} independent fiber rays",
                    level=i + 1,
                )
                ok = False
        if ok:
            out.passed += 1
    return out


def node_chart_dual_violations(model):
    """Cross-check each node-move chart against its semigroup presentation.

    For every maximal cone sigma~ of a node level, the dual of sigma~ must
    equal cone(sigma-dual x {0}, e_new, (m, -1)) where sigma is the projected
    cone.  Both sides go through independent dual-cone computations.
    """
    out = CheckOutcome()
    for i, move in enumerate(model.spec.moves):
        if not isinstance(move, NodeMove):
            continue
        level = model.levels[i + 1]
        n_prev = model.levels[i].fan.ambient_dim
        m = move.lattice_exponents()
        for cone in level.fan.maximal_cones:
            out.checked += 1
            projected = [g[:n_prev] for g in cone.generators if not is_zero(g[:n_prev])]
            if projected:
                sigma = Cone.generated_by(projected, n_prev)
            else:
                sigma = Cone._from_canonical(n_prev, ())
            sigma_dual = dual_cone(sigma)
            expected_gens = [g + (0,) for g in sigma_dual.generators]
            expected_gens.append(unit_vector(n_prev + 1, n_prev))
            expected_gens.append(tuple(m) + (-1,))
            expected = Cone.generated_by(expected_gens, n_prev + 1)
            actual = dual_cone(cone)
            same = all(expected.contains(g) for g in actual.generators) and all(
                actual.contains(g) for g in expected.generators
            )
            if same:
                out.passed += 1
            else:
                out.add_violation(
                    "node-chart-dual",
                    f"dual of node chart {list(cone.generators)} does not match the "
                    "semigroup presentation",
                    level=i + 2,
                )
    return out
