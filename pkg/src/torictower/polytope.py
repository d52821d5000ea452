"""Relative degrees and volumes on projective-space fibers, and lattice
polytopes of nef toric divisors with exact normalized volumes.

Degrees and volumes target the projective-space models produced by the
tower engine: a divisor on P^n over the base is a combination of the
coordinate hyperplane classes plus a vertical part that contributes
nothing to the generic fiber.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    LatticeError,
    det_fraction,
    halfspace_intersection,
    hnf,
    is_zero,
    primitive,
    rank_int,
    solve_rational,
)


class UnboundedPolytopeError(Exception):
    """The divisor polyhedron has a nonzero recession cone."""


@dataclass(frozen=True)
class LatticePolytope:
    """A polytope by its vertex list (exact rational coordinates, irredundant,
    lex-sorted)."""

    ambient_dim: int
    vertices: tuple


@dataclass(frozen=True)
class ProjectiveDivisorData:
    """A divisor on a projective-space fiber: hyperplane-class coefficients,
    a marker for vertical components (which never contribute), and the
    polarization degree a with A = a * hyperplane."""

    fiber_dim: int
    hyperplane_coefficients: tuple
    has_vertical: bool = False
    polarization: int = 1

    def __post_init__(self):
        if self.fiber_dim < 1:
            raise LatticeError("fiber dimension must be >= 1")
        if self.polarization < 1:
            raise LatticeError("polarization degree must be >= 1")
        object.__setattr__(
            self,
            "hyperplane_coefficients",
            tuple(Fraction(c) for c in self.hyperplane_coefficients),
        )


def divisor_polytope(fan, divisor):
    """Vertex enumeration of P_D = {m : <m, u_i> >= -d_i} over the fan rays.

    Exact intersection of n-fold facet subsets with containment filtering.
    Requires the rays to span all of R^n positively (the fan is complete in
    the fiber directions), otherwise the polyhedron is unbounded and a
    structured failure is raised.
    """
    n = fan.ambient_dim
    rays = fan.all_rays
    rec_rays, rec_lin = halfspace_intersection(rays, n)
    if rec_rays or rec_lin:
        raise UnboundedPolytopeError("divisor not bounded above")
    rhs = {u: -divisor.coefficient(u) for u in rays}
    vertices = set()
    for subset in itertools.combinations(rays, n):
        if rank_int(subset) != n:
            continue
        point = solve_rational(subset, [rhs[u] for u in subset])
        if point is None:
            continue
        if all(sum(c * x for c, x in zip(u, point)) >= rhs[u] for u in rays):
            vertices.add(tuple(point))
    return LatticePolytope(ambient_dim=n, vertices=tuple(sorted(vertices)))


def _affine_rank(vertices):
    if len(vertices) <= 1:
        return 0
    v0 = vertices[0]
    rows = []
    for v in vertices[1:]:
        diff = [x - y for x, y in zip(v, v0)]
        den = math.lcm(*(f.denominator for f in map(Fraction, diff))) if diff else 1
        rows.append(tuple(int(Fraction(x) * den) for x in diff))
    rows = [r for r in rows if not is_zero(r)]
    return rank_int(tuple(rows)) if rows else 0


def _polytope_facets(vertices):
    """Vertex lists of the facets of conv(vertices), via the homogenization
    cone's supporting normals (exact double description)."""
    gens = []
    for v in vertices:
        hom = tuple(Fraction(x) for x in v) + (Fraction(1),)
        den = math.lcm(*(f.denominator for f in hom))
        gens.append(primitive(tuple(int(f * den) for f in hom)))
    n1 = len(vertices[0]) + 1
    normals, _equations = halfspace_intersection(gens, n1)
    facets = []
    seen = set()
    for a in normals:
        tight = tuple(
            v
            for v in vertices
            if sum(Fraction(c) * Fraction(x) for c, x in zip(a, tuple(v) + (1,))) == 0
        )
        if tight and tight not in seen:
            seen.add(tight)
            facets.append(list(tight))
    return facets


def _triangulate(vertices):
    """Pulling triangulation: simplices covering conv(vertices)."""
    r = _affine_rank(vertices)
    if len(vertices) == r + 1:
        return [list(vertices)]
    v0 = min(vertices)
    simplices = []
    for facet in _polytope_facets(vertices):
        if v0 in facet:
            continue
        for s in _triangulate(sorted(facet)):
            simplices.append(s + [v0])
    return simplices


def normalized_volume(polytope):
    """n! times the Euclidean volume, by exact recursive facet-pyramid
    decomposition.  Empty or lower-dimensional polytopes have volume 0."""
    verts = polytope.vertices
    if not verts:
        return Fraction(0)
    n = polytope.ambient_dim
    if _affine_rank(verts) < n:
        return Fraction(0)
    total = Fraction(0)
    for simplex in _triangulate(sorted(verts)):
        v0 = simplex[0]
        rows = [[Fraction(x) - Fraction(y) for x, y in zip(v, v0)] for v in simplex[1:]]
        total += abs(det_fraction(rows))
    return total


def relative_degree_on_P(data):
    """deg_{A/Z} D = (hyperplane degree of D) * a^(n-1); vertical components
    contribute nothing."""
    degree = sum(data.hyperplane_coefficients, Fraction(0))
    return degree * Fraction(data.polarization) ** (data.fiber_dim - 1)


def relative_volume_on_P(data):
    """vol_{/Z}(D) = k^n for D restricting to k times the hyperplane class on
    the fiber; 0 when the restriction is not effective."""
    k = sum(data.hyperplane_coefficients, Fraction(0))
    if k < 0:
        return Fraction(0)
    return k ** data.fiber_dim
