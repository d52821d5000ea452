"""Toric varieties as fans: divisors, support functions, Cartier data,
principal divisors of characters, regularity subfans, log discrepancies.

Sign convention: Cartier data is stored as the vector m_sigma with
<m_sigma, u_i> = d_i on each ray u_i of sigma, i.e. the negative of the
support function restricted to sigma.  This avoids double negation in
pullback code; the support function value at v is -<m_sigma, v>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .lattice import (
    Cone,
    Fan,
    LatticeError,
    dot,
    hnf,
    is_zero,
    mat_vec,
    primitive,
    snf,
    solve_rational,
    unit_vector,
    vneg,
)

Character = tuple  # exponent vector in the character lattice M


class NoCentreError(Exception):
    """The valuation vector lies outside the fan support."""


class NotQCartierError(Exception):
    """A divisor needed as Q-Cartier is not; carries the offending cone."""

    def __init__(self, failure):
        super().__init__(failure.message)
        self.failure = failure


class FanMapError(ValueError):
    """A lattice map does not send the source fan into the target fan."""


class ToricDivisor:
    """Torus-invariant Q-divisor: rational coefficients on the fan's rays.

    Omitted rays have coefficient 0; zero coefficients are dropped.
    """

    __slots__ = ("fan", "_coeffs")

    def __init__(self, fan, coefficients=()):
        self.fan = fan
        items = coefficients.items() if isinstance(coefficients, dict) else coefficients
        coeffs = {}
        rays = set(fan.all_rays)
        for ray, c in items:
            ray = tuple(ray)
            if ray not in rays:
                raise LatticeError(f"ray {list(ray)} does not belong to the fan")
            c = Fraction(c)
            if c != 0:
                coeffs[ray] = c
        self._coeffs = {ray: coeffs[ray] for ray in sorted(coeffs)}

    def coefficient(self, ray):
        return self._coeffs.get(tuple(ray), Fraction(0))

    def coefficients(self):
        return dict(self._coeffs)

    def __add__(self, other):
        if self.fan != other.fan:
            raise LatticeError("divisors live on different fans")
        out = dict(self._coeffs)
        for ray, c in other._coeffs.items():
            out[ray] = out.get(ray, Fraction(0)) + c
        return ToricDivisor(self.fan, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ToricDivisor(self.fan, {r: -c for r, c in self._coeffs.items()})

    def scale(self, k):
        k = Fraction(k)
        return ToricDivisor(self.fan, {r: k * c for r, c in self._coeffs.items()})

    def is_zero(self):
        return not self._coeffs

    def __eq__(self, other):
        return (
            isinstance(other, ToricDivisor)
            and self.fan == other.fan
            and self._coeffs == other._coeffs
        )

    def __repr__(self):
        return f"ToricDivisor({self._coeffs})"


def boundary_divisor(fan):
    """The toric boundary: coefficient 1 on every ray."""
    return ToricDivisor(fan, {r: Fraction(1) for r in fan.all_rays})


def canonical_divisor(fan):
    """The toric canonical divisor: coefficient -1 on every ray."""
    return ToricDivisor(fan, {r: Fraction(-1) for r in fan.all_rays})


def character_divisor(fan, char):
    """Principal divisor of a character: coefficient <m, u> on each ray u."""
    char = tuple(char)
    if len(char) != fan.ambient_dim:
        raise LatticeError("character dimension does not match fan")
    return ToricDivisor(fan, {r: Fraction(dot(char, r)) for r in fan.all_rays})


@dataclass(frozen=True)
class CartierData:
    """Per maximal cone, a rational M-vector m_sigma with <m_sigma, u_i> = d_i,
    plus the least positive integer q such that q*D is Cartier."""

    fan: Fan
    vectors: tuple
    cartier_index: int

    def evaluate(self, v):
        """<m_sigma, v> for the first maximal cone containing v, or None."""
        for cone, m in zip(self.fan.maximal_cones, self.vectors):
            if cone.contains(v):
                return sum(c * x for c, x in zip(m, v))
        return None


@dataclass(frozen=True)
class NotQCartier:
    """Structured failure value: the divisor is not Q-Cartier on `cone`."""

    cone: Cone
    message: str


def _cone_cartier_index(rays, values):
    """Least positive q such that <m, u_i> = q*d_i has an integer solution m.

    Via the Smith normal form of the ray matrix: with S = U*A*V and c = U*d,
    solvability over Z of A*m = q*d amounts to q*c_i/s_i integral on the
    diagonal and q*c_i = 0 beyond the rank.
    """
    if not rays:
        return 1
    s, u, _ = snf(rays)
    k = len(rays)
    n = len(rays[0])
    q = 1
    for i in range(k):
        ci = sum(Fraction(u[i][j]) * values[j] for j in range(k))
        si = s[i][i] if i < min(k, n) else 0
        if si == 0:
            if ci != 0:
                return None  # inconsistent over Q as well
            continue
        q = math.lcm(q, (ci / si).denominator)
    return q


def cartier_data(fan, divisor):
    """Solve the Cartier data of a toric divisor exactly.

    Returns CartierData, or NotQCartier naming the first cone where the
    system <m, u_i> = d_i has no rational solution.
    """
    vectors = []
    q = 1
    for cone in fan.maximal_cones:
        rays = cone.generators
        values = [divisor.coefficient(u) for u in rays]
        sol = solve_rational(rays, values)
        if sol is None:
            return NotQCartier(
                cone, f"not Q-Cartier on cone {list(cone.generators)}"
            )
        for u, d in zip(rays, values):  # verify every constraint explicitly
            assert sum(c * x for c, x in zip(sol, u)) == d
        cone_q = _cone_cartier_index(rays, values)
        assert cone_q is not None
        q = math.lcm(q, cone_q)
        vectors.append(sol)
    return CartierData(fan, tuple(vectors), q)


def pullback_divisor(lattice_map, source, target, divisor):
    """Pullback of a Q-Cartier divisor along a toric morphism.

    `lattice_map` has target_dim rows and source_dim columns and must send
    every source cone into some target cone (checked).  The coefficient on a
    source ray u is <m_sigma, map*u> for the target Cartier data.
    """
    cd = cartier_data(target, divisor)
    if isinstance(cd, NotQCartier):
        raise NotQCartierError(cd)
    for cone in source.maximal_cones:
        images = [mat_vec(lattice_map, g) for g in cone.generators]
        if not any(
            all(t.contains(v) for v in images) for t in target.maximal_cones
        ):
            raise FanMapError(
                f"source cone {list(cone.generators)} does not map into any "
                "cone of the target fan"
            )
    coeffs = {}
    for u in source.all_rays:
        v = mat_vec(lattice_map, u)
        val = cd.evaluate(v)
        assert val is not None
        coeffs[u] = val
    return ToricDivisor(source, coeffs)


def log_discrepancy(fan, boundary, e):
    """Log discrepancy a(E, X, B) of the toric valuation with primitive vector e.

    Accepts non-primitive e (normalized first).  Raises NoCentreError when e
    lies outside the fan support and NotQCartierError when K_X + B is not
    Q-Cartier; batch harnesses catch both and aggregate.
    """
    e = tuple(e)
    if is_zero(e):
        raise LatticeError("valuation vector must be nonzero")
    e = primitive(e)
    kb = canonical_divisor(fan) + boundary
    cd = cartier_data(fan, kb)
    if isinstance(cd, NotQCartier):
        raise NotQCartierError(cd)
    val = cd.evaluate(e)
    if val is None:
        raise NoCentreError("valuation has no centre")
    return -val


def regularity_subfan(fan, char):
    """The subfan where the character is regular: all cones sigma with
    <m, u> >= 0 on every ray u of sigma."""
    char = tuple(char)
    if len(char) != fan.ambient_dim:
        raise LatticeError("character dimension does not match fan")
    survivors = []
    for cone in fan.maximal_cones:
        if all(dot(char, u) >= 0 for u in cone.generators):
            survivors.append(cone)
            continue
        for face in cone.faces():
            if all(dot(char, u) >= 0 for u in face.generators):
                survivors.append(face)
    # keep the maximal survivors (all are canonical, so equality is structural)
    survivors = list(dict.fromkeys(survivors))
    keep = [
        c
        for c in survivors
        if not any(
            other != c and all(other.contains(g) for g in c.generators)
            for other in survivors
        )
    ]
    return Fan(fan.ambient_dim, keep)


def star_subdivision(fan, v):
    """Star subdivision of the fan at a primitive vector in its support."""
    v = primitive(tuple(v))
    if not fan.supports(v):
        raise LatticeError("subdivision centre lies outside the fan support")
    new_cones = []
    for cone in fan.maximal_cones:
        if not cone.contains(v):
            new_cones.append(cone)
            continue
        for face in cone.faces():
            if not face.contains(v):
                new_cones.append(Cone.generated_by(face.generators + (v,), fan.ambient_dim))
    return Fan.from_cones(fan.ambient_dim, new_cones)
