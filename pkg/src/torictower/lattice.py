"""Exact integer linear algebra and rational polyhedral cones and fans.

Everything here is exact: lattice vectors are tuples of Python ints,
rational data uses fractions.Fraction, and there is no floating point
anywhere.  Cones are stored by generators; the supporting-halfspace
description (facet normals plus equations) is derived on demand by a
double description pass and memoized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple  # lattice vector: tuple of ints
Matrix = tuple  # integer matrix: tuple of row tuples

DEFAULT_MAX_DIM = 10
DEFAULT_MAX_RAYS = 500


class LatticeError(ValueError):
    """Invalid lattice data (zero vector where nonzero required, shape mismatch...)."""


class ResourceCapError(RuntimeError):
    """A configured dimension or ray-count cap was exceeded."""


@dataclass(frozen=True)
class Violation:
    """One validation failure; validators return lists of these instead of raising."""

    kind: str
    detail: str

    def to_dict(self):
        return {"kind": self.kind, "detail": self.detail}


# ---------------------------------------------------------------------------
# vectors


def dot(a, b):
    if len(a) != len(b):
        raise LatticeError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(k, a):
    return tuple(k * x for x in a)


def is_zero(a):
    return all(x == 0 for x in a)


def content(a):
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in a:
        g = math.gcd(g, abs(x))
    return g


def primitive(v):
    """v divided by the gcd of its entries; direction unchanged."""
    g = content(v)
    if g == 0:
        raise LatticeError("zero vector has no primitive representative")
    if g == 1:
        return tuple(v)
    return tuple(x // g for x in v)


def unit_vector(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


# ---------------------------------------------------------------------------
# integer matrices


def identity_matrix(n):
    return tuple(unit_vector(n, i) for i in range(n))


def transpose(m, ncols=None):
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def det_int(m):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m):
    return len(m) > 0 and len(m) == len(m[0]) and abs(det_int(m)) == 1


def hnf(m):
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, H = U*m, H in upper-echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    h = [list(row) for row in m]
    u = [list(row) for row in identity_matrix(nr)]

    def row_sub(i, j, q):
        if q:
            h[i] = [x - q * y for x, y in zip(h[i], h[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(nc):
        # gcd the column below row r down to a single nonzero entry
        while True:
            nz = [i for i in range(r, nr) if h[i][c] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][c]), i))
            for i in nz:
                if i != i0:
                    row_sub(i, i0, h[i][c] // h[i0][c])
        nz = [i for i in range(r, nr) if h[i][c] != 0]
        if not nz:
            continue
        piv = nz[0]
        if piv != r:
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            row_sub(i, r, h[i][c] // h[r][c])
        r += 1
    return tuple(tuple(row) for row in h), tuple(tuple(row) for row in u)


def rank_int(m):
    if not m or not m[0]:
        return 0
    h, _ = hnf(m)
    return sum(1 for row in h if any(row))


def snf(m):
    """Smith normal form.

    Returns (S, U, V) with S = U*m*V diagonal, each diagonal entry
    non-negative and dividing the next, U and V unimodular.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    s = [list(row) for row in m]
    u = [list(row) for row in identity_matrix(nr)]
    v = [list(row) for row in identity_matrix(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in s:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nr, nc):
        # move a smallest-magnitude nonzero of the trailing block to (t, t)
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t] != 0:  # remainder becomes the smaller pivot
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the trailing block by s[t][t]
        stained = False
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if s[i][j] % s[t][t] != 0:
                    row_op(t, i, -1)  # row_t += row_i
                    stained = True
                    break
            if stained:
                break
        if stained:
            continue
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (
        tuple(tuple(row) for row in s),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def kernel_basis(m, ncols):
    """HNF basis (rows) of the integer kernel {x : m*x = 0}."""
    mt = transpose(m, ncols=ncols)
    if not mt:
        mt = tuple(() for _ in range(ncols))
    h, u = hnf(mt)
    return tuple(u[i] for i in range(len(h)) if not any(h[i]))


def solve_rational(rows, rhs):
    """One exact rational solution x of rows*x = rhs (free variables 0), or None."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nr):
        if aug[i][-1] != 0:
            return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return tuple(x)


def det_fraction(rows):
    """Exact determinant of a square matrix with Fraction/int entries."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for k in range(n):
        pr = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


# ---------------------------------------------------------------------------
# double description


def halfspace_intersection(constraints, n):
    """V-description of the cone {x in R^n : <a, x> >= 0 for every a}.

    Returns (rays, lineality): the extreme rays of the pointed part (primitive,
    lex-sorted) and an HNF basis of the lineality space.  Double description
    with incremental lineality reduction; the adjacency test is the standard
    combinatorial one, valid because the ray list stays minimal at every step.
    Deterministic: first-index pivoting, lexicographically sorted output.
    """
    lineality = [unit_vector(n, i) for i in range(n)]
    rays = []  # (vector, tight-bitmask over processed constraints)
    processed = []
    for a in constraints:
        a = tuple(a)
        if len(a) != n:
            raise LatticeError(f"constraint has dimension {len(a)}, expected {n}")
        if is_zero(a):
            continue
        bit = 1 << len(processed)
        lvals = [dot(a, l) for l in lineality]
        j0 = next((j for j, s in enumerate(lvals) if s != 0), None)
        if j0 is not None:
            l0, s0 = lineality[j0], lvals[j0]
            if s0 < 0:
                l0, s0 = vneg(l0), -s0
            new_lin = []
            for j, (l, s) in enumerate(zip(lineality, lvals)):
                if j != j0:
                    new_lin.append(primitive(vsub(vscale(s0, l), vscale(s, l0))))
            full = bit - 1  # tight on every previously processed constraint
            new_rays = []
            for r, mask in rays:
                rv = dot(a, r)
                r2 = primitive(vsub(vscale(s0, r), vscale(rv, l0)))
                new_rays.append((r2, mask | bit))
            new_rays.append((l0, full))
            rays = new_rays
            lineality = new_lin
        else:
            pos, zero, neg = [], [], []
            for r, mask in rays:
                rv = dot(a, r)
                if rv > 0:
                    pos.append((r, mask, rv))
                elif rv < 0:
                    neg.append((r, mask, rv))
                else:
                    zero.append((r, mask | bit))
            if neg:
                combos = {}
                for p, mp, pv in pos:
                    for q, mq, qv in neg:
                        t = mp & mq
                        blocked = any(
                            (t & ~mr) == 0 for r, mr in rays if r is not p and r is not q
                        )
                        if blocked:
                            continue
                        w = vsub(vscale(pv, q), vscale(qv, p))
                        if is_zero(w):
                            continue
                        w = primitive(w)
                        if w not in combos:
                            mask = bit
                            for j, c in enumerate(processed):
                                if dot(c, w) == 0:
                                    mask |= 1 << j
                            combos[w] = mask
                rays = [(r, m) for r, m, _ in pos] + zero + sorted(combos.items())
            else:
                rays = [(r, m) for r, m, _ in pos] + zero
        processed.append(a)
    out_rays = tuple(sorted(r for r, _ in rays))
    if lineality:
        lineality = kernel_basis(tuple(processed), n)
    return out_rays, tuple(lineality)


# ---------------------------------------------------------------------------
# cones


class Cone:
    """Rational polyhedral cone spanned by integer generators.

    Immutable; the supporting-halfspace description is computed once on
    demand and memoized (idempotent).  Cones produced by this module are
    canonical: generators are the primitive extreme rays in lex order
    (plus a +/- lineality basis for non-pointed cones).  Raw, possibly
    non-canonical cones can be constructed directly for validation.
    """

    __slots__ = ("ambient_dim", "generators", "_halfspaces")

    def __init__(self, ambient_dim, generators=()):
        self.ambient_dim = int(ambient_dim)
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise LatticeError(
                    f"generator {g} has dimension {len(g)}, expected {self.ambient_dim}"
                )
        self.generators = gens
        self._halfspaces = None

    @classmethod
    def _from_canonical(cls, ambient_dim, generators):
        return cls(ambient_dim, generators)

    @classmethod
    def generated_by(cls, vectors, ambient_dim=None):
        """Canonical cone spanned by arbitrary vectors (extreme rays extracted)."""
        vectors = [tuple(v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise LatticeError("ambient_dim required for a cone with no generators")
            ambient_dim = len(vectors[0])
        prim = sorted({primitive(v) for v in vectors if not is_zero(v)})
        normals, equations = halfspace_intersection(prim, ambient_dim)
        hs = list(normals)
        for e in equations:
            hs.append(tuple(e))
            hs.append(vneg(e))
        rays, lin = halfspace_intersection(hs, ambient_dim)
        gens = list(rays)
        for l in lin:
            gens.append(primitive(l))
            gens.append(primitive(vneg(l)))
        cone = cls(ambient_dim, tuple(sorted(gens)))
        cone._halfspaces = (normals, equations)
        return cone

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self.ambient_dim == other.ambient_dim
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.generators))

    def __repr__(self):
        return f"Cone(dim={self.ambient_dim}, generators={list(self.generators)})"

    def halfspaces(self):
        """(normals, equations): the cone is {x : <n,x> >= 0, <e,x> = 0}."""
        if self._halfspaces is None:
            self._halfspaces = halfspace_intersection(self.generators, self.ambient_dim)
        return self._halfspaces

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise LatticeError(
                f"vector dimension {len(v)} does not match ambient {self.ambient_dim}"
            )
        normals, equations = self.halfspaces()
        return all(dot(nrm, v) >= 0 for nrm in normals) and all(
            dot(e, v) == 0 for e in equations
        )

    def dim(self):
        return rank_int(self.generators)

    def is_strongly_convex(self):
        normals, equations = self.halfspaces()
        rows = tuple(normals) + tuple(equations)
        return rank_int(rows) == self.ambient_dim

    def faces(self):
        """All faces (itself and the zero cone included), canonical, deterministic.

        Assumes the generators are the extreme rays, as for every cone this
        module constructs.
        """
        normals, _ = self.halfspaces()
        rays = self.generators
        full = frozenset(range(len(rays)))
        seen = {full}
        queue = [full]
        while queue:
            cur = queue.pop()
            for nrm in normals:
                sub = frozenset(i for i in cur if dot(nrm, rays[i]) == 0)
                if sub not in seen:
                    seen.add(sub)
                    queue.append(sub)
        out = []
        for subset in sorted(seen, key=lambda s: (len(s), tuple(sorted(s)))):
            out.append(Cone._from_canonical(self.ambient_dim, tuple(sorted(rays[i] for i in subset))))
        return out


def dual_cone(c, max_dim=DEFAULT_MAX_DIM):
    """The dual cone {m : <m,v> >= 0 for all v in c}, by primitive extreme rays
    (plus a +/- lineality basis when the dual is not strongly convex)."""
    if c.ambient_dim > max_dim:
        raise ResourceCapError(
            f"ambient dimension {c.ambient_dim} exceeds configured cap {max_dim}"
        )
    rays, lin = halfspace_intersection(c.generators, c.ambient_dim)
    gens = list(rays)
    for l in lin:
        gens.append(primitive(l))
        gens.append(primitive(vneg(l)))
    out = Cone(c.ambient_dim, tuple(sorted(gens)))
    return out


def cone_contains(c, v):
    """Exact membership of v in the real cone spanned by c's generators."""
    return c.contains(v)


def cones_equal_as_sets(a, b):
    """Set equality of two cones via mutual generator containment."""
    if a.ambient_dim != b.ambient_dim:
        return False
    return all(b.contains(g) for g in a.generators) and all(
        a.contains(g) for g in b.generators
    )


def is_face_of(small, big):
    """Whether the cone `small` is a face of the canonical cone `big`.

    `small` may list its extreme rays in any order; `big` must be canonical
    (generators are its extreme rays), as for every cone this module builds.
    """
    if small.ambient_dim != big.ambient_dim:
        return False
    if not all(big.contains(g) for g in small.generators):
        return False
    normals, _ = big.halfspaces()
    tight = [nrm for nrm in normals if all(dot(nrm, g) == 0 for g in small.generators)]
    face_rays = tuple(
        sorted(r for r in big.generators if all(dot(nrm, r) == 0 for nrm in tight))
    )
    return face_rays == tuple(sorted(small.generators))


def intersect_cones(a, b):
    """The intersection cone, canonical.  Exact, via double description."""
    if a.ambient_dim != b.ambient_dim:
        raise LatticeError("ambient dimension mismatch")
    constraints = []
    for cone in (a, b):
        normals, equations = cone.halfspaces()
        constraints.extend(normals)
        for e in equations:
            constraints.append(tuple(e))
            constraints.append(vneg(e))
    rays, lin = halfspace_intersection(constraints, a.ambient_dim)
    gens = list(rays)
    for l in lin:
        gens.append(primitive(l))
        gens.append(primitive(vneg(l)))
    return Cone(a.ambient_dim, tuple(sorted(gens)))


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A fan stored by its maximal cones; faces are implicit.

    all_rays is the deduplicated lex-sorted union of the cones' rays.
    Construction does not validate; see fan_validate.
    """

    __slots__ = ("ambient_dim", "maximal_cones", "all_rays")

    def __init__(self, ambient_dim, cones):
        self.ambient_dim = int(ambient_dim)
        seen = {}
        for c in cones:
            if c.ambient_dim != self.ambient_dim:
                raise LatticeError("cone ambient dimension does not match fan")
            seen.setdefault(c.generators, c)
        self.maximal_cones = tuple(seen[k] for k in sorted(seen))
        self.all_rays = tuple(sorted({g for c in self.maximal_cones for g in c.generators}))

    @classmethod
    def from_cones(cls, ambient_dim, cones):
        """Build a fan, pruning cones contained in other listed cones."""
        cones = list(dict.fromkeys(cones))
        keep = []
        for c in cones:
            if any(
                other is not c and all(other.contains(g) for g in c.generators)
                and not all(c.contains(g) for g in other.generators)
                for other in cones
            ):
                continue
            keep.append(c)
        return cls(ambient_dim, keep)

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.ambient_dim == other.ambient_dim
            and self.maximal_cones == other.maximal_cones
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(c.generators for c in self.maximal_cones)))

    def __repr__(self):
        return f"Fan(dim={self.ambient_dim}, maximal_cones={len(self.maximal_cones)})"

    def find_cone(self, v):
        """First maximal cone containing v (canonical order), or None."""
        for c in self.maximal_cones:
            if c.contains(v):
                return c
        return None

    def supports(self, v):
        return self.find_cone(v) is not None

    def contains_cone(self, cone):
        """Whether `cone` (canonical) is a face of one of the maximal cones."""
        return any(is_face_of(cone, c) for c in self.maximal_cones)


def orthant_fan(n):
    """Fan of affine n-space: the positive orthant and its faces."""
    return Fan(n, (Cone._from_canonical(n, tuple(sorted(unit_vector(n, i) for i in range(n)))),))


def torus_fan(n):
    """Fan of the n-torus: the zero cone only."""
    return Fan(n, (Cone._from_canonical(n, ()),))


def projective_fan(n):
    """Complete fan of projective n-space; rays e_1..e_n and -(e_1+...+e_n)."""
    rays = [unit_vector(n, i) for i in range(n)] + [tuple(-1 for _ in range(n))]
    cones = []
    for skip in range(n + 1):
        gens = tuple(sorted(r for i, r in enumerate(rays) if i != skip))
        cones.append(Cone._from_canonical(n, gens))
    return Fan(n, cones)


def product_fan(a, b):
    """Product fan: maximal cones are products of maximal cones."""
    n = a.ambient_dim + b.ambient_dim
    zero_a = (0,) * a.ambient_dim
    zero_b = (0,) * b.ambient_dim
    cones = []
    for ca in a.maximal_cones:
        for cb in b.maximal_cones:
            gens = [g + zero_b for g in ca.generators] + [zero_a + g for g in cb.generators]
            cones.append(Cone._from_canonical(n, tuple(sorted(gens))))
    return Fan(n, cones)


def fan_validate(fan):
    """Validation report for a fan; an empty list means valid.

    Checks primitive, nonzero, pairwise-distinct generators, strong convexity,
    and that any two maximal cones intersect in a common face.
    """
    violations = []
    canonical = {}
    for c in fan.maximal_cones:
        ok = True
        seen = set()
        for g in c.generators:
            if is_zero(g):
                violations.append(Violation("non-primitive ray", f"zero generator in cone {list(c.generators)}"))
                ok = False
                continue
            if content(g) != 1:
                violations.append(Violation("non-primitive ray", f"ray {list(g)} has content {content(g)}"))
                ok = False
            if g in seen:
                violations.append(Violation("duplicate ray", f"ray {list(g)} listed twice in a cone"))
                ok = False
            seen.add(g)
        if ok and not c.is_strongly_convex():
            violations.append(
                Violation("not strongly convex", f"cone {list(c.generators)} contains a line")
            )
            ok = False
        if ok:
            canonical[c] = Cone.generated_by(c.generators, fan.ambient_dim)
    cones = [c for c in fan.maximal_cones if c in canonical]
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            a, b = canonical[cones[i]], canonical[cones[j]]
            inter = intersect_cones(a, b)
            if not (is_face_of(inter, a) and is_face_of(inter, b)):
                violations.append(
                    Violation(
                        "intersection not a face",
                        f"cones {list(cones[i].generators)} and {list(cones[j].generators)} "
                        f"meet in {list(inter.generators)} which is not a common face",
                    )
                )
    return violations
