"""Batch verification suites and the independent oracles they check against.

Each suite replays an invariant family on seeded random instances and
aggregates violations instead of raising.  The oracles here deliberately
take different routes from the production code: HNF via literal elementary
row operations (repeated subtraction), dual cones via facet-subset
enumeration, cone membership via Fourier-Motzkin elimination, invariant
factors via minor gcds, and the simplicial log-discrepancy formula via
Cramer's rule.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .documents import random_tower
from .lattice import (
    Cone,
    Fan,
    LatticeError,
    cones_equal_as_sets,
    det_fraction,
    dot,
    dual_cone,
    fan_validate,
    hnf,
    identity_matrix,
    is_unimodular,
    is_zero,
    mat_mul,
    orthant_fan,
    primitive,
    projective_fan,
    snf,
    unit_vector,
    vadd,
    vneg,
    vscale,
)
from .polytope import (
    LatticePolytope,
    ProjectiveDivisorData,
    divisor_polytope,
    normalized_volume,
    relative_degree_on_P,
    relative_volume_on_P,
)
from .toric import (
    CartierData,
    ToricDivisor,
    boundary_divisor,
    canonical_divisor,
    cartier_data,
    character_divisor,
    log_discrepancy,
    pullback_divisor,
    star_subdivision,
)
from .tower import (
    CheckOutcome,
    CurveGermData,
    NodeMove,
    ProductMove,
    TowerSpec,
    base_change_to_curve,
    build_model,
    lc_place_transfer_check,
    node_chart_dual_violations,
    projective_model,
    torus_splitting_check,
)

SUITES = ("kernel", "toric", "tower", "lc", "basechange", "volume", "all")


# ---------------------------------------------------------------------------
# oracles


def is_row_hnf(h):
    """The row-HNF predicate: upper echelon, positive pivots, entries above
    each pivot reduced into [0, pivot)."""
    nr = len(h)
    nc = len(h[0]) if nr else 0
    last_pivot = -1
    seen_zero_row = False
    for i in range(nr):
        nz = [j for j in range(nc) if h[i][j] != 0]
        if not nz:
            seen_zero_row = True
            continue
        if seen_zero_row:
            return False
        p = nz[0]
        if p <= last_pivot or h[i][p] <= 0:
            return False
        last_pivot = p
        for k in range(i):
            if not 0 <= h[k][p] < h[i][p]:
                return False
        for k in range(i + 1, nr):
            if h[k][p] != 0:
                return False
    return True


def hnf_elementary_oracle(m):
    """HNF by literal elementary row operations only: swaps, negations and
    additions of one row to another (Euclid by repeated subtraction)."""
    rows = [list(r) for r in m]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0

    def add_row(i, j, sign):
        rows[i] = [a + sign * b for a, b in zip(rows[i], rows[j])]

    r = 0
    for c in range(nc):
        while True:
            nz = [i for i in range(r, nr) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: (abs(rows[i][c]), i))
            for i in nz:
                if i != i0:
                    sign = -1 if rows[i][c] * rows[i0][c] > 0 else 1
                    while rows[i][c] != 0 and abs(rows[i][c] + sign * rows[i0][c]) < abs(rows[i][c]):
                        add_row(i, i0, sign)
        nz = [i for i in range(r, nr) if rows[i][c] != 0]
        if not nz:
            continue
        if nz[0] != r:
            rows[r], rows[nz[0]] = rows[nz[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            while rows[i][c] < 0:
                add_row(i, r, 1)
            while rows[i][c] >= rows[r][c]:
                add_row(i, r, -1)
        r += 1
    return tuple(tuple(row) for row in rows)


def invariant_factors_minor_oracle(m):
    """Invariant factors from gcds of k x k minors."""
    nr = len(m)
    nc = len(m[0]) if nr else 0
    factors = []
    prev = 1
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                sub = [[Fraction(m[i][j]) for j in cols] for i in rows]
                g = math.gcd(g, abs(int(det_fraction(sub))))
        if g == 0:
            factors.append(0)
        else:
            factors.append(g // prev)
            prev = g
    return tuple(factors)


def dual_cone_facet_oracle(generators, n):
    """Extreme rays of {m : <m,v> >= 0} by (n-1)-subset kernel enumeration.

    Only valid for full-dimensional pointed input cones (the dual is then
    pointed and full-dimensional).  A kernel vector of a rank-(n-1) subset
    that evaluates >= 0 on every generator supports a facet, hence is an
    extreme ray of the dual; all extreme rays arise this way.
    """
    candidates = set()
    for subset in itertools.combinations(generators, n - 1):
        rows = [[Fraction(x) for x in g] for g in subset]
        # kernel of the subset via Cramer with one pivot column freed
        for free in range(n):
            cols = [j for j in range(n) if j != free]
            sub = [[row[j] for j in cols] for row in rows]
            if len(sub) != n - 1:
                break
            denom = det_fraction(sub)
            if denom == 0:
                continue
            rhs = [-row[free] for row in rows]
            sol = []
            for j in range(n - 1):
                num = det_fraction([
                    [sub[i][jj] if jj != j else rhs[i] for jj in range(n - 1)]
                    for i in range(n - 1)
                ])
                sol.append(num / denom)
            vec = [Fraction(0)] * n
            vec[free] = Fraction(1)
            for j, c in zip(cols, sol):
                vec[j] = c
            den = math.lcm(*(f.denominator for f in vec))
            ivec = tuple(int(f * den) for f in vec)
            for cand in (ivec, vneg(ivec)):
                if all(dot(cand, g) >= 0 for g in generators):
                    candidates.add(primitive(cand))
            break
    return tuple(sorted(candidates))


def _fm_normalize(rows):
    """Scale each constraint to primitive integer form and deduplicate."""
    seen = set()
    out = []
    for row in rows:
        den = math.lcm(*(f.denominator for f in row))
        ints = tuple(int(f * den) for f in row)
        if all(x == 0 for x in ints):
            continue
        g = 0
        for x in ints:
            g = math.gcd(g, abs(x))
        ints = tuple(x // g for x in ints)
        if ints not in seen:
            seen.add(ints)
            out.append([Fraction(x) for x in ints])
    return out


def _in_cone_fm(generators, v):
    """Membership of v in cone(generators) by Fourier-Motzkin elimination.

    Feasibility of {x >= 0 : sum x_i g_i = v}, eliminating one multiplier at
    a time over exact rationals; no linear programming involved.
    """
    k = len(generators)
    n = len(v)
    # constraints: coeffs over x_1..x_k plus constant, meaning sum + const >= 0
    cons = []
    for i in range(k):
        cons.append([Fraction(1) if j == i else Fraction(0) for j in range(k)] + [Fraction(0)])
    for row in range(n):
        eq = [Fraction(g[row]) for g in generators] + [Fraction(-v[row])]
        cons.append(list(eq))
        cons.append([-c for c in eq])
    for var in range(k):
        cons = _fm_normalize(cons)
        pos = [c for c in cons if c[var] > 0]
        neg = [c for c in cons if c[var] < 0]
        zero = [c for c in cons if c[var] == 0]
        new = list(zero)
        for cp in pos:
            for cn in neg:
                combo = [a * (-cn[var]) + b * cp[var] for a, b in zip(cp, cn)]
                new.append(combo)
        cons = new
    return all(c[-1] >= 0 for c in cons)


def in_cone_fm(generators, v):
    return _in_cone_fm(list(generators), tuple(v))


def simplicial_log_discrepancy_oracle(rays, boundary_coeffs, e):
    """Sum alpha_i (1 - b_i) with e = sum alpha_i u_i solved by Cramer's rule."""
    n = len(e)
    a = [[Fraction(rays[j][i]) for j in range(n)] for i in range(n)]
    d = det_fraction(a)
    if d == 0:
        raise LatticeError("rays are not simplicial")
    total = Fraction(0)
    for j in range(n):
        num = det_fraction([
            [a[i][jj] if jj != j else Fraction(e[i]) for jj in range(n)]
            for i in range(n)
        ])
        total += (num / d) * (1 - Fraction(boundary_coeffs[j]))
    return total


# ---------------------------------------------------------------------------
# random instance helpers


def _random_pointed_cone(rng, n, max_entry=5, max_gens=None):
    while True:
        k = rng.randint(2, max_gens or n + 2)
        gens = []
        while len(gens) < k:
            v = tuple(rng.randint(-max_entry, max_entry) for _ in range(n))
            if not is_zero(v):
                gens.append(v)
        cone = Cone.generated_by(gens, n)
        if cone.is_strongly_convex() and cone.generators:
            return cone


def _random_simplicial_cone(rng, n, max_entry=4):
    from .lattice import det_int

    while True:
        gens = []
        while len(gens) < n:
            v = tuple(rng.randint(0, max_entry) for _ in range(n))
            if not is_zero(v):
                gens.append(primitive(v))
        if det_int(tuple(gens)) == 0:
            continue
        cone = Cone.generated_by(gens, n)
        if len(cone.generators) == n and cone.is_strongly_convex():
            return cone


def random_towers(count, seed, max_p=3, max_d=5, max_exponent=3):
    """The seeded tower family used by the tower and lc suites."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = rng.randint(1, max_p)
        d = rng.randint(1, max_d)
        out.append(random_tower(p, d, max_exponent, rng.randrange(2**32)))
    return out


# ---------------------------------------------------------------------------
# suites


def suite_kernel(seed, samples=200):
    """HNF against the elementary-operation oracle (all 2x2 with entries in
    [-3,3], plus random shapes), SNF against minor gcds, dual-cone involution
    and the facet-enumeration oracle, cone membership against Fourier-Motzkin."""
    out = CheckOutcome()
    span = range(-3, 4)
    for a in span:
        for b in span:
            for c in span:
                for d in span:
                    m = ((a, b), (c, d))
                    h, u = hnf(m)
                    out.checked += 1
                    expected = hnf_elementary_oracle(m)
                    if (
                        h != expected
                        or not is_row_hnf(h)
                        or not is_unimodular(u)
                        or mat_mul(u, m) != h
                    ):
                        out.add_violation("hnf", f"HNF mismatch on {m}: {h} vs oracle {expected}")
                    else:
                        out.passed += 1
    rng = random.Random(seed)
    for _ in range(samples):
        nr, nc = rng.randint(1, 3), rng.randint(1, 3)
        m = tuple(tuple(rng.randint(-5, 5) for _ in range(nc)) for _ in range(nr))
        h, u = hnf(m)
        out.checked += 1
        if not (is_unimodular(u) and mat_mul(u, m) == h and is_row_hnf(h)):
            out.add_violation("hnf", f"HNF certificate failed on {m}")
            continue
        s, us, vs = snf(m)
        diag = tuple(s[i][i] for i in range(min(nr, nc)))
        if (
            not is_unimodular(us)
            or not is_unimodular(vs)
            or mat_mul(mat_mul(us, m), vs) != s
            or diag != invariant_factors_minor_oracle(m)
        ):
            out.add_violation("snf", f"SNF mismatch on {m}")
            continue
        out.passed += 1
    for _ in range(samples):
        n = rng.randint(2, 4)
        cone = _random_pointed_cone(rng, n)
        out.checked += 1
        dd = dual_cone(dual_cone(cone))
        if dd.generators != cone.generators:
            out.add_violation("dual-involution", f"dual dual differs on {cone.generators}")
            continue
        if cone.dim() == n:
            oracle = dual_cone_facet_oracle(cone.generators, n)
            if tuple(sorted(oracle)) != dual_cone(cone).generators:
                out.add_violation("dual-oracle", f"facet oracle differs on {cone.generators}")
                continue
        out.passed += 1
    for _ in range(samples):
        n = rng.randint(2, 3)
        cone = _random_pointed_cone(rng, n, max_entry=3, max_gens=n + 1)
        v = tuple(rng.randint(-6, 6) for _ in range(n))
        out.checked += 1
        if cone.contains(v) != in_cone_fm(cone.generators, v):
            out.add_violation("contains", f"membership mismatch: {v} in {cone.generators}")
        else:
            out.passed += 1
    # primitive(k*v) = primitive(v)
    for _ in range(samples):
        n = rng.randint(1, 4)
        v = tuple(rng.randint(-9, 9) for _ in range(n))
        if is_zero(v):
            continue
        k = rng.randint(1, 9)
        out.checked += 1
        if primitive(vscale(k, v)) != primitive(v):
            out.add_violation("primitive", f"primitive({k}*{v}) != primitive({v})")
        else:
            out.passed += 1
    return out


def suite_toric(seed, samples=60):
    """Log discrepancies against the Cramer-solved simplicial formula and
    star-subdivision pullback compatibility; divisor homomorphism; pullback
    functoriality; canonical + boundary Cartier with index 1."""
    out = CheckOutcome()
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(2, 3)
        cone = _random_simplicial_cone(rng, n)
        fan = Fan(n, (cone,))
        coeffs = {r: Fraction(rng.choice((0, 1, 2)), 2) for r in fan.all_rays}
        bdiv = ToricDivisor(fan, coeffs)
        lam = [rng.randint(0, 4) for _ in cone.generators]
        e = (0,) * n
        for l, g in zip(lam, cone.generators):
            e = vadd(e, vscale(l, g))
        if is_zero(e):
            out.checked += 1
            out.skipped += 1
            continue
        out.checked += 1
        a = log_discrepancy(fan, bdiv, e)
        ep = primitive(e)
        expected = simplicial_log_discrepancy_oracle(
            cone.generators, [coeffs[r] for r in cone.generators], ep
        )
        if a != expected:
            out.add_violation("simplicial", f"a={a} but formula gives {expected}", cone=list(cone.generators))
            continue
        # star subdivision at an interior vector, crepant boundary transported
        centre = primitive(tuple(sum(g[i] for g in cone.generators) for i in range(n)))
        refined = star_subdivision(fan, centre)
        kb = canonical_divisor(fan) + bdiv
        refined_b = pullback_divisor(identity_matrix(n), refined, fan, kb) - canonical_divisor(refined)
        if log_discrepancy(refined, refined_b, e) != a:
            out.add_violation("subdivision", "log discrepancy changed under star subdivision",
                              cone=list(cone.generators), vector=list(e))
            continue
        out.passed += 1
    # character divisor is a homomorphism
    fan = orthant_fan(3)
    for _ in range(samples):
        l = tuple(rng.randint(-4, 4) for _ in range(3))
        m = tuple(rng.randint(-4, 4) for _ in range(3))
        out.checked += 1
        if character_divisor(fan, vadd(l, m)) != character_divisor(fan, l) + character_divisor(fan, m):
            out.add_violation("character", f"Div({l}+{m}) != Div({l}) + Div({m})")
        else:
            out.passed += 1
    # pullback functoriality on P^1 multiplication maps
    p1 = projective_fan(1)
    d0 = ToricDivisor(p1, {(1,): 1})
    for _ in range(samples):
        j, k = rng.randint(1, 4), rng.randint(1, 4)
        out.checked += 1
        step = pullback_divisor(((k,),), p1, p1, pullback_divisor(((j,),), p1, p1, d0))
        composite = pullback_divisor(((j * k,),), p1, p1, d0)
        if step != composite:
            out.add_violation("functoriality", f"pullback by {j} then {k} differs from {j*k}")
        else:
            out.passed += 1
    # canonical + boundary is Cartier with index 1 on every fan we can see
    for f in (orthant_fan(2), projective_fan(2), projective_fan(3)):
        out.checked += 1
        cd = cartier_data(f, canonical_divisor(f) + boundary_divisor(f))
        if not isinstance(cd, CartierData) or cd.cartier_index != 1 or any(
            any(x != 0 for x in m) for m in cd.vectors
        ):
            out.add_violation("lc-couple", f"K+D not trivially Cartier on {f}")
        else:
            out.passed += 1
    return out


def suite_tower(seed, samples=200):
    """Construction soundness on seeded random towers: fan_validate at every
    level, torus splitting, K+C Cartier with index 1, node ray bounds, and the
    sigma-tilde dual-cone cross-check."""
    out = CheckOutcome()
    for idx, spec in enumerate(random_towers(samples, seed)):
        out.checked += 1
        model = build_model(spec)
        bad = False
        for li, level in enumerate(model.levels):
            violations = fan_validate(level.fan)
            if violations:
                out.add_violation("fan", f"tower {idx} level {li + 1}: {violations[0].detail}", tower=idx)
                bad = True
            cd = cartier_data(level.fan, canonical_divisor(level.fan) + level.boundary)
            if not isinstance(cd, CartierData) or cd.cartier_index != 1:
                out.add_violation("cartier", f"tower {idx} level {li + 1}: K+C not Cartier with q=1", tower=idx)
                bad = True
        for li, move in enumerate(model.spec.moves):
            fan = model.levels[li + 1].fan
            prev_dim = model.levels[li].fan.ambient_dim
            if isinstance(move, NodeMove):
                m = move.lattice_exponents()
                for ray in fan.all_rays:
                    if not 0 <= ray[-1] <= dot(m, ray[:prev_dim]):
                        out.add_violation(
                            "node-ray",
                            f"tower {idx} level {li + 2}: ray {list(ray)} outside 0 <= t <= <m,v>",
                            tower=idx,
                        )
                        bad = True
            else:
                new_coord = unit_vector(prev_dim + 1, prev_dim)
                for ray in fan.all_rays:
                    if ray[-1] != 0 and ray != new_coord:
                        out.add_violation(
                            "product-ray",
                            f"tower {idx} level {li + 2}: unexpected new ray {list(ray)}",
                            tower=idx,
                        )
                        bad = True
        split = torus_splitting_check(model)
        if not split.ok():
            out.add_violation("splitting", f"tower {idx}: {split.violations[0]['detail']}", tower=idx)
            bad = True
        duals = node_chart_dual_violations(model)
        if not duals.ok():
            out.add_violation("node-dual", f"tower {idx}: {duals.violations[0]['detail']}", tower=idx)
            bad = True
        if not bad:
            out.passed += 1
    return out


def suite_lc(seed, samples=200, per_tower=50):
    """lc-place transfer on the seeded tower family: every level-d ray plus
    sampled interior vectors must have log discrepancy 0 on both sides."""
    out = CheckOutcome()
    rng = random.Random(seed)
    for idx, spec in enumerate(random_towers(samples, seed)):
        res = lc_place_transfer_check(spec, samples=per_tower, seed=rng.randrange(2**32))
        out.checked += res.checked
        out.passed += res.passed
        out.skipped += res.skipped
        for v in res.violations:
            out.add_violation(v["kind"], f"tower {idx}: {v['detail']}", tower=idx, **{
                k: val for k, val in v.items() if k not in ("kind", "detail")
            })
    return out


def suite_basechange(seed, samples=100):
    """Base-change transform: node exponents recomputed independently,
    p=1 c=(1) identity, off-boundary germs force zero exponents, and
    linearity in the vanishing orders."""
    out = CheckOutcome()
    rng = random.Random(seed)
    for _ in range(samples):
        p = rng.randint(1, 3)
        d = rng.randint(1, 5)
        spec = random_tower(p, d, 3, rng.randrange(2**32))
        on_boundary = rng.randrange(2) == 0
        orders = tuple(rng.randint(0, 3) for _ in range(p)) if on_boundary else (0,) * p
        germ = CurveGermData(orders=orders, on_boundary=on_boundary)
        out.checked += 1
        changed = base_change_to_curve(spec, germ)
        ok = changed.base_dim == 1 and len(changed.moves) == len(spec.moves)
        for mv, new in zip(spec.moves, changed.moves):
            if isinstance(mv, ProductMove):
                ok = ok and isinstance(new, ProductMove)
                continue
            expected = sum(c * nu for c, nu in zip(orders, mv.t_exponents))
            ok = ok and new.alpha_exponents == mv.alpha_exponents
            ok = ok and new.t_exponents == (expected,)
            if not on_boundary:
                ok = ok and new.t_exponents == (0,)
        if not ok:
            out.add_violation("basechange", f"transform mismatch for orders {orders}")
            continue
        # linearity in the orders
        if on_boundary:
            orders2 = tuple(rng.randint(0, 3) for _ in range(p))
            changed2 = base_change_to_curve(spec, CurveGermData(orders2, True))
            both = base_change_to_curve(
                spec, CurveGermData(tuple(a + b for a, b in zip(orders, orders2)), True)
            )
            for m1, m2, m3 in zip(changed.moves, changed2.moves, both.moves):
                if isinstance(m1, NodeMove):
                    if m3.t_exponents[0] != m1.t_exponents[0] + m2.t_exponents[0]:
                        ok = False
        if ok:
            out.passed += 1
        else:
            out.add_violation("basechange-linearity", "transform not linear in the orders")
    # p=1, c=(1) identity
    for _ in range(20):
        spec = random_tower(1, rng.randint(1, 5), 3, rng.randrange(2**32))
        out.checked += 1
        if base_change_to_curve(spec, CurveGermData((1,), True)) != spec:
            out.add_violation("basechange-identity", "p=1, c=(1) transform is not the identity")
        else:
            out.passed += 1
    return out


def suite_volume(seed=None, samples=None):
    """Exact degree/volume formulas on projective fibers and polytope volumes
    of k*H on P^n; additivity, homogeneity, and the monotonicity audit."""
    out = CheckOutcome()
    for n in range(1, 5):
        fan = projective_fan(n)
        ray = unit_vector(n, 0)
        for k in range(1, 4):
            out.checked += 1
            poly = divisor_polytope(fan, ToricDivisor(fan, {ray: k}))
            if normalized_volume(poly) != Fraction(k) ** n:
                out.add_violation("volume", f"vol(P_{{{k}H}}) on P^{n} != {k}^{n}")
                continue
            out.passed += 1
    for n in range(1, 5):
        for a in range(1, 4):
            for deg in range(0, 4):
                out.checked += 1
                data = ProjectiveDivisorData(
                    fiber_dim=n, hyperplane_coefficients=(Fraction(deg),), polarization=a
                )
                if relative_degree_on_P(data) != Fraction(deg) * a ** (n - 1):
                    out.add_violation("degree", f"deg on P^{n} with a={a}, d={deg} wrong")
                    continue
                if relative_volume_on_P(data) != Fraction(deg) ** n:
                    out.add_violation("volume", f"vol on P^{n} with d={deg} wrong")
                    continue
                out.passed += 1
    # additivity and homogeneity
    out.checked += 1
    d1 = ProjectiveDivisorData(2, (1, 2), polarization=3)
    d2 = ProjectiveDivisorData(2, (Fraction(1, 2),), polarization=3)
    dsum = ProjectiveDivisorData(2, (1, 2, Fraction(1, 2)), polarization=3)
    if relative_degree_on_P(dsum) == relative_degree_on_P(d1) + relative_degree_on_P(d2):
        out.passed += 1
    else:
        out.add_violation("degree-additive", "relative degree not additive in D")
    # monotonicity audit: vol of (A + H + G)|_fiber non-decreasing per coefficient
    out.checked += 1
    monotone = True
    for base in itertools.product(range(0, 3), repeat=3):
        v0 = relative_volume_on_P(ProjectiveDivisorData(3, tuple(map(Fraction, base))))
        for axis in range(3):
            bumped = list(base)
            bumped[axis] += 1
            v1 = relative_volume_on_P(ProjectiveDivisorData(3, tuple(map(Fraction, bumped))))
            if v1 < v0:
                monotone = False
    if monotone:
        out.passed += 1
    else:
        out.add_violation("monotonicity", "relative volume decreased in a coefficient")
    return out


def run_suite(name, seed, samples=None):
    """Run one named invariant suite; `all` concatenates every suite."""
    if name == "kernel":
        return suite_kernel(seed, samples or 200)
    if name == "toric":
        return suite_toric(seed, samples or 60)
    if name == "tower":
        return suite_tower(seed, samples or 200)
    if name == "lc":
        return suite_lc(seed, samples or 200)
    if name == "basechange":
        return suite_basechange(seed, samples or 100)
    if name == "volume":
        return suite_volume(seed, samples)
    if name == "all":
        total = CheckOutcome()
        for sub in ("kernel", "toric", "tower", "lc", "basechange", "volume"):
            res = run_suite(sub, seed, samples)
            total.checked += res.checked
            total.passed += res.passed
            total.skipped += res.skipped
            total.violations.extend(
                {**v, "suite": sub} for v in res.violations
            )
        return total
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
