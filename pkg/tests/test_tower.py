import random
from fractions import Fraction

import pytest
import sympy

from torictower.lattice import (
    Cone,
    LatticeError,
    ResourceCapError,
    dot,
    dual_cone,
    fan_validate,
    identity_matrix,
    orthant_fan,
    unit_vector,
)
from torictower.toric import (
    CartierData,
    ToricDivisor,
    boundary_divisor,
    canonical_divisor,
    cartier_data,
    log_discrepancy,
)
from torictower.tower import (
    CurveGermData,
    NodeMove,
    ProductMove,
    TowerSpec,
    base_change_to_curve,
    build_model,
    lc_place_transfer_check,
    local_model_at,
    node_chart_dual_violations,
    projective_model,
    torus_splitting_check,
    validate_tower,
)
from torictower.verify import random_towers


def node(alpha, t):
    return NodeMove(alpha_exponents=tuple(alpha), t_exponents=tuple(t))


# --- validation --------------------------------------------------------


def test_validate_product_tower():
    assert validate_tower(TowerSpec(1, (ProductMove(),))) == []


def test_validate_rejects_undefined_alpha():
    # the first move (level 2) may not reference alpha_2
    spec = TowerSpec(1, (node((1,), (1,)),))
    kinds = {v.kind for v in validate_tower(spec)}
    assert "alpha-arity" in kinds


def test_validate_two_node_tower():
    spec = TowerSpec(2, (node((), (1, 1)), node((1,), (-1, 0))))
    assert validate_tower(spec) == []


def test_validate_t_arity():
    spec = TowerSpec(2, (node((), (1,)),))
    kinds = {v.kind for v in validate_tower(spec)}
    assert "t-arity" in kinds


# --- build_model -------------------------------------------------------


def test_build_node_t1_is_smooth_plane():
    # eliminating a' from a*a' = t presents the chart as a polynomial ring;
    # its fan is the full cone((1,0),(1,1))
    model = build_model(TowerSpec(1, (node((), (1,)),)))
    assert model.levels[1].fan.maximal_cones[0].generators == ((1, 0), (1, 1))


def test_build_node_t1_squared_is_a1_singularity():
    model = build_model(TowerSpec(1, (node((), (2,)),)))
    cone = model.levels[1].fan.maximal_cones[0]
    assert cone.generators == ((1, 0), (1, 2))
    # semigroup oracle: the dual equals cone((1,0),(0,1),(2,-1)) as a set;
    # (1,0) spans t = a*a' and is interior, so the extreme rays are the other two
    from torictower.lattice import cones_equal_as_sets

    dual = dual_cone(cone)
    assert cones_equal_as_sets(dual, Cone.generated_by([(1, 0), (0, 1), (2, -1)]))
    assert dual.generators == ((0, 1), (2, -1))


def test_build_product_is_plane():
    model = build_model(TowerSpec(1, (ProductMove(),)))
    assert model.levels[1].fan == orthant_fan(2)


def test_build_trivial_character_keeps_fan_flat():
    # a*a' = 1 is a torus direction: sigma~ = sigma x {0}
    model = build_model(TowerSpec(1, (node((), (0,)),)))
    assert model.levels[1].fan.maximal_cones[0].generators == ((1, 0),)


def test_build_levels_are_valid_fans():
    spec = TowerSpec(2, (node((), (1, 1)), ProductMove(), node((1, 0), (2, -1))))
    model = build_model(spec)
    assert model.depth == 4
    for level in model.levels:
        assert fan_validate(level.fan) == []
    assert torus_splitting_check(model).ok()
    assert node_chart_dual_violations(model).ok()


def test_build_ray_cap():
    spec = TowerSpec(3, (node((), (1, 1, 1)), node((1,), (1, 1, 1))))
    with pytest.raises(ResourceCapError):
        build_model(spec, max_rays=3)


def test_node_ray_bounds_invariant():
    spec = TowerSpec(2, (node((), (2, 1)), node((1,), (1, -1))))
    model = build_model(spec)
    for i, move in enumerate(spec.moves):
        if not isinstance(move, NodeMove):
            continue
        m = move.lattice_exponents()
        prev_dim = model.levels[i].fan.ambient_dim
        for ray in model.levels[i + 1].fan.all_rays:
            assert 0 <= ray[-1] <= dot(m, ray[:prev_dim])


# --- projective model --------------------------------------------------


def test_projective_model_p1_d2():
    pm = projective_model(TowerSpec(1, (node((), (2,)),)))
    assert set(pm.fan.all_rays) == {(1, 0), (0, 1), (0, -1)}
    assert len(pm.fan.maximal_cones) == 2
    assert pm.identification == identity_matrix(2)
    assert all(pm.boundary.coefficient(r) == 1 for r in pm.fan.all_rays)


def test_projective_model_depth_one_is_base():
    pm = projective_model(TowerSpec(2, ()))
    assert pm.fan == orthant_fan(2)
    assert pm.identification == identity_matrix(2)


def test_level_d_rays_lie_in_projective_support():
    for spec in random_towers(30, seed=606):
        model = build_model(spec)
        pm = projective_model(spec)
        for ray in model.levels[-1].fan.all_rays:
            assert pm.fan.supports(ray)


# --- lc place transfer -------------------------------------------------


def test_lc_transfer_worked_example():
    spec = TowerSpec(1, (node((), (2,)),))
    model = build_model(spec)
    fan_v = model.levels[-1].fan
    pm = projective_model(spec)
    c = boundary_divisor(fan_v)
    g = pm.boundary
    assert log_discrepancy(fan_v, c, (1, 1)) == 0
    assert log_discrepancy(pm.fan, g, (1, 1)) == 0
    for ray in fan_v.all_rays:
        assert log_discrepancy(fan_v, c, ray) == 0
        assert log_discrepancy(pm.fan, g, ray) == 0


def test_lc_transfer_check_reports():
    res = lc_place_transfer_check(TowerSpec(1, (node((), (2,)),)), samples=25, seed=11)
    assert res.ok()
    assert res.passed > 0
    assert res.checked == res.passed + res.skipped


def test_lc_transfer_no_violations_on_random_towers():
    rng = random.Random(17)
    for spec in random_towers(40, seed=17):
        res = lc_place_transfer_check(spec, samples=20, seed=rng.randrange(2**32))
        assert res.ok(), res.violations


# --- base change -------------------------------------------------------


def test_base_change_examples():
    spec = TowerSpec(2, (node((), (1, 1)),))
    out = base_change_to_curve(spec, CurveGermData((1, 1), True))
    assert out == TowerSpec(1, (node((), (2,)),))

    spec = TowerSpec(2, (node((), (3, -1)),))
    out = base_change_to_curve(spec, CurveGermData((2, 0), True))
    assert out.moves[0].t_exponents == (6,)

    spec = TowerSpec(2, (node((), (3, -1)), ProductMove(), node((1, 0), (0, 2))))
    out = base_change_to_curve(spec, CurveGermData((0, 0), False))
    assert out.base_dim == 1
    assert out.moves[0].t_exponents == (0,)
    assert isinstance(out.moves[1], ProductMove)
    assert out.moves[2].t_exponents == (0,)
    assert out.moves[2].alpha_exponents == (1, 0)


def test_base_change_identity_for_unit_order():
    for spec in random_towers(20, seed=31, max_p=1):
        assert base_change_to_curve(spec, CurveGermData((1,), True)) == spec


def test_base_change_linearity_in_orders():
    rng = random.Random(9)
    for spec in random_towers(20, seed=9):
        p = spec.base_dim
        c1 = tuple(rng.randint(0, 3) for _ in range(p))
        c2 = tuple(rng.randint(0, 3) for _ in range(p))
        both = tuple(a + b for a, b in zip(c1, c2))
        out1 = base_change_to_curve(spec, CurveGermData(c1, True))
        out2 = base_change_to_curve(spec, CurveGermData(c2, True))
        out3 = base_change_to_curve(spec, CurveGermData(both, True))
        for m1, m2, m3 in zip(out1.moves, out2.moves, out3.moves):
            if isinstance(m1, NodeMove):
                assert m3.t_exponents[0] == m1.t_exponents[0] + m2.t_exponents[0]


def test_base_change_errors():
    spec = TowerSpec(2, (node((), (1, 1)),))
    with pytest.raises(LatticeError, match="orders"):
        base_change_to_curve(spec, CurveGermData((1,), True))
    with pytest.raises(LatticeError, match="orders must be 0"):
        base_change_to_curve(spec, CurveGermData((1, 0), False))
    with pytest.raises(LatticeError, match="non-negative"):
        base_change_to_curve(spec, CurveGermData((-1, 0), True))


# --- local models and the Jacobian oracle -------------------------------


def jacobian_oracle_level2(move, cone):
    """Classify the orbit of a level-2 cone by symbolic differentiation.

    The distinguished point of the orbit has coordinate value 1 on monomials
    orthogonal to the cone and 0 otherwise; a node move's chart is the
    hypersurface a*a' = t^k and the fiber through the point is singular iff
    the gradient in the fiber variables vanishes there.
    """
    t, a, ap = sympy.symbols("t a ap")
    if isinstance(move, ProductMove):
        exps = {t: (1, 0), a: (0, 1)}
        point = {
            var: (1 if all(dot(w, g) == 0 for g in cone.generators) else 0)
            for var, w in exps.items()
        }
        return "smooth_on_section" if point[a] == 0 else "smooth_plain"
    k = move.t_exponents[0]
    exps = {t: (1, 0), a: (0, 1), ap: (k, -1)}
    point = {
        var: (1 if all(dot(w, g) == 0 for g in cone.generators) else 0)
        for var, w in exps.items()
    }
    equation = a * ap - t**k
    assert equation.subs(point) == 0  # the point lies on the chart
    grad = (sympy.diff(equation, a).subs(point), sympy.diff(equation, ap).subs(point))
    return "node" if grad == (0, 0) else "smooth_plain"


@pytest.mark.parametrize(
    "move",
    [node((), (1,)), node((), (2,)), ProductMove()],
    ids=["node-t", "node-t-squared", "product"],
)
def test_local_model_matches_jacobian_oracle(move):
    model = build_model(TowerSpec(1, (move,)))
    fan = model.levels[1].fan
    seen = set()
    for top in fan.maximal_cones:
        for face in top.faces():
            if face.generators in seen:
                continue
            seen.add(face.generators)
            got = local_model_at(model, 2, face)
            expected = jacobian_oracle_level2(move, face)
            assert got.kind == expected, (face.generators, got.kind, expected)
            if got.kind == "node":
                assert got.node_character == move
    assert seen  # at least the zero cone was classified


def test_local_model_examples():
    model = build_model(TowerSpec(1, (node((), (2,)),)))
    assert local_model_at(model, 2, model.levels[1].fan.maximal_cones[0]).kind == "node"
    model1 = build_model(TowerSpec(1, (node((), (1,)),)))
    # only the a-branch vanishes on the orbit of the middle ray
    assert local_model_at(model1, 2, Cone._from_canonical(2, ((1, 1),))).kind == "smooth_plain"
    productm = build_model(TowerSpec(1, (ProductMove(),)))
    assert local_model_at(productm, 2, Cone._from_canonical(2, ((0, 1),))).kind == "smooth_on_section"
    assert local_model_at(productm, 2, Cone._from_canonical(2, ((1, 0),))).kind == "smooth_plain"


def test_local_model_base_level_error():
    model = build_model(TowerSpec(1, (ProductMove(),)))
    with pytest.raises(LatticeError, match="base level has no fibration structure"):
        local_model_at(model, 1, Cone._from_canonical(1, ((1,),)))


def test_local_model_requires_fan_membership():
    model = build_model(TowerSpec(1, (node((), (2,)),)))
    with pytest.raises(LatticeError, match="does not belong"):
        local_model_at(model, 2, Cone._from_canonical(2, ((1, 1),)))


# --- blowup chart oracle for the log discrepancy example ----------------


def test_blowup_chart_oracle_pins_log_discrepancy_two():
    # chart of the origin blowup of the plane: (x, y) = (u, u*v); the
    # exceptional divisor is u = 0 and ord_E det Jac = 1, so a(E) = 1 + 1 = 2
    u, v = sympy.symbols("u v")
    x, y = u, u * v
    jac = sympy.Matrix([[sympy.diff(x, u), sympy.diff(x, v)], [sympy.diff(y, u), sympy.diff(y, v)]])
    jdet = sympy.expand(jac.det())
    multiplicity = 0
    while sympy.simplify(jdet.subs(u, 0)) == 0:
        jdet = sympy.cancel(jdet / u)
        multiplicity += 1
    assert multiplicity == 1
    fan = orthant_fan(2)
    assert log_discrepancy(fan, ToricDivisor(fan), (1, 1)) == 1 + multiplicity


# --- torus splitting ----------------------------------------------------


def test_torus_splitting_passes_on_built_towers():
    for spec in random_towers(25, seed=77):
        model = build_model(spec)
        assert torus_splitting_check(model).ok()


def test_torus_splitting_detects_bad_fiber():
    from torictower.tower import TowerLevel, TowerModel
    from torictower.toric import boundary_divisor as bd
    from torictower.lattice import Fan

    base = orthant_fan(1)
    # hand-built "level 2" in Z^3 with a projection dropping two coordinates:
    # the fiber over the zero cone picks up two independent rays
    bad_fan = Fan(3, (Cone._from_canonical(3, ((0, 0, 1), (0, 1, 0))),))
    projection = (unit_vector(3, 0),)
    model = TowerModel(
        spec=TowerSpec(1, (ProductMove(),)),
        levels=(
            TowerLevel(fan=base, boundary=bd(base), projection=None),
            TowerLevel(fan=bad_fan, boundary=bd(bad_fan), projection=projection),
        ),
    )
    res = torus_splitting_check(model)
    assert not res.ok()
    kinds = {v["kind"] for v in res.violations}
    assert "splitting" in kinds or "fiber" in kinds


def test_torus_splitting_depth_one_vacuous():
    model = build_model(TowerSpec(2, ()))
    res = torus_splitting_check(model)
    assert res.ok() and res.checked == 0


# --- K + C is Cartier at every level ------------------------------------


def test_canonical_plus_boundary_cartier_every_level():
    for spec in random_towers(25, seed=55):
        model = build_model(spec)
        for level in model.levels:
            cd = cartier_data(level.fan, canonical_divisor(level.fan) + level.boundary)
            assert isinstance(cd, CartierData)
            assert cd.cartier_index == 1
            assert all(all(x == 0 for x in m) for m in cd.vectors)
