import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.errors import (
    DegenerateInputError,
    EmptyIntersectionError,
    EmptySubspaceError,
    NotOnHyperplaneError,
    SubspaceInBodyError,
)
from src.geometry import (
    AffineSubspace,
    Ball,
    BodySection,
    ConeBall,
    L1Norm,
    L2Norm,
    LInfNorm,
    MaxOfBlocks,
    Polytope,
    PolytopeHull,
    Segment,
    SimplexOfLabels,
    SumOfBlocks,
    body_from_dict,
    body_to_dict,
    dist_between_convex,
    dist_point_to_affine,
    l1_dist_to_simplex,
    norm_eval,
    sine_ball,
    sine_bruteforce,
    sine_chain,
    sine_principal_angles,
    sine_prob_system,
    sine_simplex_lb,
)

vec4 = arrays(float, 4, elements=st.floats(-10.0, 10.0, allow_nan=False))

NORMS = [
    L1Norm(),
    L2Norm(),
    L2Norm((1.0, 2.0, 0.5, 3.0)),
    LInfNorm(),
    MaxOfBlocks((((0, 1), L2Norm()), ((2, 3), L1Norm()))),
    SumOfBlocks((((0,), L1Norm()), ((1, 2, 3), LInfNorm()))),
    PolytopeHull(np.array([[1.0, 1.0, 0.0, 0.0], [1.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 2.0]])),
]


class TestNorms:
    @pytest.mark.parametrize("norm", NORMS, ids=lambda n: type(n).__name__)
    @given(u=vec4, v=vec4, s=st.floats(-4.0, 4.0))
    @settings(max_examples=60, deadline=None)
    def test_norm_axioms(self, norm, u, v, s):
        nu, nv = norm_eval(norm, u), norm_eval(norm, v)
        assert nu >= 0.0
        assert norm_eval(norm, u + v) <= nu + nv + 1e-7 * (1.0 + nu + nv)
        assert norm_eval(norm, s * u) == pytest.approx(abs(s) * nu, rel=1e-7, abs=1e-9)

    def test_hull_of_unit_vectors_is_l1(self, rng):
        hull = PolytopeHull(np.eye(5))
        for v in rng.standard_normal((100, 5)):
            assert norm_eval(hull, v) == pytest.approx(np.abs(v).sum(), abs=1e-8)

    def test_simplex_induces_l1(self):
        assert isinstance(SimplexOfLabels("abc").induced_norm(), L1Norm)


class TestSimplexDistance:
    def test_formula_matches_lp(self, rng):
        simplex = SimplexOfLabels(range(4))
        hull = PolytopeHull(np.eye(4))
        points = rng.dirichlet(np.ones(4), size=50) + rng.normal(scale=0.5, size=(50, 4))
        points -= (points.sum(axis=1, keepdims=True) - 1.0) / 4.0
        for p in points:
            via_lp = simplex.section_distance(hull, p, np.zeros((0, 4)), np.zeros(0))
            assert l1_dist_to_simplex(p) == pytest.approx(via_lp, abs=1e-8)

    def test_off_hyperplane_rejected(self):
        with pytest.raises(NotOnHyperplaneError):
            l1_dist_to_simplex([0.5, 0.6])

    def test_points_inside_have_zero_distance(self):
        assert l1_dist_to_simplex([0.2, 0.3, 0.5]) == 0.0


class TestAffine:
    def test_from_equations(self):
        line = AffineSubspace.from_equations([[1.0, 1.0]], [1.0])
        assert line.dim == 1
        assert line.contains([0.25, 0.75])
        np.testing.assert_allclose(line.project_l2([0.0, 0.0]), [0.5, 0.5])

    def test_inconsistent(self):
        with pytest.raises(EmptySubspaceError):
            AffineSubspace.from_equations([[1.0, 0.0], [1.0, 0.0]], [0.0, 1.0])

    @pytest.mark.parametrize(
        ("norm", "expected"),
        [(L2Norm(), 1.0 / np.sqrt(2.0)), (L1Norm(), 1.0), (LInfNorm(), 0.5)],
    )
    def test_distance_to_line(self, norm, expected):
        line = AffineSubspace.from_equations([[1.0, 1.0]], [1.0])
        assert dist_point_to_affine(norm, [0.0, 0.0], line) == pytest.approx(expected, abs=1e-8)

    def test_from_points(self):
        plane = AffineSubspace.from_points([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        assert plane.dim == 2
        assert plane.contains([0.2, 0.2, 0.6])


class TestBodies:
    def test_segment_support_and_mu(self):
        seg = Segment([1.0, -1.0], [1.0, 1.0])
        assert seg.support([0.0, 1.0]) == pytest.approx(1.0)
        assert seg.mu @ np.array([1.0, 0.3]) == pytest.approx(1.0)

    def test_polytope_off_hyperplane_rejected(self):
        with pytest.raises(ValueError):
            Polytope(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))

    def test_ball(self):
        ball = Ball(2, radius=2.0)
        assert ball.support([1.0, 0.0, 0.5]) == pytest.approx(2.5)
        assert ball.contains([1.0, 1.0, 1.0])
        assert not ball.contains([2.0, 1.0, 1.0])
        assert ball.ray_exit(ball.center(), np.array([1.0, 0.0, 0.0])) == pytest.approx(2.0)

    def test_ball_section_misses(self):
        with pytest.raises(EmptyIntersectionError):
            Ball(2).plane_section([[1.0, 0.0, 0.0]], [2.0])

    def test_cone(self):
        cone = ConeBall(2)
        assert cone.contains(cone.apex())
        assert cone.contains([0.0, 1.0, 0.6, 0.8])
        assert not cone.contains([0.0, 1.0, 1.0, 1.0])
        assert cone.support([0.0, 0.0, 1.0, 0.0]) == pytest.approx(1.0)

    def test_cone_section_keeps_mu_row(self):
        # y = (0.5, 0.5, -0.5, 0, 0, 0) is the highest point of the section
        cone = ConeBall(4)
        a_eq = [[0.75, -0.25, 0.5, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0, 0.0, 0.0]]
        value, y = cone.section_optimize(a_eq, [0.0, 1.0], np.eye(6)[0], True)
        assert value == pytest.approx(0.5, abs=1e-6)
        np.testing.assert_allclose(y, [0.5, 0.5, -0.5, 0.0, 0.0, 0.0], atol=1e-5)
        assert cone.section_distance(L2Norm(), cone.apex(), a_eq, [0.0, 1.0]) > 0.0

    def test_cone_section_with_inconsistent_mu_row(self):
        with pytest.raises(EmptyIntersectionError):
            ConeBall(2).section_optimize([[1.0, 1.0, 0.0, 0.0]], [0.0], [1.0, 0.0, 0.0, 0.0], True)

    def test_serialisation_keeps_kind(self):
        for body in (Segment([1.0, -1.0], [1.0, 1.0]), Ball(3), ConeBall(2), SimplexOfLabels("ab")):
            back = body_from_dict(body_to_dict(body))
            assert type(back) is type(body)
            assert back.dim == body.dim

    def test_section_optimize(self):
        simplex = SimplexOfLabels(range(3))
        section = BodySection.kernel(simplex, [[1.0, -1.0, 0.0]])
        value, point = section.optimize([1.0, 0.0, 0.0], maximize=True)
        assert value == pytest.approx(0.5)
        np.testing.assert_allclose(point, [0.5, 0.5, 0.0], atol=1e-9)

    def test_distance_between_disjoint_faces(self):
        simplex = SimplexOfLabels(range(3))
        face_a = BodySection(simplex, [[1.0, 0.0, 0.0]], [1.0])
        face_b = BodySection(simplex, [[0.0, 1.0, 0.0]], [1.0])
        assert dist_between_convex(L1Norm(), face_a, face_b) == pytest.approx(2.0)


class TestSines:
    @pytest.mark.parametrize("angle", [0.3, 0.9, np.pi / 2])
    def test_principal_angle_of_lines(self, angle):
        b = np.array([[1.0], [0.0]])
        c = np.array([[np.cos(angle)], [np.sin(angle)]])
        assert sine_principal_angles(b, c) == pytest.approx(np.sin(angle), abs=1e-10)

    def test_contained_subspace_is_degenerate(self):
        with pytest.raises(DegenerateInputError):
            sine_principal_angles(np.array([[1.0], [0.0]]), np.eye(2))

    def test_simplex_lower_bound_without_constraints(self):
        assert sine_simplex_lb(np.zeros((0, 3))) == pytest.approx(1.0 / 3.0)

    def test_simplex_lower_bound_on_support(self):
        # y0 = y1 on labels {0, 1, 2}: the centre is feasible
        assert sine_simplex_lb([[1.0, -1.0, 0.0]]) == pytest.approx(1.0 / 3.0)

    def test_ball_closed_form(self):
        line = AffineSubspace.from_equations([[1.0, 0.0]], [0.6])
        assert sine_ball(line) == pytest.approx(0.8)
        with pytest.raises(EmptyIntersectionError):
            sine_ball(AffineSubspace.from_equations([[1.0, 0.0]], [1.5]))

    def test_chain_and_systems(self):
        assert sine_chain([0.7, 0.4, 1.0]) == 0.4
        assert sine_prob_system(3) == pytest.approx(1.0 / 3.0)
        with pytest.raises(ValueError):
            sine_chain([])

    @pytest.mark.parametrize("events", [2, 3])
    def test_independent_events_meet_system_bound(self, events):
        # labels are bit strings; event i is "bit i is set", each fixed at 1/2
        labels = 2**events
        bits = (np.arange(labels)[None, :] >> np.arange(events)[:, None]) & 1
        b = AffineSubspace.from_equations(np.vstack([np.ones(labels), bits]), np.append(1.0, np.full(events, 0.5)))
        estimate = sine_bruteforce(b, SimplexOfLabels(range(labels)), L1Norm(), samples=300, seed=11)
        assert estimate >= sine_prob_system(events) - 1e-2

    def test_ball_closed_form_against_sampling(self):
        ball = Ball(2)
        b = AffineSubspace.from_equations([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]], [0.6, 1.0])
        closed = sine_ball(AffineSubspace.from_equations([[1.0, 0.0]], [0.6]))
        estimate = sine_bruteforce(b, ball, L2Norm(), samples=300, seed=2)
        assert estimate == pytest.approx(closed, abs=5e-2)
        assert estimate >= closed - 1e-6

    def test_two_stage_chain_is_bounded_by_its_stages(self):
        # labels (a, 0), (a, 1), (b, 0), (b, 1): P(a) = 0.4, P(0 | a) = 0.3
        simplex = SimplexOfLabels(range(4))
        first = [0.6, 0.6, -0.4, -0.4]
        second = [0.7, -0.3, 0.0, 0.0]
        stages = [
            sine_bruteforce(AffineSubspace.from_equations([np.ones(4), row], [1.0, 0.0]), simplex, L1Norm(),
                            samples=300, seed=4)
            for row in (first, second)
        ]
        both = AffineSubspace.from_equations([np.ones(4), first, second], [1.0, 0.0, 0.0])
        estimate = sine_bruteforce(both, simplex, L1Norm(), samples=300, seed=4)
        assert estimate >= sine_chain(stages) - 1e-2
        assert sine_chain(stages) >= 0.99

    def test_point_inside_body_is_contained(self):
        simplex = SimplexOfLabels(range(3))
        centre = AffineSubspace.from_equations([np.ones(3), [1.0, -1.0, 0.0], [1.0, 0.0, -1.0]], [1.0, 0.0, 0.0])
        with pytest.raises(SubspaceInBodyError):
            sine_bruteforce(centre, simplex, L1Norm())
        outside = AffineSubspace.from_equations([np.ones(3), [1.0, -1.0, 0.0], [1.0, 0.0, -1.0]], [1.0, 0.0, 2.0])
        with pytest.raises(EmptyIntersectionError):
            sine_bruteforce(outside, simplex, L1Norm())

    def test_subspace_inside_subspace_is_contained(self):
        line = AffineSubspace.from_equations([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], [0.0, 0.0])
        plane = AffineSubspace.from_equations([[0.0, 0.0, 1.0]], [0.0])
        with pytest.raises(SubspaceInBodyError):
            sine_bruteforce(line, plane, L2Norm())

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.75])
    def test_conditional_constraint_has_unit_sine(self, p):
        # P(y in {0, 1}) = p P(y in {0, 1, 2}) on five labels
        row = np.array([1.0 - p, 1.0 - p, -p, 0.0, 0.0])
        b = AffineSubspace.from_equations(np.vstack([np.ones(5), row]), [1.0, 0.0])
        estimate = sine_bruteforce(b, SimplexOfLabels(range(5)), L1Norm(), samples=300, seed=3)
        assert estimate >= 0.99

    def test_bruteforce_is_deterministic(self):
        b = AffineSubspace.from_equations([np.ones(3), [1.0, -1.0, 0.0]], [1.0, 0.0])
        simplex = SimplexOfLabels(range(3))
        first = sine_bruteforce(b, simplex, L1Norm(), samples=100, seed=5)
        assert first == sine_bruteforce(b, simplex, L1Norm(), samples=100, seed=5)
