from cmath import exp, phase
from math import pi

import pytest

from mpideals.commutative import (
    Circle,
    Disk,
    GridFunction,
    GridIdeal,
    Interval,
    continuity_bound,
    disk_obstruction_check,
    grid_projection_lift,
    mp_lift_interval,
    projection_nonlift_witness,
    winding_number,
)
from mpideals.errors import (
    ConfigInvalid,
    ContinuityViolation,
    InsufficientResolution,
    MixedBoundary,
    NotCosetMPInvertible,
    PreconditionFailed,
    VanishingValue,
)


def argument_sum_oracle(fn, samples=4096):
    """Independent high-resolution winding oracle: accumulate phases directly."""
    total = 0.0
    prev = fn(exp(2j * pi * 0.0))
    for k in range(1, samples + 1):
        cur = fn(exp(2j * pi * k / samples))
        total += phase(cur / prev)
        prev = cur
    return round(total / (2 * pi))


class TestWinding:
    def test_constant_function(self):
        f = GridFunction.sample(Circle(64), lambda z: 1.0)
        assert winding_number(f) == 0

    def test_coordinate_function(self):
        f = GridFunction.sample(Circle(64), lambda z: z)
        assert winding_number(f) == 1

    def test_cube_against_high_resolution_oracle(self):
        fn = lambda z: z**3
        expected = argument_sum_oracle(fn)
        f = GridFunction.sample(Circle(64), fn, lipschitz=6.0)
        assert expected == 3
        assert winding_number(f) == expected

    def test_rotation_invariance(self):
        f = GridFunction.sample(Circle(64), lambda z: z)
        for shift in (1, 9, 40):
            g = GridFunction(Circle(64), f.values[shift:] + f.values[:shift])
            assert winding_number(g) == 1

    def test_homotopy_invariance_along_interpolation(self):
        # two winding-1 curves; every interpolation step keeps winding 1
        f = GridFunction.sample(Circle(64), lambda z: z)
        g = GridFunction.sample(Circle(64), lambda z: z * (1.5 + 0.3 * z.real), lipschitz=6.0)
        for k in range(11):
            t = k / 10.0
            mix = GridFunction(
                Circle(64),
                [(1 - t) * a + t * b for a, b in zip(f.values, g.values)],
                lipschitz=6.0,
            )
            assert mix.min_abs() > 1e-6
            assert winding_number(mix) == 1

    def test_vanishing_rejected(self):
        f = GridFunction.sample(Circle(64), lambda z: z - 1.0)
        with pytest.raises(VanishingValue):
            winding_number(f)

    def test_coarse_grid_rejected(self):
        # winding 5 on 16 samples: argument steps almost pi, beyond pi/2
        f = GridFunction.sample(Circle(16), lambda z: z**5, lipschitz=40.0)
        with pytest.raises(InsufficientResolution):
            winding_number(f)


class TestIntervalLift:
    dom = Interval(0.0, 2.0, 129)
    sub = GridIdeal("subinterval", 0.0, 1.0)

    def test_zero_function(self):
        rep = mp_lift_interval(GridFunction.sample(self.dom, lambda x: 0.0), self.sub)
        assert rep.case == "zero" and rep.success

    def test_nonvanishing_extension(self):
        f = GridFunction.sample(self.dom, lambda x: 1.0 + x)
        rep = mp_lift_interval(f, self.sub)
        assert rep.case == "extension" and rep.success
        assert rep.lift.values[-1] == 2.0  # constant continuation at f(1)
        assert rep.ideal_residual == 0.0
        assert rep.min_modulus > 1e-6

    def test_sign_change_rejected(self):
        f = GridFunction.sample(self.dom, lambda x: x - 0.5)
        with pytest.raises(NotCosetMPInvertible):
            mp_lift_interval(f, self.sub)

    def test_lift_differs_by_ideal_element(self):
        from mpideals.rng import SplitMix64

        rng = SplitMix64(10)
        for _ in range(10):
            c = rng.runif(1.0, 2.0)
            s = rng.runif(-0.4, 0.4)
            f = GridFunction.sample(self.dom, lambda x: c + s * x)
            rep = mp_lift_interval(f, self.sub)
            vanish = self.sub.vanishing_indices(self.dom)
            assert max(abs(rep.lift.values[k] - f.values[k]) for k in vanish) <= 1e-6


class TestNonLiftWitness:
    dom = Interval(0.0, 1.0, 129)
    endpoints = GridIdeal("endpoints")

    def test_linear_ramp(self):
        a = GridFunction.sample(self.dom, lambda x: x)
        w = projection_nonlift_witness(a, self.endpoints)
        assert w.defect == pytest.approx(0.25, abs=1e-12)
        assert w.point == pytest.approx(0.5, abs=1e-2)

    def test_square_ramp(self):
        a = GridFunction.sample(self.dom, lambda x: x * x)
        w = projection_nonlift_witness(a, self.endpoints)
        assert w.defect >= 0.125
        assert 0.25 <= w.point**2 <= 0.75 or w.defect >= 0.2

    def test_smoothed_step_candidate(self):
        a = GridFunction.sample(self.dom, lambda x: x)

        def step(x):
            if x < 0.45:
                return 0.0
            if x > 0.55:
                return 1.0
            return (x - 0.45) / 0.1

        g = GridFunction.sample(self.dom, step, lipschitz=11.0)
        w = projection_nonlift_witness(a, self.endpoints, candidate=g)
        assert w.defect >= 0.125
        assert 0.45 <= w.point <= 0.55

    def test_preconditions(self):
        bad = GridFunction.sample(self.dom, lambda x: x + 0.5, lipschitz=4.0)
        with pytest.raises(PreconditionFailed):
            projection_nonlift_witness(bad, self.endpoints)


class TestDiskObstruction:
    disk = Disk(17, 64)
    boundary = GridIdeal("boundary")

    def test_coordinate_candidate(self):
        cand = GridFunction.sample(self.disk, lambda z: z)
        rep = disk_obstruction_check(cand, self.boundary)
        assert rep.verdict == "obstructed"
        assert 0 in rep.windings and 1 in rep.windings
        assert rep.profile[0].degenerate and rep.profile[0].vanishing
        assert rep.profile[-1].winding == 1

    def test_radial_factor_candidate(self):
        cand = GridFunction.sample(
            self.disk, lambda z: z * (1.0 + 0.8 * (1.0 - abs(z))), lipschitz=8.0
        )
        rep = disk_obstruction_check(cand, self.boundary)
        assert rep.verdict == "obstructed"
        assert all(c.winding == 1 for c in rep.profile[1:] if c.winding is not None)

    def test_discontinuous_patch_rejected_at_construction(self):
        # a fine enough radial grid exposes the O(1) jump at the patch seam
        fine = Disk(33, 64)
        values = [1.0 if abs(z) <= 0.5 else z for z in fine.points()]
        with pytest.raises(ContinuityViolation):
            GridFunction(fine, values)

    def test_wrong_boundary_rejected(self):
        cand = GridFunction.sample(self.disk, lambda z: 2.0 * z, lipschitz=8.0)
        with pytest.raises(PreconditionFailed):
            disk_obstruction_check(cand, self.boundary)


class TestBoundaryProjectionLift:
    disk = Disk(17, 64)
    boundary = GridIdeal("boundary")

    def test_constant_one(self):
        p = GridFunction.sample(self.disk, lambda z: 1.0)
        rep = grid_projection_lift(p, self.boundary)
        assert rep.constant == 1.0 and rep.success

    def test_interior_bump_lifts_to_zero(self):
        p = GridFunction.sample(self.disk, lambda z: 0.6 * max(0.0, 1.0 - 2.0 * abs(z)))
        rep = grid_projection_lift(p, self.boundary)
        assert rep.constant == 0.0 and rep.success

    def test_mixed_boundary_is_impossible_input(self):
        # flipping half the boundary between 0 and 1 cannot happen continuously;
        # building such values violates the continuity contract outright
        pts = self.disk.points()
        with pytest.raises((ContinuityViolation, MixedBoundary)):
            values = [1.0 if (abs(z) < 0.999 or z.real >= 0.0) else 0.0 for z in pts]
            p = GridFunction(self.disk, values)
            grid_projection_lift(p, self.boundary)


class TestGridContract:
    def test_sample_counts_validated(self):
        with pytest.raises(ConfigInvalid):
            GridFunction(Interval(0.0, 1.0, 32), [0.0] * 31)

    def test_minimum_resolution(self):
        with pytest.raises(ConfigInvalid):
            Interval(0.0, 1.0, 8)
        with pytest.raises(ConfigInvalid):
            Circle(4)
        with pytest.raises(ConfigInvalid):
            Disk(1, 64)

    def test_continuity_bound_scales_with_lipschitz(self):
        dom = Interval(0.0, 1.0, 128)
        assert continuity_bound(dom, 8.0) == pytest.approx(2 * continuity_bound(dom, 4.0))

    def test_vanishing_set_proper(self):
        dom = Interval(0.0, 1.0, 32)
        with pytest.raises(ConfigInvalid):
            GridIdeal("subinterval", -1.0, 2.0).vanishing_indices(dom)
