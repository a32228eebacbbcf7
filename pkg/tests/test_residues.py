import itertools

import pytest

from quasimap.correlators import Model, _closed_integrand, canonical_insertions
from quasimap.polys import FactoredRational, MultiPoly, VarSpace
from quasimap.rational import R0, R1, Rat
from quasimap.residues import (
    IndecisivePole,
    classify_pole,
    iterated_residue,
    iterated_residue_retry,
    jitter_radii,
    profile_ascending,
    profile_closed,
    profile_open,
)
from quasimap.polys import LinearForm

SPACE = VarSpace(("z0", "z1"))


def _form(c0, c1):
    return LinearForm.normalize(SPACE, [Rat(c0), Rat(c1)])[1]


def test_classify_pole_decisions():
    radii = {0: Rat(1), 1: Rat(10)}
    # z0 - z1/20: root at z1/20, inside |z0| = 1
    assert classify_pole(_form(1, Rat(-1, 20)), 0, radii) is True
    # z0 - z1: root at z1, |z1| = 10, outside
    assert classify_pole(_form(1, -1), 0, radii) is False
    with pytest.raises(IndecisivePole):
        classify_pole(_form(1, Rat(-1, 10)), 0, radii)


def test_simple_iterated_residue():
    # 1/(z0 z1 (z1 - z0)) with |z0| < |z1|: residues at z0=0 then z1=0
    f = (
        FactoredRational.from_poly(MultiPoly.one(SPACE))
        .div_form([R1, R0])
        .div_form([R0, R1])
        .div_form([Rat(-1), R1])
    )
    # after z0 -> 0: 1/z1^2, no residue
    assert iterated_residue(f, ("z0", "z1"), {"z0": 1, "z1": 10}) == 0
    # 1/(z0 (z1 - z0)): z0 -> 0 leaves 1/z1, residue 1
    g = FactoredRational.from_poly(MultiPoly.one(SPACE)).div_form([R1, R0]).div_form(
        [Rat(-1), R1]
    )
    assert iterated_residue(g, ("z0", "z1"), {"z0": 1, "z1": 10}) == 1


def test_higher_order_pole_and_moving_pole():
    # Res_{z0=z1} z1^3/(z0^2 (z0 - z1)) = d/dz0 [z1^3/z0^2] is not needed:
    # take the z0 residues inside |z0|=10 (both poles), then z1 at 0.
    f = (
        FactoredRational.from_poly(MultiPoly.var(SPACE, "z1", 3))
        .div_form([R1, R0], 2)
        .div_form([R1, Rat(-1)])
        .div_form([R0, R1], 3)
    )
    # sum of z0-residues of z1^3/(z0^2(z0-z1)) is 0 for a contour
    # enclosing both poles (degree drop is 2), so the result vanishes
    assert iterated_residue(f, ("z0", "z1"), {"z0": 10, "z1": 1}) == 0


def _golden_integrands():
    cp2 = Model.cp(3)
    out = []
    for d, a, b, ins in [(1, 2, 2, {2: 1}), (2, 2, 2, {2: 4}), (2, 1, 2, {2: 5})]:
        space, fr = _closed_integrand(cp2, d, a, b, canonical_insertions(ins))
        radii = dict(zip(space.names, profile_closed(d)))
        out.append((space, fr, radii))
    return out


def test_stage_order_independence_on_golden_integrands():
    for space, fr, radii in _golden_integrands():
        values = set()
        for order in itertools.permutations(space.names):
            values.add(iterated_residue_retry(fr, order, radii))
        assert len(values) == 1


def test_jitter_is_deterministic_and_bounded():
    radii = {"z0": Rat(5), "z1": Rat(9)}
    j1 = jitter_radii(radii, 3)
    j2 = jitter_radii(radii, 3)
    assert j1 == j2
    assert j1 != jitter_radii(radii, 4)
    for name in radii:
        assert abs(j1[name] / radii[name] - 1) < Rat(1, 20)


def test_retry_driver_recovers_from_indecision():
    # pole exactly on the circle: z0 - z1/10 with |z0|=1, |z1|=10
    f = (
        FactoredRational.from_poly(MultiPoly.one(SPACE))
        .div_form([R1, Rat(-1, 10)])
        .div_form([R0, R1])
    )
    with pytest.raises(IndecisivePole):
        iterated_residue(f, ("z0", "z1"), {"z0": 1, "z1": 10})
    # the jittered radii decide the enclosure one way or the other
    assert iterated_residue_retry(f, ("z0", "z1"), {"z0": 1, "z1": 10}) in (R0, R1)


def test_radius_profiles():
    assert profile_closed(1) == [Rat(7), Rat(7)]
    assert profile_open(1) == [Rat(7)]
    assert profile_open(2) == [Rat(7), Rat(7)]
    assert profile_ascending(3) == [Rat(1), Rat(20), Rat(30)]
    for d in range(2, 5):
        r = profile_closed(d)
        for j in range(1, d):
            assert 2 * r[j] > r[j - 1] + r[j + 1]
