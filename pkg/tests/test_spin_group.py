import numpy as np
import pytest

from dswarp import spin_group as sg
from dswarp.quaternion import Quaternion, QuatMatrix2, Q_ONE, Q_ZERO


def test_identity_and_kernel():
    ident = sg.spin_identity()
    np.testing.assert_allclose(sg.covering_hom(ident), np.eye(5), atol=0)
    np.testing.assert_allclose(sg.covering_hom(-ident), np.eye(5), atol=0)


def test_membership_rejects_non_group_matrix():
    bad = QuatMatrix2(((Q_ONE, Q_ONE), (Q_ZERO, Q_ONE)))
    with pytest.raises(sg.NotInSpinGroupError):
        sg.SpinElement(bad)


def test_boost_cover_group_law():
    assert sg.boost_cover(0.0).dist(sg.spin_identity()) == 0.0
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = rng.uniform(-0.8, 0.8, size=2)
        lhs = sg.boost_cover(a) @ sg.boost_cover(b)
        assert lhs.dist(sg.boost_cover(a + b)) < 1e-12


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0])
def test_covering_maps_boost_lift_to_base_boost(t):
    np.testing.assert_allclose(sg.covering_hom(sg.boost_cover(t)), sg.boost_base(t),
                               atol=1e-10)


def test_rapidity_doubling():
    lam = sg.covering_hom(sg.boost_cover(1.0))
    assert lam[0, 0] == pytest.approx(np.cosh(2.0 * np.pi), rel=1e-13)


def test_boost_base_action_on_e1():
    t = 0.7
    out = sg.boost_base(t) @ np.array([0.0, 1.0, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(
        out, [np.sinh(2 * np.pi * t), np.cosh(2 * np.pi * t), 0, 0, 0], atol=0)


def test_boost_base_is_lorentz():
    lam = sg.boost_base(0.7)
    from dswarp.geometry import ETA
    np.testing.assert_allclose(lam.T @ ETA @ lam, ETA, atol=1e-9)
    assert sg.is_proper_orthochronous(lam)


def test_reflection_properties():
    j = sg.reflection_base()
    np.testing.assert_allclose(j @ j, np.eye(5), atol=0)
    np.testing.assert_allclose(sg.covering_hom(sg.reflection_cover()), j, atol=0)
    out = sg.covering_hom(sg.reflection_cover()) @ np.array([0.0, 1, 0, 0, 0])
    np.testing.assert_allclose(out, [0.0, -1, 0, 0, 0], atol=0)


def test_reflection_reverses_boost():
    t = 0.3
    j = sg.reflection_base()
    np.testing.assert_allclose(j @ sg.boost_base(t) @ j, sg.boost_base(-t), atol=0)
    jc = sg.reflection_cover()
    assert (jc @ sg.boost_cover(t) @ jc).dist(sg.boost_cover(-t)) == 0.0


def test_homomorphism_on_random_words():
    rng = np.random.default_rng(77)
    for _ in range(100):
        g, h = sg.random_spin_word(rng), sg.random_spin_word(rng)
        lhs = sg.covering_hom(g @ h)
        rhs = sg.covering_hom(g) @ sg.covering_hom(h)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_two_to_one_exact():
    rng = np.random.default_rng(78)
    for _ in range(20):
        g = sg.random_spin_word(rng)
        np.testing.assert_array_equal(sg.covering_hom(g), sg.covering_hom(-g))


def test_rotation_cover_stabilizes_boost():
    rng = np.random.default_rng(79)
    q = Quaternion(*rng.standard_normal(4))
    q = q * (1.0 / np.sqrt(q.norm2()))
    rot = sg.rotation_cover(q)
    lam = sg.covering_hom(rot)
    # edge rotation: fixes e0, e1 and commutes with the wedge boost
    np.testing.assert_allclose(lam[:2, :2], np.eye(2), atol=1e-12)
    base = sg.boost_base(0.4)
    np.testing.assert_allclose(lam @ base, base @ lam, atol=1e-12)


def test_structure_constants_exact():
    basis = sg.lie_basis()
    assert len(basis) == 10
    for mu, nu, a in basis:
        for rho, sig, b in basis:
            np.testing.assert_array_equal(sg.lie_bracket(a, b),
                                          sg.structure_rhs(mu, nu, rho, sig))


def test_specific_brackets():
    m = sg.lie_generator
    np.testing.assert_array_equal(sg.lie_bracket(m(1, 2), m(3, 4)), np.zeros((5, 5)))
    np.testing.assert_array_equal(sg.lie_bracket(m(0, 1), m(2, 3)), np.zeros((5, 5)))
    np.testing.assert_array_equal(sg.lie_bracket(m(1, 2), m(2, 3)),
                                  sg.structure_rhs(1, 2, 2, 3))
    assert np.max(np.abs(sg.lie_bracket(m(1, 2), m(2, 3)))) > 0


def test_abelian_flows_commute():
    rng = np.random.default_rng(80)
    for tag in sorted(sg.ABELIAN_SUBGROUPS):
        for _ in range(5):
            t, s = rng.uniform(-1.5, 1.5, size=2)
            assert sg.abelian_commutation_residual(tag, t, s) < 1e-10


def test_null_rotation_generators_are_nilpotent():
    for tag in ("L3", "L4"):
        g1 = sg.ABELIAN_SUBGROUPS[tag][0].astype(float)
        np.testing.assert_allclose(np.linalg.matrix_power(g1, 3), np.zeros((5, 5)),
                                   atol=0)


def test_rotation_flow_periodicity():
    out = sg.abelian_flow("L1", 2.0 * np.pi, 2.0 * np.pi)
    np.testing.assert_allclose(out, np.eye(5), atol=1e-12)


def test_l2_flow_is_pure_boost_at_s_zero():
    from scipy.linalg import expm
    t = 0.9
    flow = sg.abelian_flow("L2", t, 0.0)
    np.testing.assert_allclose(flow, expm(t * sg.lie_generator(0, 1).astype(float)),
                               atol=1e-12)
    # orientation: exp(-2 pi t M_01) equals the wedge boost
    np.testing.assert_allclose(sg.abelian_flow("L2", -2.0 * np.pi * t, 0.0),
                               sg.boost_base(t), atol=1e-9)


def test_unknown_subgroup_tag():
    with pytest.raises(KeyError):
        sg.abelian_flow("L9", 0.1, 0.1)


def test_reflection_obstruction_identity():
    report = sg.reflection_obstruction_check()
    assert report["passed"]
    assert report["max_residual"] < 1e-10
    lhs = sg.J12 @ sg.abelian_flow("L2", 1.0, 1.0) @ sg.J12
    np.testing.assert_allclose(lhs, sg.abelian_flow("L2", -1.0, -1.0), atol=1e-10)
