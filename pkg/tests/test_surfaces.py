from fractions import Fraction as F

import pytest

from conftest import random_fraction
from tanvar.jets import Jet2, equal_as_polynomials
from tanvar.surfaces import (
    ClosednessError,
    LegendreConditionError,
    OrdinaryPointClass,
    SajiTag,
    SymMatrix3,
    VeroneseVerdict,
    complete_to_legendre,
    frontal_normal,
    h_invariant,
    ordinary_point_class,
    saji_verdict,
    slice_frontality_residuals,
    surface_tangent_map,
    transversal_slice,
    veronese_membership,
)

K = 8


def quad_surface(a, b, c, e, phi=None, psi=None, trunc=K):
    x3 = Jet2.from_terms(
        [(2, 0, F(a, 2)), (1, 1, F(b)), (0, 2, F(c, 2))], trunc
    )
    x4 = Jet2.from_terms(
        [(2, 0, F(b, 2)), (1, 1, F(c)), (0, 2, F(e, 2))], trunc
    )
    if phi is not None:
        x3 = x3 + phi
    if psi is not None:
        x4 = x4 + psi
    return complete_to_legendre(x3, x4)


def gradient_pair(potential):
    """Closed higher-order pair (phi, psi) from a potential jet."""
    return potential.derivative(0).truncate(K), potential.derivative(1).truncate(K)


def random_potential(rng, min_order=4, max_order=6, trunc=K + 1):
    terms = []
    for d in range(min_order, max_order + 1):
        for i in range(d + 1):
            if rng.random() < 0.4:
                terms.append((i, d - i, random_fraction(rng)))
    return Jet2.from_terms(terms, trunc)


def random_rank2_surface(rng):
    while True:
        a, b, c, e = (random_fraction(rng, max_num=5, max_den=3) for _ in range(4))
        if (a * c - b * b, a * e - b * c, b * e - c * c) != (0, 0, 0):
            break
    phi, psi = gradient_pair(random_potential(rng))
    x3 = Jet2.from_terms([(2, 0, a / 2), (1, 1, b), (0, 2, c / 2)], K) + phi
    x4 = Jet2.from_terms([(2, 0, b / 2), (1, 1, c), (0, 2, e / 2)], K) + psi
    return complete_to_legendre(x3, x4)


# -- chart completion -------------------------------------------------------------


def test_x5_of_pure_quadratic():
    s = quad_surface(1, 0, 0, 1)
    assert s.x5 == Jet2.from_terms([(3, 0, F(-1, 6)), (0, 3, F(-1, 6))], K + 1)


def test_x5_general_quadratic():
    s = quad_surface(2, 3, -1, 5)
    expected = Jet2.from_terms(
        [(3, 0, F(-2, 6)), (2, 1, F(-3, 2)), (1, 2, F(1, 2)), (0, 3, F(-5, 6))],
        K + 1,
    )
    assert s.x5 == expected


def test_closed_higher_order_pair_accepted():
    # potential u^3 v gives (phi, psi) = (3 u^2 v, u^3)
    phi, psi = gradient_pair(Jet2.from_terms([(3, 1, 1)], K + 1))
    s = quad_surface(1, 0, 0, 1, phi, psi)
    assert s.x3.coefficient(2, 1) == 3
    assert s.x4.coefficient(3, 0) == 1


def test_closedness_guard():
    x3 = Jet2.from_terms([(2, 0, F(1, 2)), (0, 3, 1)], K)  # phi = v^3
    x4 = Jet2.from_terms([(0, 2, F(1, 2))], K)
    with pytest.raises(ClosednessError) as info:
        complete_to_legendre(x3, x4)
    assert info.value.monomial == (0, 2)
    assert info.value.difference == 3


def test_nonzero_linear_part_rejected():
    x3 = Jet2.from_terms([(1, 0, 1)], K)
    x4 = Jet2.zero(K)
    with pytest.raises(ValueError):
        complete_to_legendre(x3, x4)


# -- ordinary point classes ----------------------------------------------------------


def test_hyperbolic_example():
    rep = ordinary_point_class(quad_surface(1, 0, 0, 1))
    assert rep.tag is OrdinaryPointClass.HYPERBOLIC
    assert rep.h_invariant == -1


def test_elliptic_example():
    rep = ordinary_point_class(quad_surface(1, 0, -1, 0))
    assert rep.tag is OrdinaryPointClass.ELLIPTIC
    assert rep.h_invariant == 4


def test_rank_guard():
    rep = ordinary_point_class(quad_surface(1, 0, 0, 0))
    assert rep.tag is OrdinaryPointClass.NOT_ORDINARY


def test_h_sign_invariant_under_positive_rescaling(rng):
    for _ in range(50):
        quad = tuple(random_fraction(rng, max_num=5, max_den=2) for _ in range(4))
        rho = abs(random_fraction(rng, nonzero=True))
        scaled = tuple(rho * x for x in quad)
        h0, h1 = h_invariant(quad), h_invariant(scaled)
        assert (h0 > 0) == (h1 > 0) and (h0 < 0) == (h1 < 0)


# -- transversal slice ----------------------------------------------------------------


def test_slice_pure_quadratic():
    g1, g2, g3 = transversal_slice(quad_surface(1, 0, 0, 1))
    assert equal_as_polynomials(g1, Jet2.from_terms([(2, 0, F(-1, 2))], 4))
    assert equal_as_polynomials(g2, Jet2.from_terms([(0, 2, F(-1, 2))], 4))
    assert equal_as_polynomials(
        g3, Jet2.from_terms([(3, 0, F(1, 3)), (0, 3, F(1, 3))], 4)
    )


def test_slice_euler_complement_of_quartic():
    # phi = u^4 (psi = 0 stays closed); it contributes phi - u phi_u = -3 u^4
    phi, psi = gradient_pair(Jet2.from_terms([(5, 0, F(1, 5))], K + 1))
    s = quad_surface(1, 0, 0, 1, phi, psi)
    g1, _, _ = transversal_slice(s)
    assert g1.coefficient(4, 0) == -3


def test_slice_identity_random(rng):
    for _ in range(30):
        s = random_rank2_surface(rng)
        g1, g2, g3 = transversal_slice(s)
        ru, rv = slice_frontality_residuals(g1, g2, g3)
        assert ru.is_zero and rv.is_zero


# -- rank-zero Hessian verdict -----------------------------------------------------------


def test_verdict_hyperbolic_quadratic():
    v = saji_verdict(transversal_slice(quad_surface(1, 0, 0, 1)))
    assert v.tag is SajiTag.D4_PLUS
    assert v.hessian_determinant == -1


def test_verdict_elliptic_quadratic():
    v = saji_verdict(transversal_slice(quad_surface(1, 0, -1, 0)))
    assert v.tag is SajiTag.D4_MINUS


def test_verdict_rank_guard():
    g = (
        Jet2.variable(0, 5),
        Jet2.term(1, 0, 2, 5),
        Jet2.term(1, 0, 3, 5),
    )
    v = saji_verdict(g)
    assert v.tag is SajiTag.INCONCLUSIVE
    assert "rank" in v.reason


def test_verdict_on_pinch_normal_forms():
    for sign, tag in ((1, SajiTag.D4_PLUS), (-1, SajiTag.D4_MINUS)):
        f = (
            Jet2.from_terms([(1, 1, 1)], 8),
            Jet2.from_terms([(2, 0, 1), (0, 2, 3 * sign)], 8),
            Jet2.from_terms([(2, 1, 1), (0, 3, sign)], 8),
        )
        nu = frontal_normal(f)
        assert saji_verdict(f, normal=nu).tag is tag


def test_hessian_equals_h_invariant(rng):
    for _ in range(100):
        s = random_rank2_surface(rng)
        rep = ordinary_point_class(s)
        v = saji_verdict(transversal_slice(s))
        assert v.hessian_determinant == rep.h_invariant
        if rep.tag is OrdinaryPointClass.HYPERBOLIC:
            assert v.tag is SajiTag.D4_PLUS
        elif rep.tag is OrdinaryPointClass.ELLIPTIC:
            assert v.tag is SajiTag.D4_MINUS


# -- tangent maps over the Darboux chart ---------------------------------------------------


def graph_legendre(rng, trunc=12):
    lam = (Jet2.variable(0, trunc), Jet2.variable(1, trunc))
    pot = random_potential(rng, min_order=2, max_order=5, trunc=trunc + 1)
    nu = (pot.derivative(0), pot.derivative(1))
    return lam, nu


def test_surface_tangent_identity_linear_case():
    # lambda = (u1, u2), nu = gradient of u1*u2 = (u2, u1)
    lam = (Jet2.variable(0, 10), Jet2.variable(1, 10))
    nu = (Jet2.variable(1, 10), Jet2.variable(0, 10))
    out = surface_tangent_map(lam, nu)
    assert out.certificate_holds


def test_surface_tangent_zero_surface():
    zero = Jet2.zero(8)
    out = surface_tangent_map((zero, zero), (zero, zero), mu=zero)
    assert out.certificate_holds
    assert out.mu.base.is_zero


def test_surface_tangent_rejects_nonintegrable_pair():
    lam = (Jet2.variable(0, 8), Jet2.variable(1, 8))
    nu = (Jet2.variable(1, 8), Jet2.zero(8))  # d(form) != 0: no mu exists
    with pytest.raises(LegendreConditionError):
        surface_tangent_map(lam, nu)


def test_surface_tangent_rejects_wrong_mu():
    lam = (Jet2.variable(0, 8), Jet2.variable(1, 8))
    nu = (Jet2.variable(1, 8), Jet2.variable(0, 8))
    with pytest.raises(LegendreConditionError):
        surface_tangent_map(lam, nu, mu=Jet2.term(1, 3, 0, 8))


def test_surface_tangent_identity_random(rng):
    for _ in range(25):
        lam, nu = graph_legendre(rng)
        out = surface_tangent_map(lam, nu)
        assert out.certificate_holds
        assert out.verified_order >= 10


def test_surface_tangent_identity_curved_chart(rng):
    # compose a graph germ with a jet substitution to leave the graph chart
    for _ in range(10):
        trunc = 12
        pot = random_potential(rng, min_order=2, max_order=4, trunc=trunc + 1)
        psi1 = Jet2.from_terms(
            [(1, 0, 1), (2, 0, random_fraction(rng)), (1, 1, random_fraction(rng))],
            trunc,
        )
        psi2 = Jet2.from_terms(
            [(0, 1, 1), (0, 2, random_fraction(rng)), (2, 0, random_fraction(rng))],
            trunc,
        )
        lam = (psi1, psi2)
        nu = (
            pot.derivative(0).truncate(trunc).substitute(psi1, psi2),
            pot.derivative(1).truncate(trunc).substitute(psi1, psi2),
        )
        out = surface_tangent_map(lam, nu)
        assert out.certificate_holds
        assert out.verified_order >= 10


# -- quadric locus membership ----------------------------------------------------------------


def test_membership_examples():
    assert veronese_membership(SymMatrix3.diag(1, 0, 0)) is VeroneseVerdict.ON_SURFACE
    assert veronese_membership(SymMatrix3.diag(1, -1, 0)) is VeroneseVerdict.IN_TANGENT
    assert (
        veronese_membership(SymMatrix3.diag(1, 1, 0)) is VeroneseVerdict.IN_SECANT_ONLY
    )
    assert veronese_membership(SymMatrix3.diag(1, 1, 1)) is VeroneseVerdict.OUTSIDE


def test_membership_zero_guard():
    with pytest.raises(ValueError):
        veronese_membership(SymMatrix3.diag(0, 0, 0))


def _random_vector(rng):
    return tuple(random_fraction(rng, max_num=4, max_den=2) for _ in range(3))


def _outer(u, v):
    return [[u[i] * v[j] for j in range(3)] for i in range(3)]


def _madd(*ms):
    out = [[F(0)] * 3 for _ in range(3)]
    for m in ms:
        for i in range(3):
            for j in range(3):
                out[i][j] += m[i][j]
    return out


def _mscale(c, m):
    return [[c * m[i][j] for j in range(3)] for i in range(3)]


def _independent(v, w):
    minors = (
        v[0] * w[1] - v[1] * w[0],
        v[0] * w[2] - v[2] * w[0],
        v[1] * w[2] - v[2] * w[1],
    )
    return any(m != 0 for m in minors)


def test_tangent_line_points_classify_in_tangent(rng):
    hits = 0
    while hits < 500:
        v, w = _random_vector(rng), _random_vector(rng)
        s = random_fraction(rng, nonzero=True)
        if not _independent(v, w):
            continue
        m = _madd(_outer(v, v), _mscale(s, _outer(v, w)), _mscale(s, _outer(w, v)))
        verdict = veronese_membership(SymMatrix3.from_rows(m))
        assert verdict in (VeroneseVerdict.IN_TANGENT, VeroneseVerdict.ON_SURFACE)
        hits += 1


def test_secant_points_classify_in_secant(rng):
    hits = 0
    while hits < 500:
        v, w = _random_vector(rng), _random_vector(rng)
        if not _independent(v, w):
            continue
        c1 = abs(random_fraction(rng, nonzero=True))
        c2 = abs(random_fraction(rng, nonzero=True))
        m = _madd(_mscale(c1, _outer(v, v)), _mscale(c2, _outer(w, w)))
        verdict = veronese_membership(SymMatrix3.from_rows(m))
        assert verdict in (
            VeroneseVerdict.IN_SECANT_ONLY,
            VeroneseVerdict.ON_SURFACE,
        )
        assert verdict is not VeroneseVerdict.IN_TANGENT
        hits += 1
