from fractions import Fraction as F

import pytest

from conftest import random_germ_of_type
from tanvar.curves import CurveGerm, TypeSequence
from tanvar.jets import Jet1, Jet2, equal_as_polynomials
from tanvar.tangency import (
    GeneratingFamilyError,
    NotFrontalUpTo,
    OpeningCertificate,
    Refuted,
    generating_family_tangent,
    grassmann_lift,
    jacobi_membership,
    lift_residuals,
    morin_versal_opening,
    opening_check,
    tangent_map,
    verify_certificate,
)


def monomial_curve(*entries, K=None):
    A = TypeSequence.of(*entries)
    return CurveGerm.monomial(A, K or (max(entries) + 4))


def st_jet(terms, K):
    return Jet2.from_terms(terms, K)


# -- tangent map construction -----------------------------------------------------


def test_tangent_map_immersed_curve():
    tm = tangent_map(monomial_curve(1, 2, 3))
    K = tm.truncation
    assert tm.components[0] == st_jet([(1, 0, 1), (0, 1, 1)], K)
    assert tm.components[1] == st_jet([(0, 2, 1), (1, 1, 2)], K)
    assert tm.components[2] == st_jet([(0, 3, 1), (1, 2, 3)], K)


def test_tangent_map_cusped_curve():
    tm = tangent_map(monomial_curve(2, 3, 4))
    K = tm.truncation
    assert tm.components[0] == st_jet([(0, 2, 1), (1, 0, 2)], K)
    assert tm.components[1] == st_jet([(0, 3, 1), (1, 1, 3)], K)
    assert tm.components[2] == st_jet([(0, 4, 1), (1, 2, 4)], K)


def test_tangent_map_plane_curve():
    tm = tangent_map(monomial_curve(1, 2))
    K = tm.truncation
    assert tm.components == (
        st_jet([(1, 0, 1), (0, 1, 1)], K),
        st_jet([(0, 2, 1), (1, 1, 2)], K),
    )


# -- lift coefficients ----------------------------------------------------------------


def test_lift_orders_immersed():
    tm = tangent_map(monomial_curve(1, 2, 3, K=10))
    (pair,) = grassmann_lift(tm)
    assert pair.p.order() == 2  # a3 - a1
    assert pair.q.order() == 1  # a3 - a2


def test_lift_orders_type_134():
    tm = tangent_map(monomial_curve(1, 3, 4, K=10))
    (pair,) = grassmann_lift(tm)
    assert pair.p.order() == 3
    assert pair.q.order() == 1


def test_lift_orders_across_normal_form_table():
    from tanvar.classify import NORMAL_FORM_TYPES

    for entries in NORMAL_FORM_TYPES:
        tm = tangent_map(monomial_curve(*entries, K=max(entries) + 6))
        lift = grassmann_lift(tm)
        a1, a2 = entries[0], entries[1]
        for i, pair in enumerate(lift, start=2):
            assert pair.p.order() == entries[i] - a1, entries
            assert pair.q.order() == entries[i] - a2, entries


def test_lift_empty_for_plane_curves():
    tm = tangent_map(monomial_curve(1, 2, K=8))
    assert grassmann_lift(tm) == ()


def test_lift_identity_exact_on_random_germs(rng):
    pool = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 4, 5), (1, 3, 4, 6)]
    checked = 0
    for _ in range(200):
        entries = pool[rng.randrange(len(pool))]
        g = random_germ_of_type(rng, entries, max(entries) + 6)
        tm = tangent_map(g)
        lift = grassmann_lift(tm)
        if isinstance(lift, NotFrontalUpTo):
            continue
        _, residuals = lift_residuals(tm, lift)
        for rs, rt in residuals:
            assert rs.is_zero and rt.is_zero
        checked += 1
    assert checked == 200


def test_lift_verdict_on_misordered_components():
    # component orders (1, 4, 2): the Wronskian quotient W_13/W_12 cannot exist
    g = CurveGerm(
        (Jet1.term(1, 1, 9), Jet1.term(1, 4, 9), Jet1.term(1, 2, 9))
    )
    tm = tangent_map(g)
    assert isinstance(grassmann_lift(tm), NotFrontalUpTo)


# -- membership certificates ---------------------------------------------------------------


def _membership_example():
    K = 8
    g1 = Jet2.variable(0, K)  # u
    g2 = Jet2.from_terms([(0, 2, 1), (1, 1, 1)], K)  # t^2 + u t
    return (g1, g2), K


def test_membership_certificate_found():
    (g1, g2), K = _membership_example()
    h = Jet2.from_terms([(0, 3, F(2, 3)), (1, 2, F(1, 2))], K)
    cert = jacobi_membership((g1, g2), h, 6)
    assert isinstance(cert, OpeningCertificate)
    p, q = cert.multipliers
    assert equal_as_polynomials(p, Jet2.from_terms([(0, 2, F(-1, 2))], 6))
    assert equal_as_polynomials(q, Jet2.from_terms([(0, 1, 1)], 6))
    assert verify_certificate((g1, g2), h, cert)


def test_membership_refuted_with_witness():
    (g1, g2), K = _membership_example()
    h = Jet2.variable(1, K)  # t
    verdict = jacobi_membership((g1, g2), h, 6)
    assert isinstance(verdict, Refuted)
    assert verdict.var == 1
    assert verdict.monomial == (0, 0)


def test_membership_tautological():
    (g1, g2), K = _membership_example()
    cert = jacobi_membership((g1, g2), g1, 6)
    assert isinstance(cert, OpeningCertificate)
    p, q = cert.multipliers
    assert equal_as_polynomials(p, Jet2.constant(1, 6))
    assert q.is_zero
    assert verify_certificate((g1, g2), g1, cert)


def test_membership_certificates_reverify(rng):
    (g1, g2), K = _membership_example()
    for _ in range(20):
        # random element of the module: p*dg1 + q*dg2 integrated is not needed;
        # instead combine g-polynomials, whose differentials are in the module
        a = rng.randint(-3, 3)
        b = rng.randint(-3, 3)
        c = rng.randint(-3, 3)
        h = a * g1 + b * g2 + c * (g1 * g2)
        cert = jacobi_membership((g1, g2), h, 6)
        assert isinstance(cert, OpeningCertificate)
        assert verify_certificate((g1, g2), h, cert)


def test_opening_check_cuspidal_edge():
    tm = tangent_map(monomial_curve(1, 2, 3, K=10))
    certs = opening_check(tm)
    assert len(certs) == 1
    assert verify_certificate(
        (tm.components[0], tm.components[1]), tm.components[2], certs[0]
    )


def test_opening_check_open_swallowtail():
    tm = tangent_map(monomial_curve(2, 3, 4, 5, K=11))
    certs = opening_check(tm)
    assert len(certs) == 2
    g = (tm.components[0], tm.components[1])
    for i, cert in enumerate(certs):
        assert verify_certificate(g, tm.components[2 + i], cert)


def test_opening_check_plane_curve_empty():
    tm = tangent_map(monomial_curve(1, 2, K=8))
    assert opening_check(tm) == ()


# -- versal opening tables ---------------------------------------------------------------------


def test_morin_table_k2():
    mo = morin_versal_opening(2, 0)
    t, l1 = mo.variables
    assert (t, l1) == ("t", "l1")
    assert mo.f_base.coefficient((3, 0)) == 1
    assert mo.f_base.coefficient((1, 1)) == 1
    f1, f2 = mo.f_generators
    assert f1.coefficient((5, 0)) == F(1, 5)
    assert f1.coefficient((3, 1)) == F(1, 3)
    assert f2.coefficient((6, 0)) == F(1, 6)
    assert f2.coefficient((4, 1)) == F(1, 4)


def test_morin_table_k1():
    mo = morin_versal_opening(1, 0)
    assert mo.variables == ("t",)
    assert mo.f_base.coefficient((2,)) == 1
    (f1,) = mo.f_generators
    assert f1.coefficient((4,)) == F(1, 4)
    assert mo.generator_count == 2


def test_morin_table_k2_m1():
    mo = morin_versal_opening(2, 1)
    assert mo.variables == ("t", "l1", "m1_1", "m1_2")
    (g1,) = mo.g_base
    assert g1.coefficient((1, 0, 1, 0)) == 1
    assert g1.coefficient((2, 0, 0, 1)) == 1
    ((g11,),) = mo.g_generators
    assert g11.coefficient((3, 0, 1, 0)) == F(1, 3)
    assert g11.coefficient((4, 0, 0, 1)) == F(1, 4)
    assert mo.generator_count == 1 + 2 + 1


def _oracle_integral(terms, ell):
    """Brute-force monomial integration: t-exponent e -> e+ell+1, /(e+ell+1)."""
    out = {}
    for exps, coeff in terms:
        e = exps[0]
        new = (e + ell + 1,) + tuple(exps[1:])
        out[new] = coeff * F(1, e + ell + 1)
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_morin_generators_match_integration_oracle(k, m):
    mo = morin_versal_opening(k, m)
    base_f = dict(mo.f_base.terms)
    for ell, gen in enumerate(mo.f_generators, start=1):
        assert dict(gen.terms) == _oracle_integral(base_f.items(), ell)
    for gi, row in zip(mo.g_base, mo.g_generators):
        base = dict(gi.terms)
        assert len(row) == k - 1
        for ell, gen in enumerate(row, start=1):
            assert dict(gen.terms) == _oracle_integral(base.items(), ell)
    assert mo.generator_count == 1 + k + (k - 1) * m


# -- generating families ------------------------------------------------------------------------


def poly_terms(p):
    return dict(p.terms)


def test_family_type_1245():
    sol = generating_family_tangent(TypeSequence.of(1, 2, 4, 5))
    x2, x3, x4 = sol.solved
    assert poly_terms(x2) == {(2, 0): F(-10, 3), (1, 1): F(-2)}
    assert poly_terms(x3) == {(4, 0): F(5), (3, 1): F(2)}
    assert poly_terms(x4) == {(5, 0): F(-8, 3), (4, 1): F(-1)}


def test_family_type_123():
    sol = generating_family_tangent(TypeSequence.of(1, 2, 3))
    x2, x3 = sol.solved
    assert poly_terms(x2) == {(2, 0): F(-3), (1, 1): F(-2)}
    assert poly_terms(x3) == {(3, 0): F(2), (2, 1): F(1)}


def test_family_pattern_guard():
    with pytest.raises(GeneratingFamilyError):
        generating_family_tangent(TypeSequence.of(1, 3, 5, 7))


def test_family_pattern_names():
    assert generating_family_tangent(TypeSequence.of(1, 2, 3)).pattern == "I(N=2, r=1)"
    assert (
        generating_family_tangent(TypeSequence.of(1, 2, 4, 5)).pattern
        == "II(N=3, i=2)"
    )
    assert generating_family_tangent(TypeSequence.of(3, 4, 5)).pattern == "III(N=2)"


def test_family_envelope_equations_hold():
    # plugging the solved components back into the family kills it and its
    # first t-derivatives
    from tanvar.polys import Poly

    for entries in [(1, 2, 3), (1, 2, 4, 5), (2, 3, 4, 5), (3, 4, 5)]:
        A = TypeSequence.of(*entries)
        sol = generating_family_tangent(A)
        N = len(entries) - 1
        fam_vars = sol.family.variables
        # substitute x_j (j >= 2) by the solved polynomials inside Q[t, x1]
        out_vars = ("t", "x1")

        def embed(p):
            acc = Poly.zero(out_vars)
            for exps, coeff in p.terms:
                t_exp = exps[0]
                x_exps = exps[1:]
                term = Poly.monomial(coeff, (t_exp, x_exps[0]), out_vars)
                for j, e in enumerate(x_exps[1:], start=2):
                    if e:
                        sub = sol.solved[j - 2]
                        for _ in range(e):
                            term = term * sub
                acc = acc + term
            return acc

        F_sub = embed(sol.family)
        for d in range(N):
            assert F_sub.is_zero, (entries, d)
            F_sub = F_sub.derivative("t")
