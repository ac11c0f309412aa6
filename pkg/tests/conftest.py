import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tanvar.curves import CurveGerm
from tanvar.jets import Jet1, Jet2


def fractions(max_num=9, max_den=5):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def jet1s(truncation=6):
    return st.builds(
        lambda cs: Jet1(tuple(cs)),
        st.lists(fractions(), min_size=truncation + 1, max_size=truncation + 1),
    )


def jet2s(truncation=4):
    size = (truncation + 1) * (truncation + 2) // 2
    return st.builds(
        lambda cs: Jet2(tuple(cs), truncation),
        st.lists(fractions(max_num=5, max_den=3), min_size=size, max_size=size),
    )


def random_fraction(rng, max_num=5, max_den=4, nonzero=False):
    while True:
        f = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if f != 0 or not nonzero:
            return f


def random_germ_of_type(rng, entries, truncation, density=0.5):
    """Germ with component orders exactly (a_1, ..., a_m): random unit leading
    coefficients plus random higher-order noise."""
    comps = []
    for a in entries:
        terms = [(a, random_fraction(rng, nonzero=True))]
        for d in range(a + 1, truncation + 1):
            if rng.random() < density:
                terms.append((d, random_fraction(rng)))
        comps.append(Jet1.from_terms(terms, truncation))
    return CurveGerm(tuple(comps))


def random_reparametrization(rng, truncation):
    """Random jet t -> c1 t + ... with c1 != 0 (an exact reparametrization)."""
    terms = [(1, random_fraction(rng, nonzero=True))]
    for d in range(2, truncation + 1):
        if rng.random() < 0.4:
            terms.append((d, random_fraction(rng)))
    return Jet1.from_terms(terms, truncation)


def random_invertible_matrix(rng, size, chart_safe=False):
    """Random integer matrix with nonzero determinant (and top-left entry,
    when the matrix must preserve the affine chart)."""
    while True:
        m = [[rng.randint(-3, 3) for _ in range(size)] for _ in range(size)]
        if chart_safe and m[0][0] == 0:
            continue
        if _det(m) != 0:
            return m


def _det(m):
    n = len(m)
    mat = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if mat[r][c] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for r in range(c + 1, n):
            f = mat[r][c] * inv
            if f != 0:
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
    return det


@pytest.fixture
def rng():
    return random.Random(20240811)
