"""Singularity class of a tangent variety from the type of its curve.

Every verdict here is a table lookup backed by a classification statement;
no diffeomorphism is certified numerically.  In ambient dimension three the
type determines the class directly; in higher ambient dimension the verdict
depends only on a short leading prefix of the type, so appending further
entries never changes it.  The type (2,3,5) is special: it is classified
only within the contact-osculating class, and even there the type does not
pin down the diffeomorphism class (exactly two classes occur), which the
result reports as a caveat.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .curves import CurveGerm, TypeSequence
from .jets import Jet2
from .strata import ClassTag, CurveClass, enumerate_generic


class SingularityClass(Enum):
    CUSPIDAL_EDGE = "cuspidal edge"
    FOLDED_UMBRELLA = "folded umbrella"
    OPEN_FOLDED_UMBRELLA = "open folded umbrella"
    SWALLOWTAIL = "swallowtail"
    OPEN_SWALLOWTAIL = "open swallowtail"
    MOND_SURFACE = "Mond surface"
    OPEN_MOND_SURFACE = "open Mond surface"
    UNFURLED_MOND_SURFACE = "unfurled Mond surface"
    GENERIC_FOLDED_PLEAT = "generic folded pleat"
    UNCLASSIFIED = "unclassified"


TWO_CLASS_CAVEAT = (
    "type (2,3,5) does not determine the diffeomorphism class: "
    "exactly two classes exist for this type"
)


@dataclass(frozen=True)
class Classification:
    singularity: SingularityClass
    generic: bool
    caveat: Optional[str] = None


_TABLE_DIM3 = {
    (1, 2, 3): SingularityClass.CUSPIDAL_EDGE,
    (1, 2, 4): SingularityClass.FOLDED_UMBRELLA,
    (2, 3, 4): SingularityClass.SWALLOWTAIL,
    (1, 3, 4): SingularityClass.MOND_SURFACE,
}

_TABLE_PREFIX4 = {
    (1, 3, 4, 5): SingularityClass.OPEN_MOND_SURFACE,
    (2, 3, 4, 5): SingularityClass.OPEN_SWALLOWTAIL,
    (1, 2, 4, 5): SingularityClass.OPEN_FOLDED_UMBRELLA,
    (1, 3, 4, 6): SingularityClass.UNFURLED_MOND_SURFACE,
}


def classify(A: TypeSequence, cls: CurveClass) -> Classification:
    """Look up the singularity of the tangent variety of a type-A curve.

    The class argument fixes both the admissible table (the (2,3,5) entry
    exists only for the contact class) and the genericity verdict, which
    holds exactly when A lies in the codimension <= 1 list of the class.
    """
    if len(A) != cls.type_length:
        raise ValueError(
            f"type length {len(A)} does not match class ambient {cls.type_length}"
        )
    entries = A.entries
    sing = SingularityClass.UNCLASSIFIED
    caveat = None
    if len(entries) == 3:
        sing = _TABLE_DIM3.get(entries, SingularityClass.UNCLASSIFIED)
        if entries == (2, 3, 5) and cls.tag is ClassTag.CONTACT_OSCULATING:
            sing = SingularityClass.GENERIC_FOLDED_PLEAT
            caveat = TWO_CLASS_CAVEAT
    else:
        if entries[:3] == (1, 2, 3):
            sing = SingularityClass.CUSPIDAL_EDGE
        else:
            sing = _TABLE_PREFIX4.get(entries[:4], SingularityClass.UNCLASSIFIED)
    generic = any(A.entries == B.entries for B in enumerate_generic(cls))
    return Classification(sing, generic, caveat)


# --------------------------------------------------------------------------
# normal forms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Exact polynomial parametrizations of a singularity, zero-padded.

    ``chart_st`` uses coordinates (s, t) as in a tangent map; ``chart_ux``
    is the alternative (u, x) chart when one is known, with u playing the
    role of the first variable.
    """

    singularity: SingularityClass
    ambient_dim: int
    chart_st: Tuple[Jet2, ...]
    chart_ux: Optional[Tuple[Jet2, ...]]
    caveat: Optional[str] = None


def normal_form_curve(A: TypeSequence, truncation: Optional[int] = None) -> CurveGerm:
    """The monomial curve t -> (t^{a_1}, ..., t^{a_m}) realizing a type."""
    if truncation is None:
        truncation = A.entries[-1] + 3
    return CurveGerm.monomial(A, truncation)


# (s,t) charts, one term list per component: (coeff, s-exp, t-exp)
_ST_CHARTS = {
    SingularityClass.CUSPIDAL_EDGE: [
        [(1, 1, 0), (1, 0, 1)],
        [(1, 0, 2), (2, 1, 1)],
        [(1, 0, 3), (3, 1, 2)],
    ],
    SingularityClass.FOLDED_UMBRELLA: [
        [(1, 1, 0), (1, 0, 1)],
        [(1, 0, 2), (2, 1, 1)],
        [(1, 0, 4), (4, 1, 3)],
    ],
    SingularityClass.SWALLOWTAIL: [
        [(1, 0, 2), (2, 1, 0)],
        [(1, 0, 3), (3, 1, 1)],
        [(1, 0, 4), (4, 1, 2)],
    ],
    SingularityClass.MOND_SURFACE: [
        [(1, 1, 0), (1, 0, 1)],
        [(1, 0, 3), (3, 1, 2)],
        [(1, 0, 4), (4, 1, 3)],
    ],
    SingularityClass.OPEN_SWALLOWTAIL: [
        [(1, 0, 2), (2, 1, 0)],
        [(1, 0, 3), (3, 1, 1)],
        [(1, 0, 4), (4, 1, 2)],
        [(1, 0, 5), (5, 1, 3)],
    ],
    SingularityClass.OPEN_MOND_SURFACE: [
        [(1, 1, 0), (1, 0, 1)],
        [(1, 0, 3), (3, 1, 2)],
        [(1, 0, 4), (4, 1, 3)],
        [(1, 0, 5), (5, 1, 4)],
    ],
    SingularityClass.OPEN_FOLDED_UMBRELLA: [
        [(1, 1, 0), (1, 0, 1)],
        [(1, 0, 2), (2, 1, 1)],
        [(1, 0, 4), (4, 1, 3)],
        [(1, 0, 5), (5, 1, 4)],
    ],
    SingularityClass.UNFURLED_MOND_SURFACE: [
        [(1, 1, 0), (1, 0, 1)],
        [(1, 0, 3), (3, 1, 2)],
        [(1, 0, 4), (4, 1, 3)],
        [(1, 0, 6), (6, 1, 5)],
    ],
    SingularityClass.GENERIC_FOLDED_PLEAT: [
        # tangent map of the (2,3,5) monomial curve; representative only
        [(1, 0, 2), (2, 1, 0)],
        [(1, 0, 3), (3, 1, 1)],
        [(1, 0, 5), (5, 1, 3)],
    ],
}

# (u,x) charts: (coeff, u-exp, x-exp)
_UX_CHARTS = {
    SingularityClass.CUSPIDAL_EDGE: [
        [(1, 1, 0)],
        [(1, 0, 2)],
        [(1, 0, 3)],
    ],
    SingularityClass.FOLDED_UMBRELLA: [
        [(1, 1, 0)],
        [(1, 0, 2), (1, 1, 1)],
        [("1/2", 0, 4), ("1/3", 1, 3)],
    ],
    SingularityClass.SWALLOWTAIL: [
        [(1, 1, 0)],
        [(1, 0, 3), (1, 1, 1)],
        [("3/4", 0, 4), ("1/2", 1, 2)],
    ],
    SingularityClass.MOND_SURFACE: [
        [(1, 1, 0)],
        [(1, 0, 3), (1, 1, 2)],
        [("3/4", 0, 4), ("2/3", 1, 3)],
    ],
    SingularityClass.OPEN_SWALLOWTAIL: [
        [(1, 1, 0)],
        [(1, 0, 3), (1, 1, 1)],
        [("3/4", 0, 4), ("1/2", 1, 2)],
        [("3/5", 0, 5), ("1/3", 1, 3)],
    ],
    SingularityClass.OPEN_MOND_SURFACE: [
        [(1, 1, 0)],
        [(1, 0, 3), (1, 1, 2)],
        [("3/4", 0, 4), ("2/3", 1, 3)],
        [("3/5", 0, 5), ("1/2", 1, 4)],
    ],
    SingularityClass.OPEN_FOLDED_UMBRELLA: [
        [(1, 1, 0)],
        [(1, 0, 2), (1, 1, 1)],
        [("1/2", 0, 4), ("1/3", 1, 3)],
        [("2/5", 0, 5), ("1/4", 1, 4)],
    ],
    SingularityClass.UNFURLED_MOND_SURFACE: [
        [(1, 1, 0)],
        [(1, 0, 3), (1, 1, 2)],
        [("3/4", 0, 4), ("2/3", 1, 3)],
        [("1/2", 0, 6), ("2/5", 1, 5)],
    ],
}

_MIN_AMBIENT = {
    SingularityClass.CUSPIDAL_EDGE: 3,
    SingularityClass.FOLDED_UMBRELLA: 3,
    SingularityClass.SWALLOWTAIL: 3,
    SingularityClass.MOND_SURFACE: 3,
    SingularityClass.GENERIC_FOLDED_PLEAT: 3,
    SingularityClass.OPEN_SWALLOWTAIL: 4,
    SingularityClass.OPEN_MOND_SURFACE: 4,
    SingularityClass.OPEN_FOLDED_UMBRELLA: 4,
    SingularityClass.UNFURLED_MOND_SURFACE: 4,
}

#: monomial-curve types whose tangent map reproduces the (s,t) chart exactly
NORMAL_FORM_TYPES = {
    (1, 2, 3): SingularityClass.CUSPIDAL_EDGE,
    (1, 2, 4): SingularityClass.FOLDED_UMBRELLA,
    (2, 3, 4): SingularityClass.SWALLOWTAIL,
    (1, 3, 4): SingularityClass.MOND_SURFACE,
    (2, 3, 4, 5): SingularityClass.OPEN_SWALLOWTAIL,
    (1, 3, 4, 5): SingularityClass.OPEN_MOND_SURFACE,
    (1, 2, 4, 5): SingularityClass.OPEN_FOLDED_UMBRELLA,
    (1, 3, 4, 6): SingularityClass.UNFURLED_MOND_SURFACE,
    (2, 3, 5): SingularityClass.GENERIC_FOLDED_PLEAT,
}


def _build_chart(term_lists, ambient: int, truncation: int) -> Tuple[Jet2, ...]:
    comps = [
        Jet2.from_terms([(i, j, c) for c, i, j in comp], truncation)
        for comp in term_lists
    ]
    while len(comps) < ambient:
        comps.append(Jet2.zero(truncation))
    return tuple(comps)


def normal_form(
    singularity: SingularityClass, ambient_dim: int, truncation: int = 8
) -> NormalForm:
    """Exact parametrizations of a named singularity, padded with zeros.

    The folded-pleat entry is a representative tangent map only (its
    diffeomorphism class is not determined by the type); every other entry
    is the classifying parametrization in both known charts.
    """
    if singularity is SingularityClass.UNCLASSIFIED:
        raise ValueError("no normal form for the unclassified verdict")
    need = _MIN_AMBIENT[singularity]
    if ambient_dim < need:
        raise ValueError(
            f"{singularity.value} needs ambient dimension >= {need}"
        )
    chart_st = _build_chart(_ST_CHARTS[singularity], ambient_dim, truncation)
    chart_ux = None
    if singularity in _UX_CHARTS:
        chart_ux = _build_chart(_UX_CHARTS[singularity], ambient_dim, truncation)
    caveat = (
        TWO_CLASS_CAVEAT
        if singularity is SingularityClass.GENERIC_FOLDED_PLEAT
        else None
    )
    return NormalForm(singularity, ambient_dim, chart_st, chart_ux, caveat)
