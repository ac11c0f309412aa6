"""Curve germs in an affine chart of projective space and their types.

A curve germ is a tuple of one-variable jets, one per affine coordinate,
all vanishing at t = 0.  Its *type* (a_1 < a_2 < ... < a_m) records the
derivative counts at which the span of the derivative vectors at 0 grows:
a_i is the smallest k such that (gamma', gamma'', ..., gamma^(k))(0) has
rank i.  A germ whose derivative span never fills the ambient space within
the stored truncation gets the verdict :class:`NotFiniteTypeUpTo` rather
than an answer; finite type is not decidable at a fixed truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .jets import Jet1, JetDomainError


class NotFiniteTypeError(ValueError):
    """Raised by operations that require a finite-type curve."""


@dataclass(frozen=True)
class TypeSequence:
    """Strictly increasing positive integers (a_1, ..., a_m)."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty type sequence")
        if self.entries[0] < 1:
            raise ValueError("type entries must be positive")
        for a, b in zip(self.entries, self.entries[1:]):
            if b <= a:
                raise ValueError("type entries must increase strictly")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @staticmethod
    def of(*entries: int) -> "TypeSequence":
        return TypeSequence(tuple(entries))

    @property
    def is_ordinary(self) -> bool:
        return self.entries == tuple(range(1, len(self.entries) + 1))

    def render(self) -> str:
        return "(" + ",".join(str(a) for a in self.entries) + ")"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class NotFiniteTypeUpTo:
    """Verdict: the derivative span did not reach full rank within truncation."""

    truncation: int


@dataclass(frozen=True)
class CurveGerm:
    """Affine-chart curve germ: components x_1(t), ..., x_{N+1}(t), all 0 at t=0."""

    components: Tuple[Jet1, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a curve germ needs at least one component")
        K = self.components[0].truncation
        for c in self.components:
            if c.truncation != K:
                raise ValueError("components must share one truncation order")
            if c.coefficient(0) != 0:
                raise ValueError("curve germ components must vanish at t = 0")

    @staticmethod
    def from_components(components: Sequence[Jet1]) -> "CurveGerm":
        return CurveGerm(tuple(components))

    @staticmethod
    def monomial(type_sequence: TypeSequence, truncation: int) -> "CurveGerm":
        """The monomial curve t -> (t^{a_1}, ..., t^{a_m})."""
        if truncation < type_sequence.entries[-1]:
            raise ValueError("truncation below the largest exponent")
        return CurveGerm(
            tuple(Jet1.term(1, a, truncation) for a in type_sequence)
        )

    @property
    def ambient_dim(self) -> int:
        return len(self.components)

    @property
    def truncation(self) -> int:
        return self.components[0].truncation


class _RankTracker:
    """Incremental rank of a growing family of rational vectors."""

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots: List[Tuple[int, List[Fraction]]] = []  # (pivot index, reduced row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vector: Sequence[Fraction]) -> bool:
        """Reduce the vector against current pivots; True if the rank grew."""
        v = list(vector)
        for idx, row in self.pivots:
            if v[idx] != 0:
                f = v[idx]
                v = [a - f * b for a, b in zip(v, row)]
        for idx, a in enumerate(v):
            if a != 0:
                inv = Fraction(1) / a
                self.pivots.append((idx, [x * inv for x in v]))
                return True
        return False


def _derivative_vectors(components: Sequence[Jet1], start: int):
    """Coefficient vectors (c_{1,k}, ..., c_{m,k}) for k = start..K.

    The k-th derivative at 0 equals k! times the degree-k coefficient vector;
    the scaling is irrelevant for ranks, so the raw coefficients are used.
    """
    K = components[0].truncation
    for k in range(start, K + 1):
        yield k, [c.coefficient(k) for c in components]


def curve_type(germ: CurveGerm) -> Union[TypeSequence, NotFiniteTypeUpTo]:
    """Type of the germ from the rank filtration of its derivative vectors at 0."""
    tracker = _RankTracker(germ.ambient_dim)
    entries: List[int] = []
    for k, vec in _derivative_vectors(germ.components, 1):
        if tracker.add(vec):
            entries.append(k)
            if tracker.rank == germ.ambient_dim:
                return TypeSequence(tuple(entries))
    return NotFiniteTypeUpTo(germ.truncation)


def projective_type(lift: Sequence[Jet1]) -> Union[TypeSequence, NotFiniteTypeUpTo]:
    """Type computed from a homogeneous lift (the lift itself joins the matrix).

    a_i is the smallest r such that (lift, lift', ..., lift^(r)) has rank
    i + 1 at t = 0.  The lift must not vanish at the origin.
    """
    values = [c.coefficient(0) for c in lift]
    if all(v == 0 for v in values):
        raise JetDomainError("homogeneous lift vanishes at t = 0")
    m = len(lift)
    tracker = _RankTracker(m)
    tracker.add(values)
    entries: List[int] = []
    K = lift[0].truncation
    derivs = list(lift)
    for r in range(1, K + 1):
        derivs = [d.derivative() for d in derivs]
        if tracker.add([d.coefficient(0) for d in derivs]):
            entries.append(r)
            if tracker.rank == m:
                return TypeSequence(tuple(entries))
    return NotFiniteTypeUpTo(K)


def homogeneous_lift(germ: CurveGerm) -> Tuple[Jet1, ...]:
    """The affine lift (1, x_1(t), ..., x_{N+1}(t))."""
    one = Jet1.constant(1, germ.truncation)
    return (one,) + germ.components


def affine_chart(lift: Sequence[Jet1]) -> CurveGerm:
    """Re-affinize a homogeneous lift and re-center the resulting germ.

    Divides by the first coordinate (which must be a unit) and subtracts the
    constant terms.  The result lives at a lower truncation only if division
    lowers it (a unit divisor keeps it).
    """
    unit = lift[0]
    if unit.coefficient(0) == 0:
        raise JetDomainError("first lift coordinate is not a unit")
    comps = []
    for x in lift[1:]:
        q = x.divide(unit)
        assert q is not None  # unit divisor: division always succeeds
        comps.append(q - Jet1.constant(q.coefficient(0), q.truncation))
    return CurveGerm(tuple(comps))


def normalize(germ: CurveGerm):
    """Bring a finite-type germ to its triangular normal shape.

    Returns ``(normalized, matrix)`` where component i of the result is
    t^{a_i} plus higher terms whose degrees avoid every a_j with j > i, and
    ``matrix`` is the invertible rational matrix with
    ``normalized_i = sum_j matrix[i][j] * original_j``.
    """
    t = curve_type(germ)
    if isinstance(t, NotFiniteTypeUpTo):
        raise NotFiniteTypeError(
            f"germ is not of finite type within truncation {t.truncation}"
        )
    m = germ.ambient_dim
    K = germ.truncation
    rows = [list(c.coeffs) for c in germ.components]
    mat = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    assigned: List[int] = []  # row index chosen for each a_i, in order
    free = set(range(m))
    for a in t.entries:
        pick = None
        for r in sorted(free):
            if rows[r][a] != 0 and all(rows[r][b] == 0 for b in range(1, a)):
                pick = r
                break
        assert pick is not None  # the rank filtration guarantees a pivot row
        free.discard(pick)
        inv = Fraction(1) / rows[pick][a]
        rows[pick] = [x * inv for x in rows[pick]]
        mat[pick] = [x * inv for x in mat[pick]]
        for r in range(m):
            if r != pick and rows[r][a] != 0:
                f = rows[r][a]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pick])]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[pick])]
        assigned.append(pick)
    order = assigned
    comps = tuple(Jet1(tuple(rows[r])) for r in order)
    matrix = tuple(tuple(mat[r]) for r in order)
    return CurveGerm(comps), matrix


@dataclass(frozen=True)
class FlagFrame:
    """Moving frame whose leading i columns span the i-th osculating space.

    ``columns[j]`` is a tuple of N+2 one-variable jets; column 0 is the
    homogeneous lift of the (normalized) curve and column j >= 1 is its
    a_j-th derivative divided by a_j factorial.
    """

    columns: Tuple[Tuple[Jet1, ...], ...]
    source_type: TypeSequence

    @property
    def size(self) -> int:
        return len(self.columns)

    def at_zero(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """The frame matrix evaluated at t = 0, columns in column-major order."""
        return tuple(
            tuple(entry.coefficient(0) for entry in col) for col in self.columns
        )

    def span_at_zero(self, i: int) -> Tuple[Tuple[Fraction, ...], ...]:
        """The first i columns at t = 0 (a basis of V_i(0))."""
        return self.at_zero()[:i]


def flag_lift(germ: CurveGerm) -> FlagFrame:
    """Osculating-flag frame of a finite-type germ.

    The germ is normalized first; the columns are then the homogeneous lift
    and its scaled derivatives of orders a_1, ..., a_{N+1}.  All entries are
    aligned to the truncation of the highest derivative taken.
    """
    t = curve_type(germ)
    if isinstance(t, NotFiniteTypeUpTo):
        raise NotFiniteTypeError(
            f"germ is not of finite type within truncation {t.truncation}"
        )
    normalized, _ = normalize(germ)
    lift = homogeneous_lift(normalized)
    a_max = t.entries[-1]
    K_out = germ.truncation - a_max
    if K_out < 0:
        raise NotFiniteTypeError("truncation too small for the flag frame")
    cols: List[Tuple[Jet1, ...]] = [tuple(x.truncate(K_out) for x in lift)]
    fact = 1
    derivs = list(lift)
    step = 0
    for a in t.entries:
        while step < a:
            derivs = [d.derivative() for d in derivs]
            step += 1
            fact *= step
        scale = Fraction(1, fact)
        cols.append(tuple((scale * d).truncate(K_out) for d in derivs))
    return FlagFrame(tuple(cols), t)
