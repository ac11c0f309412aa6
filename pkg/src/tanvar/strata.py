"""Codimension of type strata and enumeration of generic types.

Five classes of curves are supported.  Plain curves in projective (N+1)-space
carry the stratum codimension sum(a_i - i).  Curves framed by a partial flag
of depth k (tangent frame k = 1, tangent-principal-normal frame k = 2,
full osculating frame k = N) carry

    sum_{i=k}^{N+1} (a_i - i)  -  (N - k + 1)(a_k - k),

which for k = N collapses to a_{N+1} - (N+1).  Contact-integral curves with
osculating isotropic frames in projective (2n+1)-space only realize types
satisfying

    a_{n+j} = a_{n+1} + a_n - a_{n+1-j}   (2 <= j <= n+1, with a_0 = 0),

and then the codimension is a_{n+1} - (n+1).  The admissible types are in
bijection with order data (u_1..u_n, v), all >= 1, via partial sums.

The generic types of a class are those of codimension at most one.  They are
enumerated by bounded search: codimension <= 1 forces a_i <= i + 2 in every
class (each unit excess at a_i costs at least one unit of codimension once
the frame discount is accounted for), so the search space below that bound
is finite and complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Tuple, Union

from .curves import TypeSequence


class ClassTag(Enum):
    PLAIN = "plain"
    TANGENT_FRAMED = "tangent"
    TPN_FRAMED = "tpn"
    OSCULATING_FRAMED = "osculating"
    CONTACT_OSCULATING = "contact"


@dataclass(frozen=True)
class CurveClass:
    """A curve class: the geometric constraint plus its dimension parameter.

    ``dimension`` is N for the projective classes (ambient dimension N+1)
    and n for the contact class (ambient dimension 2n+1).  ``flag_depth``
    overrides the depth for the general partial-flag case; the named framed
    classes fix it to 1, 2 and N.
    """

    tag: ClassTag
    dimension: int
    flag_depth: int = 0

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension parameter must be >= 1")
        if self.tag is ClassTag.CONTACT_OSCULATING:
            if self.flag_depth:
                raise ValueError("contact class takes no flag depth")
        elif self.flag_depth and not 1 <= self.flag_depth <= self.dimension:
            raise ValueError("flag depth must satisfy 1 <= k <= N")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def plain(N: int) -> "CurveClass":
        return CurveClass(ClassTag.PLAIN, N)

    @staticmethod
    def tangent_framed(N: int) -> "CurveClass":
        return CurveClass(ClassTag.TANGENT_FRAMED, N)

    @staticmethod
    def tpn_framed(N: int) -> "CurveClass":
        return CurveClass(ClassTag.TPN_FRAMED, N)

    @staticmethod
    def osculating_framed(N: int) -> "CurveClass":
        return CurveClass(ClassTag.OSCULATING_FRAMED, N)

    @staticmethod
    def contact_osculating(n: int) -> "CurveClass":
        return CurveClass(ClassTag.CONTACT_OSCULATING, n)

    @staticmethod
    def flag(N: int, k: int) -> "CurveClass":
        """General partial-flag class of depth k (columns 1..k+1 of the flag)."""
        if k == 1:
            return CurveClass.tangent_framed(N)
        if k == 2 and N >= 2:
            return CurveClass.tpn_framed(N)
        if k == N:
            return CurveClass.osculating_framed(N)
        return CurveClass(ClassTag.TANGENT_FRAMED, N, flag_depth=k)

    # -- derived data ----------------------------------------------------------

    @property
    def type_length(self) -> int:
        if self.tag is ClassTag.CONTACT_OSCULATING:
            return 2 * self.dimension + 1
        return self.dimension + 1

    @property
    def depth(self) -> int:
        """Effective flag depth for the codimension formula (0 for plain/contact)."""
        if self.flag_depth:
            return self.flag_depth
        if self.tag is ClassTag.TANGENT_FRAMED:
            return 1
        if self.tag is ClassTag.TPN_FRAMED:
            return 2
        if self.tag is ClassTag.OSCULATING_FRAMED:
            return self.dimension
        return 0

    def describe(self) -> str:
        if self.tag is ClassTag.CONTACT_OSCULATING:
            return f"contact-osculating (n={self.dimension})"
        base = {
            ClassTag.PLAIN: "plain",
            ClassTag.TANGENT_FRAMED: "tangent-framed",
            ClassTag.TPN_FRAMED: "tangent-principal-normal-framed",
            ClassTag.OSCULATING_FRAMED: "osculating-framed",
        }[self.tag]
        if self.flag_depth:
            base = f"flag-framed (k={self.flag_depth})"
        return f"{base} (N={self.dimension})"


@dataclass(frozen=True)
class LagrangianOrders:
    """Order data (u_1..u_n, v) reconstructing an admissible contact type."""

    u: Tuple[int, ...]
    v: int


@dataclass(frozen=True)
class Inadmissible:
    """Why a type sequence is not realizable by contact-osculating curves."""

    reason: str


def _check_length(A: TypeSequence, want: int) -> None:
    if len(A) != want:
        raise ValueError(f"type length {len(A)} does not match expected {want}")


def codim_plain(A: TypeSequence, N: int) -> int:
    """Stratum codimension sum(a_i - i) for plain curves in (N+1)-space."""
    _check_length(A, N + 1)
    return sum(a - i for i, a in enumerate(A.entries, start=1))


def codim_flag(A: TypeSequence, k: int, N: int) -> int:
    """Stratum codimension for depth-k flag-framed curves."""
    if not 1 <= k <= N:
        raise ValueError("flag depth must satisfy 1 <= k <= N")
    _check_length(A, N + 1)
    tail = sum(A.entries[i - 1] - i for i in range(k, N + 2))
    return tail - (N - k + 1) * (A.entries[k - 1] - k)


def lagrangian_admissible(
    A: TypeSequence, n: int
) -> Union[LagrangianOrders, Inadmissible]:
    """Check the contact-osculating realizability constraint and extract orders.

    The constraint is a_{n+j} = a_{n+1} + a_n - a_{n+1-j} for j = 2..n+1
    with the convention a_0 = 0.  On success the orders u_i = a_i - a_{i-1}
    (i <= n) and v = a_{n+1} - a_n are returned after verifying both
    reconstruction formulas round-trip.
    """
    _check_length(A, 2 * n + 1)
    a = (0,) + A.entries  # a[0] = 0 convention
    for j in range(2, n + 2):
        want = a[n + 1] + a[n] - a[n + 1 - j]
        if a[n + j] != want:
            return Inadmissible(
                f"a_{n + j} = {a[n + j]} but the framing forces "
                f"a_{n + 1} + a_{n} - a_{n + 1 - j} = {want}"
            )
    u = tuple(a[i] - a[i - 1] for i in range(1, n + 1))
    v = a[n + 1] - a[n]
    if any(ui < 1 for ui in u) or v < 1:
        return Inadmissible("orders must all be >= 1")
    rebuilt = orders_to_type(LagrangianOrders(u, v))
    assert rebuilt.entries == A.entries
    return LagrangianOrders(u, v)


def codim_lagrangian(A: TypeSequence, n: int) -> int:
    """Stratum codimension a_{n+1} - (n+1) for admissible contact types."""
    verdict = lagrangian_admissible(A, n)
    if isinstance(verdict, Inadmissible):
        raise ValueError(f"inadmissible type: {verdict.reason}")
    return A.entries[n] - (n + 1)


def orders_to_type(orders: LagrangianOrders) -> TypeSequence:
    """Rebuild the contact type from its order data (always admissible)."""
    u, v = orders.u, orders.v
    if any(ui < 1 for ui in u) or v < 1:
        raise ValueError("orders must all be >= 1")
    n = len(u)
    a: List[int] = []
    total = 0
    for ui in u:
        total += ui
        a.append(total)
    a.append(total + v)
    for j in range(1, n + 1):
        a.append(a[n] + sum(u[n - j :]))
    return TypeSequence(tuple(a))


def codimension(A: TypeSequence, cls: CurveClass) -> int:
    """Codimension of the type stratum within the given curve class."""
    if cls.tag is ClassTag.PLAIN:
        return codim_plain(A, cls.dimension)
    if cls.tag is ClassTag.CONTACT_OSCULATING:
        return codim_lagrangian(A, cls.dimension)
    return codim_flag(A, cls.depth, cls.dimension)


def _bounded_sequences(length: int) -> List[Tuple[int, ...]]:
    """All strictly increasing positive sequences with a_i <= i + 2."""
    out: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...]):
        i = len(prefix) + 1
        if i > length:
            out.append(prefix)
            return
        lo = prefix[-1] + 1 if prefix else 1
        for a in range(lo, i + 3):
            extend(prefix + (a,))

    extend(())
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(cls: CurveClass) -> Tuple[TypeSequence, ...]:
    result = []
    for seq in _bounded_sequences(cls.type_length):
        A = TypeSequence(seq)
        if cls.tag is ClassTag.CONTACT_OSCULATING:
            if isinstance(lagrangian_admissible(A, cls.dimension), Inadmissible):
                continue
        if codimension(A, cls) <= 1:
            result.append(A)
    result.sort(key=lambda T: T.entries)
    return tuple(result)


def enumerate_generic(cls: CurveClass) -> List[TypeSequence]:
    """All types of codimension <= 1 in the class, sorted lexicographically.

    For the contact class only admissible types qualify.  The search bound
    a_i <= i + 2 is complete for codimension <= 1 (see module docstring).
    """
    return list(_enumerate_cached(cls))
