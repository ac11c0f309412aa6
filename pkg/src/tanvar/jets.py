"""Exact truncated power series ("jets") in one and two variables.

A jet of truncation order ``K`` stores the coefficients of a power series
up to and including total degree ``K``, with all coefficients kept as exact
``fractions.Fraction`` values.  Degrees above the truncation are *unknown*,
not zero: arithmetic never claims information it does not have.  In
particular

* binary ring operations require both operands to share one truncation
  order and raise :class:`TruncationMismatch` otherwise,
* differentiation lowers the truncation by one,
* division lowers it by the order of the divisor,
* weighted integration raises it.

The two-variable jets are stored as dense triangular coefficient tables
(total degree ``i + j <= K``); the supported envelope is total degree
``<= 24``, which covers every computation performed by the rest of the
library with room to spare.

All jet values are immutable; every operation returns a fresh jet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

Scalar = Union[int, Fraction]

#: largest supported truncation order for two-variable jets
MAX_TRUNCATION_2 = 24


class TruncationMismatch(ValueError):
    """Raised when a binary operation mixes two truncation orders."""


class JetDomainError(ValueError):
    """Raised when an operation's precondition on the operands fails."""


class _AboveTruncation:
    """Order of a jet that vanishes identically within its truncation.

    Compares strictly greater than every integer, and equal only to itself.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ABOVE_TRUNCATION"

    def __eq__(self, other):
        return isinstance(other, _AboveTruncation)

    def __hash__(self):
        return hash("ABOVE_TRUNCATION")

    def __gt__(self, other):
        return not isinstance(other, _AboveTruncation)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _AboveTruncation)


ABOVE_TRUNCATION = _AboveTruncation()

ExtOrder = Union[int, _AboveTruncation]


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


# --------------------------------------------------------------------------
# one variable
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Jet1:
    """Truncated power series in one variable with exact rational coefficients.

    ``coeffs[k]`` is the coefficient of degree ``k``; the truncation order is
    ``len(coeffs) - 1``.
    """

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a jet stores at least the degree-0 coefficient")

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(truncation: int) -> "Jet1":
        return Jet1((Fraction(0),) * (truncation + 1))

    @staticmethod
    def constant(value: Scalar, truncation: int) -> "Jet1":
        c = [Fraction(0)] * (truncation + 1)
        c[0] = _frac(value)
        return Jet1(tuple(c))

    @staticmethod
    def variable(truncation: int) -> "Jet1":
        return Jet1.term(1, 1, truncation)

    @staticmethod
    def term(coeff: Scalar, power: int, truncation: int) -> "Jet1":
        if power < 0:
            raise ValueError("negative power")
        c = [Fraction(0)] * (truncation + 1)
        if power <= truncation:
            c[power] = _frac(coeff)
        return Jet1(tuple(c))

    @staticmethod
    def from_terms(terms: Iterable[Tuple[int, Scalar]], truncation: int) -> "Jet1":
        c = [Fraction(0)] * (truncation + 1)
        for power, coeff in terms:
            if power < 0:
                raise ValueError("negative power")
            if power <= truncation:
                c[power] += _frac(coeff)
        return Jet1(tuple(c))

    # -- basic queries -------------------------------------------------------

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if not 0 <= k <= self.truncation:
            raise IndexError(f"degree {k} outside truncation {self.truncation}")
        return self.coeffs[k]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def order(self) -> ExtOrder:
        """Smallest degree with a nonzero coefficient (ABOVE_TRUNCATION if none)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return ABOVE_TRUNCATION

    def degree(self) -> ExtOrder:
        """Largest stored degree with a nonzero coefficient."""
        for k in range(self.truncation, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return ABOVE_TRUNCATION

    # -- ring operations -----------------------------------------------------

    def _require_same(self, other: "Jet1") -> None:
        if self.truncation != other.truncation:
            raise TruncationMismatch(
                f"truncation {self.truncation} vs {other.truncation}"
            )

    def __add__(self, other):
        if isinstance(other, Jet1):
            self._require_same(other)
            return Jet1(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Jet1):
            self._require_same(other)
            return Jet1(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))
        return NotImplemented

    def __neg__(self):
        return Jet1(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Jet1):
            self._require_same(other)
            K = self.truncation
            out = [Fraction(0)] * (K + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j in range(0, K + 1 - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] += a * b
            return Jet1(tuple(out))
        if isinstance(other, (int, Fraction)):
            f = _frac(other)
            return Jet1(tuple(a * f for a in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    # -- calculus --------------------------------------------------------------

    def derivative(self) -> "Jet1":
        """Formal derivative; the result has truncation one lower."""
        if self.truncation < 1:
            raise JetDomainError("cannot differentiate a truncation-0 jet")
        return Jet1(tuple(Fraction(k) * self.coeffs[k] for k in range(1, self.truncation + 1)))

    def weighted_integral(self, ell: int) -> "Jet1":
        """Jet of ``int_0^t s^ell * self(s) ds``; truncation rises to K + ell + 1."""
        if ell < 0:
            raise ValueError("negative weight")
        K = self.truncation
        out = [Fraction(0)] * (K + ell + 2)
        for k, c in enumerate(self.coeffs):
            if c != 0:
                out[k + ell + 1] = c / (k + ell + 1)
        return Jet1(tuple(out))

    def compose(self, phi: "Jet1") -> "Jet1":
        """Jet of the composite self(phi(t)), truncated at K.  Requires ord(phi) >= 1."""
        self._require_same(phi)
        if phi.order() == 0:
            raise JetDomainError("inner jet must vanish at 0")
        K = self.truncation
        # Horner evaluation in the jet ring
        result = Jet1.constant(self.coeffs[K], K)
        for k in range(K - 1, -1, -1):
            result = result * phi + Jet1.constant(self.coeffs[k], K)
        return result

    def divide(self, other: "Jet1"):
        """Exact quotient q with self = q * other, or None when no jet quotient exists.

        The quotient carries truncation ``K - ord(other)``.  Raises
        ZeroDivisionError when the divisor vanishes identically within its
        truncation.
        """
        self._require_same(other)
        d = other.order()
        if d is ABOVE_TRUNCATION:
            raise ZeroDivisionError("divisor vanishes within its truncation")
        K = self.truncation
        nord = self.order()
        if isinstance(nord, int) and nord < d:
            return None
        Kq = K - d
        lead = other.coeffs[d]
        q = [Fraction(0)] * (Kq + 1)
        for k in range(0, Kq + 1):
            acc = self.coeffs[k + d]
            for jj in range(0, k):
                b = other.coeffs[d + k - jj]
                if b != 0 and q[jj] != 0:
                    acc -= q[jj] * b
            q[k] = acc / lead
        return Jet1(tuple(q))

    def shift_down(self, e: int):
        """Exact division by t**e, or None if a coefficient below degree e is nonzero."""
        if e == 0:
            return self
        if any(c != 0 for c in self.coeffs[:e]):
            return None
        return Jet1(tuple(self.coeffs[e:]))

    # -- misc --------------------------------------------------------------------

    def truncate(self, new_truncation: int) -> "Jet1":
        if new_truncation > self.truncation:
            raise JetDomainError("cannot raise a truncation order")
        return Jet1(self.coeffs[: new_truncation + 1])

    def evaluate(self, x):
        """Evaluate the stored polynomial part at x (Horner)."""
        acc = self.coeffs[self.truncation] * 1
        for k in range(self.truncation - 1, -1, -1):
            acc = acc * x + self.coeffs[k]
        return acc

    def render(self, var: str = "t") -> str:
        return _render_terms(
            ((c, ((var, k),)) for k, c in enumerate(self.coeffs) if c != 0)
        )

    def __str__(self):
        return self.render()


# --------------------------------------------------------------------------
# two variables
# --------------------------------------------------------------------------


def _tri_size(K: int) -> int:
    return (K + 1) * (K + 2) // 2


def _tri_index(i: int, j: int) -> int:
    d = i + j
    return d * (d + 1) // 2 + j


@dataclass(frozen=True)
class Jet2:
    """Truncated power series in two variables, stored as a dense triangular table.

    ``coefficient(i, j)`` is the coefficient of ``x**i * y**j``; all bidegrees
    with ``i + j <= truncation`` are stored.  The two variables are positional
    (index 0 and 1); display names are chosen at rendering time.
    """

    coeffs: Tuple[Fraction, ...]
    truncation: int

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("negative truncation")
        if self.truncation > MAX_TRUNCATION_2:
            raise ValueError(
                f"two-variable jets support total degree <= {MAX_TRUNCATION_2}"
            )
        if len(self.coeffs) != _tri_size(self.truncation):
            raise ValueError("coefficient table does not match truncation")

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(truncation: int) -> "Jet2":
        return Jet2((Fraction(0),) * _tri_size(truncation), truncation)

    @staticmethod
    def constant(value: Scalar, truncation: int) -> "Jet2":
        c = [Fraction(0)] * _tri_size(truncation)
        c[0] = _frac(value)
        return Jet2(tuple(c), truncation)

    @staticmethod
    def variable(index: int, truncation: int) -> "Jet2":
        if index == 0:
            return Jet2.term(1, 1, 0, truncation)
        if index == 1:
            return Jet2.term(1, 0, 1, truncation)
        raise ValueError("variable index must be 0 or 1")

    @staticmethod
    def term(coeff: Scalar, i: int, j: int, truncation: int) -> "Jet2":
        if i < 0 or j < 0:
            raise ValueError("negative exponent")
        c = [Fraction(0)] * _tri_size(truncation)
        if i + j <= truncation:
            c[_tri_index(i, j)] = _frac(coeff)
        return Jet2(tuple(c), truncation)

    @staticmethod
    def from_terms(
        terms: Iterable[Tuple[int, int, Scalar]], truncation: int
    ) -> "Jet2":
        c = [Fraction(0)] * _tri_size(truncation)
        for i, j, coeff in terms:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if i + j <= truncation:
                c[_tri_index(i, j)] += _frac(coeff)
        return Jet2(tuple(c), truncation)

    @staticmethod
    def from_jet1(jet: Jet1, var: int, truncation: int) -> "Jet2":
        """Embed a one-variable jet as a two-variable jet in the given variable.

        Requires the embedded degrees to fit: deg(jet) <= truncation.
        """
        deg = jet.degree()
        if isinstance(deg, int) and deg > truncation:
            raise JetDomainError("one-variable jet does not fit the target truncation")
        if var == 0:
            return Jet2.from_terms(
                ((k, 0, c) for k, c in enumerate(jet.coeffs) if c != 0), truncation
            )
        if var == 1:
            return Jet2.from_terms(
                ((0, k, c) for k, c in enumerate(jet.coeffs) if c != 0), truncation
            )
        raise ValueError("variable index must be 0 or 1")

    # -- queries ---------------------------------------------------------------

    def coefficient(self, i: int, j: int) -> Fraction:
        if i < 0 or j < 0 or i + j > self.truncation:
            raise IndexError(f"bidegree ({i},{j}) outside truncation {self.truncation}")
        return self.coeffs[_tri_index(i, j)]

    def terms(self):
        """Yield (i, j, coeff) over nonzero entries, ordered by (total degree, j)."""
        pos = 0
        for d in range(self.truncation + 1):
            for j in range(d + 1):
                c = self.coeffs[pos]
                if c != 0:
                    yield d - j, j, c
                pos += 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def order(self) -> ExtOrder:
        for i, j, _ in self.terms():
            return i + j
        return ABOVE_TRUNCATION

    # -- ring operations ---------------------------------------------------------

    def _require_same(self, other: "Jet2") -> None:
        if self.truncation != other.truncation:
            raise TruncationMismatch(
                f"truncation {self.truncation} vs {other.truncation}"
            )

    def __add__(self, other):
        if isinstance(other, Jet2):
            self._require_same(other)
            return Jet2(
                tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                self.truncation,
            )
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Jet2):
            self._require_same(other)
            return Jet2(
                tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
                self.truncation,
            )
        return NotImplemented

    def __neg__(self):
        return Jet2(tuple(-a for a in self.coeffs), self.truncation)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            self._require_same(other)
            K = self.truncation
            out = [Fraction(0)] * _tri_size(K)
            left = list(self.terms())
            right = list(other.terms())
            for i1, j1, c1 in left:
                for i2, j2, c2 in right:
                    i, j = i1 + i2, j1 + j2
                    if i + j <= K:
                        out[_tri_index(i, j)] += c1 * c2
            return Jet2(tuple(out), K)
        if isinstance(other, (int, Fraction)):
            f = _frac(other)
            return Jet2(tuple(a * f for a in self.coeffs), self.truncation)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    # -- calculus -------------------------------------------------------------------

    def derivative(self, var: int) -> "Jet2":
        """Formal partial derivative; truncation drops by one."""
        if self.truncation < 1:
            raise JetDomainError("cannot differentiate a truncation-0 jet")
        K = self.truncation - 1
        out = [Fraction(0)] * _tri_size(K)
        for i, j, c in self.terms():
            if var == 0 and i >= 1:
                out[_tri_index(i - 1, j)] = Fraction(i) * c
            elif var == 1 and j >= 1:
                out[_tri_index(i, j - 1)] = Fraction(j) * c
        return Jet2(tuple(out), K)

    def weighted_integral(self, var: int, ell: int) -> "Jet2":
        """Integrate ``s^ell * self`` from 0 in the given variable; truncation rises."""
        if ell < 0:
            raise ValueError("negative weight")
        K = self.truncation + ell + 1
        out = [Fraction(0)] * _tri_size(K)
        for i, j, c in self.terms():
            if var == 0:
                out[_tri_index(i + ell + 1, j)] = c / (i + ell + 1)
            else:
                out[_tri_index(i, j + ell + 1)] = c / (j + ell + 1)
        return Jet2(tuple(out), K)

    def divide(self, other: "Jet2"):
        """Exact quotient q with self = q * other, or None when inconsistent.

        Solved degree by degree: multiplication by the lowest-degree
        homogeneous part of the divisor is injective, so the quotient is
        unique whenever it exists.  The quotient carries truncation
        ``K - ord(other)``.
        """
        self._require_same(other)
        d = other.order()
        if d is ABOVE_TRUNCATION:
            raise ZeroDivisionError("divisor vanishes within its truncation")
        K = self.truncation
        nord = self.order()
        if isinstance(nord, int) and nord < d:
            return None
        if nord is ABOVE_TRUNCATION and d > 0:
            # numerator may still be divisible (it is zero as far as stored)
            pass
        Kq = K - d
        bterms = list(other.terms())
        q = [Fraction(0)] * _tri_size(Kq)
        qterms: list = []
        for m in range(0, Kq + 1):
            # unknowns: q_{(m-j, j)} for j = 0..m; equations: degree m+d of product
            nunk = m + 1
            neq = m + d + 1
            rows = [[Fraction(0)] * (nunk + 1) for _ in range(neq)]
            for eq_j in range(neq):
                alpha = (m + d - eq_j, eq_j)
                acc = self.coeffs[_tri_index(*alpha)]
                # known lower-degree q contributions
                for qi, qj, qc in qterms:
                    bi, bj = alpha[0] - qi, alpha[1] - qj
                    if bi >= 0 and bj >= 0 and bi + bj <= self.truncation:
                        bc = other.coeffs[_tri_index(bi, bj)]
                        if bc != 0:
                            acc -= qc * bc
                rows[eq_j][nunk] = acc
                for unk_j in range(nunk):
                    beta = (m - unk_j, unk_j)
                    bi, bj = alpha[0] - beta[0], alpha[1] - beta[1]
                    if bi >= 0 and bj >= 0:
                        rows[eq_j][unk_j] = other.coeffs[_tri_index(bi, bj)]
            sol = _solve_exact(rows, nunk)
            if sol is None:
                return None
            for unk_j, val in enumerate(sol):
                if val != 0:
                    q[_tri_index(m - unk_j, unk_j)] = val
                    qterms.append((m - unk_j, unk_j, val))
        return Jet2(tuple(q), Kq)

    def mul_monomial(self, i: int, j: int) -> "Jet2":
        """Exact product with x**i * y**j; the truncation rises by i + j."""
        if i < 0 or j < 0:
            raise ValueError("negative exponent")
        K = self.truncation + i + j
        out = [Fraction(0)] * _tri_size(K)
        for i0, j0, c in self.terms():
            out[_tri_index(i0 + i, j0 + j)] = c
        return Jet2(tuple(out), K)

    def substitute(self, phi0: "Jet2", phi1: "Jet2") -> "Jet2":
        """Substitute jets for the two variables; both must vanish at the origin."""
        phi0._require_same(phi1)
        if phi0.order() == 0 or phi1.order() == 0:
            raise JetDomainError("substituted jets must vanish at 0")
        K = phi0.truncation
        # powers of phi0 and phi1 up to what can matter
        result = Jet2.zero(K)
        pow0 = [Jet2.constant(1, K)]
        pow1 = [Jet2.constant(1, K)]
        for i, j, c in self.terms():
            if i + j > K:
                continue
            while len(pow0) <= i:
                pow0.append(pow0[-1] * phi0)
            while len(pow1) <= j:
                pow1.append(pow1[-1] * phi1)
            result = result + c * (pow0[i] * pow1[j])
        return result

    # -- misc -----------------------------------------------------------------------

    def truncate(self, new_truncation: int) -> "Jet2":
        if new_truncation > self.truncation:
            raise JetDomainError("cannot raise a truncation order")
        return Jet2(self.coeffs[: _tri_size(new_truncation)], new_truncation)

    def evaluate(self, x, y):
        acc = 0
        for i, j, c in self.terms():
            acc = acc + c * (x ** i) * (y ** j)
        return acc

    def render(self, vars: Tuple[str, str] = ("s", "t")) -> str:
        return _render_terms(
            (
                (c, ((vars[0], i), (vars[1], j)))
                for i, j, c in self.terms()
            )
        )

    def __str__(self):
        return self.render()


# --------------------------------------------------------------------------
# helpers
# --------------------------------------------------------------------------


def _solve_exact(rows, nunk):
    """Gaussian elimination over Q on an augmented matrix; None if inconsistent.

    Unique solutions are assumed by the callers that require them; free
    variables (if any) are set to zero.
    """
    m = len(rows)
    piv_rows = []
    r = 0
    for c in range(nunk):
        piv = None
        for rr in range(r, m):
            if rows[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for rr in range(m):
            if rr != r and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
        piv_rows.append((r, c))
        r += 1
    for rr in range(m):
        if all(rows[rr][c] == 0 for c in range(nunk)) and rows[rr][nunk] != 0:
            return None
    sol = [Fraction(0)] * nunk
    for r, c in piv_rows:
        sol[c] = rows[r][nunk]
    return sol


def _render_power(var: str, k: int) -> str:
    if k == 1:
        return var
    return f"{var}^{k}"


def _render_terms(terms) -> str:
    parts = []
    for coeff, powers in terms:
        mono = "*".join(_render_power(v, k) for v, k in powers if k > 0)
        c = coeff
        if mono:
            if c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
        else:
            body = str(c)
        parts.append(body)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def align1(*jets: Jet1) -> Tuple[Jet1, ...]:
    """Truncate one-variable jets to their common (minimal) truncation order."""
    K = min(j.truncation for j in jets)
    return tuple(j.truncate(K) for j in jets)


def align2(*jets: Jet2) -> Tuple[Jet2, ...]:
    """Truncate two-variable jets to their common (minimal) truncation order."""
    K = min(j.truncation for j in jets)
    return tuple(j.truncate(K) for j in jets)


def equal_as_polynomials(a, b) -> bool:
    """Compare two jets as exact polynomials.

    True when all shared coefficients agree and each jet is zero beyond the
    other's truncation (so both represent one polynomial of degree at most
    the smaller truncation).
    """
    if isinstance(a, Jet1) and isinstance(b, Jet1):
        K = min(a.truncation, b.truncation)
        if a.coeffs[: K + 1] != b.coeffs[: K + 1]:
            return False
        return all(c == 0 for c in a.coeffs[K + 1 :]) and all(
            c == 0 for c in b.coeffs[K + 1 :]
        )
    if isinstance(a, Jet2) and isinstance(b, Jet2):
        K = min(a.truncation, b.truncation)
        n = _tri_size(K)
        if a.coeffs[:n] != b.coeffs[:n]:
            return False
        return all(c == 0 for c in a.coeffs[n:]) and all(c == 0 for c in b.coeffs[n:])
    raise TypeError("mismatched jet kinds")
