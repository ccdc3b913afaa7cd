"""Truncated bivariate Taylor-series arithmetic.

A :class:`TaylorScalar` stores the coefficients of a polynomial in the local
offsets (du, dv) about a base point, truncated at a fixed total degree.  All
arithmetic propagates coefficients exactly (up to floating point), so the
degree-k coefficients of any computed quantity are its true partial
derivatives divided by factorials.  This is the numerical backbone of the
frame pipeline: every geometric object is computed as a jet, and derivatives
are read off instead of being approximated by finite differences.

Coefficients are kept in a dense float64 vector in graded-lexicographic
order: the term du^a dv^b lives at index (a+b)(a+b+1)/2 + b, so a jet of
degree d has (d+1)(d+2)/2 entries.

Binary operations on jets of different degrees truncate to the smaller
degree; this is deliberate, because each differentiation drops the degree by
one and downstream code freely mixes the results.
"""

import math
import numbers

import numpy as np

from .errors import DomainError, ZeroConstantTerm

__all__ = [
    "TaylorScalar",
    "coordinate_jets",
    "constant_jet",
    "sin",
    "cos",
    "sinh",
    "cosh",
    "exp",
    "sqrt",
    "rsqrt",
    "reciprocal",
    "ZERO_TOL",
]

# Constant terms smaller than this (in absolute value) are treated as zero
# when used as divisors or as sqrt arguments.
ZERO_TOL = 1e-12


def _tri(n):
    return n * (n + 1) // 2


def n_terms(degree):
    """Number of coefficients of a bivariate jet of total degree `degree`."""
    return (degree + 1) * (degree + 2) // 2


def index_of(a, b):
    """Flat index of the du^a dv^b coefficient in graded-lex order."""
    return _tri(a + b) + b


# Cached multiplication tables: degree -> (ia, ib, iout) index triples with
# which a truncated product is a gather-multiply-scatter (np.bincount).
_MUL_CACHE = {}


def _mul_table(degree):
    tab = _MUL_CACHE.get(degree)
    if tab is None:
        ia, ib, iout = [], [], []
        for s1 in range(degree + 1):
            for b1 in range(s1 + 1):
                a1 = s1 - b1
                for s2 in range(degree - s1 + 1):
                    for b2 in range(s2 + 1):
                        a2 = s2 - b2
                        ia.append(index_of(a1, b1))
                        ib.append(index_of(a2, b2))
                        iout.append(index_of(a1 + a2, b1 + b2))
        tab = (
            np.asarray(ia, dtype=np.intp),
            np.asarray(ib, dtype=np.intp),
            np.asarray(iout, dtype=np.intp),
        )
        _MUL_CACHE[degree] = tab
    return tab


class TaylorScalar:
    """A bivariate polynomial in (du, dv), truncated at a total degree.

    Parameters
    ----------
    coeffs : array_like
        Dense coefficient vector in graded-lex order; its length must equal
        (d+1)(d+2)/2 for some integer degree d >= 0.

    Notes
    -----
    Supports +, -, *, / and integer ** against other jets and plain numbers.
    Jets of unequal degree are truncated to the smaller degree first.
    """

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 1:
            raise ValueError("coefficient vector must be one-dimensional")
        # invert n = (d+1)(d+2)/2
        d = int(round((math.sqrt(8 * c.size + 1) - 3) / 2))
        if n_terms(d) != c.size:
            raise ValueError("coefficient vector length %d is not triangular" % c.size)
        self.coeffs = c
        self.degree = d

    # -- construction helpers ------------------------------------------------

    @classmethod
    def constant(cls, value, degree):
        c = np.zeros(n_terms(degree))
        c[0] = value
        return cls(c)

    @property
    def const(self):
        """Constant term (the value of the jet at the base point)."""
        return float(self.coeffs[0])

    def coefficient(self, a, b):
        """Coefficient of du^a dv^b (zero if a+b exceeds the degree)."""
        if a + b > self.degree:
            return 0.0
        return float(self.coeffs[index_of(a, b)])

    def truncate(self, degree):
        """Copy of this jet truncated to `degree` (a no-op if already lower)."""
        if degree >= self.degree:
            return self
        return TaylorScalar(self.coeffs[: n_terms(degree)].copy())

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other):
        """Return (a, b) coefficient arrays at a common degree, or None."""
        if isinstance(other, TaylorScalar):
            d = min(self.degree, other.degree)
            return self.truncate(d).coeffs, other.truncate(d).coeffs
        if isinstance(other, numbers.Real):
            c = np.zeros_like(self.coeffs)
            c[0] = float(other)
            return self.coeffs, c
        return None

    def __add__(self, other):
        ab = self._coerce(other)
        if ab is None:
            return NotImplemented
        return TaylorScalar(ab[0] + ab[1])

    __radd__ = __add__

    def __sub__(self, other):
        ab = self._coerce(other)
        if ab is None:
            return NotImplemented
        return TaylorScalar(ab[0] - ab[1])

    def __rsub__(self, other):
        ab = self._coerce(other)
        if ab is None:
            return NotImplemented
        return TaylorScalar(ab[1] - ab[0])

    def __neg__(self):
        return TaylorScalar(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return TaylorScalar(self.coeffs * float(other))
        if not isinstance(other, TaylorScalar):
            return NotImplemented
        d = min(self.degree, other.degree)
        a = self.truncate(d).coeffs
        b = other.truncate(d).coeffs
        ia, ib, iout = _mul_table(d)
        return TaylorScalar(np.bincount(iout, weights=a[ia] * b[ib], minlength=n_terms(d)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return TaylorScalar(self.coeffs / float(other))
        if not isinstance(other, TaylorScalar):
            return NotImplemented
        return self * reciprocal(other)

    def __rtruediv__(self, other):
        if isinstance(other, numbers.Real):
            return reciprocal(self) * float(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        n = int(n)
        if n < 0:
            return reciprocal(self ** (-n))
        out = TaylorScalar.constant(1.0, self.degree)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus ------------------------------------------------------------

    def deriv_u(self):
        """Partial derivative with respect to u; degree drops by one."""
        d = self.degree - 1
        if d < 0:
            return TaylorScalar.constant(0.0, 0)
        out = np.zeros(n_terms(d))
        for s in range(d + 1):
            for b in range(s + 1):
                a = s - b
                out[index_of(a, b)] = (a + 1) * self.coeffs[index_of(a + 1, b)]
        return TaylorScalar(out)

    def deriv_v(self):
        """Partial derivative with respect to v; degree drops by one."""
        d = self.degree - 1
        if d < 0:
            return TaylorScalar.constant(0.0, 0)
        out = np.zeros(n_terms(d))
        for s in range(d + 1):
            for b in range(s + 1):
                a = s - b
                out[index_of(a, b)] = (b + 1) * self.coeffs[index_of(a, b + 1)]
        return TaylorScalar(out)

    def evaluate(self, du, dv):
        """Evaluate the truncated polynomial at offsets (du, dv)."""
        total = 0.0
        for s in range(self.degree + 1):
            for b in range(s + 1):
                a = s - b
                total += self.coeffs[index_of(a, b)] * du**a * dv**b
        return total

    def __repr__(self):
        return "TaylorScalar(degree=%d, const=%.6g)" % (self.degree, self.const)


def constant_jet(value, degree):
    """Jet of the constant function `value` at the given degree."""
    return TaylorScalar.constant(value, degree)


def coordinate_jets(u0, v0, degree):
    """Jets of the coordinate functions u and v about (u0, v0).

    Parameters
    ----------
    u0, v0 : float
        Base point.
    degree : int
        Truncation degree (>= 1 so the linear terms exist).

    Returns
    -------
    (TaylorScalar, TaylorScalar)
        Jets with constant terms u0, v0 and unit linear coefficients on du
        and dv respectively.
    """
    if degree < 1:
        raise ValueError("coordinate jets need degree >= 1")
    cu = np.zeros(n_terms(degree))
    cv = np.zeros(n_terms(degree))
    cu[0], cv[0] = u0, v0
    cu[index_of(1, 0)] = 1.0
    cv[index_of(0, 1)] = 1.0
    return TaylorScalar(cu), TaylorScalar(cv)


# ---------------------------------------------------------------------------
# Elementary functions via Taylor recentering + Horner composition
# ---------------------------------------------------------------------------


def _compose(series, x):
    """Evaluate sum_k series[k] * (x - x.const)^k by Horner's rule."""
    p = TaylorScalar(x.coeffs.copy())
    p.coeffs[0] = 0.0
    out = TaylorScalar.constant(series[-1], x.degree)
    for c in reversed(series[:-1]):
        out = out * p + c
    return out


def _cyclic_series(x, f0, f1, signs):
    """Series for functions whose derivative cycle is (f0, f1, s0*f0, s1*f1)."""
    a0 = x.const
    vals = [f0(a0), f1(a0), signs[0] * f0(a0), signs[1] * f1(a0)]
    return [vals[k % 4] / math.factorial(k) for k in range(x.degree + 1)]


def sin(x):
    """Sine of a jet."""
    return _compose(_cyclic_series(x, math.sin, math.cos, (-1.0, -1.0)), x)


def cos(x):
    """Cosine of a jet."""
    return _compose(_cyclic_series(x, math.cos, lambda t: -math.sin(t), (-1.0, -1.0)), x)


def sinh(x):
    """Hyperbolic sine of a jet."""
    return _compose(_cyclic_series(x, math.sinh, math.cosh, (1.0, 1.0)), x)


def cosh(x):
    """Hyperbolic cosine of a jet."""
    return _compose(_cyclic_series(x, math.cosh, math.sinh, (1.0, 1.0)), x)


def exp(x):
    """Exponential of a jet."""
    e = math.exp(x.const)
    series = [e / math.factorial(k) for k in range(x.degree + 1)]
    return _compose(series, x)


def _power_series(a0, alpha, degree):
    """Taylor coefficients of t -> (a0 + t)^alpha about t = 0."""
    series = [a0**alpha]
    for k in range(1, degree + 1):
        series.append(series[-1] * (alpha - (k - 1)) / (k * a0))
    return series


def sqrt(x):
    """Square root of a jet; the constant term must be strictly positive."""
    if x.const <= ZERO_TOL:
        raise DomainError("sqrt of a jet with non-positive constant term %g" % x.const)
    return _compose(_power_series(x.const, 0.5, x.degree), x)


def rsqrt(x):
    """Reciprocal square root of a jet (constant term must be positive)."""
    if x.const <= ZERO_TOL:
        raise DomainError("rsqrt of a jet with non-positive constant term %g" % x.const)
    return _compose(_power_series(x.const, -0.5, x.degree), x)


def reciprocal(x):
    """Multiplicative inverse of a jet.

    Raises
    ------
    ZeroConstantTerm
        If the constant term is smaller than ZERO_TOL in absolute value.
    """
    if abs(x.const) <= ZERO_TOL:
        raise ZeroConstantTerm("division by a jet with constant term %g" % x.const)
    return _compose(_power_series(x.const, -1.0, x.degree), x)
