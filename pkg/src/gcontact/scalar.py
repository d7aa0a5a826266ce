"""Exact Gaussian rationals ``re + im*i``.

Parts are stored as ``int`` whenever they are integral and as ``Fraction``
otherwise; integer arithmetic is an order of magnitude faster and covers the
bulk of the work.
"""

from fractions import Fraction
import re as _re

__all__ = ["Scalar", "I", "ONE", "ZERO", "as_scalar"]


def _q(x):
    """Normalise a rational part: ``int`` if integral, else ``Fraction``."""
    if type(x) is int:
        return x
    if type(x) is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re, im):
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def conjugate(self):
        return Scalar._raw(self.re, -self.im)

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(_q(self.re + other.re), _q(self.im + other.im))

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(_q(self.re - other.re), _q(self.im - other.im))

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._raw(_q(a * c), 0)
        return Scalar._raw(_q(a * c - b * d), _q(a * d + b * c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return other
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar._raw(_q(Fraction(self.re) / c), _q(Fraction(self.im) / c))
        den = Fraction(c * c + d * d)
        a, b = self.re, self.im
        return Scalar._raw(_q((a * c + b * d) / den), _q((b * c - a * d) / den))

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / self ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def norm2(self):
        """``|z|^2`` as a rational."""
        return self.re * self.re + self.im * self.im

    def encode(self):
        """Canonical text form ``"p/q"`` or ``"p/q+r/s*i"``."""
        re_txt = _frac_txt(self.re)
        if not self.im:
            return re_txt
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{re_txt}{sign}{_frac_txt(abs(im))}*i"

    @classmethod
    def decode(cls, text):
        if isinstance(text, (int, Fraction)):
            return cls(text)
        t = str(text).replace(" ", "")
        m = _SCALAR_RE.fullmatch(t)
        if not m:
            raise ValueError(f"malformed scalar {text!r}")
        re_part, im_part = m.group("re"), m.group("im")
        return cls(Fraction(re_part) if re_part else 0, Fraction(im_part) if im_part else 0)

    def __repr__(self):
        return f"Scalar({self.encode()!r})"

    __str__ = encode


def _frac_txt(q):
    return f"{q.numerator}/{q.denominator}"


_SCALAR_RE = _re.compile(
    r"(?P<re>[+-]?\d+(?:/\d+)?)?(?:(?P<im>[+-]?\d+(?:/\d+)?)\*i)?"
)


def as_scalar(x):
    if type(x) is Scalar:
        return x
    if type(x) is int:
        return Scalar._raw(x, 0)
    if isinstance(x, (int, Fraction)):
        return Scalar._raw(_q(x), 0)
    if isinstance(x, complex):
        return Scalar(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
