"""Sparse multivariate polynomials in formal coordinates ``x1..xn``."""

from operator import add as _add
from fractions import Fraction

from .scalar import ONE, Scalar, as_scalar

__all__ = ["Poly"]


class Poly:
    """Polynomial with Gaussian-rational coefficients.

    ``terms`` maps an exponent tuple of length ``n`` to a nonzero ``Scalar``.
    Instances are treated as immutable.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms=None):
        self.n = n
        self._hash = None
        if terms is None:
            self.terms = {}
            return
        clean = {}
        for exps, c in terms.items():
            c = as_scalar(c)
            if c:
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not have length {n}")
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n, terms):
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, n, c):
        c = as_scalar(c)
        if c is NotImplemented:
            raise TypeError("polynomial constants must be int, Fraction or Scalar")
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n, i):
        """The coordinate ``x_i`` (1-based)."""
        exps = [0] * n
        exps[i - 1] = 1
        return cls._raw(n, {tuple(exps): ONE})

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        t = self.terms
        return not t or (len(t) == 1 and not any(next(iter(t))))

    def const_value(self):
        """Value of a constant polynomial (raises if not constant)."""
        if not self.terms:
            return Scalar(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def depends_on(self, i):
        return any(e[i - 1] for e in self.terms)

    def __neg__(self):
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = as_scalar(other)
            if other is NotImplemented:
                return other
            other = Poly.const(self.n, other)
        if other.n != self.n:
            raise ValueError(f"polynomial arity mismatch: {self.n} vs {other.n}")
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = as_scalar(other)
            if other is NotImplemented:
                return other
            other = Poly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return Poly._raw(self.n, {})
        if c == ONE:
            return self
        return Poly._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = as_scalar(other)
            if other is NotImplemented:
                return other
            return self.scale(other)
        if other.n != self.n:
            raise ValueError(f"polynomial arity mismatch: {self.n} vs {other.n}")
        if not self.terms or not other.terms:
            return Poly._raw(self.n, {})
        if other.is_const():
            return self.scale(next(iter(other.terms.values())))
        if self.is_const():
            return other.scale(next(iter(self.terms.values())))
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(_add, e1, e2))
                v = out.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i):
        """Formal partial derivative in ``x_i`` (1-based)."""
        k = i - 1
        out = {}
        for e, c in self.terms.items():
            p = e[k]
            if p:
                e2 = e[:k] + (p - 1,) + e[k + 1:]
                out[e2] = c * p
        return Poly._raw(self.n, out)

    def conjugate(self):
        return Poly._raw(self.n, {e: c.conjugate() for e, c in self.terms.items()})

    def evaluate(self, point):
        """Value at a rational point (sequence of length ``n``)."""
        total = Scalar(0)
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v = v * as_scalar(x) ** p
            total = total + v
        return total

    def substitute_const(self, point):
        return Poly.const(self.n, self.evaluate(point))

    def extend(self, n_new):
        """Same polynomial viewed in ``n_new >= n`` variables."""
        pad = (0,) * (n_new - self.n)
        return Poly._raw(n_new, {e + pad: c for e, c in self.terms.items()})

    def embed(self, n_new, offset):
        """View in ``n_new`` variables with ``x_i`` renamed ``x_{i+offset}``."""
        pre = (0,) * offset
        post = (0,) * (n_new - offset - self.n)
        return Poly._raw(n_new, {pre + e + post: c for e, c in self.terms.items()})

    def restrict(self, n_new):
        """Drop trailing variables, which must not occur."""
        if any(any(e[n_new:]) for e in self.terms):
            raise ValueError("polynomial depends on dropped variables")
        return Poly._raw(n_new, {e[:n_new]: c for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        other = as_scalar(other)
        if other is NotImplemented:
            return False
        return self == Poly.const(self.n, other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def encode(self):
        return [{"c": c.encode(), "exp": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def decode(cls, n, data):
        if isinstance(data, (int, str, Fraction)):
            return cls.const(n, Scalar.decode(data))
        terms = {}
        for item in data:
            e = tuple(int(x) for x in item["exp"])
            if len(e) != n:
                raise ValueError(f"exponent vector {list(e)} does not have length {n}")
            c = Scalar.decode(item["c"])
            terms[e] = terms.get(e, Scalar(0)) + c
        return cls(n, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p
            )
            coeff = c.encode()
            if c.im:
                coeff = f"({coeff})"
            parts.append(coeff if not mono else (mono if c == ONE else f"{coeff}*{mono}"))
        return " + ".join(parts)
