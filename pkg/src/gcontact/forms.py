"""Graded exterior algebra over ``n`` frame generators with polynomial coefficients."""

from .blades import contract_sign, indices_of, mask_of, popcount, reversal_sign, wedge_terms
from .poly import Poly
from .scalar import ONE, Scalar, as_scalar

__all__ = ["DimensionError", "Polyform", "Vector", "blade", "eps"]


class DimensionError(ValueError):
    """Operands live over frames of different dimension."""


def _check(a, b):
    if a.n != b.n:
        raise DimensionError(f"frame dimension mismatch: {a.n} vs {b.n}")


class Polyform:
    """Inhomogeneous form: sparse map from blade bitmask to nonzero ``Poly``."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for m, p in terms.items():
                if isinstance(m, (tuple, list)):
                    m = mask_of(m)
                if m >> n:
                    raise DimensionError(f"blade {indices_of(m)} exceeds frame dimension {n}")
                if not isinstance(p, Poly):
                    p = Poly.const(n, p)
                if p:
                    self.terms[m] = p

    @classmethod
    def _raw(cls, n, terms):
        f = object.__new__(cls)
        f.n = n
        f.terms = terms
        return f

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def scalar(cls, n, c):
        p = c if isinstance(c, Poly) else Poly.const(n, c)
        return cls._raw(n, {0: p} if p else {})

    def __bool__(self):
        return bool(self.terms)

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polyform):
            if other == 0:
                return self
            return NotImplemented
        _check(self, other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, p in other.terms.items():
            q = out.get(m)
            if q is None:
                out[m] = p
            else:
                q = q + p
                if q:
                    out[m] = q
                else:
                    del out[m]
        return Polyform._raw(self.n, out)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return Polyform._raw(self.n, {m: -p for m, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply by a ``Poly`` or scalar coefficient."""
        if isinstance(c, Poly):
            if c.is_const():
                return self.scale(c.const_value())
            out = {}
            for m, p in self.terms.items():
                q = p * c
                if q:
                    out[m] = q
            return Polyform._raw(self.n, out)
        c = as_scalar(c)
        if not c:
            return Polyform._raw(self.n, {})
        if c == ONE:
            return self
        return Polyform._raw(self.n, {m: p.scale(c) for m, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polyform):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __xor__(self, other):
        return self.wedge(other)

    # -- products ----------------------------------------------------------
    def wedge(self, other):
        _check(self, other)
        if not self.terms or not other.terms:
            return Polyform._raw(self.n, {})
        am = list(self.terms)
        bm = list(other.terms)
        out = {}
        for i, j, m, s in wedge_terms(am, bm):
            p = self.terms[am[i]] * other.terms[bm[j]]
            if s < 0:
                p = -p
            q = out.get(m)
            if q is not None:
                p = q + p
            if p:
                out[m] = p
            else:
                out.pop(m, None)
        return Polyform._raw(self.n, out)

    def contract_generator(self, i):
        """Interior product with the frame vector ``e_i`` (1-based)."""
        bit = i - 1
        out = {}
        for m, p in self.terms.items():
            s = contract_sign(bit, m)
            if s:
                out[m ^ (1 << bit)] = p if s > 0 else -p
        return Polyform._raw(self.n, out)

    def contract(self, v):
        """Interior product ``iota_v``."""
        _check(self, v)
        comps = [(i, c) for i, c in enumerate(v.comps) if c]
        out = {}
        for m, p in self.terms.items():
            for i, c in comps:
                s = contract_sign(i, m)
                if not s:
                    continue
                q = p * c
                if s < 0:
                    q = -q
                k = m ^ (1 << i)
                r = out.get(k)
                if r is not None:
                    q = r + q
                if q:
                    out[k] = q
                else:
                    out.pop(k, None)
        return Polyform._raw(self.n, out)

    def reversal(self):
        """Clifford anti-automorphism: degree-k part times ``(-1)^(k(k-1)/2)``."""
        return Polyform._raw(
            self.n,
            {m: (p if reversal_sign(popcount(m)) > 0 else -p) for m, p in self.terms.items()},
        )

    def grade_involution(self):
        """Degree-k part times ``(-1)^k``."""
        return Polyform._raw(
            self.n, {m: (-p if popcount(m) & 1 else p) for m, p in self.terms.items()}
        )

    def conjugate(self):
        return Polyform._raw(self.n, {m: p.conjugate() for m, p in self.terms.items()})

    # -- grading -------------------------------------------------------------
    def project_degree(self, k):
        return Polyform._raw(self.n, {m: p for m, p in self.terms.items() if popcount(m) == k})

    def degrees(self):
        return sorted({popcount(m) for m in self.terms})

    def homogeneous_parts(self):
        return [(k, self.project_degree(k)) for k in self.degrees()]

    def is_homogeneous(self, k=None):
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (k is None or ds[0] == k)

    def parity(self):
        """``"even"``, ``"odd"`` or ``"mixed"``; the zero form counts as even."""
        ps = {d & 1 for d in self.degrees()}
        if len(ps) > 1:
            return "mixed"
        return "odd" if ps == {1} else "even"

    def top_coefficient(self):
        """Coefficient of ``e_1...e_n``."""
        return self.terms.get((1 << self.n) - 1, Poly.zero(self.n))

    def coefficient(self, indices):
        return self.terms.get(mask_of(indices), Poly.zero(self.n))

    def exp(self):
        """``e^a`` for ``a`` without scalar part, expanded until nilpotency."""
        if 0 in self.terms:
            raise ValueError("exp needs a form with no degree-0 component")
        if self.parity() != "even":
            raise ValueError("exp is only expanded for even forms")
        out = Polyform.scalar(self.n, 1)
        power = Polyform.scalar(self.n, 1)
        k = 0
        while True:
            k += 1
            power = power.wedge(self).scale(Scalar(1) / k)
            if not power:
                return out
            out = out + power

    def is_constant(self):
        return all(p.is_const() for p in self.terms.values())

    def evaluate(self, point):
        return Polyform._raw(
            self.n,
            {m: q for m, p in self.terms.items() if (q := p.substitute_const(point))},
        )

    def extend(self, n_new):
        return Polyform._raw(n_new, {m: p.extend(n_new) for m, p in self.terms.items()})

    def embed(self, n_new, offset):
        """Relabel generator ``i`` as ``i + offset`` inside an ``n_new`` frame."""
        return Polyform._raw(
            n_new, {m << offset: p.embed(n_new, offset) for m, p in self.terms.items()}
        )

    def restrict(self, n_new):
        out = {}
        for m, p in self.terms.items():
            if m >> n_new:
                raise ValueError("form involves generators beyond the restricted frame")
            out[m] = p.restrict(n_new)
        return Polyform._raw(n_new, out)

    def __eq__(self, other):
        if isinstance(other, Polyform):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (popcount(kv[0]), indices_of(kv[0])))

    def encode(self):
        return [{"coeff": p.encode(), "blade": indices_of(m)} for m, p in self.sorted_items()]

    @classmethod
    def decode(cls, n, data):
        out = Polyform.zero(n)
        for item in data:
            out = out + Polyform(n, {tuple(item["blade"]): Poly.decode(n, item["coeff"])})
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, p in self.sorted_items():
            b = "e" + "".join(str(i) if i < 10 else f"[{i}]" for i in indices_of(m)) if m else "1"
            parts.append(f"({p!r})*{b}" if m else f"({p!r})")
        return " + ".join(parts)


def blade(n, indices, coeff=1):
    """``coeff * e_{i1} ^ ... ^ e_{ik}`` for indices in any order (sign tracked)."""
    out = Polyform.scalar(n, coeff)
    for i in indices:
        out = out.wedge(eps(n, i))
    return out


def eps(n, i):
    """Coframe generator ``e_i``."""
    if not 1 <= i <= n:
        raise DimensionError(f"generator {i} out of range 1..{n}")
    return Polyform._raw(n, {1 << (i - 1): Poly.const(n, 1)})


class Vector:
    """Vector field ``sum_i comps[i] * e_i`` in the frame dual to the coframe."""

    __slots__ = ("n", "comps")

    def __init__(self, n, comps=None):
        self.n = n
        if comps is None:
            comps = [Poly.zero(n)] * n
        comps = [c if isinstance(c, Poly) else Poly.const(n, c) for c in comps]
        if len(comps) != n:
            raise DimensionError(f"vector has {len(comps)} components, frame dimension is {n}")
        self.comps = tuple(comps)

    @classmethod
    def basis(cls, n, i, coeff=1):
        comps = [Poly.zero(n)] * n
        comps[i - 1] = coeff if isinstance(coeff, Poly) else Poly.const(n, coeff)
        return cls(n, comps)

    @classmethod
    def zero(cls, n):
        return cls(n)

    def __bool__(self):
        return any(self.comps)

    def __add__(self, other):
        _check(self, other)
        return Vector(self.n, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        _check(self, other)
        return Vector(self.n, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return Vector(self.n, [-a for a in self.comps])

    def scale(self, c):
        return Vector(self.n, [a * c for a in self.comps])

    def pair(self, form):
        """``iota_v form`` for a 1-form, returned as a Poly."""
        return form.project_degree(1).contract(self).terms.get(0, Poly.zero(self.n))

    def conjugate(self):
        return Vector(self.n, [a.conjugate() for a in self.comps])

    def evaluate(self, point):
        return Vector(self.n, [a.substitute_const(point) for a in self.comps])

    def is_constant(self):
        return all(c.is_const() for c in self.comps)

    def extend(self, n_new):
        return Vector(n_new, [c.extend(n_new) for c in self.comps] + [Poly.zero(n_new)] * (n_new - self.n))

    def embed(self, n_new, offset):
        comps = [Poly.zero(n_new)] * n_new
        for i, c in enumerate(self.comps):
            comps[i + offset] = c.embed(n_new, offset)
        return Vector(n_new, comps)

    def restrict(self, n_new):
        if any(self.comps[n_new:]):
            raise ValueError("vector has components beyond the restricted frame")
        return Vector(n_new, [c.restrict(n_new) for c in self.comps[:n_new]])

    def __eq__(self, other):
        return isinstance(other, Vector) and self.n == other.n and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def encode(self):
        return [c.encode() for c in self.comps]

    @classmethod
    def decode(cls, n, data):
        return cls(n, [Poly.decode(n, c) for c in data])

    def __repr__(self):
        parts = [f"({c!r})*d{i}" for i, c in enumerate(self.comps, start=1) if c]
        return " + ".join(parts) if parts else "0"
