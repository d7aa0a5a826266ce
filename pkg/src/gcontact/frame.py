"""Exterior derivative, Lie brackets and nilmanifold structure equations on a frame."""

from functools import lru_cache
import re

from .blades import indices_of
from .forms import DimensionError, Polyform, Vector, blade, eps
from .poly import Poly
from .report import Report

__all__ = [
    "FrameAlgebra", "ModeError", "NilParseError", "coordinate_frame",
    "extend_circle", "format_nil", "parse_nil", "validate_frame",
]


class ModeError(ValueError):
    """A coefficient is not legal for the frame's mode."""


class NilParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class FrameAlgebra:
    """Ambient frame of dimension ``dim``.

    ``mode`` is ``"coordinate"`` (coefficients are polynomials in ``x1..xn``,
    ``e_i = dx_i``) or ``"invariant"`` (constant coefficients, ``d`` given by
    ``d_gen``).  A coordinate frame may carry ``d_gen`` entries for generators
    that are not coordinate differentials; this is how circle extensions of
    coordinate frames are represented.
    """

    def __init__(self, dim, mode="coordinate", d_gen=None):
        if dim < 1:
            raise ValueError("frame dimension must be >= 1")
        if mode not in ("coordinate", "invariant"):
            raise ValueError(f"unknown frame mode {mode!r}")
        self.dim = dim
        self.mode = mode
        self.d_gen = {}
        for k, form in (d_gen or {}).items():
            k = int(k)
            if not 1 <= k <= dim:
                raise DimensionError(f"generator {k} out of range 1..{dim}")
            if form.n != dim:
                raise DimensionError(f"d(e_{k}) lives on a dimension {form.n} frame")
            if not form.is_homogeneous(2):
                raise ValueError(f"d(e_{k}) must be a 2-form")
            if mode == "invariant" and not form.is_constant():
                raise ModeError(f"d(e_{k}) has non-constant coefficients in invariant mode")
            if form:
                self.d_gen[k] = form
        if mode == "coordinate":
            self.coords = frozenset(i for i in range(1, dim + 1) if i not in self.d_gen)
        else:
            self.coords = frozenset()
        self._dblade = lru_cache(maxsize=None)(self._d_blade)

    def __repr__(self):
        return f"FrameAlgebra(dim={self.dim}, mode={self.mode!r}, d_gen={self.d_gen!r})"

    def __eq__(self, other):
        return (
            isinstance(other, FrameAlgebra)
            and (self.dim, self.mode, self.d_gen) == (other.dim, other.mode, other.d_gen)
        )

    def __hash__(self):
        return hash((self.dim, self.mode))

    # -- coefficient legality -------------------------------------------
    def check_poly(self, p):
        for e in p.terms:
            for i, k in enumerate(e, start=1):
                if k and i not in self.coords:
                    raise ModeError(
                        f"coefficient depends on x{i}, which is not a coordinate of this "
                        f"{self.mode} frame"
                    )

    def check_form(self, a):
        if a.n != self.dim:
            raise DimensionError(f"form dimension {a.n} does not match frame dimension {self.dim}")
        for p in a.terms.values():
            self.check_poly(p)

    def check_vector(self, v):
        if v.n != self.dim:
            raise DimensionError(f"vector dimension {v.n} does not match frame dimension {self.dim}")
        for p in v.comps:
            self.check_poly(p)

    # -- d -------------------------------------------------------------------
    def d_generator(self, k):
        return self.d_gen.get(k, Polyform.zero(self.dim))

    def _d_blade(self, m):
        if not m:
            return Polyform.zero(self.dim)
        low = m & -m
        i = low.bit_length()
        rest = Polyform._raw(self.dim, {m ^ low: Poly.const(self.dim, 1)})
        # d(e_i ^ rest) = d(e_i) ^ rest - e_i ^ d(rest)
        return self.d_generator(i).wedge(rest) - eps(self.dim, i).wedge(self._dblade(m ^ low))

    def d_poly(self, p):
        """``dp`` as a 1-form."""
        self.check_poly(p)
        out = {}
        for i in self.coords:
            q = p.diff(i)
            if q:
                out[1 << (i - 1)] = q
        return Polyform._raw(self.dim, out)

    def d(self, a):
        """Exterior derivative: graded derivation of degree +1."""
        self.check_form(a)
        out = Polyform.zero(self.dim)
        for m, p in a.terms.items():
            if not p.is_const():
                out = out + self.d_poly(p).wedge(Polyform._raw(self.dim, {m: Poly.const(self.dim, 1)}))
            db = self._dblade(m)
            if db:
                out = out + db.scale(p)
        return out

    # -- vector fields ---------------------------------------------------
    def apply(self, v, f):
        """Directional derivative ``v(f) = iota_v df`` of a Poly."""
        df = self.d_poly(f)
        return df.contract(v).terms.get(0, Poly.zero(self.dim))

    def lie_bracket(self, x, y):
        """``[x, y]`` from ``e^k([x,y]) = x(y^k) - y(x^k) - (d e^k)(x, y)``."""
        self.check_vector(x)
        self.check_vector(y)
        comps = []
        for k in range(1, self.dim + 1):
            c = self.apply(x, y.comps[k - 1]) - self.apply(y, x.comps[k - 1])
            dk = self.d_generator(k)
            if dk:
                c = c - dk.contract(x).contract(y).terms.get(0, Poly.zero(self.dim))
            comps.append(c)
        return Vector(self.dim, comps)

    def lie_derivative(self, x, a):
        """Cartan formula ``L_x = iota_x d + d iota_x``."""
        return self.d(a).contract(x) + self.d(a.contract(x))

    def extend(self):
        return extend_circle(self, Polyform.zero(self.dim))


def coordinate_frame(dim):
    return FrameAlgebra(dim, "coordinate")


def extend_circle(frame, curvature):
    """Frame of dimension ``n+1`` with new generator ``e_{n+1}``, ``d e_{n+1} = curvature``.

    ``curvature`` must be a closed 2-form on ``frame``.  The new generator plays
    the role of a connection 1-form on a circle bundle.
    """
    n = frame.dim
    if curvature.n != n:
        raise DimensionError("curvature lives on a different frame")
    if frame.d(curvature):
        raise ValueError("curvature of a circle extension must be closed")
    d_gen = {k: f.extend(n + 1) for k, f in frame.d_gen.items()}
    d_gen[n + 1] = curvature.extend(n + 1)
    ext = FrameAlgebra(n + 1, frame.mode, d_gen)
    if frame.mode == "coordinate":
        # the fibre coordinate never appears in invariant data
        ext.coords = frozenset(frame.coords)
    return ext


def validate_frame(frame):
    """``d(d e_k) == 0`` for every generator (and on coefficients, automatically)."""
    rep = Report()
    for k in range(1, frame.dim + 1):
        res = frame.d(frame.d_generator(k))
        rep.add(f"frame.d2[e{k}]", not res, res)
    return rep


# -- nilmanifold notation ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<dot>\d+\.\d+)|(?P<pair>\d\d)(?!\d)|(?P<zero>0)(?![\d.])|(?P<op>[+\-,()]))")


def _tokens(spec):
    pos = 0
    spec = spec.rstrip()
    while pos < len(spec):
        m = _TOKEN.match(spec, pos)
        if not m or m.end() == pos:
            raise NilParseError(f"unexpected character {spec[pos]!r}", pos)
        start = m.start(m.lastgroup)
        yield m.lastgroup, m.group(m.lastgroup), start
        pos = m.end()
    yield "end", "", len(spec)


def parse_nil(spec, frame_dim_hint=None):
    """Parse ``"(0,0,12,13,14+23,34+52)"``-style structure equations.

    Entry ``k`` lists ``d e_k``; token ``ij`` is ``e_i ^ e_j`` in the written
    order, ``i.j`` is the same for multi-digit indices.
    """
    toks = list(_tokens(spec))
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, value=None):
        nonlocal pos
        t = toks[pos]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value or kind
            raise NilParseError(f"expected {want!r}, found {t[1] or 'end of input'!r}", t[2])
        pos += 1
        return t

    take("op", "(")
    entries = []
    while True:
        entry = []
        kind, val, at = peek()
        if kind == "zero":
            take()
        else:
            sign = 1
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                take()
            entry.append((sign, _term(take_term(toks, pos), spec)))
            pos += 1
            while peek()[0] == "op" and peek()[1] in "+-":
                sign = -1 if take()[1] == "-" else 1
                entry.append((sign, _term(take_term(toks, pos), spec)))
                pos += 1
        entries.append(entry)
        if peek()[1] == ",":
            take()
            continue
        take("op", ")")
        take("end")
        break

    dim = len(entries)
    if frame_dim_hint is not None and frame_dim_hint != dim:
        raise NilParseError(f"{dim} entries for a frame of dimension {frame_dim_hint}", 0)
    d_gen = {}
    for k, entry in enumerate(entries, start=1):
        form = Polyform.zero(dim)
        for sign, (i, j, at) in entry:
            for idx in (i, j):
                if not 1 <= idx <= dim:
                    raise NilParseError(f"index {idx} out of range 1..{dim}", at)
            if i == j:
                raise NilParseError(f"duplicate index {i} in term", at)
            form = form + blade(dim, (i, j), sign)
        if form:
            d_gen[k] = form
    return FrameAlgebra(dim, "invariant", d_gen)


def take_term(toks, pos):
    t = toks[pos]
    if t[0] not in ("pair", "dot"):
        raise NilParseError(f"expected a two-index term, found {t[1] or 'end of input'!r}", t[2])
    return t


def _term(tok, spec):
    kind, val, at = tok
    if kind == "pair":
        return int(val[0]), int(val[1]), at
    i, j = val.split(".")
    return int(i), int(j), at


def format_nil(frame):
    """Canonical structure-equation string (ascending blades, dotted if dim > 9)."""
    if frame.mode != "invariant":
        raise ModeError("only invariant frames have a nilmanifold spec")
    entries = []
    for k in range(1, frame.dim + 1):
        form = frame.d_generator(k)
        if not form:
            entries.append("0")
            continue
        parts = []
        for m, p in form.sorted_items():
            c = p.const_value()
            if c.im or c.re.denominator != 1:
                raise ValueError(f"d(e_{k}) has a non-integer coefficient {c}")
            i, j = indices_of(m)
            tok = f"{i}{j}" if frame.dim <= 9 else f"{i}.{j}"
            sign = "-" if c.re < 0 else "+"
            parts.extend([sign + tok] * abs(int(c.re)))
        text = "".join(parts)
        entries.append(text[1:] if text.startswith("+") else text)
    return "(" + ",".join(entries) + ")"
