"""Sections of TM+T*M and of TM+R+R+T*M, twists, and seeded random sampling."""

from dataclasses import dataclass

from .forms import DimensionError, Polyform, Vector
from .poly import Poly
from .scalar import as_scalar

__all__ = [
    "ContactSection", "GenSection", "SplitMix64", "Twists",
    "random_contact_section", "random_form", "random_gen_section", "random_poly",
]


def _deg1(xi, what):
    if not xi.is_homogeneous(1):
        raise ValueError(f"{what} must be a 1-form")


@dataclass(frozen=True)
class GenSection:
    """``(X, xi)`` in TM + T*M."""

    X: Vector
    xi: Polyform

    def __post_init__(self):
        if self.X.n != self.xi.n:
            raise DimensionError("X and xi live on different frames")
        _deg1(self.xi, "xi")

    @property
    def n(self):
        return self.X.n

    @classmethod
    def zero(cls, n):
        return cls(Vector.zero(n), Polyform.zero(n))

    @classmethod
    def vector(cls, X):
        return cls(X, Polyform.zero(X.n))

    @classmethod
    def form(cls, xi):
        return cls(Vector.zero(xi.n), xi)

    def __add__(self, o):
        return GenSection(self.X + o.X, self.xi + o.xi)

    def __sub__(self, o):
        return GenSection(self.X - o.X, self.xi - o.xi)

    def __neg__(self):
        return GenSection(-self.X, -self.xi)

    def scale(self, c):
        return GenSection(self.X.scale(c), self.xi.scale(c))

    def conjugate(self):
        return GenSection(self.X.conjugate(), self.xi.conjugate())

    def evaluate(self, point):
        return GenSection(self.X.evaluate(point), self.xi.evaluate(point))

    def as_contact(self):
        n = self.n
        return ContactSection(self.X, Poly.zero(n), Poly.zero(n), self.xi)

    def __bool__(self):
        return bool(self.X) or bool(self.xi)

    def encode(self):
        return {"X": self.X.encode(), "xi": self.xi.encode()}

    @classmethod
    def decode(cls, n, data):
        return cls(Vector.decode(n, data["X"]), Polyform.decode(n, data.get("xi", [])))


@dataclass(frozen=True)
class ContactSection:
    """``(X, f, g, xi)`` in TM + R + R + T*M."""

    X: Vector
    f: Poly
    g: Poly
    xi: Polyform

    def __post_init__(self):
        n = self.X.n
        if not (self.f.n == self.g.n == self.xi.n == n):
            raise DimensionError("section components live on different frames")
        _deg1(self.xi, "xi")

    @property
    def n(self):
        return self.X.n

    @classmethod
    def zero(cls, n):
        return cls(Vector.zero(n), Poly.zero(n), Poly.zero(n), Polyform.zero(n))

    @classmethod
    def make(cls, n, X=None, f=0, g=0, xi=None):
        return cls(
            X if X is not None else Vector.zero(n),
            f if isinstance(f, Poly) else Poly.const(n, f),
            g if isinstance(g, Poly) else Poly.const(n, g),
            xi if xi is not None else Polyform.zero(n),
        )

    def __add__(self, o):
        return ContactSection(self.X + o.X, self.f + o.f, self.g + o.g, self.xi + o.xi)

    def __sub__(self, o):
        return ContactSection(self.X - o.X, self.f - o.f, self.g - o.g, self.xi - o.xi)

    def __neg__(self):
        return ContactSection(-self.X, -self.f, -self.g, -self.xi)

    def scale(self, c):
        if not isinstance(c, Poly):
            c = Poly.const(self.n, as_scalar(c))
        return ContactSection(self.X.scale(c), self.f * c, self.g * c, self.xi.scale(c))

    def conjugate(self):
        return ContactSection(
            self.X.conjugate(), self.f.conjugate(), self.g.conjugate(), self.xi.conjugate()
        )

    def evaluate(self, point):
        return ContactSection(
            self.X.evaluate(point), self.f.substitute_const(point),
            self.g.substitute_const(point), self.xi.evaluate(point),
        )

    def tm_part(self):
        return GenSection(self.X, self.xi)

    def __bool__(self):
        return bool(self.X) or bool(self.f) or bool(self.g) or bool(self.xi)

    def to_coords(self):
        """Coordinates in the ordered frame ``(e_1..e_n, eps_1..eps_n, f, g)``."""
        n = self.n
        xi = [self.xi.terms.get(1 << i, Poly.zero(n)) for i in range(n)]
        return list(self.X.comps) + xi + [self.f, self.g]

    @classmethod
    def from_coords(cls, n, coords):
        coords = [c if isinstance(c, Poly) else Poly.const(n, c) for c in coords]
        X = Vector(n, coords[:n])
        xi = Polyform(n, {1 << i: coords[n + i] for i in range(n)})
        return cls(X, coords[2 * n], coords[2 * n + 1], xi)

    def encode(self):
        return {
            "X": self.X.encode(), "f": self.f.encode(), "g": self.g.encode(),
            "xi": self.xi.encode(),
        }

    @classmethod
    def decode(cls, n, data):
        return cls(
            Vector.decode(n, data["X"]),
            Poly.decode(n, data.get("f", [])),
            Poly.decode(n, data.get("g", [])),
            Polyform.decode(n, data.get("xi", [])),
        )


@dataclass(frozen=True)
class Twists:
    """Twist forms ``(H3, H2, F)`` of degrees 3, 2, 2."""

    H3: Polyform
    H2: Polyform
    F: Polyform

    def __post_init__(self):
        for form, k, name in ((self.H3, 3, "H3"), (self.H2, 2, "H2"), (self.F, 2, "F")):
            if not form.is_homogeneous(k):
                raise ValueError(f"{name} must be homogeneous of degree {k}")
        if not self.H3.n == self.H2.n == self.F.n:
            raise DimensionError("twists live on different frames")

    @property
    def n(self):
        return self.H3.n

    @classmethod
    def zero(cls, n):
        z = Polyform.zero(n)
        return cls(z, z, z)

    def swapped(self):
        """``(H3, F, H2)``."""
        return Twists(self.H3, self.F, self.H2)

    def encode(self):
        return {"H3": self.H3.encode(), "H2": self.H2.encode(), "F": self.F.encode()}

    @classmethod
    def decode(cls, n, data):
        return cls(*(Polyform.decode(n, data.get(k, [])) for k in ("H3", "H2", "F")))


# -- seeded sampling ---------------------------------------------------------

class SplitMix64:
    """SplitMix64 generator: identical streams on every platform for a given seed."""

    MASK = (1 << 64) - 1

    def __init__(self, seed):
        self.state = seed & self.MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform integer in ``[lo, hi]`` (modulo bias is irrelevant here)."""
        return lo + self.next_u64() % (hi - lo + 1)

    def fork(self):
        return SplitMix64(self.next_u64())


def random_poly(rng, frame, lo=-3, hi=3):
    """Constant plus (coordinate frames only) linear terms in the coordinates."""
    n = frame.dim
    p = Poly.const(n, rng.randint(lo, hi))
    for i in sorted(frame.coords):
        c = rng.randint(lo, hi)
        if c:
            p = p + Poly.var(n, i).scale(c)
    return p


def random_form(rng, frame, degree, lo=-3, hi=3, density=2):
    """Random homogeneous form; each blade is kept with probability ``density/3``."""
    from itertools import combinations

    n = frame.dim
    terms = {}
    for combo in combinations(range(1, n + 1), degree):
        if rng.randint(1, 3) <= density:
            p = random_poly(rng, frame, lo, hi)
            if p:
                terms[combo] = p
    return Polyform(n, terms)


def random_vector(rng, frame):
    return Vector(frame.dim, [random_poly(rng, frame) for _ in range(frame.dim)])


def random_gen_section(rng, frame):
    return GenSection(random_vector(rng, frame), random_form(rng, frame, 1, density=3))


def random_contact_section(rng, frame):
    return ContactSection(
        random_vector(rng, frame), random_poly(rng, frame), random_poly(rng, frame),
        random_form(rng, frame, 1, density=3),
    )
