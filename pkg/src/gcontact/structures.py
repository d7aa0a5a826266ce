"""Sekiya quadruples, (B,b,a)-transforms, generalised contact metrics,
coKahler checks, Cech data, products and circle T-duality."""

from dataclasses import dataclass, field

from .courant import HALF, TwistError, pairing_tm, validate_maurer_cartan
from .forms import DimensionError, Polyform, Vector
from .linalg import inverse, solve, span_equal
from .poly import Poly
from .report import Report
from .scalar import ONE, ZERO, Scalar, as_scalar
from .sections import ContactSection, GenSection, Twists
from .spinor import (
    MixedPair, ParityError, mukai, pure_spinor_pairing, pythagorean_mu, validate_mixed_pair,
)

__all__ = [
    "BbaTransform", "CechDatum", "DualityError", "FrameEndo", "GenContactMetric",
    "MetricError", "SekiyaQuadruple", "StructureError", "UnrepresentableDeformation",
    "assemble_jinv", "check_admissible", "check_cokahler", "check_einstein_pairing",
    "complex_quadruple", "compose_transforms", "cosymplectic_quadruple", "curvature_of",
    "jinv_report", "lift_product", "metric_endomorphism", "metric_subspaces",
    "t_dualize_circle", "t_dualize_metric", "t_dualize_quadruple", "transform_mixed_pair",
    "transform_sekiya", "transform_sekiya_closed_form", "transform_section", "transform_twists",
    "validate_cech", "validate_metric", "validate_sekiya",
]


class StructureError(ValueError):
    """Input that does not define the requested structure."""


class UnrepresentableDeformation(StructureError):
    """A deformed ``lambda`` whose ``mu = sqrt(1 + lambda^2)`` is irrational."""


class MetricError(ValueError):
    pass


class DualityError(ValueError):
    pass


# -- endomorphisms on explicit frames ------------------------------------------

def _tm_coords(s):
    n = s.n
    return list(s.X.comps) + [s.xi.terms.get(1 << i, Poly.zero(n)) for i in range(n)]


def _tm_from(n, coords):
    coords = [c if isinstance(c, Poly) else Poly.const(n, c) for c in coords]
    return GenSection(Vector(n, coords[:n]), Polyform(n, {1 << i: coords[n + i] for i in range(n)}))


class FrameEndo:
    """Square ``Poly`` matrix on the ordered frame of TM+T*M (``kind="TM"``) or
    of E = TM+R+R+T*M (``kind="E"``, order ``X, xi, f, g``)."""

    __slots__ = ("n", "kind", "rows")

    def __init__(self, n, kind, rows):
        size = 2 * n + (2 if kind == "E" else 0)
        if kind not in ("TM", "E"):
            raise ValueError(f"unknown bundle kind {kind!r}")
        rows = [[c if isinstance(c, Poly) else Poly.const(n, c) for c in r] for r in rows]
        if len(rows) != size or any(len(r) != size for r in rows):
            raise DimensionError(f"{kind} endomorphism on a dim-{n} frame must be {size}x{size}")
        self.n, self.kind, self.rows = n, kind, rows

    @property
    def size(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n, kind="E"):
        size = 2 * n + (2 if kind == "E" else 0)
        return cls(n, kind, [[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def from_map(cls, n, kind, fn):
        """Matrix of a function-linear map given on sections."""
        size = 2 * n + (2 if kind == "E" else 0)
        cols = []
        for k in range(size):
            unit = [ONE if i == k else ZERO for i in range(size)]
            if kind == "E":
                cols.append(fn(ContactSection.from_coords(n, unit)).to_coords())
            else:
                cols.append(_tm_coords(fn(_tm_from(n, unit))))
        return cls(n, kind, [[cols[j][i] for j in range(size)] for i in range(size)])

    def apply(self, s):
        v = s.to_coords() if self.kind == "E" else _tm_coords(s)
        out = [sum((a * b for a, b in zip(r, v)), Poly.zero(self.n)) for r in self.rows]
        return ContactSection.from_coords(self.n, out) if self.kind == "E" else _tm_from(self.n, out)

    def _same(self, o):
        if self.n != o.n or self.kind != o.kind:
            raise DimensionError("endomorphisms act on different bundles")

    def __matmul__(self, o):
        self._same(o)
        cols = list(zip(*o.rows))
        z = Poly.zero(self.n)
        return FrameEndo(
            self.n, self.kind,
            [[sum((a * b for a, b in zip(r, c) if a and b), z) for c in cols] for r in self.rows],
        )

    def __add__(self, o):
        self._same(o)
        return FrameEndo(self.n, self.kind, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        self._same(o)
        return FrameEndo(self.n, self.kind, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __neg__(self):
        return FrameEndo(self.n, self.kind, [[-a for a in r] for r in self.rows])

    def __eq__(self, o):
        return isinstance(o, FrameEndo) and (self.n, self.kind, self.rows) == (o.n, o.kind, o.rows)

    def __hash__(self):
        return hash((self.n, self.kind))

    def __bool__(self):
        return any(any(r) for r in self.rows)

    def transpose(self):
        return FrameEndo(self.n, self.kind, [list(c) for c in zip(*self.rows)])

    def gram(self):
        """Matrix of the pairing in this frame (times 2, to stay integral)."""
        n = self.n
        size = self.size
        g = [[0] * size for _ in range(size)]
        for i in range(n):
            g[i][n + i] = g[n + i][i] = 1
        if self.kind == "E":
            g[2 * n][2 * n + 1] = g[2 * n + 1][2 * n] = 1
        return FrameEndo(n, self.kind, g)

    def adjoint(self):
        """Adjoint w.r.t. the pairing; the Gram matrix is its own inverse."""
        g = self.gram()
        return g @ self.transpose() @ g

    def evaluate(self, point):
        return FrameEndo(self.n, self.kind, [[c.substitute_const(point) for c in r] for r in self.rows])

    def is_constant(self):
        return all(c.is_const() for r in self.rows for c in r)

    def const_rows(self):
        return [[c.const_value() for c in r] for r in self.rows]

    def nonzero_entries(self):
        return [
            {"row": i, "col": j, "value": c}
            for i, r in enumerate(self.rows) for j, c in enumerate(r) if c
        ]

    def encode(self):
        return [[c.encode() for c in r] for r in self.rows]

    @classmethod
    def decode(cls, n, kind, data):
        return cls(n, kind, [[Poly.decode(n, c) for c in r] for r in data])

    def __repr__(self):
        return f"FrameEndo({self.kind}, n={self.n}, {len(self.nonzero_entries())} nonzero)"


# -- Sekiya quadruples -----------------------------------------------------------

@dataclass(frozen=True)
class SekiyaQuadruple:
    Phi: FrameEndo
    e1: GenSection
    e2: GenSection
    lam: Scalar = ZERO
    mu: Scalar = ONE

    @property
    def n(self):
        return self.Phi.n

    def encode(self):
        return {
            "Phi": self.Phi.encode(), "e1": self.e1.encode(), "e2": self.e2.encode(),
            "lambda": as_scalar(self.lam).encode(), "mu": as_scalar(self.mu).encode(),
        }

    @classmethod
    def decode(cls, n, data):
        lam = Scalar.decode(data.get("lambda", "0"))
        mu = Scalar.decode(data["mu"]) if "mu" in data else pythagorean_mu(lam)
        return cls(
            FrameEndo.decode(n, "TM", data["Phi"]),
            GenSection.decode(n, data["e1"]), GenSection.decode(n, data["e2"]), lam, mu,
        )


def _const(n, c):
    return c if isinstance(c, Poly) else Poly.const(n, as_scalar(c))


def _residual_sections(pairs):
    return [{"name": k, "value": v} for k, v in pairs if v]


def validate_sekiya(q):
    """Pairing normalisation, skewness, eigen-relations and the Phi^2 identity."""
    rep = Report()
    n = q.n
    lam, mu = as_scalar(q.lam), as_scalar(q.mu)
    for name, (a, b), want in (
        ("<e1,e1>", (q.e1, q.e1), ZERO),
        ("<e2,e2>", (q.e2, q.e2), ZERO),
        ("<e1,e2>", (q.e1, q.e2), HALF),
    ):
        res = pairing_tm(a, b) - Poly.const(n, want)
        rep.add(f"sekiya.pairing{name}", not res, res)
    skew = q.Phi.adjoint() + q.Phi
    rep.add("sekiya.skew", not skew, skew.nonzero_entries())
    r1 = q.Phi.apply(q.e1) - q.e1.scale(_const(n, lam))
    r2 = q.Phi.apply(q.e2) + q.e2.scale(_const(n, lam))
    rep.add("sekiya.eigen.Phi(e1)=lambda*e1", not r1, r1)
    rep.add("sekiya.eigen.Phi(e2)=-lambda*e2", not r2, r2)
    c = _const(n, 2 * (ONE + lam * lam))
    sq = FrameEndo.from_map(
        n, "TM",
        lambda v: q.Phi.apply(q.Phi.apply(v)) + v
        - (q.e1.scale(pairing_tm(v, q.e2)) + q.e2.scale(pairing_tm(v, q.e1))).scale(c),
    )
    rep.add("sekiya.Phi_squared", not sq, sq.nonzero_entries())
    rep.add("sekiya.mu_squared", mu * mu == ONE + lam * lam, {"mu^2-1-lambda^2": mu * mu - ONE - lam * lam})
    return rep


def _jinv_map(q):
    n = q.n
    lam, mu = _const(n, q.lam), _const(n, q.mu)
    two_mu = mu.scale(2)

    def J(s):
        v = s.tm_part()
        w = q.Phi.apply(v) + q.e1.scale(mu * s.f) + q.e2.scale(mu * s.g)
        f = -(two_mu * pairing_tm(q.e2, v)) - lam * s.f
        g = -(two_mu * pairing_tm(q.e1, v)) + lam * s.g
        return ContactSection(w.X, f, g, w.xi)

    return J


def assemble_jinv(q, check=True):
    """Endomorphism of E assembled from a Sekiya quadruple."""
    if check and not validate_sekiya(q).ok:
        raise StructureError("quadruple fails the Sekiya axioms")
    return FrameEndo.from_map(q.n, "E", _jinv_map(q))


def jinv_report(J, prefix="jinv"):
    rep = Report()
    sq = J @ J + FrameEndo.identity(J.n, J.kind)
    rep.add(f"{prefix}.square=-id", not sq, sq.nonzero_entries())
    sk = J.adjoint() + J
    rep.add(f"{prefix}.skew", not sk, sk.nonzero_entries())
    return rep


def cosymplectic_quadruple(theta, eta, R):
    """``Phi(X, xi) = (-theta^{-1}(xi - xi(R) eta), iota_X theta)``, ``e1 = eta``, ``e2 = R``.

    ``theta`` must be constant and nondegenerate on ``ker(eta)``.
    """
    n = theta.n
    tmat = [[theta.contract(Vector.basis(n, i + 1)).contract(Vector.basis(n, j + 1)).terms.get(0, Poly.zero(n))
             for j in range(n)] for i in range(n)]
    if not all(c.is_const() for r in tmat for c in r):
        raise StructureError("theta must have constant coefficients")
    # X -> iota_X theta + eta(X) eta is invertible iff theta is nondegenerate on ker(eta)
    ev = [eta.terms.get(1 << i, Poly.zero(n)).const_value() for i in range(n)]
    rv = [c.const_value() for c in R.comps]
    full = [[tmat[j][i].const_value() + ev[i] * ev[j] for j in range(n)] for i in range(n)]
    try:
        inv = inverse(full)
    except ZeroDivisionError:
        raise StructureError("theta is degenerate on ker(eta)") from None

    def Phi(v):
        xi = [v.xi.terms.get(1 << i, Poly.zero(n)) for i in range(n)]
        xr = sum((x * Poly.const(n, r) for x, r in zip(xi, rv)), Poly.zero(n))
        proj = [x - xr * Poly.const(n, e) for x, e in zip(xi, ev)]
        X = [-sum((p * Poly.const(n, inv[j][i]) for i, p in enumerate(proj)), Poly.zero(n)) for j in range(n)]
        return GenSection(Vector(n, X), theta.contract(v.X))

    return SekiyaQuadruple(
        FrameEndo.from_map(n, "TM", Phi), GenSection.form(eta), GenSection.vector(R), ZERO, ONE
    )


def complex_quadruple(J, eta, R):
    """``Phi = (phi, 0; 0, -phi^*)`` from an endomorphism ``J`` of TM (list of rows),
    with ``e1 = R`` and ``e2 = eta``."""
    n = eta.n

    def Phi(v):
        X = [sum((_const(n, J[i][j]) * v.X.comps[j] for j in range(n)), Poly.zero(n)) for i in range(n)]
        xi = {1 << j: -sum((_const(n, J[i][j]) * v.xi.terms.get(1 << i, Poly.zero(n)) for i in range(n)), Poly.zero(n))
              for j in range(n)}
        return GenSection(Vector(n, X), Polyform(n, xi))

    return SekiyaQuadruple(
        FrameEndo.from_map(n, "TM", Phi), GenSection.vector(R), GenSection.form(eta), ZERO, ONE
    )


# -- (B, b, a)-transformations ---------------------------------------------------

@dataclass(frozen=True)
class BbaTransform:
    B: Polyform
    b: Polyform
    a: Polyform

    def __post_init__(self):
        for form, k, name in ((self.B, 2, "B"), (self.b, 1, "b"), (self.a, 1, "a")):
            if not form.is_homogeneous(k):
                raise ValueError(f"{name} must be homogeneous of degree {k}")
        if not self.B.n == self.b.n == self.a.n:
            raise DimensionError("transform forms live on different frames")

    @property
    def n(self):
        return self.B.n

    @classmethod
    def identity(cls, n):
        z = Polyform.zero(n)
        return cls(z, z, z)

    def inverse(self):
        return BbaTransform(-self.B, -self.b, -self.a)

    def swapped(self):
        """``(B, a, b)``."""
        return BbaTransform(self.B, self.a, self.b)

    def matrix(self):
        return FrameEndo.from_map(self.n, "E", lambda s: transform_section(self, s))

    def encode(self):
        return {"B": self.B.encode(), "b": self.b.encode(), "a": self.a.encode()}

    @classmethod
    def decode(cls, n, data):
        return cls(*(Polyform.decode(n, data.get(k, [])) for k in ("B", "b", "a")))


def compose_transforms(t2, t1):
    """``t2 . t1``: apply ``t1`` first."""
    return BbaTransform(
        t1.B + t2.B - (t1.b.wedge(t2.a) + t1.a.wedge(t2.b)).scale(HALF),
        t1.b + t2.b, t1.a + t2.a,
    )


def transform_section(t, s):
    """``(X, f + iota_X a, g + iota_X b, xi + iota_X B - f b - g a - (1/2)(iota_X a) b - (1/2)(iota_X b) a)``."""
    xa, xb = s.X.pair(t.a), s.X.pair(t.b)
    xi = (
        s.xi + t.B.contract(s.X) - t.b.scale(s.f) - t.a.scale(s.g)
        - t.b.scale(xa.scale(HALF)) - t.a.scale(xb.scale(HALF))
    )
    return ContactSection(s.X, s.f + xa, s.g + xb, xi)


def transform_mixed_pair(t, p, variant="consistent"):
    """Action of ``e^(B,b,a)`` on a pair of forms.

    ``variant="consistent"`` is the action compatible with the section action
    (``e^t(s.p) = (e^t s).(e^t p)``):
    ``e^{-B}(phi - a psi - (1/2) a b phi, psi + b phi - (1/2) b a psi)``.
    ``variant="flipped"`` flips the signs of the two linear cross terms.
    """
    phi, psi = p
    eB = (-t.B).exp()
    phi, psi = eB.wedge(phi), eB.wedge(psi)
    a, b = t.a, t.b
    sgn = {"consistent": -1, "flipped": 1}[variant]
    ab, ba = a.wedge(b), b.wedge(a)
    return (
        phi + a.wedge(psi).scale(sgn) - ab.wedge(phi).scale(HALF),
        psi - b.wedge(phi).scale(sgn) - ba.wedge(psi).scale(HALF),
    )


def curvature_of(frame, t):
    """Twists generated by a potential: ``(dB - (1/2)(a db + da b), db, da)``."""
    d = frame.d
    return Twists(
        d(t.B) - (t.a.wedge(d(t.b)) + d(t.a).wedge(t.b)).scale(HALF), d(t.b), d(t.a)
    )


def transform_twists(frame, t, tw, variant="consistent", check=True):
    """Twists after ``e^(B,b,a)``.

    ``consistent``: ``H3 + dB - a H2 - b F - (1/2)(a db + b da)``, ``H2 + db``, ``F + da``;
    ``flipped``: ``H3 + dB + a H2 + b F + (1/2)(da b + a db)``, ``H2 + db``, ``F + da``.
    """
    if check and not validate_maurer_cartan(frame, tw).ok:
        raise TwistError("input twists violate Maurer-Cartan")
    d = frame.d
    da, db = d(t.a), d(t.b)
    if variant == "consistent":
        H3 = tw.H3 + d(t.B) - t.a.wedge(tw.H2) - t.b.wedge(tw.F) - (t.a.wedge(db) + t.b.wedge(da)).scale(HALF)
    elif variant == "flipped":
        H3 = tw.H3 + d(t.B) + t.a.wedge(tw.H2) + t.b.wedge(tw.F) + (da.wedge(t.b) + t.a.wedge(db)).scale(HALF)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return Twists(H3, tw.H2 + db, tw.F + da)


# -- deformations of Sekiya quadruples ----------------------------------------

def _mu_for(n, lam):
    if not lam.is_const():
        raise UnrepresentableDeformation(
            f"deformed lambda {lam!r} is not constant; mu = sqrt(1 + lambda^2) is not polynomial"
        )
    val = lam.const_value()
    try:
        return pythagorean_mu(val)
    except ValueError:
        q = ONE + val * val
        raise UnrepresentableDeformation(f"1 + lambda'^2 = {q.encode()} has no rational square root") from None


def _tm_block(J):
    n = J.n
    return FrameEndo(n, "TM", [r[: 2 * n] for r in J.rows[: 2 * n]])


def transform_sekiya(t, q):
    """``e^t J e^{-t}`` read back as a quadruple (the conjugation definition)."""
    n = q.n
    J = t.matrix() @ assemble_jinv(q) @ t.inverse().matrix()
    f, g = 2 * n, 2 * n + 1
    lam = -J.rows[f][f]
    if lam != J.rows[g][g]:
        raise StructureError("conjugated endomorphism is not of Sekiya form")
    mu = _mu_for(n, lam)
    inv_mu = Poly.const(n, ONE / mu)
    e1 = _tm_from(n, [J.rows[i][f] for i in range(2 * n)]).scale(inv_mu)
    e2 = _tm_from(n, [J.rows[i][g] for i in range(2 * n)]).scale(inv_mu)
    return SekiyaQuadruple(_tm_block(J), e1, e2, lam.const_value(), mu)


def _eB(B, v):
    return GenSection(v.X, v.xi + B.contract(v.X))


def transform_sekiya_closed_form(t, q):
    """The closed-form deformation formulas, term by term."""
    n = q.n
    B, A, Bs = t.B, GenSection.form(t.a), GenSection.form(t.b)
    lam, mu = _const(n, q.lam), _const(n, q.mu)
    Phi, e1, e2 = q.Phi.apply, q.e1, q.e2
    P = pairing_tm
    two_mu = mu.scale(2)
    lam_p = lam + P(Bs, Phi(A)).scale(2) + two_mu * P(e1, A) - two_mu * P(e2, Bs)

    def Phi_p(v):
        out = _eB(B, Phi(_eB(-B, v)))
        out = out - Phi(Bs).scale(P(v, A)) - Phi(A).scale(P(v, Bs))
        out = out + e1.scale(two_mu * P(v, A)) + e2.scale(two_mu * P(v, Bs))
        cb = (P(_eB(B, Phi(A)), v) - two_mu * P(e1, A) * P(v, A)
              - two_mu * P(e2, A) * P(v, Bs) - two_mu * P(_eB(B, e2), v))
        ca = (P(_eB(B, Phi(Bs)), v) - two_mu * P(e2, Bs) * P(v, Bs)
              - two_mu * P(e1, Bs) * P(v, A) - two_mu * P(_eB(B, e1), v))
        out = out + Bs.scale(cb) + A.scale(ca)
        out = out + Bs.scale(P(A, Phi(Bs)) * P(A, v)) + A.scale(P(Bs, Phi(A)) * P(Bs, v))
        return out

    mu_e1 = (_eB(B, e1).scale(mu) - Bs.scale(lam_p) + A.scale(mu * P(e1, Bs))
             + Bs.scale(mu * P(e1, A)) - _eB(B, Phi(Bs)))
    mu_e2 = (_eB(B, e2).scale(mu) + A.scale(lam_p) + Bs.scale(mu * P(e2, A))
             + A.scale(mu * P(e2, Bs)) - _eB(B, Phi(A)))
    mu_p = _mu_for(n, lam_p)
    inv = Poly.const(n, ONE / mu_p)
    return SekiyaQuadruple(
        FrameEndo.from_map(n, "TM", Phi_p), mu_e1.scale(inv), mu_e2.scale(inv),
        lam_p.const_value(), mu_p,
    )


def sekiya_deformation_report(t, q):
    """Compare the closed-form deformation formulas with conjugation."""
    rep = Report()
    conj = transform_sekiya(t, q)
    rep.extend(validate_sekiya(conj), "conjugated.")
    try:
        lit = transform_sekiya_closed_form(t, q)
    except UnrepresentableDeformation as exc:
        rep.add("closed_form.lambda", False, notes=str(exc))
        return rep
    rep.add("closed_form.lambda", lit.lam == conj.lam, {"closed_form": lit.lam, "conjugation": conj.lam})
    for name in ("e1", "e2"):
        res = getattr(lit, name) - getattr(conj, name)
        rep.add(f"closed_form.{name}", not res, res)
    res = lit.Phi - conj.Phi
    rep.add("closed_form.Phi", not res, res.nonzero_entries())
    return rep


# -- generalised contact metrics ----------------------------------------------------

@dataclass(frozen=True)
class GenContactMetric:
    g: tuple
    h: Poly
    transform: BbaTransform
    sample_points: tuple = ()

    @classmethod
    def make(cls, g, h=1, transform=None, sample_points=()):
        n = len(g)
        rows = tuple(tuple(_const(n, c) for c in r) for r in g)
        return cls(
            rows, _const(n, h), transform if transform is not None else BbaTransform.identity(n),
            tuple(tuple(as_scalar(x) for x in p) for p in sample_points),
        )

    @property
    def n(self):
        return len(self.g)

    def is_constant(self):
        return self.h.is_const() and all(c.is_const() for r in self.g for c in r)

    def encode(self):
        return {
            "g": [[c.encode() for c in r] for r in self.g], "h": self.h.encode(),
            "transform": self.transform.encode(),
            "sample_points": [[x.encode() for x in p] for p in self.sample_points],
        }

    @classmethod
    def decode(cls, n, data):
        g = [[Poly.decode(n, c) for c in r] for r in data["g"]]
        t = BbaTransform.decode(n, data["transform"]) if "transform" in data else None
        pts = [[Scalar.decode(x) if isinstance(x, str) else x for x in p] for p in data.get("sample_points", [])]
        return cls.make(g, Poly.decode(n, data.get("h", ["1"])) if "h" in data else 1, t, pts)


def _leading_minors_positive(rows):
    from .linalg import det

    return all(det([r[:k] for r in rows[:k]]).re > 0 and not det([r[:k] for r in rows[:k]]).im
               for k in range(1, len(rows) + 1))


def validate_metric(m):
    rep = Report()
    n = m.n
    sym = all(m.g[i][j] == m.g[j][i] for i in range(n) for j in range(n))
    rep.add("metric.symmetric", sym)
    points = [None] if m.is_constant() else list(m.sample_points)
    if not points:
        rep.skip("metric.positive", notes="non-constant metric and no sample points")
    for pt in points:
        rows = [[c.const_value() if pt is None else c.evaluate(pt) for c in r] for r in m.g]
        hv = m.h.const_value() if pt is None else m.h.evaluate(pt)
        tag = "" if pt is None else f"@{[x.encode() for x in pt]}"
        rep.add(f"metric.positive{tag}", _leading_minors_positive(rows), rows)
        rep.add(f"metric.h_nonzero{tag}", bool(hv), hv)
    return rep


def _metric_point(m, point):
    if point is None and not m.is_constant():
        if not m.sample_points:
            raise MetricError("non-constant metric needs a sample point")
        point = m.sample_points[0]
    return point


def _base_metric(m, point):
    n = m.n
    rows = [[c.const_value() if point is None else c.evaluate(point) for c in r] for r in m.g]
    hv = m.h.const_value() if point is None else m.h.evaluate(point)
    if not _leading_minors_positive(rows):
        raise MetricError(f"g is not positive definite at {point}")
    if not hv:
        raise MetricError(f"h vanishes at {point}")
    ginv = inverse(rows)
    h2 = hv * hv

    def G(s):
        xi = [s.xi.terms.get(1 << i, Poly.zero(n)) for i in range(n)]
        X = [sum((x * Poly.const(n, ginv[i][j]) for j, x in enumerate(xi)), Poly.zero(n)) for i in range(n)]
        gX = {1 << i: sum((c * Poly.const(n, rows[i][j]) for j, c in enumerate(s.X.comps)), Poly.zero(n))
              for i in range(n)}
        return ContactSection(Vector(n, X), s.g.scale(ONE / h2), s.f.scale(h2), Polyform(n, gX))

    return FrameEndo.from_map(n, "E", G)


def metric_endomorphism(m, point=None):
    """``G = e^t G0 e^{-t}`` with ``G0(X, f, g, xi) = (g^{-1} xi, g / h^2, h^2 f, g(X))``.

    Non-constant data is evaluated at ``point`` (default: the first sample point).
    """
    point = _metric_point(m, point)
    G0 = _base_metric(m, point)
    M, Minv = m.transform.matrix(), m.transform.inverse().matrix()
    if point is not None:
        M, Minv = M.evaluate(point), Minv.evaluate(point)
    return M @ G0 @ Minv


def metric_subspaces(m, point=None):
    """Generators of ``C_+`` and ``C_-``: ``e^t(e_i, 0, 0, +-g(e_i))`` and ``e^t(0, 1, +-h^2, 0)``."""
    point = _metric_point(m, point)
    n = m.n
    rows = [[c.const_value() if point is None else c.evaluate(point) for c in r] for r in m.g]
    hv = m.h.const_value() if point is None else m.h.evaluate(point)
    M = m.transform.matrix()
    if point is not None:
        M = M.evaluate(point)
    out = []
    for sign in (1, -1):
        gens = []
        for i in range(n):
            X = Vector.basis(n, i + 1)
            xi = Polyform(n, {1 << j: rows[i][j] * sign for j in range(n)})
            gens.append(M.apply(ContactSection.make(n, X, 0, 0, xi)))
        gens.append(M.apply(ContactSection.make(n, None, 1, hv * hv * sign, None)))
        out.append(gens)
    return tuple(out)


# -- coKahler and Einstein checks ---------------------------------------------------------

def _const_coords(s, point):
    return [c.const_value() if point is None else c.evaluate(point) for c in _tm_coords(s)]


def _e_match(q1, q2, point):
    c = lambda s: _const_coords(s, point)
    if as_scalar(q1.lam) == as_scalar(q2.lam) and c(q1.e1) == c(q2.e1) and c(q1.e2) == c(q2.e2):
        return True, "e1=e1', e2=e2', equal lambda"
    if c(q1.e1) == c(q2.e2) and c(q1.e2) == c(q2.e1):
        return True, "e1=e2', e2=e1'"
    if as_scalar(q1.lam) == ZERO == as_scalar(q2.lam):
        # O(1,1) freedom: express q2's pair in q1's null basis
        cols = [c(q1.e1), c(q1.e2)]
        rows = [[cols[0][i], cols[1][i]] for i in range(len(cols[0]))]
        x = solve(rows, c(q2.e1))
        y = solve(rows, c(q2.e2))
        if x is not None and y is not None:
            a, b = x
            cc, d = y
            if a * b == ZERO and cc * d == ZERO and a * d + b * cc == ONE:
                return True, "O(1,1)-related at lambda=0"
    return False, "no matching alternative"


def check_cokahler(q1, q2, m, point=None):
    rep = Report()
    rep.extend(validate_sekiya(q1), "J1.")
    rep.extend(validate_sekiya(q2), "J2.")
    if not rep.ok:
        return rep
    J1, J2 = assemble_jinv(q1, check=False), assemble_jinv(q2, check=False)
    point = _metric_point(m, point)
    if point is not None:
        J1, J2 = J1.evaluate(point), J2.evaluate(point)
    res = J1 @ J2 - J2 @ J1
    rep.add("cokahler.commute", not res, res.nonzero_entries())
    try:
        G = metric_endomorphism(m, point)
    except MetricError as exc:
        rep.add("cokahler.metric", False, notes=str(exc))
        return rep
    res = -(J1 @ J2) - G
    rep.add("cokahler.-J1J2=G", not res, res.nonzero_entries())
    t = m.transform
    note = ""
    if not _is_zero_transform(t):
        # the kernel-line conditions refer to the splitting in which G is untwisted
        try:
            q1, q2 = transform_sekiya(t.inverse(), q1), transform_sekiya(t.inverse(), q2)
        except UnrepresentableDeformation as exc:
            rep.add("cokahler.kernel_span", False, notes=str(exc))
            return rep
        note = "after untwisting by the metric transform"
    u = [_const_coords(q1.e1, point), _const_coords(q1.e2, point)]
    v = [_const_coords(q2.e1, point), _const_coords(q2.e2, point)]
    rep.add("cokahler.kernel_span", span_equal(u, v, 2 * q1.n), {"J1": u, "J2": v}, notes=note)
    ok, how = _e_match(q1, q2, point)
    rep.add("cokahler.e_matching", ok, {"J1": u, "J2": v}, notes="; ".join(x for x in (how, note) if x))
    return rep


class DegenerateError(ValueError):
    pass


def _pairing(p):
    if isinstance(p, Polyform):
        return mukai(p, p.conjugate())
    return pure_spinor_pairing(tuple(p))


def check_einstein_pairing(p1, p2):
    """Real ``c`` with ``(p1, conj p1) = c (p2, conj p2)``, or ``None``.

    Single forms use the Mukai pairing; pairs use the pure-spinor pairing of
    ``phi + i A psi``.
    """
    a, b = _pairing(p1), _pairing(p2)
    if not a or not b:
        raise DegenerateError("zero pairing")
    m, pb = next(iter(sorted(b.terms.items())))
    pa = a.terms.get(m)
    if pa is None:
        return None
    c = pa.terms.get(next(iter(pb.terms)))
    if c is None:
        return None
    c = c / next(iter(pb.terms.values()))
    if c.im or a != b.scale(c):
        return None
    return c


# -- Cech data ---------------------------------------------------------------------

@dataclass(frozen=True)
class CechDatum:
    patches: tuple
    data: dict
    overlaps: dict = field(default_factory=dict)
    """Optional declared transition transforms keyed by ``(alpha, beta)``."""

    def overlap(self, a, b):
        if (a, b) in self.overlaps:
            return self.overlaps[(a, b)]
        return derived_overlap(self.data[a], self.data[b])

    def encode(self):
        out = {"patches": list(self.patches), "data": {p: self.data[p].encode() for p in self.patches}}
        if self.overlaps:
            out["overlaps"] = {f"{a},{b}": t.encode() for (a, b), t in sorted(self.overlaps.items())}
        return out

    @classmethod
    def decode(cls, n, obj):
        patches = tuple(str(p) for p in obj["patches"])
        data = {str(k): BbaTransform.decode(n, v) for k, v in obj["data"].items()}
        missing = [p for p in patches if p not in data]
        if missing:
            raise KeyError(f"no transform for patch {missing[0]!r}")
        ov = {}
        for k, v in obj.get("overlaps", {}).items():
            a, b = k.split(",")
            ov[(a.strip(), b.strip())] = BbaTransform.decode(n, v)
        return cls(patches, data, ov)


def derived_overlap(ta, tb):
    """``(B_a - B_b + (1/2) b_a a_b + (1/2) a_a b_b, b_a - b_b, a_a - a_b)``."""
    return BbaTransform(
        ta.B - tb.B + (ta.b.wedge(tb.a) + ta.a.wedge(tb.b)).scale(HALF), ta.b - tb.b, ta.a - tb.a
    )


def _cocycle_product(cd, a, b, c):
    """Overlaps on ``U_abc`` composed with ``(a, b)`` applied first.

    The overlap formula equals ``t_b^{-1} t_a`` under the composition law, so
    this is the order in which the product telescopes.
    """
    return compose_transforms(compose_transforms(cd.overlap(c, a), cd.overlap(b, c)), cd.overlap(a, b))


def _is_zero_transform(t):
    return not t.B and not t.b and not t.a


def validate_cech(frame, cd, expected, other=None):
    rep = Report()
    for p in cd.patches:
        tw = curvature_of(frame, cd.data[p])
        res = [tw.H3 - expected.H3, tw.H2 - expected.H2, tw.F - expected.F]
        rep.add(f"cech.curvature[{p}]", not any(res), res)
    for (a, b), t in sorted(cd.overlaps.items()):
        der = derived_overlap(cd.data[a], cd.data[b])
        res = [t.B - der.B, t.b - der.b, t.a - der.a]
        rep.add(f"cech.overlap[{a},{b}]", not any(res), res)
    bad = None
    ps = cd.patches
    for a in ps:
        for b in ps:
            for c in ps:
                prod = _cocycle_product(cd, a, b, c)
                if not _is_zero_transform(prod) and bad is None:
                    bad = ((a, b, c), prod)
    n3 = len(ps) ** 3
    rep.add(
        "cech.cocycle", bad is None,
        None if bad is None else {"triple": list(bad[0]), "product": bad[1].encode()},
        notes=f"{n3} ordered triples",
    )
    if other is not None:
        rep.extend(_gauge_report(frame, cd, other, expected))
    return rep


def _gauge_report(frame, cd, other, expected):
    rep = Report()
    common = [p for p in cd.patches if p in other.data]
    if not common:
        rep.add("gauge.patches", False, notes="no common patches")
        return rep
    first = None
    consistent = True
    for p in common:
        t, u = cd.data[p], other.data[p]
        b2, a2 = u.b - t.b, u.a - t.a
        B2 = u.B - t.B + (t.b.wedge(a2) + t.a.wedge(b2)).scale(HALF)
        g = BbaTransform(B2, b2, a2)
        if first is None:
            first = g
        elif g != first:
            consistent = False
    rep.add("gauge.global", consistent, None if consistent else {"patch_differences": "differ"})
    same = all(curvature_of(frame, cd.data[p]) == curvature_of(frame, other.data[p]) for p in common)
    rep.add("gauge.same_twists", same)
    if consistent:
        g = first
        tw = curvature_of(frame, g)
        lit = [tw.H3 + expected.H3, tw.H2 + expected.H2, tw.F + expected.F]
        rep.skip("gauge.potential_equation", notes=f"potential curvatures equal minus the twists: {'yes' if not any(lit) else 'no'}; informational")
    return rep


# -- products -------------------------------------------------------------------------

def _embed_section(s, n_new, offset=0):
    if offset:
        return GenSection(s.X.embed(n_new, offset), s.xi.embed(n_new, offset))
    return GenSection(s.X.extend(n_new), s.xi.extend(n_new))


def lift_product(contact, spinor, strict=False):
    """``(phi1 ^ phi2, psi1 ^ phi2, e1, e2)`` on the direct-sum frame."""
    n1, n2 = contact.n, spinor.n
    if not validate_mixed_pair(contact, strict=strict).ok:
        raise StructureError("contact factor is not a valid mixed pair")
    if n2 and not mukai(spinor, spinor.conjugate()):
        raise StructureError("spinor factor has zero Mukai self-pairing")
    if spinor.parity() != "even" and n2:
        raise ParityError("spinor factor must be even to keep the pair parities")
    n = n1 + n2
    phi2 = spinor.embed(n, n1)
    out = MixedPair(
        contact.phi.extend(n).wedge(phi2), contact.psi.extend(n).wedge(phi2),
        _embed_section(contact.e1, n), _embed_section(contact.e2, n), contact.lam, contact.mu,
    )
    if not validate_mixed_pair(out, strict=strict).ok:
        raise StructureError("lifted pair fails validation")
    return out


# -- circle T-duality -------------------------------------------------------------------

def check_admissible(H, fiber_indices):
    """``iota_{e_i} iota_{e_j} H = 0`` for all fibre pairs ``i < j``."""
    rep = Report()
    n = H.n
    idx = sorted(set(fiber_indices))
    bad = []
    for k, i in enumerate(idx):
        for j in idx[k + 1:]:
            r = H.contract(Vector.basis(n, i)).contract(Vector.basis(n, j))
            if r:
                bad.append({"pair": [i, j], "residual": r})
    rep.add("tduality.admissible", not bad, bad, notes=f"{len(idx)} fibre directions")
    return rep


def _hat(v):
    return v.grade_involution()


def t_dualize_circle(mp, tw, A=None, At=None, frame=None, fiber_indices=()):
    """Dual mixed pair, twists and connections for the circle direction.

    Pair: ``(hat psi, hat phi, -e2, -e1, -lambda)`` with ``hat`` the grade
    involution; twists ``(H3, F, H2)``; connections swapped.  Applying the map
    twice returns the input.
    """
    if fiber_indices and not check_admissible(tw.H3, fiber_indices).ok:
        raise DualityError("H3 is not admissible for the given fibre directions")
    if frame is not None:
        if A is not None and frame.d(A) != tw.F:
            raise DualityError("dA does not match F")
        if At is not None and frame.d(At) != tw.H2:
            raise DualityError("d(dual connection) does not match H2")
    dual = MixedPair(_hat(mp.psi), _hat(mp.phi), -mp.e2, -mp.e1, -as_scalar(mp.lam), mp.mu)
    return dual, tw.swapped(), At, A


def swap_fg(s):
    """``(X, f, g, xi) -> (X, g, f, xi)``; maps the ``(H3, H2, F)`` bracket to ``(H3, F, H2)``."""
    return ContactSection(s.X, s.g, s.f, s.xi)


def t_dualize_quadruple(q):
    """``(Phi, e2, e1, -lambda)``: the endomorphism conjugated by the f/g swap."""
    return SekiyaQuadruple(q.Phi, q.e2, q.e1, -as_scalar(q.lam), q.mu)


def t_dualize_metric(m):
    """``h -> 1/h`` and ``(B, b, a) -> (B, a, b)`` (constant ``h`` only)."""
    if not m.h.is_const():
        raise DualityError("dual metric needs constant h")
    n = m.n
    return GenContactMetric(
        m.g, Poly.const(n, ONE / m.h.const_value()), m.transform.swapped(), m.sample_points
    )
