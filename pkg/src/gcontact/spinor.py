"""Clifford actions, Mukai pairings, mixed pairs and involutivity."""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .courant import TwistError, dorfman_contact, pairing_tm, validate_maurer_cartan
from .forms import DimensionError, Polyform, Vector
from .frame import ModeError
from .linalg import nullspace, rank, solve
from .poly import Poly
from .report import Report
from .scalar import ONE, ZERO, Scalar, as_scalar
from .sections import ContactSection, GenSection

__all__ = [
    "Annihilator", "InvolutivityWitness", "MixedPair", "ParityError",
    "annihilator", "check_annihilator_involutive", "clifford_contact", "clifford_tm",
    "geometric_type", "mukai", "mukai_mixed", "pure_spinor_pairing", "pythagorean_mu",
    "solve_dirac_relators", "solve_involutive",
    "solve_involutive_spinor", "spinor_annihilator", "twisted_differential",
    "validate_mixed_pair",
]


class ParityError(ValueError):
    """A pair whose components do not have opposite, definite parities."""


def clifford_tm(s, a):
    """``(X, xi) . a = iota_X a + xi ^ a``."""
    return a.contract(s.X) + s.xi.wedge(a)


def clifford_contact(s, p):
    """``(X,f,g,xi) . (phi, psi) = ((X,xi).phi + f psi, g phi - (X,xi).psi)``."""
    phi, psi = p
    tm = s.tm_part() if isinstance(s, ContactSection) else s
    return (
        clifford_tm(tm, phi) + psi.scale(s.f),
        phi.scale(s.g) - clifford_tm(tm, psi),
    )


def _pair_sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _pair_zero(p):
    return not p[0] and not p[1]


# -- Mukai pairings --------------------------------------------------------------

def mukai(a, b, degree=None):
    """Degree-``m`` component of ``alpha(a) ^ b`` (``m`` = frame dimension by default)."""
    if a.n != b.n:
        raise DimensionError("forms live on different frames")
    m = a.n if degree is None else degree
    return a.reversal().wedge(b).project_degree(m)


def _check_pair(p):
    phi, psi = p
    pp, qp = phi.parity(), psi.parity()
    if "mixed" in (pp, qp):
        raise ParityError("pair components must each have a definite parity")
    if phi and psi and pp == qp:
        raise ParityError("pair components must have opposite parities")


def _signed_by_degree(a):
    """``(-1)^{|a|} alpha(a)`` applied to each homogeneous component."""
    return a.reversal().grade_involution()


def mukai_mixed(p1, p2, degree=None):
    """``(-1)^{|phi1|}(alpha(phi1) ^ psi2) + (-1)^{|psi1|}(alpha(psi1) ^ phi2)``.

    Projected to degree ``m`` (the frame dimension); this is the fibre
    coefficient of the Mukai pairing of ``phi + A ^ psi`` on the circle
    extension.  Signs are applied per homogeneous component.
    """
    _check_pair(p1)
    _check_pair(p2)
    phi1, psi1 = p1
    phi2, psi2 = p2
    m = phi1.n if degree is None else degree
    tot = _signed_by_degree(phi1).wedge(psi2) + _signed_by_degree(psi1).wedge(phi2)
    return tot.project_degree(m)


# -- annihilators ----------------------------------------------------------------

def _flatten(forms, point):
    """Coefficient dictionary ``(slot, blade) -> Scalar`` of forms at a point."""
    out = {}
    for slot, f in enumerate(forms):
        for m, p in f.terms.items():
            v = p.const_value() if point is None else p.evaluate(point)
            if v:
                out[(slot, m)] = v
    return out


def _at(p, point):
    return tuple(f.evaluate(point) if point is not None else f for f in p)


def _is_const_pair(forms):
    return all(f.is_constant() for f in forms)


def _section_basis(n):
    for k in range(2 * n + 2):
        coords = [ZERO] * (2 * n + 2)
        coords[k] = ONE
        yield ContactSection.from_coords(n, coords)


def _gen_basis(n):
    for k in range(2 * n):
        coords = [ZERO] * (2 * n)
        coords[k] = ONE
        X = Vector(n, coords[:n])
        xi = Polyform(n, {1 << i: coords[n + i] for i in range(n)})
        yield GenSection(X, xi)


def _kernel(images):
    """Kernel of the matrix whose columns are the coefficient dicts ``images``."""
    keys = sorted({k for im in images for k in im})
    rows = [[im.get(k, ZERO) for im in images] for k in keys]
    return nullspace(rows, len(images))


@dataclass
class Annihilator:
    point: object
    basis: list
    complex_rank: int
    real_index: int
    """``dim_C (L cap conj L)``."""

    @property
    def real_dimension(self):
        return 2 * self.complex_rank


def _points_for(forms, sample_points):
    if _is_const_pair(forms):
        return [None]
    if not sample_points:
        raise ValueError("non-constant coefficients need at least one sample point")
    return [tuple(as_scalar(x) for x in pt) for pt in sample_points]


def _real_index(vectors, size):
    if not vectors:
        return 0
    conj = [[x.conjugate() for x in v] for v in vectors]
    r = rank(vectors)
    return r + rank(conj) - rank(list(vectors) + conj)


def annihilator(p, sample_points=None):
    """``{s in E (x) C : s.(phi, psi) = 0}`` as an exact kernel basis.

    Constant-coefficient pairs are handled globally; otherwise one result per
    sample point is returned.  Basis sections have constant coefficients.
    """
    _check_pair(p)
    n = p[0].n
    out = []
    for pt in _points_for(p, sample_points):
        q = _at(p, pt)
        images = [_flatten(clifford_contact(s, q), None) for s in _section_basis(n)]
        ker = _kernel(images)
        basis = [ContactSection.from_coords(n, v) for v in ker]
        out.append(Annihilator(pt, basis, len(ker), _real_index(ker, 2 * n + 2)))
    return out


def spinor_annihilator(phi, sample_points=None):
    """Annihilator of a single form under the TM + T*M Clifford action."""
    n = phi.n
    out = []
    for pt in _points_for((phi,), sample_points):
        q = phi.evaluate(pt) if pt is not None else phi
        images = [_flatten((clifford_tm(s, q),), None) for s in _gen_basis(n)]
        ker = _kernel(images)
        basis = [
            GenSection(Vector(n, v[:n]), Polyform(n, {1 << i: v[n + i] for i in range(n)}))
            for v in ker
        ]
        out.append(Annihilator(pt, basis, len(ker), _real_index(ker, 2 * n)))
    return out


def geometric_type(p, point=None):
    """Complex codimension of the tangent projection of the annihilator.

    ``p`` is a single form (TM + T*M) or a pair (TM + R + R + T*M).
    """
    pts = None if point is None else [point]
    if isinstance(p, Polyform):
        ann = spinor_annihilator(p, pts)[0]
    else:
        ann = annihilator(tuple(p), pts)[0]
    n = (p if isinstance(p, Polyform) else p[0]).n
    rows = [[c.const_value() for c in s.X.comps] for s in ann.basis]
    return n - (rank(rows) if rows else 0)


def solve_dirac_relators(p, point=None):
    """``(v1, v2)`` in TM + T*M with ``v1.phi = psi`` and ``v2.psi = phi``, or ``None``."""
    phi, psi = p
    if point is not None:
        phi, psi = phi.evaluate(point), psi.evaluate(point)
    elif not (phi.is_constant() and psi.is_constant()):
        raise ValueError("non-constant pair: give a sample point")
    v1 = _solve_clifford(phi, psi)
    v2 = _solve_clifford(psi, phi)
    if v1 is None or v2 is None:
        return None
    return v1, v2


def _solve_clifford(src, dst):
    n = src.n
    basis = list(_gen_basis(n))
    images = [_flatten((clifford_tm(s, src),), None) for s in basis]
    target = _flatten((dst,), None)
    keys = sorted({k for im in images for k in im} | set(target))
    rows = [[im.get(k, ZERO) for im in images] for k in keys]
    rhs = [target.get(k, ZERO) for k in keys]
    if not rows:
        return None
    x = solve(rows, rhs)
    if x is None:
        return None
    return GenSection(Vector(n, x[:n]), Polyform(n, {1 << i: x[n + i] for i in range(n)}))


# -- mixed pairs ---------------------------------------------------------------------

@dataclass(frozen=True)
class MixedPair:
    phi: Polyform
    psi: Polyform
    e1: GenSection
    e2: GenSection
    lam: Scalar = ZERO
    mu: Scalar = ONE

    @property
    def n(self):
        return self.phi.n

    @property
    def pair(self):
        return (self.phi, self.psi)

    def conjugate(self):
        return MixedPair(
            self.phi.conjugate(), self.psi.conjugate(), self.e1.conjugate(),
            self.e2.conjugate(), self.lam, self.mu,
        )

    def encode(self):
        return {
            "phi": self.phi.encode(), "psi": self.psi.encode(),
            "e1": self.e1.encode(), "e2": self.e2.encode(),
            "lambda": self.lam.encode(), "mu": self.mu.encode(),
        }

    @classmethod
    def decode(cls, n, data):
        lam = Scalar.decode(data.get("lambda", "0"))
        mu = Scalar.decode(data["mu"]) if "mu" in data else None
        if mu is None:
            mu = pythagorean_mu(lam)
        return cls(
            Polyform.decode(n, data["phi"]), Polyform.decode(n, data["psi"]),
            GenSection.decode(n, data["e1"]), GenSection.decode(n, data["e2"]),
            lam, mu,
        )


def pythagorean_mu(lam):
    """Exact ``sqrt(1 + lam^2)`` for rational ``lam`` when it is rational."""
    from fractions import Fraction
    from math import isqrt

    lam = as_scalar(lam)
    if lam.im:
        raise ValueError("lambda must be real")
    q = Fraction(1) + Fraction(lam.re) ** 2
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise ValueError(f"1 + lambda^2 = {q} is not a rational square")
    return Scalar(Fraction(num, den))


def pure_spinor_pairing(p):
    """Fibre coefficient of ``(rho, conj rho)`` for ``rho = phi + i A ^ psi``.

    Equals ``mukai_mixed((phi, i psi), (conj phi, -i conj psi))``.
    """
    phi, psi = p
    I = Scalar(0, 1)
    return mukai_mixed((phi, psi.scale(I)), (phi.conjugate(), psi.conjugate().scale(-I)))


def _nonzero(form):
    return bool(form)


def validate_mixed_pair(mp, strict=False, sample_points=None):
    """Compatibility identities, normalisations and nondegeneracy of a mixed pair.

    The individual nondegeneracy conditions on ``phi`` and ``psi`` are reported
    but only enforced with ``strict=True``; they vanish identically for pairs of
    the form ``(phi, eta ^ phi)``.
    """
    rep = Report()
    n = mp.n
    I = Scalar(0, 1)
    try:
        _check_pair(mp.pair)
        rep.add("mixed_pair.parity", True)
    except ParityError as exc:
        rep.add("mixed_pair.parity", False, notes=str(exc))
    lam, mu = as_scalar(mp.lam), as_scalar(mp.mu)
    rep.add(
        "mixed_pair.mu_squared", mu * mu == ONE + lam * lam,
        {"mu^2 - 1 - lambda^2": (mu * mu - ONE - lam * lam).encode()},
    )
    for name, (a, b), want in (
        ("<e1,e1>", (mp.e1, mp.e1), ZERO),
        ("<e2,e2>", (mp.e2, mp.e2), ZERO),
        ("<e1,e2>", (mp.e1, mp.e2), Scalar(1) / 2),
    ):
        val = pairing_tm(a, b)
        res = val - Poly.const(n, want)
        rep.add(f"mixed_pair.pairing{name}", not res, res)
    checks = (
        ("e1.psi=0", clifford_tm(mp.e1, mp.psi)),
        ("mu*e1.phi=(1+i*lambda)*psi", clifford_tm(mp.e1, mp.phi).scale(mu) - mp.psi.scale(ONE + I * lam)),
        ("e2.phi=0", clifford_tm(mp.e2, mp.phi)),
        ("mu*e2.psi=(1-i*lambda)*phi", clifford_tm(mp.e2, mp.psi).scale(mu) - mp.phi.scale(ONE - I * lam)),
    )
    for name, res in checks:
        rep.add(f"mixed_pair.compat.{name}", not res, res)
    if rep.get("mixed_pair.parity").ok:
        comb = pure_spinor_pairing(mp.pair)
        rep.add(
            "mixed_pair.nondegenerate.combined", _nonzero(comb), comb,
            notes="degree convention: m; pairing of phi + i A psi with its conjugate",
        )
        if sample_points and not comb.is_constant():
            for pt in sample_points:
                val = comb.evaluate(tuple(as_scalar(x) for x in pt))
                rep.add(f"mixed_pair.nondegenerate.combined@{list(pt)}", bool(val), val)
        lit = mukai_mixed(mp.pair, (mp.phi.conjugate(), mp.psi.conjugate()))
        rep.skip(
            "mixed_pair.nondegenerate.plain_conjugate",
            notes=f"((phi,psi),(conj phi,conj psi)) is {'nonzero' if lit else 'zero'}; informational",
        )
    for label, form in (("phi", mp.phi), ("psi", mp.psi)):
        val = mukai(form, form.conjugate(), n - 1)
        name = f"mixed_pair.nondegenerate.{label}"
        if strict:
            rep.add(name, bool(val), val, notes="degree m-1, strict mode")
        else:
            rep.skip(name, notes=f"degree m-1 value {'nonzero' if val else 'zero'}; enforced only in strict mode")
    return rep


# -- twisted differentials and involutivity ------------------------------------

def twisted_differential(frame, p, t, check=True):
    """``(d phi + H3 phi + F psi, H2 phi - d psi - H3 psi)``."""
    if check and not validate_maurer_cartan(frame, t).ok:
        raise TwistError("twists violate Maurer-Cartan")
    phi, psi = p
    d = frame.d
    return (
        d(phi) + t.H3.wedge(phi) + t.F.wedge(psi),
        t.H2.wedge(phi) - d(psi) - t.H3.wedge(psi),
    )


@dataclass(frozen=True)
class InvolutivityWitness:
    V: object

    def encode(self):
        return {"V": self.V.encode()}


def _monomials(frame, degree_bound):
    n = frame.dim
    coords = sorted(frame.coords)
    out = [Poly.const(n, 1)]
    for k in range(1, degree_bound + 1):
        for combo in combinations_with_replacement(coords, k):
            m = Poly.const(n, 1)
            for i in combo:
                m = m * Poly.var(n, i)
            out.append(m)
    return out


def _flatten_poly(forms):
    out = {}
    for slot, f in enumerate(forms):
        for m, p in f.terms.items():
            for e, c in p.terms.items():
                out[(slot, m, e)] = c
    return out


def _linear_solve(columns, target):
    keys = sorted({k for c in columns for k in c} | set(target))
    if not keys:
        return [ZERO] * len(columns)
    rows = [[c.get(k, ZERO) for c in columns] for k in keys]
    rhs = [target.get(k, ZERO) for k in keys]
    return solve(rows, rhs)


def solve_involutive(frame, p, t, degree_bound=0):
    """Find ``V`` with ``d_t(phi, psi) = V.(phi, psi)``, coefficients of degree <= bound."""
    _check_pair(p)
    if not validate_maurer_cartan(frame, t).ok:
        raise TwistError("twists violate Maurer-Cartan")
    n = frame.dim
    target = _flatten_poly(twisted_differential(frame, p, t, check=False))
    monos = _monomials(frame, degree_bound)
    unknowns = [(s, m) for s in _section_basis(n) for m in monos]
    cols = [_flatten_poly(clifford_contact(s.scale(m), p)) for s, m in unknowns]
    x = _linear_solve(cols, target)
    if x is None:
        return None
    V = ContactSection.zero(n)
    for c, (s, m) in zip(x, unknowns):
        if c:
            V = V + s.scale(m.scale(c))
    return InvolutivityWitness(V)


def solve_involutive_spinor(frame, phi, H=None, degree_bound=0):
    """Find ``v`` with ``d phi + H ^ phi = v . phi``."""
    n = frame.dim
    H = H if H is not None else Polyform.zero(n)
    if frame.d(H):
        raise TwistError("H is not closed")
    target = _flatten_poly((frame.d(phi) + H.wedge(phi),))
    monos = _monomials(frame, degree_bound)
    unknowns = [(s, m) for s in _gen_basis(n) for m in monos]
    cols = [_flatten_poly((clifford_tm(s.scale(m), phi),)) for s, m in unknowns]
    x = _linear_solve(cols, target)
    if x is None:
        return None
    v = GenSection.zero(n)
    for c, (s, m) in zip(x, unknowns):
        if c:
            v = v + s.scale(m.scale(c))
    return InvolutivityWitness(v)


def check_annihilator_involutive(frame, mp, t, variant="reduced"):
    """Proof identity and bracket closure on an annihilator basis.

    (i)  ``(X1 o X2).(phi, psi) == -X2.X1.d_t(phi, psi)`` for every ordered
         pair of basis sections;
    (ii) ``(X1 o X2).(phi, psi) == 0`` (closure of the annihilator).
    Requires constant-coefficient data so that the basis consists of sections.
    """
    p = mp.pair
    if not all(f.is_constant() for f in p):
        raise ModeError("annihilator sections need constant-coefficient pairs")
    rep = Report()
    ann = annihilator(p)[0]
    dp = twisted_differential(frame, p, t)
    first_id = first_cl = None
    for i, s1 in enumerate(ann.basis):
        for j, s2 in enumerate(ann.basis):
            br = dorfman_contact(frame, s1, s2, t, check=False, variant=variant)
            lhs = clifford_contact(br, p)
            rhs = clifford_contact(s2, clifford_contact(s1, dp))
            res = (lhs[0] + rhs[0], lhs[1] + rhs[1])
            if first_id is None and not _pair_zero(res):
                first_id = (i, j, res)
            if first_cl is None and not _pair_zero(lhs):
                first_cl = (i, j, lhs)
    k = len(ann.basis)
    note = f"{k} basis sections, {k * k} ordered pairs"
    rep.add(
        "theorem.proof_identity", first_id is None,
        None if first_id is None else {"pair": list(first_id[:2]), "residual": list(first_id[2])},
        notes=note,
    )
    rep.add(
        "theorem.closure", first_cl is None,
        None if first_cl is None else {"pair": list(first_cl[:2]), "residual": list(first_cl[2])},
        notes=note,
    )
    return rep
