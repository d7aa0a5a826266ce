"""The H-twisted Courant algebroid on TM+T*M and the contact Courant algebroid.

Sign convention for double contractions: ``iota_{X1} iota_{X2} w`` in the
bracket formulas means ``w(X1, X2, ...)``, i.e. ``X1`` fills the first slot.
This is the reading under which the contact bracket agrees with the circle
reduction of the twisted Dorfman bracket (see ``reduce_bracket_oracle``).
"""

from collections import namedtuple

from .forms import DimensionError, Polyform, Vector
from .poly import Poly
from .report import Report
from .scalar import Scalar
from .sections import (
    ContactSection, GenSection, SplitMix64, Twists, random_contact_section, random_form,
    random_gen_section,
)

__all__ = [
    "CourantAlgebroid", "ReductionError", "TwistError", "check_courant_axioms",
    "contact_algebroid", "dorfman_contact", "dorfman_h", "double_contract",
    "pairing_contact", "pairing_tm", "random_mc_twists", "reduce_bracket_oracle",
    "standard_algebroid", "validate_maurer_cartan",
]


HALF = Scalar(1) / 2


class TwistError(ValueError):
    """Twist forms violate closedness / Maurer-Cartan identities."""


class ReductionError(ValueError):
    """Data cannot be lifted to invariant data on a circle extension."""


def double_contract(x1, x2, w):
    """``w(x1, x2, ...)``."""
    return w.contract(x1).contract(x2)


def _fn(form):
    return form.terms.get(0, Poly.zero(form.n))


def pairing_tm(s1, s2):
    if s1.n != s2.n:
        raise DimensionError("sections live on different frames")
    return (s1.X.pair(s2.xi) + s2.X.pair(s1.xi)).scale(HALF)


def pairing_contact(s1, s2):
    if s1.n != s2.n:
        raise DimensionError("sections live on different frames")
    tot = s1.X.pair(s2.xi) + s2.X.pair(s1.xi) + s1.f * s2.g + s1.g * s2.f
    return tot.scale(HALF)


def dorfman_h(frame, s1, s2, H=None, check=True, corrupt=None):
    """``([X1,X2], L_{X1} xi2 - iota_{X2} d xi1 - H(X1, X2, .))``.

    ``corrupt="drop_twist"`` omits the ``H`` term (negative controls).  On its
    own this is just the untwisted bracket; it only breaks the axioms in the
    contact case, where dropping ``H3`` while ``H2 ^ F != 0`` leaves twists
    that violate Maurer-Cartan.
    """
    n = frame.dim
    if H is None:
        H = Polyform.zero(n)
    if check and frame.d(H):
        raise TwistError("H is not closed")
    X = frame.lie_bracket(s1.X, s2.X)
    xi = frame.lie_derivative(s1.X, s2.xi) - frame.d(s1.xi).contract(s2.X)
    if corrupt != "drop_twist":
        xi = xi - double_contract(s1.X, s2.X, H)
    return GenSection(X, xi)


def validate_maurer_cartan(frame, t):
    rep = Report()
    r1 = frame.d(t.H3) + t.H2.wedge(t.F)
    r2 = frame.d(t.H2)
    r3 = frame.d(t.F)
    rep.add("maurer_cartan.dH3+H2^F", not r1, r1)
    rep.add("maurer_cartan.dH2", not r2, r2)
    rep.add("maurer_cartan.dF", not r3, r3)
    return rep


def dorfman_contact(frame, s1, s2, t, check=True, corrupt=None, variant="reduced"):
    """The contact bracket.

    ``variant="reduced"`` (default) uses the cross terms
    ``-f1 iota_{X2} H2 + f2 iota_{X1} H2 - g1 iota_{X2} F + g2 iota_{X1} F``,
    which is what the circle reduction produces and what the Courant axioms
    require.  ``variant="flipped"`` has the opposite sign on those four terms and
    fails the axioms; it is kept as a control.  ``corrupt`` as in ``dorfman_h``.
    """
    if variant not in ("reduced", "flipped"):
        raise ValueError(f"unknown bracket variant {variant!r}")
    if check:
        rep = validate_maurer_cartan(frame, t)
        if not rep.ok:
            raise TwistError(
                "twists violate Maurer-Cartan: " + ", ".join(c.name for c in rep.failures())
            )
    X1, f1, g1, xi1 = s1.X, s1.f, s1.g, s1.xi
    X2, f2, g2, xi2 = s2.X, s2.f, s2.g, s2.xi
    X = frame.lie_bracket(X1, X2)
    f = frame.apply(X1, f2) - frame.apply(X2, f1)
    g = frame.apply(X1, g2) - frame.apply(X2, g1)
    xi = (
        frame.lie_derivative(X1, xi2) - frame.d(xi1).contract(X2)
        + frame.d_poly(f1).scale(g2) + frame.d_poly(g1).scale(f2)
    )
    f = f - _fn(double_contract(X1, X2, t.F))
    g = g - _fn(double_contract(X1, X2, t.H2))
    if corrupt != "drop_twist":
        xi = xi - double_contract(X1, X2, t.H3)
    cross = (
        t.H2.contract(X2).scale(f1) - t.H2.contract(X1).scale(f2)
        + t.F.contract(X2).scale(g1) - t.F.contract(X1).scale(g2)
    )
    xi = xi + cross if variant == "flipped" else xi - cross
    return ContactSection(X, f, g, xi)


# -- circle reduction oracle ------------------------------------------------

def lift_section(ext, s):
    """``(X + f e_{n+1}, xi + g eps_{n+1})`` on the extended frame."""
    n = s.n
    N = ext.dim
    if N != n + 1:
        raise DimensionError("extended frame must have dimension n+1")
    comps = [c.extend(N) for c in s.X.comps] + [s.f.extend(N)]
    xi = s.xi.extend(N) + Polyform._raw(N, {1 << n: s.g.extend(N)} if s.g else {})
    return GenSection(Vector(N, comps), xi)


def descend_section(s_up, n):
    N = n + 1
    for p in list(s_up.X.comps) + list(s_up.xi.terms.values()):
        if p.depends_on(N):
            raise ReductionError("section depends on the fibre coordinate")
    X = Vector(n, [c.restrict(n) for c in s_up.X.comps[:n]])
    f = s_up.X.comps[n].restrict(n)
    g = s_up.xi.terms.get(1 << n, Poly.zero(N)).restrict(n)
    xi = Polyform._raw(N, {m: p for m, p in s_up.xi.terms.items() if m != 1 << n}).restrict(n)
    return ContactSection(X, f, g, xi)


def reduce_bracket_oracle(frame, curvature, H3, H2, s1, s2):
    """Contact bracket computed upstairs on the circle extension.

    ``curvature`` is ``F``, or a connection 1-form ``A`` (then ``F = dA``).
    The sections are lifted, bracketed with ``H = H3 + eps_{n+1} ^ H2`` and
    the result decomposed back.
    """
    from .frame import extend_circle

    n = frame.dim
    F = frame.d(curvature) if curvature.is_homogeneous(1) and curvature else curvature
    if not F.is_homogeneous(2):
        raise ValueError("curvature must be a 2-form or a connection 1-form")
    ext = extend_circle(frame, F)
    N = n + 1
    conn = Polyform._raw(N, {1 << n: Poly.const(N, 1)})
    H = H3.extend(N) + conn.wedge(H2.extend(N))
    if ext.d(H):
        raise ReductionError("upstairs H is not closed (twists violate Maurer-Cartan)")
    up = dorfman_h(ext, lift_section(ext, s1), lift_section(ext, s2), H, check=False)
    return descend_section(up, n)


def reduce_differential_oracle(frame, curvature, t, phi, psi):
    """``(d + H)(phi + eps_{n+1} ^ psi)`` upstairs, decomposed as ``(first, second)``."""
    from .frame import extend_circle

    n = frame.dim
    N = n + 1
    ext = extend_circle(frame, curvature)
    conn = Polyform._raw(N, {1 << n: Poly.const(N, 1)})
    H = t.H3.extend(N) + conn.wedge(t.H2.extend(N))
    rho = phi.extend(N) + conn.wedge(psi.extend(N))
    out = ext.d(rho) + H.wedge(rho)
    second = out.contract_generator(N)
    first = out - conn.wedge(second)
    return first.restrict(n), second.restrict(n)


# -- axioms ------------------------------------------------------------------

CourantAlgebroid = namedtuple(
    "CourantAlgebroid", "frame bracket pairing anchor D sample zero"
)


def standard_algebroid(frame, H=None, corrupt=None):
    n = frame.dim
    H = H if H is not None else Polyform.zero(n)
    if frame.d(H):
        raise TwistError("H is not closed")
    return CourantAlgebroid(
        frame,
        lambda a, b: dorfman_h(frame, a, b, H, check=False, corrupt=corrupt),
        pairing_tm,
        lambda s: s.X,
        lambda h: GenSection(Vector.zero(n), frame.d_poly(h)),
        lambda rng: random_gen_section(rng, frame),
        GenSection.zero(n),
    )


def contact_algebroid(frame, t=None, corrupt=None, variant="reduced"):
    n = frame.dim
    t = t if t is not None else Twists.zero(n)
    rep = validate_maurer_cartan(frame, t)
    if not rep.ok:
        raise TwistError("twists violate Maurer-Cartan")
    return CourantAlgebroid(
        frame,
        lambda a, b: dorfman_contact(frame, a, b, t, check=False, corrupt=corrupt, variant=variant),
        pairing_contact,
        lambda s: s.X,
        lambda h: ContactSection(Vector.zero(n), Poly.zero(n), Poly.zero(n), frame.d_poly(h)),
        lambda rng: random_contact_section(rng, frame),
        ContactSection.zero(n),
    )


def _one_trial(alg, seed, trial):
    rng = SplitMix64(seed * 1_000_003 + trial)
    e1, e2, e3 = (alg.sample(rng) for _ in range(3))
    br = alg.bracket
    out = []
    lhs = br(e1, br(e2, e3))
    rhs = br(br(e1, e2), e3) + br(e2, br(e1, e3))
    out.append(("leibniz", lhs - rhs, (e1, e2, e3)))
    frame = alg.frame
    lhs = frame.apply(alg.anchor(e3), alg.pairing(e1, e2))
    rhs = alg.pairing(br(e3, e1), e2) + alg.pairing(e1, br(e3, e2))
    out.append(("invariance", lhs - rhs, (e1, e2, e3)))
    res = br(e1, e1) - alg.D(alg.pairing(e1, e1))
    out.append(("symmetric_part", res, (e1,)))
    return out


def check_courant_axioms(alg, trials=50, seed=0, prefix="courant", workers=None):
    """Brute-force the three Courant axioms on seeded random sections.

    Reports one check per axiom; a failure carries the first counterexample
    (trial index, residual, offending sections).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda k: _one_trial(alg, seed, k), range(trials)))
    else:
        results = [_one_trial(alg, seed, k) for k in range(trials)]
    rep = Report()
    for j, axiom in enumerate(("leibniz", "invariance", "symmetric_part")):
        bad = next(((k, r[j]) for k, r in enumerate(results) if r[j][1]), None)
        name = f"{prefix}.{axiom}"
        if bad is None:
            rep.add(name, True, notes=f"{trials} trials, seed {seed}")
        else:
            k, (_, res, secs) = bad
            rep.add(
                name, False, {"residual": res, "sections": list(secs)},
                notes=f"first counterexample at trial {k} (seed {seed})", trial=k,
            )
    return rep


def random_mc_twists(rng, frame, flat=False):
    """Maurer-Cartan twists ``(dB - a^db/2 - da^b/2, db, da)`` from random potentials.

    ``flat`` forces ``a = 0`` (so ``F = 0``).  Returns the twists and ``(B, b, a)``.
    """
    B = random_form(rng, frame, 2)
    b = random_form(rng, frame, 1, density=3)
    a = Polyform.zero(frame.dim) if flat else random_form(rng, frame, 1, density=3)
    d = frame.d
    H3 = d(B) - (a.wedge(d(b)) + d(a).wedge(b)).scale(HALF)
    return Twists(H3, d(b), d(a)), (B, b, a)
