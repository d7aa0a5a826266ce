"""Regenerate the JSON documents in src/gcontact/data from library constructors.

Run from the repository root: ``python3 tools/build_examples.py``.
"""

import json
from pathlib import Path

from gcontact import (
    BbaTransform, I, MixedPair, Poly, Polyform, Vector, blade, complex_quadruple,
    cosymplectic_quadruple, eps, t_dualize_metric, t_dualize_quadruple, transform_sekiya,
)
from gcontact.document import format_form
from gcontact.frame import FrameAlgebra
from gcontact.sections import GenSection, SplitMix64, random_form
from gcontact.structures import UnrepresentableDeformation

OUT = Path(__file__).resolve().parent.parent / "src" / "gcontact" / "data"


def compact_pair(mp):
    def sec(s):
        out = {}
        if s.X:
            out["X"] = [c.encode() if not c.is_const() else str(c.const_value().encode()) for c in s.X.comps]
        if s.xi:
            out["xi"] = format_form(s.xi)
        return out

    return {
        "phi": format_form(mp.phi), "psi": format_form(mp.psi),
        "e1": sec(mp.e1), "e2": sec(mp.e2),
        "lambda": mp.lam.encode(), "mu": mp.mu.encode(),
    }


def exp_pair(n, theta, eta, R):
    phi = theta.scale(I).exp()
    return MixedPair(phi, eta.wedge(phi), GenSection.form(eta), GenSection.vector(R))


def compact_transform(t):
    return {"B": format_form(t.B), "b": format_form(t.b), "a": format_form(t.a)}


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def representable_transform(seed, quads):
    """First seeded invariant (B,b,a) keeping every deformed mu rational."""
    rng = SplitMix64(seed)
    fi = FrameAlgebra(5, "invariant")
    while True:
        t = BbaTransform(random_form(rng, fi, 2), random_form(rng, fi, 1), random_form(rng, fi, 1))
        try:
            return t, [transform_sekiya(t, q) for q in quads]
        except UnrepresentableDeformation:
            continue


def cosymplectic():
    n = 5
    theta = blade(n, (1, 2)) + blade(n, (3, 4))
    mp = exp_pair(n, theta, eps(n, 5), Vector.basis(n, 5))
    return {
        "frame": {"dim": 5, "mode": "invariant"},
        "forms": {"theta": format_form(theta), "eta": "e5"},
        "twists": {"zero": {}},
        "mixed_pairs": {"cosymplectic": compact_pair(mp)},
        "quadruples": {"cosymplectic": {"from": "cosymplectic", "theta": "e12 + e34", "eta": "e5", "R": [0, 0, 0, 0, 1]}},
        "transforms": {
            "B_shift": {"B": "e13 - 2*e25"},
            "bba": {"B": "e12", "b": "e3", "a": "e4"},
        },
        "sections": {"sample": {"X": [1, 0, 2, 0, 0], "f": 1, "g": -1, "xi": "e2 + 3*e5"}},
    }


def contact():
    n = 3
    mp = exp_pair(n, blade(n, (1, 2)), eps(n, 3), Vector.basis(n, 3))
    return {
        "frame": {"nil": "(0,0,12)"},
        "forms": {"eta": "e3", "d_eta": "e12"},
        "twists": {"zero": {}, "contact": {"H2": "e12"}},
        "mixed_pairs": {"contact": compact_pair(mp)},
        "transforms": {"b_eta": {"b": "e3"}, "b_eta_shifted": {"B": "e12", "b": "e1 + e3"}},
        "cech": {
            "two_patch": {"patches": ["U", "V"], "data": {"U": "b_eta", "V": "b_eta_shifted"}},
            "three_patch_bad": {
                "patches": ["U", "V", "W"],
                "data": {"U": "b_eta", "V": "b_eta_shifted", "W": "b_eta"},
                "overlaps": {"U,V": {"b": "-e1"}, "V,W": {"b": "e1"}, "W,U": {"B": "e12"}},
            },
        },
    }


def nilmanifold():
    n = 7
    Om = eps(n, 1) + eps(n, 2).scale(I)
    B = blade(n, (2, 6)) - blade(n, (3, 5)) + blade(n, (3, 6)) - blade(n, (4, 5))
    w = blade(n, (3, 6)) + blade(n, (4, 5))
    phi = (B + w.scale(I)).exp().wedge(Om)
    eta = eps(n, 7)
    mp = MixedPair(phi, eta.wedge(phi), GenSection.form(eta), GenSection.vector(Vector.basis(n, 7)))
    return {
        "frame": {"nil": "(0,0,12,13,14+23,34+52)", "circle": "0"},
        "forms": {"Omega": format_form(Om), "B": format_form(B), "omega": format_form(w)},
        "twists": {"zero": {}},
        "mixed_pairs": {"nil_circle": compact_pair(mp)},
    }


def type_jump():
    n = 5
    z1 = Poly.var(n, 1) + Poly.var(n, 2).scale(I)
    dz1 = eps(n, 1) + eps(n, 2).scale(I)
    dz2 = eps(n, 3) + eps(n, 4).scale(I)
    phi = Polyform(n, {(): z1}) + dz1.wedge(dz2)
    dt = eps(n, 5)
    return {
        "frame": {"dim": 5, "mode": "coordinate"},
        "sample_points": [[0, 0, 0, 0, 0], [1, 0, 0, 0, 0]],
        "twists": {"zero": {}},
        "mixed_pairs": {"z1_plus_dz1dz2": {
            "phi": phi.encode(), "psi": dt.wedge(phi).encode(),
            "e1": {"xi": "e5"}, "e2": {"X": ["0", "0", "0", "0", "1"]},
        }},
    }


def cokahler():
    n = 5
    theta = blade(n, (1, 2)) + blade(n, (3, 4))
    R = Vector.basis(n, 5)
    J = [[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0]]
    q1 = cosymplectic_quadruple(theta, eps(n, 5), R)
    q2 = complex_quadruple(J, eps(n, 5), R)
    t, (d1, d2) = representable_transform(5, (q1, q2))
    from gcontact import GenContactMetric

    m = GenContactMetric.make(identity(n))
    dual = t_dualize_metric(m)
    return {
        "frame": {"dim": 5, "mode": "invariant"},
        "quadruples": {
            "J1": {"from": "cosymplectic", "theta": "e12 + e34", "eta": "e5", "R": [0, 0, 0, 0, 1]},
            "J2": {"from": "complex", "J": J, "eta": "e5", "R": [0, 0, 0, 0, 1]},
            "J1_deformed": d1.encode(), "J2_deformed": d2.encode(),
            "J1_dual": t_dualize_quadruple(q1).encode(), "J2_dual": t_dualize_quadruple(q2).encode(),
        },
        "transforms": {"deform": compact_transform(t)},
        "metrics": {
            "flat": {"g": identity(n)},
            "flat_deformed": {"g": identity(n), "transform": "deform"},
            "flat_dual": {"g": identity(n), "h": dual.h.encode()},
        },
    }


def calabi_yau():
    n = 4
    omega = blade(n, (1, 2)) + blade(n, (3, 4))
    Om = (eps(n, 1) + eps(n, 2).scale(I)).wedge(eps(n, 3) + eps(n, 4).scale(I))
    return {
        "frame": {"dim": 4, "mode": "invariant"},
        "forms": {"omega": format_form(omega), "exp_i_omega": format_form(omega.scale(I).exp()), "Omega": format_form(Om)},
    }


DOCS = {
    "cosymplectic.json": cosymplectic, "contact_heisenberg.json": contact,
    "nilmanifold_circle.json": nilmanifold, "type_jump_r5.json": type_jump,
    "cokahler_flat.json": cokahler, "calabi_yau_torus.json": calabi_yau,
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in DOCS.items():
        (OUT / name).write_text(json.dumps(build(), indent=1) + "\n", encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main()
