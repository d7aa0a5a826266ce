from fractions import Fraction

import pytest

from gcontact import ContactSection, GenSection, Poly, Polyform, Twists, Vector, blade, eps
from gcontact.courant import (
    TwistError, check_courant_axioms, contact_algebroid, dorfman_contact, dorfman_h,
    pairing_contact, pairing_tm, random_mc_twists, reduce_bracket_oracle, standard_algebroid,
    validate_maurer_cartan,
)
from gcontact.frame import coordinate_frame, parse_nil
from gcontact.sections import SplitMix64, random_contact_section

N = 3
Z = Polyform.zero(N)


def e(i):
    return Vector.basis(N, i)


def cs(X, f, g, xi):
    return ContactSection(X, Poly.const(N, f), Poly.const(N, g), xi)


def test_pairings():
    assert pairing_tm(GenSection(e(1), eps(N, 1)), GenSection(e(1), eps(N, 1))) == Poly.const(N, 1)
    assert not pairing_tm(GenSection(e(1), Z), GenSection(e(2), Z))
    assert pairing_tm(GenSection(e(1), eps(N, 2)), GenSection(e(2), eps(N, 1))) == Poly.const(N, 1)
    assert pairing_contact(cs(e(1), 1, 0, eps(N, 1)), cs(e(1), 0, 1, eps(N, 1))) == Poly.const(N, Fraction(3, 2))
    zero = Vector.zero(N)
    assert not pairing_contact(cs(zero, 1, 0, Z), cs(zero, 1, 0, Z))
    assert pairing_contact(cs(zero, 1, 0, Z), cs(zero, 0, 1, Z)) == Poly.const(N, Fraction(1, 2))


def test_dorfman_examples():
    fr = coordinate_frame(N)
    out = dorfman_h(fr, GenSection(e(1), Z), GenSection(e(2), Z), blade(N, (1, 2, 3)))
    assert out == GenSection(Vector.zero(N), -eps(N, 3))
    x1_e2 = Polyform(N, {(2,): Poly.var(N, 1)})
    out = dorfman_h(fr, GenSection(e(1), Z), GenSection(Vector.zero(N), x1_e2))
    assert out == GenSection(Vector.zero(N), eps(N, 2))


def test_contact_bracket_curvature_slot():
    fr = coordinate_frame(N)
    out = dorfman_contact(fr, cs(e(1), 0, 0, Z), cs(e(2), 0, 0, Z), Twists(Z, Z, blade(N, (1, 2))))
    assert out == cs(Vector.zero(N), -1, 0, Z)


def test_contact_bracket_embeds_standard_one():
    fr = coordinate_frame(N)
    rng = SplitMix64(4)
    H = blade(N, (1, 2, 3)).scale(3)
    for _ in range(5):
        a, b = random_contact_section(rng, fr), random_contact_section(rng, fr)
        a = ContactSection(a.X, Poly.zero(N), Poly.zero(N), a.xi)
        b = ContactSection(b.X, Poly.zero(N), Poly.zero(N), b.xi)
        out = dorfman_contact(fr, a, b, Twists(H, Z, Z))
        std = dorfman_h(fr, GenSection(a.X, a.xi), GenSection(b.X, b.xi), H)
        assert (out.X, out.xi) == (std.X, std.xi) and not out.f and not out.g


def test_maurer_cartan_failure_residual():
    rep = validate_maurer_cartan(coordinate_frame(5), Twists(Polyform.zero(5), blade(5, (1, 2)), blade(5, (3, 4))))
    assert not rep.ok
    assert rep.failures()[0].residual == blade(5, (1, 2, 3, 4))


def test_bracket_refuses_non_mc_twists():
    fr = coordinate_frame(5)
    z = Polyform.zero(5)
    bad = Twists(z, blade(5, (1, 2)), blade(5, (3, 4)))
    s = ContactSection.zero(5)
    with pytest.raises(TwistError):
        dorfman_contact(fr, s, s, bad)


@pytest.mark.parametrize("H", [None, blade(3, (1, 2, 3))])
def test_standard_axioms(H):
    assert check_courant_axioms(standard_algebroid(coordinate_frame(3), H), trials=10, seed=2).ok


def test_contact_axioms_random_twists(frame3):
    t, _ = random_mc_twists(SplitMix64(8), frame3)
    assert check_courant_axioms(contact_algebroid(frame3, t), trials=10, seed=3).ok


def test_corrupted_contact_bracket_fails_with_counterexample():
    fr = coordinate_frame(4)
    t, _ = random_mc_twists(SplitMix64(0), fr)
    assert t.H2.wedge(t.F)
    rep = check_courant_axioms(contact_algebroid(fr, t, corrupt="drop_twist"), trials=10, seed=1)
    fails = rep.failures()
    assert fails and all(f.residual is not None for f in fails)


def test_flipped_cross_terms_fail():
    fr = coordinate_frame(4)
    t, _ = random_mc_twists(SplitMix64(0), fr)
    assert not check_courant_axioms(contact_algebroid(fr, t, variant="flipped"), trials=10, seed=1).ok


def test_reduction_oracle(frame3):
    rng = SplitMix64(21)
    for _ in range(5):
        t, _ = random_mc_twists(rng, frame3)
        a, b = random_contact_section(rng, frame3), random_contact_section(rng, frame3)
        assert dorfman_contact(frame3, a, b, t) == reduce_bracket_oracle(frame3, t.F, t.H3, t.H2, a, b)


def test_axiom_report_is_deterministic():
    alg = contact_algebroid(parse_nil("(0,0,12)"), Twists(Z, blade(N, (1, 2)), Z))
    a = check_courant_axioms(alg, trials=5, seed=9).to_json()
    b = check_courant_axioms(alg, trials=5, seed=9).to_json()
    assert a == b
