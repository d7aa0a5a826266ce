import pytest
from hypothesis import given, settings, strategies as st

from gcontact import (
    I, ContactSection, GenSection, MixedPair, Poly, Polyform, Scalar, Twists, Vector, blade, eps,
)
from gcontact.courant import pairing_contact, pairing_tm, random_mc_twists, reduce_differential_oracle
from gcontact.frame import FrameAlgebra, coordinate_frame, parse_nil
from gcontact.sections import SplitMix64, random_contact_section, random_form, random_gen_section
from gcontact.spinor import (
    ParityError, annihilator, check_annihilator_involutive, clifford_contact, clifford_tm,
    geometric_type, mukai, mukai_mixed, pure_spinor_pairing, solve_dirac_relators,
    solve_involutive, solve_involutive_spinor, twisted_differential, validate_mixed_pair,
)

seeds = st.integers(0, 10_000)


def test_clifford_examples():
    assert clifford_tm(GenSection.vector(Vector.basis(3, 1)), blade(3, (1, 2))) == eps(3, 2)
    assert clifford_tm(GenSection.form(eps(3, 1)), Polyform.scalar(3, 1)) == eps(3, 1)
    phi, psi = Polyform.scalar(3, 1) + blade(3, (1, 2)), eps(3, 3)
    z = Vector.zero(3)
    f_only = ContactSection(z, Poly.const(3, 1), Poly.zero(3), Polyform.zero(3))
    g_only = ContactSection(z, Poly.zero(3), Poly.const(3, 1), Polyform.zero(3))
    assert clifford_contact(f_only, (phi, psi)) == (psi, Polyform.zero(3))
    assert clifford_contact(g_only, (phi, psi)) == (Polyform.zero(3), phi)


@settings(max_examples=30)
@given(seeds)
def test_clifford_squares(seed):
    fr = coordinate_frame(3)
    rng = SplitMix64(seed)
    s = random_gen_section(rng, fr)
    a = random_form(rng, fr, 1) + random_form(rng, fr, 2)
    assert clifford_tm(s, clifford_tm(s, a)) == Polyform(3, {0: pairing_tm(s, s)}).wedge(a)
    c = random_contact_section(rng, fr)
    p = (random_form(rng, fr, 0) + random_form(rng, fr, 2), random_form(rng, fr, 1))
    sq = clifford_contact(c, clifford_contact(c, p))
    k = Polyform(3, {0: pairing_contact(c, c)})
    assert sq == (k.wedge(p[0]), k.wedge(p[1]))


def test_mukai_examples():
    w = blade(2, (1, 2))
    assert mukai(w.scale(I).exp(), w.scale(-I).exp()) == blade(2, (1, 2)).scale(Scalar(0, -2))
    top = blade(4, (1, 2, 3, 4))
    assert mukai(Polyform.scalar(4, 1), top) == top
    assert mukai_mixed((Polyform.scalar(4, 1), Polyform.zero(4)), (Polyform.zero(4), top)) in (top, -top)


@settings(max_examples=20)
@given(seeds)
def test_mukai_b_field_invariance(seed):
    fr = FrameAlgebra(4, "invariant")
    rng = SplitMix64(seed)
    B = random_form(rng, fr, 2)
    a = random_form(rng, fr, 0) + random_form(rng, fr, 2)
    b = random_form(rng, fr, 2) + random_form(rng, fr, 4)
    eB = (-B).exp()
    assert mukai(eB.wedge(a), eB.wedge(b)) == mukai(a, b)


def test_parity_error():
    with pytest.raises(ParityError):
        mukai_mixed((Polyform.scalar(2, 1), Polyform.scalar(2, 1)), (eps(2, 1), Polyform.scalar(2, 1)))


def test_cosymplectic_pure_pairing(cosymplectic_pair):
    assert pure_spinor_pairing(cosymplectic_pair.pair) == blade(5, (1, 2, 3, 4, 5)).scale(Scalar(0, 8))


def test_cosymplectic_annihilator_and_relators(cosymplectic_pair):
    a = annihilator(cosymplectic_pair.pair)[0]
    assert a.complex_rank == 6 and a.real_dimension == 12
    v1, v2 = solve_dirac_relators(cosymplectic_pair.pair)
    assert v1 == GenSection.form(eps(5, 5)) and v2 == GenSection.vector(Vector.basis(5, 5))


def test_dim_one_annihilator_and_relators():
    p = (Polyform.scalar(1, 1), eps(1, 1))
    assert annihilator(p)[0].complex_rank == 2
    assert solve_dirac_relators(p) == (GenSection.form(eps(1, 1)), GenSection.vector(Vector.basis(1, 1)))
    assert solve_dirac_relators((Polyform.scalar(1, 1), Polyform.zero(1))) is None


def test_geometric_types():
    w = blade(4, (1, 2)) + blade(4, (3, 4))
    assert geometric_type(w.scale(I).exp()) == 0
    Om = (eps(4, 1) + eps(4, 2).scale(I)).wedge(eps(4, 3) + eps(4, 4).scale(I))
    assert geometric_type(Om) == 2


def test_type_jump(data_dir):
    from gcontact import load_document

    doc = load_document(data_dir / "type_jump_r5.json")
    p = doc.mixed_pair("z1_plus_dz1dz2").pair
    origin, off = doc.sample_points
    assert (geometric_type(p, origin), geometric_type(p, off)) == (2, 0)


def test_coordinate_annihilator_needs_points():
    p = (Polyform(2, {0: Poly.var(2, 1)}), eps(2, 1))
    with pytest.raises(ValueError):
        annihilator(p)


def test_validate_examples(cosymplectic_pair, contact_pair):
    assert validate_mixed_pair(cosymplectic_pair).ok
    assert validate_mixed_pair(contact_pair).ok
    Om = eps(3, 1) + eps(3, 2).scale(I)
    almost = MixedPair(Om, eps(3, 3).wedge(Om), GenSection.form(eps(3, 3)), GenSection.vector(Vector.basis(3, 3)))
    assert validate_mixed_pair(almost).ok


def test_rotated_pair_with_lambda(cosymplectic_pair):
    # mu = 5/4, lambda = 3/4: psi picks up the phase (4 - 3i)/5
    kappa = Scalar(4, -3) / 5
    mp = MixedPair(cosymplectic_pair.phi, cosymplectic_pair.psi.scale(kappa),
                   cosymplectic_pair.e1, cosymplectic_pair.e2, Scalar(3, 0) / 4, Scalar(5) / 4)
    assert validate_mixed_pair(mp).ok
    wrong = MixedPair(mp.phi, mp.psi, mp.e1, mp.e2, Scalar(3) / 4, Scalar(1))
    assert not validate_mixed_pair(wrong).ok


def test_broken_compatibility_is_reported(cosymplectic_pair):
    mp = MixedPair(cosymplectic_pair.phi, cosymplectic_pair.psi.scale(2), cosymplectic_pair.e1, cosymplectic_pair.e2)
    names = {c.name for c in validate_mixed_pair(mp).failures()}
    assert "mixed_pair.compat.mu*e1.phi=(1+i*lambda)*psi" in names


def test_twisted_differential_examples(cosymplectic_pair, contact_pair):
    z5 = Twists.zero(5)
    assert twisted_differential(FrameAlgebra(5, "invariant"), cosymplectic_pair.pair, z5) == (Polyform.zero(5),) * 2
    h = parse_nil("(0,0,12)")
    t = Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))
    assert twisted_differential(h, contact_pair.pair, t) == (Polyform.zero(3),) * 2


def test_twisted_differential_matches_oracle(frame3):
    rng = SplitMix64(31)
    for _ in range(5):
        t, _ = random_mc_twists(rng, frame3)
        p = (random_form(rng, frame3, 0) + random_form(rng, frame3, 2), random_form(rng, frame3, 1))
        assert twisted_differential(frame3, p, t) == reduce_differential_oracle(frame3, t.F, t, *p)


def test_involutivity_witnesses(cosymplectic_pair):
    fr = FrameAlgebra(5, "invariant")
    w = solve_involutive(fr, cosymplectic_pair.pair, Twists.zero(5))
    assert w is not None and not w.V
    w = blade(4, (1, 2)) + blade(4, (3, 4))
    assert not solve_involutive_spinor(FrameAlgebra(4, "invariant"), w.scale(I).exp()).V


def test_rescaled_pair_has_only_a_rational_witness(cosymplectic_pair):
    fr = coordinate_frame(5)
    h = Polyform(5, {0: Poly.const(5, 1) + Poly.var(5, 1)})
    p = (h.wedge(cosymplectic_pair.phi), h.wedge(cosymplectic_pair.psi))
    assert solve_involutive(fr, p, Twists.zero(5), degree_bound=2) is None
    # h * d(h p) = (0, 0, 0, dh) . (h p): the witness is dh / h
    dh = ContactSection(Vector.zero(5), Poly.zero(5), Poly.zero(5), fr.d(h))
    lhs = tuple(h.wedge(x) for x in twisted_differential(fr, p, Twists.zero(5)))
    assert lhs == clifford_contact(dh, p)


def test_non_closed_theta_is_not_involutive():
    fr = coordinate_frame(5)
    theta = Polyform(5, {(1, 2): Poly.var(5, 3)}) + blade(5, (3, 4))
    phi = theta.scale(I).exp()
    assert solve_involutive(fr, (phi, eps(5, 5).wedge(phi)), Twists.zero(5), degree_bound=2) is None


def test_theorem_checks(cosymplectic_pair, contact_pair, heisenberg):
    rep = check_annihilator_involutive(FrameAlgebra(5, "invariant"), cosymplectic_pair, Twists.zero(5))
    assert rep.ok
    t = Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))
    assert check_annihilator_involutive(heisenberg, contact_pair, t).ok


def test_theorem_negative_control(contact_pair, heisenberg):
    rep = check_annihilator_involutive(heisenberg, contact_pair, Twists.zero(3))
    assert rep.get("theorem.proof_identity").status == "PASS"
    assert rep.get("theorem.closure").status == "FAIL"
