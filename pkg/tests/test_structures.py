import pytest
from hypothesis import given, settings, strategies as st

from gcontact import (
    I, BbaTransform, CechDatum, ContactSection, GenContactMetric, GenSection, MixedPair, Poly,
    Polyform, Scalar, SekiyaQuadruple, Twists, Vector, blade, eps,
)
from gcontact.courant import dorfman_contact, pairing_contact, random_mc_twists, validate_maurer_cartan
from gcontact.frame import FrameAlgebra, coordinate_frame, parse_nil
from gcontact.sections import SplitMix64, random_contact_section, random_form
from gcontact.spinor import clifford_contact, mukai_mixed, twisted_differential, validate_mixed_pair
from gcontact.structures import (
    DegenerateError, FrameEndo, MetricError, StructureError, UnrepresentableDeformation,
    assemble_jinv, check_admissible, check_cokahler, check_einstein_pairing, complex_quadruple,
    compose_transforms, cosymplectic_quadruple, curvature_of, lift_product, t_dualize_circle,
    t_dualize_metric, t_dualize_quadruple, transform_mixed_pair, transform_sekiya, transform_section,
    transform_twists, validate_cech, validate_metric, validate_sekiya,
)

seeds = st.integers(0, 10_000)
F5 = FrameAlgebra(5, "invariant")
THETA = blade(5, (1, 2)) + blade(5, (3, 4))
R5 = Vector.basis(5, 5)
J5 = [[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0]]


def ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def rand_transform(rng, frame):
    return BbaTransform(random_form(rng, frame, 2), random_form(rng, frame, 1), random_form(rng, frame, 1))


def representable(seed, quads):
    rng = SplitMix64(seed)
    while True:
        t = rand_transform(rng, F5)
        try:
            return t, [transform_sekiya(t, q) for q in quads]
        except UnrepresentableDeformation:
            continue


@pytest.fixture
def q1():
    return cosymplectic_quadruple(THETA, eps(5, 5), R5)


@pytest.fixture
def q2():
    return complex_quadruple(J5, eps(5, 5), R5)


# -- endomorphisms and quadruples -----------------------------------------------


def test_frame_endo_algebra():
    e = FrameEndo.identity(2)
    assert e @ e == e and (e + e) - e == e
    G = e.gram()
    assert G @ G == e
    with pytest.raises(Exception):
        FrameEndo(2, "E", [[1]])


def test_quadruples_validate(q1, q2):
    for q in (q1, q2):
        assert validate_sekiya(q).ok
        J = assemble_jinv(q)
        assert J @ J == -FrameEndo.identity(5)


def test_perturbed_phi_fails(q1):
    rows = [list(r) for r in q1.Phi.rows]
    rows[0][2] = rows[0][2] + Poly.const(5, 1)
    bad = SekiyaQuadruple(FrameEndo(5, "TM", rows), q1.e1, q1.e2, q1.lam, q1.mu)
    rep = validate_sekiya(bad)
    fails = {c.name for c in rep.failures()}
    assert "sekiya.Phi_squared" in fails
    assert all(c.residual is not None for c in rep.failures())
    with pytest.raises(StructureError):
        assemble_jinv(bad)


def test_quadruple_round_trip(q1):
    assert SekiyaQuadruple.decode(5, q1.encode()) == q1


# -- (B,b,a)-transforms -----------------------------------------------------------


@settings(max_examples=15)
@given(seeds)
def test_group_law_and_inverse(seed):
    fr = coordinate_frame(3)
    rng = SplitMix64(seed)
    t1, t2 = rand_transform(rng, fr), rand_transform(rng, fr)
    s = random_contact_section(rng, fr)
    assert transform_section(t2, transform_section(t1, s)) == transform_section(compose_transforms(t2, t1), s)
    assert transform_section(t1.inverse(), transform_section(t1, s)) == s
    assert pairing_contact(*(transform_section(t1, x) for x in (s, s))) == pairing_contact(s, s)


def test_spinor_action_is_equivariant(cosymplectic_pair):
    rng = SplitMix64(12)
    fr = FrameAlgebra(5, "invariant")
    p = cosymplectic_pair.pair
    for _ in range(4):
        t = rand_transform(rng, fr)
        s = random_contact_section(rng, fr)
        lhs = transform_mixed_pair(t, clifford_contact(s, p))
        assert lhs == clifford_contact(transform_section(t, s), transform_mixed_pair(t, p))
        assert mukai_mixed(transform_mixed_pair(t, p), transform_mixed_pair(t, p)) == mukai_mixed(p, p)


def test_flipped_spinor_action_is_not_equivariant(cosymplectic_pair):
    rng = SplitMix64(12)
    t = rand_transform(rng, F5)
    s = random_contact_section(rng, F5)
    p = cosymplectic_pair.pair
    lhs = transform_mixed_pair(t, clifford_contact(s, p), "flipped")
    assert lhs != clifford_contact(transform_section(t, s), transform_mixed_pair(t, p, "flipped"))


def test_transformed_twists(frame3):
    rng = SplitMix64(5)
    for _ in range(3):
        tw, _ = random_mc_twists(rng, frame3)
        t = rand_transform(rng, frame3)
        tw2 = transform_twists(frame3, t, tw)
        assert validate_maurer_cartan(frame3, tw2).ok
        p = (random_form(rng, frame3, 0) + random_form(rng, frame3, 2), random_form(rng, frame3, 1))
        lhs = twisted_differential(frame3, transform_mixed_pair(t, p), tw2)
        assert lhs == transform_mixed_pair(t, twisted_differential(frame3, p, tw))
        a, b = random_contact_section(rng, frame3), random_contact_section(rng, frame3)
        up = dorfman_contact(frame3, transform_section(t, a), transform_section(t, b), tw2)
        assert up == transform_section(t, dorfman_contact(frame3, a, b, tw))


def test_curvature_from_potentials():
    h = parse_nil("(0,0,12)")
    t = BbaTransform(Polyform.zero(3), eps(3, 3), Polyform.zero(3))
    assert curvature_of(h, t) == Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))


def test_flipped_twist_formula_breaks_maurer_cartan():
    fr = coordinate_frame(4)
    rng = SplitMix64(0)
    tw, _ = random_mc_twists(rng, fr)
    t = rand_transform(rng, fr)
    out = transform_twists(fr, t, tw, "flipped", check=False)
    assert not validate_maurer_cartan(fr, out).ok


def test_sekiya_transform_is_conjugation(q1):
    t, (d1,) = representable(5, [q1])
    assert assemble_jinv(d1) == t.matrix() @ assemble_jinv(q1) @ t.inverse().matrix()
    assert validate_sekiya(d1).ok


def test_b_only_transform_keeps_lambda(q1):
    t = BbaTransform(blade(5, (1, 3)), Polyform.zero(5), Polyform.zero(5))
    assert transform_sekiya(t, q1).lam == q1.lam


def test_unrepresentable_deformation(q1):
    rng = SplitMix64(5)
    hits = 0
    for _ in range(20):
        try:
            transform_sekiya(rand_transform(rng, F5), q1)
        except UnrepresentableDeformation:
            hits += 1
    assert hits > 0


# -- metrics and coKahler ----------------------------------------------------------


def test_metric_validation():
    assert validate_metric(GenContactMetric.make(ident(3))).ok
    bad = [[1, 2, 0], [2, 1, 0], [0, 0, 1]]
    assert not validate_metric(GenContactMetric.make(bad)).ok
    assert not validate_metric(GenContactMetric.make([[1, 1, 0], [0, 1, 0], [0, 0, 1]])).ok


def test_cokahler_flat_deformed_and_dual(q1, q2):
    m = GenContactMetric.make(ident(5))
    assert check_cokahler(q1, q2, m).ok
    t, (d1, d2) = representable(5, [q1, q2])
    assert check_cokahler(d1, d2, GenContactMetric.make(ident(5), 1, t)).ok
    assert check_cokahler(t_dualize_quadruple(q1), t_dualize_quadruple(q2), t_dualize_metric(m)).ok


def test_cokahler_mismatched_pairs_fail(q1, q2):
    m = GenContactMetric.make([[2 if i == j == 0 else int(i == j) for j in range(5)] for i in range(5)])
    assert not check_cokahler(q1, q2, m).ok
    assert not check_cokahler(q1, q1, GenContactMetric.make(ident(5))).ok


# -- Einstein constant -------------------------------------------------------------------


def test_einstein_constants():
    w = blade(4, (1, 2)) + blade(4, (3, 4))
    Om = (eps(4, 1) + eps(4, 2).scale(I)).wedge(eps(4, 3) + eps(4, 4).scale(I))
    e = w.scale(I).exp()
    assert check_einstein_pairing(e, Om) == Scalar(1)
    assert check_einstein_pairing(e, e.scale(2)) == Scalar(1) / 4
    with pytest.raises(DegenerateError):
        check_einstein_pairing(e, Polyform.zero(4))


# -- products and T-duality ---------------------------------------------------------------


def test_lift_product(contact_pair):
    w = blade(2, (1, 2))
    out = lift_product(contact_pair, w.scale(I).exp())
    assert out.n == 5 and validate_mixed_pair(out).ok
    assert lift_product(contact_pair, Polyform.scalar(0, 1)) == contact_pair
    with pytest.raises(StructureError):
        lift_product(contact_pair, Polyform.zero(2))


def test_tduality_is_an_involution(cosymplectic_pair, contact_pair):
    t = Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))
    for mp, tw in ((cosymplectic_pair, Twists.zero(5)), (contact_pair, t)):
        dual, tw2, _, _ = t_dualize_circle(mp, tw)
        assert validate_mixed_pair(dual).ok
        assert tw2 == tw.swapped()
        assert t_dualize_circle(dual, tw2)[0] == mp


def test_tduality_swaps_twists_and_conjugates(contact_pair):
    h = parse_nil("(0,0,12)")
    t = Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))
    dual, tw2, _, _ = t_dualize_circle(contact_pair, t)
    assert twisted_differential(h, dual.pair, tw2) == (Polyform.zero(3),) * 2


def test_admissibility():
    assert not check_admissible(blade(5, (1, 2, 3)), (1, 2)).ok
    assert check_admissible(blade(5, (3, 4, 5)), (1, 2)).ok
    res = check_admissible(blade(5, (1, 2, 3)), (1, 2)).failures()[0].residual
    assert res[0]["residual"] == eps(5, 3)


# -- Cech data -------------------------------------------------------------------------------


def _heis_cech(overlaps=None):
    z = Polyform.zero(3)
    U = BbaTransform(z, eps(3, 3), z)
    V = BbaTransform(blade(3, (1, 2)), eps(3, 1) + eps(3, 3), z)
    W = BbaTransform(z, eps(3, 3) - eps(3, 2), z)
    return CechDatum(("U", "V", "W"), {"U": U, "V": V, "W": W}, overlaps or {})


def test_cech_consistent_data():
    h = parse_nil("(0,0,12)")
    expected = Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))
    assert validate_cech(h, _heis_cech(), expected).ok


def test_cech_inconsistent_overlap_fails():
    h = parse_nil("(0,0,12)")
    expected = Twists(Polyform.zero(3), blade(3, (1, 2)), Polyform.zero(3))
    z = Polyform.zero(3)
    cd = _heis_cech({("W", "U"): BbaTransform(blade(3, (1, 2)), z, z)})
    rep = validate_cech(h, cd, expected)
    assert not rep.ok and all(c.residual is not None for c in rep.failures())


def test_cech_round_trip():
    cd = _heis_cech({("U", "V"): BbaTransform(Polyform.zero(3), eps(3, 1), Polyform.zero(3))})
    assert CechDatum.decode(3, cd.encode()) == cd
