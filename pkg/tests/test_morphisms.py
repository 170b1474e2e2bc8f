"""Generator maps: certification, catalog, composition, negative results."""

import random

import pytest

from macforge.groups import (
    Element,
    central_level as elem_level,
    element_order,
    family,
    in_z,
    invert,
    mul,
    power,
    project,
    z1_elements,
)
from macforge.morphisms import (
    GenMap,
    apply,
    aut_inverse,
    catalog,
    catalog_encode,
    centrality_level,
    check_endomorphism,
    compose,
    compose_all,
    identity_map,
    induce_on_quotient,
    inner,
    is_automorphism,
)

J2 = family("J", 2, 1)
H2 = family("H", 2, 1)
K2 = family("K", 2, 1)


def rand_elem(fam, rng):
    ri, rj, rk = fam.ranges
    return Element(fam, rng.randrange(ri), rng.randrange(rj), rng.randrange(rk))


def test_apply_fixtures():
    ident = identity_map(J2)
    rng = random.Random(0)
    for _ in range(20):
        x = rand_elem(J2, rng)
        assert apply(ident, x) == x
    th = catalog(J2, "theta")
    assert apply(th, J2.A()) == J2.B()
    iA = inner(J2.A())
    assert apply(iA, J2.B()) == mul(mul(invert(J2.A()), J2.B()), J2.A())


def test_apply_multiplicative_when_endomorphism():
    rng = random.Random(1)
    maps = [catalog(J2, "delta1"), catalog(J2, "theta"),
            catalog(H2, "gamma_H"), catalog(K2, "phi_K"),
            catalog(family("K", 3, 1), "f_n", 5)]
    for f in maps:
        fam = f.family
        for _ in range(2500):
            x, y = rand_elem(fam, rng), rand_elem(fam, rng)
            assert apply(f, mul(x, y)) == mul(apply(f, x), apply(f, y))


def test_check_endomorphism_witness():
    bad = GenMap(H2, mul(H2.A(), H2.B()), H2.B())
    ok, wit = check_endomorphism(bad)
    assert not ok
    # the lemma's computed values: (AB)^[AB,B] = A^5 B^5 C^4 vs (AB)^5 = A^5 B^5 C^2
    assert wit["lhs"].triple == (5, 5, 4)
    assert wit["rhs"].triple == (5, 5, 2)
    assert is_automorphism(catalog(J2, "theta"))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_catalog_certifies(m):
    J, H, K = family("J", m, 1), family("H", m, 1), family("K", m, 1)
    names_J = ["theta", "delta1", "delta2", "delta3"] + (["sigma_J"] if m > 2 else [])
    for n in names_J:
        assert is_automorphism(catalog(J, n)), (m, n)
    for n in ["nu", "gamma_H"] + (["sigma_H"] if m > 2 else []):
        assert is_automorphism(catalog(H, n)), (m, n)
    for n in ["mu", "phi_K", "psi1", "psi2", "psi3", "psi4", "psi5"]:
        assert is_automorphism(catalog(K, n)), (m, n)
    assert is_automorphism(catalog(K, "f_n", 3))
    s, u = J.params.s, J.params.u
    assert is_automorphism(catalog(J, "omega", power(J.A(), 2 * u), J.identity()))
    assert is_automorphism(catalog(J, "psi_J", power(J.C(), s), power(J.A(), 2 * u)))
    assert is_automorphism(catalog(H, "pi_H", power(H.A(), 2 * s), power(H.C(), s)))
    assert is_automorphism(catalog(K, "gamma_K", K.C(), power(K.B(), s)))
    rng = random.Random(2)
    for _ in range(10):
        zs = z1_elements(J)
        x, y = rng.choice(zs), rng.choice(zs)
        assert is_automorphism(catalog(J, "omega", x, y))
        zs = z1_elements(K)
        assert is_automorphism(catalog(K, "omega", rng.choice(zs), rng.choice(zs)))


def test_catalog_m1():
    J1 = family("J", 1, 1)
    assert is_automorphism(catalog(J1, "theta"))
    assert is_automorphism(catalog(J1, "inner", J1.A()))
    assert is_automorphism(catalog(J1, "omega", power(J1.A(), 2), J1.identity()))
    with pytest.raises(ValueError):
        catalog(J1, "delta3")
    with pytest.raises(ValueError):
        catalog(family("K", 1, 1), "phi_K")


def test_catalog_constraints():
    with pytest.raises(ValueError):
        catalog(J2, "sigma_J")           # needs m > 2
    with pytest.raises(ValueError):
        catalog(H2, "sigma_H")
    with pytest.raises(ValueError):
        catalog(family("J", 3, 1), "sigma_J", 2)   # k must be odd at m = 3
    with pytest.raises(ValueError):
        catalog(family("J", 4, 1), "sigma_J", 1)   # k must be even at m > 3
    with pytest.raises(ValueError):
        catalog(K2, "f_n", 2)            # n must be odd
    with pytest.raises(ValueError):
        catalog(K2, "omega", K2.C(), K2.identity())  # c is not central in K
    with pytest.raises(ValueError):
        catalog(H2, "theta")
    with pytest.raises(ValueError):
        catalog(J2, "no_such_name")


def test_catalog_fixture_images():
    d1 = catalog(J2, "delta1")
    assert d1.imgA == mul(J2.A(), power(J2.B(), 4))
    assert d1.imgB == mul(power(J2.B(), -7), power(J2.A(), 4))
    d3 = catalog(J2, "delta3")
    assert d3.imgA == mul(power(J2.A(), 3), power(J2.B(), 2))
    assert d3.imgB == mul(power(J2.B(), 3), power(J2.A(), 2))
    mu = catalog(K2, "mu")
    assert apply(mu, K2.A()) == K2.B()
    assert apply(mu, K2.C()) == invert(K2.C())
    assert catalog_encode(J2, "delta3") == "delta3[]@J[2,1]"


def test_compose_and_inverse():
    th = catalog(J2, "theta")
    assert compose(th, th) == identity_map(J2)
    assert compose(th, identity_map(J2)) == th
    assert aut_inverse(th) == th
    assert aut_inverse(identity_map(J2)) == identity_map(J2)
    iA, iB = inner(J2.A()), inner(J2.B())
    assert compose(iA, iB) == inner(mul(J2.A(), J2.B()))
    K3 = family("K", 3, 1)
    assert aut_inverse(catalog(K3, "f_n", 3)) == catalog(K3, "f_n", 11)
    f = catalog(J2, "delta1")
    assert compose(f, aut_inverse(f)) == identity_map(J2)
    with pytest.raises(ValueError):
        compose(th, catalog(H2, "nu"))


def test_centrality_levels():
    assert centrality_level(identity_map(J2)) == 0
    om = catalog(J2, "omega", power(J2.A(), 8), power(J2.A(), 8))
    assert centrality_level(om) == 1
    assert centrality_level(inner(J2.C())) == 3
    ps = catalog(J2, "psi_J", J2.identity(), power(J2.C(), 2))
    assert centrality_level(ps) <= 2
    # a delta in Aut_i iff the conjugator is in Z_{i+1}
    rng = random.Random(3)
    for fam in (J2, H2, K2):
        for _ in range(40):
            g = rand_elem(fam, rng)
            assert centrality_level(inner(g)) == max(0, elem_level(g) - 1)


def test_central_and_inner_commute():
    rng = random.Random(4)
    for fam in (J2, K2):
        zs = z1_elements(fam)
        for _ in range(25):
            om = catalog(fam, "omega", rng.choice(zs), rng.choice(zs))
            g = inner(rand_elem(fam, rng))
            assert compose(om, g) == compose(g, om)


def test_f_n_level_iff():
    # f_n is 2-central iff n = 1 mod 2^(m-1), all odd n below 2^(2m-1)
    for m in (2, 3):
        K = family("K", m, 1)
        s = K.params.s
        for n in range(1, 2 ** (2 * m - 1), 2):
            f = catalog(K, "f_n", n)
            assert (centrality_level(f) <= 2) == (n % s == 1 % s), (m, n)


def test_mu_inverts_f_n():
    for m in (2, 3):
        K = family("K", m, 1)
        mu = catalog(K, "mu")
        for n in (3, 5, 2 ** (2 * m - 1) - 1):
            f = catalog(K, "f_n", n)
            conjd = compose_all(mu, f, mu)
            assert conjd == aut_inverse(f)
            assert centrality_level(compose(conjd, f)) <= 2


def test_induce_on_quotient():
    th = catalog(J2, "theta")
    assert induce_on_quotient(th) == catalog(H2, "nu")
    iA = inner(J2.A())
    assert induce_on_quotient(iA) == inner(project(J2.A()))
    # levels drop by at least one from level >= 2 downward
    for f in (catalog(J2, "delta1"), catalog(J2, "delta2"),
              catalog(J2, "psi_J", power(J2.C(), 2), J2.identity())):
        lv = centrality_level(f)
        if lv >= 2:
            assert centrality_level(induce_on_quotient(f)) <= lv - 1


def test_delta3_lands_in_psi_coset():
    # project twice to K; the image is the 2-central map of the pair
    # (a^s b^s, a^s b^(s(2d+s-3))) modulo Inn(K) Aut_1(K)
    for m in (2, 3):
        J = family("J", m, 1)
        K = family("K", m, 1)
        s = J.params.s
        d2m = 1 if m == 2 else 0
        f = induce_on_quotient(induce_on_quotient(catalog(J, "delta3")))
        x = mul(power(K.A(), s), power(K.B(), s))
        y = mul(power(K.A(), s), power(K.B(), s * (2 * d2m + s - 3)))
        gpair = catalog(K, "gamma_K", x, y)
        diff = compose(f, aut_inverse(gpair))
        # membership in Inn(K) Aut_1(K): some inner map agrees mod Aut_1
        members = [inner(xi) for xi in K.elements()]
        assert any(centrality_level(compose(aut_inverse(i), diff)) <= 1
                   for i in members)
        # the coset itself is nontrivial: f is not in Inn(K) Aut_1(K)
        assert not any(centrality_level(compose(aut_inverse(i), f)) <= 1
                       for i in members)


def test_negative_mmlin():
    # A -> A B z, B -> B w never extends to an automorphism of H at m = 2:
    # the 16 central pairs break the first defining relation outright, and
    # all 64 pairs over <C> fail certification
    H = family("H", 2, 1)
    z1 = z1_elements(H)
    assert len(z1) == 4
    for z in z1:
        for w in z1:
            f = GenMap(H, mul(mul(H.A(), H.B()), z), mul(H.B(), w))
            ok, _ = check_endomorphism(f)
            assert not ok
    c_pow = [power(H.C(), t) for t in range(8)]
    fails = 0
    for z in c_pow:
        for w in c_pow:
            f = GenMap(H, mul(mul(H.A(), H.B()), z), mul(H.B(), w))
            if not (check_endomorphism(f)[0] and is_automorphism(f)):
                fails += 1
    assert fails == 64


def test_negative_gammas():
    # A -> A^(1+s) u1, B -> A^s B u2 never an endomorphism, u_i in Z_3(J)
    rng = random.Random(11)
    for m in (2, 3):
        J = family("J", m, 1)
        s = J.params.s
        z3gens = [power(J.A(), 2 * s), power(J.B(), 2 * s), power(J.C(), s)]
        ords = [element_order(g) for g in z3gens]
        for _ in range(60):
            u1, u2 = J.identity(), J.identity()
            for g, o in zip(z3gens, ords):
                u1 = mul(u1, power(g, rng.randrange(o)))
                u2 = mul(u2, power(g, rng.randrange(o)))
            assert in_z(u1, 3) and in_z(u2, 3)
            f = GenMap(J, mul(power(J.A(), 1 + s), u1),
                       mul(mul(power(J.A(), s), J.B()), u2))
            assert not check_endomorphism(f)[0], (m, u1, u2)


@pytest.mark.parametrize("m", [3, 4])
def test_muchos_iff_grid(m):
    # A -> A^a B^x z, B -> B^b A^y z' extends to an automorphism exactly when
    # (x = y = 0 and a = b = 1 mod 2s) or (x = y = r and a = b = 1+r mod 2s)
    H = family("H", m, 1)
    s, r = H.params.s, H.params.require_r()
    z1 = z1_elements(H)
    z_choices = [z1[0], z1[1], z1[-1]]
    checked = 0
    for d in (0, 1):
        for e in (0, 1):
            x, y = r * d, r * e
            for a in range(1, 2 * s, 2):
                for b in range(1, 2 * s, 2):
                    if (a * b) % s != 1 % s:
                        continue
                    predicted = (d == 0 and e == 0 and a % (2 * s) == 1 and b % (2 * s) == 1) or (
                        d == 1 and e == 1 and a % (2 * s) == (1 + r) % (2 * s)
                        and b % (2 * s) == (1 + r) % (2 * s))
                    for z in z_choices:
                        for zp in z_choices:
                            f = GenMap(
                                H,
                                mul(mul(power(H.A(), a), power(H.B(), x)), z),
                                mul(mul(power(H.B(), b), power(H.A(), y)), zp),
                            )
                            extends = check_endomorphism(f)[0] and is_automorphism(f)
                            assert extends == predicted, (m, d, e, a, b)
                            checked += 1
    assert checked > 0


def test_image_closure_cardinality_small():
    # a certified automorphism is surjective; the trivial endomorphism is not
    for fam in (K2, family("J", 1, 1)):
        f = catalog(fam, "mu" if fam.tag == "K" else "theta")
        image = {apply(f, x) for x in fam.elements()}
        assert len(image) == fam.order
    triv = GenMap(K2, K2.identity(), K2.identity())
    assert check_endomorphism(triv)[0]
    assert not is_automorphism(triv)
    assert len({apply(triv, x) for x in K2.elements()}) == 1
