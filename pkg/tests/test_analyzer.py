import math
from itertools import product

import numpy as np
import pytest
import sympy

from cosetlab import analyzer as az
from cosetlab.permcalc import (
    PermGroup,
    Permutation,
    cyclic_group,
    dihedral_group,
    direct_product,
    sl2_3,
    symmetric_group,
)

from conftest import fp_image


def g36():
    return fp_image("lemma2(8,9)")


def g324():
    return fp_image("lemma4(8,9)")


def enumerable_groups():
    return {
        "g36": g36(),
        "g324": g324(),
        "s4": symmetric_group(4),
        "sl23": sl2_3(),
        "c12": cyclic_group(12),
        "d18": dihedral_group(9),
        "d8": dihedral_group(4),
        "d10": fp_image("dihedral(5)"),
        "c3xc3": direct_product(cyclic_group(3), cyclic_group(3)),
        "h98": fp_image("lemma2(9,8)"),
    }


GROUPS = enumerable_groups()


def test_spectrum_of_order_36_group():
    assert az.order_spectrum(g36()).counts == {1: 1, 2: 9, 3: 8, 4: 18}


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_spectrum_sums_and_cauchy(name):
    g = GROUPS[name]
    spec = az.order_spectrum(g)
    assert sum(spec.counts.values()) == g.order()
    primes = set(sympy.factorint(g.order()))
    # every prime divisor of the order is an element order, and nothing else is
    assert spec.primes == primes
    assert all(g.order() % k == 0 for k in spec.counts)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_class_equation(name):
    g = GROUPS[name]
    classes = az.conjugacy_classes(g)
    assert sum(len(c) for c in classes) == g.order()
    for c in classes:
        assert g.order() % len(c) == 0


@pytest.mark.parametrize(
    "g, label",
    [
        (cyclic_group(1), "1"),
        (cyclic_group(12), "C12"),
        (direct_product(cyclic_group(3), cyclic_group(3)), "C3 x C3"),
        (direct_product(cyclic_group(2), cyclic_group(6)), "C2 x C6"),
        (symmetric_group(3), "S3"),
        (dihedral_group(9), "D18"),
    ],
)
def test_identify_small(g, label):
    assert az.identify_group(g) == label


def test_identify_corpus_groups():
    assert az.identify_group(g36()) == "(C3 x C3) : C4"
    assert az.identify_group(g324()) == "(C9 x C9) : C4"
    assert az.identify_group(fp_image("lemma2(9,8)")) == "PSL(2,17)"
    assert az.identify_group(fp_image("lemma4(9,9)")) == "1"


def test_simple_table_orders_are_consistent():
    # each listed simple group order is the order of a known group of that name
    assert az.SIMPLE_GROUPS_BY_ORDER[60] == "A5"
    for q in (7, 8, 11, 13, 17, 19, 16):
        d = math.gcd(2, q - 1)
        order = q * (q * q - 1) // d
        assert az.SIMPLE_GROUPS_BY_ORDER[order] == f"PSL(2,{q})"


def test_abelian_invariants_oracle():
    # C4 x C6 = C2 x C12
    g = direct_product(cyclic_group(4), cyclic_group(6))
    assert az.abelian_invariants(g) == [2, 12]
    with pytest.raises(az.NotAbelianError):
        az.abelian_invariants(symmetric_group(3))


def test_derived_and_power_subgroups():
    k = az.derived_subgroup(g324())
    assert k.order() == 81 and k.is_abelian()
    assert az.power_subgroup(k, 3).order() == 9
    assert az.exponent_of(k) == 9
    assert az.derived_subgroup(symmetric_group(4)).order() == 12


# --------------------------------------------------------------------------
# Frobenius: fixed-point criterion against the subgroup-intersection definition


def frobenius_by_definition(g: PermGroup, h: PermGroup) -> bool:
    """1 < H < G and H meets each conjugate H^x (x outside H) trivially."""
    hs = {x.images for x in h.enumerate_elements()}
    if len(hs) in (1, g.order()):
        return False
    for x in g.enumerate_elements():
        if x.images in hs:
            continue
        conj = {y.conj(x).images for y in h.enumerate_elements()}
        if len(conj & hs) > 1:
            return False
    return True


ACTIONS = {
    "g36 on <t>": lambda: fp_image("lemma2(8,9)", ("t",)),
    "g324 on <t>": lambda: fp_image("lemma4(8,9)", ("t",)),
    "g36 on <x>": lambda: fp_image("lemma2(8,9)", ("x",)),
    "d10": lambda: dihedral_group(5),
    "d18": lambda: dihedral_group(9),
    "d8": lambda: dihedral_group(4),
    "s4": lambda: symmetric_group(4),
    "s3": lambda: symmetric_group(3),
    "a4": lambda: PermGroup([Permutation.from_cycles(4, (0, 1, 2)), Permutation.from_cycles(4, (1, 2, 3))]),
    "c5 regular": lambda: cyclic_group(5),
}


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_frobenius_criteria_agree(name):
    g = ACTIONS[name]()
    h = g.stabilizer(0)
    rep = az.frobenius_check(g)
    assert rep.verdict == frobenius_by_definition(g, h)
    if rep.verdict:
        assert rep.kernel_order * rep.complement_order == g.order()
        assert az.abstract_frobenius_criterion(g, rep.kernel, rep.complement)


def test_frobenius_examples():
    rep = az.frobenius_check(dihedral_group(5))
    assert rep.verdict and (rep.kernel_order, rep.complement_order) == (5, 2)
    rep = az.frobenius_check(symmetric_group(4))
    assert not rep.verdict
    assert rep.witness["fixed_points"] == 2
    rep = az.frobenius_check(fp_image("lemma4(8,9)", ("t",)))
    assert rep.verdict and (rep.kernel_order, rep.complement_order) == (81, 4)


def test_frobenius_needs_transitive():
    g = PermGroup([Permutation.from_cycles(4, (0, 1))])
    with pytest.raises(az.NotTransitiveError):
        az.frobenius_check(g)


# --------------------------------------------------------------------------
# hypothesis (H)


def h_by_brute_force(g):
    elems = list(g.enumerate_elements())
    small = [x for x in elems if x.order() <= 4]
    return all((x * y).order() <= 9 for x, y in product(small, small))


@pytest.mark.parametrize("name", ["g36", "g324", "s4", "c12", "sl23", "d18"])
def test_h2_matches_brute_force(name):
    g = GROUPS[name]
    assert az.check_hypothesis_H(g).h2 == h_by_brute_force(g)


def test_hypothesis_examples():
    for g in (g36(), g324(), symmetric_group(4)):
        r = az.check_hypothesis_H(g)
        assert r.holds and r.mode == "exhaustive"
    r = az.check_hypothesis_H(cyclic_group(12))
    assert not r.holds and r.mode == "exhaustive"
    w = r.witness
    assert (w["order_x"], w["order_y"], w["order_xy"]) == (3, 4, 12)


def test_hypothesis_subset_reading():
    # pi(C9) = {3} satisfies only the subset reading
    r = az.check_hypothesis_H(cyclic_group(9))
    assert not r.h1_equal and r.h1_subset
    assert r.holds_subset_reading and not r.holds


def test_hypothesis_sampling_is_seeded():
    g = fp_image("lemma2(9,8)")
    a = az.check_hypothesis_H(g, pair_bound=10, samples=500, seed=3)
    b = az.check_hypothesis_H(g, pair_bound=10, samples=500, seed=3)
    assert a.mode == "probabilistic"
    assert a.to_dict() == b.to_dict()


# --------------------------------------------------------------------------
# theorem checkers


def test_theorem1():
    v = az.theorem1_decompose(g36())
    assert v.applicable and v.conclusion_holds
    assert (v.data["O3"], v.data["C"]) == ("C3 x C3", "C4")
    v = az.theorem1_decompose(g324())
    assert v.applicable and v.conclusion_holds
    assert (v.data["O3"], v.data["C"]) == ("C9 x C9", "C4")
    v = az.theorem1_decompose(symmetric_group(4))
    assert not v.applicable
    assert v.witnesses[0]["centralizer_order"] == 4


def test_theorem2():
    assert az.theorem2_classify(g36()).case == "1"
    assert az.theorem2_classify(g324()).case == "1"
    v = az.theorem2_classify(symmetric_group(4))
    assert v.case == "3"
    assert v.data["O2_order"] == 4 and v.data["D"] == "S3"
    v = az.theorem2_classify(sl2_3())
    assert not v.applicable
    assert any(w.get("order") == 6 for w in v.witnesses)


def test_corollary1_and_omega():
    v = az.corollary1_check(g36())
    assert v.conclusion_holds
    assert v.data["Omega_order"] == 18 and v.data["Omega_exponent"] == 6 and v.data["quotient"] == "C2"
    v = az.corollary1_check(g324())
    assert v.conclusion_holds and v.data["Omega_order"] == 162
    assert az.omega_subgroup(g36()).order() == 18


def test_o_p_subgroups():
    assert az.o_p_subgroup(symmetric_group(4), 2).order() == 4
    assert az.o_p_subgroup(symmetric_group(4), 3).order() == 1
    assert az.o_p_subgroup(g324(), 3).order() == 81


def test_involution_centralizers():
    assert az.involution_centralizers_cyclic(g36()).verdict
    assert not az.involution_centralizers_cyclic(dihedral_group(4)).verdict


# --------------------------------------------------------------------------
# finite content of the lemmas


def test_theta_partition_and_pair_identities():
    g = g324()
    th = az.theta_partition(g)
    assert (len(th["theta"]), len(th["theta_inv"]), len(th["gamma4"])) == (81, 81, 162)
    assert th["disjoint"] and th["covers"]
    six = az.lemma6_identities(g, th["theta"])
    assert six["pairs"] == 6561 and six["failures"] == 0


def test_pair_identities_by_brute_force():
    g = g36()
    th = az.theta_partition(g)
    es = g.enumerate_elements()
    theta = [es[i] for i in th["theta"].tolist()]
    for t, u in product(theta, theta):
        assert ((t * u) ** 2).is_identity()
        assert ((t * ~u) ** 9).is_identity()
        assert ((t * u * u) ** 4).is_identity()


def test_involution_subgroup():
    r = az.involution_subgroup(g36())
    assert r["order"] == 18 and r["frobenius"] and r["label"] == "(C3 x C3) : C2"
    r = az.involution_subgroup(g324())
    assert r["order"] == 162 and r["frobenius"]


def test_involution_products():
    assert az.involution_products(g36())["product_orders"] == [1, 3]
    r = az.involution_products(g324())
    assert r["product_orders"] == [1, 3, 9] and r["single_class"]


def test_three_centralizers():
    assert az.three_centralizers(g324())["holds"]


def test_orders_divide_group_order_random_elements():
    import random

    for g in (g36(), g324(), fp_image("lemma2(9,8)")):
        rng = random.Random(0)
        n = g.order()
        orders = np.array([g.random_element(rng).order() for _ in range(10_000)])
        assert np.all(n % orders == 0)
