import pytest

from nichols_lab import catalog, envgroup, permgroup
from nichols_lab.permgroup import (
    GroupTooLarge, abelianization_relations, centralizer, closure,
    conjugacy_class, cycle_structure, derived_subgroup, identity, inverse,
    mul, perm_from_cycles, perm_order,
)
from nichols_lab.exactnum import IntegerLattice, elementary_divisors


def s3():
    return closure([perm_from_cycles([(1, 2)], 3), perm_from_cycles([(1, 2, 3)], 3)])


def test_mul_applies_left_to_right():
    a = perm_from_cycles([(1, 2)], 3)
    b = perm_from_cycles([(2, 3)], 3)
    # apply a then b: 1 -> 2 -> 3
    assert mul(a, b)[0] == 3


def test_inverse_and_order():
    c = perm_from_cycles([(1, 2, 3, 4)], 4)
    assert mul(c, inverse(c)) == identity(4)
    assert perm_order(c) == 4


def test_empty_closure_is_trivial():
    g = closure([], degree=3)
    assert g.order == 1


def test_closure_of_dihedral_translations():
    g = catalog.builtin("D3").inner_group()
    assert g.order == 6  # the full symmetric group on three letters


def test_closure_of_rack_c_translations():
    g = catalog.builtin("C").inner_group()
    assert g.order == 120


def test_closure_cap():
    with pytest.raises(GroupTooLarge):
        closure([perm_from_cycles([(1, 2)], 6), perm_from_cycles([tuple(range(1, 7))], 6)],
                cap=10)


def test_closure_order_divides_factorial():
    import math
    for name in ("D3", "T", "B"):
        g = catalog.builtin(name).inner_group()
        assert math.factorial(g.degree) % g.order == 0


def test_centralizer_of_identity_is_whole_group():
    g = s3()
    assert centralizer(g, g.identity()).order == g.order


def test_centralizer_of_transposition_in_s3():
    g = s3()
    t = perm_from_cycles([(1, 2)], 3)
    assert centralizer(g, t).order == 2


def test_centralizer_requires_membership():
    g = closure([perm_from_cycles([(1, 2, 3)], 3)])
    with pytest.raises(ValueError):
        centralizer(g, perm_from_cycles([(1, 2)], 3))


def test_centralizer_in_tetrahedral_bar_group():
    bar = envgroup.bar_group(catalog.builtin("T"))
    assert bar.order == 24
    cen = centralizer(bar, bar.generators[0])
    assert cen.order == 6
    # orbit-stabilizer: centralizer order times class size = group order
    assert cen.order * len(conjugacy_class(bar, bar.generators[0])) == bar.order


def test_orbit_stabilizer_on_all_inner_groups():
    for name in catalog.BUILTIN_NAMES:
        g = catalog.builtin(name).inner_group()
        x = g.generators[0]
        assert centralizer(g, x).order * len(conjugacy_class(g, x)) == g.order


def test_translations_share_cycle_structure():
    for name in catalog.BUILTIN_NAMES:
        r = catalog.builtin(name)
        sigs = {cycle_structure(r.phi(i)) for i in range(1, r.size + 1)}
        assert len(sigs) == 1


def test_abelianization_of_cyclic_group():
    g = closure([perm_from_cycles([(1, 2)], 2)])
    rel = abelianization_relations(g, [g.generators[0]])
    assert rel == [[2]]


def test_abelianization_of_s3():
    g = s3()
    a = perm_from_cycles([(1, 2)], 3)
    b = perm_from_cycles([(1, 3)], 3)
    rel = abelianization_relations(g, [a, b])
    # abelianization is Z/2 with both generators in the nontrivial class
    assert elementary_divisors(rel) == [1, 2]
    assert IntegerLattice(2, rel).contains([1, -1])
    assert not IntegerLattice(2, rel).contains([1, 0])


def test_abelianization_requires_generators():
    g = s3()
    with pytest.raises(ValueError):
        abelianization_relations(g, [perm_from_cycles([(1, 2, 3)], 3)])


def test_rack_c_centralizer_identifies_x8_x9():
    hat = envgroup.hat_group(catalog.builtin("C"))
    cen = centralizer(hat, hat.generators[0])
    gens = [hat.generators[0], hat.generators[7], hat.generators[8]]
    rel = abelianization_relations(cen, gens)
    # the braid relation x8 x9 x8 = x9 x8 x9 forces x8 = x9 in the abelianization
    assert IntegerLattice(3, rel).contains([0, 1, -1])


def test_derived_subgroup_of_s3_is_a3():
    g = s3()
    assert derived_subgroup(g).order == 3
