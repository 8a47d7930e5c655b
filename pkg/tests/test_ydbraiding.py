from fractions import Fraction

import pytest

from nichols_lab import catalog
from nichols_lab.exactnum import QQ, GF, rank_and_kernel
from nichols_lab.rack import dihedral
from nichols_lab.ydbraiding import (
    CharacterError, CharacterSpec, Cocycle, CocycleError, braid_equation_holds,
    cocycle_from_character, one_plus_c_matrix, parse_generator_name,
    quad_profile, quadratic_bound,
)


def test_parse_generator_names():
    assert parse_generator_name("x1") == [1]
    assert parse_generator_name("x4x2") == [4, 2]
    with pytest.raises(ValueError):
        parse_generator_name("y1")


def test_character_spec_parse():
    spec = CharacterSpec.parse("x1=-1,x4=1")
    assert spec.values == {"x1": -1, "x4": 1}
    with pytest.raises(ValueError):
        CharacterSpec({"x1": 2})


def test_dihedral_constant_cocycle():
    c = cocycle_from_character(dihedral(3), CharacterSpec({"x1": -1}), QQ)
    assert all(x == Fraction(-1) for row in c.q for x in row)


def test_diagonal_is_rho_x1():
    for name in catalog.BUILTIN_NAMES:
        for spec in catalog.ADMISSIBLE_CHARACTERS[name]:
            c = cocycle_from_character(catalog.builtin(name), CharacterSpec(spec), QQ)
            for i in range(1, c.rack.size + 1):
                assert c.value(i, i) == Fraction(-1)


def test_affine_cocycles_constant():
    for name in ("Aff(5,2)", "Aff(5,3)", "Aff(7,3)", "Aff(7,5)"):
        c = cocycle_from_character(catalog.builtin(name), CharacterSpec({"x1": -1}), QQ)
        assert all(x == Fraction(-1) for row in c.q for x in row)


def test_a_has_two_distinct_cocycles():
    a = catalog.builtin("A")
    c1 = cocycle_from_character(a, CharacterSpec({"x1": -1, "x4": 1}), QQ)
    c2 = cocycle_from_character(a, CharacterSpec({"x1": -1, "x4": -1}), QQ)
    assert c1.q != c2.q
    c1.validate()
    c2.validate()


def test_inconsistent_character_rejected():
    # on the tetrahedral rack (x4 x2)^2 = x1^4 admits any sign pair, but a
    # non-generating spec must fail
    with pytest.raises(CharacterError):
        cocycle_from_character(catalog.builtin("T"), CharacterSpec({"x1": -1}), QQ)


def test_invalid_cocycle_table_rejected():
    d3 = dihedral(3)
    q = [[1, 1, 1], [1, 1, 1], [1, 1, -1]]
    with pytest.raises(CocycleError):
        Cocycle(d3, QQ, q)


def test_direct_cocycle_table_accepted():
    d3 = dihedral(3)
    q = [[-1] * 3] * 3
    c = Cocycle(d3, QQ, q)
    assert braid_equation_holds(c)


def test_braid_equation_for_all_catalog_braidings():
    for name in catalog.BUILTIN_NAMES:
        for spec in catalog.ADMISSIBLE_CHARACTERS[name]:
            for field in (QQ, GF(2), GF(3)):
                c = cocycle_from_character(catalog.builtin(name),
                                           CharacterSpec(spec), field)
                assert braid_equation_holds(c)


def test_specialize_preserves_signs():
    c = cocycle_from_character(catalog.builtin("T"),
                               CharacterSpec({"x1": -1, "x4x2": 1}), QQ)
    c2 = c.specialize(GF(2))
    assert all(x == 1 for row in c2.q for x in row)
    c3 = c.specialize(GF(3))
    assert all(x == 2 for row in c3.q for x in row)


def test_one_plus_c_rank_on_dihedral():
    c = cocycle_from_character(dihedral(3), CharacterSpec({"x1": -1}), QQ)
    rank, kernel = rank_and_kernel(one_plus_c_matrix(c))
    assert rank == 4 and len(kernel) == 5


def test_quadratic_kernels_match_catalog():
    for name in catalog.BUILTIN_NAMES:
        for spec in catalog.ADMISSIBLE_CHARACTERS[name]:
            c = cocycle_from_character(catalog.builtin(name), CharacterSpec(spec), QQ)
            qp = quad_profile(c, cross_check=True)
            assert qp.kernel_dim == catalog.EXPECTED_QUADRATIC_KERNEL[name]
            d = c.rack.size
            assert qp.dim_b2 == d * d - qp.kernel_dim
            assert qp.condition_holds


def test_char2_diagonal_always_contributes():
    c = cocycle_from_character(catalog.builtin("T"),
                               CharacterSpec({"x1": -1, "x4x2": 1}), GF(2))
    qp = quad_profile(c)
    for (pair, size, has) in qp.orbit_flags:
        if size == 1:
            assert has


def test_constant_negative_involutive_small_orbits():
    c = cocycle_from_character(catalog.builtin("C"),
                               CharacterSpec({"x1": -1, "x8": -1, "x9": -1}), QQ)
    assert c.rack.is_involutive()
    qp = quad_profile(c)
    for (pair, size, has) in qp.orbit_flags:
        if size <= 2:
            assert has


def test_wrong_sign_breaks_the_inequality():
    c = cocycle_from_character(dihedral(3), CharacterSpec({"x1": 1}), QQ)
    qp = quad_profile(c)
    assert not qp.condition_holds
    # all sign choices on the affine rack other than -1 are impossible:
    # the centralizer is generated by x1, so +1 gives the trivial character
    c2 = cocycle_from_character(catalog.builtin("Aff(5,2)"), CharacterSpec({"x1": 1}), QQ)
    assert not quad_profile(c2).condition_holds


def test_quadratic_bound_values():
    bound, S, threshold, ok = quadratic_bound(dihedral(3), 1)
    assert bound == Fraction(5)  # 3 diagonal lines + 2 off-diagonal orbits
    assert S == Fraction(1, 3) and threshold == 1 and ok

    bound, S, threshold, ok = quadratic_bound(catalog.builtin("T"), 2)
    assert S == Fraction(1, 2) and threshold == Fraction(1, 2) and ok

    _, S, threshold, ok = quadratic_bound(catalog.builtin("C"), 2)
    assert S == 1 and threshold == Fraction(1, 2) and not ok


def test_quad_profile_kernel_matches_bound_for_saturating_cases():
    # with every orbit contributing, the kernel equals the counting bound
    c = cocycle_from_character(dihedral(3), CharacterSpec({"x1": -1}), QQ)
    qp = quad_profile(c)
    assert qp.kernel_dim == qp.bound_value == 5
