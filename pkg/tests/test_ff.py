import pytest

from polarb.ff import field_make, field_of_order, least_irreducible


def brute_force_irreducible_quadratics_gf2():
    """Oracle: factor every monic quadratic over GF(2) by trying linear roots."""
    out = []
    for c1 in range(2):
        for c0 in range(2):
            has_root = any((a * a + c1 * a + c0) % 2 == 0 for a in range(2))
            if not has_root:
                out.append((c0, c1))
    return out


def test_gf4_defining_polynomial_is_the_unique_irreducible_quadratic():
    assert brute_force_irreducible_quadratics_gf2() == [(1, 1)]
    assert field_make(2, 2).poly == (1, 1)  # x^2 + x + 1


def test_least_irreducible_is_minimal_by_code():
    # over GF(3): x^2 (code 0) and x^2+1 (code 1) -- the latter has no root
    assert least_irreducible(3, 2) == (1, 0)


def test_primitive_element_order_gf9():
    f9 = field_make(3, 2)
    x = 1
    seen = set()
    for _ in range(8):
        x = f9.mul(x, f9.primitive)
        seen.add(x)
    assert x == 1 and len(seen) == 8


def test_prime_field_gf2():
    f2 = field_make(2, 1)
    assert f2.order == 2
    assert f2.add(1, 1) == 0
    assert f2.mul(1, 1) == 1


@pytest.mark.parametrize("order", [4, 8, 9, 16, 25, 27, 49, 64, 81])
def test_field_axioms_exhaustive(order):
    f = field_of_order(order)
    n = f.order
    add, mul = f.add, f.mul
    # inverses and identities
    for a in range(n):
        assert add(a, 0) == a
        assert mul(a, 1) == a
        assert add(a, f.neg(a)) == 0
        if a:
            assert mul(a, f.inv(a)) == 1
    # commutativity
    for a in range(n):
        for b in range(a, n):
            assert add(a, b) == add(b, a)
            assert mul(a, b) == mul(b, a)
    # associativity and distributivity over all triples
    for a in range(n):
        for b in range(n):
            ab_add = add(a, b)
            ab_mul = mul(a, b)
            for c in range(n):
                assert add(ab_add, c) == add(a, add(b, c))
                assert mul(ab_mul, c) == mul(a, mul(b, c))
                assert mul(a, add(b, c)) == add(ab_mul, mul(a, c))


def test_conjugate_on_gf4():
    f4 = field_make(2, 2)
    w = 2  # the class of x
    assert f4.conjugate(w) == f4.mul(w, w)
    assert f4.conjugate(0) == 0
    assert f4.conjugate(1) == 1


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2)])
def test_conjugate_is_an_involutive_automorphism(p, k):
    f = field_make(p, k)
    for a in range(f.order):
        assert f.conjugate(f.conjugate(a)) == a
        for b in range(f.order):
            assert f.conjugate(f.mul(a, b)) == f.mul(f.conjugate(a), f.conjugate(b))
            assert f.conjugate(f.add(a, b)) == f.add(f.conjugate(a), f.conjugate(b))


def test_conjugate_requires_square_order():
    f8 = field_make(2, 3)
    with pytest.raises(ValueError):
        f8.conjugate(3)


def test_field_make_rejects_bad_parameters():
    with pytest.raises(ValueError):
        field_make(4, 1)  # not prime
    with pytest.raises(ValueError):
        field_make(2, 17)  # above the 2^16 ceiling
    with pytest.raises(ValueError):
        field_of_order(12)  # not a prime power
