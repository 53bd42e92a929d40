"""Field contexts, scalar arithmetic, embeddings and root finding."""

from fractions import Fraction

import pytest

from charplane.errors import (InvalidCharacteristic, UnsupportedExtension,
                              NotSupported, ZeroInput)
from charplane.field import (field_make, roots_in_splitting_field, is_prime,
                             u_eval, u_trim, u_sqfree_decomposition)


def test_is_prime_small():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                      47, 53, 59]
    assert is_prime(2 ** 31 - 1)
    assert not is_prime(2 ** 32 + 1)


def test_field_make_validation():
    with pytest.raises(InvalidCharacteristic):
        field_make(4)
    with pytest.raises(InvalidCharacteristic):
        field_make(1)
    with pytest.raises(UnsupportedExtension):
        field_make(0, 2)
    with pytest.raises(UnsupportedExtension):
        field_make(5, 0)


def test_char0_scalars():
    Q = field_make(0)
    a = Q.scalar(Fraction(3, 4))
    b = Q.scalar(2)
    assert (a + b).v == Fraction(11, 4)
    assert (a * b).v == Fraction(3, 2)
    assert (a / b).v == Fraction(3, 8)
    assert (-a).v == Fraction(-3, 4)
    assert Q.zero.is_zero() and Q.one.is_one()
    assert Q.size is None
    assert Q.nth_scalar(7).v == 7


def test_prime_field_arithmetic():
    F7 = field_make(7)
    # frozen inverse table of F_7
    inv = {1: 1, 2: 4, 3: 5, 4: 2, 5: 3, 6: 6}
    for a, b in inv.items():
        assert F7.scalar(a).inv() == F7.scalar(b)
    assert F7.scalar(3) + F7.scalar(5) == F7.scalar(1)
    assert F7.scalar(3) * F7.scalar(5) == F7.scalar(1)
    assert F7.scalar(7).is_zero()
    assert (F7.scalar(2) ** 3) == F7.scalar(1)
    with pytest.raises(ZeroDivisionError):
        F7.zero.inv()


def test_modulus_is_lexicographically_first():
    # degree 3 over F_2: t^3, t^3+1, t^3+t all have a root in F_2 or factor;
    # t^3+t+1 is the first rootless (hence irreducible) candidate
    F8 = field_make(2, 3)
    assert F8.modulus == (1, 1, 0, 1)
    # exhaustive: every earlier candidate is reducible (degree 3 <=> has root)
    for n in range(3):
        coeffs = [n & 1, (n >> 1) & 1, (n >> 2) & 1, 1]
        vals = {x: (coeffs[0] + coeffs[1] * x + coeffs[2] * x * x + x ** 3) % 2
                for x in (0, 1)}
        assert 0 in vals.values()

    F9 = field_make(3, 2)
    assert F9.modulus == (1, 0, 1)     # t^2 + 1, rootless mod 3

    F16 = field_make(2, 4)
    assert F16.modulus == (1, 1, 0, 0, 1)   # t^4 + t + 1


def test_extension_field_exhaustive():
    F9 = field_make(3, 2)
    assert F9.size == 9
    elems = [F9.nth_scalar(n) for n in range(9)]
    assert F9.nth_scalar(9) is None
    assert len(set(e.v for e in elems)) == 9
    one = F9.one
    for e in elems:
        assert e ** 9 == e                      # Fermat for F_9
        if not e.is_zero():
            assert e * e.inv() == one
        assert (e.pth_root()) ** 3 == e         # inverse Frobenius
    # frobenius is additive and multiplicative
    for a in elems:
        for b in elems:
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_roots_simple_prime_field():
    F7 = field_make(7)
    # (t - 2)^2 = t^2 - 4t + 4
    u = [F7.scalar(4), F7.scalar(-4), F7.one]
    roots, ctx = roots_in_splitting_field(u, F7)
    assert ctx == F7
    assert roots == [(F7.scalar(2), 2)]


def test_roots_need_extension():
    # t^2 + 1 over F_3 splits in F_9; exhaustive oracle over the 9 elements
    # says the roots are exactly +-t (coefficient tuples (0,1) and (0,2))
    F3 = field_make(3)
    u = [F3.one, F3.zero, F3.one]
    roots, ctx = roots_in_splitting_field(u, F3)
    assert ctx.p == 3 and ctx.k == 2
    found = sorted(r.v for r, _ in roots)
    assert found == [(0, 1), (0, 2)]
    assert all(m == 1 for _, m in roots)
    # exhaustive check in F_9 itself
    hits = [z for n in range(9)
            if (z := ctx.nth_scalar(n)) is not None
            and (z * z + ctx.one).is_zero()]
    assert sorted(h.v for h in hits) == found


def test_roots_zero_poly_rejected():
    F5 = field_make(5)
    with pytest.raises(ZeroInput):
        roots_in_splitting_field([F5.zero, F5.zero], F5)
    assert roots_in_splitting_field([F5.scalar(3)], F5) == ([], F5)


def test_roots_reconstruction_char_p():
    # u = (t-1)^3 (t-4) (t^2+1) over F_7; t^2+1 has no F_7 root (-1 is not
    # a square mod 7) so the splitting field is F_49
    F7 = field_make(7)
    one = F7.one

    def mul(a, b):
        out = [F7.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return out

    lin1 = [F7.scalar(-1), one]
    lin4 = [F7.scalar(-4), one]
    quad = [one, F7.zero, one]
    u = mul(mul(mul(mul(lin1, lin1), lin1), lin4), quad)
    roots, ctx = roots_in_splitting_field(u, F7)
    assert ctx.p == 7 and ctx.k == 2
    assert sum(m for _, m in roots) == 6
    assert sorted(m for _, m in roots) == [1, 1, 1, 3]
    # every reported root actually kills u in the big field
    ub = [c.embed(ctx) for c in u]
    for r, _ in roots:
        assert u_eval(ub, r).is_zero()
    # reconstruction: product of (t - r)^m is u (u is monic)
    acc = [ctx.one]

    def mul_big(a, b):
        out = [ctx.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return out

    for r, m in roots:
        for _ in range(m):
            acc = mul_big(acc, [-r, ctx.one])
    assert [a.v for a in acc] == [b.v for b in ub]


def test_roots_deterministic_across_calls():
    F5 = field_make(5)
    u = [F5.scalar(2), F5.zero, F5.zero, F5.one]   # t^3 + 2
    first, ctx1 = roots_in_splitting_field(u, F5)
    second, ctx2 = roots_in_splitting_field(u, F5)
    assert ctx1 == ctx2
    assert [(r.v, m) for r, m in first] == [(r.v, m) for r, m in second]
    assert sum(m for _, m in first) == 3


def test_roots_char0():
    Q = field_make(0)

    def poly(*ints):
        return [Q.scalar(Fraction(c)) for c in ints]

    # (2t - 1)^2 (t + 3) = 4t^3 + 8t^2 - 11t + 3
    roots, ctx = roots_in_splitting_field(poly(3, -11, 8, 4), Q)
    assert ctx == Q
    assert [(r.v, m) for r, m in roots] == [(Fraction(-3), 1),
                                            (Fraction(1, 2), 2)]
    # square discriminant quadratic: t^2 - 9/4
    u = [Q.scalar(Fraction(-9, 4)), Q.zero, Q.one]
    roots, _ = roots_in_splitting_field(u, Q)
    assert [(r.v, m) for r, m in roots] == [(Fraction(-3, 2), 1),
                                            (Fraction(3, 2), 1)]
    # irrational quadratic factors stay rootless
    roots, _ = roots_in_splitting_field(poly(-2, 0, 1), Q)
    assert roots == []
    # ... even when mixed with a rational root: (t-1)(t^2-2)
    roots, _ = roots_in_splitting_field(poly(2, -2, -1, 1), Q)
    assert [(r.v, m) for r, m in roots] == [(Fraction(1), 1)]
    # degree >= 3 irreducible is out of scope
    with pytest.raises(NotSupported):
        roots_in_splitting_field(poly(-2, 0, 0, 1), Q)


def test_embedding_homomorphism():
    F4 = field_make(2, 2)
    F16 = field_make(2, 4)
    elems = [F4.nth_scalar(n) for n in range(4)]
    for a in elems:
        for b in elems:
            assert (a + b).embed(F16) == a.embed(F16) + b.embed(F16)
            assert (a * b).embed(F16) == a.embed(F16) * b.embed(F16)
    # generator image satisfies the old modulus t^2 + t + 1
    g = F4.from_coeffs((0, 1)).embed(F16)
    assert (g * g + g + F16.one).is_zero()
    # canonical choice: the least root in coefficient order
    other = g * g
    assert (other * other + other + F16.one).is_zero()
    assert g.sort_key() < other.sort_key()
    # embeddings are cached and stable
    g2 = F4.from_coeffs((0, 1)).embed(F16)
    assert g2 == g
    # no embedding between different characteristics or non-divisible degrees
    with pytest.raises(UnsupportedExtension):
        F4.nth_scalar(1).embed(field_make(3, 2))
    F8 = field_make(2, 3)
    with pytest.raises(UnsupportedExtension):
        F4.nth_scalar(2).embed(F8)


def test_sqfree_decomposition_char_p_power():
    # t^6 = (t^3)^2 over F_3 exercises the p-th power path: t^6 = (t^2)^3
    F3 = field_make(3)
    u = [F3.zero] * 6 + [F3.one]
    parts = u_sqfree_decomposition(u, F3)
    # single squarefree layer t with multiplicity 6
    assert len(parts) == 1
    part, mult = parts[0]
    assert mult == 6
    assert [c.v for c in u_trim(part)] == [(), (1,)]


def test_scalar_misc():
    F5 = field_make(5)
    a = F5.scalar(3)
    assert a == 3 and a != 2
    assert -a == F5.scalar(2)
    assert 1 - a == F5.scalar(3)
    assert 2 * a == F5.scalar(1)
    assert (6 / a).v == F5.scalar(2).v
    assert a ** 0 == F5.one
    assert hash(F5.scalar(3)) == hash(F5.scalar(8))
    assert repr(F5.scalar(3)) == '3'
