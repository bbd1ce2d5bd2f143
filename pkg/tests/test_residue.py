import pytest

from endolab.errors import NotPrime, EvenCharacteristic, UnsupportedDegree, ZeroArgument, WrongField
from endolab.residue import (
    FiniteField,
    MultCharacter,
    QuadExtension,
    eval_add_char,
    eval_mult_char,
    make_field,
    norm_trace,
)


def test_make_field_f3():
    k = make_field(3)
    assert k.q == 3 and k.gen.a == 2 and k.eps.a == 2


def test_make_field_f7_generator_by_enumeration():
    k = make_field(7)
    # oracle: smallest g whose order mod 7 is 6
    def order(g):
        x, m = g, 1
        while x != 1:
            x = x * g % 7
            m += 1
        return m

    smallest = next(g for g in range(2, 7) if order(g) == 6)
    assert smallest == 3
    assert k.gen.a == 3


def test_make_field_f9():
    k = make_field(3, 2)
    assert k.q == 9
    assert (k.gen ** 8) == k.one and (k.gen ** 4) != k.one


@pytest.mark.parametrize(
    "p, f, exc",
    [(4, 1, NotPrime), (2, 1, EvenCharacteristic), (5, 3, UnsupportedDegree)],
)
def test_make_field_rejects(p, f, exc):
    with pytest.raises(exc):
        FiniteField(p, f)


def test_eps_is_nonsquare():
    for p, f in [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2)]:
        k = make_field(p, f)
        assert k.eps ** ((k.q - 1) // 2) == -k.one


def test_omega0_values():
    k = make_field(7)
    w0 = k.omega0()
    assert abs(eval_mult_char(w0, k.eps) + 1) < 1e-12
    triv = k.trivial_char()
    for x in k.units():
        assert abs(eval_mult_char(triv, x) - 1) < 1e-12
    # (-1)^((7-1)/2) = -1 by the hand oracle
    assert pow(-1, 3) == -1
    assert abs(w0(k.coerce(-1)) + 1) < 1e-12


def test_mult_char_at_zero_raises():
    k = make_field(5)
    with pytest.raises(ZeroArgument):
        k.omega0()(k.zero)


def test_additive_character():
    k3 = make_field(3)
    assert abs(eval_add_char(k3, k3.zero) - 1) < 1e-12
    assert abs(sum(eval_add_char(k3, x) for x in k3.elements())) < 1e-12
    # psi over F_9 at sqrt(eps): trace is 0, so the value is 1
    k9 = make_field(3, 2)
    root = k9.elem(0, 1)
    _, tr = norm_trace(root)
    assert tr.is_zero()
    assert abs(eval_add_char(k9, root) - 1) < 1e-12


def test_psi_additive():
    k = make_field(7)
    xs = k.elements()
    for x in xs[:4]:
        for y in xs[3:]:
            assert abs(k.psi(x + y) - k.psi(x) * k.psi(y)) < 1e-12


def test_norm_trace_prime_subfield():
    k9 = make_field(3, 2)
    for a in range(3):
        nr, tr = norm_trace(k9.elem(a))
        assert nr.a == (a * a) % 3 and tr.a == (2 * a) % 3
    with pytest.raises(WrongField):
        norm_trace(make_field(5).one)


def test_norm_surjective_and_kernel_size():
    k9 = make_field(3, 2)
    k3 = make_field(3)
    image = set()
    kernel = 0
    for x in k9.units():
        nr, _ = norm_trace(x)
        image.add(nr.a)
        if nr.a == 1:
            kernel += 1
    assert image == {1, 2}
    assert kernel == 3 + 1


@pytest.mark.parametrize("p,f", [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (7, 2), (11, 2), (13, 2)])
def test_character_orthogonality(p, f):
    k = make_field(p, f)
    for idx in range(1, min(k.q - 1, 6)):
        chi = MultCharacter(k, idx)
        assert abs(sum(chi(x) for x in k.units())) < 1e-10


@pytest.mark.parametrize("p,f", [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (7, 2), (11, 2), (13, 2)])
def test_omega0_matches_squares(p, f):
    k = make_field(p, f)
    squares = {(x * x).key() for x in k.units()}
    w0 = k.omega0()
    for x in k.units():
        expected = 1 if x.key() in squares else -1
        assert abs(w0(x) - expected) < 1e-12


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_lifted_characters_match_direct_quadratic_field(p):
    """psi o Tr and chi o Nr through the generic extension agree with direct
    evaluation in F_{p^2}."""
    k = make_field(p)
    k2 = make_field(p, 2)
    ext = QuadExtension(k)
    chi = MultCharacter(k, 1)
    for x in k2.elements():
        if x.is_zero():
            continue
        pair = (k.elem(x.a), k.elem(x.b))
        nr, tr = norm_trace(x)
        assert ext.norm(pair).a == nr.a
        assert abs(ext.psi_tilde(pair) - k2.psi(x)) < 1e-12
        assert abs(ext.chi_tilde(chi, pair) - chi(k.elem(nr.a))) < 1e-12


def test_eps_tilde_has_norm_eps():
    for p in (3, 5, 7):
        k = make_field(p)
        ext = QuadExtension(k)
        assert ext.norm(ext.eps_tilde()) == k.eps
