import pytest

from flexion import (
    Bimould,
    LayerMismatchError,
    NotInvertibleError,
    Q,
    RatFun,
    apply_unary,
    bm_equal,
    flat,
    gen_random_bimould,
    invmu,
    linear_combine,
    mu,
    sharp,
    uvar,
    vvar,
)

inv = RatFun.inv_linform


def pa(truncation=4):
    return Bimould.single(1, inv({uvar(1): 1}), truncation=truncation, weight=0)


def pi(truncation=4):
    return Bimould.single(1, inv({vvar(1): 1}), truncation=truncation, weight=0)


def test_component_validation():
    with pytest.raises(ValueError):
        Bimould({1: RatFun.variable(vvar(2))}, 3)
    with pytest.raises(ValueError):
        Bimould({1: RatFun.variable(vvar(1))}, 3, weight=5)  # degree 1 != 4


def test_swap_exchanges_polar_units():
    assert bm_equal(pa().swap(), pi())
    assert bm_equal(pi().swap(), pa())


def test_layers():
    assert pa().layer() == "v-const"
    assert pi().layer() == "u-const"
    assert Bimould.unit(2).layer() == "general"
    mixed = Bimould({1: RatFun.variable(uvar(1)) * inv({vvar(1): 1})}, 2)
    assert mixed.layer() == "general"


def test_der_scales_by_length():
    a = gen_random_bimould(7, 3, 2, lu=False)
    d = a.der()
    for r in range(4):
        assert d.component(r) == a.component(r).scale(Q(r))


def test_push_length_one_is_neg():
    assert bm_equal(pa().push(), pa().neg())


def test_involutions_and_push_order():
    a = gen_random_bimould(5, 3, 2, lu=False)
    for name in ("anti", "pari", "neg", "swap", "mantar"):
        assert bm_equal(apply_unary(name, apply_unary(name, a)), a), name
    for r in (1, 2, 3):
        comp = a.leng(r)
        assert bm_equal(comp.push_pow(r + 1), comp)


def test_push_factorisation():
    a = gen_random_bimould(9, 3, 2, lu=False)
    assert bm_equal(a.push(), a.swap().mantar().swap().mantar().neg())


def test_mu_unit_and_example():
    a = gen_random_bimould(11, 3, 2, lu=False)
    one = Bimould.unit(3)
    assert bm_equal(mu(a, one), a)
    assert bm_equal(mu(one, a), a)
    expected = inv({uvar(1): 1}) * inv({uvar(2): 1})
    assert mu(pa(), pa()).component(2) == expected


def test_mu_associativity_and_anti():
    a = gen_random_bimould(1, 3, 1, lu=False)
    b = gen_random_bimould(2, 3, 1, lu=False)
    c = gen_random_bimould(3, 3, 1, lu=False)
    assert bm_equal(mu(mu(a, b), c), mu(a, mu(b, c)))
    assert bm_equal(mu(a, b).anti(), mu(b.anti(), a.anti()))


def test_invmu():
    one = Bimould.unit(4)
    assert bm_equal(invmu(one), one)
    s = gen_random_bimould(13, 4, 2).with_component(0, RatFun.one())
    t = invmu(s)
    assert bm_equal(mu(s, t), one)
    assert bm_equal(mu(t, s), one)
    with pytest.raises(NotInvertibleError):
        invmu(gen_random_bimould(13, 3, 2))  # no constant term


def test_invmu_geometric_series():
    one_minus_pi = linear_combine([1, -1], [Bimould.unit(3), pi(3)])
    geometric = invmu(one_minus_pi)
    assert geometric.component(2) == inv({vvar(1): 1}) * inv({vvar(2): 1})
    assert geometric.component(3) == (
        inv({vvar(1): 1}) * inv({vvar(2): 1}) * inv({vvar(3): 1})
    )


def test_sharp_is_cumulative_sum_substitution():
    f = Bimould({1: RatFun.variable(vvar(1), 2),
                 2: RatFun.variable(vvar(1)) * RatFun.variable(vvar(2))}, 2)
    fs = sharp(f)
    assert fs.component(1) == RatFun.variable(uvar(1), 2)
    u1, u2 = uvar(1), uvar(2)
    expected = RatFun.variable(u1) * (RatFun.variable(u1) + RatFun.variable(u2))
    assert fs.component(2) == expected


def test_sharp_flat_inverse_and_conjugations():
    f = gen_random_bimould(17, 3, 2, layer="u-const", lu=False)
    g = gen_random_bimould(19, 3, 2, layer="v-const", lu=False)
    assert bm_equal(sharp(f), f.anti().swap())
    assert bm_equal(flat(g), g.swap().anti())
    assert bm_equal(flat(sharp(f)), f)
    assert bm_equal(sharp(flat(g)), g)
    with pytest.raises(LayerMismatchError):
        sharp(g)
    with pytest.raises(LayerMismatchError):
        flat(f)


def test_linear_combine():
    a = gen_random_bimould(23, 3, 2)
    b = gen_random_bimould(29, 3, 2)
    assert linear_combine([1, -1], [a, a]).is_zero()
    assert bm_equal(linear_combine([0, 1], [a, b]), b)
    combo = linear_combine([Q(1, 2), Q(2)], [a, b])
    for r in range(4):
        assert combo.component(r) == RatFun.sum(
            [a.component(r).scale(Q(1, 2)), b.component(r).scale(2)]
        )


def test_truncation_semantics():
    a = gen_random_bimould(31, 4, 2, lu=False)
    b = gen_random_bimould(37, 2, 2, lu=False)
    assert mu(a, b).truncation == 2
    assert (a + b).truncation == 2


def test_weight_propagation():
    a = gen_random_bimould(41, 3, 2, weight=2)
    b = gen_random_bimould(43, 3, 2, weight=3)
    assert mu(a, b).weight == 5
    assert a.swap().weight == 2
    assert a.anti().push().weight == 2
    assert (a + a).weight == 2
