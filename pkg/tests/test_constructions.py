import pytest

from flexion import (
    Bimould,
    NotGrouplikeConstantError,
    NotLengthHomogeneousError,
    Poly,
    Q,
    RatFun,
    adari_dilator,
    ari,
    bm_equal,
    brown_lift,
    brown_lift_closed_form,
    brown_lift_linear,
    darapir_closed_form,
    dilator_of,
    diri_par,
    exp_ad_ari,
    expari,
    gen_random_bimould,
    generalized_lift,
    ihara_bracket,
    mould_from_dilator,
    pic,
    polar_unit,
    psi0,
    sharp,
    uvar,
    vvar,
    witt_generator,
)
from flexion.constructions import compositions

inv = RatFun.inv_linform


def test_polar_units():
    assert polar_unit("Pa").component(1) == inv({uvar(1): 1})
    assert polar_unit("Pi").component(1) == inv({vvar(1): 1})
    with pytest.raises(ValueError):
        polar_unit("Po")


def test_pic_components():
    p = pic(3)
    assert p.component(0).is_one()
    assert p.component(1) == inv({vvar(1): 1})
    assert p.component(2) == inv({vvar(1): 1}) * inv({vvar(2): 1})


def test_psi0_components():
    p = psi0(2)
    assert p.component(1) == inv({vvar(1): 1})
    x1, x2 = vvar(1), vvar(2)
    expected = (inv({x1: 1}) * inv({x2: 1})).scale(Q(2, 3)) - (
        inv({x1: 1}) * inv({x2: 1, x1: -1})
    ).scale(Q(1, 3))
    assert p.component(2) == expected
    assert p.weight == 0
    with pytest.raises(ValueError):
        psi0(0)


def test_darapir_length_one():
    assert darapir_closed_form(1).component(1) == inv({vvar(1): 1}).scale(Q(1, 2))


def test_darapir_equals_half_reversed_generator():
    n = 3
    assert bm_equal(darapir_closed_form(n), psi0(n).anti().scale(Q(1, 2)))


def test_diri_par():
    dp = diri_par(3)
    assert dp.component(1) == inv({uvar(1): 1}).scale(Q(1, 2))
    assert dp.is_v_constant()
    assert bm_equal(dp, darapir_closed_form(3).swap())


def test_pic_push_neutrality():
    p = pic(4)
    for r in range(1, 5):
        comp = p.leng(r)
        acc = Bimould.zero(4)
        cur = comp
        for _ in range(r + 1):
            acc = acc + cur
            cur = cur.push()
        assert acc.is_zero(), r


def test_dilator_trivial_cases():
    assert dilator_of(Bimould.unit(3)).is_zero()
    assert bm_equal(mould_from_dilator(Bimould.zero(3)), Bimould.unit(3))
    with pytest.raises(NotGrouplikeConstantError):
        dilator_of(Bimould.zero(3))


def test_dilator_roundtrip():
    d = gen_random_bimould(3, 3, 2, max_support=2)
    assert bm_equal(dilator_of(mould_from_dilator(d)), d)
    s = gen_random_bimould(5, 3, 2).with_component(0, RatFun.one())
    assert bm_equal(mould_from_dilator(dilator_of(s)), s)


def test_compositions():
    assert list(compositions(0)) == [()]
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


def test_adari_zero_dilator_is_identity():
    b = gen_random_bimould(7, 3, 2)
    assert bm_equal(adari_dilator(Bimould.zero(3), b, "left"), b)
    assert bm_equal(adari_dilator(Bimould.zero(3), b, "right"), b)
    with pytest.raises(ValueError):
        adari_dilator(Bimould.zero(3), b, "middle")


def test_adari_first_correction_coefficient():
    d = Bimould.single(2, RatFun.variable(vvar(1)) * inv({uvar(2): 1}), truncation=3)
    b = gen_random_bimould(9, 3, 2)
    got = adari_dilator(d, b, "left")
    expected = b + ari(d, b).scale(Q(1, 2))
    assert bm_equal(got, expected)
    # the inverse-side expansion flips the sign of the odd terms
    got_right = adari_dilator(d, b, "right")
    expected_right = b - ari(d, b).scale(Q(1, 2))
    assert bm_equal(got_right, expected_right)


def test_adari_threeway_small():
    l = Bimould.single(1, inv({uvar(1): 1}), truncation=3)
    b = Bimould(
        {1: RatFun.variable(uvar(1)), 2: inv({vvar(1): 1, vvar(2): -1})}, 3
    )
    target = exp_ad_ari(l, b)
    assert bm_equal(adari_dilator(dilator_of(expari(l)), b, "left"), target)
    assert bm_equal(adari_dilator(dilator_of(expari(-l)), b, "right"), target)


def test_brown_lift_base_and_first_step(x_square):
    lifted = brown_lift(x_square, 3)
    assert lifted.component(1) == x_square.component(1)
    x1, x2 = vvar(1), vvar(2)
    assert lifted.component(2) == RatFun.from_poly(Poly.linear({x2: 1, x1: -2}))
    assert bm_equal(brown_lift(Bimould.zero(3), 3), Bimould.zero(3))


def test_brown_lift_closed_form_agrees(x_square):
    assert bm_equal(brown_lift(x_square, 3), brown_lift_closed_form(x_square, 3))


def test_brown_lift_rejects_multi_length(x_square):
    multi = Bimould(
        {1: RatFun.variable(vvar(1), 2), 2: RatFun.variable(vvar(1), 2)}, 3
    )
    with pytest.raises(NotLengthHomogeneousError):
        brown_lift(multi, 3)
    linear = brown_lift_linear(multi, 3)
    by_parts = brown_lift(multi.leng(1), 3) + brown_lift(multi.leng(2), 3)
    assert bm_equal(linear, by_parts)


def test_generalized_lift_specialisations(x_square):
    n = 3
    assert bm_equal(generalized_lift(psi0(n), x_square, n), brown_lift(x_square, n))
    assert bm_equal(
        generalized_lift(Bimould.zero(n), x_square, n),
        Bimould({1: x_square.component(1)}, n, weight=3),
    )
    doubled = generalized_lift(psi0(n).scale(2), x_square, n)
    first = ihara_bracket(psi0(n).leng(1), x_square).component(2)
    assert doubled.component(2) == first


def test_brown_lift_transport_small(x_square):
    n = 3
    lifted = brown_lift(x_square, n)
    rhs = adari_dilator(diri_par(n), sharp(x_square), "right")
    assert bm_equal(sharp(lifted), rhs)


def test_witt_generator_and_identity():
    s1 = witt_generator(1)
    assert s1.component(1) == inv({vvar(1): 1})
    s1_3 = witt_generator(1, 3)
    s2_3 = witt_generator(2, 3)
    s3 = witt_generator(3, 3)
    # reversed-argument bracket carries the (m - n) coefficient
    assert bm_equal(ihara_bracket(s2_3, s1_3), s3.scale(1 - 2))
    assert bm_equal(ihara_bracket(s1_3, s2_3), s3.scale(2 - 1))
