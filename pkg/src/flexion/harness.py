"""Named verification suites over seeded random inputs.

Every identity the library certifies has a registered check name; the
catalog drives both the command line and the acceptance tests.  A check is
deterministic in its :class:`CheckSpec` (the seed fully determines the
random inputs), always decides identities exactly, and attaches a concrete
witness difference to every failure.  Point evaluation never certifies a
pass; it is only used inside the exact-arithmetic layer to fail fast.
"""
from __future__ import annotations

import math
import os
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from random import Random
from typing import Callable, Iterable, Optional

from .bimould import (
    Bimould,
    apply_unary,
    bm_equal,
    first_difference,
    flat,
    invmu,
    linear_combine,
    mu,
    sharp,
    to_lower_layer,
)
from .constructions import (
    adari_dilator,
    brown_lift,
    brown_lift_closed_form,
    darapir_closed_form,
    dilator_of,
    diri_par,
    mould_from_dilator,
    pic,
    polar_unit,
    psi0,
    witt_generator,
)
from .dshuffle import (
    FormalSeqSum,
    eval_on_sum,
    harmonic_expand,
    is_ds,
    is_ls,
    is_mantar_invariant,
    shuffle_expand,
)
from .exactalg import LinForm, Poly, Q, RatFun, uvar, vvar
from .flexops import (
    amit,
    anit,
    ari,
    arit,
    axit,
    exp_ad_ari,
    expari,
    ihara_action,
    ihara_bracket,
    ila,
    preari,
)
from .report import CheckReport

__all__ = [
    "CheckSpec",
    "UnknownCheckError",
    "gen_random_bimould",
    "check_names",
    "describe_check",
    "run_check",
    "run_many",
    "IDENTITY_CATALOG",
]


class UnknownCheckError(KeyError):
    """No check registered under that name."""


@dataclass(frozen=True)
class CheckSpec:
    """Parameters of one verification run; the seed pins all randomness."""

    name: str
    max_length: Optional[int] = None
    degree: int = 2
    trials: Optional[int] = None
    seed: int = 0
    harmonic_rule: str = "symmetrized"
    parity_mode: str = "homogeneity"

    def resolved(self, default_max_length: int, default_trials: int) -> "CheckSpec":
        out = self
        if out.max_length is None:
            out = replace(out, max_length=default_max_length)
        if out.trials is None:
            out = replace(out, trials=default_trials)
        return out


# ---------------------------------------------------------------------------
# deterministic random inputs
# ---------------------------------------------------------------------------


def _mix_seed(seed: int, tag: str) -> int:
    return (seed * 0x9E3779B1 + zlib.crc32(tag.encode())) % (2**31)


def _random_ratfun(
    rng: Random,
    length: int,
    degree: int,
    layer: str,
    homogeneous_of: Optional[int] = None,
) -> RatFun:
    uu = [uvar(i) for i in range(1, length + 1)]
    vv = [vvar(i) for i in range(1, length + 1)]
    if layer == "u-const":
        pool = vv
    elif layer == "v-const":
        pool = uu
    else:
        pool = uu + vv

    den: dict = {}
    for _ in range(rng.randint(0, 1)):
        family = vv if (layer == "u-const" or (layer == "general" and rng.random() < 0.5)) else uu
        if layer == "v-const":
            family = uu
        if len(family) >= 2 and rng.random() < 0.6:
            a, b = rng.sample(family, 2)
            _, lf = LinForm.canonical({a: 1, b: -1})
        else:
            _, lf = LinForm.canonical({rng.choice(family): 1})
        den[lf] = den.get(lf, 0) + 1
    den_degree = sum(den.values())

    target = None
    if homogeneous_of is not None:
        target = homogeneous_of + den_degree
        if target < 0:  # need more poles to reach the degree
            for _ in range(-target):
                _, lf = LinForm.canonical({rng.choice(pool): 1})
                den[lf] = den.get(lf, 0) + 1
            den_degree = sum(den.values())
            target = homogeneous_of + den_degree

    terms: dict = {}
    for _ in range(rng.randint(1, 2)):
        total = target if target is not None else rng.randint(0, degree)
        mono: dict = {}
        remaining = total
        while remaining > 0:
            v = rng.choice(pool)
            e = rng.randint(1, remaining)
            mono[v] = mono.get(v, 0) + e
            remaining -= e
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, Q(0)) + Q(rng.choice([-3, -2, -1, 1, 2, 3]))
    num = Poly({m: c for m, c in terms.items() if c})
    if num.is_zero():
        num = Poly.const(1) if not target else Poly.variable(pool[0], target)
    return RatFun._normalized(num, den, Q(1))


def gen_random_bimould(
    seed: int,
    max_length: int,
    degree: int = 2,
    layer: str = "general",
    lu: bool = True,
    weight: Optional[int] = None,
    max_support: Optional[int] = None,
) -> Bimould:
    """Deterministic random bimould.

    Denominators are drawn from single variables and pairwise differences,
    numerators are sparse with small integer coefficients and degree at
    most ``degree``.  ``lu`` forces a zero constant term; ``weight`` makes
    every component homogeneous of degree ``weight - r``.
    """
    rng = Random(seed)
    comps = {}
    top = max_support if max_support is not None else max_length
    if not lu:
        comps[0] = RatFun.const(rng.randint(1, 3))
    for r in range(1, top + 1):
        if rng.random() < 0.85:
            comps[r] = _random_ratfun(
                rng,
                r,
                degree,
                layer,
                homogeneous_of=None if weight is None else weight - r,
            )
    if lu and not comps:
        comps[1] = _random_ratfun(rng, 1, degree, layer)
    return Bimould(comps, max_length, weight=weight)


def _rand(
    spec: CheckSpec,
    tag: str,
    layer: str = "general",
    lu: bool = True,
    max_length: Optional[int] = None,
    max_support: Optional[int] = None,
    weight: Optional[int] = None,
) -> Bimould:
    return gen_random_bimould(
        _mix_seed(spec.seed, f"{spec.name}:{tag}"),
        max_length if max_length is not None else spec.max_length,
        degree=spec.degree,
        layer=layer,
        lu=lu,
        weight=weight,
        max_support=max_support,
    )


# ---------------------------------------------------------------------------
# small assertion helpers
# ---------------------------------------------------------------------------


def _new_report(spec: CheckSpec) -> CheckReport:
    return CheckReport(
        spec.name,
        {
            "max_length": spec.max_length,
            "degree": spec.degree,
            "trials": spec.trials,
            "seed": spec.seed,
            "harmonic_rule": spec.harmonic_rule,
            "parity_mode": spec.parity_mode,
        },
    )


def _expect_bm(report: CheckReport, where: str, a: Bimould, b: Optional[Bimould] = None):
    diff = first_difference(a, b if b is not None else Bimould.zero(a.truncation))
    if diff is not None:
        report.record(f"{where} @ length {diff[0]}", diff[1])


def _expect_rf(report: CheckReport, where: str, a: RatFun, b: Optional[RatFun] = None):
    delta = a - b if b is not None else a
    if not delta.is_zero():
        report.record(where, delta)


def _expect_true(report: CheckReport, where: str, condition: bool):
    if not condition:
        report.record(where)


def _x_square(truncation: int) -> Bimould:
    return Bimould.single(1, RatFun.variable(vvar(1), 2), truncation=truncation, weight=3)


def _x_fourth(truncation: int) -> Bimould:
    return Bimould.single(1, RatFun.variable(vvar(1), 4), truncation=truncation, weight=5)


def _ls_samples(truncation: int) -> list:
    """Shuffle-vanishing samples: even length-1 elements and their brackets."""
    f = _x_square(truncation)
    g = _x_fourth(truncation)
    out = [("x1^2", f), ("x1^4", g)]
    if truncation >= 2:
        out.append(("bracket(x1^2,x1^4)", ihara_bracket(f, g)))
    if truncation >= 3:
        out.append(
            ("bracket(x1^2,bracket(x1^2,x1^4))", ihara_bracket(f, ihara_bracket(f, g)))
        )
    return out


def _mantar_fixed_samples(spec: CheckSpec) -> list:
    """Upper-layer bimoulds fixed by the signed reversal."""
    n = spec.max_length
    samples = [
        ("sharp(psi0)", sharp(psi0(n))),
        ("sharp(x1^2)", sharp(_x_square(n))),
    ]
    for t in range(spec.trials):
        raw = _rand(spec, f"vconst-{t}", layer="v-const")
        samples.append((f"symmetrized random {t}", raw + raw.mantar()))
    return samples


# ---------------------------------------------------------------------------
# exact-arithmetic checks
# ---------------------------------------------------------------------------


def _random_ratfun_for(spec: CheckSpec, tag: str, length: int = 3) -> RatFun:
    rng = Random(_mix_seed(spec.seed, f"{spec.name}:{tag}"))
    return _random_ratfun(rng, length, spec.degree, "general")


def _check_ratfun_field_axioms(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _random_ratfun_for(spec, f"f{t}")
        g = _random_ratfun_for(spec, f"g{t}")
        h = _random_ratfun_for(spec, f"h{t}")
        _expect_rf(report, f"add-assoc {t}", (f + g) + h, f + (g + h))
        _expect_rf(report, f"add-comm {t}", f + g, g + f)
        _expect_rf(report, f"mul-assoc {t}", (f * g) * h, f * (g * h))
        _expect_rf(report, f"mul-comm {t}", f * g, g * f)
        _expect_rf(report, f"distrib {t}", f * (g + h), f * g + f * h)
        _expect_rf(report, f"add-inverse {t}", f + (-f))
        _expect_rf(report, f"add-cancel {t}", (f + g) - g, f)
        # an invertible element inside the class: monomial over linear forms
        rng = Random(_mix_seed(spec.seed, f"{spec.name}:inv{t}"))
        k = rng.randint(1, 2)
        unit = RatFun.variable(vvar(1), k) * RatFun.inv_linform(
            {vvar(2): 1, vvar(1): -1}
        )
        unit_inv = RatFun.from_poly(
            Poly.linear({vvar(2): 1, vvar(1): -1})
        ) * RatFun.inv_linform({vvar(1): 1}, k)
        _expect_rf(report, f"mul-inverse {t}", unit * unit_inv, RatFun.one())
        _expect_rf(report, f"mul-cancel {t}", f * unit * unit_inv, f)
    return report


def _check_ratfun_substitution(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    x1, x2, x3 = vvar(1), vvar(2), vvar(3)
    for t in range(spec.trials):
        f = _random_ratfun_for(spec, f"f{t}")
        g = _random_ratfun_for(spec, f"g{t}")
        rng = Random(_mix_seed(spec.seed, f"{spec.name}:s{t}"))
        a, b = rng.choice([-1, 1]), rng.randint(-2, 2)
        sigma = {x1: {x1: a, x2: b}, x2: {x2: 1}, x3: {x3: 1, x1: rng.randint(-1, 1)}}
        tau = {x1: {x1: 1}, x2: {x2: -1, x3: rng.randint(-2, 2)}, x3: {x3: 1}}

        def compose(outer, inner):
            out = {}
            for v, image in inner.items():
                acc: dict = {}
                for w, c in image.items():
                    for ww, cc in outer.get(w, {w: 1}).items():
                        acc[ww] = acc.get(ww, 0) + c * cc
                out[v] = {w: c for w, c in acc.items() if c}
            return out

        _expect_rf(
            report, f"hom-add {t}",
            (f + g).substitute(sigma), f.substitute(sigma) + g.substitute(sigma),
        )
        _expect_rf(
            report, f"hom-mul {t}",
            (f * g).substitute(sigma), f.substitute(sigma) * g.substitute(sigma),
        )
        _expect_rf(
            report, f"compose {t}",
            f.substitute(sigma).substitute(tau), f.substitute(compose(tau, sigma)),
        )
    return report


def _check_ratfun_reduce(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    x1, x2 = vvar(1), vvar(2)
    lf_x1 = LinForm.canonical({x1: 1})[1]
    lf_diff = LinForm.canonical({x2: 1, x1: -1})[1]
    # (x2 - x1) over x1 * (x2 - x1), built raw with the sign in the scalar
    raw = RatFun(Poly.linear({x2: 1, x1: -1}), ((lf_x1, 1), (lf_diff, 1)), Q(-1))
    _expect_rf(report, "cancel common factor", raw.reduced(), RatFun.inv_linform({x1: 1}))
    raw2 = RatFun(
        Poly.variable(x1) * Poly.variable(x2) + Poly.variable(x2, 2),
        ((LinForm.canonical({x2: 1})[1], 1),),
        Q(1),
    )
    _expect_rf(
        report, "exact division",
        raw2.reduced(), RatFun.from_poly(Poly.linear({x1: 1, x2: 1})),
    )
    already = RatFun.variable(x2) * RatFun.inv_linform({x1: 1}) * RatFun.inv_linform(
        {x2: 1, x1: -1}
    )
    _expect_true(report, "trial division leaves remainder", already.reduced() == already)
    for t in range(spec.trials):
        f = _random_ratfun_for(spec, f"f{t}")
        blown = RatFun(
            f.num.mul_linform(lf_diff),
            tuple(sorted((dict(f.den) | {lf_diff: f.den_dict().get(lf_diff, 0) + 1}).items())),
            f.scalar,
        )
        reduced = blown.reduced()
        _expect_rf(report, f"idempotent {t}", reduced.reduced(), reduced)
        _expect_true(report, f"value-preserving {t}", reduced.equals(f))
    return report


def _check_ratfun_equality(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _random_ratfun_for(spec, f"f{t}")
        g = _random_ratfun_for(spec, f"g{t}")
        alias = RatFun.sum([f, g]) - g  # same function, different route
        _expect_true(report, f"reflexive {t}", f.equals(f))
        _expect_true(report, f"symmetric {t}", f.equals(alias) and alias.equals(f))
        _expect_true(report, f"canonical {t}", alias == f)
        _expect_true(report, f"transitive {t}",
                     not (f.equals(alias) and alias.equals(g)) or f.equals(g))
        _expect_true(report, f"distinct {t}", f.equals(g) == (f == g))
    _expect_true(report, "zero normalisation",
                 RatFun.zero().equals(RatFun.const(0))
                 and (RatFun.inv_linform({vvar(1): 1}).scale(0)).equals(RatFun.zero()))
    _expect_true(report, "negative case",
                 not RatFun.inv_linform({vvar(1): 1}).equals(RatFun.inv_linform({vvar(2): 1})))
    return report


# ---------------------------------------------------------------------------
# bimould checks
# ---------------------------------------------------------------------------


def _check_unary_involutions(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", lu=False)
        for name in ("anti", "pari", "neg", "swap", "mantar"):
            _expect_bm(report, f"{name}^2 {t}", apply_unary(name, apply_unary(name, a)), a)
        _expect_bm(report, f"der {t}",
                   a.der(),
                   linear_combine([Q(r) for r in range(a.truncation + 1)],
                                  [a.leng(r) for r in range(a.truncation + 1)]))
    return report


def _check_push_order(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}")
        for r in range(1, spec.max_length + 1):
            comp = a.leng(r)
            if comp.is_zero():
                continue
            _expect_bm(report, f"push^{r + 1} on length {r} (trial {t})",
                       comp.push_pow(r + 1), comp)
    one = polar_unit("Pa", spec.max_length)
    _expect_bm(report, "push at length 1 is neg", one.push(), one.neg())
    return report


def _check_push_factorization(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", lu=False)
        rhs = a.swap().mantar().swap().mantar().neg()
        _expect_bm(report, f"push = neg.mantar.swap.mantar.swap {t}", a.push(), rhs)
    return report


def _check_mu_associativity(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    one = Bimould.unit(spec.max_length)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", lu=False, max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        c = _rand(spec, f"c{t}", lu=False, max_support=2)
        _expect_bm(report, f"associativity {t}", mu(mu(a, b), c), mu(a, mu(b, c)))
        _expect_bm(report, f"left unit {t}", mu(one, a), a)
        _expect_bm(report, f"right unit {t}", mu(a, one), a)
    pa = polar_unit("Pa", spec.max_length)
    _expect_rf(report, "mu(Pa,Pa) length 2",
               mu(pa, pa).component(2),
               RatFun.inv_linform({uvar(1): 1}) * RatFun.inv_linform({uvar(2): 1}))
    return report


def _check_anti_mu_antihom(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", lu=False, max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        _expect_bm(report, f"anti(mu(a,b)) = mu(anti b, anti a) {t}",
                   mu(a, b).anti(), mu(b.anti(), a.anti()))
    return report


def _check_der_derivation_mu(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", lu=False, max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        _expect_bm(report, f"Leibniz {t}", mu(a, b).der(), mu(a.der(), b) + mu(a, b.der()))
    return report


def _check_invmu_roundtrip(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    one = Bimould.unit(spec.max_length)
    _expect_bm(report, "invmu(1)", invmu(one), one)
    for t in range(spec.trials):
        s = _rand(spec, f"s{t}", lu=True).with_component(0, RatFun.one())
        t_inv = invmu(s)
        _expect_bm(report, f"right inverse {t}", mu(s, t_inv), one)
        _expect_bm(report, f"left inverse {t}", mu(t_inv, s), one)
    return report


def _check_sharp_flat_inverse(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _rand(spec, f"f{t}", layer="u-const", lu=False)
        _expect_bm(report, f"flat.sharp {t}", flat(sharp(f)), f)
        g = _rand(spec, f"g{t}", layer="v-const", lu=False)
        _expect_bm(report, f"sharp.flat {t}", sharp(flat(g)), g)
    return report


def _check_sharp_swap_anti(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _rand(spec, f"f{t}", layer="u-const", lu=False)
        _expect_bm(report, f"sharp = swap.anti {t}", sharp(f), f.anti().swap())
        g = _rand(spec, f"g{t}", layer="v-const", lu=False)
        _expect_bm(report, f"flat = anti.swap {t}", flat(g), g.swap().anti())
    sq = _x_square(spec.max_length)
    _expect_rf(report, "sharp(x1^2) length 1",
               sharp(sq).component(1), RatFun.variable(uvar(1), 2))
    return report


def _check_unary_weight(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        k = (t % 3) + 1
        a = _rand(spec, f"a{t}", weight=k)
        for name in ("anti", "pari", "neg", "swap", "mantar", "push", "der"):
            image = apply_unary(name, a)
            for r, comp in image.components.items():
                deg = comp.is_homogeneous()
                if deg is not None and deg != k - r:
                    report.record(f"{name} breaks grading (trial {t}, length {r})", comp)
                elif deg is None:
                    report.record(f"{name} mixes degrees (trial {t}, length {r})", comp)
    return report


# ---------------------------------------------------------------------------
# flexion checks
# ---------------------------------------------------------------------------


def _check_amit_swap(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        lhs = amit(a.swap(), b.swap()).swap()
        rhs = amit(a, b) + mu(b, a) - mu(b.swap(), a.swap()).swap()
        _expect_bm(report, f"swap conjugation of amit {t}", lhs, rhs)
    return report


def _check_anit_swap_push(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        _expect_bm(report, f"swap conjugation of anit {t}",
                   anit(a.swap(), b.swap()).swap(), anit(a.push(), b))
    return report


def _check_anti_amit_anit(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        _expect_bm(report, f"anti conjugation {t}",
                   amit(a.anti(), b.anti()).anti(), anit(a, b))
    return report


def _check_ari_antisymmetry(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", max_support=2)
        b = _rand(spec, f"b{t}", max_support=2)
        _expect_bm(report, f"ari(a,b) = -ari(b,a) {t}", ari(a, b), -ari(b, a))
        _expect_bm(report, f"ari(a,a) = 0 {t}", ari(a, a), Bimould.zero(a.truncation))
    return report


def _check_ari_jacobi(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = min(spec.max_length, 3)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", max_length=n, max_support=2)
        b = _rand(spec, f"b{t}", max_length=n, max_support=2)
        c = _rand(spec, f"c{t}", max_length=n, max_support=2)
        jac = ari(a, ari(b, c)) + ari(b, ari(c, a)) + ari(c, ari(a, b))
        _expect_bm(report, f"jacobi {t}", jac, Bimould.zero(n))
    return report


def _check_der_derivation_flexion(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        a = _rand(spec, f"a{t}", max_support=2)
        b = _rand(spec, f"b{t}", lu=False, max_support=2)
        blu = _rand(spec, f"blu{t}", max_support=2)
        _expect_bm(report, f"amit {t}",
                   amit(a, b).der(), amit(a.der(), b) + amit(a, b.der()))
        _expect_bm(report, f"anit {t}",
                   anit(a, b).der(), anit(a.der(), b) + anit(a, b.der()))
        _expect_bm(report, f"preari {t}",
                   preari(blu, a).der(),
                   preari(blu.der(), a) + preari(blu, a.der()))
        _expect_bm(report, f"ari {t}",
                   ari(blu, a).der(), ari(blu.der(), a) + ari(blu, a.der()))
    return report


def _check_ihara_flexion_expansion(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _rand(spec, f"f{t}", layer="u-const", max_support=2)
        g = _rand(spec, f"g{t}", layer="u-const", max_support=2)
        twisted = f.anti().pari().neg()
        _expect_bm(report, f"action = axit + mu {t}",
                   ihara_action(f, g), axit(twisted, f, g) + mu(f, g))
    f1 = Bimould.single(1, RatFun.inv_linform({vvar(1): 1}), truncation=2)
    g1 = _x_square(2)
    expansion = ihara_action(f1, g1).component(2)
    x1, x2 = vvar(1), vvar(2)
    direct = RatFun.sum(
        [
            RatFun.inv_linform({x1: 1}) * RatFun.variable(x2, 2),
            RatFun.inv_linform({x2: 1, x1: -1}) * RatFun.variable(x1, 2),
            -(RatFun.inv_linform({x2: 1, x1: -1}) * RatFun.variable(x2, 2)),
        ]
    )
    _expect_rf(report, "two-sum base case", expansion, direct)
    return report


def _check_ihara_anti_ila(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _rand(spec, f"f{t}", layer="u-const", max_support=2)
        g = _rand(spec, f"g{t}", layer="u-const", max_support=2)
        _expect_bm(report, f"bracket via ila {t}",
                   ihara_bracket(f, g), ila(g.anti(), f.anti()).anti())
        _expect_bm(report, f"bracket antisymmetry {t}",
                   ihara_bracket(f, f), Bimould.zero(f.truncation))
    return report


def _check_mantar_bracket_transport(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    samples = _mantar_fixed_samples(spec)
    for i, (name_f, f) in enumerate(samples):
        for name_g, g in samples[i + 1:]:
            transported = flat(ari(g, f))
            direct = ihara_bracket(flat(f), flat(g))
            _expect_bm(report, f"flat bracket [{name_f}, {name_g}]", transported, direct)
    return report


def _check_preari_vconst(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        f = _rand(spec, f"f{t}", layer="v-const", max_support=2)
        g = _rand(spec, f"g{t}", layer="v-const", max_support=2)
        composed = preari(g, f)
        _expect_true(report, f"closure {t}", composed.is_v_constant())
        _expect_bm(report, f"wiring {t}", composed, arit(f, g) + mu(g, f))
        _expect_bm(report, f"bracket wiring {t}",
                   ari(g, f), preari(g, f) - preari(f, g))
    return report


# ---------------------------------------------------------------------------
# sequence expansion checks
# ---------------------------------------------------------------------------


def _lift_product(expand: Callable, a: FormalSeqSum, b: FormalSeqSum) -> FormalSeqSum:
    out = FormalSeqSum()
    for seq_a, ca in a.terms.items():
        for seq_b, cb in b.terms.items():
            piece = expand(seq_a, seq_b).scale(ca * cb)
            out = out + piece
    return out


def _check_shuffle_product(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    s = shuffle_expand((1, 2), (3,))
    _expect_true(report, "displayed example",
                 sorted(s.terms) == [(1, 2, 3), (1, 3, 2), (3, 1, 2)]
                 and all(c.is_one() for c in s.terms.values()))
    for (p, q) in ((1, 1), (2, 1), (2, 2), (3, 1)):
        a = tuple(range(1, p + 1))
        b = tuple(range(p + 1, p + q + 1))
        got = shuffle_expand(a, b)
        _expect_true(report, f"count {p},{q}", len(got) == math.comb(p + q, p))
        _expect_true(report, f"commutative {p},{q}", got == shuffle_expand(b, a))
    one = FormalSeqSum.single(())
    _expect_true(report, "empty unit",
                 shuffle_expand((), (1, 2)) == FormalSeqSum.single((1, 2)) and len(one) == 1)
    lhs = _lift_product(shuffle_expand, shuffle_expand((1,), (2,)), FormalSeqSum.single((3, 4)))
    rhs = _lift_product(shuffle_expand, FormalSeqSum.single((1,)),
                        shuffle_expand((2,), (3, 4)))
    _expect_true(report, "associative", lhs == rhs)
    return report


def _check_harmonic_product(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    rule = spec.harmonic_rule
    expand = lambda a, b: harmonic_expand(a, b, rule=rule)
    for (a, b) in (((1,), (2,)), ((1, 2), (3,)), ((1,), (2, 3))):
        got = expand(a, b)
        other = expand(b, a)
        if got != other:
            delta = got - other
            seq, coeff = sorted(delta.terms.items())[0]
            report.record(f"commutativity at {a}*{b}, sequence {list(seq)}", coeff)
    for (a, b, c) in (((1,), (2,), (3,)), ((1, 2), (3,), (4,))):
        lhs = _lift_product(expand, expand(a, b), FormalSeqSum.single(c))
        rhs = _lift_product(expand, FormalSeqSum.single(a), expand(b, c))
        if lhs != rhs:
            delta = lhs - rhs
            seq, coeff = sorted(delta.terms.items())[0]
            report.record(f"associativity at {a},{b},{c}, sequence {list(seq)}", coeff)
    _expect_true(report, "empty unit",
                 expand((), (1, 2)) == FormalSeqSum.single((1, 2)))
    return report


def _check_harmonic_literal_negative(spec: CheckSpec) -> CheckReport:
    """Negative control: the uncorrected contraction breaks commutativity."""
    report = _new_report(spec)
    lhs = harmonic_expand((1,), (2,), rule="literal")
    rhs = harmonic_expand((2,), (1,), rule="literal")
    delta = lhs - rhs
    expected = RatFun.inv_linform({vvar(1): 1, vvar(2): -1}).scale(2)
    witness = delta.terms.get(())
    if witness is None or not witness.equals(expected):
        report.record("expected witness 2/(x1-x2) on the empty sequence",
                      witness if witness is not None else None)
    value = eval_on_sum(psi0(2), lhs)
    target = RatFun.inv_linform({vvar(1): 1}) * RatFun.inv_linform({vvar(2): 1})
    _expect_rf(report, "polar generator literal residue", value, target)
    return report


def _check_harmonic_base_case(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    contraction = RatFun.inv_linform({vvar(1): 1, vvar(2): -1})
    expected = shuffle_expand((1,), (2,))
    expected.add_term((1,), contraction)
    expected.add_term((2,), -contraction)
    got = harmonic_expand((1,), (2,))
    if got != expected:
        delta = got - expected
        seq, coeff = sorted(delta.terms.items())[0]
        report.record(f"base case at sequence {list(seq)}", coeff)
    p = psi0(2)
    shuffle_value = eval_on_sum(p, shuffle_expand((1,), (2,)))
    harmonic_value = eval_on_sum(p, got)
    contraction_value = eval_on_sum(
        p, FormalSeqSum({(1,): contraction, (2,): -contraction})
    )
    _expect_rf(report, "polar generator cross-check",
               harmonic_value, shuffle_value + contraction_value)
    return report


def _check_ls_sharp_mantar(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for name, f in _ls_samples(spec.max_length):
        membership = is_ls(f, spec.max_length)
        if not membership.passed:
            report.record(f"{name} <- sample failed shuffle membership: "
                          f"{membership.failures[0].where}",
                          membership.failures[0].delta)
            continue
        fixed = is_mantar_invariant(sharp(f), spec.max_length)
        for failure in fixed.failures:
            report.record(f"sharp({name}) not reversal-fixed [{failure.where}]",
                          failure.delta)
    return report


def _check_negative_parity(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    cube = Bimould.single(1, RatFun.variable(vvar(1), 3), truncation=spec.max_length)
    membership = is_ls(cube, spec.max_length)
    _expect_true(report, "odd cube must fail", not membership.passed)
    _expect_true(report, "failure localised at parity",
                 [f.where for f in membership.failures] == ["parity"])
    expected = RatFun.variable(vvar(1), 3).scale(-2)
    if membership.failures and membership.failures[0].delta is not None:
        _expect_rf(report, "parity witness",
                   membership.failures[0].delta, expected)
    return report


def _check_negative_shuffle(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    x1, x2 = vvar(1), vvar(2)
    f = Bimould.single(2, RatFun.variable(x1) * RatFun.variable(x2),
                       truncation=spec.max_length)
    membership = is_ls(f, spec.max_length)
    _expect_true(report, "x1*x2 must fail", not membership.passed)
    witnesses = [fl for fl in membership.failures if fl.where == "shuffle(r=1,s=1)"]
    _expect_true(report, "shuffle failure present", bool(witnesses))
    if witnesses:
        _expect_rf(report, "witness is 2*x1*x2",
                   witnesses[0].delta,
                   RatFun.from_poly(Poly.variable(x1) * Poly.variable(x2)).scale(2))
    return report


# ---------------------------------------------------------------------------
# construction checks
# ---------------------------------------------------------------------------


def _check_pic_consistency(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    p = pic(n)  # raises internally if the mu-inverse form disagrees
    _expect_rf(report, "length 0", p.component(0), RatFun.one())
    _expect_rf(report, "length 1", p.component(1), RatFun.inv_linform({vvar(1): 1}))
    if n >= 2:
        _expect_rf(report, "length 2", p.component(2),
                   RatFun.inv_linform({vvar(1): 1}) * RatFun.inv_linform({vvar(2): 1}))
    return report


def _check_pic_push_neutral(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    p = pic(n)
    for r in range(1, n + 1):
        comp = p.leng(r)
        acc = Bimould.zero(n)
        cur = comp
        for _ in range(r + 1):
            acc = acc + cur
            cur = cur.push()
        _expect_bm(report, f"push orbit sum, length {r}", acc, Bimould.zero(n))
    return report


def _check_darapir_closed_form(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    closed = darapir_closed_form(n)
    _expect_rf(report, "length 1", closed.component(1),
               RatFun.inv_linform({vvar(1): 1}).scale(Q(1, 2)))
    _expect_bm(report, "closed form vs halved reversal",
               closed, psi0(n).anti().scale(Q(1, 2)))
    return report


def _check_diripar_consistency(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    dp = diri_par(n)
    _expect_rf(report, "length 1", dp.component(1),
               RatFun.inv_linform({uvar(1): 1}).scale(Q(1, 2)))
    _expect_bm(report, "swap of the closed form", dp, darapir_closed_form(n).swap())
    _expect_true(report, "upper layer", dp.is_v_constant())
    return report


def _check_psi0_construction(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    p = psi0(n)
    x1, x2 = vvar(1), vvar(2)
    _expect_rf(report, "length 1", p.component(1), RatFun.inv_linform({x1: 1}))
    if n >= 2:
        expected = (RatFun.inv_linform({x1: 1}) * RatFun.inv_linform({x2: 1})).scale(
            Q(2, 3)
        ) - (RatFun.inv_linform({x1: 1}) * RatFun.inv_linform({x2: 1, x1: -1})).scale(
            Q(1, 3)
        )
        _expect_rf(report, "length 2", p.component(2), expected)
    for r in range(1, n + 1):
        deg = p.component(r).is_homogeneous()
        _expect_true(report, f"degree -{r} at length {r}", deg == -r)
    anti_p = p.anti()
    for r in range(1, n + 1):
        # leading pure-pole part r/(v_r ... v_1): strip it and check the rest
        lead = RatFun.const(Q(2 * r, r * (r + 1)))
        for j in range(1, r + 1):
            lead = lead * RatFun.inv_linform({vvar(j): 1})
        lead = lead.scale(Q(1, 2))
        rest = anti_p.component(r).scale(Q(1, 2)) - lead
        pure_pole_forms = {LinForm.canonical({vvar(j): 1})[1] for j in range(1, r + 1)}
        only_differences = all(
            set(lf.variables()) and lf not in pure_pole_forms or m == 1
            for lf, m in rest.den
        )
        _expect_true(report, f"pole structure at length {r}", only_differences)
    _expect_true(report, "weight grade", p.weight == 0)
    return report


def _check_psi0_double_shuffle(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    p = psi0(n)
    membership = is_ds(p, n, parity_mode=spec.parity_mode, rule="symmetrized")
    report.merge(membership)
    report.extras["parity_literal"] = membership.extras["parity_literal"]
    report.extras["parity_homogeneity"] = membership.extras["parity_homogeneity"]
    _expect_true(report, "parity caveat: literal reading fails",
                 membership.extras["parity_literal"] is False)
    _expect_true(report, "parity caveat: homogeneity reading holds",
                 membership.extras["parity_homogeneity"] is True)
    literal = is_ds(p, min(n, 2), rule="literal")
    witnesses = [f for f in literal.failures if f.where == "harmonic(r=1,s=1)"]
    _expect_true(report, "literal contraction must fail", bool(witnesses))
    if witnesses:
        _expect_rf(report, "literal witness 1/(x1*x2)", witnesses[0].delta,
                   RatFun.inv_linform({vvar(1): 1}) * RatFun.inv_linform({vvar(2): 1}))
    hand = eval_on_sum(p, harmonic_expand((1,), (2,)))
    _expect_rf(report, "length-2 hand computation", hand)
    return report


def _check_witt_bracket(spec: CheckSpec) -> CheckReport:
    """Witt law of the de-normalised polar components.

    With the lower-layer action orientation used throughout, bracketing the
    m-th and n-th generators gives (n-m) times the (m+n)-th; equivalently
    the argument-reversed (upper-layer transported) bracket satisfies the
    (m-n) form.  Both are asserted exactly.
    """
    report = _new_report(spec)
    top = spec.max_length
    for m in range(1, top + 1):
        for n_ in range(m, top + 1):
            t = m + n_
            sm = witt_generator(m, t)
            sn = witt_generator(n_, t)
            if m == n_:
                act = ihara_action(sm, sm)
                _expect_bm(report, f"diagonal [{m},{m}] vanishes", act - act,
                           Bimould.zero(t))
                continue
            st = witt_generator(t, t)
            bracket = ihara_bracket(sn, sm)
            _expect_bm(report, f"reversed bracket [{m},{n_}] = ({m}-{n_})*gen",
                       bracket, st.scale(m - n_))
            # the transposed case follows by flipping the commutator
            _expect_bm(report, f"reversed bracket [{n_},{m}] = ({n_}-{m})*gen",
                       -bracket, st.scale(n_ - m))
    return report


def _check_dilator_roundtrip(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    _expect_bm(report, "unit has zero dilator", dilator_of(Bimould.unit(n)),
               Bimould.zero(n))
    _expect_bm(report, "zero dilator gives unit", mould_from_dilator(Bimould.zero(n)),
               Bimould.unit(n))
    for t in range(spec.trials):
        d = _rand(spec, f"d{t}", max_support=2)
        s = mould_from_dilator(d)
        _expect_bm(report, f"extract . integrate {t}", dilator_of(s), d)
        s2 = _rand(spec, f"s{t}", lu=True, max_support=2).with_component(0, RatFun.one())
        _expect_bm(report, f"integrate . extract {t}",
                   mould_from_dilator(dilator_of(s2)), s2)
    return report


def _check_adari_threeway(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    operands = [
        gen_random_bimould(
            _mix_seed(spec.seed, f"{spec.name}:b{j}"), n,
            degree=1, max_support=3,
        )
        for j in range(max(3, spec.trials // 2))
    ]
    zero = Bimould.zero(n)
    _expect_bm(report, "zero dilator acts as identity",
               adari_dilator(zero, operands[0], "left"), operands[0])
    for t in range(max(5, spec.trials)):
        l = _rand(spec, f"l{t}", max_support=2)
        group = expari(l)
        d_left = dilator_of(group)
        d_right = dilator_of(expari(-l))
        first = d_left.min_length()
        _expect_bm(report, f"first correction coefficient {t}",
                   adari_dilator(d_left.leng(first), operands[0], "left"),
                   operands[0] + ari(d_left.leng(first), operands[0]).scale(Q(1, first)))
        for j, b in enumerate(operands):
            target = exp_ad_ari(l, b)
            _expect_bm(report, f"left series (l{t}, b{j})",
                       adari_dilator(d_left, b, "left"), target)
            _expect_bm(report, f"right series (l{t}, b{j})",
                       adari_dilator(d_right, b, "right"), target)
    return report


def _check_dilator_series_der(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        l = _rand(spec, f"l{t}", max_support=2)
        b = _rand(spec, f"b{t}", max_support=2)
        d = dilator_of(expari(l))
        d_inv = dilator_of(expari(-l))
        left = lambda x: adari_dilator(d, x, "left")
        right = lambda x: adari_dilator(d_inv, x, "right")
        _expect_bm(report, f"[der, left series] {t}",
                   left(b).der() - left(b.der()), left(ari(d, b)))
        _expect_bm(report, f"[der, right series] {t}",
                   right(b).der() - right(b.der()), -ari(d_inv, right(b)))
    return report


def _check_exp_ad_der(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    for t in range(spec.trials):
        l = _rand(spec, f"l{t}", max_support=2)
        b = _rand(spec, f"b{t}", max_support=2)
        d = dilator_of(expari(l))
        lhs = exp_ad_ari(l, b).der() - exp_ad_ari(l, b.der())
        rhs = exp_ad_ari(l, ari(d, b))
        _expect_bm(report, f"[der, exp ad] {t}", lhs, rhs)
    return report


def _check_brown_lift_closed_form(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    for name, f in (("x1^2", _x_square(n)), ("x1^4", _x_fourth(n))):
        _expect_bm(report, f"recursion vs closed form ({name})",
                   brown_lift(f, n), brown_lift_closed_form(f, n))
    _expect_bm(report, "zero lifts to zero",
               brown_lift(Bimould.zero(n), n), Bimould.zero(n))
    f = _x_square(n)
    first = ihara_bracket(psi0(n).leng(1), f).component(2).scale(Q(1, 2))
    _expect_rf(report, "first correction", brown_lift(f, n).component(2), first)
    return report


def _check_brown_lift_transport(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    kernel = diri_par(n)
    for name, f in (("x1^2", _x_square(n)), ("x1^4", _x_fourth(n))):
        lifted = brown_lift(f, n)
        _expect_bm(report, f"transport ({name})",
                   sharp(lifted), adari_dilator(kernel, sharp(f), "right"))
    return report


def _check_brown_lift_double_shuffle(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    for name, f in (("x1^2", _x_square(n)), ("x1^4", _x_fourth(n))):
        lifted = brown_lift(f, n)
        membership = is_ds(lifted, n, parity_mode=spec.parity_mode)
        for failure in membership.failures:
            report.record(f"{name}: {failure.where}", failure.delta)
        report.extras[f"parity_literal[{name}]"] = membership.extras["parity_literal"]
        report.extras[f"parity_homogeneity[{name}]"] = membership.extras[
            "parity_homogeneity"
        ]
    return report


def _check_brown_lift_weight(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    n = spec.max_length
    for name, f, k in (("x1^2", _x_square(n), 3), ("x1^4", _x_fourth(n), 5)):
        lifted = brown_lift(f, n)
        _expect_true(report, f"weight grade kept ({name})", lifted.weight == k)
        for r, comp in lifted.components.items():
            deg = comp.is_homogeneous()
            if deg != k - r:
                report.record(f"{name}: length {r} degree {deg} != {k - r}", comp)
    return report


# ---------------------------------------------------------------------------
# harness checks
# ---------------------------------------------------------------------------


def _check_json_roundtrip(spec: CheckSpec) -> CheckReport:
    from . import jsonio

    report = _new_report(spec)
    p = psi0(min(spec.max_length, 3))
    encoded = jsonio.bimould_to_json(p)
    _expect_bm(report, "bimould value roundtrip",
               jsonio.bimould_from_json(encoded), p)
    _expect_true(report, "bimould text roundtrip",
                 jsonio.bimould_to_json(jsonio.bimould_from_json(encoded)) == encoded)
    s = harmonic_expand((1,), (2,))
    _expect_true(report, "seqsum roundtrip",
                 jsonio.seqsum_from_json(jsonio.seqsum_to_json(s)) == s)
    inner = is_ds(psi0(2), 2)
    _expect_true(report, "report roundtrip",
                 jsonio.report_from_json(jsonio.report_to_json(inner)) == inner)
    try:
        jsonio.ratfun_from_json({"scalar": "1/0", "num": [], "den": []})
    except jsonio.SchemaError:
        pass
    else:
        report.record("zero denominator must raise a schema error")
    rand = _rand(spec, "rt", lu=False)
    _expect_bm(report, "random bimould roundtrip",
               jsonio.bimould_from_json(jsonio.bimould_to_json(rand)), rand)
    return report


def _check_generator_determinism(spec: CheckSpec) -> CheckReport:
    report = _new_report(spec)
    a = gen_random_bimould(spec.seed + 11, spec.max_length, spec.degree)
    b = gen_random_bimould(spec.seed + 11, spec.max_length, spec.degree)
    _expect_true(report, "same seed, same bimould", a == b)
    c = gen_random_bimould(spec.seed + 12, spec.max_length, spec.degree)
    _expect_true(report, "different seed, different bimould", a != c)
    _expect_true(report, "lu flag", gen_random_bimould(3, 3, 2, lu=True).is_lu())
    constant = gen_random_bimould(4, 0, 2, lu=False)
    _expect_true(report, "max length 0 gives a constant",
                 set(constant.components) <= {0})
    graded = gen_random_bimould(5, 3, 2, weight=2)
    _expect_true(report, "weight grading honoured", graded.weight == 2)
    return report


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

# name -> (function, description, default max_length, default trials)
IDENTITY_CATALOG = {
    "ratfun-field-axioms": (
        _check_ratfun_field_axioms,
        "field laws of the exact rational-function arithmetic", 3, 4),
    "ratfun-substitution-homomorphism": (
        _check_ratfun_substitution,
        "linear substitution is a composable ring homomorphism", 3, 4),
    "ratfun-reduce-idempotent": (
        _check_ratfun_reduce,
        "normalisation is idempotent and value-preserving", 3, 4),
    "ratfun-equality-equivalence": (
        _check_ratfun_equality,
        "certified equality is an equivalence matching canonical forms", 3, 4),
    "unary-involutions": (
        _check_unary_involutions,
        "anti, pari, neg, swap, mantar square to the identity", 4, 3),
    "push-order": (
        _check_push_order, "push has order r+1 on length-r components", 4, 3),
    "push-factorization": (
        _check_push_factorization,
        "push factors as neg.mantar.swap.mantar.swap", 4, 3),
    "mu-associativity-unit": (
        _check_mu_associativity, "mu is associative with two-sided unit", 4, 3),
    "anti-mu-antihomomorphism": (
        _check_anti_mu_antihom, "anti reverses mu products", 4, 3),
    "der-derivation-mu": (
        _check_der_derivation_mu, "der is a derivation for mu", 4, 3),
    "invmu-roundtrip": (
        _check_invmu_roundtrip, "invmu is a two-sided mu-inverse", 4, 3),
    "sharp-flat-inverse": (
        _check_sharp_flat_inverse, "sharp and flat are mutually inverse", 4, 3),
    "sharp-swap-anti": (
        _check_sharp_swap_anti,
        "sharp is swap.anti on the lower layer, flat is anti.swap above", 4, 3),
    "unary-weight-homogeneity": (
        _check_unary_weight, "unary operators preserve the weight grading", 4, 3),
    "amit-swap-conjugation": (
        _check_amit_swap, "swap conjugation identity for amit", 4, 3),
    "anit-swap-push": (
        _check_anit_swap_push, "swap conjugation of anit is anit of push", 4, 3),
    "anti-amit-anit-conjugation": (
        _check_anti_amit_anit, "anti conjugation exchanges amit and anit", 4, 3),
    "ari-antisymmetry": (
        _check_ari_antisymmetry, "the ari bracket is antisymmetric", 4, 3),
    "ari-jacobi": (_check_ari_jacobi, "the ari bracket satisfies Jacobi", 3, 2),
    "der-derivation-flexion": (
        _check_der_derivation_flexion,
        "der is a derivation for amit, anit, preari, ari", 4, 3),
    "ihara-action-flexion-expansion": (
        _check_ihara_flexion_expansion,
        "the lower-layer action equals its flexion expansion", 4, 3),
    "ihara-bracket-anti-ila": (
        _check_ihara_anti_ila,
        "the bracket is the anti-conjugated ila bracket", 4, 3),
    "mantar-bracket-transport": (
        _check_mantar_bracket_transport,
        "flat carries the reversed ari bracket to the lower-layer bracket "
        "on reversal-fixed inputs", 4, 2),
    "preari-vconst-closure": (
        _check_preari_vconst,
        "preari and ari restrict to upper-layer bimoulds", 4, 3),
    "shuffle-product": (
        _check_shuffle_product,
        "shuffle expansion: counts, commutativity, associativity", 4, 3),
    "harmonic-product": (
        _check_harmonic_product,
        "harmonic expansion is commutative and associative (chosen rule)", 4, 3),
    "harmonic-literal-noncommutative": (
        _check_harmonic_literal_negative,
        "negative control: the uncorrected contraction breaks commutativity", 2, 1),
    "harmonic-shuffle-base-case": (
        _check_harmonic_base_case,
        "harmonic = shuffle + contraction on single letters", 2, 1),
    "ls-sharp-mantar-invariant": (
        _check_ls_sharp_mantar,
        "sharp of shuffle-vanishing samples is reversal-fixed", 4, 2),
    "negative-odd-parity": (
        _check_negative_parity, "negative control: an odd cube fails parity", 3, 1),
    "negative-shuffle-witness": (
        _check_negative_shuffle,
        "negative control: x1*x2 fails the shuffle condition", 3, 1),
    "pic-consistency": (
        _check_pic_consistency,
        "the geometric bimould equals its mu-inverse construction", 5, 1),
    "pic-push-neutrality": (
        _check_pic_push_neutral, "push orbit sums of the geometric bimould vanish",
        5, 1),
    "darapir-closed-form": (
        _check_darapir_closed_form,
        "the flexion sum equals half the reversed polar generator", 4, 1),
    "diripar-consistency": (
        _check_diripar_consistency,
        "the inverse dilator is the swap of the closed form", 4, 1),
    "psi0-construction": (
        _check_psi0_construction,
        "polar generator: displayed components, degrees, pole structure", 4, 1),
    "psi0-double-shuffle": (
        _check_psi0_double_shuffle,
        "the polar generator satisfies the harmonic double shuffle", 4, 1),
    "witt-bracket": (
        _check_witt_bracket, "de-normalised components obey the Witt law", 4, 1),
    "dilator-roundtrip": (
        _check_dilator_roundtrip,
        "dilator extraction and integration are mutually inverse", 4, 3),
    "adari-dilator-threeway": (
        _check_adari_threeway,
        "left series, right series, and the exponential adjoint agree", 4, 5),
    "dilator-series-der-intertwine": (
        _check_dilator_series_der,
        "der commutators of the two series against the dilator adjoint", 4, 2),
    "exp-ad-der-intertwine": (
        _check_exp_ad_der,
        "der commutator of the exponential adjoint", 4, 2),
    "brown-lift-closed-form": (
        _check_brown_lift_closed_form,
        "lift recursion equals nested-bracket expansion", 4, 1),
    "brown-lift-transport": (
        _check_brown_lift_transport,
        "sharped lift equals the right dilator series on the sharp", 4, 1),
    "brown-lift-double-shuffle": (
        _check_brown_lift_double_shuffle,
        "lifted elements satisfy the harmonic double shuffle", 4, 1),
    "brown-lift-weight": (
        _check_brown_lift_weight, "the lift preserves the weight grading", 4, 1),
    "json-roundtrip": (
        _check_json_roundtrip, "serialisation round-trips canonically", 3, 1),
    "generator-determinism": (
        _check_generator_determinism, "seeded generation is reproducible", 4, 1),
}


def check_names() -> list:
    return sorted(IDENTITY_CATALOG)


def describe_check(name: str) -> str:
    try:
        return IDENTITY_CATALOG[name][1]
    except KeyError:
        raise UnknownCheckError(name) from None


def run_check(spec: CheckSpec) -> CheckReport:
    """Execute one registered check; deterministic in the spec."""
    try:
        func, _, default_len, default_trials = IDENTITY_CATALOG[spec.name]
    except KeyError:
        raise UnknownCheckError(spec.name) from None
    resolved = spec.resolved(default_len, default_trials)
    start = time.perf_counter()
    report = func(resolved)
    report.duration = time.perf_counter() - start
    return report


def _thread_count() -> int:
    raw = os.environ.get("FLEXION_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_many(specs: Iterable[CheckSpec]) -> dict:
    """Run several checks, optionally in parallel (FLEXION_THREADS caps it)."""
    specs = list(specs)
    threads = min(_thread_count(), len(specs)) if specs else 1
    if threads <= 1:
        reports = [run_check(s) for s in specs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run_check, specs))
    return {r.name: r for r in reports}
