"""Binary flexion operators, the ari/ila Lie structure, and the Ihara action.

The two elementary actions sum over decompositions of the letter sequence
into consecutive blocks a, b, c:

* ``amit(b_arg)(a_arg)`` keeps blocks ``a`` and ``c`` in the operand
  (b, c nonempty); the first letter of ``c`` absorbs the u-sum of ``b``
  and every v of ``b`` is lowered by the first v of ``c``.
* ``anit(b_arg)(a_arg)`` keeps ``a`` and ``c`` (a, b nonempty); the last
  letter of ``a`` absorbs the u-sum of ``b`` and every v of ``b`` is
  lowered by the last v of ``a``.

This orientation is the one validated by the identity suite (the swap
conjugation identities and the expansion of the Ihara action); a sign or
side error breaks those checks already in length two.

The Ihara action itself is implemented independently, straight from its
two-sum formula on lower-layer components with the boundary convention
``x_0 = 0``, so the flexion expansion can be cross-checked against it.
"""
from __future__ import annotations

import math
from typing import Optional

from .bimould import Bimould, LayerMismatchError, linear_combine, mu
from .exactalg import Q, RatFun, uvar, vvar

__all__ = [
    "NotLUError",
    "amit",
    "anit",
    "arit",
    "axit",
    "ilat",
    "preari",
    "ari",
    "preila",
    "ila",
    "expari",
    "exp_ad_ari",
    "ihara_action",
    "ihara_bracket",
]


class NotLUError(ValueError):
    """The acting bimould must have no constant term."""


def _require_lu(b: Bimould, role: str = "actor") -> None:
    if not b.is_lu():
        raise NotLUError(f"{role} must have zero constant term")


# The dilator solvers and the adjoint series substitute the same component
# along the same flexion map over and over; memoising on the (immutable)
# value and a frozen form of the map removes most of that cost.
_SUBST_CACHE: dict = {}
_SUBST_CACHE_LIMIT = 1 << 17


def _subst(f: RatFun, sigma: tuple) -> RatFun:
    key = (f, sigma)
    hit = _SUBST_CACHE.get(key)
    if hit is None:
        if len(_SUBST_CACHE) >= _SUBST_CACHE_LIMIT:
            _SUBST_CACHE.clear()
        hit = f.substitute({v: dict(image) for v, image in sigma})
        _SUBST_CACHE[key] = hit
    return hit


def _wanted_lengths(truncation: int, lengths, lowest: int):
    if lengths is None:
        return range(lowest, truncation + 1)
    return [r for r in lengths if lowest <= r <= truncation]


def amit(actor: Bimould, operand: Bimould, lengths=None) -> Bimould:
    """Left flexion action of ``actor`` on ``operand``."""
    _require_lu(actor)
    truncation = min(actor.truncation, operand.truncation)
    out = {}
    for r in _wanted_lengths(truncation, lengths, 2):
        terms = []
        for q in range(1, r):  # |b|
            fb = actor.component(q)
            if fb.is_zero():
                continue
            for p in range(0, r - q):  # |a|; |c| = r - p - q >= 1
                s = r - p - q
                fa = operand.component(p + s)
                if fa.is_zero():
                    continue
                sig_a = [
                    (uvar(p + 1), tuple((uvar(j), 1) for j in range(p + 1, p + q + 2))),
                    (vvar(p + 1), ((vvar(p + q + 1), 1),)),
                ]
                for k in range(2, s + 1):
                    sig_a.append((uvar(p + k), ((uvar(p + q + k), 1),)))
                    sig_a.append((vvar(p + k), ((vvar(p + q + k), 1),)))
                sig_b = []
                for j in range(1, q + 1):
                    sig_b.append((uvar(j), ((uvar(p + j), 1),)))
                    sig_b.append((vvar(j), ((vvar(p + j), 1), (vvar(p + q + 1), -1))))
                terms.append(_subst(fa, tuple(sig_a)) * _subst(fb, tuple(sig_b)))
        value = RatFun.sum(terms)
        if not value.is_zero():
            out[r] = value
    weight = None
    if actor.weight is not None and operand.weight is not None:
        weight = actor.weight + operand.weight
    return Bimould(out, truncation, weight=weight, _trusted=True)


def anit(actor: Bimould, operand: Bimould, lengths=None) -> Bimould:
    """Right flexion action of ``actor`` on ``operand``."""
    _require_lu(actor)
    truncation = min(actor.truncation, operand.truncation)
    out = {}
    for r in _wanted_lengths(truncation, lengths, 2):
        terms = []
        for q in range(1, r):  # |b|
            fb = actor.component(q)
            if fb.is_zero():
                continue
            for p in range(1, r - q + 1):  # |a| >= 1; |c| = r - p - q >= 0
                s = r - p - q
                fa = operand.component(p + s)
                if fa.is_zero():
                    continue
                sig_a = [
                    (uvar(p), tuple((uvar(j), 1) for j in range(p, p + q + 1))),
                ]
                for k in range(1, s + 1):
                    sig_a.append((uvar(p + k), ((uvar(p + q + k), 1),)))
                    sig_a.append((vvar(p + k), ((vvar(p + q + k), 1),)))
                sig_b = []
                for j in range(1, q + 1):
                    sig_b.append((uvar(j), ((uvar(p + j), 1),)))
                    sig_b.append((vvar(j), ((vvar(p + j), 1), (vvar(p), -1))))
                terms.append(_subst(fa, tuple(sig_a)) * _subst(fb, tuple(sig_b)))
        value = RatFun.sum(terms)
        if not value.is_zero():
            out[r] = value
    weight = None
    if actor.weight is not None and operand.weight is not None:
        weight = actor.weight + operand.weight
    return Bimould(out, truncation, weight=weight, _trusted=True)


def arit(actor: Bimould, operand: Bimould, lengths=None) -> Bimould:
    """amit minus anit; the derivation entering preari."""
    return amit(actor, operand, lengths) - anit(actor, operand, lengths)


def axit(left_actor: Bimould, right_actor: Bimould, operand: Bimould) -> Bimould:
    """amit by one actor plus anit by another."""
    return amit(left_actor, operand) + anit(right_actor, operand)


def _neg_pari_anti(b: Bimould) -> Bimould:
    return b.anti().pari().neg()


def ilat(actor: Bimould, operand: Bimould) -> Bimould:
    """axit with the right side twisted by neg . pari . anti."""
    _require_lu(actor)
    return axit(actor, _neg_pari_anti(actor), operand)


def preari(operand: Bimould, actor: Bimould, lengths=None) -> Bimould:
    """arit(actor)(operand) + mu(operand, actor)."""
    _require_lu(actor)
    return arit(actor, operand, lengths) + mu(operand, actor, lengths)


def ari(a: Bimould, b: Bimould) -> Bimould:
    """The flexion Lie bracket: preari(a, b) - preari(b, a)."""
    _require_lu(a, "first argument")
    _require_lu(b, "second argument")
    return preari(a, b) - preari(b, a)


def preila(a: Bimould, b: Bimould) -> Bimould:
    """ilat(b)(a) + mu(a, b)."""
    _require_lu(a, "first argument")
    _require_lu(b, "second argument")
    return ilat(b, a) + mu(a, b)


def ila(a: Bimould, b: Bimould) -> Bimould:
    """Antisymmetrised preila."""
    return preila(a, b) - preila(b, a)


def expari(l: Bimould, max_length: Optional[int] = None) -> Bimould:
    """Group exponential: 1 + sum_n (1/n!) preari(...preari(l, l)..., l).

    The nesting iterates on the left, so the partial sums solve the
    one-parameter-subgroup equation S' = preari(S, l); in particular the
    group inverse of ``expari(l)`` is ``expari(-l)`` and the adjoint action
    of ``expari(l)`` is the exponential of ari(l, .).  Each nesting raises
    the minimal length, so the truncation makes the series finite.
    """
    _require_lu(l, "exponent")
    if max_length is None:
        max_length = l.truncation
    l = l.truncated(max_length)
    result = Bimould.unit(max_length)
    if l.is_zero():
        return result
    nested = l
    n = 1
    while n <= max_length and not nested.is_zero():
        result = linear_combine([Q(1), Q(1, math.factorial(n))], [result, nested])
        nested = preari(nested, l)
        n += 1
    return result


def exp_ad_ari(l: Bimould, b: Bimould, max_length: Optional[int] = None) -> Bimould:
    """Exponential of the adjoint: sum_n (1/n!) ari(l, ari(l, ..., ari(l, b)))."""
    _require_lu(l, "exponent")
    _require_lu(b, "operand")
    if max_length is None:
        max_length = min(l.truncation, b.truncation)
    l = l.truncated(max_length)
    result = b.truncated(max_length)
    nested = result
    n = 1
    while n <= max_length and not nested.is_zero():
        nested = ari(l, nested)
        if nested.is_zero():
            break
        result = linear_combine([Q(1), Q(1, math.factorial(n))], [result, nested])
        n += 1
    return result


def ihara_action(f: Bimould, g: Bimould) -> Bimould:
    """Lower-layer action on scalar components, from its two-sum formula.

    Both arguments must be u-constant with no constant term.  The boundary
    convention is x_0 = 0, so the i = 0 summand reads
    f(x_1, ..., x_r) * g(tail).
    """
    for h, role in ((f, "left"), (g, "right")):
        if not h.is_u_constant():
            raise LayerMismatchError(f"{role} argument must be u-constant")
        _require_lu(h, f"{role} argument")
    truncation = min(f.truncation, g.truncation)
    out = {}
    for n in range(2, truncation + 1):
        terms = []
        for r in range(1, n):
            fr = f.component(r)
            if fr.is_zero():
                continue
            s = n - r
            gs = g.component(s)
            if gs.is_zero():
                continue
            for i in range(0, s + 1):
                sig_f = {}
                for j in range(1, r + 1):
                    image = {vvar(i + j): 1}
                    if i:
                        image[vvar(i)] = image.get(vvar(i), 0) - 1
                    sig_f[vvar(j)] = {k: c for k, c in image.items() if c}
                sig_g = {
                    vvar(j): {vvar(j if j <= i else j + r): 1} for j in range(1, s + 1)
                }
                terms.append(fr.substitute(sig_f) * gs.substitute(sig_g))
            sign = Q(-1) if r % 2 else Q(1)
            for i in range(1, s + 1):
                sig_f = {
                    vvar(j): {vvar(i + r): 1, vvar(i + r - j): -1}
                    for j in range(1, r)
                }
                sig_f[vvar(r)] = {vvar(i + r): 1, vvar(i): -1}
                sig_g = {
                    vvar(j): {vvar(j if j <= i - 1 else j + r): 1}
                    for j in range(1, s + 1)
                }
                terms.append(
                    (fr.substitute(sig_f) * gs.substitute(sig_g)).scale(sign)
                )
        value = RatFun.sum(terms)
        if not value.is_zero():
            out[n] = value
    weight = None
    if f.weight is not None and g.weight is not None:
        weight = f.weight + g.weight
    return Bimould(out, truncation, weight=weight, _trusted=True)


def ihara_bracket(f: Bimould, g: Bimould) -> Bimould:
    """Commutator of the lower-layer action."""
    return ihara_action(f, g) - ihara_action(g, f)
