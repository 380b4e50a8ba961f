"""Named bimoulds and the dilator / adjoint-series / lifting machinery.

The polar pair 1/u1 and 1/v1 generates everything here:

* ``pic``: the geometric inverse of (1 - 1/v1), with the product closed
  form 1/(v1...vr); it is push-neutral.
* ``psi0``: the polar length-graded generator whose signed reversal halves
  to the closed flexion sum ``darapir_closed_form``.
* the gari-dilator correspondence ``der(S) = preari(S, di S)`` solved in
  both directions, length by length.
* ``adari_dilator``: the adjoint action expanded as a series in
  ari-adjoints of dilator components.  The ``left`` expansion consumes the
  dilator of S itself; the ``right`` expansion consumes the dilator of the
  group inverse and carries an alternating sign (the sign is forced by the
  first-order expansion and by the derivation identity
  [der, R] = -ari(di ri S) . R; without it the series disagrees with the
  exponential adjoint already in length two).
* ``brown_lift``: the bracket recursion lifting a single-length element,
  plus its closed nested-bracket expansion.
"""
from __future__ import annotations

import math
from typing import Iterator, Optional

from .bimould import Bimould, LayerMismatchError, bm_equal, linear_combine, mu, invmu
from .exactalg import Q, Poly, RatFun, uvar, vvar
from .flexops import NotLUError, ari, ihara_bracket, preari

__all__ = [
    "NotGrouplikeConstantError",
    "NotLengthHomogeneousError",
    "polar_unit",
    "pic",
    "psi0",
    "witt_generator",
    "witt_generators",
    "diri_par",
    "darapir_closed_form",
    "dilator_of",
    "mould_from_dilator",
    "adari_dilator",
    "compositions",
    "brown_lift",
    "brown_lift_closed_form",
    "brown_lift_linear",
    "generalized_lift",
]


class NotGrouplikeConstantError(ValueError):
    """Dilator extraction needs constant term 1."""


class NotLengthHomogeneousError(ValueError):
    """The lifting recursion starts from a single-length element."""


def polar_unit(kind: str, truncation: int = 1) -> Bimould:
    """The polar flexion units: 'Pa' is 1/u1, 'Pi' is 1/v1."""
    if kind == "Pa":
        value = RatFun.inv_linform({uvar(1): 1})
    elif kind == "Pi":
        value = RatFun.inv_linform({vvar(1): 1})
    else:
        raise ValueError(f"unknown polar unit {kind!r}")
    return Bimould.single(1, value, truncation=truncation, weight=0)


def pic(max_length: int) -> Bimould:
    """Product bimould 1/(v1...vr), cross-checked against its mu-inverse form."""
    comps = {0: RatFun.one()}
    for r in range(1, max_length + 1):
        value = RatFun.one()
        for i in range(1, r + 1):
            value = value * RatFun.inv_linform({vvar(i): 1})
        comps[r] = value
    product_form = Bimould(comps, max_length, weight=0, _trusted=True)
    one_minus_pi = linear_combine(
        [Q(1), Q(-1)], [Bimould.unit(max_length), polar_unit("Pi", max_length)]
    )
    if not bm_equal(invmu(one_minus_pi), product_form):
        raise AssertionError("pic: mu-inverse and product forms disagree")
    return product_form


def psi0(max_length: int) -> Bimould:
    """The polar generator; length d carries weight-0 homogeneous poles.

    Component d is binom(d+1, 2)^(-1) times
    d/(x1...xd) + sum_k (d-k) / ((-x_k) prod_{j != k} (x_j - x_k)).
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    comps = {}
    for d in range(1, max_length + 1):
        terms = []
        lead = RatFun.const(d)
        for j in range(1, d + 1):
            lead = lead * RatFun.inv_linform({vvar(j): 1})
        terms.append(lead)
        for k in range(1, d):
            term = RatFun.const(-(d - k)) * RatFun.inv_linform({vvar(k): 1})
            for j in range(1, d + 1):
                if j != k:
                    term = term * RatFun.inv_linform({vvar(j): 1, vvar(k): -1})
            terms.append(term)
        comps[d] = RatFun.sum(terms).scale(Q(2, d * (d + 1)))
    return Bimould(comps, max_length, weight=0)


def witt_generator(d: int, truncation: Optional[int] = None) -> Bimould:
    """psi0's length-d component with the binomial prefactor removed.

    The truncation may exceed d so that brackets of generators have room
    to live in length m + n.
    """
    gen = psi0(d).leng(d).scale(Q(d * (d + 1), 2))
    if truncation is not None and truncation != d:
        gen = Bimould(dict(gen.components), truncation, weight=0, _trusted=True)
    return gen


def witt_generators(max_d: int, truncation: Optional[int] = None) -> list:
    return [witt_generator(d, truncation) for d in range(1, max_d + 1)]


def diri_par(max_length: int) -> Bimould:
    """The inverse dilator feeding the right-hand adjoint expansion.

    Obtained as swap((1/2) anti(psi0)); this is the only route to the
    underlying group element used here.
    """
    return psi0(max_length).anti().scale(Q(1, 2)).swap()


def _flexed_pic_block(indices: list, base: int) -> RatFun:
    """pic on a block whose v's are lowered by v_base: prod 1/(v_j - v_base)."""
    value = RatFun.one()
    for j in indices:
        value = value * RatFun.inv_linform({vvar(j): 1, vvar(base): -1})
    return value


def darapir_closed_form(max_length: int) -> Bimould:
    """Explicit flexion sum equal to (1/2) anti(psi0).

    Length r is 1/(r(r+1)) times the sum over the marked letter i of
    (r+1-i) * pic(left block lowered by v_i) * (1/v_i) * pic(right block
    lowered by v_i); the middle letter's u-flexion absorbs every other u
    and is invisible to the v-pole.
    """
    comps = {}
    for r in range(1, max_length + 1):
        terms = []
        for i in range(1, r + 1):
            term = RatFun.const(r + 1 - i)
            term = term * _flexed_pic_block(list(range(1, i)), i)
            term = term * RatFun.inv_linform({vvar(i): 1})
            term = term * _flexed_pic_block(list(range(i + 1, r + 1)), i)
            terms.append(term)
        comps[r] = RatFun.sum(terms).scale(Q(1, r * (r + 1)))
    return Bimould(comps, max_length, weight=0)


def dilator_of(s: Bimould, max_length: Optional[int] = None) -> Bimould:
    """Solve der(S) = preari(S, D) for D, length by length."""
    if not s.component(0).is_one():
        raise NotGrouplikeConstantError("dilator extraction needs constant term 1")
    if max_length is None:
        max_length = s.truncation
    s = s.truncated(max_length)
    d = Bimould.zero(max_length)
    der_s = s.der()
    for r in range(1, max_length + 1):
        # component r of preari(s, d) involves only components of d below r
        residue = der_s.component(r) - preari(s, d, lengths=(r,)).component(r)
        if not residue.is_zero():
            d = d.with_component(r, residue)
    return d


def mould_from_dilator(d: Bimould, max_length: Optional[int] = None) -> Bimould:
    """Solve der(S) = preari(S, D) for S with constant term 1."""
    if not d.is_lu():
        raise NotLUError("a dilator has zero constant term")
    if max_length is None:
        max_length = d.truncation
    d = d.truncated(max_length)
    weight = 0 if d.weight == 0 else None
    s = Bimould({0: RatFun.one()}, max_length, weight=weight, _trusted=True)
    for r in range(1, max_length + 1):
        value = preari(s, d, lengths=(r,)).component(r).scale(Q(1, r))
        if not value.is_zero():
            s = s.with_component(r, value)
    return s


def compositions(total: int) -> Iterator[tuple]:
    """All ordered tuples of positive integers with the given sum."""
    if total == 0:
        yield ()
        return
    for head in range(1, total + 1):
        for tail in compositions(total - head):
            yield (head,) + tail


def adari_dilator(
    d: Bimould, b: Bimould, side: str = "left", max_length: Optional[int] = None
) -> Bimould:
    """Adjoint action expanded as a series in ari-adjoints of dilator slices.

    ``side='left'`` consumes the dilator of the group element itself:

        sum over (r_1..r_s) of  ari(leng_{r_1} D, ... ari(leng_{r_s} D, B))
                                / (r_1 (r_1+r_2) ... (r_1+...+r_s))

    ``side='right'`` consumes the dilator of the group inverse, with the
    operator order reversed and an alternating sign (-1)^s.  The empty
    composition contributes B itself.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not d.is_lu():
        raise NotLUError("dilator must have zero constant term")
    if not b.is_lu():
        raise NotLUError("operand must have zero constant term")
    if max_length is None:
        max_length = min(d.truncation, b.truncation)
    b = b.truncated(max_length)
    base = b.min_length()
    if base is None:
        return b
    budget = max_length - base
    pieces = {r: d.leng(r) for r in range(1, budget + 1)}
    nested: dict = {(): b}

    def nest(seq: tuple) -> Bimould:
        if seq in nested:
            return nested[seq]
        if side == "left":
            inner = nest(seq[1:])
            value = ari(pieces[seq[0]], inner)
        else:
            inner = nest(seq[:-1])
            value = ari(pieces[seq[-1]], inner)
        nested[seq] = value
        return value

    terms = [b]
    coeffs = [Q(1)]
    for total in range(1, budget + 1):
        for seq in compositions(total):
            coeff = Q(1)
            running = 0
            for part in seq:
                running += part
                coeff = coeff / running
            if side == "right" and len(seq) % 2:
                coeff = -coeff
            value = nest(seq)
            if not value.is_zero():
                terms.append(value)
                coeffs.append(coeff)
    return linear_combine(coeffs, terms)


def _single_support_length(f: Bimould) -> int:
    lengths = sorted(f.components)
    if len(lengths) != 1 or lengths[0] < 1:
        raise NotLengthHomogeneousError(
            "lifting starts from a bimould supported in a single positive length"
        )
    return lengths[0]


def _lift_recursion(kernel: Bimould, f: Bimould, max_length: int) -> Bimould:
    if f.is_zero():
        return Bimould.zero(max_length)
    d = _single_support_length(f)
    if not f.is_u_constant():
        raise LayerMismatchError("lifting acts on u-constant bimoulds")
    weight = f.weight if kernel.weight == 0 else None
    out = Bimould({d: f.component(d)}, max_length, weight=weight)
    for r in range(1, max_length - d + 1):
        terms = []
        for i in range(1, r + 1):
            lower = out.leng(d + r - i)
            if lower.is_zero():
                continue
            piece = kernel.leng(i)
            if piece.is_zero():
                continue
            terms.append(ihara_bracket(piece, lower).component(d + r))
        value = RatFun.sum(terms).scale(Q(1, 2 * r))
        if not value.is_zero():
            out = out.with_component(d + r, value)
    return out


def brown_lift(f: Bimould, max_length: int) -> Bimould:
    """Bracket recursion against the polar generator.

    Starting from a single-length element, length d+r receives
    (1/2r) sum_i { psi0^(i), previous^(d+r-i) }.
    """
    return _lift_recursion(psi0(max_length), f, max_length)


def brown_lift_closed_form(f: Bimould, max_length: int) -> Bimould:
    """Nested-bracket expansion of the lift; must agree with the recursion.

    Length d+r collects, over compositions (r_1, ..., r_s) of r,
    the bracket { psi0^(r_1)/2, { ... { psi0^(r_s)/2, f } ... } } divided by
    (r_1+...+r_s)(r_2+...+r_s)...(r_s).
    """
    if f.is_zero():
        return Bimould.zero(max_length)
    d = _single_support_length(f)
    if not f.is_u_constant():
        raise LayerMismatchError("lifting acts on u-constant bimoulds")
    kernel = psi0(max_length).scale(Q(1, 2))
    nested: dict = {(): f.truncated(max_length)}

    def nest(seq: tuple) -> Bimould:
        if seq in nested:
            return nested[seq]
        inner = nest(seq[1:])
        value = ihara_bracket(kernel.leng(seq[0]), inner)
        nested[seq] = value
        return value

    terms = [f.truncated(max_length)]
    coeffs = [Q(1)]
    for r in range(1, max_length - d + 1):
        for seq in compositions(r):
            coeff = Q(1)
            for j in range(len(seq)):
                coeff = coeff / sum(seq[j:])
            value = nest(seq)
            if not value.is_zero():
                terms.append(value)
                coeffs.append(coeff)
    return linear_combine(coeffs, terms)


def brown_lift_linear(f: Bimould, max_length: int) -> Bimould:
    """Length-by-length linear extension of the lift.

    Not canonical: the recursion is only pinned down on single-length
    input, and nothing here asserts compatibility of this extension with
    the adjoint transport.
    """
    parts = [
        brown_lift(f.leng(r), max_length) for r in sorted(f.components) if r >= 1
    ]
    if not parts:
        return Bimould.zero(max_length)
    return linear_combine([Q(1)] * len(parts), parts)


def generalized_lift(kernel: Bimould, f: Bimould, max_length: int) -> Bimould:
    """Same recursion with an arbitrary u-constant kernel in place of psi0.

    The 1/2 prefactor convention is retained, so the polar kernel
    specialises back to :func:`brown_lift`.  No transport or membership
    claim is attached to other kernels.
    """
    if not kernel.is_u_constant():
        raise LayerMismatchError("the kernel must be u-constant")
    if not kernel.is_lu():
        raise NotLUError("the kernel must have zero constant term")
    return _lift_recursion(kernel.truncated(max_length), f, max_length)
