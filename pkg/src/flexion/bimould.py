"""Length-graded families of rational functions and their unary operators.

A bimould stores, for each length ``r`` up to a finite truncation, a rational
function of ``u1..ur, v1..vr``.  All operations are exact below the
truncation and silently drop anything above it; binary operations truncate
to the shorter operand.

The substitution conventions that are not forced by the component formulas
alone (``swap``, ``push``, and the sign in ``mantar``) are pinned down by
the identity suite: ``sharp == swap . anti`` on lower-layer inputs, the
factorisation ``push == neg . mantar . swap . mantar . swap``, and the
order ``r + 1`` of ``push`` in length ``r``.
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping, Optional

from .exactalg import Q, RatFun, Var, is_uvar, is_vvar, uvar, var_index, vvar

__all__ = [
    "Bimould",
    "LayerMismatchError",
    "NotInvertibleError",
    "mu",
    "invmu",
    "linear_combine",
    "sharp",
    "flat",
    "to_lower_layer",
    "to_upper_layer",
    "apply_unary",
    "UNARY_NAMES",
    "bm_equal",
    "first_difference",
]


class LayerMismatchError(ValueError):
    """Input bimould does not live in the required layer."""


class NotInvertibleError(ValueError):
    """mu-inversion needs constant term 1."""


class Bimould:
    """Finitely truncated bimould with exact rational-function components.

    ``components`` maps lengths to nonzero components; the length-0
    component, when present, is a constant.  ``weight`` optionally asserts
    that the length-``r`` component is homogeneous of degree ``weight - r``.
    """

    __slots__ = ("truncation", "components", "weight")

    def __init__(
        self,
        components: Mapping[int, RatFun],
        truncation: int,
        weight: Optional[int] = None,
        _trusted: bool = False,
    ):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        comps = {
            r: f for r, f in components.items() if r <= truncation and not f.is_zero()
        }
        self.truncation = truncation
        self.components = comps
        self.weight = weight
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        for r, f in self.components.items():
            if r < 0:
                raise ValueError(f"negative length {r}")
            for var in f.variables():
                if var_index(var) > r:
                    raise ValueError(
                        f"length-{r} component mentions out-of-range variable"
                    )
            if self.weight is not None:
                deg = f.is_homogeneous()
                if deg is None or deg != self.weight - r:
                    raise ValueError(
                        f"length-{r} component is not homogeneous of degree "
                        f"{self.weight - r}"
                    )

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, truncation: int) -> "Bimould":
        return cls({}, truncation, _trusted=True)

    @classmethod
    def unit(cls, truncation: int) -> "Bimould":
        """mu-unit: constant term 1, nothing else."""
        return cls({0: RatFun.one()}, truncation, weight=0, _trusted=True)

    @classmethod
    def single(
        cls,
        length: int,
        value: RatFun,
        truncation: Optional[int] = None,
        weight: Optional[int] = None,
    ) -> "Bimould":
        if truncation is None:
            truncation = length
        return cls({length: value}, truncation, weight=weight)

    # -- queries ------------------------------------------------------

    def component(self, r: int) -> RatFun:
        return self.components.get(r, RatFun.zero())

    __getitem__ = component

    def min_length(self) -> Optional[int]:
        """Smallest length with a nonzero component, or None when zero."""
        return min(self.components) if self.components else None

    def is_zero(self) -> bool:
        return not self.components

    def is_lu(self) -> bool:
        """No constant term."""
        return 0 not in self.components

    def is_u_constant(self) -> bool:
        """Independent of the upper layer (mentions no u variables)."""
        return not any(
            is_uvar(var) for f in self.components.values() for var in f.variables()
        )

    def is_v_constant(self) -> bool:
        """Independent of the lower layer (mentions no v variables)."""
        return not any(
            is_vvar(var) for f in self.components.values() for var in f.variables()
        )

    def layer(self) -> str:
        has_u = not self.is_u_constant()
        has_v = not self.is_v_constant()
        if has_u and not has_v:
            return "v-const"
        if has_v and not has_u:
            return "u-const"
        return "general"

    # -- componentwise helpers -----------------------------------------

    def map_components(
        self,
        fn: Callable[[int, RatFun], RatFun],
        weight: Optional[int] = "keep",  # type: ignore[assignment]
    ) -> "Bimould":
        out = {}
        for r, f in self.components.items():
            g = fn(r, f)
            if not g.is_zero():
                out[r] = g
        w = self.weight if weight == "keep" else weight
        return Bimould(out, self.truncation, weight=w, _trusted=True)

    def truncated(self, truncation: int) -> "Bimould":
        comps = {r: f for r, f in self.components.items() if r <= truncation}
        return Bimould(comps, truncation, weight=self.weight, _trusted=True)

    def with_component(self, r: int, value: RatFun) -> "Bimould":
        comps = dict(self.components)
        if value.is_zero():
            comps.pop(r, None)
        else:
            comps[r] = value
        return Bimould(comps, self.truncation, weight=self.weight)

    # -- additive structure ---------------------------------------------

    def __add__(self, other: "Bimould") -> "Bimould":
        return linear_combine([Q(1), Q(1)], [self, other])

    def __sub__(self, other: "Bimould") -> "Bimould":
        return linear_combine([Q(1), Q(-1)], [self, other])

    def __neg__(self) -> "Bimould":
        return self.scale(Q(-1))

    def scale(self, value) -> "Bimould":
        q = Q(value) if not isinstance(value, Q) else value
        if not q:
            return Bimould.zero(self.truncation)
        return self.map_components(lambda r, f: f.scale(q))

    # -- unary operators -------------------------------------------------

    def anti(self) -> "Bimould":
        """Reverse the letter sequence of every component."""

        def op(r: int, f: RatFun) -> RatFun:
            mapping = {}
            for i in range(1, r + 1):
                mapping[uvar(i)] = uvar(r + 1 - i)
                mapping[vvar(i)] = vvar(r + 1 - i)
            return f.rename(mapping)

        return self.map_components(op)

    def pari(self) -> "Bimould":
        """Multiply the length-r component by (-1)**r."""
        return self.map_components(lambda r, f: f if r % 2 == 0 else -f)

    def neg(self) -> "Bimould":
        """Negate every variable (not the additive inverse; see __neg__)."""

        def op(r: int, f: RatFun) -> RatFun:
            sigma = {}
            for i in range(1, r + 1):
                sigma[uvar(i)] = {uvar(i): -1}
                sigma[vvar(i)] = {vvar(i): -1}
            return f.substitute(sigma)

        return self.map_components(op)

    def mantar(self) -> "Bimould":
        """Signed reversal (-1)**(r-1) . anti."""
        return self.anti().map_components(lambda r, f: -f if r % 2 == 0 else f)

    def der(self) -> "Bimould":
        """Scale the length-r component by r."""
        return self.map_components(lambda r, f: f.scale(Q(r)))

    def leng(self, r: int) -> "Bimould":
        """Keep only the length-r component."""
        comps = {}
        if r in self.components:
            comps[r] = self.components[r]
        return Bimould(comps, self.truncation, weight=self.weight, _trusted=True)

    def push(self) -> "Bimould":
        """Cyclic-type substitution of order r+1 on the length-r component."""

        def op(r: int, f: RatFun) -> RatFun:
            if r == 0:
                return f
            sigma = {
                uvar(1): {uvar(j): -1 for j in range(1, r + 1)},
                vvar(1): {vvar(r): -1},
            }
            for i in range(2, r + 1):
                sigma[uvar(i)] = {uvar(i - 1): 1}
                sigma[vvar(i)] = {vvar(i - 1): 1, vvar(r): -1}
            return f.substitute(sigma)

        return self.map_components(op)

    def push_pow(self, k: int) -> "Bimould":
        out = self
        for _ in range(k):
            out = out.push()
        return out

    def swap(self) -> "Bimould":
        """Exchange the u- and v-descriptions of every component."""

        def op(r: int, f: RatFun) -> RatFun:
            sigma = {}
            for i in range(1, r + 1):
                image = {vvar(r + 1 - i): 1}
                if r + 2 - i <= r:
                    image[vvar(r + 2 - i)] = -1
                sigma[uvar(i)] = image
                sigma[vvar(i)] = {uvar(j): 1 for j in range(1, r + 2 - i)}
            return f.substitute(sigma)

        return self.map_components(op)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bimould)
            and self.truncation == other.truncation
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.truncation, frozenset(self.components.items())))

    def __repr__(self):
        return f"Bimould(truncation={self.truncation}, lengths={sorted(self.components)})"

    def __str__(self):
        if not self.components:
            return f"0 (truncation {self.truncation})"
        lines = [f"r={r}: {self.components[r]}" for r in sorted(self.components)]
        return "\n".join(lines)


def _combine_weight(a: Optional[int], b: Optional[int], mode: str) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b if mode == "add" else (a if a == b else None)


def _shift_map(length: int, offset: int) -> dict:
    mapping = {}
    for j in range(1, length + 1):
        mapping[uvar(j)] = uvar(j + offset)
        mapping[vvar(j)] = vvar(j + offset)
    return mapping


def mu(a: Bimould, b: Bimould, lengths: Optional[Iterable[int]] = None) -> Bimould:
    """Concatenation product: sum over splittings of the letter sequence.

    ``lengths`` restricts which result components are computed (the rest
    are dropped); used by the length-by-length solvers.
    """
    truncation = min(a.truncation, b.truncation)
    wanted = range(truncation + 1) if lengths is None else \
        [r for r in lengths if 0 <= r <= truncation]
    out = {}
    for r in wanted:
        terms = []
        for i in range(r + 1):
            fa = a.component(i)
            if fa.is_zero():
                continue
            fb = b.component(r - i)
            if fb.is_zero():
                continue
            if i and r - i:
                fb = fb.rename(_shift_map(r - i, i))
            terms.append(fa * fb)
        value = RatFun.sum(terms)
        if not value.is_zero():
            out[r] = value
    return Bimould(
        out, truncation, weight=_combine_weight(a.weight, b.weight, "add"), _trusted=True
    )


def invmu(s: Bimould) -> Bimould:
    """Two-sided mu-inverse, computed length by length."""
    if not s.component(0).is_one():
        raise NotInvertibleError("mu-inverse needs constant term 1")
    truncation = s.truncation
    inv = Bimould({0: RatFun.one()}, truncation, weight=s.weight, _trusted=True)
    for r in range(1, truncation + 1):
        terms = []
        for i in range(1, r + 1):
            fa = s.component(i)
            if fa.is_zero():
                continue
            fb = inv.component(r - i)
            if fb.is_zero():
                continue
            if r - i:
                fb = fb.rename(_shift_map(r - i, i))
            terms.append(fa * fb)
        value = -RatFun.sum(terms)
        if not value.is_zero():
            inv = inv.with_component(r, value)
    return inv


def linear_combine(coeffs: Iterable, bimoulds: Iterable[Bimould]) -> Bimould:
    """Componentwise linear combination with rational coefficients."""
    coeffs = list(coeffs)
    bimoulds = list(bimoulds)
    if len(coeffs) != len(bimoulds):
        raise ValueError("coefficient/bimould count mismatch")
    if not bimoulds:
        raise ValueError("empty combination")
    truncation = min(b.truncation for b in bimoulds)
    out = {}
    for r in range(truncation + 1):
        value = RatFun.sum(
            b.component(r).scale(c) for c, b in zip(coeffs, bimoulds)
        )
        if not value.is_zero():
            out[r] = value
    weight = None
    weights = {b.weight for b in bimoulds if not b.is_zero()}
    if len(weights) == 1:
        weight = weights.pop()
    return Bimould(out, truncation, weight=weight, _trusted=True)


def sharp(f: Bimould) -> Bimould:
    """Lower-layer to upper-layer passage x_i -> x_1 + ... + x_i.

    Acts on u-constant bimoulds; coincides with swap . anti there.
    """
    if not f.is_u_constant():
        raise LayerMismatchError("sharp expects a u-constant bimould")

    def op(r: int, g: RatFun) -> RatFun:
        sigma = {
            vvar(i): {uvar(j): 1 for j in range(1, i + 1)} for i in range(1, r + 1)
        }
        return g.substitute(sigma)

    return f.map_components(op)


def flat(f: Bimould) -> Bimould:
    """Upper-layer to lower-layer passage x_i -> x_i - x_{i-1}.

    Acts on v-constant bimoulds; coincides with anti . swap there.
    """
    if not f.is_v_constant():
        raise LayerMismatchError("flat expects a v-constant bimould")

    def op(r: int, g: RatFun) -> RatFun:
        sigma = {uvar(1): {vvar(1): 1}}
        for i in range(2, r + 1):
            sigma[uvar(i)] = {vvar(i): 1, vvar(i - 1): -1}
        return g.substitute(sigma)

    return f.map_components(op)


def to_lower_layer(f: Bimould) -> Bimould:
    """Rename u_i to v_i in a v-constant bimould (same scalar function)."""
    if not f.is_v_constant():
        raise LayerMismatchError("expected a v-constant bimould")
    return f.map_components(
        lambda r, g: g.substitute({uvar(i): {vvar(i): 1} for i in range(1, r + 1)})
    )


def to_upper_layer(f: Bimould) -> Bimould:
    """Rename v_i to u_i in a u-constant bimould (same scalar function)."""
    if not f.is_u_constant():
        raise LayerMismatchError("expected a u-constant bimould")
    return f.map_components(
        lambda r, g: g.substitute({vvar(i): {uvar(i): 1} for i in range(1, r + 1)})
    )


UNARY_NAMES = ("anti", "pari", "neg", "mantar", "der", "swap", "push", "leng", "pushpow")


def apply_unary(name: str, a: Bimould, k: Optional[int] = None) -> Bimould:
    """Dispatch a unary operator by name (leng and pushpow take a parameter)."""
    if name == "leng":
        if k is None:
            raise ValueError("leng needs a length parameter")
        return a.leng(k)
    if name == "pushpow":
        if k is None:
            raise ValueError("pushpow needs an iteration count")
        return a.push_pow(k)
    if name not in UNARY_NAMES:
        raise ValueError(f"unknown unary operator {name!r}")
    return getattr(a, name)()


def bm_equal(a: Bimould, b: Bimould, max_length: Optional[int] = None) -> bool:
    """Componentwise equality up to the common truncation."""
    return first_difference(a, b, max_length) is None


def first_difference(
    a: Bimould, b: Bimould, max_length: Optional[int] = None
) -> Optional[tuple]:
    """First (length, difference) where the bimoulds disagree, else None."""
    limit = min(a.truncation, b.truncation)
    if max_length is not None:
        limit = min(limit, max_length)
    for r in range(limit + 1):
        delta = a.component(r) - b.component(r)
        if not delta.is_zero():
            return r, delta
    return None
