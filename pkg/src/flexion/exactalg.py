"""Exact multivariate rational functions with linear-form denominators.

A value is stored as ``scalar * num / prod(lf ** mult)`` where

* ``num`` is a sparse polynomial whose coefficients are coprime integers
  with a positive leading coefficient,
* every ``lf`` is a canonically oriented integer linear form (content 1,
  first nonzero coefficient positive), and
* ``scalar`` is an arbitrary rational carrying all remaining content.

Denominators are restricted to multisets of linear forms.  Every operation
used upstream (componentwise products, linear substitutions, partial
fractions) stays inside this class, which keeps reduction down to trial
division by linear factors and makes the normal form unique: structural
equality of normalised values coincides with equality of functions.
``RatFun.equals`` still certifies every positive answer with an exact
common-denominator subtraction, using point evaluation only to fail fast.

Variables come in two indexed families ``u1, u2, ...`` and ``v1, v2, ...``
(encoded as even/odd integers so that tuples of ``(var, exp)`` pairs sort
canonically).  The scalar argument variables ``x_i`` of the lower layer are
aliases for ``v_i``.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Mapping

try:  # gmpy2 rationals are a large constant factor faster than Fraction
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as Q

__all__ = [
    "Q",
    "Var",
    "LinComb",
    "uvar",
    "vvar",
    "xvar",
    "var_name",
    "parse_var",
    "is_uvar",
    "is_vvar",
    "var_index",
    "ZeroDenominatorError",
    "Poly",
    "LinForm",
    "RatFun",
]

Var = int
# A monomial is a tuple of (variable, exponent) pairs, sorted by variable,
# with all exponents positive.  The empty tuple is the constant monomial.
Mono = tuple
# Integer linear combination of variables, e.g. {u1: 1, u2: 1} for u1+u2.
LinComb = Mapping[Var, int]

_Q0 = Q(0)
_Q1 = Q(1)

_VAR_RE = re.compile(r"^([uvx])([1-9][0-9]*)$")


class ZeroDenominatorError(ArithmeticError):
    """A substitution sent a denominator factor to the zero form."""


def uvar(i: int) -> Var:
    """Upper-layer variable u_i (i >= 1)."""
    if i < 1:
        raise ValueError(f"variable index must be >= 1, got {i}")
    return 2 * i


def vvar(i: int) -> Var:
    """Lower-layer variable v_i (i >= 1)."""
    if i < 1:
        raise ValueError(f"variable index must be >= 1, got {i}")
    return 2 * i + 1


def xvar(i: int) -> Var:
    """Scalar argument variable x_i, an alias of v_i."""
    return vvar(i)


def is_uvar(var: Var) -> bool:
    return var % 2 == 0


def is_vvar(var: Var) -> bool:
    return var % 2 == 1


def var_index(var: Var) -> int:
    return var // 2


def var_name(var: Var) -> str:
    return f"{'u' if var % 2 == 0 else 'v'}{var // 2}"


def parse_var(name: str) -> Var:
    m = _VAR_RE.match(name)
    if m is None:
        raise ValueError(f"not a variable name: {name!r}")
    family, index = m.group(1), int(m.group(2))
    return uvar(index) if family == "u" else vvar(index)


def _q_of(value) -> "Q":
    if isinstance(value, Q):
        return value
    return Q(value)


def _mono_mul(a: Mono, b: Mono) -> Mono:
    """Merge two sorted monomials, adding exponents."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


class Poly:
    """Sparse polynomial: map from monomials to nonzero rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict):
        self.terms = terms
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls({})

    @classmethod
    def const(cls, value) -> "Poly":
        q = _q_of(value)
        return cls({(): q} if q else {})

    @classmethod
    def variable(cls, var: Var, exp: int = 1) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return cls.const(1)
        return cls({((var, exp),): _Q1})

    @classmethod
    def linear(cls, coeffs: LinComb) -> "Poly":
        return cls({((v, 1),): _q_of(c) for v, c in coeffs.items() if c})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e for _, e in mono) for mono in self.terms)

    def is_homogeneous(self):
        """The common total degree of all terms, or None if mixed.

        The zero polynomial reports degree None as well; callers treat it
        as homogeneous of every degree.
        """
        degs = {sum(e for _, e in mono) for mono in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def leading_monomial(self) -> Mono:
        return max(self.terms)

    def rename(self, mapping: Mapping[Var, Var]) -> "Poly":
        """Relabel variables along an (injective) map; no expansion needed."""
        out: dict = {}
        for mono, c in self.terms.items():
            key = tuple(sorted((mapping.get(v, v), e) for v, e in mono))
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                del out[key]
        return Poly(out)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, _Q0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return Poly({})
        if len(self.terms) > len(other.terms):
            self, other = other, self
        out: dict = {}
        for mono1, c1 in self.terms.items():
            for mono2, c2 in other.terms.items():
                mono = _mono_mul(mono1, mono2)
                s = out.get(mono, _Q0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return Poly(out)

    def scale(self, value) -> "Poly":
        q = _q_of(value)
        if not q:
            return Poly({})
        return Poly({mono: c * q for mono, c in self.terms.items()})

    def mul_linform(self, lf: "LinForm") -> "Poly":
        """Multiply by a linear form (fast path for denominator clearing)."""
        out: dict = {}
        for mono, c in self.terms.items():
            for v, k in lf.coeffs:
                # insert one power of v into the sorted monomial
                for i, (w, e) in enumerate(mono):
                    if w == v:
                        m = mono[:i] + ((v, e + 1),) + mono[i + 1:]
                        break
                    if w > v:
                        m = mono[:i] + ((v, 1),) + mono[i:]
                        break
                else:
                    m = mono + ((v, 1),)
                s = out.get(m, _Q0) + c * k
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    def pow(self, exp: int) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result

    # -- substitution and evaluation ----------------------------------

    def substitute(self, sigma: Mapping[Var, LinComb]) -> "Poly":
        """Apply a linear change of variables.

        Variables missing from ``sigma`` are left untouched.  Substitution
        is a ring homomorphism, and linear maps preserve homogeneity.
        """
        images: dict = {}
        powers: dict = {}
        out = Poly({})
        for mono, c in self.terms.items():
            piece = Poly({(): c})
            for v, e in mono:
                if v in sigma:
                    if v not in images:
                        images[v] = Poly.linear(sigma[v])
                    cache = powers.setdefault(v, {1: images[v]})
                    if e not in cache:
                        cache[e] = images[v].pow(e)
                    piece = piece * cache[e]
                else:
                    piece = piece * Poly.variable(v, e)
            out = out + piece
        return out

    def evaluate(self, point: Mapping[Var, "Q"], default=None) -> "Q":
        """Exact value at a point; unknown variables fall back to ``default(v)``.

        Powers are cached per call, which matters when probing large
        numerators during normalisation.
        """
        powers: dict = {}
        total = _Q0
        for mono, c in self.terms.items():
            val = c
            for v, e in mono:
                cache = powers.get(v)
                if cache is None:
                    base = point.get(v)
                    if base is None:
                        base = default(v)
                    cache = powers[v] = {1: base}
                p = cache.get(e)
                if p is None:
                    p = cache[1] ** e
                    cache[e] = p
                val = val * p
            total += val
        return total

    # -- division by a linear form ------------------------------------

    def divmod_linform(self, lf: "LinForm") -> tuple:
        """Divide by a linear form: self = quot * lf + rem.

        The remainder is free of the form's pivot variable, so it vanishes
        exactly when the form divides the polynomial.
        """
        pivot, c_pivot = lf.coeffs[0]
        rest = Poly({((v, 1),): _q_of(k) for v, k in lf.coeffs[1:]})
        by_exp: dict = {}
        for mono, c in self.terms.items():
            e = 0
            stripped = []
            for v, k in mono:
                if v == pivot:
                    e = k
                else:
                    stripped.append((v, k))
            level = by_exp.setdefault(e, {})
            key = tuple(stripped)
            level[key] = level.get(key, _Q0) + c
        max_e = max(by_exp) if by_exp else 0
        if max_e == 0:
            return Poly({}), self
        inv_c = _Q1 / c_pivot
        quot_terms: dict = {}
        carry = Poly({})
        for e in range(max_e, 0, -1):
            cur = Poly(dict(by_exp.get(e, {}))) + carry
            q_part = cur.scale(inv_c)
            for mono, c in q_part.terms.items():
                m = _mono_mul(mono, ((pivot, e - 1),)) if e > 1 else mono
                s = quot_terms.get(m, _Q0) + c
                if s:
                    quot_terms[m] = s
                else:
                    del quot_terms[m]
            carry = -(q_part * rest)
        rem = Poly(dict(by_exp.get(0, {}))) + carry
        return Poly(quot_terms), rem

    def content_and_primitive(self) -> tuple:
        """Split off rational content: self = content * primitive.

        The primitive part has coprime integer coefficients and positive
        leading coefficient.  The zero polynomial has content 1.
        """
        if not self.terms:
            return _Q1, self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, int(c.numerator))
            d = int(c.denominator)
            den_lcm = den_lcm // math.gcd(den_lcm, d) * d
        content = Q(num_gcd, den_lcm)
        if self.terms[max(self.terms)] < 0:
            content = -content
        inv = _Q1 / content
        return content, Poly({mono: c * inv for mono, c in self.terms.items()})

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            self._hash = h
        return h

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = "*".join(
                var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in mono
            )
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(factors)
            elif c == -1:
                parts.append(f"-{factors}")
            else:
                parts.append(f"{c}*{factors}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


class LinForm:
    """Canonically oriented integer linear form.

    The coefficients are coprime integers and the first nonzero coefficient
    (in variable order) is positive, so two forms are proportional over the
    rationals exactly when they are equal.  Use :meth:`canonical` to build
    one from raw coefficients; it returns the integer scale that was split
    off.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: tuple):
        self.coeffs = coeffs

    @classmethod
    def canonical(cls, coeffs: LinComb) -> tuple:
        """Normalise raw coefficients; returns (scale, form).

        ``scale * form == coeffs``.  Raises ZeroDenominatorError when every
        coefficient vanishes.
        """
        items = sorted((v, c) for v, c in coeffs.items() if c)
        if not items:
            raise ZeroDenominatorError("zero linear form")
        content = 0
        for _, c in items:
            content = math.gcd(content, c)
        if items[0][1] < 0:
            content = -content
        return content, cls(tuple((v, c // content) for v, c in items))

    def substitute(self, sigma: Mapping[Var, LinComb]) -> tuple:
        """Compose with a linear change of variables; returns (scale, form).

        Raises ZeroDenominatorError when the image is the zero form.
        """
        acc: dict = {}
        for v, c in self.coeffs:
            if v in sigma:
                for w, k in sigma[v].items():
                    acc[w] = acc.get(w, 0) + c * k
            else:
                acc[v] = acc.get(v, 0) + c
        return LinForm.canonical(acc)

    def rename(self, mapping: Mapping[Var, Var]) -> tuple:
        """Relabel variables; returns (sign, form) with sign in {1, -1}."""
        return LinForm.canonical({mapping.get(v, v): c for v, c in self.coeffs})

    def as_poly(self) -> Poly:
        return Poly({((v, 1),): _q_of(c) for v, c in self.coeffs})

    def variables(self) -> set:
        return {v for v, _ in self.coeffs}

    def evaluate(self, point: Mapping[Var, "Q"]) -> "Q":
        total = _Q0
        for v, c in self.coeffs:
            total += c * point[v]
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, LinForm) and self.coeffs == other.coeffs

    def __lt__(self, other) -> bool:
        return self.coeffs < other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LinForm({self})"

    def __str__(self):
        parts = []
        for v, c in self.coeffs:
            name = var_name(v)
            if c == 1:
                parts.append(f"+{name}" if parts else name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{'+' if c > 0 and parts else ''}{c}*{name}")
        return "".join(parts)


# Fixed evaluation points for the fast negative path of RatFun.equals.
# Small primes keep the arithmetic cheap while avoiding accidental zeros.
_PROBE_SEEDS = (1009, 2003, 5011)


def _probe_value(var: Var) -> "Q":
    # deterministic, scattered, nonzero
    return Q((var * 0x9E3779B1) % 4093 + 2)


def _divides_maybe(num: Poly, lf: LinForm) -> bool:
    """Cheap negative test: evaluate on a point of the hyperplane lf = 0.

    A nonzero value certifies that the form does not divide the numerator;
    a zero value is inconclusive and the exact division decides.
    """
    pivot, c_pivot = lf.coeffs[0]
    rest = _Q0
    for v, c in lf.coeffs[1:]:
        rest += c * _probe_value(v)
    point = {pivot: -rest / c_pivot}
    return num.evaluate(point, default=_probe_value) == 0


class RatFun:
    """Rational function scalar * num / prod(lf ** mult) in normal form."""

    __slots__ = ("num", "den", "scalar", "_hash")

    def __init__(self, num: Poly, den: tuple, scalar):
        # Trusted raw constructor; use the classmethods to build values.
        self.num = num
        self.den = den
        self.scalar = scalar
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def _normalized(cls, num: Poly, den: Mapping, scalar) -> "RatFun":
        scalar = _q_of(scalar)
        if not scalar or num.is_zero():
            return _RF_ZERO
        pending = {lf: m for lf, m in den.items() if m}
        for lf in sorted(pending):
            m = pending[lf]
            while m > 0:
                if len(num.terms) > 8 and not _divides_maybe(num, lf):
                    break
                quot, rem = num.divmod_linform(lf)
                if rem.is_zero():
                    num = quot
                    m -= 1
                else:
                    break
            if m:
                pending[lf] = m
            else:
                del pending[lf]
        content, primitive = num.content_and_primitive()
        return cls(primitive, tuple(sorted(pending.items())), scalar * content)

    @classmethod
    def zero(cls) -> "RatFun":
        return _RF_ZERO

    @classmethod
    def one(cls) -> "RatFun":
        return _RF_ONE

    @classmethod
    def const(cls, value) -> "RatFun":
        q = _q_of(value)
        if not q:
            return _RF_ZERO
        return cls(Poly.const(1), (), q)

    @classmethod
    def from_poly(cls, poly: Poly) -> "RatFun":
        return cls._normalized(poly, {}, _Q1)

    @classmethod
    def variable(cls, var: Var, exp: int = 1) -> "RatFun":
        return cls.from_poly(Poly.variable(var, exp))

    @classmethod
    def inv_linform(cls, coeffs: LinComb, mult: int = 1) -> "RatFun":
        """1 / linear_form ** mult."""
        scale, lf = LinForm.canonical(coeffs)
        return cls(Poly.const(1), ((lf, mult),), _Q1 / _q_of(scale) ** mult)

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self == _RF_ONE

    def variables(self) -> set:
        out = self.num.variables()
        for lf, _ in self.den:
            out |= lf.variables()
        return out

    def degree(self) -> int:
        """Degree of the function (numerator degree minus denominator degree)."""
        return self.num.degree() - sum(m for _, m in self.den)

    def is_homogeneous(self):
        """Degree if numerator is homogeneous, else None; zero counts as any."""
        d = self.num.is_homogeneous()
        if d is None:
            return None if self.num.terms else None
        return d - sum(m for _, m in self.den)

    def den_dict(self) -> dict:
        return dict(self.den)

    # -- arithmetic ---------------------------------------------------

    def __neg__(self) -> "RatFun":
        if self.is_zero():
            return self
        return RatFun(self.num, self.den, -self.scalar)

    def scale(self, value) -> "RatFun":
        q = _q_of(value)
        if not q or self.is_zero():
            return _RF_ZERO
        return RatFun(self.num, self.den, self.scalar * q)

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun.sum((self, other))

    def __sub__(self, other: "RatFun") -> "RatFun":
        return RatFun.sum((self, -other))

    def __mul__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return _RF_ZERO
        den = dict(self.den)
        for lf, m in other.den:
            den[lf] = den.get(lf, 0) + m
        return RatFun._normalized(
            self.num * other.num, den, self.scalar * other.scalar
        )

    __rmul__ = __mul__

    @classmethod
    def sum(cls, items: Iterable["RatFun"]) -> "RatFun":
        """Add finitely many values exactly.

        Terms sharing a denominator are merged first (no clearing needed);
        the remaining groups are combined pairwise so intermediate common
        denominators stay small and cancellations trigger early.
        """
        groups: dict = {}
        for f in items:
            if f.is_zero():
                continue
            bucket = groups.get(f.den)
            if bucket is None:
                groups[f.den] = [f]
            else:
                bucket.append(f)
        merged = []
        for den, bucket in groups.items():
            if len(bucket) == 1:
                merged.append(bucket[0])
                continue
            acc: dict = {}
            for f in bucket:
                for mono, c in f.num.terms.items():
                    s = acc.get(mono, _Q0) + c * f.scalar
                    if s:
                        acc[mono] = s
                    else:
                        del acc[mono]
            merged.append(cls._normalized(Poly(acc), dict(den), _Q1))
        return cls._tree_sum(merged)

    @classmethod
    def _tree_sum(cls, items: list) -> "RatFun":
        items = [f for f in items if not f.is_zero()]
        if not items:
            return _RF_ZERO
        if len(items) == 1:
            return items[0]
        if len(items) > 3:
            mid = len(items) // 2
            return cls._tree_sum(
                [cls._tree_sum(items[:mid]), cls._tree_sum(items[mid:])]
            )
        den: dict = {}
        for f in items:
            for lf, m in f.den:
                if den.get(lf, 0) < m:
                    den[lf] = m
        acc: dict = {}
        for f in items:
            poly = f.num.scale(f.scalar)
            have = f.den_dict()
            for lf, m in den.items():
                for _ in range(m - have.get(lf, 0)):
                    poly = poly.mul_linform(lf)
            for mono, c in poly.terms.items():
                s = acc.get(mono, _Q0) + c
                if s:
                    acc[mono] = s
                else:
                    del acc[mono]
        return cls._normalized(Poly(acc), den, _Q1)

    # -- substitution and evaluation ----------------------------------

    def substitute(self, sigma: Mapping[Var, LinComb]) -> "RatFun":
        """Apply a linear change of variables to the whole function.

        Raises ZeroDenominatorError when a denominator factor collapses.
        """
        if self.is_zero():
            return self
        num = self.num.substitute(sigma)
        den: dict = {}
        scalar = self.scalar
        for lf, m in self.den:
            scale, image = lf.substitute(sigma)
            den[image] = den.get(image, 0) + m
            scalar = scalar / _q_of(scale) ** m
        return RatFun._normalized(num, den, scalar)

    def rename(self, mapping: Mapping[Var, Var]) -> "RatFun":
        """Relabel variables along an injective map.

        Bijective relabelling preserves reducedness and content, so only
        the orientation of the result needs fixing; no re-reduction runs.
        """
        if self.is_zero():
            return self
        num = self.num.rename(mapping)
        den: dict = {}
        scalar = self.scalar
        for lf, m in self.den:
            sign, image = lf.rename(mapping)
            den[image] = den.get(image, 0) + m
            if sign < 0 and m % 2:
                scalar = -scalar
        if num.terms[max(num.terms)] < 0:
            num = num.scale(-1)
            scalar = -scalar
        return RatFun(num, tuple(sorted(den.items())), scalar)

    def evaluate(self, point: Mapping[Var, "Q"]) -> "Q":
        """Exact value at a point; ZeroDivisionError if a factor vanishes."""
        value = self.num.evaluate(point) * self.scalar
        for lf, m in self.den:
            value = value / lf.evaluate(point) ** m
        return value

    # -- equality -----------------------------------------------------

    def equals(self, other: "RatFun") -> bool:
        """Exact equality of functions.

        A cheap evaluation at fixed points may certify inequality early;
        equality is always decided by the exact cross-multiplied difference.
        """
        if self == other:
            return True
        variables = sorted(self.variables() | other.variables())
        for seed in _PROBE_SEEDS:
            point = {
                v: Q((seed * (i + 7) ** 3) % 1013 + 1, (i % 5) + 2)
                for i, v in enumerate(variables)
            }
            try:
                if self.evaluate(point) != other.evaluate(point):
                    return False
            except ZeroDivisionError:
                continue
            break
        return (self - other).is_zero()

    def reduced(self) -> "RatFun":
        """Re-normalise; a no-op on values built through the public API."""
        return RatFun._normalized(self.num, self.den_dict(), self.scalar)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFun)
            and self.scalar == other.scalar
            and self.den == other.den
            and self.num == other.num
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den, self.scalar))
            self._hash = h
        return h

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        num = str(self.num)
        if self.scalar != 1:
            num = f"({self.scalar})*({num})" if num != "1" else f"{self.scalar}"
        elif len(self.num.terms) > 1 and self.den:
            num = f"({num})"
        if not self.den:
            return num
        den = " ".join(
            f"({lf})" if m == 1 else f"({lf})^{m}" for lf, m in self.den
        )
        return f"{num} / {den}"


_RF_ZERO = RatFun(Poly.zero(), (), _Q1)
_RF_ONE = RatFun(Poly.const(1), (), _Q1)


def iter_monomials(variables: Iterable[Var], max_degree: int) -> Iterator[Mono]:
    """All monomials over the given variables with total degree <= bound."""
    variables = sorted(variables)

    def rec(i: int, budget: int):
        if i == len(variables):
            yield ()
            return
        for rest in rec(i + 1, budget):
            yield rest
        for e in range(1, budget + 1):
            head = ((variables[i], e),)
            for rest in rec(i + 1, budget - e):
                yield _mono_mul(head, rest)

    yield from rec(0, max_degree)
