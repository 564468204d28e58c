"""Exact arithmetic in the differential coefficient ring.

Elements are sparse polynomials with rational coefficients in the
generators

    z,  declared constants,  f^(n) for declared functions f and n >= 0,

where each derivative symbol f^(n) is an independent generator and
d/dz maps f^(n) -> f^(n+1).  The exponent of z may be negative (Laurent
in z only), which is enough to host the 1/z prefactors of the classical
degenerate Hamiltonians; all other exponents are nonnegative.

A generator is encoded as a tuple ``(group, name, order)`` with group
0 for z, 1 for constants, 2 for functions; sorting these tuples gives
the canonical generator order (z, constants alphabetically, functions
alphabetically then by derivative order).  A monomial is a sorted tuple
of ``(generator, exponent)`` pairs with no zero exponents.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import isqrt

from .errors import CyclicBinding

Z_GEN = (0, "z", 0)

_SQRT_MAX_STEPS = 512


def const_gen(name: str):
    return (1, name, 0)


def func_gen(name: str, order: int = 0):
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    return (2, name, order)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for gen, e in m2:
        new = exps.get(gen, 0) + e
        if new:
            exps[gen] = new
        else:
            del exps[gen]
    return tuple(sorted(exps.items()))


def _mono_degree(m) -> int:
    return sum(e for _, e in m)


def _mono_cmp(m1, m2) -> int:
    """Graded-lex comparison; a genuine monomial order (LT multiplicative)."""
    d1, d2 = _mono_degree(m1), _mono_degree(m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    e1, e2 = dict(m1), dict(m2)
    for gen in sorted(set(e1) | set(e2)):
        a, b = e1.get(gen, 0), e2.get(gen, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


_mono_key = functools.cmp_to_key(_mono_cmp)


def _mono_divide(m1, m2):
    """m1 / m2 as a monomial, or None.  z may go negative (it is a unit)."""
    exps = dict(m1)
    for gen, e in m2:
        new = exps.get(gen, 0) - e
        if new < 0 and gen != Z_GEN:
            return None
        if new:
            exps[gen] = new
        else:
            exps.pop(gen, None)
    return tuple(sorted(exps.items()))


def _frac_sqrt(q: Fraction):
    if q < 0:
        return None
    pn, pd = q.numerator, q.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


class CoeffElem:
    """Immutable ring element: finite map monomial -> nonzero Fraction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    cleaned[mono] = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "_hash", None)

    # -- constructors ------------------------------------------------

    @staticmethod
    def rational(q) -> "CoeffElem":
        q = Fraction(q)
        return CoeffElem({(): q} if q else {})

    @staticmethod
    def zero() -> "CoeffElem":
        return CoeffElem({})

    @staticmethod
    def one() -> "CoeffElem":
        return CoeffElem({(): Fraction(1)})

    @staticmethod
    def z(power: int = 1) -> "CoeffElem":
        if power == 0:
            return CoeffElem.one()
        return CoeffElem({((Z_GEN, power),): Fraction(1)})

    @staticmethod
    def constant(name: str) -> "CoeffElem":
        return CoeffElem({((const_gen(name), 1),): Fraction(1)})

    @staticmethod
    def function(name: str, order: int = 0) -> "CoeffElem":
        return CoeffElem({((func_gen(name, order), 1),): Fraction(1)})

    # -- basic protocol ----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CoeffElem.rational(other)
        if not isinstance(other, CoeffElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CoeffElem({self.render()})"

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, CoeffElem):
            return value
        if isinstance(value, (int, Fraction)):
            return CoeffElem.rational(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return CoeffElem(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                new = out.get(mono, Fraction(0)) + c1 * c2
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
        return CoeffElem(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not defined in the coefficient ring")
        result = CoeffElem.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, q) -> "CoeffElem":
        q = Fraction(q)
        if not q:
            return CoeffElem.zero()
        return CoeffElem({m: c * q for m, c in self.terms.items()})

    # -- queries -------------------------------------------------------

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def rational_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if self.is_rational():
            return self.terms[()]
        raise ValueError(f"not a rational constant: {self.render()}")

    def names(self) -> set:
        out = set()
        for mono in self.terms:
            for (grp, name, _), _e in mono:
                if grp != 0:
                    out.add(name)
        return out

    def contains_name(self, name: str) -> bool:
        for mono in self.terms:
            for (grp, nm, _), _e in mono:
                if grp != 0 and nm == name:
                    return True
        return False

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self):
        """(monomial, coefficient) maximal in graded-lex order."""
        mono = max(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    def linear_part(self, name: str):
        """Write self = c*f + rest with rational c and rest free of ``name``.

        Returns (c, rest) or None when ``name`` occurs nonlinearly, inside a
        product, with z-dependence, or through one of its derivatives.
        """
        coeff = Fraction(0)
        rest = {}
        target = func_gen(name, 0)
        for mono, c in self.terms.items():
            gens = [g for g, _ in mono]
            hit = [g for g in gens if g[1] == name and g[0] != 0]
            if not hit:
                rest[mono] = c
                continue
            if mono != ((target, 1),):
                return None
            coeff += c
        if not coeff:
            return None
        return coeff, CoeffElem(rest)

    # -- calculus -------------------------------------------------------

    def d_dz(self) -> "CoeffElem":
        out = {}
        for mono, coeff in self.terms.items():
            for idx, (gen, exp) in enumerate(mono):
                grp, name, order = gen
                if grp == 1:
                    continue
                if grp == 0:
                    factor = Fraction(exp) * coeff
                    bumped = _mono_mul(mono, ((gen, -1),))
                else:
                    factor = Fraction(exp) * coeff
                    bumped = _mono_mul(mono, ((gen, -1), (func_gen(name, order + 1), 1)))
                new = out.get(bumped, Fraction(0)) + factor
                if new:
                    out[bumped] = new
                else:
                    out.pop(bumped, None)
        return CoeffElem(out)

    def substitute(self, bindings: dict) -> "CoeffElem":
        """Simultaneously replace bound symbols by ring elements.

        ``bindings`` maps a symbol name to its image.  For a function
        symbol the image of f^(n) is the n-th z-derivative of the image
        of f.  Raises CyclicBinding when an image mentions its own symbol.
        """
        if not bindings:
            return self
        for name, image in bindings.items():
            if image.contains_name(name):
                raise CyclicBinding(f"binding for {name!r} references itself")
        deriv_cache = {name: [img] for name, img in bindings.items()}

        def image_of(name, order):
            chain = deriv_cache[name]
            while len(chain) <= order:
                chain.append(chain[-1].d_dz())
            return chain[order]

        total = CoeffElem.zero()
        for mono, coeff in self.terms.items():
            factor = CoeffElem.rational(coeff)
            for gen, exp in mono:
                grp, name, order = gen
                if grp != 0 and name in bindings:
                    factor = factor * image_of(name, order) ** exp
                else:
                    factor = factor * CoeffElem({((gen, exp),): Fraction(1)})
            total = total + factor
        return total

    # -- division and square roots ---------------------------------------

    def divide_exact(self, other) -> "CoeffElem | None":
        """self / other in the ring, or None when it does not divide."""
        other = self._coerce(other)
        if other is None or not other:
            raise ZeroDivisionError("division by zero coefficient")
        if other.is_rational():
            return self.scale(Fraction(1) / other.rational_value())
        if not self:
            return CoeffElem.zero()
        lm, lc = other.leading()
        quotient = {}
        rem = self
        steps = 0
        while rem:
            steps += 1
            if steps > _SQRT_MAX_STEPS * 8:
                return None
            rm, rc = rem.leading()
            t = _mono_divide(rm, lm)
            if t is None:
                return None
            q = rc / lc
            quotient[t] = quotient.get(t, Fraction(0)) + q
            rem = rem - CoeffElem({t: q}) * other
            if rem and _mono_cmp(rem.leading()[0], rm) >= 0:
                return None
        return CoeffElem(quotient)

    def sqrt_exact(self) -> "CoeffElem | None":
        """An exact square root in the ring, or None."""
        if not self:
            return CoeffElem.zero()
        lm, lc = self.leading()
        root_c = _frac_sqrt(lc)
        if root_c is None:
            return None
        half = {}
        for gen, exp in lm:
            if exp % 2:
                return None
            half[gen] = exp // 2
        s = CoeffElem({tuple(sorted(half.items())): root_c})
        lead = s
        for _ in range(_SQRT_MAX_STEPS):
            rem = self - s * s
            if not rem:
                return s
            rm, rc = rem.leading()
            t = _mono_divide(rm, lead.leading()[0])
            if t is None:
                return None
            s = s + CoeffElem({t: rc / (2 * root_c)})
        return None

    # -- rendering --------------------------------------------------------

    @staticmethod
    def _render_gen(gen, exp) -> str:
        grp, name, order = gen
        base = "z" if grp == 0 else name + "'" * order
        if exp == 1:
            return base
        return f"{base}^{exp}"

    def render(self) -> str:
        """Canonical plain-text form, round-trippable through the parser."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_key):
            coeff = self.terms[mono]
            factors = [self._render_gen(g, e) for g, e in mono]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if coeff < 0 else "+", body))
        sign, body = parts[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()
