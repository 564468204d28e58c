"""Bivariate polynomials and rational functions over the coefficient ring.

These are the objects living in one affine chart: polynomials in the two
current chart variables with CoeffElem coefficients, and their quotients.
Rational substitution is the engine behind every coordinate change.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .coeffring import CoeffElem
from .errors import DegreeCapExceeded, DenominatorZero, NotPolynomial

DEGREE_CAP = 64


def _as_coeff(value) -> CoeffElem:
    if isinstance(value, CoeffElem):
        return value
    if isinstance(value, (int, Fraction)):
        return CoeffElem.rational(value)
    raise TypeError(f"cannot use {value!r} as a coefficient")


class BiPoly:
    """Sparse bivariate polynomial; keys are (i, j) exponent pairs."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms=None, vars=("x", "y")):
        cleaned = {}
        if terms:
            for (i, j), coeff in terms.items():
                coeff = _as_coeff(coeff)
                if not coeff:
                    continue
                if i < 0 or j < 0:
                    raise ValueError("negative chart-variable exponent in BiPoly")
                if i > DEGREE_CAP or j > DEGREE_CAP:
                    raise DegreeCapExceeded(f"exponent ({i},{j}) exceeds cap {DEGREE_CAP}")
                cleaned[(i, j)] = coeff
        self.terms = cleaned
        self.vars = tuple(vars)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(vars=("x", "y")) -> "BiPoly":
        return BiPoly({}, vars)

    @staticmethod
    def one(vars=("x", "y")) -> "BiPoly":
        return BiPoly({(0, 0): CoeffElem.one()}, vars)

    @staticmethod
    def const(value, vars=("x", "y")) -> "BiPoly":
        return BiPoly({(0, 0): _as_coeff(value)}, vars)

    @staticmethod
    def var(axis: int, vars=("x", "y")) -> "BiPoly":
        key = (1, 0) if axis == 0 else (0, 1)
        return BiPoly({key: CoeffElem.one()}, vars)

    # -- protocol ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BiPoly({self.render()})"

    def support(self):
        return set(self.terms)

    def is_one(self) -> bool:
        return self.terms == {(0, 0): CoeffElem.one()}

    def coeff(self, i: int, j: int) -> CoeffElem:
        return self.terms.get((i, j), CoeffElem.zero())

    def degree(self, axis: int) -> int:
        if not self.terms:
            return -1
        return max(k[axis] for k in self.terms)

    def min_degree(self, axis: int) -> int:
        if not self.terms:
            return 0
        return min(k[axis] for k in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _require_same_vars(self, other: "BiPoly"):
        if self.vars != other.vars:
            raise ValueError(f"chart variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CoeffElem)):
            other = BiPoly.const(other, self.vars)
        if not isinstance(other, BiPoly):
            return NotImplemented
        self._require_same_vars(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            new = out.get(key, CoeffElem.zero()) + coeff
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return BiPoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CoeffElem)):
            other = BiPoly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffElem)):
            c = _as_coeff(other)
            return BiPoly({k: v * c for k, v in self.terms.items()}, self.vars)
        if not isinstance(other, BiPoly):
            return NotImplemented
        self._require_same_vars(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                new = out.get(key, CoeffElem.zero()) + c1 * c2
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return BiPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative BiPoly power")
        result = BiPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mono_shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by first^di * second^dj (negative shifts must divide)."""
        out = {}
        for (i, j), c in self.terms.items():
            ni, nj = i + di, j + dj
            if ni < 0 or nj < 0:
                raise ValueError("monomial shift would create negative exponents")
            out[(ni, nj)] = c
        return BiPoly(out, self.vars)

    # -- calculus --------------------------------------------------------------

    def partial(self, axis: int) -> "BiPoly":
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[axis]
            if e == 0:
                continue
            key = (i - 1, j) if axis == 0 else (i, j - 1)
            out[key] = c.scale(e)
        return BiPoly(out, self.vars)

    def integrate(self, axis: int) -> "BiPoly":
        out = {}
        for (i, j), c in self.terms.items():
            key = (i + 1, j) if axis == 0 else (i, j + 1)
            out[key] = c.scale(Fraction(1, (i, j)[axis] + 1))
        return BiPoly(out, self.vars)

    def d_dz(self) -> "BiPoly":
        """Coefficientwise z-derivative; chart variables are held fixed."""
        out = {}
        for key, c in self.terms.items():
            dc = c.d_dz()
            if dc:
                out[key] = dc
        return BiPoly(out, self.vars)

    def substitute_coeffs(self, bindings: dict) -> "BiPoly":
        out = {}
        for key, c in self.terms.items():
            nc = c.substitute(bindings)
            if nc:
                out[key] = nc
        return BiPoly(out, self.vars)

    # -- evaluation ----------------------------------------------------------

    def eval_point(self, a: CoeffElem, b: CoeffElem) -> CoeffElem:
        total = CoeffElem.zero()
        pa = {0: CoeffElem.one()}
        pb = {0: CoeffElem.one()}

        def power(cache, base, n):
            while len(cache) <= n:
                cache[len(cache)] = cache[len(cache) - 1] * base
            return cache[n]

        for (i, j), c in self.terms.items():
            total = total + c * power(pa, a, i) * power(pb, b, j)
        return total

    def restrict(self, axis: int, value: CoeffElem) -> dict:
        """Substitute one chart variable by a ring element.

        Returns a univariate polynomial in the other variable as a map
        exponent -> CoeffElem.
        """
        out = {}
        powers = {0: CoeffElem.one()}

        def power(n):
            while len(powers) <= n:
                powers[len(powers)] = powers[len(powers) - 1] * value
            return powers[n]

        for (i, j), c in self.terms.items():
            e_sub, e_keep = (i, j) if axis == 0 else (j, i)
            contrib = c * power(e_sub)
            new = out.get(e_keep, CoeffElem.zero()) + contrib
            if new:
                out[e_keep] = new
            else:
                out.pop(e_keep, None)
        return out

    # -- division ----------------------------------------------------------------

    def _leading(self):
        key = max(self.terms, key=lambda k: (k[0] + k[1], k))
        return key, self.terms[key]

    def divide_exact(self, other: "BiPoly") -> "BiPoly | None":
        if not other:
            raise ZeroDivisionError("BiPoly division by zero")
        if not self:
            return BiPoly.zero(self.vars)
        quotient = {}
        rem = self
        lk, lc = other._leading()
        while rem:
            rk, rc = rem._leading()
            di, dj = rk[0] - lk[0], rk[1] - lk[1]
            if di < 0 or dj < 0:
                return None
            qc = rc.divide_exact(lc)
            if qc is None:
                return None
            quotient[(di, dj)] = quotient.get((di, dj), CoeffElem.zero()) + qc
            rem = rem - BiPoly({(di, dj): qc}, self.vars) * other
            if rem:
                nk = rem._leading()[0]
                if (nk[0] + nk[1], nk) >= (rk[0] + rk[1], rk):
                    return None
        return BiPoly(quotient, self.vars)

    def content_fraction(self) -> Fraction:
        """gcd of all rational coefficients appearing in all terms."""
        num_g = 0
        den_l = 1
        for c in self.terms.values():
            for q in c.terms.values():
                num_g = gcd(num_g, abs(q.numerator))
                den_l = den_l * q.denominator // gcd(den_l, q.denominator)
        if num_g == 0:
            return Fraction(1)
        return Fraction(num_g, den_l)

    # -- rendering -------------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        vx, vy = self.vars
        pieces = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], k[0], k[1])):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append(vx if i == 1 else f"{vx}^{i}")
            if j:
                mono.append(vy if j == 1 else f"{vy}^{j}")
            mono_txt = "*".join(mono)
            if not mono:
                body, sign = self._render_signed(c, force_paren=False)
            elif c == CoeffElem.one():
                body, sign = mono_txt, "+"
            elif c == CoeffElem.rational(-1):
                body, sign = mono_txt, "-"
            elif len(c.terms) == 1:
                txt = c.render()
                sign = "+"
                if txt.startswith("-"):
                    sign, txt = "-", txt[1:]
                body = f"{txt}*{mono_txt}"
            else:
                body, sign = f"({c.render()})*{mono_txt}", "+"
            pieces.append((sign, body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    @staticmethod
    def _render_signed(c: CoeffElem, force_paren: bool):
        txt = c.render()
        if len(c.terms) > 1:
            return (f"({txt})" if force_paren else txt), "+"
        if txt.startswith("-"):
            return txt[1:], "-"
        return txt, "+"

    def __str__(self):
        return self.render()


class BiRat:
    """Quotient of two BiPoly, normalized lightly but deterministically.

    Normalization cancels the common chart-variable monomial, the common
    rational content, and finally attempts one exact polynomial division
    of the numerator by the denominator.  Denominators produced by the
    transform pipeline are monomials in the chart variables, so this is
    complete cancellation in practice; equality testing never relies on
    it (it cross-multiplies).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly | None = None, normalize: bool = True):
        if den is None:
            den = BiPoly.one(num.vars)
        if num.vars != den.vars:
            raise ValueError("numerator/denominator chart mismatch")
        if not den:
            raise DenominatorZero("denominator is the zero polynomial")
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    # -- normalization ----------------------------------------------------

    def _normalize(self):
        num, den = self.num, self.den
        if not num:
            self.num, self.den = BiPoly.zero(num.vars), BiPoly.one(num.vars)
            return
        # common chart monomial
        si = min(num.min_degree(0), den.min_degree(0))
        sj = min(num.min_degree(1), den.min_degree(1))
        if si or sj:
            num = num.mono_shift(-si, -sj)
            den = den.mono_shift(-si, -sj)
        # rational content of the denominator (and sign)
        cont = den.content_fraction()
        lead = den._leading()[1]
        lead_sign = next(iter(sorted(lead.terms.items())))[1]
        if lead_sign < 0:
            cont = -cont
        if cont != 1:
            inv = Fraction(1) / cont
            num = num * CoeffElem.rational(inv)
            den = den * CoeffElem.rational(inv)
        # full cancellation when the denominator divides exactly
        if not den.is_one():
            q = num.divide_exact(den)
            if q is not None:
                num, den = q, BiPoly.one(num.vars)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_poly(p: BiPoly) -> "BiRat":
        return BiRat(p, None, normalize=False)

    @staticmethod
    def zero(vars=("x", "y")) -> "BiRat":
        return BiRat(BiPoly.zero(vars), None, normalize=False)

    @staticmethod
    def one(vars=("x", "y")) -> "BiRat":
        return BiRat(BiPoly.one(vars), None, normalize=False)

    @staticmethod
    def const(value, vars=("x", "y")) -> "BiRat":
        return BiRat(BiPoly.const(value, vars), None, normalize=False)

    # -- protocol -----------------------------------------------------------

    @property
    def vars(self):
        return self.num.vars

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CoeffElem)):
            other = BiRat.const(other, self.vars)
        elif isinstance(other, BiPoly):
            other = BiRat.from_poly(other)
        if not isinstance(other, BiRat):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"BiRat({self.render()})"

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> BiPoly:
        if not self.is_polynomial():
            raise NotPolynomial(f"not polynomial: {self.render()}")
        return self.num

    def den_monomial(self):
        """(i, j) when the denominator is a single chart monomial, else None."""
        if len(self.den.terms) != 1:
            return None
        (key, coeff), = self.den.terms.items()
        if not coeff.is_rational():
            return None
        return key

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(value, vars):
        if isinstance(value, BiRat):
            return value
        if isinstance(value, BiPoly):
            return BiRat.from_poly(value)
        if isinstance(value, (int, Fraction, CoeffElem)):
            return BiRat.const(value, vars)
        return None

    def __add__(self, other):
        other = self._coerce(other, self.vars)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return BiRat(self.num + other.num, self.den)
        return BiRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRat(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        other = self._coerce(other, self.vars)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other, self.vars)
        if other is None:
            return NotImplemented
        return BiRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other, self.vars)
        if other is None:
            return NotImplemented
        if not other.num:
            raise DenominatorZero("division by zero rational function")
        return BiRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other, self.vars)
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return BiRat(self.den, self.num) ** (-n)
        return BiRat(self.num ** n, self.den ** n)

    def inverse(self) -> "BiRat":
        if not self.num:
            raise DenominatorZero("inverse of zero")
        return BiRat(self.den, self.num)

    def d_dz(self) -> "BiRat":
        return BiRat(self.num.d_dz() * self.den - self.num * self.den.d_dz(),
                     self.den * self.den)

    def substitute_coeffs(self, bindings: dict) -> "BiRat":
        den = self.den.substitute_coeffs(bindings)
        if not den:
            raise DenominatorZero("substitution killed the denominator")
        return BiRat(self.num.substitute_coeffs(bindings), den)

    def partial(self, axis: int) -> "BiRat":
        return BiRat(self.num.partial(axis) * self.den - self.num * self.den.partial(axis),
                     self.den * self.den)

    def rename_vars(self, vars) -> "BiRat":
        return BiRat(BiPoly(self.num.terms, vars), BiPoly(self.den.terms, vars),
                     normalize=False)

    def render(self) -> str:
        if self.den.is_one():
            return self.num.render()
        num = self.num.render()
        den = f"({self.den.render()})"
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/{den}"

    def __str__(self):
        return self.render()


def subst_rational(p: BiPoly, image_a: BiRat, image_b: BiRat) -> BiRat:
    """Evaluate p at rational images of its two variables.

    The images live in the target chart; the result is a normalized
    rational function there.
    """
    if image_a.vars != image_b.vars:
        raise ValueError("image charts differ")
    vars_new = image_a.vars
    deg_a = max((i for i, _ in p.terms), default=0)
    deg_b = max((j for _, j in p.terms), default=0)

    na, da = image_a.num, image_a.den
    nb, db = image_b.num, image_b.den

    def powers(base: BiPoly, n: int):
        out = [BiPoly.one(vars_new)]
        for _ in range(n):
            out.append(out[-1] * base)
        return out

    pna, pda = powers(na, deg_a), powers(da, deg_a)
    pnb, pdb = powers(nb, deg_b), powers(db, deg_b)

    total = BiPoly.zero(vars_new)
    for (i, j), c in p.terms.items():
        term = pna[i] * pda[deg_a - i] * pnb[j] * pdb[deg_b - j]
        total = total + term * c
    return BiRat(total, pda[deg_a] * pdb[deg_b])


def subst_rational_rat(r: BiRat, image_a: BiRat, image_b: BiRat) -> BiRat:
    num = subst_rational(r.num, image_a, image_b)
    den = subst_rational(r.den, image_a, image_b)
    if not den.num:
        raise DenominatorZero("substitution produced zero denominator")
    return num / den
