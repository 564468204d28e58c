"""Hamiltonian systems and coefficient matrices.

A system in chart variables (A, B) is the pair A' = F, B' = G together
with the tracked 2-form multiplier m defined by  dx/\dy = m dA/\dB  along
the accumulated birational change from the original chart.  When H exists
it satisfies  m*F = dH/dB  and  m*G = -dH/dA.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .coeffring import CoeffElem
from .errors import NotHamiltonian, NotPolynomial
from .polyrat import BiPoly, BiRat


@dataclass(frozen=True)
class CoeffMatrix:
    """Row i, column j holds the coefficient of A^i B^j in H."""

    entries: tuple  # tuple of row tuples of CoeffElem

    @staticmethod
    def from_poly(h: BiPoly) -> "CoeffMatrix":
        if not h.terms:
            return CoeffMatrix(())
        rows = h.degree(0) + 1
        cols = h.degree(1) + 1
        grid = tuple(
            tuple(h.coeff(i, j) for j in range(cols)) for i in range(rows)
        )
        return CoeffMatrix(grid)

    def to_poly(self, vars=("x", "y")) -> BiPoly:
        terms = {}
        for i, row in enumerate(self.entries):
            for j, c in enumerate(row):
                if c:
                    terms[(i, j)] = c
        return BiPoly(terms, vars)

    @property
    def shape(self):
        if not self.entries:
            return (0, 0)
        return (len(self.entries), len(self.entries[0]))

    def __eq__(self, other):
        if not isinstance(other, CoeffMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def render_rows(self):
        return [[c.render() for c in row] for row in self.entries]

    def render_text(self) -> str:
        rows = self.render_rows()
        if not rows:
            return "[]"
        widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
        lines = []
        for r in rows:
            cells = [r[j].rjust(widths[j]) for j in range(len(r))]
            lines.append("[ " + "  ".join(cells) + " ]")
        return "\n".join(lines)

    def key(self) -> str:
        """Canonical string key used for exact matrix identification."""
        return ";".join(",".join(cell for cell in row) for row in self.render_rows())


@dataclass(frozen=True)
class HamSystem:
    """A vector field in one chart, with 2-form bookkeeping."""

    chart_name: str
    vars: tuple
    f: BiRat                      # (first variable)'
    g: BiRat                      # (second variable)'
    omega_mult: BiRat             # dx/\dy = omega_mult * dA/\dB
    hamiltonian: BiPoly | None = None

    def substitute(self, bindings: dict) -> "HamSystem":
        ham = self.hamiltonian.substitute_coeffs(bindings) if self.hamiltonian is not None else None
        return replace(
            self,
            f=self.f.substitute_coeffs(bindings),
            g=self.g.substitute_coeffs(bindings),
            omega_mult=self.omega_mult.substitute_coeffs(bindings),
            hamiltonian=ham,
        )

    def omega_monomial(self):
        """(constant ell, exponent pair (i, j)) when m = ell * A^i B^j."""
        m = self.omega_mult
        if len(m.num.terms) != 1 or len(m.den.terms) != 1:
            return None
        (kn, cn), = m.num.terms.items()
        (kd, cd), = m.den.terms.items()
        if not (cn.is_rational() and cd.is_rational()):
            return None
        ell = cn.rational_value() / cd.rational_value()
        return ell, (kn[0] - kd[0], kn[1] - kd[1])


def field_from_hamiltonian(h: BiPoly, omega_mult: BiRat | None = None):
    """Vector field (F, G) with m*F = dH/dB and m*G = -dH/dA."""
    if omega_mult is None:
        omega_mult = BiRat.one(h.vars)
    if not omega_mult.num:
        raise ValueError("omega multiplier must be nonzero")
    f = BiRat.from_poly(h.partial(1)) / omega_mult
    g = BiRat.from_poly(-h.partial(0)) / omega_mult
    return f, g


def hamiltonian_from_field(f: BiRat, g: BiRat, omega_mult: BiRat | None = None,
                           keep_constant: bool = False) -> BiPoly:
    """Recover H from (F, G) under the 2-form multiplier m.

    m*F and m*G must be polynomial and satisfy the exactness condition
    d(mF)/dA + d(mG)/dB = 0; the constant (0,0) term of the result is
    dropped unless ``keep_constant``.
    """
    if omega_mult is None:
        omega_mult = BiRat.one(f.vars)
    mf = (omega_mult * f)
    mg = (omega_mult * g)
    if not mf.is_polynomial() or not mg.is_polynomial():
        raise NotPolynomial(
            f"m*F or m*G is not polynomial: {mf.render()} ; {mg.render()}")
    mf, mg = mf.num, mg.num
    divergence = mf.partial(0) + mg.partial(1)
    if divergence:
        raise NotHamiltonian(
            f"exactness fails: div = {divergence.render()}")
    h = mf.integrate(1)
    residual = -mg - h.partial(0)
    if residual.degree(1) > 0:
        raise NotHamiltonian(
            f"mixed-term residual not free of the second variable: {residual.render()}")
    h = h + residual.integrate(0)
    if not keep_constant and (0, 0) in h.terms:
        h = h - BiPoly({(0, 0): h.terms[(0, 0)]}, h.vars)
    return h


def coeff_matrix(h: BiPoly) -> CoeffMatrix:
    return CoeffMatrix.from_poly(h)


def reported_hamiltonian(k_poly: BiPoly, omega_mult: BiRat) -> BiPoly | None:
    """Divide out the constant part of a monomial multiplier.

    For a final chart with m = ell * A^(k-1) this turns the Hamiltonian K
    taken with respect to m into the one with respect to A^(k-1) alone;
    in canonical charts (k = 1) that is the plain canonical Hamiltonian,
    which is the normal form in which final-chart systems are reported.
    """
    mono = _constant_of_monomial(omega_mult)
    if mono is None:
        return None
    return k_poly * CoeffElem.rational(Fraction(1) / mono)


def _constant_of_monomial(m: BiRat):
    if len(m.num.terms) != 1 or len(m.den.terms) != 1:
        return None
    (_, cn), = m.num.terms.items()
    (_, cd), = m.den.terms.items()
    if not (cn.is_rational() and cd.is_rational()):
        return None
    return cn.rational_value() / cd.rational_value()
