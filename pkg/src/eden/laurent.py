"""Laurent polynomials f in Z[t, 1/t].

Text format: ``c_lo,...,c_hi @ offset`` (offset defaults to 0), or an
expression in ``t`` such as ``3 - t - t^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from eden.errors import InvalidInput


@dataclass(frozen=True)
class LaurentPoly:
    """f = sum_i coeffs[i] * t**(offset + i), stored without leading/trailing zeros."""

    coeffs: tuple
    offset: int = 0

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        offset = int(self.offset)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            offset += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            offset = 0
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "offset", offset)

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        terms = {int(k): int(v) for k, v in terms.items() if v}
        if not terms:
            return cls(())
        lo, hi = min(terms), max(terms)
        return cls(tuple(terms.get(e, 0) for e in range(lo, hi + 1)), lo)

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls((c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def low(self) -> int:
        return self.offset

    @property
    def high(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def terms(self) -> dict:
        return {self.offset + i: c for i, c in enumerate(self.coeffs) if c}

    def coeff(self, e: int) -> int:
        i = e - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, z):
        return sum(c * z ** e for e, c in self.terms().items())

    def __add__(self, other):
        other = _as_poly(other)
        terms = self.terms()
        for e, c in other.terms().items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly.from_dict(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple(-c for c in self.coeffs), self.offset)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        terms = {}
        for e1, c1 in self.terms().items():
            for e2, c2 in other.terms().items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(terms)

    __rmul__ = __mul__

    def reciprocal(self) -> "LaurentPoly":
        """f*(t) = f(1/t)."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms().items()})

    def shifted_polynomial(self) -> list:
        """Coefficients (ascending) of the ordinary polynomial t**(-low) * f."""
        return list(self.coeffs)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs) + f" @ {self.offset}" if self.coeffs else "0"

    def pretty(self) -> str:
        parts = []
        for e, c in sorted(self.terms().items()):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts) if parts else "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise InvalidInput(f"cannot use {x!r} as a Laurent polynomial")


_COEFF_RE = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*(@\s*-?\d+\s*)?$")


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``c_lo,...,c_hi @ offset`` or an integer expression in t."""
    text = text.strip()
    if text.startswith("f") and "=" in text:
        text = text.split("=", 1)[1].strip()
    if _COEFF_RE.match(text):
        body, _, off = text.partition("@")
        return LaurentPoly(tuple(int(c) for c in body.split(",")), int(off) if off.strip() else 0)
    import sympy

    t = sympy.Symbol("t")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"t": t})
    except (sympy.SympifyError, SyntaxError, TypeError):
        raise InvalidInput(f"cannot parse Laurent polynomial {text!r}") from None
    expr = sympy.expand(expr)
    if expr.free_symbols - {t}:
        raise InvalidInput(f"only the variable t may appear in {text!r}")
    terms = {}
    for term in sympy.Add.make_args(expr):
        c, e = term.as_coeff_exponent(t)
        if not (c.is_integer and e.is_integer) or c.free_symbols:
            raise InvalidInput(f"term {term} is not an integer multiple of a power of t")
        terms[int(e)] = terms.get(int(e), 0) + int(c)
    return LaurentPoly.from_dict(terms)
