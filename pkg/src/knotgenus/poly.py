"""Exact two-variable Laurent polynomials in ``v`` and ``z``."""

from __future__ import annotations

import json

__all__ = ["LaurentPoly2", "ONE", "V", "Z", "DELTA"]


class LaurentPoly2:
    """Finite map ``(v_exp, z_exp) -> nonzero int``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {k: c for k, c in terms.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, coeff=1, v=0, z=0):
        return cls({(v, z): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.monomial(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.monomial(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.monomial(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a, b), c in self.terms.items():
            for (x, y), d in other.terms.items():
                key = (a + x, b + y)
                out[key] = out.get(key, 0) + c * d
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers only exist for monomials; use shift()")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, dv=0, dz=0, coeff=1):
        """Multiply by the monomial ``coeff * v**dv * z**dz``."""
        return LaurentPoly2({(a + dv, b + dz): c * coeff for (a, b), c in self.terms.items()})

    def z_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no z-degree")
        return max(b for _, b in self.terms)

    def v_span(self):
        vs = [a for a, _ in self.terms]
        return min(vs), max(vs)

    def substitute_mirror(self):
        """``P(-1/v, z)``, the polynomial of the mirror image."""
        return LaurentPoly2({(-a, b): c * (-1) ** (a % 2) for (a, b), c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_json(self) -> dict:
        return {"terms": [{"v": v, "z": z, "c": c} for (v, z), c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(t["v"], t["z"]): t["c"] for t in data["terms"]})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (v, z), c in self.sorted_terms():
            mono = "*".join(
                f"{var}" if e == 1 else f"{var}^{e}" for var, e in (("v", v), ("z", z)) if e
            )
            if not mono:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mono}")
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:+d}*{mono}")
        text = " ".join(parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"LaurentPoly2({str(self)!r})"


ONE = LaurentPoly2.monomial(1)
V = LaurentPoly2.monomial(1, v=1)
Z = LaurentPoly2.monomial(1, z=1)
# forced by the skein relation with P(unknot) = 1: v^-1 - v = z * delta
DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})
