"""Canonical-form arithmetic in a localized Grothendieck ring of variety classes.

A :class:`MotClass` is a Laurent polynomial in the affine-line class ``L``
over free commutative monomials in named generators ("atoms"): a finite map

    sorted atom monomial  ->  Laurent polynomial in L with integer coefficients

kept with no zero values, so equality of classes is structural equality.
The multiplicative-group class is eagerly rewritten as ``L - 1`` and never
appears as an atom.  Atoms are free generators carrying optional geometric
data (dimension, Euler characteristic, cyclic-cover degree, properness flag,
E-polynomial) consumed by the realization morphisms:

* ``chi_realize``   -- ring morphism with ``L -> 1`` and atom -> its chi;
* ``epoly_realize`` -- ring morphism with ``L -> uv`` and atom -> its
  E-polynomial (a two-variable integer Laurent polynomial);
* ``dualize``       -- the duality involution with ``L -> 1/L`` and a smooth
  proper atom ``Y -> Y * L^(-dim Y)``, Laurent coefficients ``c(L) -> c(1/L)``.

``verify_binomial_identity`` machine-checks the binomial collapse used when
rewriting cohomological motives of open strata in homological terms, with
``T = 1/L`` standing for a single Tate twist of the unit and ``G = 1 - T``
for the class of the unit's multiplicative-group motive.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

# ---------------------------------------------------------------------------
# Laurent polynomials in L, as {exponent: coefficient} with no zero values.

LPoly = dict


def _lp(d: Mapping[int, int]) -> dict[int, int]:
    return {e: c for e, c in d.items() if c}


def _lp_add(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _lp_mul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _lp_scale(a: Mapping[int, int], c: int) -> dict[int, int]:
    return {} if c == 0 else {e: c * v for e, v in a.items()}


def _lp_shift(a: Mapping[int, int], k: int) -> dict[int, int]:
    return {e + k: v for e, v in a.items()}


def _lp_conj(a: Mapping[int, int]) -> dict[int, int]:
    """Substitute L -> 1/L."""
    return {-e: v for e, v in a.items()}


# ---------------------------------------------------------------------------
# Two-variable integer Laurent polynomials in (u, v), as {(eu, ev): coeff}.

UVPoly = dict


def uv_add(a: Mapping[tuple[int, int], int], b: Mapping[tuple[int, int], int]) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def uv_mul(a: Mapping[tuple[int, int], int], b: Mapping[tuple[int, int], int]) -> dict:
    out: dict[tuple[int, int], int] = {}
    for (u1, v1), c1 in a.items():
        for (u2, v2), c2 in b.items():
            k = (u1 + u2, v1 + v2)
            s = out.get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def uv_scale(a: Mapping[tuple[int, int], int], c: int) -> dict:
    return {} if c == 0 else {k: c * v for k, v in a.items()}


def uv_eval_ones(a: Mapping[tuple[int, int], int]) -> int:
    """Evaluate at u = v = 1."""
    return sum(a.values())


_UV_TOKEN = re.compile(r"\s*([+-]|\*|\^|\d+|u|v)")


def uv_from_str(s: str) -> dict:
    """Parse expressions like ``'u^2*v^2 - 2*u*v + 1'`` or ``'u*v^-1'``."""
    tokens = []
    pos = 0
    while pos < len(s):
        m = _UV_TOKEN.match(s, pos)
        if not m:
            raise ValueError("cannot parse E-polynomial %r at position %d" % (s, pos))
        tokens.append(m.group(1))
        pos = m.end()
    result: dict[tuple[int, int], int] = {}
    i = 0

    def parse_int() -> int:
        nonlocal i
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens) or not tokens[i].isdigit():
            raise ValueError("expected integer in %r" % s)
        value = sign * int(tokens[i])
        i += 1
        return value

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ValueError("dangling sign in %r" % s)
        coeff = sign
        ue = ve = 0
        expect_factor = True
        while expect_factor:
            tok = tokens[i]
            if tok.isdigit():
                coeff *= int(tok)
                i += 1
            elif tok in ("u", "v"):
                i += 1
                e = 1
                if i < len(tokens) and tokens[i] == "^":
                    i += 1
                    e = parse_int()
                if tok == "u":
                    ue += e
                else:
                    ve += e
            else:
                raise ValueError("unexpected token %r in %r" % (tok, s))
            if i < len(tokens) and tokens[i] == "*":
                i += 1
            elif i < len(tokens) and tokens[i] not in "+-":
                pass  # juxtaposition like '2u' keeps consuming factors
            else:
                expect_factor = False
        k = (ue, ve)
        c = result.get(k, 0) + coeff
        if c:
            result[k] = c
        else:
            result.pop(k, None)
    return result


def uv_to_str(a: Mapping[tuple[int, int], int]) -> str:
    if not a:
        return "0"
    pieces = []
    for (ue, ve), c in sorted(a.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
        factors = []
        if ue:
            factors.append("u" if ue == 1 else "u^%d" % ue)
        if ve:
            factors.append("v" if ve == 1 else "v^%d" % ve)
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        pieces.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(pieces)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


# ---------------------------------------------------------------------------
# Atoms and registries.


@dataclass(frozen=True)
class Atom:
    """A named free generator, optionally decorated with geometric data.

    ``cover_degree`` records the degree of the cyclic cover a class came from;
    the finite group action itself is not modelled.  ``chi`` and ``epoly``
    must agree at ``u = v = 1`` when both are given.
    """

    name: str
    dim: int | None = None
    chi: int | None = None
    cover_degree: int | None = None
    proper_smooth: bool = False
    epoly: UVPoly | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("atom needs a nonempty name")
        if self.dim is not None and self.dim < 0:
            raise ValueError("atom dimension must be nonnegative")
        if self.cover_degree is not None and self.cover_degree < 1:
            raise ValueError("cover degree must be a positive integer")
        if self.epoly is not None and self.chi is not None and uv_eval_ones(self.epoly) != self.chi:
            raise ValueError("E-polynomial at u=v=1 disagrees with chi for atom %r" % self.name)


def registry(atoms: Iterable[Atom]) -> dict[str, Atom]:
    """Index atoms by name, enforcing uniqueness."""
    out: dict[str, Atom] = {}
    for atom in atoms:
        if atom.name in out:
            raise ValueError("duplicate atom name %r" % atom.name)
        out[atom.name] = atom
    return out


def atom_to_json(a: Atom) -> dict:
    doc: dict = {"name": a.name, "proper_smooth": a.proper_smooth}
    if a.dim is not None:
        doc["dim"] = a.dim
    if a.chi is not None:
        doc["chi"] = a.chi
    if a.cover_degree is not None:
        doc["cover_degree"] = a.cover_degree
    if a.epoly is not None:
        doc["epoly"] = uv_to_str(a.epoly)
    return doc


def atom_from_json(doc: dict) -> Atom:
    if "name" not in doc:
        raise ValueError("atom document needs a 'name'")
    epoly = doc.get("epoly")
    return Atom(
        name=doc["name"],
        dim=doc.get("dim"),
        chi=doc.get("chi"),
        cover_degree=doc.get("cover_degree"),
        proper_smooth=bool(doc.get("proper_smooth", False)),
        epoly=uv_from_str(epoly) if isinstance(epoly, str) else epoly,
    )


# ---------------------------------------------------------------------------
# MotClass proper.

Monomial = tuple[str, ...]


class MotClass:
    """An element of the localized ring: Laurent polynomials in L over atom monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Mapping[int, int]] = ()):
        canonical: dict[Monomial, dict[int, int]] = {}
        for mono, poly in dict(terms).items():
            key = tuple(sorted(mono))
            merged = _lp_add(canonical.get(key, {}), _lp(poly))
            if merged:
                canonical[key] = merged
            else:
                canonical.pop(key, None)
        self._terms = canonical

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> MotClass:
        return MotClass()

    @staticmethod
    def one() -> MotClass:
        return MotClass({(): {0: 1}})

    @staticmethod
    def from_int(c: int) -> MotClass:
        return MotClass({(): {0: int(c)}})

    @staticmethod
    def lefschetz(k: int = 1) -> MotClass:
        """The class L^k (k may be negative)."""
        return MotClass({(): {k: 1}})

    @staticmethod
    def atom(name: str) -> MotClass:
        return MotClass({(name,): {0: 1}})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, dict[int, int]]:
        return {m: dict(p) for m, p in self._terms.items()}

    def is_zero(self) -> bool:
        return not self._terms

    def atoms_used(self) -> set[str]:
        return {name for mono in self._terms for name in mono}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MotClass):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # canonical but mutable-dict-backed; compare, don't hash

    def __repr__(self) -> str:
        if not self._terms:
            return "MotClass(0)"
        bits = []
        for mono in sorted(self._terms):
            poly = self._terms[mono]
            ppart = " ".join(
                "%+d*L^%d" % (c, e) if e else "%+d" % c for e, c in sorted(poly.items(), reverse=True)
            )
            mpart = "*".join(mono) if mono else "1"
            bits.append("(%s)[%s]" % (ppart, mpart))
        return "MotClass(%s)" % " + ".join(bits)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: MotClass) -> MotClass:
        if not isinstance(other, MotClass):
            return NotImplemented
        out = dict(self._terms)
        for mono, poly in other._terms.items():
            merged = _lp_add(out.get(mono, {}), poly)
            if merged:
                out[mono] = merged
            else:
                out.pop(mono, None)
        return MotClass(out)

    def __neg__(self) -> MotClass:
        return MotClass({m: _lp_scale(p, -1) for m, p in self._terms.items()})

    def __sub__(self, other: MotClass) -> MotClass:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MotClass({m: _lp_scale(p, other) for m, p in self._terms.items()})
        if not isinstance(other, MotClass):
            return NotImplemented
        out: dict[Monomial, dict[int, int]] = {}
        for m1, p1 in self._terms.items():
            for m2, p2 in other._terms.items():
                mono = tuple(sorted(m1 + m2))
                merged = _lp_add(out.get(mono, {}), _lp_mul(p1, p2))
                if merged:
                    out[mono] = merged
                else:
                    out.pop(mono, None)
        return MotClass(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> MotClass:
        if k < 0:
            raise ValueError("negative powers only supported for L itself (use l_pow)")
        result = MotClass.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def add(a: MotClass, b: MotClass) -> MotClass:
    return a + b


def mul(a: MotClass, b: MotClass) -> MotClass:
    return a * b


def neg(a: MotClass) -> MotClass:
    return -a


def l_pow(a: MotClass, k: int) -> MotClass:
    """Multiply by L^k; k may be negative since the ring is localized at L."""
    return MotClass({m: _lp_shift(p, k) for m, p in a.terms.items()})


def gm() -> MotClass:
    """The class of the multiplicative group, always represented as L - 1."""
    return MotClass({(): {1: 1, 0: -1}})


def chi_realize(a: MotClass, atoms: Mapping[str, Atom]) -> int:
    """Euler-characteristic realization: L -> 1, atom -> its chi."""
    total = 0
    for mono, poly in a.terms.items():
        factor = 1
        for name in mono:
            atom = atoms.get(name)
            if atom is None:
                raise ValueError("unknown atom %r" % name)
            if atom.chi is None:
                raise ValueError("atom %r has no chi" % name)
            factor *= atom.chi
        total += factor * sum(poly.values())
    return total


def epoly_realize(a: MotClass, atoms: Mapping[str, Atom]) -> UVPoly:
    """Hodge-Deligne style realization: L -> uv, atom -> its E-polynomial."""
    total: dict = {}
    for mono, poly in a.terms.items():
        factor: dict = {(0, 0): 1}
        for name in mono:
            atom = atoms.get(name)
            if atom is None:
                raise ValueError("unknown atom %r" % name)
            if atom.epoly is None:
                raise ValueError("atom %r has no E-polynomial" % name)
            factor = uv_mul(factor, atom.epoly)
        lpart = {(e, e): c for e, c in poly.items()}
        total = uv_add(total, uv_mul(factor, lpart))
    return total


def dualize(a: MotClass, atoms: Mapping[str, Atom]) -> MotClass:
    """The duality involution: L -> 1/L, atom Y -> Y * L^(-dim Y).

    Only defined over smooth proper atoms with a known dimension; Laurent
    coefficients c(L) are sent to c(1/L).
    """
    out: dict[Monomial, dict[int, int]] = {}
    for mono, poly in a.terms.items():
        shift = 0
        for name in mono:
            atom = atoms.get(name)
            if atom is None:
                raise ValueError("unknown atom %r" % name)
            if not atom.proper_smooth:
                raise ValueError("atom %r is not flagged proper+smooth; duality undefined" % name)
            if atom.dim is None:
                raise ValueError("atom %r has no dimension" % name)
            shift -= atom.dim
        out[mono] = _lp_add(out.get(mono, {}), _lp_shift(_lp_conj(poly), shift))
    return MotClass(out)


def substitute(a: MotClass, table: Mapping[str, MotClass]) -> MotClass:
    """Ring morphism sending each atom to ``table[name]`` (identity on L)."""
    total = MotClass.zero()
    for mono, poly in a.terms.items():
        factor = MotClass({(): dict(poly)})
        for name in mono:
            if name not in table:
                raise ValueError("no substitution for atom %r" % name)
            factor = factor * table[name]
        total = total + factor
    return total


def verify_binomial_identity(m: int) -> bool:
    """Check T^m - sum_{i<m} C(m,i) (-1)^i G^i = (-1)^m G^m with G = 1 - T, T = 1/L.

    This is the collapse step that turns the alternating open-stratum sum into
    a single twisted multiplicative-group factor.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    T = MotClass.lefschetz(-1)
    G = MotClass.one() - T
    lhs = l_pow(MotClass.one(), -m)
    for i in range(m):
        lhs = lhs - math.comb(m, i) * ((-1) ** i) * (G ** i)
    rhs = ((-1) ** m) * (G ** m)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Factored zeta functions prod_N (1 - t^N)^e.


@dataclass(frozen=True)
class FactoredZeta:
    """A product of cyclotomic-style factors ``(1 - t^N)^e`` with no zero exponents."""

    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for n, e in self.factors:
            if n < 1:
                raise ValueError("factor order must be positive")
            merged[n] = merged.get(n, 0) + e
        canon = tuple(sorted((n, e) for n, e in merged.items() if e))
        object.__setattr__(self, "factors", canon)

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> FactoredZeta:
        return cls(tuple(d.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def degree(self) -> int:
        """Degree of the rational function: sum of e * N."""
        return sum(n * e for n, e in self.factors)

    def expand(self) -> str:
        """The reduced rational function, e.g. ``'(1 - t + t^2)/(1 - t)'``."""
        num = [1]
        den = [1]
        for n, e in self.factors:
            base = [1] + [0] * (n - 1) + [-1]  # 1 - t^n
            for _ in range(abs(e)):
                if e > 0:
                    num = _poly_mul(num, base)
                else:
                    den = _poly_mul(den, base)
        g = _poly_gcd(num, den)
        num = _poly_divexact(num, g)
        den = _poly_divexact(den, g)
        if den[0] < 0:
            num = [-c for c in num]
            den = [-c for c in den]
        if den == [1]:
            return _poly_str(num)

        def wrap(p: Sequence[int]) -> str:
            s = _poly_str(p)
            return s if sum(1 for c in p if c) == 1 and not s.startswith("-") else "(%s)" % s

        return "%s/%s" % (wrap(num), wrap(den))


def _poly_trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must vanish)."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            raise ValueError("division is not exact")
        out[i] = q
        for j, y in enumerate(b):
            a[i + j] -= q * y
    if any(a):
        raise ValueError("division is not exact")
    return _poly_trim(out)


def _poly_content(a: Sequence[int]) -> int:
    return math.gcd(0, *map(abs, a))


def _poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Gcd of integer polynomials, primitive with positive leading coefficient."""
    from fractions import Fraction

    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    fa, fb = trim(fa), trim(fb)
    while fb:
        # remainder of fa by fb
        r = fa[:]
        for i in range(len(r) - 1, len(fb) - 2, -1):
            q = r[i] / fb[-1]
            if q:
                for j in range(len(fb)):
                    r[i - len(fb) + 1 + j] -= q * fb[j]
        fa, fb = fb, trim(r)
    if not fa:
        return [1]
    denom = math.lcm(*(c.denominator for c in fa))
    ints = [int(c * denom) for c in fa]
    content = _poly_content(ints)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _poly_str(p: Sequence[int]) -> str:
    if not any(p):
        return "0"
    pieces = []
    for i, c in enumerate(p):
        if not c:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            t = "t" if i == 1 else "t^%d" % i
            body = t if abs(c) == 1 else "%d*%s" % (abs(c), t)
        pieces.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(pieces)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def zeta_to_json(z: FactoredZeta) -> dict:
    return {"factors": {str(n): e for n, e in z.factors}, "expanded": z.expand()}


def zeta_from_json(doc: dict) -> FactoredZeta:
    return FactoredZeta(tuple((int(n), int(e)) for n, e in doc["factors"].items()))


# ---------------------------------------------------------------------------
# MotClass wire format: deterministic sorted serialization.


def motclass_to_json(a: MotClass) -> dict:
    terms = []
    for mono in sorted(a.terms):
        poly = a.terms[mono]
        terms.append({
            "monomial": list(mono),
            "coeff": {str(e): poly[e] for e in sorted(poly)},
        })
    return {"terms": terms}


def motclass_from_json(doc: dict) -> MotClass:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise ValueError("class document must have a 'terms' key")
    out: dict[Monomial, dict[int, int]] = {}
    for term in doc["terms"]:
        mono = tuple(term.get("monomial", ()))
        if not all(isinstance(x, str) for x in mono):
            raise ValueError("monomial must be a list of atom names")
        coeff = {int(e): int(c) for e, c in term.get("coeff", {}).items()}
        out[tuple(sorted(mono))] = _lp_add(out.get(tuple(sorted(mono)), {}), coeff)
    return MotClass(out)
