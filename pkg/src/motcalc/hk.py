"""Graded residue-times-polytope classes and their two realization morphisms.

Classes on the leading-term side split as formal sums of terms

    (residue-side class, grade r)  (x)  (polytope in the value group, grade s)

with total grade ``r + s``.  The residue-side factor is a :class:`MotClass`;
the value-group factor is a :class:`~motcalc.polytope.PolyFormula`.  Two ring
morphisms evaluate such a sum into the localized Grothendieck ring:

* ``realize_e``  (grade-sensitive):   eu(gamma)   * res * (L-1)^s / L^(r+s)
* ``realize_ec`` (grade-insensitive): eu_c(gamma) * res * (L-1)^s

The point-with-puncture relation -- an open punctured disc plus a point equals
a closed disc -- generates the kernel of the lift to the valued-field side;
``verify_isp`` machine-checks that both realizations kill its generator
``[RV>0]_1 + [1]_0 - [1]_1`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import polytope
from .motring import MotClass, gm, l_pow
from .polytope import PolyFormula


@dataclass(frozen=True)
class RVTerm:
    """One graded tensor term; ``gamma_dim`` must equal ``gamma.dim``."""

    res: MotClass
    res_grade: int
    gamma: PolyFormula
    gamma_dim: int = -1

    def __post_init__(self) -> None:
        if self.res_grade < 0:
            raise ValueError("residue grade must be nonnegative")
        if self.gamma_dim == -1:
            object.__setattr__(self, "gamma_dim", self.gamma.dim)
        elif self.gamma_dim != self.gamma.dim:
            raise ValueError("gamma_dim %d does not match formula dimension %d" % (self.gamma_dim, self.gamma.dim))

    @property
    def grade(self) -> int:
        return self.res_grade + self.gamma_dim


@dataclass(frozen=True)
class RVClass:
    """A finite integer combination of terms; no canonical form is imposed."""

    terms: tuple[tuple[int, RVTerm], ...]


def term_product(a: RVTerm, b: RVTerm) -> RVTerm:
    """Cartesian product of terms: residues multiply, grades add, polytopes stack."""
    return RVTerm(a.res * b.res, a.res_grade + b.res_grade, polytope.product(a.gamma, b.gamma))


def realize_e(c: RVClass) -> MotClass:
    """Sum of coeff * eu(gamma) * res * (L-1)^s * L^-(r+s) over the terms."""
    total = MotClass.zero()
    for coeff, term in c.terms:
        s = term.gamma_dim
        e = polytope.eu(term.gamma)
        if e == 0 or coeff == 0:
            continue
        total = total + l_pow(coeff * e * term.res * gm() ** s, -(term.res_grade + s))
    return total


def realize_ec(c: RVClass) -> MotClass:
    """Sum of coeff * eu_c(gamma) * res * (L-1)^s over the terms (no L-power)."""
    total = MotClass.zero()
    for coeff, term in c.terms:
        s = term.gamma_dim
        e = polytope.eu_c(term.gamma)
        if e == 0 or coeff == 0:
            continue
        total = total + coeff * e * term.res * gm() ** s
    return total


def isp_generator() -> RVClass:
    """The three-term class ``[RV>0]_1 + [1]_0 - [1]_1``."""
    one = MotClass.one()
    rv_pos = RVTerm(one, 0, polytope.halfline())
    unit_0 = RVTerm(one, 0, polytope.true_formula(0))
    unit_1 = RVTerm(one, 1, polytope.true_formula(0))
    return RVClass(((1, rv_pos), (1, unit_0), (-1, unit_1)))


def verify_isp() -> bool:
    """True iff both realizations send the generator to the exact zero class."""
    g = isp_generator()
    return realize_e(g).is_zero() and realize_ec(g).is_zero()


# ---------------------------------------------------------------------------
# Wire format: {"terms": [{"coeff": 1, "res": <class>, "res_grade": 0, "gamma": <formula>}]}

from .motring import motclass_from_json, motclass_to_json  # noqa: E402
from .polytope import formula_from_json, formula_to_json  # noqa: E402


def rvclass_to_json(c: RVClass) -> dict:
    return {
        "terms": [
            {
                "coeff": coeff,
                "res": motclass_to_json(term.res),
                "res_grade": term.res_grade,
                "gamma": formula_to_json(term.gamma),
            }
            for coeff, term in c.terms
        ]
    }


def rvclass_from_json(doc: dict) -> RVClass:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise ValueError("class document must have a 'terms' key")
    terms = []
    for t in doc["terms"]:
        coeff = t.get("coeff", 1)
        if not isinstance(coeff, int):
            raise ValueError("'coeff' must be an integer")
        grade = t.get("res_grade", 0)
        if not isinstance(grade, int) or grade < 0:
            raise ValueError("'res_grade' must be a nonnegative integer")
        terms.append((coeff, RVTerm(motclass_from_json(t["res"]), grade, formula_from_json(t["gamma"]))))
    return RVClass(tuple(terms))
