"""Piecewise-linear subsets of Q^n and their combinatorial Euler characteristics.

A :class:`PolyFormula` is a finite union of conjunctions of affine conditions
``a . x + b  (= | > | >=)  0`` with integer coefficient vectors ``a`` and
rational constants ``b``; this is exactly the class of sets cut out in the
value group by piecewise-linear equations and inequations.  Formulas are kept
in disjunctive normal form; negation is the caller's responsibility.

Two additive invariants are computed:

* ``eu``   -- assigns ``(-1)^k`` to every relatively open convex cell of
  dimension ``k``, bounded or not, and sums over a cell decomposition.
* ``eu_c`` -- the eventual value of ``eu`` of the intersection with the boxes
  ``[-M, M]^n`` as ``M`` grows.  Note that under this literal limit definition
  ``eu_c(Q^1) = 1`` (box slices are closed intervals), which differs from the
  topological compactly-supported convention.

The cell decomposition used throughout is the sign-cell decomposition of the
arrangement of the formula's distinct affine forms: each nonempty sign vector
cuts out a relatively open convex polyhedron, the formula holds on it or not
depending only on the signs, and the dimension is certified by an interior
witness point.  All feasibility questions are decided by exact integer
Fourier-Motzkin elimination; no numerics are involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactalg import IntMatrix

EQ = "="
GT = ">"
GE = ">="
_RELS = (EQ, GT, GE)

DEFAULT_MAX_DIM = 6
DEFAULT_MAX_FORMS = 32


class BoundExceededError(Exception):
    """Raised when a formula exceeds the dimension or form-count bound."""


class StabilizationError(Exception):
    """Raised when the two-box evaluation of ``eu_c`` disagrees (internal bug)."""


@dataclass(frozen=True)
class AffineForm:
    """The affine function ``x -> coeffs . x + constant``."""

    coeffs: tuple[int, ...]
    constant: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "constant", Fraction(self.constant))

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), self.constant)

    def primitive(self) -> tuple[tuple[int, ...], int]:
        """Canonical positively-proportional integer representative ``(coeffs, const)``."""
        q = self.constant.denominator
        coeffs = tuple(c * q for c in self.coeffs)
        const = self.constant.numerator
        g = math.gcd(abs(const), math.gcd(0, *map(abs, coeffs)) if coeffs else 0)
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            const //= g
        return coeffs, const


Conjunction = tuple[tuple[AffineForm, str], ...]


@dataclass(frozen=True)
class PolyFormula:
    """A subset of Q^dim in disjunctive normal form."""

    dim: int
    disjuncts: tuple[Conjunction, ...]

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        for conj in self.disjuncts:
            for form, rel in conj:
                if len(form.coeffs) != self.dim:
                    raise ValueError("form arity does not match ambient dimension")
                if rel not in _RELS:
                    raise ValueError("unknown relation %r" % (rel,))


def true_formula(dim: int) -> PolyFormula:
    """All of Q^dim (one empty conjunction)."""
    return PolyFormula(dim, ((),))


def false_formula(dim: int) -> PolyFormula:
    """The empty subset of Q^dim (no disjuncts)."""
    return PolyFormula(dim, ())


def halfline(strict: bool = True) -> PolyFormula:
    """The ray (0, +oo) in Q^1 (or [0, +oo) when ``strict`` is False)."""
    return PolyFormula(1, (((AffineForm((1,), Fraction(0)), GT if strict else GE),),))


def open_cube(dim: int) -> PolyFormula:
    """The open unit cube (0, 1)^dim."""
    conj = []
    for i in range(dim):
        e = tuple(1 if j == i else 0 for j in range(dim))
        conj.append((AffineForm(e, Fraction(0)), GT))
        conj.append((AffineForm(tuple(-x for x in e), Fraction(1)), GT))
    return PolyFormula(dim, (tuple(conj),))


def open_simplex(dim: int) -> PolyFormula:
    """The open standard simplex ``{x_i > 0, sum x_i < 1}`` (a point for dim 0)."""
    if dim == 0:
        return true_formula(0)
    conj = [(AffineForm(tuple(1 if j == i else 0 for j in range(dim)), Fraction(0)), GT) for i in range(dim)]
    conj.append((AffineForm(tuple(-1 for _ in range(dim)), Fraction(1)), GT))
    return PolyFormula(dim, (tuple(conj),))


def point_formula(coords: Sequence[Fraction]) -> PolyFormula:
    """The singleton ``{coords}``."""
    n = len(coords)
    conj = tuple(
        (AffineForm(tuple(1 if j == i else 0 for j in range(n)), -Fraction(coords[i])), EQ) for i in range(n)
    )
    return PolyFormula(n, (conj,))


def formula_or(f: PolyFormula, g: PolyFormula) -> PolyFormula:
    """Union; the ambient dimensions must agree."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    return PolyFormula(f.dim, f.disjuncts + g.disjuncts)


def formula_and(f: PolyFormula, g: PolyFormula) -> PolyFormula:
    """Intersection, distributed back into disjunctive normal form."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    return PolyFormula(f.dim, tuple(c1 + c2 for c1 in f.disjuncts for c2 in g.disjuncts))


def product(f: PolyFormula, g: PolyFormula) -> PolyFormula:
    """The cartesian product ``f x g`` in dimension ``dim(f) + dim(g)``."""
    n, m = f.dim, g.dim
    zeros_m = (0,) * m
    zeros_n = (0,) * n

    def pad_left(conj: Conjunction) -> Conjunction:
        return tuple((AffineForm(form.coeffs + zeros_m, form.constant), rel) for form, rel in conj)

    def pad_right(conj: Conjunction) -> Conjunction:
        return tuple((AffineForm(zeros_n + form.coeffs, form.constant), rel) for form, rel in conj)

    return PolyFormula(n + m, tuple(pad_left(c1) + pad_right(c2) for c1 in f.disjuncts for c2 in g.disjuncts))


def transform(f: PolyFormula, A: IntMatrix, b: Sequence[Fraction]) -> PolyFormula:
    """Image of ``f`` under ``x -> A x + b`` for unimodular integer ``A``.

    Forms are pulled back through the inverse map, which is again integral
    exactly because ``|det A| = 1``.
    """
    n = f.dim
    if A.rows != n or A.cols != n:
        raise ValueError("matrix shape does not match formula dimension")
    if len(b) != n:
        raise ValueError("translation length does not match dimension")
    inv = _unimodular_inverse(A)
    bvec = tuple(Fraction(x) for x in b)

    def push(form: AffineForm) -> AffineForm:
        new_coeffs = tuple(sum(form.coeffs[i] * inv[i][j] for i in range(n)) for j in range(n))
        new_const = form.constant - sum(new_coeffs[j] * bvec[j] for j in range(n))
        return AffineForm(new_coeffs, new_const)

    return PolyFormula(n, tuple(tuple((push(form), rel) for form, rel in conj) for conj in f.disjuncts))


def _unimodular_inverse(A: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Exact inverse of a unimodular integer matrix; raises if |det| != 1."""
    n = A.rows
    work = [[Fraction(A.entries[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)]
            for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular, not unimodular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv_p = 1 / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    if abs(det) != 1:
        raise ValueError("matrix is not unimodular (|det| = %s)" % det)
    inv = tuple(tuple(int(work[i][n + j]) for j in range(n)) for i in range(n))
    return inv


# --------------------------------------------------------------------------
# Exact feasibility: integer Fourier-Motzkin elimination with witness points.
# A constraint is (coeffs, const, rel) over integers, meaning
# coeffs . x + const  REL  0 with REL one of EQ / GT / GE.

Constraint = tuple[tuple[int, ...], int, str]


def _make_primitive(coeffs: tuple[int, ...], const: int, rel: str) -> Constraint:
    g = math.gcd(abs(const), math.gcd(0, *map(abs, coeffs)) if coeffs else 0)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const //= g
    return coeffs, const, rel


def _const_row_ok(const: int, rel: str) -> bool:
    return const == 0 if rel == EQ else const > 0 if rel == GT else const >= 0


def _sift(rows: Iterable[Constraint], primitive: bool) -> list[Constraint] | None:
    """Deduplicate and drop trivially-true rows; None if contradictory.

    Derived rows (``primitive=False``) are rescaled to primitive form;
    caller-built rows are primitive already.
    """
    seen: set[Constraint] = set()
    out: list[Constraint] = []
    for row in rows:
        coeffs, const, rel = row
        if not any(coeffs):
            if not _const_row_ok(const, rel):
                return None
            continue
        if not primitive:
            row = _make_primitive(coeffs, const, rel)
        if row not in seen:
            seen.add(row)
            out.append(row)
    return out


IntPoint = tuple[tuple[int, ...], int]  # numerators over a common positive denominator


def _feasible(constraints: Sequence[Constraint], n: int) -> IntPoint | None:
    """A rational solution (as numerators over a common denominator), or None.

    Constraints are expected with primitive integer rows (as produced by the
    arrangement machinery); derived rows are re-scaled internally.
    """
    rows = _sift(constraints, primitive=True)
    if rows is None:
        return None
    steps: list[tuple] = []
    for v in range(n - 1, -1, -1):
        pivot = next((r for r in rows if r[2] == EQ and r[0][v] != 0), None)
        if pivot is not None:
            a = pivot[0][v]
            new_rows: list[Constraint] = []
            for row in rows:
                if row is pivot:
                    continue
                bcoef = row[0][v]
                if bcoef == 0:
                    new_rows.append(row)
                else:
                    scale = abs(a)
                    mult = (1 if a > 0 else -1) * bcoef
                    coeffs = tuple(scale * rc - mult * pc for rc, pc in zip(row[0], pivot[0]))
                    new_rows.append((coeffs, scale * row[1] - mult * pivot[1], row[2]))
            steps.append(("eq", v, pivot))
            rows = _sift(new_rows, primitive=False)
        else:
            lowers = [r for r in rows if r[0][v] > 0]
            uppers = [r for r in rows if r[0][v] < 0]
            new_rows = [r for r in rows if r[0][v] == 0]
            for lo in lowers:
                for up in uppers:
                    la, ua = lo[0][v], -up[0][v]
                    coeffs = tuple(ua * lc + la * uc for lc, uc in zip(lo[0], up[0]))
                    const = ua * lo[1] + la * up[1]
                    rel = GT if GT in (lo[2], up[2]) else GE
                    new_rows.append((coeffs, const, rel))
            steps.append(("fm", v, lowers, uppers))
            rows = _sift(new_rows, primitive=False)
        if rows is None:
            return None
    nums = [0] * n
    den = 1
    for step in reversed(steps):
        kind, v = step[0], step[1]
        if kind == "eq":
            pivot = step[2]
            a = pivot[0][v]
            s = sum(c * nums[j] for j, c in enumerate(pivot[0]) if j != v) + pivot[1] * den
            # x_v = -s / (a * den); rescale everything to denominator den*|a|
            aa = abs(a)
            if aa != 1:
                nums = [x * aa for x in nums]
                den *= aa
            nums[v] = -s if a > 0 else s
        else:
            lowers, uppers = step[2], step[3]
            lo = None  # value as a pair (p, q) with q > 0
            for row in lowers:
                a = row[0][v]
                s = sum(c * nums[j] for j, c in enumerate(row[0]) if j != v) + row[1] * den
                p, q = -s, a * den
                if lo is None or p * lo[1] > lo[0] * q:
                    lo = (p, q)
            hi = None
            for row in uppers:
                a = row[0][v]
                s = sum(c * nums[j] for j, c in enumerate(row[0]) if j != v) + row[1] * den
                p, q = s, -a * den
                if hi is None or p * hi[1] < hi[0] * q:
                    hi = (p, q)
            if lo is None and hi is None:
                continue  # nums[v] stays 0
            if hi is None:
                p, q = lo[0] + lo[1], lo[1]
            elif lo is None:
                p, q = hi[0] - hi[1], hi[1]
            elif lo[0] * hi[1] == hi[0] * lo[1]:
                p, q = lo
            else:
                p, q = lo[0] * hi[1] + hi[0] * lo[1], 2 * lo[1] * hi[1]
            g = math.gcd(p, q)
            if g > 1:
                p //= g
                q //= g
            # q is a multiple of den by construction; rescale to denominator q... not
            # necessarily: bring both to the common denominator lcm(den, q).
            common = den * q // math.gcd(den, q)
            if common != den:
                f = common // den
                nums = [x * f for x in nums]
                den = common
            nums[v] = p * (den // q)
    return tuple(nums), den


def feasible_point(constraints: Sequence[Constraint], n: int) -> tuple[Fraction, ...] | None:
    """A rational solution of the constraint system, or None if infeasible."""
    pt = _feasible(constraints, n)
    if pt is None:
        return None
    nums, den = pt
    return tuple(Fraction(x, den) for x in nums)


# --------------------------------------------------------------------------
# Sign-cell decomposition.


@dataclass(frozen=True)
class Cell:
    """A nonempty sign cell: relatively open, convex, with an interior witness."""

    signs: tuple[int, ...]
    dim: int
    bounded: bool
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class CellComplex:
    dim: int
    forms: tuple[AffineForm, ...]
    cells: tuple[Cell, ...]


def _distinct_forms(f: PolyFormula) -> tuple[list[tuple[tuple[int, ...], int]], list[list[tuple[int, tuple[int, ...]]]]]:
    """Deduplicated primitive forms (first-occurrence order) plus, for each
    disjunct, the list of (form index, allowed signs) requirements."""
    index: dict[tuple[tuple[int, ...], int], int] = {}
    forms: list[tuple[tuple[int, ...], int]] = []
    tests: list[list[tuple[int, tuple[int, ...]]]] = []
    for conj in f.disjuncts:
        reqs = []
        for form, rel in conj:
            key = form.primitive()
            if key not in index:
                index[key] = len(forms)
                forms.append(key)
            allowed = (0,) if rel == EQ else (1,) if rel == GT else (0, 1)
            reqs.append((index[key], allowed))
        tests.append(reqs)
    return forms, tests


def _signed_constraint(form: tuple[tuple[int, ...], int], sign: int) -> Constraint:
    coeffs, const = form
    if sign == 0:
        return coeffs, const, EQ
    if sign > 0:
        return coeffs, const, GT
    return tuple(-c for c in coeffs), -const, GT


def _int_rank(vectors: Sequence[tuple[int, ...]], n: int) -> int:
    """Rank over Q of integer row vectors, by fraction-free elimination."""
    work = [list(v) for v in vectors if any(v)]
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        a = work[rank][col]
        for i in range(rank + 1, len(work)):
            b = work[i][col]
            if b:
                work[i] = [a * x - b * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def _enumerate_cells(n: int, forms: list[tuple[tuple[int, ...], int]]) -> list[tuple[tuple[int, ...], list[Constraint], IntPoint]]:
    cells: list[tuple[tuple[int, ...], list[Constraint], IntPoint]] = [((), [], ((0,) * n, 1))]
    for coeffs, const in forms:
        new_cells = []
        for signs, cons, witness in cells:
            nums, den = witness
            value = sum(c * x for c, x in zip(coeffs, nums)) + const * den
            witness_sign = 0 if value == 0 else (1 if value > 0 else -1)
            new_cells.append((signs + (witness_sign,), cons + [_signed_constraint((coeffs, const), witness_sign)], witness))
            if witness_sign == 0:
                others = (-1, 1)
            else:
                # The cell is convex: if the form cannot vanish on it, it has
                # constant sign there and no other extension is feasible.
                zero = _signed_constraint((coeffs, const), 0)
                pt = _feasible(cons + [zero], n)
                if pt is None:
                    others = ()
                else:
                    new_cells.append((signs + (0,), cons + [zero], pt))
                    others = (-witness_sign,)
            for s in others:
                extra = _signed_constraint((coeffs, const), s)
                pt = _feasible(cons + [extra], n)
                if pt is not None:
                    new_cells.append((signs + (s,), cons + [extra], pt))
        cells = new_cells
    cells.sort(key=lambda cell: cell[0])
    return cells


def _cell_bounded(signs: tuple[int, ...], forms: list[tuple[tuple[int, ...], int]], n: int) -> bool:
    if n == 0:
        return True
    rec: list[Constraint] = []
    for s, (coeffs, _const) in zip(signs, forms):
        if s == 0:
            rec.append((coeffs, 0, EQ))
        elif s > 0:
            rec.append((coeffs, 0, GE))
        else:
            rec.append((tuple(-c for c in coeffs), 0, GE))
    for i in range(n):
        for sgn in (1, -1):
            probe = (tuple(sgn if j == i else 0 for j in range(n)), -1, GE)
            if _feasible(rec + [probe], n) is not None:
                return False
    return True


def _check_bounds(f: PolyFormula, form_count: int, max_dim: int, max_forms: int) -> None:
    if f.dim > max_dim:
        raise BoundExceededError("dimension %d exceeds bound %d" % (f.dim, max_dim))
    if form_count > max_forms:
        raise BoundExceededError("%d distinct forms exceed bound %d" % (form_count, max_forms))


def decompose(f: PolyFormula, max_dim: int = DEFAULT_MAX_DIM, max_forms: int = DEFAULT_MAX_FORMS) -> CellComplex:
    """Sign-cell decomposition of the arrangement of the formula's forms.

    Every nonempty sign vector of the arrangement contributes one cell with
    its dimension (ambient dimension minus the rank of the active equalities,
    certified by the witness point) and its boundedness (triviality of the
    recession cone, decided by exact feasibility).
    """
    forms, _tests = _distinct_forms(f)
    _check_bounds(f, len(forms), max_dim, max_forms)
    n = f.dim
    cells = []
    for signs, _cons, witness in _enumerate_cells(n, forms):
        active = [forms[i][0] for i, s in enumerate(signs) if s == 0]
        dim = n - _int_rank(active, n)
        nums, den = witness
        point = tuple(Fraction(x, den) for x in nums)
        cells.append(Cell(signs, dim, _cell_bounded(signs, forms, n), point))
    out_forms = tuple(AffineForm(coeffs, Fraction(const)) for coeffs, const in forms)
    return CellComplex(n, out_forms, tuple(cells))


def _formula_holds(signs: tuple[int, ...], tests: list[list[tuple[int, tuple[int, ...]]]]) -> bool:
    return any(all(signs[i] in allowed for i, allowed in reqs) for reqs in tests)


def _eu_impl(f: PolyFormula, max_dim: int, max_forms: int, check: bool) -> int:
    forms, tests = _distinct_forms(f)
    if check:
        _check_bounds(f, len(forms), max_dim, max_forms)
    n = f.dim
    total = 0
    for signs, _cons, _witness in _enumerate_cells(n, forms):
        if _formula_holds(signs, tests):
            active = [forms[i][0] for i, s in enumerate(signs) if s == 0]
            total += (-1) ** (n - _int_rank(active, n))
    return total


def eu(f: PolyFormula, max_dim: int = DEFAULT_MAX_DIM, max_forms: int = DEFAULT_MAX_FORMS) -> int:
    """The o-minimal Euler characteristic: sum of (-1)^dim over cells where f holds.

    A relatively open convex cell of dimension k counts as (-1)^k whether or
    not it is bounded; the value is independent of the decomposition.
    """
    return _eu_impl(f, max_dim, max_forms, check=True)


def _box_formula(f: PolyFormula, bound: Fraction) -> PolyFormula:
    n = f.dim
    box: list[tuple[AffineForm, str]] = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        box.append((AffineForm(e, bound), GE))
        box.append((AffineForm(tuple(-x for x in e), bound), GE))
    return PolyFormula(n, tuple(conj + tuple(box) for conj in f.disjuncts))


def _sweep_bound(n: int, forms: list[tuple[tuple[int, ...], int]]) -> int:
    """Upper bound on every critical box size of the family ``f cut to [-m, m]^n``.

    Treat the box size ``m`` as an extra coordinate alongside the box walls
    ``x_i = +-m``.  The combinatorics of the slice at height ``m`` (hence eu
    of the cut) can only change when the slice passes a flat of the lifted
    arrangement on which ``m`` is constant, and the ``m``-value of such a flat
    is a Cramer ratio det(B')/det(B) of integer submatrices drawn from at most
    ``n + 1`` of the lifted rows.  Since ``|det B| >= 1``, the product of the
    ``n + 1`` largest row 1-norms bounds every critical value; beyond it, eu
    of the cut is constant.  This in particular covers every vertex of the
    original arrangement (whose coordinates obey the same Cramer bound).
    """
    if n == 0:
        return 0
    norms = sorted((sum(abs(c) for c in coeffs) + abs(const) for coeffs, const in forms), reverse=True)[: n + 1]
    while len(norms) < n + 1:
        norms.append(2)  # box wall rows x_i +- m have 1-norm 2
    bound = 1
    for norm in norms:
        bound *= max(norm, 2)  # wall rows may replace small-norm form rows
    return bound


def eu_c(f: PolyFormula, max_dim: int = DEFAULT_MAX_DIM, max_forms: int = DEFAULT_MAX_FORMS) -> int:
    """The bounded Euler characteristic: the stabilized value of eu(f cut to [-M, M]^n).

    Evaluated at M0 = 1 + the largest critical box size of the cut family
    (which is at least 1 + the largest absolute coordinate of any arrangement
    vertex, and 1 when there are no critical events), then re-evaluated at
    2*M0 + 1 as a stabilization guard; a disagreement signals an internal bug.
    """
    forms, _tests = _distinct_forms(f)
    _check_bounds(f, len(forms), max_dim, max_forms)
    m0 = _sweep_bound(f.dim, forms) + 1
    first = _eu_impl(_box_formula(f, m0), max_dim, max_forms, check=False)
    second = _eu_impl(_box_formula(f, 2 * m0 + 1), max_dim, max_forms, check=False)
    if first != second:
        raise StabilizationError("eu_c failed to stabilize: %d at M0, %d at 2*M0+1" % (first, second))
    return first


# --------------------------------------------------------------------------
# JSON wire format:
# {"dim": n, "or": [{"and": [{"a": [c1..cn], "b": "p/q", "rel": ">"|">="|"="}]}]}


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def rational_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError("rational must be a string like 'p/q' or 'p'")
    return Fraction(s)


def formula_to_json(f: PolyFormula) -> dict:
    return {
        "dim": f.dim,
        "or": [
            {"and": [{"a": list(form.coeffs), "b": rational_to_str(form.constant), "rel": rel}
                     for form, rel in conj]}
            for conj in f.disjuncts
        ],
    }


def formula_from_json(doc: dict) -> PolyFormula:
    if not isinstance(doc, dict) or "dim" not in doc or "or" not in doc:
        raise ValueError("formula document must have 'dim' and 'or' keys")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ValueError("'dim' must be a nonnegative integer")
    disjuncts = []
    for clause in doc["or"]:
        conj = []
        for atom in clause.get("and", []):
            coeffs = atom.get("a")
            if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
                raise ValueError("'a' must be a list of integers")
            rel = atom.get("rel")
            if rel not in _RELS:
                raise ValueError("'rel' must be one of '=', '>', '>='")
            conj.append((AffineForm(tuple(coeffs), rational_from_str(atom.get("b", "0"))), rel))
        disjuncts.append(tuple(conj))
    return PolyFormula(dim, tuple(disjuncts))
