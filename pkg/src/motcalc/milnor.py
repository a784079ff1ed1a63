"""Resolution data, nearby-fiber classes, monodromy zeta, and stratum duality.

The input is embedded-resolution bookkeeping: irreducible components with
multiplicities, plus per-stratum Euler data for the intersections lying over
the point of interest.  From it we compute, all exactly:

* the nearby-fiber class  ``sum over strata I of (-1)^(|I|-1) (L-1)^(|I|-1) [cover(I)]``
  where ``cover(I)`` is the degree-``gcd(N_i, i in I)`` cyclic cover of the
  open stratum (the cover multiplies chi by its degree);
* its Euler specialization, which collapses to ``sum over components N_i chi_i``
  because ``L - 1`` dies under ``L -> 1``;
* the monodromy zeta function by A'Campo's formula
  ``prod over components (1 - t^(N_i))^(-chi_i)``, in the convention that the
  cusp expands to ``(1 - t + t^2)/(1 - t)``.

Independently of any resolution, a formal configuration ``(d, J)`` of strata
supports the symbolic duality identities: the closed/open basis change
``[closed_I] = sum_{I <= K <= J} [open_K]``, the duality route through closed
strata (each dual to itself times ``L^-(d-|K|+1)``), the direct alternating
expansion of cohomological classes of open strata, and the two tube
expansions whose agreement is the class-level duality theorem for tubes.
These are coefficient identities over free atoms, checked exhaustively on the
full Boolean lattice of subsets of ``J``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain, combinations
from typing import Iterable, Mapping, Sequence

from .exactalg import gcd_vec
from .motring import (
    Atom,
    FactoredZeta,
    MotClass,
    UVPoly,
    chi_realize,
    gm,
    l_pow,
    uv_eval_ones,
    uv_from_str,
    uv_to_str,
)


@dataclass(frozen=True)
class StratumData:
    """Euler data of one stratum over the chosen point; absent strata mean chi = 0."""

    chi: int | None = None
    epoly: UVPoly | None = None
    present: bool = True

    def __post_init__(self) -> None:
        if self.epoly is not None and self.chi is not None and uv_eval_ones(self.epoly) != self.chi:
            raise ValueError("stratum E-polynomial at u=v=1 disagrees with chi")


class ResolutionData:
    """Components with multiplicities plus per-stratum Euler data."""

    __slots__ = ("dim", "components", "strata")

    def __init__(
        self,
        dim: int,
        components: Sequence[tuple[str, int]],
        strata: Mapping[frozenset[str], StratumData] | Iterable[tuple[Iterable[str], StratumData]],
    ):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        comps = tuple((str(name), int(mult)) for name, mult in components)
        names = [name for name, _ in comps]
        if len(set(names)) != len(names):
            raise ValueError("duplicate component names")
        for name, mult in comps:
            if mult < 1:
                raise ValueError("multiplicity of %r must be >= 1" % name)
        known = set(names)
        canon: dict[frozenset[str], StratumData] = {}
        items = strata.items() if isinstance(strata, Mapping) else strata
        for key, data in items:
            key = frozenset(key)
            if not key:
                raise ValueError("stratum keys must be nonempty")
            if not key <= known:
                raise ValueError("stratum %s references undeclared components" % sorted(key))
            if key in canon:
                raise ValueError("duplicate stratum %s" % sorted(key))
            canon[key] = data
        self.dim = dim
        self.components = comps
        self.strata = canon

    def multiplicity(self, name: str) -> int:
        for n, m in self.components:
            if n == name:
                return m
        raise KeyError(name)

    def cover_degree(self, stratum: frozenset[str]) -> int:
        return gcd_vec(self.multiplicity(n) for n in stratum)

    def present_strata(self) -> list[frozenset[str]]:
        return sorted((k for k, v in self.strata.items() if v.present), key=lambda k: (len(k), sorted(k)))


def cover_atom_name(stratum: Iterable[str]) -> str:
    return "cover(%s)" % ",".join(sorted(stratum))


def stratum_atoms(r: ResolutionData, include_closed: bool = False) -> dict[str, Atom]:
    """Atom registry for the cyclic covers of the open strata of ``r``.

    The cover of stratum ``I`` has degree ``N_I = gcd(N_i, i in I)`` and Euler
    characteristic ``N_I * chi(I)`` (a degree-N etale cover multiplies chi);
    its E-polynomial is inherited from the stratum only for the trivial cover
    ``N_I = 1``.  With ``include_closed``, smooth proper closures are added as
    ``closed(...)`` atoms for duality bookkeeping.
    """
    atoms: dict[str, Atom] = {}
    for key in r.present_strata():
        data = r.strata[key]
        n_i = r.cover_degree(key)
        dim = r.dim - len(key) + 1
        atoms[cover_atom_name(key)] = Atom(
            name=cover_atom_name(key),
            dim=dim,
            chi=None if data.chi is None else n_i * data.chi,
            cover_degree=n_i,
            epoly=data.epoly if n_i == 1 else None,
        )
        if include_closed:
            closed_name = "closed(%s)" % ",".join(sorted(key))
            atoms[closed_name] = Atom(name=closed_name, dim=dim, cover_degree=n_i, proper_smooth=True)
    return atoms


def milnor_class(r: ResolutionData) -> MotClass:
    """The nearby-fiber class: alternating (L-1)-weighted sum of stratum covers.

    No localization at L is needed; the class lives in the plain equivariant
    Grothendieck ring.
    """
    total = MotClass.zero()
    for key in r.present_strata():
        k = len(key) - 1
        total = total + ((-1) ** k) * (gm() ** k) * MotClass.atom(cover_atom_name(key))
    return total


def milnor_chi(r: ResolutionData) -> int:
    """Euler specialization of the nearby-fiber class (L -> 1)."""
    for key in r.present_strata():
        if r.strata[key].chi is None:
            raise ValueError("stratum %s has no chi" % sorted(key))
    return chi_realize(milnor_class(r), stratum_atoms(r))


def acampo_zeta(r: ResolutionData) -> FactoredZeta:
    """A'Campo's monodromy zeta: product over components of (1 - t^N_i)^(-chi_i).

    Only the one-component strata contribute; with this sign convention the
    cusp gives ``(1 - t^2)^-1 (1 - t^3)^-1 (1 - t^6)``, i.e. the alternating
    characteristic-polynomial quotient for plane curves.
    """
    exponents: dict[int, int] = {}
    for key in r.present_strata():
        if len(key) != 1:
            continue
        data = r.strata[key]
        if data.chi is None:
            raise ValueError("stratum %s has no chi" % sorted(key))
        n = r.multiplicity(next(iter(key)))
        exponents[n] = exponents.get(n, 0) - data.chi
    return FactoredZeta.from_dict(exponents)


def zeta_degree_check(r: ResolutionData) -> bool:
    """deg zeta = -chi, an algebraic identity valid for arbitrary Euler data."""
    return acampo_zeta(r).degree() == -milnor_chi(r)


# ---------------------------------------------------------------------------
# Formal stratum configurations and the duality identities.


@dataclass(frozen=True)
class StratumConfig:
    """A formal family of strata: ambient dimension ``dim`` and labels ``J``."""

    dim: int
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate stratum labels")
        if not self.labels:
            raise ValueError("need at least one stratum label")


def open_atom_name(stratum: Iterable[str]) -> str:
    return "open(%s)" % ",".join(sorted(stratum))


def _check_subset(config: StratumConfig, part: Iterable[str]) -> tuple[str, ...]:
    part = tuple(sorted(set(part)))
    if not part:
        raise ValueError("stratum subset must be nonempty")
    if not set(part) <= set(config.labels):
        raise ValueError("subset %s not contained in configuration labels" % (part,))
    return part


def _supersets(config: StratumConfig, base: tuple[str, ...]) -> Iterable[tuple[str, ...]]:
    rest = [x for x in config.labels if x not in base]
    for extra in chain.from_iterable(combinations(rest, k) for k in range(len(rest) + 1)):
        yield tuple(sorted(base + extra))


def nonempty_subsets(labels: Sequence[str]) -> Iterable[tuple[str, ...]]:
    for k in range(1, len(labels) + 1):
        for sub in combinations(sorted(labels), k):
            yield sub


def closed_from_open(config: StratumConfig, stratum: Iterable[str]) -> MotClass:
    """Class of a closed stratum in the open basis: sum over supersets."""
    base = _check_subset(config, stratum)
    total = MotClass.zero()
    for sup in _supersets(config, base):
        total = total + MotClass.atom(open_atom_name(sup))
    return total


def dualize_open_stratum(config: StratumConfig, stratum: Iterable[str]) -> MotClass:
    """Duality applied to an open-stratum class, via the closed-stratum basis.

    The open class is written as an alternating sum of closed strata, each
    closed stratum is self-dual up to ``L^-(d-|K|+1)``, and the result is
    expanded back in the open basis.
    """
    base = _check_subset(config, stratum)
    total = MotClass.zero()
    for sup in _supersets(config, base):
        sign = (-1) ** (len(sup) - len(base))
        twist = -(config.dim - len(sup) + 1)
        total = total + sign * l_pow(closed_from_open(config, sup), twist)
    return total


def dualize_stratum_class(config: StratumConfig, a: MotClass) -> MotClass:
    """Extend stratum duality to polynomials: L -> 1/L, each open atom through its dual."""
    from .motring import _lp_conj  # Laurent coefficients c(L) -> c(1/L)

    total = MotClass.zero()
    for mono, poly in a.terms.items():
        factor = MotClass({(): _lp_conj(poly)})
        for name in mono:
            if not (name.startswith("open(") and name.endswith(")")):
                raise ValueError("cannot dualize non-stratum atom %r" % name)
            inner = name[len("open("):-1]
            factor = factor * dualize_open_stratum(config, inner.split(","))
        total = total + factor
    return total


@lru_cache(maxsize=None)
def _cohom_vee_cached(config: StratumConfig, base: tuple[str, ...]) -> MotClass:
    total = MotClass.zero()
    for sup in _supersets(config, base):
        k = len(sup) - len(base)
        total = total + ((-1) ** k) * (gm() ** k) * MotClass.atom(open_atom_name(sup))
    return total


def cohom_vee_class(config: StratumConfig, stratum: Iterable[str]) -> MotClass:
    """Cohomological class of an open stratum, in homological (variety) coordinates.

    The alternating expansion ``sum over supersets L of (-1)^(|L|-|I|)
    (L-1)^(|L|-|I|) [open_L]``; the Tate twists of the motivic statement
    cancel against atom dimensions in these coordinates.
    """
    return _cohom_vee_cached(config, _check_subset(config, stratum))


def check_stratum_duality(config: StratumConfig, max_size: int = 6) -> bool:
    """Two-route agreement: the direct cohomological expansion of every open
    stratum equals its closed-basis dualization, up to the stated twist."""
    if len(config.labels) > max_size:
        raise ValueError("configuration size %d exceeds bound %d" % (len(config.labels), max_size))
    d = config.dim
    for base in nonempty_subsets(config.labels):
        routed = l_pow(dualize_open_stratum(config, base), d - len(base) + 1)
        if cohom_vee_class(config, base) != routed:
            return False
    return True


def tube_chi_class(config: StratumConfig, jprime: Iterable[str]) -> MotClass:
    """Class of the tube over the union of the ``jprime`` components.

    Inclusion-exclusion over all strata meeting ``jprime``: each stratum ``I``
    contributes ``(-1)^(|I|-1) (L-1)^(|I|-1) [open_I]`` in variety-class
    coordinates (the annulus factors each contribute ``L-1``; twists cancel).
    """
    chosen = set(_check_subset(config, jprime))
    total = MotClass.zero()
    for sub in nonempty_subsets(config.labels):
        if not chosen & set(sub):
            continue
        k = len(sub) - 1
        total = total + ((-1) ** k) * (gm() ** k) * MotClass.atom(open_atom_name(sub))
    return total


def tube_cohom_class(config: StratumConfig, jprime: Iterable[str]) -> MotClass:
    """Cohomological class of the same tube, assembled from the pieces over ``jprime``.

    ``sum over nonempty I <= jprime of (-1)^(|I|-1) cohom_vee(I) * (-(L-1))^(|I|-1)``,
    the last factor being the dual class of the annulus power.
    """
    chosen = _check_subset(config, jprime)
    minus_gm = -1 * gm()
    total = MotClass.zero()
    for sub in nonempty_subsets(chosen):
        k = len(sub) - 1
        total = total + ((-1) ** k) * cohom_vee_class(config, sub) * (minus_gm ** k)
    return total


def check_tube_duality(config: StratumConfig, jprime: Iterable[str], max_size: int = 6) -> bool:
    """Class-level tube duality; coefficientwise it is the inclusion-exclusion
    identity ``sum over nonempty I <= L n J' of (-1)^|I| = -1``."""
    if len(config.labels) > max_size:
        raise ValueError("configuration size %d exceeds bound %d" % (len(config.labels), max_size))
    return tube_chi_class(config, jprime) == tube_cohom_class(config, jprime)


def stratum_duality_sweep(max_size: int = 5, max_dim: int = 6) -> tuple[bool, int]:
    """Exhaustively check the stratum duality for |J| <= max_size, 0 <= d <= max_dim."""
    checked = 0
    for size in range(1, max_size + 1):
        labels = tuple(str(i + 1) for i in range(size))
        for d in range(max_dim + 1):
            if not check_stratum_duality(StratumConfig(d, labels), max_size=max_size):
                return False, checked
            checked += 1
    return True, checked


def tube_duality_sweep(max_size: int = 5, max_dim: int = 6) -> tuple[bool, int]:
    """Exhaustively check tube duality for all nonempty J' <= J, |J| <= max_size."""
    checked = 0
    for size in range(1, max_size + 1):
        labels = tuple(str(i + 1) for i in range(size))
        for d in range(max_dim + 1):
            config = StratumConfig(d, labels)
            for jprime in nonempty_subsets(labels):
                if not check_tube_duality(config, jprime, max_size=max_size):
                    return False, checked
                checked += 1
    return True, checked


# ---------------------------------------------------------------------------
# Wire format.
# {"dim": 2, "components": [{"name": "E1", "N": 2}, ...],
#  "strata": [{"on": ["E1"], "chi": 1}, ...]}


def resolution_to_json(r: ResolutionData) -> dict:
    strata = []
    for key in sorted(r.strata, key=lambda k: (len(k), sorted(k))):
        data = r.strata[key]
        entry: dict = {"on": sorted(key)}
        if data.chi is not None:
            entry["chi"] = data.chi
        if data.epoly is not None:
            entry["epoly"] = uv_to_str(data.epoly)
        if not data.present:
            entry["present"] = False
        strata.append(entry)
    return {
        "dim": r.dim,
        "components": [{"name": n, "N": m} for n, m in r.components],
        "strata": strata,
    }


def resolution_from_json(doc: dict) -> ResolutionData:
    if not isinstance(doc, dict):
        raise ValueError("resolution document must be an object")
    for key in ("dim", "components", "strata"):
        if key not in doc:
            raise ValueError("resolution document needs %r" % key)
    if not isinstance(doc["dim"], int):
        raise ValueError("'dim' must be an integer")
    components = []
    for c in doc["components"]:
        if "name" not in c or "N" not in c:
            raise ValueError("component entries need 'name' and 'N'")
        if not isinstance(c["N"], int):
            raise ValueError("multiplicities must be integers")
        components.append((c["name"], c["N"]))
    strata = []
    for s in doc["strata"]:
        if "on" not in s or not isinstance(s["on"], list):
            raise ValueError("stratum entries need an 'on' list")
        chi = s.get("chi")
        if chi is not None and not isinstance(chi, int):
            raise ValueError("stratum chi must be an integer")
        epoly = s.get("epoly")
        strata.append((
            frozenset(s["on"]),
            StratumData(
                chi=chi,
                epoly=uv_from_str(epoly) if isinstance(epoly, str) else epoly,
                present=bool(s.get("present", True)),
            ),
        ))
    return ResolutionData(doc["dim"], components, strata)
