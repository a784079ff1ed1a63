"""Command-line front end: parse documents, dispatch, emit deterministic JSON.

Exit codes: 0 success, 2 parse/validation error, 3 bound exceeded,
4 stabilization-guard failure.  All output is byte-identical across runs on
identical input (sorted keys, canonical rational strings, no floats).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import hk, milnor, motring, polytope
from .exactalg import ScaledLattice, cover_lattice, gcd_vec, lattice_equal, restrict_first_zero
from .polytope import BoundExceededError, StabilizationError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_STABILIZATION = 4


def _emit(payload: dict, text: bool) -> None:
    if text:
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, separators=(",", ":"))
            sys.stdout.write("%s: %s\n" % (key, value))
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_eu(args) -> dict:
    return {"eu": polytope.eu(polytope.formula_from_json(_load_json(args.input)))}


def _cmd_euc(args) -> dict:
    return {"eu_c": polytope.eu_c(polytope.formula_from_json(_load_json(args.input)))}


def _cmd_milnor(args) -> dict:
    data = milnor.resolution_from_json(_load_json(args.input))
    if args.chi:
        return {"chi": milnor.milnor_chi(data)}
    if args.zeta:
        return {"zeta": motring.zeta_to_json(milnor.acampo_zeta(data))}
    if args.epoly:
        ep = motring.epoly_realize(milnor.milnor_class(data), milnor.stratum_atoms(data))
        return {"epoly": motring.uv_to_str(ep)}
    return {"class": motring.motclass_to_json(milnor.milnor_class(data))}


def _cmd_zeta(args) -> dict:
    data = milnor.resolution_from_json(_load_json(args.input))
    return motring.zeta_to_json(milnor.acampo_zeta(data))


def _cmd_hk_check(args) -> dict:
    payload: dict = {"isp_killed": hk.verify_isp()}
    if args.input:
        cls = hk.rvclass_from_json(_load_json(args.input))
        payload["e"] = motring.motclass_to_json(hk.realize_e(cls))
        payload["ec"] = motring.motclass_to_json(hk.realize_ec(cls))
    return payload


def _cmd_duality_check(args) -> dict:
    ok_s, n_s = milnor.stratum_duality_sweep(args.max_size, args.max_dim)
    ok_t, n_t = milnor.tube_duality_sweep(args.max_size, args.max_dim)
    return {"stratum_duality": ok_s, "stratum_configs": n_s, "tube_duality": ok_t, "tube_configs": n_t}


def _cmd_tube_check(args) -> dict:
    ok, n = milnor.tube_duality_sweep(args.max_size, args.max_dim)
    return {"tube_duality": ok, "tube_configs": n}


def _cmd_lattice_check(args) -> dict:
    n, coords = args.N, args.a
    if n < 1:
        raise ValueError("N must be a positive integer")
    restricted = restrict_first_zero(cover_lattice(n, coords))
    n_prime = gcd_vec([n, coords[0]])
    if len(coords) >= 2:
        target = cover_lattice(n_prime, coords[1:])
    else:
        target = ScaledLattice.make(1, [], 0)
    return {
        "equal": lattice_equal(restricted, target),
        "N_prime": n_prime,
        "components": gcd_vec([n, *coords]),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motcalc", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false", default=False, help="JSON output (default)")
    fmt.add_argument("--text", dest="text", action="store_true", help="plain text output")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eu", parents=[common], help="Euler characteristic of a formula document")
    p.add_argument("input")
    p.set_defaults(func=_cmd_eu)

    p = sub.add_parser("euc", parents=[common], help="bounded Euler characteristic of a formula document")
    p.add_argument("input")
    p.set_defaults(func=_cmd_euc)

    p = sub.add_parser("milnor", parents=[common], help="nearby-fiber class of resolution data")
    p.add_argument("input")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--chi", action="store_true", help="Euler specialization")
    sel.add_argument("--zeta", action="store_true", help="monodromy zeta function")
    sel.add_argument("--epoly", action="store_true", help="E-polynomial specialization")
    sel.add_argument("--class", dest="cls", action="store_true", help="full class (default)")
    p.set_defaults(func=_cmd_milnor)

    p = sub.add_parser("zeta", parents=[common], help="monodromy zeta function of resolution data")
    p.add_argument("input")
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("hk-check", parents=[common], help="verify both realizations kill the I_sp generator")
    p.add_argument("input", nargs="?", default=None, help="optional RV-class document to realize")
    p.set_defaults(func=_cmd_hk_check)

    p = sub.add_parser("duality-check", parents=[common], help="exhaustive stratum and tube duality checks")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--max-dim", type=int, default=6)
    p.set_defaults(func=_cmd_duality_check)

    p = sub.add_parser("tube-check", parents=[common], help="exhaustive tube duality check")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--max-dim", type=int, default=6)
    p.set_defaults(func=_cmd_tube_check)

    p = sub.add_parser("lattice-check", parents=[common], help="normalization-lattice restriction identity")
    p.add_argument("N", type=int)
    p.add_argument("a", type=int, nargs="+")
    p.set_defaults(func=_cmd_lattice_check)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except BoundExceededError as exc:
        _emit({"error": {"kind": "bound", "message": str(exc)}}, args.text)
        return EXIT_BOUND
    except StabilizationError as exc:
        _emit({"error": {"kind": "stabilization", "message": str(exc)}}, args.text)
        return EXIT_STABILIZATION
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": {"kind": "parse", "message": str(exc)}}, args.text)
        return EXIT_PARSE
    _emit(payload, args.text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
