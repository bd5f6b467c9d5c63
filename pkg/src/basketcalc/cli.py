"""``basketcalc`` command line.

Exit codes: 0 success, 1 verification found a counterexample, 2 usage error,
3 malformed input.  Rationals are always written as ``"p/q"`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .basket import BasketError, basket_from_json
from .canonical import sequence
from .enumeration import Constraints, CounterexampleFound, recover_formal_baskets, search, verify_p12, verify_p24
from .farey import farey_level
from .fixtures import FIXTURES
from .formal import ChiVector, FormalBasket, chi_seq, k3, rr_invert
from .wps import WeightedHypersurface, chi_vector, plurigenera, wps_volume

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_basket(path: str):
    try:
        return basket_from_json(_load_json(path))
    except BasketError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_chi_vector(path: str) -> ChiVector:
    data = _load_json(path)
    try:
        return ChiVector(int(data["chi"]), tuple(int(v) for v in data["values"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f'{path}: expected {{"chi": int, "values": [chi_2, ...]}}') from exc


def _load_tail(path: str | None):
    if path is None:
        return {}
    data = _load_json(path)
    if isinstance(data, dict):
        try:
            return {int(r): int(v) for r, v in data.items()}
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}: tail keys and values must be integers") from exc
    if isinstance(data, list) and all(isinstance(v, int) for v in data):
        return data
    raise InputError(f"{path}: tail must be an object {{r: n}} or a list starting at r = 5")


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, csv_rows)


def cmd_eval(args):
    b = _load_basket(args.basket)
    fb = FormalBasket(b, args.chi, args.chi2)
    cv = chi_seq(fb, max(args.upto, 3))
    chis = [cv[m] for m in range(2, args.upto + 1)]
    payload = {
        "basket": b.as_triples(),
        "sigma": b.sigma,
        "sigma_prime": q(b.sigma_prime),
        "k3": q(k3(fb)),
        "chi_start": 2,
        "chi": chis,
    }
    rows = [["m", "chi_m"]] + [[m, v] for m, v in zip(range(2, args.upto + 1), chis)]
    return payload, rows


def cmd_canon(args):
    b = _load_basket(args.basket)
    seq = sequence(b, args.upto)
    # one JSON object per level, then a closing summary line
    payload = [{"level": n, "basket": bn.as_triples(), "epsilon": eps} for n, bn, eps in seq.steps]
    payload.append({"basket": b.as_triples(), "stabilization_level": seq.stabilization_level})
    rows = [["level", "basket", "epsilon"]] + [[n, str(bn), eps] for n, bn, eps in seq.steps]
    return payload, rows


def cmd_farey(args):
    lvl = farey_level(args.level, args.rmax)
    fr = [q(w) for w in lvl.fractions]
    return {"level": args.level, "rmax": args.rmax, "fractions": fr}, [["fraction"]] + [[w] for w in fr]


def cmd_invert(args):
    cv = _load_chi_vector(args.chi_vector)
    try:
        lad = rr_invert(cv, _load_tail(args.tail), eta=args.eta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {
        "tau": lad.tau,
        "sigma": lad.sigma,
        "deltas": {str(k): v for k, v in lad.deltas.items()},
        "n0": {str(k): v for k, v in lad.n0.items()},
        "sigma5": lad.sigma5,
        "eps": lad.eps,
        "epsilons": {str(k): v for k, v in lad.epsilons.items()},
        "R": lad.Rterm,
        "inequality": {"lhs": lad.ineq_lhs, "rhs": lad.ineq_rhs},
        "flags": lad.flags,
        "consistent": lad.consistent,
    }
    rows = [["field", "value"]]
    rows += [["tau", lad.tau], ["sigma", lad.sigma], ["sigma5", lad.sigma5], ["eps", lad.eps], ["R", lad.Rterm]]
    rows += [[f"delta{k}", v] for k, v in lad.deltas.items()]
    rows += [[f"n0_1,{k}", v] for k, v in lad.n0.items()]
    rows += [[f"eps{k}", v] for k, v in lad.epsilons.items()]
    return payload, rows


def _constraints(args) -> Constraints:
    base = {}
    if getattr(args, "constraints", None):
        data = _load_json(args.constraints)
        if not isinstance(data, dict):
            raise InputError("constraints file must hold a JSON object")
        base.update(data)
    for key in ("chi_min", "chi_max", "pm_cap"):
        v = getattr(args, key, None)
        if v is not None:
            base[key] = v
    if getattr(args, "no_gcd_lemma", False):
        base["apply_gcd_lemma"] = False
    if getattr(args, "no_monotonicity", False):
        base["apply_monotonicity"] = False
    if getattr(args, "no_eps6", False):
        base["enforce_eps6"] = False
    try:
        return Constraints.from_dict(base)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad constraints: {exc}") from exc


def _report_rows(rep):
    rows = [["chi", "P2..P13", "b12", "k3_b12", "descendants", "min_p24"]]
    for r in rep.candidates:
        rows.append([r.cv.chi, " ".join(map(str, r.cv.values)), str(r.b12), q(r.k3_b12),
                     r.descendants.count, r.descendants.min_p24])
    return rows


def cmd_enumerate(args):
    rep = search(_constraints(args), "enumerate")
    return rep.to_json(), _report_rows(rep)


def cmd_verify(args):
    c = _constraints(args)
    try:
        if args.theorem == "p12":
            rep = verify_p12(c)
        else:
            rep = verify_p24(c, fixtures=FIXTURES)
    except CounterexampleFound as exc:
        rep = exc.report
    return rep.to_json(), _report_rows(rep)


def cmd_wps(args):
    try:
        weights = tuple(int(w) for w in args.weights.split(","))
        h = WeightedHypersurface(weights, args.degree)
        vol = wps_volume(h)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    pg = plurigenera(h, args.upto)
    payload = {"weights": list(h.weights), "degree": h.degree, "amplitude": h.amplitude,
               "plurigenera": pg, "volume": q(vol)}
    if args.recover_chi is not None:
        if args.upto < 13:
            raise InputError("--recover-chi needs --upto 13 or more")
        found = recover_formal_baskets(chi_vector(h, args.upto, args.recover_chi))
        payload["recovered"] = [{"basket": f.basket.as_triples(), "k3": q(k3(f))} for f in found]
    rows = [["m", "P_m"]] + [[m, v] for m, v in enumerate(pg, start=1)]
    return payload, rows


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="basketcalc", description="Exact basket arithmetic for 3-fold plurigenera.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="sigma, sigma', K^3 and chi_m of a formal basket")
    s.add_argument("--basket", required=True)
    s.add_argument("--chi", type=int, required=True)
    s.add_argument("--chi2", type=int, default=0)
    s.add_argument("--upto", type=int, default=24)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("canon", parents=[common], help="canonical sequence of prime unpackings")
    s.add_argument("--basket", required=True)
    s.add_argument("--upto", type=int, default=12)
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("farey", parents=[common], help="materialized slope level")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--rmax", type=int, required=True)
    s.set_defaults(func=cmd_farey)

    s = sub.add_parser("invert", parents=[common], help="basket data from chi, chi_2..chi_13")
    s.add_argument("--chi-vector", required=True)
    s.add_argument("--tail")
    s.add_argument("--eta", type=int, default=0)
    s.set_defaults(func=cmd_invert)

    search_opts = argparse.ArgumentParser(add_help=False)
    search_opts.add_argument("--constraints", help="JSON object of constraint fields")
    search_opts.add_argument("--chi-min", type=int)
    search_opts.add_argument("--chi-max", type=int)
    search_opts.add_argument("--pm-cap", type=int)
    search_opts.add_argument("--no-gcd-lemma", action="store_true")
    search_opts.add_argument("--no-monotonicity", action="store_true",
                             help="drop the filter P_(a+b) >= P_b whenever P_a > 0")
    search_opts.add_argument("--no-eps6", action="store_true", help="ablation: skip the level-6 identity")

    s = sub.add_parser("enumerate", parents=[common, search_opts], help="list all candidates")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common, search_opts], help="replay a bound by exhaustive search")
    s.add_argument("theorem", choices=("p12", "p24"))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("wps", parents=[common], help="plurigenera and volume of a weighted hypersurface")
    s.add_argument("--weights", required=True, help="comma separated, e.g. 4,5,6,7,23")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--upto", type=int, default=24)
    s.add_argument("--recover-chi", type=int, help="also recover formal baskets assuming this chi(O)")
    s.set_defaults(func=cmd_wps)
    return p


def _render(payload, rows, fmt: str) -> str:
    if fmt == "json" and isinstance(payload, list):
        return "".join(json.dumps(item, sort_keys=True) + "\n" for item in payload)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        payload, rows = args.func(args)
    except InputError as exc:
        print(f"basketcalc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BasketError, ValueError) as exc:
        print(f"basketcalc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = _render(payload, rows, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not payload["passed"]:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
