"""Command-line front end: ``qgames <command>``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import acceptance
from .classical import (
    BimatrixGame,
    ce_polytope_optimize,
    distribution_from_flat,
    expected_payoffs,
    is_correlated_equilibrium,
    obedience_gains,
    pure_nash_equilibria,
    total_payoff_weights,
)
from .equilibrium import DEFAULT_SEED, ThetaProfile, classical_feasible, optimize_theta, verify_equilibrium
from .gamefile import GameFileError, distribution_field, game_from_dict
from .private_info import PrivateInfoGame, associated_game
from .scenarios import (
    REGIMES,
    AirlineParameters,
    airline,
    airline_classical_equilibrium,
    cats_dogs,
    ce_ceiling,
    coin_chart,
    welfare_report,
)


class UsageError(Exception):
    pass


def _plain(v):
    """JSON-friendly copy: Fractions and numpy scalars become floats, tuples lists."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    return float(v)


def _flatten(doc, prefix=""):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, list) and any(isinstance(x, (dict, list)) for x in doc):
        for i, v in enumerate(doc):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, doc


def _show(v) -> str:
    if isinstance(v, float):
        return f"{v:.7g}"
    if isinstance(v, list):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    return str(v)


def emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    doc = _plain(doc)
    if fmt == "json":
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(doc):
            w.writerow([k, json.dumps(v) if isinstance(v, list) else v])
    else:
        rows = list(_flatten(doc))
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            out.write(f"{k.ljust(width)}  {_show(v)}\n")


# -- commands ------------------------------------------------------------------

def cmd_chsh(args) -> tuple:
    theta = math.pi / 8 if args.theta is None else args.theta
    chart = coin_chart(theta)
    rows = {
        f"{a}/{b}": {"HH": d.p_hh, "HT": d.p_ht, "TH": d.p_th, "TT": d.p_tt, "disagree": d.disagreement}
        for (a, b), d in chart.items()
    }
    # chain A-S-B-T-A: A, B are player one's cat and dog coins, S, T player two's
    quad = [chart[k].disagreement for k in (("cat", "dog"), ("dog", "dog"), ("dog", "cat"), ("cat", "cat"))]
    lhs, rhs = quad[3], sum(quad[:3])
    doc = {
        "theta": theta,
        "chart": rows,
        "chain_inequality": {
            "end_to_end": lhs,
            "sum_of_links": rhs,
            "violated": not classical_feasible(quad),
        },
    }
    return doc, 0


def cmd_cats_dogs(args) -> tuple:
    scen = cats_dogs()
    g_sharp = associated_game(scen.game)
    ceiling = max(cell[0] for _, _, cell in g_sharp.cells())
    if args.theta is None:
        theta = optimize_theta(scen.structure, scen.game).theta
    else:
        theta = args.theta
    report = verify_equilibrium(scen.structure, ThetaProfile(theta), scen.game, seed=args.seed)
    doc = {
        "classical_ceiling": ceiling,
        "theta_star": theta,
        "value": report.values[0],
        "verdict": report.verdict,
        "deviations": [r.to_dict() for r in report.rows],
    }
    return doc, 0 if report.verdict else 1


def _parse_params(text):
    if text is None:
        return AirlineParameters()
    try:
        return AirlineParameters.parse(text)
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError(f"--params: {err}") from None


def cmd_airline(args) -> tuple:
    params = _parse_params(args.params)
    scen = airline(params)
    game = scen.game
    want = {args.report} if args.report != "all" else {"classical", "quantum", "claims", "welfare", "ce"}
    doc = {"parameters": {k: getattr(params, k) for k in ("x", "y", "L", "H", "F")}}
    status = 0
    if "classical" in want:
        try:
            eq = airline_classical_equilibrium(game)
            doc["classical"] = {"profile": list(eq.profile), "payoff_each": eq.value,
                                "producer_surplus": 2 * eq.value}
        except ValueError as err:
            doc["classical"] = {"error": str(err)}
            status = 1
    theta = args.theta
    if want & {"quantum", "claims", "welfare"} and theta is None:
        theta = optimize_theta(scen.structure, game).theta
    report = None
    if want & {"quantum", "claims"}:
        report = verify_equilibrium(scen.structure, ThetaProfile(theta), game, seed=args.seed)
    if "quantum" in want:
        doc["quantum"] = {
            "theta_star": theta,
            "value": report.values[0],
            "producer_surplus": report.values[0] + report.values[1],
            "verdict": report.verdict,
        }
        status = status or (0 if report.verdict else 1)
    if "claims" in want:
        doc["claims"] = {
            f"firm{r.player}_{r.signal}": {**{f"pure_{k}": v for k, v in r.pure.items()},
                                            "quantum": r.equilibrium, "best_unitary_found": r.best_unitary}
            for r in report.rows
        }
    if "welfare" in want:
        doc["welfare"] = {}
        for regime in REGIMES:
            rep = welfare_report(params, regime, theta if regime == "quantum" else None)
            doc["welfare"][regime] = {k: v for k, v in rep.to_dict().items() if k != "regime"}
    if "ce" in want:
        value, dist = ce_ceiling(game)
        doc["ce"] = {"max_total_payoff": value,
                     "maximizer": {f"{a}|{b}": p for (a, b), p in dist.items() if p}}
    return doc, status


def _parse_dist(text, game: BimatrixGame):
    try:
        values = [Fraction(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--dist: cannot parse {text!r}") from None
    return _as_dist(values, game)


def _as_dist(values, game):
    try:
        return distribution_from_flat(game, values)
    except ValueError as err:
        raise UsageError(f"distribution: {err}") from None


def cmd_check_game(args) -> tuple:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise UsageError(f"{args.file}: {err.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError(f"{args.file}: line {err.lineno} column {err.colno}: {err.msg}") from None
    try:
        game = game_from_dict(raw)
        flat = distribution_field(raw) if isinstance(raw, dict) else None
    except GameFileError as err:
        raise UsageError(f"{args.file}: {err}") from None
    doc = {}
    if isinstance(game, PrivateInfoGame):
        doc["note"] = "game of private information; analysing its contingent-strategy game"
        game = associated_game(game)
    doc["strategies"] = [list(s) for s in game.strategies]
    doc["pure_nash"] = [f"{a}|{b}" for a, b in pure_nash_equilibria(game)]
    value, maximizer = ce_polytope_optimize(game, total_payoff_weights(game))
    doc["ce_max_total_payoff"] = value
    doc["ce_maximizer"] = {f"{a}|{b}": p for (a, b), p in maximizer.items() if p}
    dist = None
    if args.dist is not None:
        dist = _parse_dist(args.dist, game)
    elif flat is not None:
        dist = _as_dist(flat, game)
    status = 0
    if dist is not None:
        ok = is_correlated_equilibrium(game, dist)
        gains = obedience_gains(game, dist)
        doc["distribution"] = {
            "expected_payoffs": list(expected_payoffs(game, dist)),
            "correlated_equilibrium": ok,
            "largest_deviation_gain": max(gains.values()),
        }
        status = 0 if ok else 1
    return doc, status


def cmd_verify(args) -> tuple:
    numbers = None
    if args.only:
        try:
            numbers = sorted({int(x) for x in args.only.split(",")})
        except ValueError:
            raise UsageError(f"--only: expected comma-separated criterion numbers, got {args.only!r}") from None
        bad = [n for n in numbers if not 1 <= n <= len(acceptance.CRITERIA)]
        if bad:
            raise UsageError(f"--only: no criterion {bad[0]}")
    results = acceptance.run_all(numbers)
    if args.format == "table":
        for r in results:
            print(r.line())
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} criteria passed")
        return None, 0 if passed == len(results) else 1
    doc = {"criteria": [r.to_dict() for r in results], "all_passed": all(r.passed for r in results)}
    return doc, 0 if doc["all_passed"] else 1


def _theta(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("theta must be finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized deviation searches")

    parser = argparse.ArgumentParser(prog="qgames", description="Quantum-coin strategies in classical games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chsh", parents=[common], help="coin chart and the classical chain inequality")
    p.add_argument("--theta", type=_theta, help="angle of the rotation family (default π/8)")
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("cats-dogs", parents=[common], help="classical ceiling and the quantum optimum")
    p.add_argument("--theta", type=_theta, help="verify this angle instead of the optimum")
    p.set_defaults(func=cmd_cats_dogs)

    p = sub.add_parser("airline", parents=[common], help="airline pricing reports")
    p.add_argument("--report", choices=("all", "classical", "quantum", "claims", "welfare", "ce"), default="all")
    p.add_argument("--params", help="x,y,L,H,F (fractions allowed, e.g. 49,19,1,108/19,48)")
    p.add_argument("--theta", type=_theta, help="use this angle instead of the optimum")
    p.set_defaults(func=cmd_airline)

    p = sub.add_parser("check-game", parents=[common], help="Nash and correlated-equilibrium queries on a JSON game")
    p.add_argument("file")
    p.add_argument("--dist", help="row-major distribution to test, e.g. 1/8,3/8,3/8,1/8")
    p.set_defaults(func=cmd_check_game)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, status = args.func(args)
    except UsageError as err:
        print(f"qgames {args.command}: {err}", file=sys.stderr)
        return 2
    if doc is not None:
        emit(doc, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
