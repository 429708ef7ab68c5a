"""Command-line front end.

    python3 -m schmidtgame play --alpha 1/4 --beta 1/2 --rho 2 --target rayq --II maxdist:0

Exit status: 0 for a certified winner, 3 for Undecided, 2 for unparseable
input, 1 for any other failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional

from .checks import format_table, run_suites
from .cylinder import (
    RationalAngle,
    build_target,
    critical_radius,
    extract_uniformization,
    greedy_duel,
    load_relation_table,
    responder_strategy,
    duel_inward,
)
from .dense import enumerate_rationals, parse_dense
from .game import GameParams, Outcome, Variant, play
from .metric import Ball, fmt_rat, origin, parse_point, parse_rat, parse_space
from .reductions import (
    build_gstar,
    gstar_to_real_I,
    gstar_trace_lines,
    halving_sigma_star,
    IMove,
    line_cover,
    simplify_non_tangent,
    simplify_on_line,
)
from .sampling import RandomPlayer
from .strategies import (
    AvoidEnumeration,
    AxisAnchor,
    RoundContext,
    SimpleStrategy,
    concentric,
    constant_rounds,
    maximize_distance_from,
    minimize_distance_from,
    strategy_from_doc,
    strategy_to_doc,
    tangent_toward,
    validate_simple,
)
from .targets import parse_target
from .transfer import TransferParams, epsilon, pick_rho_prime, rho_prime_bounds, transfer_I, transfer_II

log = logging.getLogger("schmidtgame")

EXIT_DECIDED, EXIT_ERROR, EXIT_PARSE, EXIT_UNDECIDED = 0, 1, 2, 3


class FieldError(Exception):
    def __init__(self, field: str, msg: str):
        super().__init__(f"{field}: {msg}")
        self.field = field


def _field(name, fn, value):
    try:
        return fn(value)
    except FieldError:
        raise
    except Exception as exc:  # noqa: BLE001 - re-raised with the field name
        raise FieldError(name, str(exc)) from exc


def exit_code(outcome: Outcome) -> int:
    return EXIT_DECIDED if outcome.decided else EXIT_UNDECIDED


# -- descriptors -----------------------------------------------------------------------


def parse_strategy(desc: str, params: GameParams, space, player: str, rel_loader=None):
    """``kind[:arg][@center]``; the ``@center`` opening is required for I unless defaulted."""
    opening = None
    if "@" in desc:
        desc, at = desc.rsplit("@", 1)
        if params.rho is None:
            raise ValueError("an opening needs --rho")
        opening = Ball(parse_point(at), params.rho)
    elif player == "I":
        opening = Ball(origin(space), params.rho if params.rho is not None else Fraction(1))
    kind, _, arg = desc.partition(":")
    if kind == "maxdist":
        return maximize_distance_from(params, parse_point(arg) if arg else origin(space), opening, player)
    if kind == "mindist":
        return minimize_distance_from(params, parse_point(arg) if arg else origin(space), opening, player)
    if kind == "maxaxis":
        return maximize_distance_from(params, AxisAnchor(), opening, player)
    if kind == "minaxis":
        return minimize_distance_from(params, AxisAnchor(), opening, player)
    if kind == "tangent":
        d = parse_point(arg if arg.startswith("[") else f"[{arg}]")
        return tangent_toward(params, d, opening, player)
    if kind == "concentric":
        return concentric(params, opening, player)
    if kind == "avoid":
        if player != "I":
            raise ValueError("avoid is a strategy for I")
        return AvoidEnumeration(params, enumerate_rationals(-1, 1), opening)
    if kind == "random":
        seed = int(arg) if arg else 0
        return RandomPlayer(params, seed, opening if player == "I" else None, space=space, player=player)
    if kind == "responder":
        if rel_loader is None or player != "II":
            raise ValueError("responder is II's strategy and needs a relation table")
        rel = rel_loader(arg)
        return responder_strategy(rel, params.alpha, params.beta, params.rho)
    if kind == "simple":
        with open(arg) as fh:
            return strategy_from_doc(fh.read())
    raise ValueError(f"unknown strategy {desc!r}")


def _params(ns) -> GameParams:
    alpha = _field("alpha", parse_rat, ns.alpha)
    beta = _field("beta", parse_rat, ns.beta)
    rho = None if ns.rho is None else _field("rho", parse_rat, ns.rho)
    variant = _field("variant", Variant, ns.variant)
    return _field("params", lambda _: GameParams(alpha, beta, rho, variant), None)


def _target(ns, params):
    def loader(path):
        return build_target(load_relation_table(path), params.alpha, params.beta, params.rho)

    return _field("target", lambda t: parse_target(t, loader=loader), ns.target)


def _write(path: Optional[str], text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def describe(outcome: Outcome) -> str:
    c = outcome.certificate
    parts = [f"outcome {outcome.verdict} depth {outcome.depth}"]
    if c is not None:
        parts.append(c.kind)
        if c.ball is not None:
            parts.append(str(c.ball))
        if c.point is not None:
            parts.append(f"point {c.point}")
        if c.query:
            parts.append(c.query)
        if c.detail:
            parts.append(c.detail)
    return " ".join(parts)


# -- subcommands -----------------------------------------------------------------------


def cmd_play(ns) -> int:
    params = _params(ns)
    space = _field("space", parse_space, ns.space)
    target = _target(ns, params)
    rel_loader = load_relation_table
    I = _field("I", lambda d: parse_strategy(d, params, space, "I", rel_loader), ns.I or f"random:{ns.seed}")
    II = _field("II", lambda d: parse_strategy(d, params, space, "II", rel_loader), ns.II or f"random:{ns.seed + 1}")
    trace, outcome = play(params, I, II, target, ns.depth)
    _write(ns.out, trace.dumps())
    print(describe(outcome), file=sys.stderr if ns.out in (None, "-") else sys.stdout)
    return exit_code(outcome)


def cmd_transfer(ns) -> int:
    a = _field("alpha", parse_rat, ns.alpha)
    b = _field("beta", parse_rat, ns.beta)
    ap = _field("alpha-p", parse_rat, ns.alpha_p)
    bp = _field("beta-p", parse_rat, ns.beta_p)
    rho = _field("rho", parse_rat, ns.rho)
    rho_p = None if ns.rho_p is None else _field("rho-p", parse_rat, ns.rho_p)
    dense = _field("dense", parse_dense, ns.dense)
    bounds = _field("params", lambda _: rho_prime_bounds(a, b, ap, bp, rho), None)
    if rho_p is None:
        rho_p = pick_rho_prime(bounds, a, b)
    tp = _field("params", lambda _: TransferParams(a, b, ap, bp, rho, rho_p, dense), None)
    print(f"bounds ({fmt_rat(bounds[0])}, {fmt_rat(bounds[1])})")
    print(f"rho' {fmt_rat(rho_p)}")
    for n in range(ns.show_eps):
        print(f"eps_{n} {fmt_rat(epsilon(n, a, b, ap, bp, rho, rho_p))}")
    space = ("line",)
    if ns.mode == "II":
        real = GameParams(a, b, rho)
        shadow = GameParams(ap, bp, rho_p)
        tau = _field("inner", lambda d: parse_strategy(d, shadow, space, "II"), ns.inner or "tangent:-1")
        strat = transfer_II(tau, tp)
        I = _field("opponent", lambda d: parse_strategy(d, real, space, "I"), ns.opponent or f"random:{ns.seed}")
        trace, outcome = play(real, I, strat, _target(ns, real), ns.depth)
    else:
        shadow = GameParams(a, b, rho_p)
        sigma = _field("inner", lambda d: parse_strategy(d, shadow, space, "I"), ns.inner or "tangent:1")
        strat = transfer_I(sigma, TransferParams(a, b, ap, bp, None, None, dense))
        real = strat.real_params
        II = _field("opponent", lambda d: parse_strategy(d, real, space, "II"), ns.opponent or f"random:{ns.seed}")
        trace, outcome = play(real, strat, II, _target(ns, real), ns.depth)
    pos = trace.position()
    sh = strat.shadow_run(pos) if pos.turn else None
    lines = []
    for t, ball in enumerate(pos.balls):
        sb = sh.balls[t]
        lines.append(json.dumps({
            "turn": t,
            "real_center": str(ball.center),
            "real_radius": fmt_rat(ball.radius),
            "shadow_center": str(sb.center),
            "shadow_radius": fmt_rat(sb.radius),
        }))
    _write(ns.out, "\n".join(lines) + "\n" if lines else "")
    print(describe(outcome))
    return exit_code(outcome)


def cmd_simplify(ns) -> int:
    params = _params(ns)
    sigma = _field("strategy", lambda d: parse_strategy(d, params, ("line",), "II"), ns.strategy)
    lo, hi = _field("probe", lambda s: tuple(parse_rat(v) for v in s.split(",")), ns.probe)
    if params.variant is Variant.NON_TANGENT:
        cover = line_cover(sigma, params, (lo, hi), max_cells=ns.max_cells)
        one = simplify_non_tangent(sigma, params, cover)
    else:
        one = simplify_on_line(sigma, params, (lo, hi), max_cells=ns.max_cells)
    doc = strategy_to_doc(SimpleStrategy(constant_rounds(one), player="II"))
    _write(ns.out, doc + "\n")
    report = validate_simple(one, params, RoundContext(0))
    print(f"{len(one)} cells; validate: {report}")
    return EXIT_DECIDED if report.ok else EXIT_ERROR


def cmd_cylinder(ns) -> int:
    a = _field("alpha", parse_rat, ns.alpha)
    b = _field("beta", parse_rat, ns.beta)
    rho = _field("rho", parse_rat, ns.rho)
    r = critical_radius(a, b, rho)
    print(f"critical radius {fmt_rat(r)}")
    if ns.mode == "duel":
        if ns.table:
            rel = _field("table", load_relation_table, ns.table)
            x, angle = rel.rows[0]
        else:
            x, angle = Fraction(0), RationalAngle(Fraction(3, 5), Fraction(4, 5))
        d = greedy_duel(a, b, rho, x, angle, ns.depth)
        print("round distance closed_form")
        for k in range(ns.depth + 1):
            print(f"{k} {fmt_rat(d[2 * k])} {fmt_rat(r * (1 - (a * b) ** k))}")
        return EXIT_DECIDED
    if not ns.table:
        raise FieldError("table", "required for this mode")
    rel = _field("table", load_relation_table, ns.table)
    tau = responder_strategy(rel, a, b, rho)
    if ns.mode == "extract":
        f = extract_uniformization(tau, rel.domain, a, rho)
        for x, ang in f.items():
            print(f"{fmt_rat(x)} {fmt_rat(ang.cos)} {fmt_rat(ang.sin)}")
        return EXIT_DECIDED if all((x, ang) in rel for x, ang in f.items()) else EXIT_ERROR
    # verify: duel certificates and legality against random continuations
    target = build_target(rel, a, b, rho)
    params = GameParams(a, b, rho)
    ok = True
    for x in rel.domain:
        ang = rel.first(x)
        _, out = play(params, duel_inward(a, b, rho, x, ang), tau, target, ns.depth)
        good = out.verdict == "WinII"
        ok &= good
        print(f"x={fmt_rat(x)} duel: {describe(out)}")
    for seed in range(ns.runs):
        I = RandomPlayer(params, seed, Ball(parse_point(f"[{fmt_rat(rel.domain[0])},0,0]"), rho), space=("euclid", 3))
        _, out = play(params, I, tau, target, ns.depth)
        if out.verdict == "WinI":
            ok = False
            print(f"seed {seed}: {describe(out)}")
    print("verify " + ("PASS" if ok else "FAIL"))
    return EXIT_DECIDED if ok else EXIT_ERROR


def cmd_gstar(ns) -> int:
    params = _params(ns)
    if params.rho is None:
        raise FieldError("rho", "G* needs a fixed opening radius")
    opening = Ball(_field("center", parse_point, ns.center), params.rho)
    star = halving_sigma_star(params, opening)
    sigma = gstar_to_real_I(star, params)
    II = RandomPlayer(params, ns.seed)
    trace, outcome = play(params, sigma, II, _target(ns, params), ns.depth)
    history: list = []
    game = build_gstar(params)
    for rec in sigma.align(trace.position()):
        mv = IMove(rec.ball, rec.oneround)
        chk = game.check_I(history, mv)
        if not chk.ok:
            print(f"G* check failed for I: {chk.reason}", file=sys.stderr)
            return EXIT_ERROR
        history.append(mv)
        if rec.index is not None:
            chk = game.check_II(history, rec.index)
            if not chk.ok:
                print(f"G* check failed for II: {chk.reason}", file=sys.stderr)
                return EXIT_ERROR
            history.append(rec.index)
    _write(ns.out, "\n".join(gstar_trace_lines(history)) + "\n")
    print(describe(outcome), file=sys.stderr if ns.out in (None, "-") else sys.stdout)
    return exit_code(outcome)


def cmd_verify(ns) -> int:
    results = run_suites(ns.seed, ns.suite or None)
    print(format_table(results))
    return EXIT_DECIDED if all(r.ok for r in results) else EXIT_ERROR


# -- argument parsing ------------------------------------------------------------------


def _game_flags(p, rho_required=False):
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--rho", required=rho_required)
    p.add_argument("--variant", default="schmidt", help="schmidt | non-tangent | banach-mazur")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="schmidtgame", description=__doc__.splitlines()[0] if __doc__ else None)
    ap.add_argument("--config", help="file of 'key = value' lines mirroring the flags")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("play", help="play two strategies and adjudicate")
    _game_flags(p)
    p.add_argument("--space", default="line")
    p.add_argument("--target", default="unknown")
    p.add_argument("--I", dest="I", help="strategy descriptor for I, e.g. concentric@0")
    p.add_argument("--II", dest="II", help="strategy descriptor for II, e.g. maxdist:0")
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("transfer", help="run a transferred strategy with its shadow rational run")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--alpha-p", dest="alpha_p", required=True)
    p.add_argument("--beta-p", dest="beta_p", required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--rho-p", dest="rho_p")
    p.add_argument("--mode", choices=["II", "I"], default="II")
    p.add_argument("--inner", help="rational-game strategy descriptor")
    p.add_argument("--opponent", help="real-game opponent descriptor")
    p.add_argument("--dense", default="Q")
    p.add_argument("--target", default="unknown")
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--show-eps", dest="show_eps", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_transfer)

    p = sub.add_parser("simplify", help="simplify a one-round strategy on the line")
    _game_flags(p, rho_required=True)
    p.add_argument("--strategy", default="concentric")
    p.add_argument("--probe", default="0,1")
    p.add_argument("--max-cells", dest="max_cells", type=int, default=10_000)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_simplify)

    p = sub.add_parser("cylinder", help="critical radius, tangent duel, uniformization extraction")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--mode", choices=["duel", "extract", "verify"], default="duel")
    p.add_argument("--table")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--runs", type=int, default=20)
    p.set_defaults(fn=cmd_cylinder)

    p = sub.add_parser("gstar", help="play a G* strategy for I in the real game and emit the G* trace")
    _game_flags(p, rho_required=True)
    p.add_argument("--center", default="0")
    p.add_argument("--target", default="unknown")
    p.add_argument("--depth", type=int, default=13)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gstar)

    p = sub.add_parser("verify", help="run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", action="append")
    p.set_defaults(fn=cmd_verify)
    return ap


def read_config(path: str) -> list[str]:
    """``key = value`` lines -> ``--key value`` arguments; '#' starts a comment."""
    args = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise FieldError("config", f"line {lineno}: expected 'key = value'")
            k, v = (x.strip() for x in s.split("=", 1))
            args += [f"--{k}", v]
    return args


def _splice_config(argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return argv
    extra = read_config(known.config)
    # subcommand first, then file values, then explicit flags (which win)
    cmds = {"play", "transfer", "simplify", "cylinder", "gstar", "verify"}
    for i, a in enumerate(rest):
        if a in cmds:
            return rest[: i + 1] + extra + rest[i + 1:]
    return rest + extra


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _splice_config(argv)
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_PARSE
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return ns.fn(ns)
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - module errors surface verbatim
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
