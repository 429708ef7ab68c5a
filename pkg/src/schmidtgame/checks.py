"""Seeded invariant suites behind the ``verify`` subcommand."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cylinder import RationalAngle, critical_radius, greedy_duel
from .dense import enumerate_rationals
from .game import GameParams, Position, Trace, Verdict, legal_move, play, required_radius
from .metric import Ball, Line, Nesting, ball_nested, baire_ball_subset, origin
from .reductions import (
    BAIRE_PARAMS,
    baire_reduce,
    baire_unreduce,
    gstar_to_real_I,
    halving_sigma_star,
    simplify_strategy,
    matched_run,
)
from .sampling import RandomPlayer, random_legal_move
from .strategies import (
    AvoidEnumeration,
    concentric,
    maximize_distance_from,
    minimize_distance_from,
    tangent_toward,
    validate_simple,
    RoundContext,
)
from .targets import Opaque, ray_union_q, Answer, Membership
from .transfer import random_transfer_params, rho_prime_bounds, epsilon, transfer_II


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def random_run(params: GameParams, rng: random.Random, length: int, space=("line",)) -> Position:
    pos = Position()
    for _ in range(length):
        pos = pos.extend(random_legal_move(params, pos, rng, space=space))
    return pos


def _rand_params(rng: random.Random) -> GameParams:
    a = Fraction(rng.randint(1, 9), 10)
    b = Fraction(rng.randint(1, 9), 10)
    return GameParams(a, b, Fraction(rng.randint(1, 8), rng.randint(1, 4)))


def suite_nesting(rng, n=300):
    for _ in range(n):
        params = _rand_params(rng)
        pos = random_run(params, rng, 3, rng.choice([("line",), ("euclid", 2), ("euclid", 3)]))
        b1, _, b3 = pos.balls
        if ball_nested(b1, b3) is Nesting.NOT_NESTED:
            return False, f"{b1} does not contain {b3}"
    return True, f"{n} triples"


def suite_legality(rng, n=300):
    for i in range(n):
        params = _rand_params(rng)
        space = rng.choice([("line",), ("euclid", 3)])
        pos = random_run(params, rng, rng.randint(1, 6), space)
        strategies = [
            concentric(params),
            maximize_distance_from(params, origin(space)),
            minimize_distance_from(params, origin(space)),
            tangent_toward(params, (1,) + (0,) * (len(pos.last.center.coords) - 1) if space[0] == "euclid" else (1,)),
        ]
        for s in strategies:
            move = s.next(pos)
            v = legal_move(params, pos, move)
            if v is not Verdict.LEGAL:
                return False, f"{s!r} at {pos.last} -> {move}: {v.value}"
    return True, f"{n} positions x 4 strategies"


def suite_schedule(rng, n=100):
    for _ in range(n):
        params = _rand_params(rng)
        trace, _ = play(params, RandomPlayer(params, rng.randrange(10**6), Ball(Line(0), params.rho)),
                        RandomPlayer(params, rng.randrange(10**6)), Opaque(), 12)
        for t, b in enumerate(trace.balls):
            if b.radius != required_radius(params, t, params.rho):
                return False, f"turn {t}: radius {b.radius}"
        for i in range(1, len(trace.balls)):
            if ball_nested(trace.balls[i - 1], trace.balls[-1]) is Nesting.NOT_NESTED:
                return False, "enclosing balls not monotone"
    return True, f"{n} runs"


def suite_avoid(rng, rounds=32):
    params = GameParams(Fraction(1, 4), Fraction(1, 3))
    I = AvoidEnumeration(params, enumerate_rationals(-1, 1), Ball(Line(0), Fraction(1, 2)))
    II = RandomPlayer(params, rng.randrange(10**6))
    trace, _ = play(params, I, II, Opaque(), 2 * rounds + 1)
    balls = trace.balls
    for k in range(rounds):
        q = Line(I.target_point(k))
        for b in balls[2 * k + 2:]:
            if b.contains(q):
                return False, f"q_{k} = {q} inside {b}"
    return True, f"{rounds} avoidance turns"


def suite_transfer(rng, n=30):
    for _ in range(n):
        tp = random_transfer_params(rng)
        lo, hi = rho_prime_bounds(tp.alpha, tp.beta, tp.alpha_p, tp.beta_p, tp.rho)
        if not lo < hi:
            return False, f"bounds not ordered for {tp}"
        rho, rho_p = tp.resolve(tp.rho)
        for k in range(20):
            if epsilon(k, tp.alpha, tp.beta, tp.alpha_p, tp.beta_p, rho, rho_p) <= 0:
                return False, f"eps_{k} <= 0 for {tp}"
        real = GameParams(tp.alpha, tp.beta, tp.rho)
        tau = tangent_toward(GameParams(tp.alpha_p, tp.beta_p), (-1,))
        II = transfer_II(tau, tp)
        trace, out = play(real, RandomPlayer(real, rng.randrange(10**6), Ball(Line(0), tp.rho)), II, Opaque(), 12)
        if out.verdict != "Undecided":
            return False, f"transfer run ended early: {out}"
        sh = II.shadow_run(trace.position())
        for t in range(1, len(trace.balls), 2):
            if sh.balls[t].center != trace.balls[t].center:
                return False, f"turn {t}: real and shadow centers differ"
        for d2, e in zip(sh.snap_d2, sh.eps):
            if not d2 < e * e:
                return False, "snap outside eps"
    return True, f"{n} parameter draws"


def suite_simplify(rng, n=20):
    params = GameParams(Fraction(1, 2), Fraction(1, 2), Fraction(1))
    simple = simplify_strategy(concentric(params), params, (0, 1))
    s0 = simple.rounds(())
    if not validate_simple(s0, params, RoundContext(0)).ok:
        return False, "opening round fails validation"
    for _ in range(n):
        c = Fraction(rng.randrange(0, 64), 64)
        I = RandomPlayer(params, rng.randrange(10**6), Ball(Line(c), 1))
        trace, out = play(params, I, simple, Opaque(), 12)
        if out.verdict != "Undecided":
            return False, f"simplified run ended early: {out}"
        pos = trace.position()
        got = [b.center for b in pos.balls[1::2]]
        want = [b.center for b in matched_run(simple, pos)]
        if got != want[: len(got)]:
            return False, "matched run differs"
    return True, f"{n} runs"


def suite_gstar(rng, n=20):
    params = GameParams(Fraction(1, 2), Fraction(1, 2), Fraction(1))
    star = halving_sigma_star(params, Ball(Line(0), 1))
    sigma = gstar_to_real_I(star, params)
    for _ in range(n):
        trace, out = play(params, sigma, RandomPlayer(params, rng.randrange(10**6)), Opaque(), 13)
        if out.verdict != "Undecided":
            return False, f"G* run ended early: {out}"
        for rec, nxt in zip(sigma.align(trace.position()), trace.balls[2::2]):
            if not rec.oneround.cells[rec.index].contains(rec.reply.center):
                return False, "index does not name the cell of II's move"
            if rec.oneround.response(rec.index) != nxt:
                return False, "x_2k+2 != s_2k(n)"
    return True, f"{n} runs"


def suite_baire(rng, n=200):
    for _ in range(n):
        stem = tuple(rng.randint(0, 20) for _ in range(rng.randint(0, 20)))
        if baire_reduce(baire_unreduce(stem)) != stem:
            return False, f"round trip fails on {stem}"
    for _ in range(n // 10):
        pos = random_run(BAIRE_PARAMS, rng, 10, ("baire",))
        stems = [baire_reduce(b) for b in pos.balls]
        for a, b, B1, B2 in zip(stems, stems[1:], pos.balls, pos.balls[1:]):
            if len(b) != len(a) + 1 or b[:-1] != a or not baire_ball_subset(B1, B2):
                return False, f"stem {a} -> {b}"
    return True, f"{n} stems"


def suite_cylinder(rng, n=10):
    angle = RationalAngle(Fraction(3, 5), Fraction(4, 5))
    for _ in range(n):
        a = Fraction(rng.randint(1, 9), 10)
        b = Fraction(rng.randint(1, 9), 10)
        rho = Fraction(rng.randint(1, 9), rng.randint(1, 3))
        r = critical_radius(a, b, rho)
        if r <= 0:
            continue
        d = greedy_duel(a, b, rho, 0, angle, 8)
        for k in range(9):
            if d[2 * k] != r * (1 - (a * b) ** k):
                return False, f"series mismatch at k={k} for {(a, b, rho)}"
    return True, f"{n} draws"


def suite_traces(rng, n=20):
    for _ in range(n):
        params = _rand_params(rng)
        trace, _ = play(params, RandomPlayer(params, rng.randrange(10**6), Ball(Line(0), params.rho)),
                        maximize_distance_from(params, Line(0)), ray_union_q(), 10)
        if Trace.loads(trace.dumps()) != trace:
            return False, "trace round trip differs"
    return True, f"{n} traces"


def suite_targets(rng, n=300):
    t = ray_union_q()
    for _ in range(n):
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 8))
        b = Ball(Line(c), Fraction(rng.randint(1, 8), rng.randint(1, 8)))
        if t.ball_inside(b) is Answer.YES:
            for _ in range(20):
                p = Line(c + b.radius * Fraction(rng.randint(-100, 100), 100))
                if t.point_query(p) is not Membership.IN:
                    return False, f"{b} inside but {p} not in"
    return True, f"{n} balls"


SUITES: dict[str, Callable] = {
    "nesting-transitivity": suite_nesting,
    "builtin-legality": suite_legality,
    "radius-schedule": suite_schedule,
    "avoid-persistence": suite_avoid,
    "transfer-fidelity": suite_transfer,
    "simplify-matched-run": suite_simplify,
    "gstar-alignment": suite_gstar,
    "baire-stems": suite_baire,
    "cylinder-series": suite_cylinder,
    "trace-roundtrip": suite_traces,
    "target-soundness": suite_targets,
}


def run_suites(seed: int, names=None) -> list[SuiteResult]:
    out = []
    for name, fn in SUITES.items():
        if names and name not in names:
            continue
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # noqa: BLE001 - a crash is a failed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(SuiteResult(name, ok, detail, time.perf_counter() - t0))
    return out


def format_table(results) -> str:
    w = max(len(r.name) for r in results)
    lines = [f"{'suite'.ljust(w)}  result  time    detail"]
    for r in results:
        lines.append(f"{r.name.ljust(w)}  {'PASS' if r.ok else 'FAIL':6}  {r.seconds:5.2f}s  {r.detail}")
    return "\n".join(lines)
