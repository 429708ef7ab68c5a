"""Run a rational (alpha', beta') II strategy inside the real (alpha, beta) game.

Prints the chosen rho', the snap tolerances and the real and shadow runs side
by side.
"""

import argparse

from schmidtgame.game import GameParams, play
from schmidtgame.metric import Ball, Line, fmt_rat, parse_rat
from schmidtgame.sampling import RandomPlayer
from schmidtgame.strategies import tangent_toward
from schmidtgame.targets import Opaque
from schmidtgame.transfer import TransferParams, epsilon, rho_prime_bounds, transfer_II


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", default="1/4")
    ap.add_argument("--beta", default="1/2")
    ap.add_argument("--alpha-p", dest="alpha_p", default="1/2")
    ap.add_argument("--beta-p", dest="beta_p", default="1/4")
    ap.add_argument("--rho", default="1")
    ap.add_argument("--rounds", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    a, b, a2, b2, rho = (parse_rat(v) for v in (args.alpha, args.beta, args.alpha_p, args.beta_p, args.rho))

    tp = TransferParams(a, b, a2, b2, rho)
    lo, hi = rho_prime_bounds(a, b, a2, b2, rho)
    _, rho_p = tp.resolve(rho)
    print(f"rho' window ({fmt_rat(lo)}, {fmt_rat(hi)}), picked {fmt_rat(rho_p)}")
    print("eps: " + ", ".join(fmt_rat(epsilon(n, a, b, a2, b2, rho, rho_p)) for n in range(4)))

    real = tp.real
    II = transfer_II(tangent_toward(GameParams(a2, b2), (-1,)), tp)
    trace, out = play(real, RandomPlayer(real, args.seed, Ball(Line(0), rho)), II, Opaque(), 2 * args.rounds)
    shadow = II.shadow_run(trace.position())
    print(f"\n{'turn':>4}  {'real':<34} shadow")
    for t, (x, y) in enumerate(zip(trace.balls, shadow.balls)):
        print(f"{t:4d}  {str(x):<34} {y}")
    print(out.verdict)


if __name__ == "__main__":
    main()
