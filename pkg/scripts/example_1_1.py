"""Both sides of the rays-plus-rationals example.

II (alpha=1/4, beta=1/2, rho=2) wins at once by maximising distance from the
origin.  In the (alpha, beta) game with beta < 1/2, I dodges the rationals of
(-1, 1) one at a time.
"""

import argparse
from fractions import Fraction

from schmidtgame.dense import enumerate_rationals
from schmidtgame.game import GameParams, play
from schmidtgame.metric import Ball, Line, fmt_rat
from schmidtgame.sampling import RandomPlayer
from schmidtgame.strategies import avoid_enumeration, concentric, maximize_distance_from
from schmidtgame.targets import Opaque, ray_union_q


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rounds", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    p = GameParams(Fraction(1, 4), Fraction(1, 2), 2)
    for c in (Fraction(0), Fraction(-7, 3), Fraction(1, 5)):
        _, out = play(p, concentric(p, Ball(Line(c), 2)), maximize_distance_from(p, Line(0)), ray_union_q(), 8)
        b = out.certificate.ball
        print(f"I opens B({fmt_rat(c)}, 2): {out.verdict} at depth {out.depth} with {b}, "
              f"near edge {fmt_rat(abs(b.center.x) - b.radius)}")

    p = GameParams(Fraction(1, 4), Fraction(1, 3))
    I = avoid_enumeration(p, enumerate_rationals(-1, 1), Ball(Line(0), Fraction(1, 2)))
    trace, _ = play(p, I, RandomPlayer(p, args.seed), Opaque(), 2 * args.rounds + 1)
    print("\nk  q_k     center of I's ball  radius     gap to q_k")
    for k in range(args.rounds):
        b = trace.balls[2 * k + 2]
        q = I.target_point(k)
        print(f"{k:<2} {fmt_rat(q):7} {float(b.center.x):+.12f}     {float(b.radius):.3e}  "
              f"{float(abs(q - b.center.x) - b.radius):.3e}")


if __name__ == "__main__":
    main()
