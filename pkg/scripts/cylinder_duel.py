"""Tangent duel toward the critical radius and extraction of a uniformization."""

import argparse

from schmidtgame.cylinder import (
    critical_radius,
    extract_uniformization,
    greedy_duel,
    load_relation_table,
    responder_strategy,
    sample_table,
)
from schmidtgame.metric import fmt_rat, parse_rat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", default="1/2")
    ap.add_argument("--beta", default="1/2")
    ap.add_argument("--rho", default="1")
    ap.add_argument("--rounds", type=int, default=10)
    ap.add_argument("--table", help="relation table file (x cos sin per line)")
    args = ap.parse_args()
    a, b, rho = parse_rat(args.alpha), parse_rat(args.beta), parse_rat(args.rho)
    rel = load_relation_table(args.table) if args.table else sample_table()

    r = critical_radius(a, b, rho)
    print(f"critical radius {fmt_rat(r)}")
    x = rel.domain[0]
    d = greedy_duel(a, b, rho, x, rel.first(x), args.rounds)
    print("round  distance after the round  gap to r")
    for k in range(args.rounds + 1):
        print(f"{k:5d}  {fmt_rat(d[2 * k]):>24}  {float(r - d[2 * k]):.3e}")

    f = extract_uniformization(responder_strategy(rel, a, b, rho), rel.domain, a, rho)
    print("\nextracted choice per x:")
    for x, angle in f.items():
        print(f"  {fmt_rat(x)} -> {angle}  (of {len(rel.angles(x))} listed)")


if __name__ == "__main__":
    main()
