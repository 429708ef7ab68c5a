"""Transfer-based dominance checks along alpha * beta = p for a few targets."""

import argparse

from schmidtgame.metric import fmt_rat, parse_rat
from schmidtgame.targets import parse_target
from schmidtgame.transfer import hyperbola_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", default="1/8")
    ap.add_argument("--targets", nargs="+", default=["rayq", "all", "compl(all)", "interval:-1,1"])
    ap.add_argument("--alphas", nargs="+", default=["1/4", "1/3", "1/2"])
    ap.add_argument("--depth", type=int, default=8)
    args = ap.parse_args()
    p = parse_rat(args.p)
    samples = [(a, p / a) for a in map(parse_rat, args.alphas) if p / a < 1]
    print("samples: " + ", ".join(f"({fmt_rat(a)},{fmt_rat(b)})" for a, b in samples))
    bad = 0
    for text in args.targets:
        rep = hyperbola_probe(parse_target(text), p, samples, depth=args.depth)
        counts = {s: rep.count(s) for s in ("recertified", "inconclusive", "violation")}
        bad += counts["violation"]
        print(f"{text:16} " + "  ".join(f"{k} {v}" for k, v in counts.items()))
        for row in rep.violations:
            print(f"  VIOLATION {row}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
