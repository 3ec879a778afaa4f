"""Solve a seeded corpus against the exhaustive oracle and summarize the audits.

    python scripts/run_corpus.py --uniform 10000 --adversarial 500 --out corpus.json
"""

import argparse
import json
import sys
import time
from collections import Counter

from branchsat.generators import adversarial_corpus, generate, uniform_corpus
from branchsat.oracle import solve_exhaustive
from branchsat.search import SolverConfig, solve


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1001)
    ap.add_argument("--uniform", type=int, default=1000)
    ap.add_argument("--adversarial", type=int, default=100)
    ap.add_argument("--out", help="write the JSON summary here as well as to stdout")
    args = ap.parse_args(argv)

    cfgs = uniform_corpus(args.seed, args.uniform) + adversarial_corpus(args.seed + 1001, args.adversarial)
    tallies, mismatches, bad_models = Counter(), [], []
    totals = Counter()
    max_ratio, start = 0.0, time.perf_counter()
    for i, cfg in enumerate(cfgs):
        f = generate(cfg)
        truth = solve_exhaustive(f).status
        verdict, rep = solve(f, SolverConfig(exhaustive=True))
        if verdict.status != truth:
            mismatches.append(cfg.to_line())
        if verdict.sat and not verdict.satisfies(f.clause_list()):
            bad_models.append(cfg.to_line())
        tallies.update(rep.case_tallies)
        totals["branching_nodes"] += rep.branching_nodes
        totals["potential_violations"] += rep.potential_violations
        totals["cover_violations"] += rep.cover_violations
        totals["claim_violations"] += rep.claim_violations
        totals[verdict.status] += 1
        max_ratio = max(max_ratio, rep.potential_ratio)
        if (i + 1) % 1000 == 0:
            print(f"c {i + 1}/{len(cfgs)} done", file=sys.stderr)

    summary = {
        "instances": len(cfgs),
        "verdict_mismatches": mismatches,
        "unverified_models": bad_models,
        **dict(totals),
        "max_potential_ratio": max_ratio,
        "case_tallies": dict(sorted(tallies.items())),
        "seconds": round(time.perf_counter() - start, 1),
    }
    text = json.dumps(summary, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0 if not mismatches and not bad_models else 1


if __name__ == "__main__":
    sys.exit(main())
