"""Search random degree-constrained formulas for a reduced witness of every case label.

Writes the smallest witness per label to tests/fixtures/cases/<label>.cnf and a
bad formula (degree3-adversarial, n around 30) to tests/fixtures/bad_n30.cnf.

    python scripts/hunt_cases.py --tries 200000
"""

import argparse
import os
import sys

from branchsat.cases import CASE_LABELS, select_branch
from branchsat.dimacs import emit_dimacs
from branchsat.formula import Formula
from branchsat.generators import GenConfig, GenerationError, Stream, generate
from branchsat.reducer import classify, reduce_fixpoint

PALETTES = [
    [(3, 3), (2, 3), (3, 2)],
    [(2, 3), (3, 2), (2, 4)],
    [(3, 3), (2, 3)],
    [(3, 3), (3, 4), (4, 3)],
    [(3, 3), (3, 4), (2, 3)],
    [(3, 3)],
    [(2, 3), (2, 4), (3, 3), (4, 2)],
]


def palette_formula(rng: Stream, n: int, palette, widths):
    slots = []
    for v in range(1, n + 1):
        a, b = palette[rng.below(len(palette))]
        lit = -v if rng.coin() else v
        slots += [lit] * a + [-lit] * b
    rng.shuffle(slots)
    clauses, i = [], 0
    while i < len(slots):
        w = widths[rng.below(len(widths))]
        clauses.append(slots[i:i + w])
        i += w
    out = []
    for c in clauses:
        lits = set(c)
        if any(-l in lits for l in lits):
            continue
        out.append(lits)
    return Formula(out)


def structured_formula(rng: Stream, n: int, widths_a, widths_b):
    """Heavy (4,3)-literals kept in their own clauses; everything else mixed."""
    k = rng.between(0, n // 2)
    pool_a, pool_b = [], []
    for v in range(1, n + 1):
        lit = -v if rng.coin() else v
        if v <= k:
            pool_a += [lit] * 4
            pool_b += [-lit] * 3
        else:
            extra = rng.below(3) == 0
            pool_b += [lit] * (3 + extra) + [-lit] * 3
    out = []
    for pool, widths in ((pool_a, widths_a), (pool_b, widths_b)):
        rng.shuffle(pool)
        i = 0
        while i < len(pool):
            w = widths[rng.below(len(widths))]
            lits = set(pool[i:i + w])
            i += w
            if not any(-l in lits for l in lits):
                out.append(lits)
    return Formula(out)


def candidates(rng: Stream, t: int):
    sub = rng.split(t)
    kind = t % 3
    width_sets = [(2, 3), (3,), (2, 3, 3), (2, 3, 4), (3, 4), (2, 2, 3)]
    if kind == 0:
        n = sub.between(4, 12)
        palette = PALETTES[sub.below(len(PALETTES))]
        widths = width_sets[sub.below(len(width_sets))]
        return palette_formula(sub, n, palette, widths)
    if kind == 1:
        n = sub.between(6, 16)
        wa = [(3,), (3, 4), (2, 3, 3)][sub.below(3)]
        wb = [(3,), (3, 3, 3, 2), (3, 3, 4), (3, 3, 3, 3, 2)][sub.below(4)]
        return structured_formula(sub, n, wa, wb)
    try:
        return generate(GenConfig(seed=sub.next64(), n=sub.between(12, 30), mode="degree3-adversarial"))
    except GenerationError:
        return Formula()


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--tries", type=int, default=100000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default=os.path.join("tests", "fixtures"))
    args = ap.parse_args(argv)

    rng = Stream(args.seed)
    best = {}
    for t in range(args.tries):
        f, _ = reduce_fixpoint(candidates(rng, t))
        if f.is_empty() or f.has_empty_clause():
            continue
        d = select_branch(f)
        if d.case not in best or f.m < best[d.case].m:
            best[d.case] = f
        if len(best) == len(CASE_LABELS) and t % 1000 == 0:
            break
    missing = [c for c in CASE_LABELS if c not in best]
    print(f"found {len(best)} labels; missing: {missing}", file=sys.stderr)

    case_dir = os.path.join(args.out, "cases")
    os.makedirs(case_dir, exist_ok=True)
    for label, f in sorted(best.items()):
        with open(os.path.join(case_dir, f"{label}.cnf"), "w") as fh:
            fh.write(emit_dimacs(f, comments=[f"reduced witness for {label}"]))

    for attempt in range(10 ** 6):
        try:
            g = generate(GenConfig(seed=args.seed * 1000003 + attempt, n=30, mode="degree3-adversarial"))
        except GenerationError:
            continue
        if classify(g) == "Bad" and any(g.degree_pair(l) == (3, 4) for l in g.literals()):
            with open(os.path.join(args.out, "bad_n30.cnf"), "w") as fh:
                fh.write(emit_dimacs(g, comments=[f"bad formula, attempt {attempt}"]))
            print(f"bad fixture after {attempt + 1} attempts", file=sys.stderr)
            break


if __name__ == "__main__":
    main()
