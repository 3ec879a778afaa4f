"""Print branching factors for the vectors the case analysis uses, and the potential chains."""

from branchsat.analysis import DEFAULT_CONSTANTS, branching_factor, proof_chains

VECTORS = [(3, 3), (3, 4), (3, 5), (4, 4), (5, 3), (4, 3), (6, 3), (2, 2)]


def main():
    print(f"{'vector':>8}  {'factor':>9}  {'residual':>9}")
    for v in VECTORS:
        r = branching_factor(v)
        print(f"{str(v):>8}  {r.factor:9.6f}  {r.residual:9.1e}")
    k = DEFAULT_CONSTANTS
    print(f"\nc1={k.c1} c2={k.c2:.6f} base={k.base}")
    for name, lhs, rhs in proof_chains(k):
        print(f"{name:>14}: {lhs:.6f} <= {rhs:.6f}  slack {rhs - lhs:.2e}")


if __name__ == "__main__":
    main()
