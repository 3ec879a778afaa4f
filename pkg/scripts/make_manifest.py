"""Write the bench manifest: a fixed mix of uniform, adversarial and reduced-fuzz configs.

    python scripts/make_manifest.py > benchmarks/manifest.txt
"""

import argparse
import sys

from branchsat.generators import adversarial_corpus, fuzz_corpus, uniform_corpus, write_manifest


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--uniform", type=int, default=120)
    ap.add_argument("--adversarial", type=int, default=40)
    ap.add_argument("--fuzz", type=int, default=40)
    args = ap.parse_args(argv)
    cfgs = (
        uniform_corpus(args.seed, args.uniform)
        + adversarial_corpus(args.seed + 1, args.adversarial, n_range=(9, 40))
        + fuzz_corpus(args.seed + 2, args.fuzz)
    )
    sys.stdout.write(f"# bench manifest, seed {args.seed}\n")
    sys.stdout.write(write_manifest(cfgs))


if __name__ == "__main__":
    main()
