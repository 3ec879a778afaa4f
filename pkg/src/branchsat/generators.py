"""Seeded instance generators and corpus manifests.

Randomness comes from a counter-based SplitMix64 stream so that instances are
fully determined by the documented algorithm below, independent of any library
RNG:

* ``mix64(z)``: ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31`` (all arithmetic mod 2**64).
* The k-th output (k = 1, 2, ...) of ``Stream(seed)`` is
  ``mix64(seed + k * 0x9E3779B97F4A7C15)``.
* ``Stream.split(key)`` is ``Stream(mix64(seed + (key + 1) * 0xD1B54A32D192ED03))``.
* ``below(b)`` draws ``x``, forms ``x * b`` and returns its high 64 bits,
  redrawing while the low 64 bits fall under ``(2**64 - b) % b`` (Lemire).
* ``coin()`` is the top bit of one output.

Uniform mode, per clause: width ``widths[below(len(widths))]`` clipped to
``n``; variables by a partial Fisher-Yates shuffle of ``[1..n]`` (position ``i``
swaps with ``i + below(n - i)``); then one ``coin()`` per chosen variable,
1 meaning negative.

Degree3-adversarial mode: one ``coin()`` picks structured (1) or mixed (0);
then up to 50 attempts, each drawing one sign ``coin()`` per variable.
Structured attempts draw a heavy count ``k = 3 * between(3, n // 3)`` when
``n >= 12`` and a ``coin()`` is 1 (else ``k = 0``), shuffle ``[1..n]`` and make
the first ``k`` heavy; heavy literals fill their own slot pool four times while
their negations and every light literal (both signs, three times each) share
the second pool; the heavy pool is built first.  Mixed attempts give each
signed literal one extra slot when ``below(4) >= 2``, flipping ``below(n)``-chosen extras until the slot
count is a multiple of 3.  A pool becomes triples by ``shuffle`` and is then
repaired: while some triple repeats a variable (or, for structured pools,
repeats a literal pair), swap a random slot of the first offending triple with
a random slot of another triple (``j = below(t - 1)``, skipping the offender;
slots by ``below(3)``), at most 2000 swaps.

Reduced-fuzz mode: attempt ``a`` builds a uniform formula from
``Stream(seed).split(a)`` and reduces it; the first nonempty, conflict-free
result is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .formula import Formula
from .reducer import reduce_fixpoint

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SPLIT = 0xD1B54A32D192ED03

MODES = ("uniform", "degree3-adversarial", "reduced-fuzz")


class GenerationError(RuntimeError):
    pass


def mix64(z: int) -> int:
    z &= MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK
    z ^= z >> 31
    return z


class Stream:
    def __init__(self, seed: int):
        self.seed = seed & MASK
        self.counter = 0

    def next64(self) -> int:
        self.counter += 1
        return mix64(self.seed + self.counter * GOLDEN)

    def split(self, key: int) -> "Stream":
        return Stream(mix64(self.seed + (key + 1) * SPLIT))

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = ((1 << 64) - bound) % bound
        while True:
            prod = self.next64() * bound
            if (prod & MASK) >= threshold:
                return prod >> 64

    def coin(self) -> int:
        return self.next64() >> 63

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1):
            j = i + self.below(len(items) - i)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n: int
    m: int = 0
    widths: Tuple[int, ...] = (3,)
    mode: str = "uniform"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.widths or any(w < 1 for w in self.widths):
            raise ValueError("widths must be positive")

    def to_line(self) -> str:
        ws = ",".join(str(w) for w in self.widths)
        return f"seed={self.seed} mode={self.mode} n={self.n} m={self.m} widths={ws}"

    @classmethod
    def from_line(cls, line: str) -> "GenConfig":
        fields = dict(tok.split("=", 1) for tok in line.split())
        try:
            return cls(
                seed=int(fields["seed"]),
                n=int(fields["n"]),
                m=int(fields.get("m", 0)),
                widths=tuple(int(w) for w in fields.get("widths", "3").split(",")),
                mode=fields.get("mode", "uniform"),
            )
        except KeyError as exc:
            raise ValueError(f"manifest line missing {exc}: {line!r}") from None


def _uniform_clauses(rng: Stream, n: int, m: int, widths: Sequence[int]) -> List[List[int]]:
    out = []
    for _ in range(m):
        w = min(widths[rng.below(len(widths))], n)
        pool = list(range(1, n + 1))
        for i in range(w):
            j = i + rng.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        out.append([-v if rng.coin() else v for v in pool[:w]])
    return out


def _bad_clause(clauses: List[List[int]], strict: bool) -> Optional[int]:
    for i, c in enumerate(clauses):
        if len({abs(l) for l in c}) < len(c):
            return i
    if strict:
        seen = {}
        for i, c in enumerate(clauses):
            for a in range(len(c)):
                for b in range(a + 1, len(c)):
                    key = frozenset((c[a], c[b]))
                    if key in seen:
                        return i
                    seen[key] = i
    return None


def _fill_triples(rng: Stream, slots: List[int], strict: bool, steps: int) -> Optional[List[List[int]]]:
    rng.shuffle(slots)
    clauses = [slots[i:i + 3] for i in range(0, len(slots), 3)]
    if len(clauses) < 2:
        return None
    for _ in range(steps):
        i = _bad_clause(clauses, strict)
        if i is None:
            return clauses
        j = rng.below(len(clauses) - 1)
        j += j >= i
        p, q = rng.below(3), rng.below(3)
        clauses[i][p], clauses[j][q] = clauses[j][q], clauses[i][p]
    return None


def _adversarial_clauses(rng: Stream, n: int, attempts: int = 50, steps: int = 2000) -> List[List[int]]:
    """3-CNF whose literals are (3,3), (3,4) or (4,3).

    Half of the draws are "structured": clauses holding a (4,3)-literal hold
    only (4,3)-literals and no literal pair repeats, which is what a bad
    formula looks like.  The rest mix degree pairs freely.
    """
    if n < 3:
        raise GenerationError("degree3-adversarial needs n >= 3")
    structured = rng.coin() == 1
    for _ in range(attempts):
        signs = [-1 if rng.coin() else 1 for _ in range(n)]
        if structured:
            # fewer than 9 heavy variables cannot avoid repeated pairs among themselves
            k = 3 * rng.between(3, n // 3) if n >= 12 and rng.coin() else 0
            order = list(range(1, n + 1))
            rng.shuffle(order)
            heavy = set(order[:k])
            pool_a, pool_b = [], []
            for v in range(1, n + 1):
                lit = signs[v - 1] * v
                if v in heavy:
                    pool_a += [lit] * 4
                    pool_b += [-lit] * 3
                else:
                    pool_b += [lit] * 3 + [-lit] * 3
            part_a = _fill_triples(rng, pool_a, True, steps) if pool_a else []
            part_b = _fill_triples(rng, pool_b, True, steps)
            if part_a is not None and part_b is not None:
                return part_a + part_b
            continue
        extra = []
        for v in range(1, n + 1):
            r = rng.below(4)
            extra.append(0 if r < 2 else 1)
        while sum(extra) % 3:
            v = rng.below(n)
            extra[v] ^= 1
        slots = []
        for v in range(1, n + 1):
            lit = signs[v - 1] * v
            slots += [lit] * (3 + extra[v - 1]) + [-lit] * 3
        clauses = _fill_triples(rng, slots, False, steps)
        if clauses is not None:
            return clauses
    raise GenerationError(f"no degree-constrained 3-CNF found for n={n} after {attempts} attempts")


def generate(cfg: GenConfig, max_retries: int = 200) -> Formula:
    rng = Stream(cfg.seed)
    if cfg.mode == "uniform":
        return Formula(_uniform_clauses(rng, cfg.n, cfg.m, cfg.widths))
    if cfg.mode == "degree3-adversarial":
        return Formula(_adversarial_clauses(rng, cfg.n))
    for attempt in range(max_retries):
        sub = rng.split(attempt)
        f = Formula(_uniform_clauses(sub, cfg.n, cfg.m, cfg.widths))
        reduced, _ = reduce_fixpoint(f)
        if not reduced.is_empty() and not reduced.has_empty_clause():
            return reduced
    raise GenerationError(f"no nontrivial reduced formula after {max_retries} retries: {cfg}")


def uniform_corpus(seed: int, count: int, n_range=(3, 14), m_range=(1, 60),
                   widths=(1, 2, 3, 4, 5)) -> List[GenConfig]:
    master = Stream(seed)
    out = []
    for i in range(count):
        sub = master.split(i)
        out.append(GenConfig(
            seed=sub.next64(),
            n=sub.between(*n_range),
            m=sub.between(*m_range),
            widths=tuple(widths),
            mode="uniform",
        ))
    return out


def adversarial_corpus(seed: int, count: int, n_range=(6, 14)) -> List[GenConfig]:
    master = Stream(seed)
    out = []
    for i in range(count):
        sub = master.split(i)
        out.append(GenConfig(seed=sub.next64(), n=sub.between(*n_range), mode="degree3-adversarial"))
    return out


def fuzz_corpus(seed: int, count: int) -> List[GenConfig]:
    """Configurations for reduced-fuzz formulas with a spread of densities and widths."""
    master = Stream(seed)
    width_sets = [(3,), (2, 3), (2, 3, 4), (3, 4), (2, 3, 4, 5)]
    out = []
    for i in range(count):
        sub = master.split(i)
        n = sub.between(5, 14)
        widths = width_sets[sub.below(len(width_sets))]
        m = sub.between(3 * n, 7 * n)
        out.append(GenConfig(seed=sub.next64(), n=n, m=m, widths=widths, mode="reduced-fuzz"))
    return out


def read_manifest(text: str) -> List[GenConfig]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(GenConfig.from_line(line))
    return out


def write_manifest(configs: Sequence[GenConfig]) -> str:
    return "".join(cfg.to_line() + "\n" for cfg in configs)
