"""Backtracking search for longest (circularly) power-free words, and
exponents of products of factors."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional, Union

import numpy as np

from . import _kernels
from .morphisms import FactorSet
from .words import (SYMBOLS, PowerThreshold, RepetitionWitness, Word, as_word,
                    border_array)

log = logging.getLogger(__name__)

THREADS_ENV = "CIRCREP_THREADS"

RT = {2: Fraction(2), 3: Fraction(7, 4), 4: Fraction(7, 5)}
RTC_KNOWN = {2: Fraction(4), 3: Fraction(13, 4)}
RTC_CONJECTURED = {4: Fraction(5, 2), 5: Fraction(105, 46)}


def rt(k: int) -> Fraction:
    """Repetition threshold for ``k`` letters."""
    if k < 2:
        raise ValueError("the repetition threshold needs k >= 2")
    return RT.get(k, Fraction(k, k - 1))


def rtc(k: int) -> Fraction:
    """Circular repetition threshold: proven for k = 2, 3, conjectured above."""
    if k < 2:
        raise ValueError("the circular repetition threshold needs k >= 2")
    if k in RTC_KNOWN:
        return RTC_KNOWN[k]
    return RTC_CONJECTURED.get(k, Fraction(2 * k - 1, k - 1))


@dataclass(frozen=True)
class SearchConfig:
    alphabet_size: int
    threshold: PowerThreshold
    circular: bool = False
    square_bound: Optional[int] = None
    max_length: int = 1000
    symmetry_reduction: bool = True
    split_depth: int = 6

    def __post_init__(self):
        if self.max_length < 1:
            raise ValueError("max_length must be at least 1")
        if self.square_bound is not None and self.square_bound < 0:
            raise ValueError("square_bound must be non-negative")
        if not 1 <= self.alphabet_size <= len(SYMBOLS):
            raise ValueError(f"alphabet size must be in 1..{len(SYMBOLS)}")

    @property
    def compiled(self) -> bool:
        # the compiled circular test assumes exponents of at least 2
        return not self.circular or self.threshold.value >= 2

    def to_dict(self) -> dict:
        return {
            "alphabet_size": self.alphabet_size,
            "threshold": str(self.threshold.value),
            "strict": self.threshold.strict,
            "circular": self.circular,
            "square_bound": self.square_bound,
            "max_length": self.max_length,
            "symmetry_reduction": self.symmetry_reduction,
        }


@dataclass
class SearchResult:
    longest_length: int
    witness: Word
    exhausted: bool
    nodes_visited: int
    config: SearchConfig
    wall_time_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "longest_length": self.longest_length,
            "witness": self.witness.text,
            "exhausted": self.exhausted,
            "nodes_visited": self.nodes_visited,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


# -- last-position checking ---------------------------------------------------


def _kernel_args(cfg: SearchConfig) -> tuple:
    th = cfg.threshold
    return (th.value.numerator, th.value.denominator, th.strict, cfg.circular,
            cfg.square_bound or 0)


def _witness_from_kernel(text: str, n: int, code: int, out, k: int) -> RepetitionWitness:
    p, length, start, tl, vl = (int(x) for x in out[:5])
    if code == _kernels.CIRCULAR:
        factor = text[n - vl:n] + text[start:start + tl]
        return RepetitionWitness(Word._raw(factor, k), p,
                                 tuv=(start, tl, n - vl - start - tl, vl))
    return RepetitionWitness(Word._raw(text[start:start + length], k), p, position=start)


def _python_violation(text: str, n: int, cfg: SearchConfig) -> Optional[RepetitionWitness]:
    """Plain re-scan of every repetition touching position ``n-1``."""
    th, k = cfg.threshold, cfg.alphabet_size
    for start in range(n - 1, -1, -1):
        s = text[start:n]
        period = len(s) - border_array(s)[-1]
        if th.violated_by(len(s), period):
            return RepetitionWitness(Word._raw(s, k), period, position=start)
    bound = cfg.square_bound or 0
    for p in range(1, n // 2 + 1):
        if 2 * p < bound and text[n - 2 * p:n - p] == text[n - p:n]:
            return RepetitionWitness(Word._raw(text[n - 2 * p:n], k), p, position=n - 2 * p)
    if not cfg.circular:
        return None
    for vl in range(1, n):
        v = text[n - vl:n]
        for j in range(n - vl):
            x = v + text[j:n - vl]
            b = border_array(x)
            for length in range(vl + 1, len(x) + 1):
                period = length - b[length - 1]
                if th.violated_by(length, period):
                    tl = length - vl
                    return RepetitionWitness(Word._raw(x[:length], k), period,
                                             tuv=(j, tl, n - vl - j - tl, vl))
    return None


def incremental_violation_check(w, new_len: int, cfg: SearchConfig) -> Optional[RepetitionWitness]:
    """Violation created by the symbol at position ``new_len - 1``, if any.

    Assumes ``w[:new_len-1]`` already satisfies ``cfg``.  Only repetitions
    touching the last position are examined: ordinary factors ending there,
    short squares ending there, and circular factors ``v t`` with ``v`` a
    suffix of ``w[:new_len]``.
    """
    w = as_word(w)
    text = w.text[:new_len]
    if not text:
        return None
    if not cfg.compiled:
        return _python_violation(text, len(text), cfg)
    arr = np.frombuffer(bytes(SYMBOLS.index(c) for c in text), dtype=np.int8)
    out = np.zeros(6, dtype=np.int64)
    code = _kernels.new_violation(arr, len(text), 0, *_kernel_args(cfg), out)
    if code == _kernels.NONE:
        return None
    return _witness_from_kernel(text, len(text), code, out, cfg.alphabet_size)


def window_violation(w, window: int, th: PowerThreshold, circular: bool = True) -> Optional[RepetitionWitness]:
    """First violation of ``th`` inside some length-``window`` window of ``w``.

    Circular factors count when ``t u v`` fits in the window.  Requires a
    threshold of at least 2 in circular mode.
    """
    if circular and th.value < 2:
        raise ValueError("windowed circular scan needs a threshold of at least 2")
    w = as_word(w)
    arr = np.frombuffer(bytes(w), dtype=np.int8)
    out = np.zeros(6, dtype=np.int64)
    n = _kernels.windowed_scan(arr, window, th.value.numerator, th.value.denominator,
                               th.strict, circular, out)
    if n < 0:
        return None
    return _witness_from_kernel(w.text, n, int(out[5]), out, w.alphabet_size)


def find_square(w) -> Optional[RepetitionWitness]:
    """Some square factor of ``w`` (not necessarily the first), or None."""
    w = as_word(w)
    start, p = _kernels.find_square(np.frombuffer(bytes(w), dtype=np.int8))
    if start < 0:
        return None
    return RepetitionWitness(w[start:start + 2 * p], int(p), position=int(start))


# -- tree search --------------------------------------------------------------


def _letters(text: str, cfg: SearchConfig) -> str:
    """Symbols that may follow ``text``; canonical order under symmetry reduction."""
    k = cfg.alphabet_size
    if not cfg.symmetry_reduction:
        return SYMBOLS[:k]
    top = max((SYMBOLS.index(c) for c in text), default=-1)
    return SYMBOLS[:min(k, top + 2)]


def _shallow(cfg: SearchConfig) -> tuple:
    """Walk the tree down to ``split_depth`` in lexicographic order.

    Returns ``(seeds, nodes, best_text)``; seeds are the valid words of
    length exactly ``split_depth`` (or ``max_length`` if smaller).
    """
    k = cfg.alphabet_size
    depth = min(cfg.split_depth, cfg.max_length)
    seeds, nodes, best = [], 0, ""

    def visit(text: str) -> None:
        nonlocal nodes, best
        if text:
            nodes += 1
        if len(text) > len(best):
            best = text
        if len(text) == depth:
            seeds.append(text)
            return
        for c in _letters(text, cfg):
            nxt = text + c
            if incremental_violation_check(Word._raw(nxt, k), len(nxt), cfg) is None:
                visit(nxt)

    visit("")
    return seeds, nodes, best


def _python_dfs(seed: str, cfg: SearchConfig) -> tuple:
    max_len = cfg.max_length
    best, nodes, capped = seed, 0, False
    stack = [seed]
    while stack:
        text = stack.pop()
        if text != seed:
            nodes += 1
            if len(text) > len(best):
                best = text
        if len(text) >= max_len:
            capped = True
            continue
        for c in reversed(_letters(text, cfg)):
            nxt = text + c
            if _python_violation(nxt, len(nxt), cfg) is None:
                stack.append(nxt)
    return len(best), best, nodes, capped


def _subtree(seed: str, cfg: SearchConfig) -> tuple:
    """``(best_length, best_text, nodes, capped)`` below ``seed``."""
    if not cfg.compiled:
        return _python_dfs(seed, cfg)
    arr = np.frombuffer(bytes(SYMBOLS.index(c) for c in seed), dtype=np.int8)
    best_w = np.zeros(cfg.max_length + 1, dtype=np.int8)
    best, nodes, capped = _kernels.dfs(arr, cfg.alphabet_size, *_kernel_args(cfg),
                                       cfg.max_length, cfg.symmetry_reduction, best_w)
    text = "".join(SYMBOLS[x] for x in best_w[:best])
    return int(best), text, int(nodes), bool(capped)


def _subtree_job(args):
    return _subtree(*args)


def read_checkpoint(path: Union[str, Path]) -> tuple:
    """``(prefix, nodes, best_length, best_witness)`` from a checkpoint file."""
    fields = Path(path).read_text().split()
    if len(fields) not in (3, 4):
        raise ValueError(f"malformed checkpoint {path}")
    prefix, nodes, best_len = fields[0], int(fields[1]), int(fields[2])
    witness = fields[3] if len(fields) == 4 else ""
    if len(witness) != best_len:
        raise ValueError("checkpoint witness length disagrees with best length")
    return prefix, nodes, best_len, witness


def write_checkpoint(path: Union[str, Path], prefix: str, nodes: int, best: str) -> None:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(f"{prefix} {nodes} {len(best)} {best}\n")
    tmp.replace(path)


def _threads(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, threads)


def longest_word(cfg: SearchConfig, checkpoint: Optional[Union[str, Path]] = None,
                 resume: Optional[Union[str, Path]] = None, threads: Optional[int] = None,
                 progress: Optional[Callable[[str, int, int], None]] = None) -> SearchResult:
    """Exhaustive lexicographic search for the longest word satisfying ``cfg``.

    The tree is split at ``cfg.split_depth``; subtrees are searched in
    lexicographic order (or in parallel and merged in that order), so the
    witness is the lexicographically least longest word either way.  After
    each subtree the running totals go to ``checkpoint``; ``resume`` skips
    the subtrees a previous run finished.
    """
    t0 = time.perf_counter()
    seeds, nodes, best = _shallow(cfg)
    capped = False
    if resume is not None:
        done, nodes, _, best = read_checkpoint(resume)
        if seeds and len(done) != len(seeds[0]):
            raise ValueError("checkpoint does not match this search configuration")
        seeds = [s for s in seeds if s > done]
        log.info("resuming after %s with %d nodes", done, nodes)
    n_threads = _threads(threads)
    jobs = [(s, cfg) for s in seeds]
    if n_threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(n_threads) as pool:
            results = pool.map(_subtree_job, jobs)
            for seed, res in zip(seeds, results):
                best, nodes, capped = _merge(best, nodes, capped, res)
                _after(seed, nodes, best, checkpoint, progress)
    else:
        for seed in seeds:
            best, nodes, capped = _merge(best, nodes, capped, _subtree(seed, cfg))
            _after(seed, nodes, best, checkpoint, progress)
    elapsed = (time.perf_counter() - t0) * 1000
    return SearchResult(len(best), Word._raw(best, cfg.alphabet_size), not capped, nodes,
                        cfg, elapsed)


def _merge(best: str, nodes: int, capped: bool, res: tuple) -> tuple:
    length, text, sub_nodes, sub_capped = res
    if length > len(best):
        best = text
    return best, nodes + sub_nodes, capped or sub_capped


def _after(seed, nodes, best, checkpoint, progress) -> None:
    if checkpoint is not None:
        write_checkpoint(checkpoint, seed, nodes, best)
    if progress is not None:
        progress(seed, nodes, len(best))


# -- products of factors ------------------------------------------------------


def _factor_universe(factors, max_len: int) -> set:
    if isinstance(factors, FactorSet):
        if factors.length < max_len:
            raise ValueError(f"factor set of length {factors.length} cannot supply "
                             f"factors of length up to {max_len}")
        members = factors.members
    elif isinstance(factors, (Word, str)):
        members = [as_word(factors).text]
    else:
        members = [as_word(f).text for f in factors]
    out = set()
    for m in members:
        n = len(m)
        for i in range(n):
            for j in range(i + 1, min(n, i + max_len) + 1):
                out.add(m[i:j])
    return out


def product_exponent(factors, i: int, max_total_len: int) -> tuple:
    """Largest exponent of a product of ``i`` factors, total length capped.

    ``factors`` is a word (use all its factors), a :class:`FactorSet`
    (factors of its members) or an iterable of words.  Returns the exponent
    and the ``i`` factors of one product attaining it.

    A product of ``i`` copies of a letter has exponent ``i``, so the best
    product is at least ``i`` times as long as its period and one of its
    factors spans a whole period.  It therefore suffices to try, for every
    period ``p``, each rotation ``z`` of a length-``p`` factor and to find
    the longest prefix of ``z z z ...`` that splits into ``i`` factors.
    """
    if i < 1 or max_total_len < i:
        raise ValueError("need i >= 1 and max_total_len >= i")
    universe = _factor_universe(factors, max_total_len)
    if not universe:
        raise ValueError("no factors to multiply")
    best = (0, 1, None)
    for p in range(1, max_total_len // i + 1):
        rotations = set()
        for f in universe:
            if len(f) == p:
                rotations.update(f[r:] + f[:r] for r in range(p))
        for z in sorted(rotations):
            length, parts = _longest_periodic_product(z, i, max_total_len, universe)
            if length * best[1] > best[0] * p:
                best = (length, p, parts)
    length, p, parts = best
    k = max(SYMBOLS.index(c) for f in universe for c in f) + 1
    return Fraction(length, p), [Word._raw(x, k) for x in parts]


def _longest_periodic_product(z: str, i: int, cap: int, universe: set) -> tuple:
    p = len(z)
    periodic = z * (cap // p + 2)
    reach = []
    for phase in range(p):
        m = 0
        while m < cap and periodic[phase:phase + m + 1] in universe:
            m += 1
        reach.append(m)
    # table[j][phase]: longest run starting at phase using at most j factors
    table = [[0] * p]
    choice = []
    for _ in range(i):
        prev = table[-1]
        row, pick = [0] * p, [0] * p
        for phase in range(p):
            top, arg = prev[phase], 0
            for lam in range(1, reach[phase] + 1):
                val = lam + prev[(phase + lam) % p]
                if val > top:
                    top, arg = val, lam
            row[phase], pick[phase] = min(top, cap), arg
        table.append(row)
        choice.append(pick)
    total = table[i][0]
    parts, phase, used = [], 0, 0
    for j in range(i, 0, -1):
        lam = min(choice[j - 1][phase], total - used)
        if lam > 0:
            parts.append(periodic[used:used + lam])
        used += lam
        phase = (phase + lam) % p
    pieces = [x for x in parts if x]
    while len(pieces) < i and any(len(x) > 1 for x in pieces):
        idx = next(n for n, x in enumerate(pieces) if len(x) > 1)
        x = pieces[idx]
        pieces[idx:idx + 1] = [x[:1], x[1:]]
    return total, pieces


# -- threshold evidence -------------------------------------------------------


def threshold_evidence(k: int, th: PowerThreshold, schedule: Iterable[int],
                       max_length: int = 5000, **kwargs) -> dict:
    """Circular searches at ``th`` for each square bound in ``schedule``.

    An exhausted (finite) search shows that circular powers at ``th`` are
    unavoidable under that square bound, i.e. lower-bound evidence.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    runs = []
    for bound in schedule:
        cfg = SearchConfig(k, th, circular=True, square_bound=bound or None,
                           max_length=max_length)
        runs.append(longest_word(cfg, **kwargs))
    return {
        "k": k,
        "threshold": str(th.value),
        "strict": th.strict,
        "runs": [r.to_dict() for r in runs],
        "all_exhausted": all(r.exhausted for r in runs),
    }
