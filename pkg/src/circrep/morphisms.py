"""Uniform morphisms, fixed points, exact factor sets and synchronization."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .report import ClaimReport
from .words import AlphabetError, SYMBOLS, Word, as_word


class PreconditionError(ValueError):
    pass


class NotProlongableError(PreconditionError):
    pass


@dataclass(frozen=True)
class UniformMorphism:
    """A ``q``-uniform morphism given by one image per source symbol."""

    images: tuple
    source_alphabet_size: int
    target_alphabet_size: int
    name: str = ""

    def __post_init__(self):
        images = tuple(as_word(im).text if not isinstance(im, str) else im for im in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source_alphabet_size:
            raise ValueError(f"expected {self.source_alphabet_size} images, got {len(images)}")
        lengths = {len(im) for im in images}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError("images must be nonempty and all of the same length")
        allowed = set(SYMBOLS[:self.target_alphabet_size])
        for im in images:
            if not set(im) <= allowed:
                raise AlphabetError(f"image {im!r} leaves the target alphabet")

    @classmethod
    def from_images(cls, images: Sequence[str], target_alphabet_size: Optional[int] = None,
                    name: str = "") -> "UniformMorphism":
        if target_alphabet_size is None:
            target_alphabet_size = max(SYMBOLS.index(c) for im in images for c in im) + 1
        return cls(tuple(images), len(images), target_alphabet_size, name)

    @property
    def q(self) -> int:
        return len(self.images[0])

    @property
    def is_endomorphism(self) -> bool:
        return self.source_alphabet_size == self.target_alphabet_size

    def image(self, a: int) -> Word:
        return Word._raw(self.images[a], self.target_alphabet_size)

    def apply_text(self, text: str) -> str:
        images = self.images
        return "".join(images[SYMBOLS.index(c)] for c in text)

    def __call__(self, w) -> Word:
        return apply(self, w)

    def replace_symbol(self, a: int, index: int, symbol: int) -> "UniformMorphism":
        """Copy with position ``index`` of image ``a`` set to ``symbol``."""
        images = list(self.images)
        im = images[a]
        images[a] = im[:index] + SYMBOLS[symbol] + im[index + 1:]
        return UniformMorphism(tuple(images), self.source_alphabet_size,
                               self.target_alphabet_size, f"{self.name}'")

    def to_text(self) -> str:
        header = f"{self.source_alphabet_size} {self.target_alphabet_size} {self.q}"
        return "\n".join([header, *self.images]) + "\n"

    def checksum(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def apply(h: UniformMorphism, w) -> Word:
    w = as_word(w)
    if any(s >= h.source_alphabet_size for s in w):
        raise AlphabetError(f"{w} is not over the source alphabet of size {h.source_alphabet_size}")
    return Word._raw(h.apply_text(w.text), h.target_alphabet_size)


def _check_prolongable(h: UniformMorphism, a: int) -> None:
    if not h.is_endomorphism:
        raise PreconditionError("fixed points need a morphism from an alphabet into itself")
    if not 0 <= a < h.source_alphabet_size:
        raise AlphabetError(f"seed {a} outside the alphabet")
    if h.q < 2 or h.images[a][0] != SYMBOLS[a]:
        raise NotProlongableError(f"{h.name or 'morphism'} is not prolongable on {a}")


def fixed_point_prefix(h: UniformMorphism, a: int, n: int) -> Word:
    """The first ``n`` symbols of the fixed point of ``h`` starting with ``a``."""
    _check_prolongable(h, a)
    return Word._raw(_fixed_point_text(h, a, n), h.target_alphabet_size)


def _fixed_point_text(h: UniformMorphism, a: int, n: int) -> str:
    text = SYMBOLS[a]
    while len(text) < n:
        text = h.apply_text(text)
    return text[:n]


def parse_morphism(text: str, name: str = "") -> UniformMorphism:
    """Parse the ``k_source k_target q`` header plus one image per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty morphism description")
    try:
        ks, kt, q = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"bad morphism header {lines[0]!r}; expected 'k_source k_target q'")
    images = tuple(lines[1:])
    if len(images) != ks:
        raise ValueError(f"header announces {ks} images, found {len(images)}")
    if any(len(im) != q for im in images):
        raise ValueError(f"every image must have length {q}")
    return UniformMorphism(images, ks, kt, name)


# Image tables, stored as data and checked against fixed checksums on import.
_TABLES = {
    "mu": """6 3 15
012102120102012
201020121012021
012102010212010
201210212021012
102120121012021
102010212021012
""",
    "psi": """6 6 4
0435
2341
3542
3540
4134
4105
""",
    "thue-morse": """2 2 2
01
10
""",
}

_CHECKSUMS = {
    "mu": "d7b12f117ba94399e007522db3cc1d9eb523795f22121c225b4bd62e2db75600",
    "psi": "3d02e8b963432cf0e6573fb6a28d04a5dca75806aeebd5f78a000e716df8567c",
    "thue-morse": "2f96a42fc446ca0586187412f5fd9a09449b556dfae49f7624d7d5160a3e7208",
}


def _load_builtin(name: str) -> UniformMorphism:
    h = parse_morphism(_TABLES[name], name)
    if _CHECKSUMS[name] and h.checksum() != _CHECKSUMS[name]:
        raise RuntimeError(f"image table for {name} does not match its checksum")
    return h


MU = _load_builtin("mu")
PSI = _load_builtin("psi")
THUE_MORSE = _load_builtin("thue-morse")
BUILTINS = {"mu": MU, "psi": PSI, "thue-morse": THUE_MORSE}


def load_morphism(name_or_path: Union[str, Path]) -> UniformMorphism:
    """A built-in by name (``mu``, ``psi``, ``thue-morse``) or a morphism file."""
    key = str(name_or_path).lower()
    if key in BUILTINS:
        return BUILTINS[key]
    path = Path(name_or_path)
    return parse_morphism(path.read_text(), path.stem)


def table_checksums_ok() -> dict:
    """Recompute each built-in's checksum from the live objects."""
    return {name: BUILTINS[name].checksum() == _CHECKSUMS[name] for name in BUILTINS}


# -- synchronization ----------------------------------------------------------


@dataclass(frozen=True)
class SyncVerdict:
    passed: bool
    counterexample: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.passed


def is_synchronizing(h: UniformMorphism) -> SyncVerdict:
    """Every occurrence of an image inside ``h(ab)`` sits on a block boundary
    and is the image of the letter there."""
    q, images = h.q, h.images
    k = h.source_alphabet_size
    for a in range(k):
        for b in range(k):
            hab = images[a] + images[b]
            for c in range(k):
                hc = images[c]
                start = hab.find(hc)
                while start != -1:
                    ok = (start == 0 and a == c) or (start == q and b == c)
                    if not ok:
                        return SyncVerdict(False, {
                            "a": a, "b": b, "c": c,
                            "r": hab[:start], "s": hab[start + q:],
                        })
                    start = hab.find(hc, start + 1)
    return SyncVerdict(True)


def is_strongly_synchronizing(h: UniformMorphism) -> SyncVerdict:
    sync = is_synchronizing(h)
    if not sync:
        return sync
    q, images = h.q, h.images
    k = h.source_alphabet_size
    for c in range(k):
        hc = images[c]
        for a in range(k):
            for b in range(k):
                if c in (a, b):
                    continue
                for i in range(q + 1):
                    if images[a].startswith(hc[:i]) and images[b].endswith(hc[i:]):
                        return SyncVerdict(False, {
                            "a": a, "b": b, "c": c, "x": hc[:i], "y": hc[i:],
                        })
    return SyncVerdict(True)


# -- exact factor sets --------------------------------------------------------


@dataclass(frozen=True)
class FactorSet:
    """All factors of one length of an infinite word, with provenance.

    ``prefix_length`` is a prefix length of the word in which every member
    occurs, which makes membership checkable by a plain substring search.
    """

    length: int
    members: frozenset
    source: str
    seed: int
    iterations: int
    prefix_length: int
    alphabet_size: int = field(default=10, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w) -> bool:
        text = w.text if isinstance(w, Word) else w
        return text in self.members

    def words(self) -> list:
        return [Word._raw(m, self.alphabet_size) for m in sorted(self.members)]


def _windows(text: str, L: int) -> set:
    return {text[i:i + L] for i in range(len(text) - L + 1)}


def _factors_of_images(h: UniformMorphism, sources: Iterable[str], L: int) -> set:
    out: set = set()
    for g in sources:
        out |= _windows(h.apply_text(g), L)
    return out


def lift_length(h: UniformMorphism, L: int) -> int:
    """Length of source factors whose images cover every length-``L`` factor."""
    return -(-L // h.q) + 1


def factor_set(h: UniformMorphism, a: int, L: int) -> FactorSet:
    """Exact length-``L`` factors of the fixed point of ``h`` starting with ``a``.

    Starts from the factors of a prefix and closes the set under "factors of
    images of short factors": every factor of the fixed point has a first
    occurrence inside ``h(g)`` for an earlier, shorter factor ``g``, so the
    closure is exactly the factor set.  The prefix is then grown until it
    contains every member.
    """
    _check_prolongable(h, a)
    if L < 1:
        raise ValueError("factor length must be positive")
    work = max(L, lift_length(h, L), 2)
    short = lift_length(h, work)
    prefix = _fixed_point_text(h, a, work)
    members = _windows(prefix, work)
    iterations = 0
    while True:
        iterations += 1
        sources: set = set()
        for f in members:
            sources |= _windows(f, short)
        grown = members | _factors_of_images(h, sources, work)
        if grown == members:
            break
        members = grown
    if work != L:
        members = {f[i:i + L] for f in members for i in range(work - L + 1)}
    target = len(members)
    n = max(L, 1)
    text = _fixed_point_text(h, a, n)
    while len(_windows(text, L)) < target:
        n *= 2
        text = _fixed_point_text(h, a, n)
    lo, hi = L, n
    while lo < hi:
        mid = (lo + hi) // 2
        if len(_windows(text[:mid], L)) == target:
            hi = mid
        else:
            lo = mid + 1
    return FactorSet(L, frozenset(members), h.name, a, iterations, lo, h.target_alphabet_size)


def factor_set_by_iteration(h: UniformMorphism, a: int, L: int) -> FactorSet:
    """Factor set from successive iterates ``h^m(a)`` until two agree.

    This is the naive cross-check for :func:`factor_set`.
    """
    _check_prolongable(h, a)
    text = SYMBOLS[a]
    while len(text) < L:
        text = h.apply_text(text)
    members = _windows(text, L)
    m = 0
    while True:
        m += 1
        text = h.apply_text(text)
        nxt = _windows(text, L)
        if nxt == members:
            break
        members = nxt
    return FactorSet(L, frozenset(members), h.name, a, m, len(text), h.target_alphabet_size)


def image_factor_set(h: UniformMorphism, source: FactorSet, L: int) -> FactorSet:
    """Exact length-``L`` factors of ``h(x)`` where ``x`` has factor set ``source``.

    ``source`` must hold factors of length at least ``lift_length(h, L)``.
    """
    need = lift_length(h, L)
    if source.length < need:
        raise ValueError(f"need source factors of length >= {need}, got {source.length}")
    shorts = {f[i:i + need] for f in source.members for i in range(source.length - need + 1)}
    members = _factors_of_images(h, shorts, L)
    return FactorSet(L, frozenset(members), f"{h.name}({source.source})", source.seed,
                     source.iterations, source.prefix_length * h.q, h.target_alphabet_size)


def main_word_prefix(n: int) -> Word:
    """First ``n`` symbols of ``mu`` applied to the fixed point of ``psi``."""
    return Word._raw(main_word_text(n), MU.target_alphabet_size)


def main_word_text(n: int, mu: UniformMorphism = MU, psi: UniformMorphism = PSI) -> str:
    src = _fixed_point_text(psi, 0, -(-n // mu.q))
    return mu.apply_text(src)[:n]


def main_word_factor_set(L: int, mu: UniformMorphism = MU, psi: UniformMorphism = PSI) -> FactorSet:
    return image_factor_set(mu, factor_set(psi, 0, lift_length(mu, L)), L)


# -- power lifting and the technical lemma ------------------------------------


def find_short_power(members: Iterable[str], n: int, bound: int) -> Optional[tuple]:
    """First ``(z, position_in_member, member)`` with ``z^n`` inside a member
    and ``|z^n| < bound``."""
    for f in sorted(members):
        for p in range(1, (bound - 1) // n + 1):
            span = n * p
            for i in range(len(f) - span + 1):
                z = f[i:i + p]
                if f[i:i + span] == z * n:
                    return z, i, f
    return None


def lift_power_freeness(h: UniformMorphism, a: int, n: int) -> ClaimReport:
    """Check the fixed point has no ``z^n`` with ``|z^n| < 2nq``; for a
    strongly synchronizing ``h`` that rules out ``n``-th powers altogether.

    A short power found is a counterexample whatever ``h`` is.  A clean scan
    only proves anything when ``h`` is strongly synchronizing, so a non-SSM
    with a clean scan raises :class:`PreconditionError`.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    bound = 2 * n * h.q
    L = bound - 1
    fs = factor_set(h, a, L)
    hit = find_short_power(fs.members, n, bound)
    params = {"n": n, "q": h.q, "bound": bound, "factor_length": L, "seed": a}
    stats = {"factors": len(fs), "closure_iterations": fs.iterations,
             "witness_prefix_length": fs.prefix_length}
    statement = f"fixed point of {h.name or 'h'} from {a} avoids {n}-th powers"
    if hit is not None:
        z, _, member = hit
        return ClaimReport(f"lift-{h.name}-{n}", statement, False,
                           [{"power": z * n, "root": z, "inside": member}], params, stats)
    ssm = is_strongly_synchronizing(h)
    if not ssm:
        raise PreconditionError(f"{h.name or 'morphism'} is not strongly synchronizing: "
                                f"{ssm.counterexample}")
    return ClaimReport(f"lift-{h.name}-{n}", statement, True, [], params, stats,
                       [f"{n}-th-power-free: no short power and the morphism is an SSM"])


def check_technical_lemma(h: UniformMorphism, w, n: int,
                          require_synchronizing: bool = True) -> bool:
    """Brute-force the claim: if ``z^n`` is a prefix of ``h(w)`` with
    ``|z| >= q`` then ``q`` divides ``|z|`` and ``w`` has a prefix ``u^n``.

    Returns True when every such prefix found satisfies the conclusion.
    """
    if n < 2:
        raise ValueError("n must be greater than 1")
    if require_synchronizing:
        sync = is_synchronizing(h)
        if not sync:
            raise PreconditionError(f"morphism is not synchronizing: {sync.counterexample}")
    w = as_word(w)
    hw = h.apply_text(w.text)
    q = h.q
    for p in range(q, len(hw) // n + 1):
        z = hw[:p]
        if hw[:n * p] != z * n:
            continue
        if p % q:
            return False
        u = w.text[:p // q]
        if w.text[:n * len(u)] != u * n:
            return False
    return True
