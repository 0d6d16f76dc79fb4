"""Exact periodicity, exponents and circular factors of finite words.

Words are immutable and stored as a string over ``0-9a-z`` so that slicing,
hashing and substring search use the fast builtin ``str`` paths.  Exponents
are :class:`fractions.Fraction` values; no float ever enters a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"
_INDEX = {c: i for i, c in enumerate(SYMBOLS)}

Rational = Fraction


class EmptyWordError(ValueError):
    pass


class AlphabetError(ValueError):
    pass


class BoundExceededError(ValueError):
    pass


class Word:
    """A finite word over the alphabet ``{0, ..., k-1}``.

    Equality and hashing only look at the symbols; ``alphabet_size`` is
    carried along as metadata.
    """

    __slots__ = ("text", "alphabet_size")

    def __init__(self, symbols: Iterable[int] = (), alphabet_size: Optional[int] = None):
        symbols = list(symbols)
        top = max(symbols, default=-1)
        if alphabet_size is None:
            alphabet_size = max(top + 1, 1)
        if alphabet_size < 1 or alphabet_size > len(SYMBOLS):
            raise AlphabetError(f"alphabet size {alphabet_size} not in 1..{len(SYMBOLS)}")
        if top >= alphabet_size or min(symbols, default=0) < 0:
            raise AlphabetError(f"symbol out of range for alphabet size {alphabet_size}")
        self.text = "".join(SYMBOLS[s] for s in symbols)
        self.alphabet_size = alphabet_size

    @classmethod
    def _raw(cls, text: str, alphabet_size: int) -> "Word":
        w = cls.__new__(cls)
        w.text = text
        w.alphabet_size = alphabet_size
        return w

    @classmethod
    def parse(cls, text: str, alphabet_size: Optional[int] = None) -> "Word":
        return parse_word(text, alphabet_size)[0]

    @property
    def symbols(self) -> tuple:
        return tuple(_INDEX[c] for c in self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __iter__(self) -> Iterator[int]:
        return (_INDEX[c] for c in self.text)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word._raw(self.text[key], self.alphabet_size)
        return _INDEX[self.text[key]]

    def __add__(self, other: "Word") -> "Word":
        other = as_word(other)
        return Word._raw(self.text + other.text, max(self.alphabet_size, other.alphabet_size))

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.text == other.text
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.text)

    def __lt__(self, other: "Word") -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r})"


def parse_word(text: str, alphabet_size: Optional[int] = None) -> tuple:
    """Parse ``text`` into ``(Word, letters)``.

    Digit strings map directly to symbols.  Letter strings map to symbols in
    order of first appearance, and ``letters[i]`` is the letter that became
    symbol ``i``, so results can be rendered back in the caller's alphabet.
    Mixing digits and letters is rejected.
    """
    text = text.strip()
    if not text:
        k = alphabet_size or 1
        return Word._raw("", k), SYMBOLS[:k]
    if text.isdigit():
        symbols = [int(c) for c in text]
        k = alphabet_size if alphabet_size is not None else max(symbols) + 1
        return Word(symbols, k), SYMBOLS[:k]
    if text.isalpha():
        order: dict = {}
        for c in text:
            order.setdefault(c, len(order))
        k = alphabet_size if alphabet_size is not None else len(order)
        return Word([order[c] for c in text], k), "".join(order)
    raise AlphabetError(f"cannot parse {text!r}: use only digits or only letters")


def as_word(w: Union[Word, str, Sequence[int]]) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w)
    return Word(w)


def render(w: Word, letters: Optional[str] = None) -> str:
    """Render ``w`` with ``letters[i]`` standing for symbol ``i``."""
    if letters is None:
        return w.text
    return "".join(letters[s] for s in w)


# -- thresholds and witnesses -------------------------------------------------


@dataclass(frozen=True)
class PowerThreshold:
    """``strict=True`` forbids only exponents above ``value`` (the
    alpha-plus reading); ``strict=False`` also forbids exponent ``value``."""

    value: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 1:
            raise ValueError("threshold must be at least 1")

    @classmethod
    def parse(cls, text: str, strict: bool = False) -> "PowerThreshold":
        return cls(parse_rational(text), strict)

    def violated_by(self, length: int, period: int) -> bool:
        """True if a repetition of ``length`` with ``period`` breaks the threshold."""
        lhs = length * self.value.denominator
        rhs = self.value.numerator * period
        return lhs > rhs if self.strict else lhs >= rhs

    def __str__(self) -> str:
        return f"{self.value}{'+' if self.strict else ''}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"13/4"`` or ``"3"`` exactly.  Decimal notation is rejected."""
    text = text.strip()
    num, sep, den = text.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise ValueError(f"malformed rational {text!r}; expected P/Q with integers")
    if sep and int(den) == 0:
        raise ValueError(f"malformed rational {text!r}; zero denominator")
    return Fraction(int(num), int(den) if sep else 1)


@dataclass(frozen=True)
class RepetitionWitness:
    """A repetition ``factor`` with ``period`` found inside a source word.

    For an ordinary factor ``position`` is its start.  For a circular factor
    ``tuv = (t_start, t_len, u_len, v_len)`` locates the factor ``tuv`` of
    the source and ``factor == v + t``.
    """

    factor: Word
    period: int
    position: Optional[int] = None
    tuv: Optional[tuple] = None

    @property
    def total_length(self) -> int:
        return len(self.factor)

    @property
    def exponent(self) -> Fraction:
        return Fraction(len(self.factor), self.period)

    @property
    def circular(self) -> bool:
        return self.tuv is not None

    def replay(self, source: Union[Word, str]) -> bool:
        """Rebuild the repetition from ``source`` and confirm it is one."""
        text = as_word(source).text
        if self.tuv is not None:
            ts, tl, ul, vl = self.tuv
            vs = ts + tl + ul
            if min(ts, tl, ul, vl) < 0 or vs + vl > len(text):
                return False
            s = text[vs:vs + vl] + text[ts:ts + tl]
        else:
            if self.position is None or self.position < 0:
                return False
            s = text[self.position:self.position + len(self.factor)]
        if s != self.factor.text or not 1 <= self.period <= len(s):
            return False
        return s[self.period:] == s[:-self.period]

    def describe(self, letters: Optional[str] = None) -> dict:
        out = {
            "factor": render(self.factor, letters),
            "period": self.period,
            "exponent": str(self.exponent),
        }
        if self.tuv is not None:
            out["t_start"], out["t_len"], out["u_len"], out["v_len"] = self.tuv
        else:
            out["position"] = self.position
        return out


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Optional[RepetitionWitness] = None

    def __bool__(self) -> bool:
        return self.passed


# -- periods and exponents ----------------------------------------------------


def border_array(s: str) -> list:
    """``b[i]`` is the length of the longest proper border of ``s[:i+1]``."""
    b = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = b[k - 1]
        if s[i] == s[k]:
            k += 1
        b[i] = k
    return b


def shortest_period(w) -> int:
    w = as_word(w)
    if not len(w):
        raise EmptyWordError("the empty word has no period")
    return len(w) - border_array(w.text)[-1]


def exponent(w) -> Fraction:
    w = as_word(w)
    return Fraction(len(w), shortest_period(w))


def _better(length: int, period: int, best_len: int, best_per: int) -> bool:
    # ties go to the shorter repetition
    lhs, rhs = length * best_per, best_len * period
    return lhs > rhs or (lhs == rhs and length < best_len)


def critical_exponent(w) -> tuple:
    """Largest exponent of a nonempty factor, with a witness.

    One border array per start position, O(n^2) overall.
    """
    w = as_word(w)
    if not len(w):
        raise EmptyWordError("critical exponent of the empty word is undefined")
    witness = _plain_max(w.text, len(w), w.alphabet_size)
    return witness.exponent, witness


def _plain_max(text: str, max_len: int, k: int) -> RepetitionWitness:
    best = (1, 1, 0)
    for i in range(len(text)):
        b = border_array(text[i:i + max_len])
        for j, bj in enumerate(b):
            if _better(j + 1, j + 1 - bj, best[0], best[1]):
                best = (j + 1, j + 1 - bj, i)
    length, period, i = best
    return RepetitionWitness(Word._raw(text[i:i + length], k), period, position=i)


def conjugates(w) -> list:
    w = as_word(w)
    if not len(w):
        return [w]
    return [w[i:] + w[:i] for i in range(len(w))]


def _circular_splits(text: str, max_len: int):
    """Yield ``(i, l, j, X)`` where ``X = text[i:i+l] + text[j:i]``.

    Every prefix of ``X`` of length at least ``l`` is a circular factor
    ``v t`` with ``v = text[i:i+l]`` and ``t`` a factor ending before ``i``.
    """
    n = len(text)
    for i in range(1, n):
        for l in range(1, min(n - i, max_len) + 1):
            v = text[i:i + l]
            for j in range(i):
                yield i, l, j, v + text[j:min(i, j + max_len - l)]


def circular_critical_exponent(w, max_len: Optional[int] = None) -> tuple:
    """Largest exponent over circular factors ``v t`` (``t u v`` a factor).

    Brute force over all splits; intended as the reference oracle and for
    words up to a few dozen symbols.  ``max_len`` caps ``|v t|``.
    """
    w = as_word(w)
    if not len(w):
        raise EmptyWordError("circular critical exponent of the empty word is undefined")
    n = len(w)
    max_len = n if max_len is None else min(max_len, n)
    text = w.text
    plain = _plain_max(text, max(max_len, 1), w.alphabet_size)
    best = (plain.total_length, plain.period, None)
    for i, l, j, x in _circular_splits(text, max_len):
        b = border_array(x)
        for length in range(l + 1, len(x) + 1):
            period = length - b[length - 1]
            if _better(length, period, best[0], best[1]):
                best = (length, period, (i, l, j))
    length, period, where = best
    if where is None:
        return plain.exponent, plain
    i, l, j = where
    t_len = length - l
    witness = RepetitionWitness(
        Word._raw(text[i:i + l] + text[j:j + t_len], w.alphabet_size),
        period,
        tuv=(j, t_len, i - j - t_len, l),
    )
    return witness.exponent, witness


def circular_factors(w, max_len: int) -> set:
    """All distinct ``v t`` with ``t u v`` a factor and ``1 <= |v t| <= max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    w = as_word(w)
    text, n, k = w.text, len(w), w.alphabet_size
    out = set()
    for start in range(n):
        for end in range(start + 1, n + 1):
            x = text[start:end]
            for tl in range(len(x) + 1):
                for vl in range(len(x) - tl + 1):
                    if 1 <= tl + vl <= max_len:
                        out.add(x[len(x) - vl:] + x[:tl])
    return {Word._raw(s, k) for s in out}


def is_power_free(w, th: PowerThreshold) -> Verdict:
    w = as_word(w)
    if not len(w):
        return Verdict(True)
    _, witness = critical_exponent(w)
    if th.violated_by(witness.total_length, witness.period):
        return Verdict(False, witness)
    return Verdict(True)


def is_circularly_power_free(w, th: PowerThreshold) -> Verdict:
    w = as_word(w)
    if not len(w):
        return Verdict(True)
    _, witness = circular_critical_exponent(w)
    if th.violated_by(witness.total_length, witness.period):
        return Verdict(False, witness)
    return Verdict(True)


# -- the four equivalent descriptions of circular factors ---------------------

BRUTE_FORCE_BOUND = 12


def _factors(text: str) -> set:
    n = len(text)
    return {text[i:j] for i in range(n) for j in range(i, n + 1)}


def characterization_sets(w, bound: int = BRUTE_FORCE_BOUND) -> tuple:
    """The four sets of nonempty strings: factors, prefixes and suffixes of
    conjugates of factors, and ``v t`` for factors ``t u v``."""
    w = as_word(w)
    if len(w) > bound:
        raise BoundExceededError(f"|w| = {len(w)} exceeds brute-force bound {bound}")
    facs = _factors(w.text)
    conj = {x[i:] + x[:i] for x in facs for i in range(max(len(x), 1))}
    a, b, c = set(), set(), set()
    for y in conj:
        a |= _factors(y)
        b.update(y[:i] for i in range(len(y) + 1))
        c.update(y[i:] for i in range(len(y) + 1))
    d = set()
    for x in facs:
        for tl in range(len(x) + 1):
            for ul in range(len(x) - tl + 1):
                d.add(x[tl + ul:] + x[:tl])
    return tuple(s - {""} for s in (a, b, c, d))


def verify_conjugate_characterization(w, bound: int = BRUTE_FORCE_BOUND) -> bool:
    a, b, c, d = characterization_sets(w, bound)
    return a == b == c == d
