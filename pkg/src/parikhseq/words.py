"""Ordered alphabets, words and the elementary word operations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    EmptyPattern,
    IndexOutOfRange,
    InvalidSubset,
    LimitExceeded,
    UnknownLetter,
)


@dataclass(frozen=True)
class OrderedAlphabet:
    """Distinct single-character letters, ordered by position."""

    letters: str

    def __post_init__(self):
        if isinstance(self.letters, (list, tuple)):
            object.__setattr__(self, "letters", "".join(self.letters))
        if not self.letters:
            raise ValueError("an alphabet needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"repeated letters in alphabet {self.letters!r}")
        object.__setattr__(self, "_rank", {a: i for i, a in enumerate(self.letters)})

    @classmethod
    def from_text(cls, text: str) -> OrderedAlphabet:
        """Alphabet of the sorted distinct characters of ``text``."""
        return cls("".join(sorted(set(text))))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter):
        return letter in self._rank

    def index(self, letter: str) -> int:
        return self._rank[letter]

    def restrict(self, gamma: Iterable[str]) -> OrderedAlphabet:
        """The ordered alphabet induced on ``gamma``."""
        gamma = set(gamma)
        bad = sorted(gamma - set(self.letters))
        if bad:
            raise InvalidSubset(f"letters {bad} are not in alphabet {self.letters!r}")
        return OrderedAlphabet("".join(a for a in self.letters if a in gamma))

    def __str__(self):
        return "{" + "<".join(self.letters) + "}"


@dataclass(frozen=True)
class Word:
    alphabet: OrderedAlphabet
    text: str = ""

    def __post_init__(self):
        for pos, ch in enumerate(self.text):
            if ch not in self.alphabet:
                raise UnknownLetter(pos, ch)

    def __len__(self):
        return len(self.text)

    def __iter__(self):
        return iter(self.text)

    def __getitem__(self, i):
        return self.text[i]

    def __str__(self):
        return self.text

    def __add__(self, other: Word) -> Word:
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.text + other.text)

    def ranks(self) -> tuple[int, ...]:
        return tuple(self.alphabet.index(a) for a in self.text)

    def sort_key(self):
        """Key for lexicographic order with respect to the alphabet order."""
        return self.ranks()

    def count(self, letter: str) -> int:
        return self.text.count(letter)


def parse_word(text: str, alphabet: OrderedAlphabet | None = None) -> Word:
    if alphabet is None:
        alphabet = OrderedAlphabet.from_text(text or "a")
    return Word(alphabet, text)


def project(w: Word, gamma: Iterable[str]) -> Word:
    """Erase every letter of ``w`` outside ``gamma``."""
    sub = w.alphabet.restrict(gamma)
    return Word(sub, "".join(a for a in w.text if a in sub))


def print_word(w: Word) -> Word:
    out = []
    for a in w.text:
        if not out or out[-1] != a:
            out.append(a)
    return Word(w.alphabet, "".join(out))


def _prefix_table(text: str, pattern: str) -> list[list[int]]:
    # table[i][j] = occurrences of pattern[:j] in text[:i]
    table = [[1] + [0] * len(pattern)]
    for ch in text:
        row = list(table[-1])
        for j in range(len(pattern), 0, -1):
            if pattern[j - 1] == ch:
                row[j] += row[j - 1]
        table.append(row)
    return table


def subword_core(w: Word, v: Word) -> Word:
    """Shortest subword of ``w`` having as many occurrences of ``v`` as ``w``.

    A position is kept iff it takes part in at least one occurrence of ``v``.
    """
    if not v.text:
        raise EmptyPattern("the core of the empty pattern is undefined")
    text, pat = w.text, v.text
    m = len(pat)
    before = _prefix_table(text, pat)
    after = _prefix_table(text[::-1], pat[::-1])
    n = len(text)
    kept = []
    for i, ch in enumerate(text):
        for j in range(m):
            if pat[j] != ch:
                continue
            # pat[:j] inside text[:i], pat[j+1:] inside text[i+1:]
            if before[i][j] and after[n - 1 - i][m - 1 - j]:
                kept.append(ch)
                break
    return Word(w.alphabet, "".join(kept))


def one_equivalence_class(w: Word, limit: int) -> set[Word]:
    """Words reachable from ``w`` by swapping adjacent letters whose ranks differ by 2 or more."""
    rank = w.alphabet.index
    seen = {w.text}
    queue = deque([w.text])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            a, b = cur[i], cur[i + 1]
            if abs(rank(a) - rank(b)) < 2:
                continue
            nxt = cur[:i] + b + a + cur[i + 2:]
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise LimitExceeded(limit)
                queue.append(nxt)
    return {Word(w.alphabet, t) for t in seen}


def duplicate(w: Word, index: int) -> Word:
    if not 0 <= index < len(w):
        raise IndexOutOfRange(f"index {index} outside word of length {len(w)}")
    t = w.text
    return Word(w.alphabet, t[: index + 1] + t[index:])


def is_duplication(w: Word, w2: Word) -> bool:
    a, b = w.text, w2.text
    if len(b) != len(a) + 1:
        return False
    # b is a with one letter inserted; find where the two first disagree
    i = 0
    while i < len(a) and a[i] == b[i]:
        i += 1
    return i > 0 and b[i] == b[i - 1] and b[i + 1:] == a[i:]
