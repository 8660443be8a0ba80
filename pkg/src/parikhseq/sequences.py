"""Duplication schedules, M-ambiguity sequences and their eventual periods."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from . import diophantine, search
from .errors import BudgetExceeded, InvalidSlot, SearchSpaceTooLarge, UnsupportedPrefix
from .words import OrderedAlphabet, Word

ENGINES = ("search", "diophantine")
INCONCLUSIVE = "?"


@dataclass(frozen=True)
class DuplicationSchedule:
    """Words ``x_1 a^{k_1} x_2 ... a^{k_j} x_{j+1}`` grown one slot at a time.

    Every slot starts at exponent 1; step ``n`` adds one to the slot
    ``increments[(n - 1) % len(increments)]``.
    """

    base: diophantine.WordTemplate
    increments: tuple[str, ...]
    length: int

    def __post_init__(self):
        slots = [exp for _, exp in self.base.units if isinstance(exp, str)]
        if len(set(slots)) != len(slots):
            raise InvalidSlot("each slot name must decorate exactly one unit")
        if not self.increments:
            raise InvalidSlot("increments must not be empty")
        for name in self.increments:
            if name not in slots:
                raise InvalidSlot(f"unknown slot {name!r}; slots are {slots}")
        if self.length < 1:
            raise ValueError("a schedule emits at least one word")

    @property
    def slots(self) -> tuple[str, ...]:
        return self.base.parameters

    @property
    def letter(self) -> str | None:
        return self.base.parameter_letter

    @classmethod
    def from_dict(cls, data: dict) -> DuplicationSchedule:
        alphabet = OrderedAlphabet(data["alphabet"]) if data.get("alphabet") else None
        base = diophantine.parse_template(data["base"], alphabet)
        return cls(base, tuple(data["increments"]), int(data["terms"]))

    def exponents(self) -> list[dict[str, int]]:
        current = {name: 1 for name in self.slots}
        out = [dict(current)]
        for n in range(1, self.length):
            current[self.increments[(n - 1) % len(self.increments)]] += 1
            out.append(dict(current))
        return out


def generate_words(s: DuplicationSchedule) -> list[Word]:
    return [diophantine.instantiate(s.base, e) for e in s.exponents()]


@dataclass(frozen=True)
class AmbiguitySequence:
    terms: tuple[str, ...]
    words: tuple[Word, ...]
    engine: str

    def __str__(self):
        return ",".join(self.terms)

    def __len__(self):
        return len(self.terms)

    def to_dict(self):
        return {
            "terms": list(self.terms),
            "words": [w.text for w in self.words],
            "engine": self.engine,
        }


def ambiguity_sequence(
    words: Sequence[Word],
    engine: str = "search",
    removed: str | None = None,
    budget: int | None = None,
    cap: int = diophantine.DEFAULT_CAP,
) -> AmbiguitySequence:
    """One verdict per word; a term whose engine gives up is ``"?"``."""
    if not words:
        raise ValueError("need at least one word")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}, expected one of {ENGINES}")
    alphabet = words[0].alphabet
    if any(w.alphabet != alphabet for w in words):
        raise ValueError("all words must share one alphabet")
    terms = []
    for w in words:
        try:
            if engine == "search":
                verdict = search.is_ambiguous(w, budget)
            else:
                verdict = diophantine.decide(w, removed, cap)
            terms.append(verdict.verdict)
        except (BudgetExceeded, SearchSpaceTooLarge):
            terms.append(INCONCLUSIVE)
    return AmbiguitySequence(tuple(terms), tuple(words), engine)


def detect_eventual_period(theta) -> tuple[int, int] | None:
    """Smallest period, then smallest preperiod, fitting the observed terms.

    The periodic tail must span at least three full periods; otherwise, or
    if any term is inconclusive, returns None.
    """
    terms = list(theta.terms if isinstance(theta, AmbiguitySequence) else theta)
    if INCONCLUSIVE in terms:
        return None
    n = len(terms)
    for period in range(1, n // 3 + 1):
        pre = 0
        for i in range(n - period - 1, -1, -1):
            if terms[i] != terms[i + period]:
                pre = i + 1
                break
        if n - pre >= 3 * period:
            return pre, period
    return None


# c^n bcbabc^m dcbabcbc^p: ambiguous iff m == n (for m in {n, n+1})
FAMILY_A = "c^n bcbab c^m dcbabcb c^p"
# c^n bbabc^m dcbabbc^p, same behaviour; reached from two unambiguous words
FAMILY_U = "c^n bbab c^m dcbabb c^p"
U_PREFIX_WORDS = ("cbabcdcbabc", "cbabcdcbabbc")

_PATTERN = re.compile(r"^[AU]+$")


def _walk(template: str, pattern: str) -> list[Word]:
    t = diophantine.parse_template(template, OrderedAlphabet("abcd"))
    state = {"n": 1, "m": 1, "p": 1}
    words = [diophantine.instantiate(t, state)]
    current = "A"
    for term in pattern:
        if term == current:
            state["p"] += 1
        elif current == "A":
            state["m"] += 1
        else:
            state["n"] += 1
        current = term
        words.append(diophantine.instantiate(t, state))
    return words


def realize_pattern(pattern: str) -> list[Word]:
    """A chain of single duplications whose M-ambiguity sequence is ``pattern``.

    Patterns starting with A begin at the print word ``cbcbabcdcbabcbc``;
    patterns starting with U must start with U,U,A.
    """
    if not _PATTERN.match(pattern):
        raise ValueError(f"pattern must match ^[AU]+$, got {pattern!r}")
    if pattern[0] == "A":
        return _walk(FAMILY_A, pattern[1:])
    if not pattern.startswith("UUA"):
        raise UnsupportedPrefix(f"patterns starting with U must start with UUA, got {pattern!r}")
    sigma = OrderedAlphabet("abcd")
    head = [Word(sigma, w) for w in U_PREFIX_WORDS]
    return head + _walk(FAMILY_U, pattern[3:])
