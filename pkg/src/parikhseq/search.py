"""Exhaustive M-ambiguity decision by pruned search over candidate words.

Candidates are built letter by letter, in alphabet order, using exactly the
letters of the target word.  A partial word ``u`` with remaining letters
``r`` is abandoned as soon as no completion can reach the target matrix:
every completion ``us`` has ``Psi(us) = Psi(u) Psi(s)``, the first
superdiagonal of ``Psi(s)`` is fixed by ``r`` and each longer entry of
``Psi(s)`` lies between 0 and the product of the corresponding counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, LimitExceeded
from .matrix import parikh_matrix
from .words import Word


@dataclass(frozen=True)
class AmbiguityVerdict:
    verdict: str  # "A" or "U"
    witness: Word | None
    explored: int

    @property
    def ambiguous(self) -> bool:
        return self.verdict == "A"


class _Stop(Exception):
    pass


class _Explorer:
    def __init__(self, w: Word, budget: int | None = None):
        self.size = len(w.alphabet)
        self.target = [list(row) for row in parikh_matrix(w).entries]
        self.remaining = list(parikh_matrix(w).parikh_vector())
        self.length = len(w)
        self.budget = budget
        self.explored = 0
        n = self.size + 1
        self.pairs = [(i, j) for i in range(n) for j in range(i + 2, n)]

    def _feasible(self, m):
        t, r = self.target, self.remaining
        for i, j in self.pairs:
            row = m[i]
            goal = t[i][j]
            low = row[j] + row[j - 1] * r[j - 1]
            if low > goal:
                return False
            # upper bound: sum over k of m[i][k] * prod(r[k:j])
            high = row[j]
            prod = 1
            for k in range(j - 1, i - 1, -1):
                prod *= r[k]
                if not prod:
                    break
                high += row[k] * prod
            if high < goal:
                return False
        return True

    def run(self, visit):
        """Call ``visit(ranks)`` on every matching word, in lexicographic order.

        ``visit`` returning True stops the search.
        """
        n = self.size + 1
        m = [[int(i == j) for j in range(n)] for i in range(n)]
        word = []
        r = self.remaining

        def extend(depth):
            if depth == self.length:
                if visit(tuple(word)):
                    raise _Stop
                return
            for q in range(self.size):
                if not r[q]:
                    continue
                self.explored += 1
                if self.budget is not None and self.explored > self.budget:
                    raise BudgetExceeded(self.budget, self.explored)
                for i in range(q + 1):
                    m[i][q + 1] += m[i][q]
                r[q] -= 1
                if self._feasible(m):
                    word.append(q)
                    extend(depth + 1)
                    word.pop()
                r[q] += 1
                for i in range(q + 1):
                    m[i][q + 1] -= m[i][q]

        try:
            extend(0)
        except _Stop:
            return True
        return False


def _to_word(w: Word, ranks) -> Word:
    letters = w.alphabet.letters
    return Word(w.alphabet, "".join(letters[q] for q in ranks))


def is_ambiguous(w: Word, budget: int | None = None) -> AmbiguityVerdict:
    """Decide whether another word shares the Parikh matrix of ``w``.

    The witness, when one exists, is the lexicographically least such word.
    Raises :class:`BudgetExceeded` if ``budget`` search nodes do not suffice.
    """
    own = w.ranks()
    found = []

    def visit(ranks):
        if ranks != own:
            found.append(ranks)
            return True
        return False

    explorer = _Explorer(w, budget)
    explorer.run(visit)
    if found:
        return AmbiguityVerdict("A", _to_word(w, found[0]), explorer.explored)
    return AmbiguityVerdict("U", None, explorer.explored)


def enumerate_class(w: Word, limit: int, budget: int | None = None) -> list[Word]:
    """All words M-equivalent to ``w`` (including ``w``) in lexicographic order."""
    members = []

    def visit(ranks):
        members.append(ranks)
        if len(members) > limit:
            raise LimitExceeded(limit)
        return False

    _Explorer(w, budget).run(visit)
    return [_to_word(w, ranks) for ranks in members]
