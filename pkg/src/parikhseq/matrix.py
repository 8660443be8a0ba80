"""Scattered-subword counting and the Parikh matrix mapping."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlphabetMismatch
from .words import OrderedAlphabet, Word


def count_subword(w: Word | str, v: Word | str) -> int:
    """Number of occurrences of ``v`` as a scattered subword of ``w``."""
    text, pat = str(w), str(v)
    # ways[j] = occurrences of pat[:j] in the prefix read so far
    ways = [1] + [0] * len(pat)
    for ch in text:
        for j in range(len(pat), 0, -1):
            if pat[j - 1] == ch:
                ways[j] += ways[j - 1]
    return ways[-1]


@dataclass(frozen=True)
class ParikhMatrix:
    """Upper triangular, unit diagonal matrix of nonnegative integers.

    ``entries[i][j + 1]`` (0-based) is the number of occurrences of the
    pattern ``a_i a_{i+1} ... a_j`` in the generating word.
    """

    alphabet: OrderedAlphabet
    entries: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: ParikhMatrix) -> ParikhMatrix:
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("matrices over different alphabets")
        n = self.dimension
        a, b = self.entries, other.entries
        prod = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(i, j + 1)) if j >= i else 0 for j in range(n))
            for i in range(n)
        )
        return ParikhMatrix(self.alphabet, prod)

    def informative(self) -> tuple[int, ...]:
        """Entries strictly above the diagonal, row by row."""
        n = self.dimension
        return tuple(self.entries[i][j] for i in range(n) for j in range(i + 1, n))

    def parikh_vector(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i + 1] for i in range(self.dimension - 1))

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def format_grid(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.entries)


def identity(alphabet: OrderedAlphabet) -> ParikhMatrix:
    n = len(alphabet) + 1
    return ParikhMatrix(alphabet, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def parikh_matrix(w: Word) -> ParikhMatrix:
    n = len(w.alphabet) + 1
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for q in w.ranks():
        # right multiplication by the elementary matrix of a_q adds column q to column q+1
        for i in range(q + 1):
            m[i][q + 1] += m[i][q]
    return ParikhMatrix(w.alphabet, tuple(tuple(row) for row in m))


def m_equivalent(w1: Word, w2: Word) -> bool:
    if w1.alphabet != w2.alphabet:
        raise AlphabetMismatch(f"{w1.alphabet} differs from {w2.alphabet}")
    if len(w1) != len(w2):
        return False
    return parikh_matrix(w1).informative() == parikh_matrix(w2).informative()
