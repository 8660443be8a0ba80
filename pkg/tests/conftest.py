import itertools
from collections import defaultdict
from functools import lru_cache

import pytest

from parikhseq.matrix import parikh_matrix
from parikhseq.words import OrderedAlphabet, Word

SIGMA2 = OrderedAlphabet("ab")
SIGMA3 = OrderedAlphabet("abc")
SIGMA4 = OrderedAlphabet("abcd")


# M-equivalence class of bbabdbabb over a<b<d
PROJECTIONS_ABD = """
dbbabbabb bdbabbabb bbdabbabb bbadbbabb bbabdbabb bbabbdabb
bbabbadbb bbabbabdb bbabbabbd dbabbbbab bdabbbbab badbbbbab
babdbbbab babbdbbab babbbdbab babbbbdab babbbbadb babbbbabd
dbbbaabbb bdbbaabbb bbdbaabbb bbbdaabbb bbbadabbb bbbaadbbb
bbbaabdbb bbbaabbdb bbbaabbbd dabbbbbba adbbbbbba abdbbbbba
abbdbbbba abbbdbbba abbbbdbba abbbbbdba abbbbbbda abbbbbbad
""".split()


# (template, removed letter) pairs cross-checked between the two engines
CORPUS = [
    ("cbcbabc^n dcbabcbc", "c"),
    ("c^k bcbab cc dcbabcbc", "c"),
    ("c^k bcbab c^k dcbabcbc", "c"),
    ("cbcbab c^k dcbabb c", "c"),
    ("c bbab c^k dcbabb c^k", "c"),
    ("cbabc^k dcbabc", "c"),
    ("a b^k a", "b"),
    ("a^k b a b a^k", "a"),
    ("b a c^k b a", "c"),
    ("c^k b a b c", "c"),
    ("b^k a b a b^k a", "b"),
]


def W(text, alphabet=SIGMA4):
    return Word(alphabet, text)


def brute_count(text, pattern):
    """Occurrences of ``pattern`` by trying every set of positions."""
    return sum(
        1
        for pos in itertools.combinations(range(len(text)), len(pattern))
        if "".join(text[i] for i in pos) == pattern
    )


def naive_class(w: Word) -> list[str]:
    """All distinct rearrangements of ``w`` sharing its Parikh matrix."""
    target = parikh_matrix(w).entries
    perms = {"".join(p) for p in itertools.permutations(w.text)}
    return sorted(
        (p for p in perms if parikh_matrix(Word(w.alphabet, p)).entries == target),
        key=lambda p: [w.alphabet.index(a) for a in p],
    )


@lru_cache(maxsize=None)
def matrix_groups(letters: str, length: int) -> dict:
    """Parikh matrix -> list of all words of that length over ``letters``."""
    sigma = OrderedAlphabet(letters)
    groups = defaultdict(list)
    for p in itertools.product(letters, repeat=length):
        text = "".join(p)
        groups[parikh_matrix(Word(sigma, text)).entries].append(text)
    return groups


# -- acceptance report ---------------------------------------------------------

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (
        rep.when == "call" or (rep.when == "setup" and rep.failed)
    ):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append((doc, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {doc}")
