"""Deciding M-ambiguity through linear Diophantine systems over gap exponents.

Fix a letter ``r`` to remove and let ``G`` be the remaining letters.  Any word
M-equivalent to ``w`` projects onto ``G`` as some word ``u`` whose pattern
counts inside ``G`` agree with those of ``w``; re-inserting runs of ``r`` of
unknown lengths ``x_1 .. x_{n+1}`` around the letters of ``u`` turns every
remaining Parikh matrix entry (the patterns that contain ``r``) into a linear
equation in the ``x_i``.  For a template ``x_1 a^k x_2 a^k ...`` with
``r = a`` the right-hand sides are affine in ``k``, so the set of ``k`` that
make the word ambiguous is a finite union of projections of lattice points of
rational polyhedra, hence eventually periodic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import (
    IncompatibleCandidate,
    InvalidGamma,
    SearchSpaceTooLarge,
    TemplateSyntaxError,
    UnknownLetter,
)
from .matrix import count_subword
from .search import AmbiguityVerdict
from .words import OrderedAlphabet, Word, project

DEFAULT_CAP = 10**8

Exponent = Union[int, str]


# -- templates ---------------------------------------------------------------

@dataclass(frozen=True)
class WordTemplate:
    """A word whose runs may carry named exponents, e.g. ``cbcbabc^k dcbabcbc``.

    Several names are allowed (duplication schedules use one per slot) but
    all named units must carry the same letter.
    """

    alphabet: OrderedAlphabet
    units: tuple[tuple[str, Exponent], ...]

    def __post_init__(self):
        letters = set()
        for pos, (letter, exp) in enumerate(self.units):
            if letter not in self.alphabet:
                raise UnknownLetter(pos, letter)
            if isinstance(exp, int):
                if exp < 1:
                    raise TemplateSyntaxError(f"exponent of unit {pos} must be positive")
            else:
                letters.add(letter)
        if len(letters) > 1:
            raise TemplateSyntaxError(
                f"named exponents decorate different letters: {sorted(letters)}"
            )

    @property
    def parameters(self) -> tuple[str, ...]:
        names = []
        for _, exp in self.units:
            if isinstance(exp, str) and exp not in names:
                names.append(exp)
        return tuple(names)

    @property
    def parameter(self) -> str | None:
        names = self.parameters
        if len(names) > 1:
            raise TemplateSyntaxError(f"expected at most one parameter, found {names}")
        return names[0] if names else None

    @property
    def parameter_letter(self) -> str | None:
        for letter, exp in self.units:
            if isinstance(exp, str):
                return letter
        return None

    def __str__(self):
        parts = []
        for letter, exp in self.units:
            if exp == 1:
                parts.append(letter)
            else:
                parts.append(f"{letter}^{exp} ")
        return "".join(parts).strip()


_UNIT = re.compile(r"\s*([^\s^])(?:\s*\^\s*(\d+|[A-Za-z_][A-Za-z0-9_]*))?")


def parse_template(text: str, alphabet: OrderedAlphabet | None = None) -> WordTemplate:
    """Parse ``unit := LETTER ('^' (INT | NAME))?`` repeated; whitespace ends a name."""
    units = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _UNIT.match(text, pos)
        if not m:
            raise TemplateSyntaxError(f"cannot parse template at offset {pos}: {text[pos:]!r}")
        letter, exp = m.group(1), m.group(2)
        if exp is None:
            exp = 1
        elif exp.isdigit():
            exp = int(exp)
        units.append((letter, exp))
        pos = m.end()
    if alphabet is None:
        alphabet = OrderedAlphabet.from_text("".join(u[0] for u in units) or "a")
    return WordTemplate(alphabet, tuple(units))


def instantiate(t: WordTemplate, k: int | dict[str, int]) -> Word:
    """Substitute ``k`` (or a mapping name -> value) for the named exponents."""
    parts = []
    for letter, exp in t.units:
        if isinstance(exp, str):
            exp = k[exp] if isinstance(k, dict) else k
        if exp < 0:
            raise ValueError(f"negative exponent {exp}")
        parts.append(letter * exp)
    return Word(t.alphabet, "".join(parts))


# -- projections -------------------------------------------------------------

def consecutive_patterns(sigma: OrderedAlphabet) -> list[Word]:
    """Patterns ``a_i ... a_j`` recorded by the Parikh matrix, shortest first."""
    s = sigma.letters
    return [
        Word(sigma, s[i:i + length])
        for length in range(1, len(s) + 1)
        for i in range(len(s) - length + 1)
    ]


def _removed_letter(sigma: OrderedAlphabet, gamma: Iterable[str]) -> str:
    gamma = set(gamma)
    missing = [a for a in sigma.letters if a not in gamma]
    extra = gamma - set(sigma.letters)
    if extra or len(missing) != 1:
        raise InvalidGamma(f"gamma must omit exactly one letter of {sigma}, got {sorted(gamma)}")
    if len(sigma) == 1:
        raise InvalidGamma("gamma would be empty")
    return missing[0]


def _inner_patterns(sigma: OrderedAlphabet, removed: str) -> list[str]:
    return [p.text for p in consecutive_patterns(sigma) if removed not in p.text]


def consistent_projections(w: Word, gamma: Iterable[str]) -> list[Word]:
    """Words over ``gamma`` whose pattern counts agree with ``w`` on every
    consecutive pattern avoiding the removed letter.

    Returned in lexicographic order with respect to the induced alphabet.
    """
    removed = _removed_letter(w.alphabet, gamma)
    sub = w.alphabet.restrict(a for a in w.alphabet.letters if a != removed)
    target_word = project(w, sub.letters).text
    patterns = _inner_patterns(w.alphabet, removed)
    goals = [count_subword(target_word, p) for p in patterns]
    letters = sub.letters
    remaining = {a: target_word.count(a) for a in letters}
    # ways[p][j]: occurrences of patterns[p][:j] in the prefix built so far
    ways = [[1] + [0] * len(p) for p in patterns]
    out: list[str] = []
    prefix: list[str] = []
    total = len(target_word)

    def ok():
        for p, pat in enumerate(patterns):
            row = ways[p]
            low = row[-1]
            if len(pat) > 1:
                low += row[-2] * remaining[pat[-1]]
            if low > goals[p]:
                return False
        return True

    def extend():
        if len(prefix) == total:
            if all(ways[p][-1] == goals[p] for p in range(len(patterns))):
                out.append("".join(prefix))
            return
        for a in letters:
            if not remaining[a]:
                continue
            saved = [list(row) for row in ways]
            for p, pat in enumerate(patterns):
                row = ways[p]
                for j in range(len(pat), 0, -1):
                    if pat[j - 1] == a:
                        row[j] += row[j - 1]
            remaining[a] -= 1
            if ok():
                prefix.append(a)
                extend()
                prefix.pop()
            remaining[a] += 1
            for p in range(len(patterns)):
                ways[p] = saved[p]

    extend()
    return [Word(sub, u) for u in out]


# -- linear systems ----------------------------------------------------------

@dataclass(frozen=True)
class Affine:
    """``const + k * coef``."""

    const: int
    k: int = 0

    def __call__(self, k: int) -> int:
        return self.const + self.k * k

    def __add__(self, other: Affine) -> Affine:
        return Affine(self.const + other.const, self.k + other.k)

    def scale(self, c: int) -> Affine:
        return Affine(self.const * c, self.k * c)

    def to_dict(self):
        return {"const": self.const, "k": self.k}

    def __str__(self):
        if not self.k:
            return str(self.const)
        head = "k" if self.k == 1 else f"{self.k}k"
        if self.const > 0:
            return f"{head}+{self.const}"
        if self.const < 0:
            return f"{head}{self.const}"
        return head


@dataclass(frozen=True)
class Equation:
    pattern: str
    coeffs: tuple[int, ...]
    rhs: Affine

    def to_dict(self):
        return {"pattern": self.pattern, "coeffs": list(self.coeffs), "rhs": self.rhs.to_dict()}


@dataclass(frozen=True)
class LinearSystem:
    """Equations ``coeffs . x = rhs(k)`` over gap exponents ``x >= 0``.

    ``exclusion``, when present, is the gap vector of the template word
    itself (affine in ``k``); solutions equal to it are discarded.
    """

    alphabet: OrderedAlphabet
    removed: str
    candidate: str
    parameter: str | None
    variables: tuple[str, ...]
    equations: tuple[Equation, ...]
    exclusion: tuple[Affine, ...] | None

    def to_dict(self):
        return {
            "variables": list(self.variables),
            "equations": [e.to_dict() for e in self.equations],
            "exclusion": None if self.exclusion is None else [a.to_dict() for a in self.exclusion],
        }

    def pretty(self) -> str:
        name = self.parameter or "k"
        lines = []
        for e in self.equations:
            terms = []
            for c, v in zip(e.coeffs, self.variables):
                if c:
                    terms.append(v if c == 1 else f"{c}{v}")
            lhs = " + ".join(terms) or "0"
            lines.append(f"{lhs} = {str(e.rhs).replace('k', name)}    [|w|_{e.pattern}]")
        return "\n".join(lines)

    def reassemble(self, gaps: Iterable[int]) -> Word:
        """The word with ``gaps[i]`` copies of the removed letter in gap ``i``."""
        gaps = list(gaps)
        parts = [self.removed * gaps[0]]
        for letter, g in zip(self.candidate, gaps[1:]):
            parts.append(letter + self.removed * g)
        return Word(self.alphabet, "".join(parts))


def _gap_coefficients(skeleton: str, pre: str, suf: str) -> list[int]:
    # gap g sits after skeleton[:g]; an occurrence of pre+r+suf using an r from
    # gap g splits into pre inside skeleton[:g] and suf inside skeleton[g:]
    return [
        count_subword(skeleton[:g], pre) * count_subword(skeleton[g:], suf)
        for g in range(len(skeleton) + 1)
    ]


def _template_gaps(t: WordTemplate, removed: str) -> tuple[str, list[Affine]]:
    skeleton = []
    gaps = [Affine(0)]
    for letter, exp in t.units:
        if letter == removed:
            gaps[-1] = gaps[-1] + (Affine(0, 1) if isinstance(exp, str) else Affine(exp))
        else:
            for _ in range(exp if isinstance(exp, int) else 1):
                skeleton.append(letter)
                gaps.append(Affine(0))
    return "".join(skeleton), gaps


def _check_removed(t: WordTemplate, removed: str):
    t.parameter  # at most one name
    if removed not in t.alphabet:
        raise UnknownLetter(0, removed)
    letter = t.parameter_letter
    if letter is not None and letter != removed:
        raise ValueError(f"the parameterized letter is {letter!r}, cannot remove {removed!r}")
    if len(t.alphabet) == 1:
        raise InvalidGamma("gamma would be empty")


def build_system(t: WordTemplate, candidate: Word | str, removed: str) -> LinearSystem:
    _check_removed(t, removed)
    sigma = t.alphabet
    skeleton, gaps = _template_gaps(t, removed)
    cand = str(candidate)
    if removed in cand or any(a not in sigma for a in cand):
        raise IncompatibleCandidate(f"{cand!r} is not a word over the remaining letters")
    for pat in _inner_patterns(sigma, removed):
        if count_subword(cand, pat) != count_subword(skeleton, pat):
            raise IncompatibleCandidate(f"|{cand}|_{pat} differs from the template")
    equations = []
    for v in consecutive_patterns(sigma):
        text = v.text
        if removed not in text:
            continue
        pre, _, suf = text.partition(removed)
        coeffs = _gap_coefficients(cand, pre, suf)
        rhs = Affine(0)
        for c, gap in zip(_gap_coefficients(skeleton, pre, suf), gaps):
            rhs = rhs + gap.scale(c)
        equations.append(Equation(text, tuple(coeffs), rhs))
    return LinearSystem(
        alphabet=sigma,
        removed=removed,
        candidate=cand,
        parameter=t.parameter,
        variables=tuple(f"x{i}" for i in range(1, len(cand) + 2)),
        equations=tuple(equations),
        exclusion=tuple(gaps) if cand == skeleton else None,
    )


def _variable_order(rows, nvars: int) -> list[int]:
    # most constrained first: take a variable from the equation with the
    # fewest unassigned variables, preferring variables shared by many equations
    order: list[int] = []
    left = set(range(nvars))
    while left:
        best = None
        for row in rows:
            free = sorted(i for i in left if row[i])
            if free and (best is None or len(free) < len(best)):
                best = free
        if best is None:
            order.extend(sorted(left))
            break
        pick = max(best, key=lambda i: sum(1 for row in rows if row[i]))
        order.append(pick)
        left.remove(pick)
    return order


def solve_fixed(
    s: LinearSystem,
    k: int,
    cap: int = DEFAULT_CAP,
    max_solutions: int | None = None,
) -> list[tuple[int, ...]]:
    """Nonnegative integer gap vectors satisfying ``s`` at parameter ``k``.

    The single-letter equation fixes the total of the gaps, so the search
    ranges over weak compositions of that total.  Since every coefficient is
    nonnegative, a partial sum above its right-hand side is a dead end; an
    equation whose last variable is reached forces that variable's value.
    ``cap`` bounds the number of search nodes.  Solutions come back in
    lexicographic order (the first ``max_solutions`` found, if given).
    """
    nvars = len(s.variables)
    rhs = [e.rhs(k) for e in s.equations]
    if any(r < 0 for r in rhs):
        return []
    for e in s.equations:
        if not any(e.coeffs) and e.rhs(k):
            return []
    order = _variable_order([e.coeffs for e in s.equations], nvars)
    rows = [[e.coeffs[v] for v in order] for e in s.equations]
    neq = len(rows)
    closing: list[list[int]] = [[] for _ in range(nvars)]
    for e, row in enumerate(rows):
        nz = [p for p, c in enumerate(row) if c]
        if nz:
            closing[nz[-1]].append(e)
    bounds = [
        min((r // row[p] for row, r in zip(rows, rhs) if row[p]), default=0)
        for p in range(nvars)
    ]
    total = next(e for e, eq in enumerate(s.equations) if eq.pattern == s.removed)
    # remaining demand of each equation lies between the smallest and largest
    # remaining coefficient times the remaining total
    lo = [[min(row[p:], default=0) for p in range(nvars + 1)] for row in rows]
    hi = [[max(row[p:], default=0) for p in range(nvars + 1)] for row in rows]
    excluded = None if s.exclusion is None else tuple(a(k) for a in s.exclusion)

    partial = [0] * neq
    assign: list[int] = []
    out: list[tuple[int, ...]] = []
    # (depth, partial sums) states known to admit no completion at all
    dead: set[tuple[int, tuple[int, ...]]] = set()
    nodes = 0
    stop = False

    def emit():
        nonlocal stop
        sol = [0] * nvars
        for p, v in enumerate(order):
            sol[v] = assign[p]
        sol = tuple(sol)
        if sol != excluded:
            out.append(sol)
            stop = max_solutions is not None and len(out) >= max_solutions

    def extend(p):
        """Return True if some completion exists below this node."""
        nonlocal nodes
        if p == nvars:
            emit()
            return True
        state = (p, tuple(partial))
        if state in dead:
            return False
        if closing[p]:
            e = closing[p][0]
            need, c = rhs[e] - partial[e], rows[e][p]
            values = [need // c] if need >= 0 and not need % c and need // c <= bounds[p] else []
        else:
            values = range(bounds[p] + 1)
        found = False
        for value in values:
            nodes += 1
            if nodes > cap:
                raise SearchSpaceTooLarge(cap)
            over = False
            for e in range(neq):
                partial[e] += rows[e][p] * value
                if partial[e] > rhs[e]:
                    over = True
            ok = not over and all(partial[e] == rhs[e] for e in closing[p])
            if ok:
                left = rhs[total] - partial[total]
                for e in range(neq):
                    need = rhs[e] - partial[e]
                    if need < lo[e][p + 1] * left or need > hi[e][p + 1] * left:
                        ok = False
                        break
            if ok:
                assign.append(value)
                found = extend(p + 1) or found
                assign.pop()
            for e in range(neq):
                partial[e] -= rows[e][p] * value
            if stop:
                return True
            if over:
                break  # larger values only overshoot further
        if not found:
            dead.add(state)
        return found

    extend(0)
    return sorted(out)


def _systems(t: WordTemplate, removed: str) -> list[LinearSystem]:
    _check_removed(t, removed)
    base = instantiate(t, 1)
    gamma = [a for a in t.alphabet.letters if a != removed]
    return [build_system(t, u, removed) for u in consistent_projections(base, gamma)]


def ambiguous_parameters(
    t: WordTemplate, removed: str, k_max: int, cap: int = DEFAULT_CAP
) -> set[int]:
    """The ``k`` in ``[1, k_max]`` for which ``instantiate(t, k)`` is M-ambiguous."""
    if len(t.alphabet) == 1:
        return set()
    systems = _systems(t, removed)
    return {
        k
        for k in range(1, k_max + 1)
        if any(solve_fixed(s, k, cap, max_solutions=1) for s in systems)
    }


def default_removed_letter(w: Word) -> str:
    """Most frequent letter of ``w``; ties go to the earliest in the alphabet."""
    return max(w.alphabet.letters, key=lambda a: (w.count(a), -w.alphabet.index(a)))


def decide(w: Word, removed: str | None = None, cap: int = DEFAULT_CAP) -> AmbiguityVerdict:
    """Decide M-ambiguity of a concrete word through its linear systems.

    ``explored`` counts the systems examined.
    """
    if len(w.alphabet) == 1:
        return AmbiguityVerdict("U", None, 0)
    if removed is None:
        removed = default_removed_letter(w)
    t = WordTemplate(w.alphabet, tuple((a, 1) for a in w.text))
    systems = _systems(t, removed)
    for n, s in enumerate(systems, 1):
        sols = solve_fixed(s, 0, cap, max_solutions=1)
        if sols:
            return AmbiguityVerdict("A", s.reassemble(sols[0]), n)
    return AmbiguityVerdict("U", None, len(systems))


# -- residue structure -------------------------------------------------------

@dataclass(frozen=True)
class ResidueStructure:
    """Beyond ``threshold``, ``k`` is feasible iff ``k mod modulus`` is in ``residues``.

    An empty ``residues`` means every ``k >= threshold`` is infeasible.
    """

    threshold: int
    modulus: int
    residues: frozenset[int]
    confidence: str  # "proved-window" or "inconclusive"

    @property
    def eventually_infeasible(self) -> bool:
        return not self.residues

    def predicts(self, k: int) -> bool:
        return k % self.modulus in self.residues

    def to_dict(self):
        return {
            "threshold": self.threshold,
            "modulus": self.modulus,
            "residues": sorted(self.residues),
            "confidence": self.confidence,
        }


def _periodic_start(member: list[bool], bound: int, d: int) -> int:
    """Smallest N such that membership on [N, bound] has period d."""
    for x in range(bound - d, 0, -1):
        if member[x] != member[x + d]:
            return x + 1
    return 1


def detect_residue_structure(feasible: Iterable[int], bound: int) -> ResidueStructure:
    """Smallest modulus, then smallest threshold, describing ``feasible`` on a window.

    The threshold is advanced to the first feasible value of the periodic
    tail (if any).  A structure is only trusted when ``[N, bound]`` covers at
    least three periods; otherwise the smallest-modulus fit is returned with
    confidence ``"inconclusive"``.
    """
    feasible = set(feasible)
    if any(k < 1 or k > bound for k in feasible):
        raise ValueError(f"feasible values must lie in [1, {bound}]")
    member = [False] + [k in feasible for k in range(1, bound + 1)]
    fallback = None
    for d in range(1, bound + 1):
        start = _periodic_start(member, bound, d)
        residues = frozenset(x % d for x in range(start, min(start + d, bound + 1)) if member[x])
        n = start
        if residues:
            n = next(x for x in range(start, bound + 1) if member[x])
        if bound - n + 1 >= 3 * d:
            return ResidueStructure(n, d, residues, "proved-window")
        if fallback is None:
            fallback = ResidueStructure(n, d, residues, "inconclusive")
    return fallback
