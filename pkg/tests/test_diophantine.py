import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikhseq.diophantine import (
    Affine,
    ResidueStructure,
    build_system,
    consecutive_patterns,
    consistent_projections,
    decide,
    default_removed_letter,
    detect_residue_structure,
    instantiate,
    parse_template,
    solve_fixed,
    ambiguous_parameters,
)
from parikhseq.errors import (
    IncompatibleCandidate,
    InvalidGamma,
    SearchSpaceTooLarge,
    TemplateSyntaxError,
    UnknownLetter,
)
from parikhseq.matrix import count_subword, m_equivalent, parikh_matrix
from parikhseq.search import enumerate_class, is_ambiguous
from parikhseq.words import OrderedAlphabet, Word, project

from .conftest import CORPUS, PROJECTIONS_ABD, SIGMA2, SIGMA3, SIGMA4, W, naive_class

PHI = "cbcbabc^n dcbabcbc"


# -- templates ---------------------------------------------------------------

def test_parse_template():
    t = parse_template(PHI)
    assert t.alphabet == SIGMA4
    assert t.parameter == "n" and t.parameter_letter == "c"
    assert instantiate(t, 1).text == "cbcbabcdcbabcbc"
    assert instantiate(t, 0).text == "cbcbabdcbabcbc"
    assert instantiate(t, 3).text == "cbcbabcccdcbabcbc"


def test_parse_template_literal_exponents():
    t = parse_template("a^3 b c^2")
    assert t.parameters == ()
    assert instantiate(t, 9).text == "aaabcc"


def test_parse_template_multiple_names_on_one_letter():
    t = parse_template("c^n bcbab c^m dcbabcb c^p")
    assert t.parameters == ("n", "m", "p")
    assert instantiate(t, {"n": 1, "m": 2, "p": 1}).text == "cbcbabccdcbabcbc"
    with pytest.raises(TemplateSyntaxError):
        t.parameter


def test_parse_template_errors():
    with pytest.raises(TemplateSyntaxError):
        parse_template("a^x b^y")
    with pytest.raises(TemplateSyntaxError):
        parse_template("a^0 b")
    with pytest.raises(TemplateSyntaxError):
        parse_template("a^")
    with pytest.raises(UnknownLetter):
        parse_template("abx", SIGMA2)


def test_consecutive_patterns():
    assert [p.text for p in consecutive_patterns(SIGMA3)] == ["a", "b", "c", "ab", "bc", "abc"]


# -- projections -------------------------------------------------------------

def test_projection_candidates_reproduce_the_list():
    got = [u.text for u in consistent_projections(W("cbcbabcdcbabcbc"), "abd")]
    assert len(PROJECTIONS_ABD) == 36
    assert sorted(got) == sorted(PROJECTIONS_ABD)
    assert got == sorted(got, key=lambda x: ["abd".index(a) for a in x])


def test_projection_candidates_small():
    got = {u.text for u in consistent_projections(W("abdb"), "abd")}
    assert got == {"dabb", "adbb", "abdb", "abbd"}


def test_candidate_list_is_the_projected_class():
    # over {a,b,d} with c removed, the consecutive patterns are a, b, d, ab
    sigma = OrderedAlphabet("abd")
    target = project(W("cbcbabcdcbabcbc"), "abd")
    perms = {"".join(p) for p in itertools.permutations(target.text)}
    keep = {
        p for p in perms
        if all(
            count_subword(p, v) == count_subword(target.text, v)
            for v in ("a", "b", "d", "ab")
        )
    }
    got = {u.text for u in consistent_projections(W("cbcbabcdcbabcbc"), "abd")}
    assert got == keep
    assert all(Word(sigma, x) for x in keep)


def test_invalid_gamma():
    with pytest.raises(InvalidGamma):
        consistent_projections(W("abcd"), "ab")
    with pytest.raises(InvalidGamma):
        consistent_projections(W("abcd"), "abcd")
    with pytest.raises(InvalidGamma):
        consistent_projections(W("ab", SIGMA2), "xa")


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="abcd", max_size=9), st.sampled_from("abcd"))
def test_candidates_cover_every_class_member(text, removed):
    w = W(text)
    gamma = [a for a in "abcd" if a != removed]
    cands = {u.text for u in consistent_projections(w, gamma)}
    for u in enumerate_class(w, 10**6):
        assert project(u, gamma).text in cands


# -- linear systems ----------------------------------------------------------

def test_system_for_the_own_projection():
    s = build_system(parse_template(PHI), "bbabdbabb", "c")
    assert len(s.variables) == 10 and len(s.equations) == 6
    assert [str(e.rhs) for e in s.equations] == ["k+5", "3k+15", "k+2", "k+11", "3k+1", "k"]
    assert s.equations[-1].coeffs == (0, 0, 0, 0, 1, 0, 0, 0, 0, 0)
    assert [a(2) for a in s.exclusion] == [1, 1, 0, 0, 2, 1, 0, 0, 1, 1]
    assert s.reassemble([a(2) for a in s.exclusion]).text == "cbcbabccdcbabcbc"
    assert "x5 = n" in s.pretty()


def test_system_for_a_foreign_projection():
    s = build_system(parse_template(PHI), "babbbdbab", "c")
    assert s.exclusion is None
    assert [len(solve_fixed(s, k)) for k in range(6)] == [6, 9, 0, 0, 0, 0]


def test_system_hand_computed():
    # w = a b, remove a, candidate b: x1 + x2 = 1 (|w|_a), x1 = 1 (|w|_ab)
    s = build_system(parse_template("ab", SIGMA2), "b", "a")
    assert [e.coeffs for e in s.equations] == [(1, 1), (1, 0)]
    assert [e.rhs(0) for e in s.equations] == [1, 1]
    assert solve_fixed(s, 0) == []  # the only solution is w itself
    s2 = build_system(parse_template("ba", SIGMA2), "b", "a")
    assert solve_fixed(s2, 0) == []


def test_incompatible_candidate():
    t = parse_template(PHI)
    with pytest.raises(IncompatibleCandidate):
        build_system(t, "babbbdbbab", "c")
    with pytest.raises(IncompatibleCandidate):
        build_system(t, "bbabcbabb", "c")


@pytest.mark.parametrize("cand", ["bbabdbabb", "babbbdbab", "abbbbbbad", "dbbbaabbb"])
def test_rhs_matches_counts(cand):
    t = parse_template(PHI)
    s = build_system(t, cand, "c")
    for k in (0, 1, 2, 3):
        w = instantiate(t, k)
        for e in s.equations:
            assert e.rhs(k) == count_subword(w, Word(SIGMA4, e.pattern))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=10, max_size=10))
def test_lhs_matches_counts_of_reassembled_word(gaps):
    s = build_system(parse_template(PHI), "bbabdbabb", "c")
    w = s.reassemble(gaps)
    for e in s.equations:
        lhs = sum(c * x for c, x in zip(e.coeffs, gaps))
        assert lhs == count_subword(w, Word(SIGMA4, e.pattern))


def test_solve_fixed_hand_system():
    # x1 + x2 + x3 = k and 2x1 + x2 = k; the template itself is (0, k, 0)
    s = build_system(parse_template("b a^k b", SIGMA2), "bb", "a")
    assert [e.coeffs for e in s.equations] == [(1, 1, 1), (2, 1, 0)]
    assert solve_fixed(s, 2) == [(1, 0, 1)]
    assert s.reassemble((1, 0, 1)).text == "abba"
    assert solve_fixed(s, 4) == [(1, 2, 1), (2, 0, 2)]
    assert solve_fixed(s, 4, max_solutions=1) == [(1, 2, 1)]


def test_solve_fixed_solutions_are_sound():
    t = parse_template(PHI)
    for cand in PROJECTIONS_ABD:
        s = build_system(t, cand, "c")
        for k in (0, 1, 2):
            for sol in solve_fixed(s, k):
                u = s.reassemble(sol)
                assert m_equivalent(u, instantiate(t, k)) and u != instantiate(t, k)


def test_solve_fixed_cap():
    s = build_system(parse_template("b a^k b a^k b", SIGMA2), "bbb", "a")
    with pytest.raises(SearchSpaceTooLarge):
        solve_fixed(s, 50, cap=10)


def test_affine():
    a = Affine(2, 3)
    assert a(4) == 14 and str(a) == "3k+2"
    assert (a + Affine(1, -1)).to_dict() == {"const": 3, "k": 2}
    assert a.scale(2) == Affine(4, 6)
    assert str(Affine(0, 0)) == "0" and str(Affine(-1, 1)) == "k-1"


# -- parameter scans ---------------------------------------------------------

def test_scan_of_the_main_family():
    assert ambiguous_parameters(parse_template(PHI), "c", 8) == {1}


def test_scan_with_parameter_in_two_places():
    t = parse_template("c^k bcbab c^k dcbabcbc")
    assert ambiguous_parameters(t, "c", 4) == {1, 2, 3, 4}
    assert ambiguous_parameters(t, "c", 8) == set(range(1, 9))
    for k in range(1, 6):
        assert is_ambiguous(instantiate(t, k)).ambiguous




@pytest.mark.parametrize("template, removed", CORPUS)
def test_engines_agree_on_corpus(template, removed):
    t = parse_template(template)
    scan = ambiguous_parameters(t, removed, 4)
    for k in range(1, 5):
        assert is_ambiguous(instantiate(t, k)).ambiguous == (k in scan), k


def test_scan_one_letter_alphabet():
    assert ambiguous_parameters(parse_template("a^k"), "a", 5) == set()


def test_default_removed_letter():
    assert default_removed_letter(W("cbcbabcdcbabccc")) == "c"
    # six b and six c: the tie goes to the smaller letter
    assert default_removed_letter(W("cbcbabcdcbabcbc")) == "b"
    assert default_removed_letter(W("abab")) == "a"


def test_decide_examples():
    v = decide(W("cbcbabcdcbabcbc"))
    assert v.verdict == "A" and m_equivalent(v.witness, W("cbcbabcdcbabcbc"))
    assert decide(W("cbabcdcbabc")).verdict == "U"
    assert decide(W("aaa", OrderedAlphabet("a"))).verdict == "U"


def test_decide_matches_oracle_on_small_words():
    for n in range(8):
        for p in itertools.product("abc", repeat=n):
            w = W("".join(p), SIGMA3)
            for removed in "abc":
                v = decide(w, removed)
                assert (v.verdict == "A") == (len(naive_class(w)) >= 2)
                if v.witness is not None:
                    assert v.witness != w and parikh_matrix(v.witness) == parikh_matrix(w)


# -- residue structure -------------------------------------------------------

def test_residue_examples():
    r = detect_residue_structure({1}, 8)
    assert (r.threshold, r.modulus, r.residues) == (2, 1, frozenset())
    assert r.eventually_infeasible and r.confidence == "proved-window"
    r = detect_residue_structure(range(2, 21, 2), 20)
    assert (r.threshold, r.modulus, r.residues) == (2, 2, frozenset({0}))
    r = detect_residue_structure({2, 4, 6, 8, 10, 12}, 13)
    assert (r.threshold, r.modulus, r.residues) == (2, 2, frozenset({0}))
    r = detect_residue_structure({1, 2, 3, 5, 7, 9, 11}, 12)
    assert (r.threshold, r.modulus, r.residues) == (3, 2, frozenset({1}))
    assert r.predicts(101) and not r.predicts(100)


def test_residue_too_short_window():
    r = detect_residue_structure({3, 6}, 7)
    assert r.confidence == "inconclusive"


def test_residue_rejects_out_of_window():
    with pytest.raises(ValueError):
        detect_residue_structure({0}, 5)
    with pytest.raises(ValueError):
        detect_residue_structure({6}, 5)


def test_residue_to_dict():
    d = ResidueStructure(2, 2, frozenset({0}), "proved-window").to_dict()
    assert d == {"threshold": 2, "modulus": 2, "residues": [0], "confidence": "proved-window"}


def planted(n0, d, residues, prefix, bound):
    return {k for k in range(1, bound + 1) if (k in prefix if k < n0 else k % d in residues)}


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 6),
    st.integers(1, 3),
    st.data(),
)
def test_planted_structure_is_recovered(n0, d, data):
    residues = data.draw(st.sets(st.integers(0, d - 1)))
    prefix = data.draw(st.sets(st.integers(1, 6)))
    bound = n0 + 6 * d + data.draw(st.integers(0, 6))
    feasible = planted(n0, d, residues, prefix, bound)
    r = detect_residue_structure(feasible, bound)
    assert r.confidence == "proved-window"
    for k in range(r.threshold, bound + 1):
        assert r.predicts(k) == (k in feasible)
    # the planted tail is explained by the recovered structure
    for k in range(max(n0, r.threshold), bound + 1):
        assert r.predicts(k) == (k % d in residues)


def smaller_period_fits_tail(feasible, bound, d):
    """True when some d' < d is a period of the last 3d' values."""
    for e in range(1, d):
        lo = bound - 3 * e + 1
        if lo >= 1 and all((k in feasible) == (k + e in feasible) for k in range(lo, bound - e + 1)):
            return True
    return False


def test_planted_larger_moduli():
    # a window of three periods cannot tell d from a smaller d' that happens
    # to fit the last 3d' values; pick bounds where no such d' exists
    rng = random.Random(7)
    checked = 0
    for d in (4, 5, 7):
        for _ in range(20):
            residues = frozenset(rng.sample(range(d), rng.randint(1, d - 1)))
            if any(all((r + e) % d in residues for r in residues) for e in range(1, d)):
                continue  # the planted pattern has a smaller period
            n0 = rng.randint(1, 5)
            for bound in range(n0 + 6 * d, n0 + 8 * d):
                feasible = planted(n0, d, residues, set(), bound)
                if smaller_period_fits_tail(feasible, bound, d):
                    continue
                r = detect_residue_structure(feasible, bound)
                assert r.modulus == d and r.residues == residues and r.threshold <= n0 + d
                checked += 1
    assert checked > 50
