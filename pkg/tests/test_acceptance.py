"""Acceptance gate: one test per criterion.  The conftest prints a
pass/fail line for each after the run."""

import random
import time
from fractions import Fraction
from itertools import product

import oracles
from circrep import verify as V
from circrep.morphisms import MU, PSI, is_strongly_synchronizing
from circrep.search import SearchConfig, incremental_violation_check
from circrep.words import (PowerThreshold, Word, characterization_sets,
                           circular_critical_exponent, exponent, is_circularly_power_free,
                           is_power_free, parse_word, render, shortest_period)

F = Fraction


def mutations(h):
    for a in range(h.source_alphabet_size):
        for i in range(h.q):
            for s in range(h.target_alphabet_size):
                if s != h.image(a)[i]:
                    yield (a, i, s), h.replace_symbol(a, i, s)


def test_criterion_01_exact_exponents():
    assert exponent(parse_word("alfalfa")[0]) == F(7, 3)
    assert exponent(parse_word("ababa")[0]) == F(5, 2)


def test_criterion_02_dividing():
    w, letters = parse_word("dividing")
    value, wit = circular_critical_exponent(w)
    assert value == F(5, 2)
    assert render(wit.factor, letters) == "ididi" and wit.replay(w)
    assert is_circularly_power_free(w, PowerThreshold(3))


def test_criterion_03_ssm_and_mutations():
    t0 = time.perf_counter()
    assert is_strongly_synchronizing(MU) and is_strongly_synchronizing(PSI)
    assert V.verify_morphism_tables().passed
    assert time.perf_counter() - t0 < 1
    for name, h in (("mu", MU), ("psi", PSI)):
        for where, g in mutations(h):
            report = V.verify_morphism_tables(**{name: g})
            assert not report.passed, (name, where)
    # the substantive claims (not just the checksum) catch a sample as well
    rng = random.Random(3)
    for where, g in rng.sample(list(mutations(PSI)), 12):
        caught = (not is_strongly_synchronizing(g)
                  or not V.verify_psi_squarefree(g, prefix_length=2000).passed
                  or not V.verify_psi_circularly_cubefree(g, prefix_length=2000).passed
                  or not V.verify_main_word(psi=g, constant_c=6, prefix_length=0).passed)
        assert caught, where
    for where, g in rng.sample(list(mutations(MU)), 12):
        caught = (not is_strongly_synchronizing(g)
                  or not V.verify_main_word(mu=g, constant_c=6, prefix_length=0).passed)
        assert caught, where


def test_criterion_04_psi_squarefree():
    report = V.verify_psi_squarefree(prefix_length=10 ** 5)
    assert report.passed, report.witnesses
    assert report.parameters["bound"] == 16 and report.parameters["prefix_length"] == 10 ** 5
    assert report.stats["wall_time_ms"] < 60_000


def test_criterion_05_psi_circularly_cubefree():
    report = V.verify_psi_circularly_cubefree(bound=66)
    assert report.passed, report.witnesses
    assert report.parameters["window"] == 66
    assert report.stats["wall_time_ms"] < 60_000


def test_criterion_06_search_147():
    report = V.verify_147()
    assert report.passed, report.stats
    assert report.stats["longest_length"] == 147 and report.stats["exhausted"]
    t0 = time.perf_counter()
    ci = V.verify_147(square_bound=50)
    assert ci.passed and ci.stats["longest_length"] == V.SEARCH_GOLDENS[50]
    assert time.perf_counter() - t0 < 300


def test_criterion_07_main_word():
    report = V.verify_main_word()
    assert report.passed, report.witnesses
    assert report.parameters["radius"] == 330
    assert report.parameters["prefix_length"] == 10 ** 5


def test_criterion_08_thue_morse():
    report = V.verify_thue_morse_binary(log_prefix=14, window=64)
    assert report.passed, report.witnesses
    assert report.stats["window_max_is_4"]
    length, witness = oracles.longest_free(2, 4, circular=True)
    assert length == report.stats["longest_binary_length"] == V.TM_SEARCH_GOLDEN


def test_criterion_09_property_suites():
    for k, top in ((2, 8), (3, 6)):
        for n in range(1, top + 1):
            for t in product("012"[:k], repeat=n):
                a, b, c, d = characterization_sets(Word.parse("".join(t), k))
                assert a == b == c == d

    rng = random.Random(2024)
    settings = [(F(3, 2), False, True, 0), (2, False, True, 0), (2, True, True, 0),
                (F(5, 2), False, True, 0), (F(13, 4), False, True, 0), (3, True, True, 6),
                (F(7, 4), False, False, 0), (2, False, False, 8), (F(7, 2), False, True, 10)]
    checked = 0
    while checked < 10 ** 4:
        alpha, strict, circular, bound = rng.choice(settings)
        th = PowerThreshold(F(alpha), strict)
        cfg = SearchConfig(3, th, circular=circular, square_bound=bound or None)
        text = ""
        for _ in range(rng.randint(0, 13)):
            options = [c for c in "012" if incremental_violation_check(
                Word.parse(text + c, 3), len(text) + 1, cfg) is None]
            if not options:
                break
            text += rng.choice(options)
        text += rng.choice("012")
        w = Word.parse(text, 3)
        fast = incremental_violation_check(w, len(text), cfg)
        full = is_circularly_power_free(w, th) if circular else is_power_free(w, th)
        short_square = any(text[len(text) - 2 * p:len(text) - p] == text[len(text) - p:]
                           for p in range(1, len(text) // 2 + 1) if 2 * p < bound)
        assert (fast is None) == (bool(full) and not short_square), (text, alpha, strict, circular)
        if fast is not None:
            assert fast.replay(w)
        checked += 1

    for k in (1, 2, 3):
        for n in range(1, 13):
            for t in product("012"[:k], repeat=n):
                s = "".join(t)
                assert shortest_period(Word.parse(s, k)) == oracles.period(s)

    report = V.verify_bound_theorem_desk(binary_len=12, ternary_len=10)
    assert report.passed, report.witnesses


def test_criterion_10_rti2():
    report = V.verify_rti2(3)
    assert report.passed
    assert [row["pexp"] for row in report.stats["rows"]] == ["2", "4", "6"]


def test_criterion_11_rtc4_evidence():
    report = V.verify_rtc4_evidence((0, 20, 50))
    assert report.passed, report.witnesses
    lengths = {run["square_bound"]: run["longest_length"] for run in report.witnesses}
    assert lengths == V.RTC4_GOLDENS
    for run in report.witnesses:
        assert run["exhausted"]
        w = Word.parse(run["witness"], 4)
        assert is_circularly_power_free(w, PowerThreshold(F(5, 2)))
