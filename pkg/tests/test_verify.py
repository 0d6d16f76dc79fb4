from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from circrep import verify as V
from circrep.morphisms import MU, PSI
from circrep.report import ClaimReport
from circrep.words import PowerThreshold

F = Fraction
THRESHOLDS = [PowerThreshold(2), PowerThreshold(2, True), PowerThreshold(F(5, 2)),
              PowerThreshold(3), PowerThreshold(F(13, 4), True)]


def naive_pair_violation(members, th, bound):
    facs = set()
    for m in members:
        facs |= oracles.factors(m)
    return any(oracles.violates(len(a + b), oracles.period(a + b), th.value, th.strict)
               for a in facs for b in facs if len(a) + len(b) <= bound)


def test_check_radius():
    assert V.CheckRadius(15).radius == 330
    assert V.CheckRadius(4, constant_c=30).radius == 120


@pytest.mark.parametrize("p,th,length", [(2, PowerThreshold(3), 6), (4, PowerThreshold(F(13, 4), True), 14),
                                         (4, PowerThreshold(F(13, 4)), 13), (3, PowerThreshold(2, True), 7)])
def test_min_violating_length(p, th, length):
    assert V.min_violating_length(p, th) == length
    assert th.violated_by(length, p) and not th.violated_by(length - 1, p)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.text(alphabet="012", min_size=7, max_size=7), min_size=1, max_size=3),
       st.integers(2, 8), st.sampled_from(THRESHOLDS))
def test_pair_products_match_brute_force(members, bound, th):
    hit = V.pair_product_violation(members, th, bound)
    assert (hit is not None) == naive_pair_violation(members, th, bound)
    if hit is not None:
        g1, g2 = hit["parts"]
        assert any(g1 in m for m in members) and any(g2 in m for m in members)
        assert len(hit["product"]) <= bound


def test_pair_products_on_squarefree_members():
    # members of a squarefree word: no violation at 2+, but squares appear as products
    members = ["0121021", "1210212", "2102120", "1020121"]
    assert V.pair_product_violation(members, PowerThreshold(2), 8) is not None
    assert V.pair_product_violation(members, PowerThreshold(4), 8) is None


def test_pair_products_need_threshold_two():
    with pytest.raises(ValueError):
        V.pair_product_violation(["012"], PowerThreshold(F(3, 2)), 3)
    with pytest.raises(ValueError):
        V.pair_product_violation(["012"], PowerThreshold(3), 9)


def check_report(report, passed):
    assert isinstance(report, ClaimReport)
    assert report.passed is passed
    assert report.verdict == ("pass" if passed else "fail")
    if passed:
        assert report.witnesses == [] or report.claim_id in ("thue-morse", "rti2", "search-147",
                                                             "search-120")
    else:
        assert report.witnesses
    d = report.to_dict()
    assert set(d) == {"claim_id", "statement", "verdict", "witnesses", "parameters", "stats", "notes"}


def test_tables_claim():
    check_report(V.verify_morphism_tables(), True)
    report = V.verify_morphism_tables(psi=PSI.replace_symbol(3, 0, 1))
    check_report(report, False)
    assert report.stats["checks"]["psi_checksum"] is False


def test_psi_squarefree_claim():
    report = V.verify_psi_squarefree(prefix_length=5000)
    check_report(report, True)
    assert report.parameters["bound"] == 16
    mutated = PSI.replace_symbol(0, 2, 0)
    assert mutated.images[0] == "0405"
    check_report(V.verify_psi_squarefree(mutated, prefix_length=5000), False)


def test_psi_squarefree_non_prolongable():
    report = V.verify_psi_squarefree(PSI.replace_symbol(0, 0, 1), prefix_length=100)
    check_report(report, False)
    assert "precondition" in report.witnesses[0]


def test_psi_cubefree_small_bound():
    report = V.verify_psi_circularly_cubefree(bound=12, prefix_length=3000)
    check_report(report, True)
    assert report.parameters["bound"] == 12 and report.parameters["window"] == 12


def test_main_word_small_radius():
    report = V.verify_main_word(constant_c=6, prefix_length=3000)
    check_report(report, True)
    assert report.parameters["radius"] == 90 and report.notes
    check_report(V.verify_main_word(mu=MU.replace_symbol(0, 7, 0), constant_c=6,
                                    prefix_length=3000), False)


def test_search_claim_with_explicit_golden():
    check_report(V.verify_147(square_bound=120, golden=147), True)
    check_report(V.verify_147(square_bound=120, golden=146), False)


def test_thue_morse_small():
    report = V.verify_thue_morse_binary(log_prefix=10)
    check_report(report, True)
    assert report.stats["longest_binary_length"] == 11


def test_bound_theorem_small():
    report = V.verify_bound_theorem_desk(binary_len=8, ternary_len=6)
    check_report(report, True)
    assert report.stats["words_checked"]["k2"] > 0


def test_rti2_small():
    report = V.verify_rti2(2)
    check_report(report, True)
    assert [row["pexp"] for row in report.stats["rows"]] == ["2", "4"]
    with pytest.raises(ValueError):
        V.verify_rti2(1)


def test_verify_all_skips_long(monkeypatch):
    calls = []
    fake = {cid: (lambda cid=cid: calls.append(cid) or ClaimReport(cid, "", True))
            for cid in V.CLAIMS}
    monkeypatch.setattr(V, "CLAIMS", fake)
    reports = V.verify_all(skip_long=True)
    assert not set(calls) & V.LONG_CLAIMS
    assert len(reports) == len(fake) - len(V.LONG_CLAIMS)
    calls.clear()
    assert len(V.verify_all()) == len(fake) and "search-147" in calls
