import re
from functools import lru_cache, reduce

import pytest

from cosetlab import corpus
from cosetlab.presentation import parse_presentation


@lru_cache(maxsize=None)
def run(suite):
    (v,) = corpus.run_suite(suite)
    return v


def label_order(label):
    """Order implied by an identification label."""
    if label == "1":
        return 1
    m = re.fullmatch(r"PSL\(2,(\d+)\)", label)
    if m:
        q = int(m.group(1))
        return q * (q * q - 1) // (2 if q % 2 else 1)
    if label == "S3":
        return 6
    if re.fullmatch(r"D\d+", label):
        return int(label[1:])
    factors = [int(n) for n in re.findall(r"C(\d+)", label)]
    return reduce(lambda a, b: a * b, factors, 1)


def test_expected_file_loads():
    cases = corpus.load_cases()
    assert len({c.key for c in cases}) == len(cases)
    assert {c.suite for c in cases} == set(corpus.SUITES)


@pytest.mark.parametrize("c", [c for c in corpus.load_cases() if c.expected_identification], ids=lambda c: c.key)
def test_expected_order_matches_expected_label(c):
    assert label_order(c.expected_identification) == c.expected_order


@pytest.mark.parametrize("c", [c for c in corpus.load_cases() if c.presentation() is not None], ids=lambda c: c.key)
def test_case_presentations_round_trip(c):
    p = c.presentation()
    assert parse_presentation(p.render()) == p


def test_lemma2_suite():
    v = run("lemma2")
    cases = v.by_key()
    for key, order, label in (("lemma2(8,8)", 4, "C4"), ("lemma2(8,9)", 36, "(C3 x C3) : C4"), ("lemma2(9,9)", 1, "1")):
        assert cases[key].status == corpus.PASS
        assert (cases[key].computed_order, cases[key].computed_identification) == (order, label)
    h98 = cases["lemma2(9,8)"]
    assert h98.status == corpus.DISCREPANCY
    assert h98.computed_order == 2448
    assert h98.expected_order == 3420
    assert v.ok


def test_discrepancy_never_hides_soundness_failures():
    res = corpus.CaseResult("k", "s")
    res.check("order", 1, 2)
    res.check("table sound (hlt)", [], ["broken"])
    assert res.finish(frozenset({"order"})).status == corpus.FAIL
    res = corpus.CaseResult("k", "s")
    res.check("order", 1, 2)
    assert res.finish(frozenset({"order"})).status == corpus.DISCREPANCY
    assert res.finish().status == corpus.FAIL


def test_lemma4_suite():
    v = run("lemma4")
    assert v.status == corpus.PASS and len(v.cases) == 4
    assert [c.computed_order for c in v.cases] == [4, 324, 1, 1]


def test_lemma1_sweep():
    rows = {r["n"]: r for r in corpus.dihedral_sweep(12)}
    assert [n for n, r in rows.items() if r["consistent"]] == [1, 3, 9]
    assert rows[9]["ab_order"] == 9
    assert rows[4]["commuting_involutions"]
    assert rows[5]["primes"] == [2, 5]
    assert run("lemma1").status == corpus.PASS


def test_lemma568_suite():
    v = run("lemma568")
    assert v.status == corpus.PASS
    with pytest.raises(ValueError):
        corpus.verify_lemma568("lemma2(9,8)")
    one = corpus.verify_lemma568("lemma4(8,9)")
    assert [c.key for c in one.cases] == ["lemma568:lemma4(8,9)"]


def test_theorems_suite():
    v = run("theorems")
    assert v.status == corpus.PASS
    assert len(v.cases) == 4


def test_suite_is_stable_modulo_timings():
    def strip(d):
        d = dict(d)
        d["cases"] = [{k: v for k, v in c.items() if k != "timings"} for c in d["cases"]]
        return d

    a = corpus.verify_lemma4().to_dict()
    b = corpus.verify_lemma4().to_dict()
    assert strip(a) == strip(b)


def test_exhaustion_is_reported_per_case():
    c = corpus.case("lemma2(8,9)")
    res = corpus.CaseResult(c.key, c.suite)
    e = corpus.enumerate_checked(res, c.presentation(), [], max_cosets=20)
    assert e.group is None
    assert res.finish().status == corpus.FAIL
    assert any("exhaustion" in n for n in res.notes)


def test_errors_become_failed_cases():
    c = corpus.case("lemma2(8,8)")

    def boom(res):
        raise RuntimeError("broken")

    res = corpus._guarded(c, boom)
    assert res.status == corpus.FAIL
    assert "broken" in res.checks[-1].computed


def test_mismatch_is_a_failure(monkeypatch):
    real = corpus.load_cases

    def tampered(suite=None):
        out = []
        for c in real(suite):
            if c.key == "lemma4(8,8)":
                c = corpus.CorpusCase(**{**c.__dict__, "expected_order": 8})
            out.append(c)
        return out

    monkeypatch.setattr(corpus, "load_cases", tampered)
    v = corpus.verify_lemma4()
    assert v.by_key()["lemma4(8,8)"].status == corpus.FAIL
    assert v.status == corpus.FAIL


def test_subgroup_order_bound():
    from cosetlab.presentation import builtin_presentation, parse_word

    p = builtin_presentation("lemma4(8,9)")
    assert corpus.subgroup_order_bound(p, [parse_word("t", p)]) == 4
    assert corpus.subgroup_order_bound(p, [parse_word("x", p)]) == 9
    assert corpus.subgroup_order_bound(p, [parse_word("t*x", p)]) == 8
    assert corpus.subgroup_order_bound(p, []) == 1
