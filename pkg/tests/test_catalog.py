import pytest

from prequant import catalog
from prequant.catalog import (GroupId, PinnedReduction, TorFormula, catalog_groups, check_level,
                              l0, parse_group_spec, presentation, su_quotient_l0, table)
from prequant.errors import ConsistencyFailure, DomainError, IrrelevantPrime, UsageError


def brute_ord(x, k):
    """Smallest m >= 1 with m*x = 0 in Z_k, by search."""
    m = 1
    while (m * x) % k:
        m += 1
    return m


# frozen published values, family by family
def expected(g):
    f, n = g.family, g.n
    if f == "PU":
        return n
    if f == "SUmodZk":
        return brute_ord(n // g.k, g.k)
    if f == "PSp":
        return 1 if n % 2 == 0 else 2
    if f == "SO":
        return 1
    if f == "PO_even":
        return 2 if n % 2 == 0 else 4
    if f == "Ss":
        return 1 if n % 2 == 0 else 2
    return {"PE6": 3, "PE7": 2}[f]


@pytest.mark.parametrize("g", catalog_groups(12), ids=str)
def test_l0_matches_published_value(g):
    assert l0(g).value == expected(g)


def test_table_4_rows():
    rows = {str(r.group): r.value for r in table(4)}
    assert rows == {"PU(2)": 2, "PU(3)": 3, "PU(4)": 4, "SU(4)/Z_2": 1,
                    "PSp(1)": 2, "PSp(2)": 1, "PSp(3)": 2, "PSp(4)": 1,
                    "PO(8)": 2, "Ss(8)": 1, "Ss(12)": 2, "Ss(16)": 1, "PE6": 3, "PE7": 2}


def test_su_quotient_examples():
    assert su_quotient_l0(4, 2) == 1
    assert su_quotient_l0(8, 4) == 2
    assert su_quotient_l0(12, 6) == 3
    assert su_quotient_l0(9, 3) == 1
    assert su_quotient_l0(6, 6) == 6


def test_su_quotient_consistency_failure(monkeypatch):
    monkeypatch.setattr(catalog, "tor_pushforward_order", lambda n, k: 99)
    with pytest.raises(ConsistencyFailure):
        su_quotient_l0(8, 4)


def test_pinned_mismatch_is_a_consistency_failure(monkeypatch):
    g = GroupId("PU", 6)
    data = presentation(g, 2)
    bad = PinnedReduction(data.lift.result, 4, data.lift.citation)
    fake = catalog.PrimeData(data.hopf, data.rules, bad)
    entry = catalog.catalog_entry(g)
    patched = catalog.CatalogEntry(entry.group, entry.primes, {**entry.per_prime, 2: fake})
    monkeypatch.setattr(catalog, "catalog_entry", lambda gg, cap=None: patched)
    with pytest.raises(ConsistencyFailure):
        l0(g)


def test_breakdown_and_provenance():
    r = l0(GroupId("PU", 6))
    assert [(b.prime, b.order) for b in r.breakdown] == [(2, 2), (3, 3)]
    assert r.breakdown[0].provenance.startswith("pinned(")
    assert r.breakdown[1].provenance == "computed"
    r = l0(GroupId("SUmodZk", 12, 6))
    assert all(b.provenance == "tor-formula" for b in r.breakdown)
    assert r.value == 3
    assert l0(GroupId("SO", 8)).breakdown[0].order == 1


@pytest.mark.parametrize("n", range(2, 13))
def test_su_breakdown_matches_valuation_formula(n):
    for k in range(2, n):
        if n % k:
            continue
        r = l0(GroupId("SUmodZk", n, k))
        for b in r.breakdown:
            s = catalog.valuation(k, b.prime)
            v = catalog.valuation(n, b.prime)
            assert b.order == b.prime ** max(0, 2 * s - v)


@pytest.mark.parametrize("text,want", [
    ("SO:7", GroupId("SO", 7)), ("SU:12/4", GroupId("SUmodZk", 12, 4)),
    ("SU:5/5", GroupId("PU", 5)), ("PU:2", GroupId("PU", 2)), ("PSp:1", GroupId("PSp", 1)),
    ("PO:8", GroupId("PO_even", 4)), ("PO:14", GroupId("PO_even", 7)),
    ("Ss:8", GroupId("Ss", 2)), ("Ss:20", GroupId("Ss", 5)), ("PE6", GroupId("PE6")),
    (" PE7 ", GroupId("PE7")),
])
def test_parse_group_spec(text, want):
    assert parse_group_spec(text) == want
    assert parse_group_spec(want.spec) == want


@pytest.mark.parametrize("text", ["PO:6", "PO:9", "Ss:10", "Ss:4", "SO:6", "PU:1", "SU:12/5",
                                  "SU:4", "PU:3/3", "SU:6/1", "E8", "PE6:1", "pu:3", ""])
def test_parse_group_spec_rejects(text):
    with pytest.raises(UsageError):
        parse_group_spec(text)


def test_groupid_validation():
    with pytest.raises(DomainError):
        GroupId("SO", 5)
    with pytest.raises(DomainError):
        GroupId("SUmodZk", 6, 4)
    with pytest.raises(DomainError):
        GroupId("G2")


def test_relevant_primes():
    assert GroupId("PU", 12).relevant_primes == [2, 3]
    assert GroupId("SUmodZk", 12, 4).relevant_primes == [2]
    assert GroupId("PO_even", 5).relevant_primes == [2]
    assert GroupId("PE6").relevant_primes == [3]
    assert GroupId("PE7").relevant_primes == [2]


def test_irrelevant_prime():
    with pytest.raises(IrrelevantPrime):
        presentation(GroupId("PU", 4), 3)
    with pytest.raises(IrrelevantPrime):
        presentation(GroupId("PE6"), 2)


def test_presentation_contents():
    d = presentation(GroupId("PU", 3), 3)
    names = [g.name for g in d.pres.generators]
    assert names[:3] == ["x1", "y2", "x3"]
    assert d.pres.prime == 3
    assert str(d.lift.cls) == "x3"
    assert isinstance(presentation(GroupId("SUmodZk", 8, 4), 2).lift, TorFormula)
    pe6 = presentation(GroupId("PE6"), 3).pres
    assert [g.name for g in pe6.generators if g.degree <= 3] == ["x1", "y2", "x3"]


def test_degree_cap_parameter():
    d = presentation(GroupId("PU", 9), 3, degree_cap=12)
    assert d.pres.degree_cap == 12
    assert max(g.degree for g in d.pres.generators) <= 12


def test_check_level_examples():
    ok, why = check_level(GroupId("SUmodZk", 8, 4), 3, 2)
    assert not ok and "does not divide" in why
    assert check_level(GroupId("PU", 6), 12, 1)[0]
    assert not check_level(GroupId("PU", 6), 9, 1)[0]
    assert check_level(GroupId("SO", 9), 1, 5)[0]
    assert check_level(GroupId("PO_even", 5), 8, 3)[0]
    assert not check_level(GroupId("PO_even", 5), 6, 3)[0]


def test_check_level_is_genus_independent():
    for g in catalog_groups(8):
        for level in range(1, 13):
            answers = {check_level(g, level, genus)[0] for genus in (1, 2, 3, 7)}
            assert len(answers) == 1


def test_check_level_domain():
    with pytest.raises(DomainError):
        check_level(GroupId("PU", 3), 0, 1)
    with pytest.raises(DomainError):
        check_level(GroupId("PU", 3), 3, 0)


def test_citations_have_no_duplicates():
    r = l0(GroupId("PU", 2))
    assert len(r.citations) == 1
    assert l0(GroupId("PU", 3)).citations == []
