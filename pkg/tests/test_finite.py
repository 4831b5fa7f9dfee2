import json
from fractions import Fraction

import pytest

from scaled_crystal.exceptions import BoundExceededError, InputError, ValidationError
from scaled_crystal.finite import (
    FiniteInverseSemigroup,
    b2,
    boundary_set,
    crystal,
    ecx,
    icx,
    is_filter,
    load_catalog,
    load_table,
    paterson,
    principal,
    restriction_iso_certificate,
    semicharacters,
    shipped_catalog,
    transversality_check,
    trivial_scale,
    validate,
)
from scaled_crystal.finite.catalog import (
    antichain_with_zero,
    b2_semigroup,
    chain,
    diamond,
    single_idempotent,
    symmetric_inverse_monoid,
)


def names(semigroup, indices):
    return {semigroup.names[i] for i in indices}


@pytest.fixture
def b2_entry():
    return b2(2)


def corrupted_b2():
    semigroup = b2_semigroup()
    scale = trivial_scale(semigroup)
    scale[semigroup.index("e12")] = Fraction(2)
    scale[semigroup.index("e21")] = Fraction(1)
    return semigroup, scale


def test_validate_b2(b2_entry):
    report = validate(b2_entry.semigroup, b2_entry.scale)
    assert report.ok


def test_validate_corrupted_scale():
    semigroup, scale = corrupted_b2()
    report = validate(semigroup, scale)
    assert not report.ok
    assert report.reason == "scale is not multiplicative"
    assert report.witness == {"g": "e12", "h": "e21", "gh": "e11", "N(gh)": "1/1", "N(g)N(h)": "2/1"}


def test_validate_bad_tables():
    not_associative = FiniteInverseSemigroup(("a", "b"), ((1, 0), (0, 0)))
    assert not validate(not_associative).ok
    left_zero = FiniteInverseSemigroup(("a", "b"), ((0, 0), (1, 1)))
    report = validate(left_zero)
    assert report.reason == "no unique inverse"


def test_validate_idempotent_scale():
    semigroup = chain(2).semigroup
    report = validate(semigroup, {0: Fraction(1), 1: Fraction(2)})
    assert not report.ok
    assert report.reason == "scale of an idempotent is not 1"


@pytest.mark.parametrize("entry", shipped_catalog(), ids=lambda e: e.name)
def test_shipped_catalog_is_valid(entry):
    assert validate(entry.semigroup, entry.scale).ok


def test_ecx_and_icx(b2_entry):
    s = b2_entry.semigroup
    assert names(s, ecx(s, b2_entry.scale)) == {"e22"}
    assert names(s, icx(s, b2_entry.scale)) == {"e22"}
    half = b2(Fraction(1, 2))
    assert names(half.semigroup, ecx(half.semigroup, half.scale)) == {"e11"}
    trivial = b2(1)
    assert names(s, ecx(s, trivial.scale)) == {"e11", "e22"}


def test_crystal_b2(b2_entry):
    result = crystal(b2_entry.semigroup, b2_entry.scale)
    assert result.semigroup.names == ("0", "e22")
    assert result.validation.ok
    assert result.origin == (None, b2_entry.semigroup.index("e22"))
    data = result.to_json(b2_entry.semigroup)
    assert data["ecx"] == ["e22"]
    assert data["crystal"]["table"] == [[0, 0], [0, 1]]


def test_crystal_of_trivial_scale_is_isomorphic():
    entry = symmetric_inverse_monoid(2)
    s = entry.semigroup
    result = crystal(s, entry.scale)
    assert len(result.semigroup) == len(s)
    cs = result.semigroup
    for g in cs.nonzero:
        for h in cs.nonzero:
            product = s.mul(result.origin[g], result.origin[h])
            expected = None if s.is_zero(product) else product
            assert result.origin[cs.mul(g, h)] == expected


def test_crystal_adjoins_zero():
    entry = chain(2)
    result = crystal(entry.semigroup, entry.scale)
    assert result.semigroup.names == ("0", "c0", "c1")
    assert result.semigroup.mul(1, 2) == 2


def test_crystal_rejects_invalid_input():
    semigroup, scale = corrupted_b2()
    with pytest.raises(ValidationError) as info:
        crystal(semigroup, scale)
    assert info.value.witness["gh"] == "e11"


def test_semicharacters():
    s = b2_semigroup()
    labels = [chi.label(s) for chi in semicharacters(s)]
    assert sorted(labels) == ["chi_e11", "chi_e22"]
    c = chain(2).semigroup
    assert sorted(chi.label(c) for chi in semicharacters(c)) == ["chi_c0", "chi_c1"]
    assert len(semicharacters(single_idempotent().semigroup)) == 1


@pytest.mark.parametrize("entry", shipped_catalog(), ids=lambda e: e.name)
def test_semicharacters_are_principal(entry):
    s = entry.semigroup
    expected = sorted({principal(s, p) for p in s.nonzero_idempotents})
    found = semicharacters(s)
    assert found == expected
    assert all(is_filter(s, chi.support) for chi in found)


def test_semicharacter_bound(monkeypatch):
    from scaled_crystal import SCALED_CRYSTAL_CONFIG

    monkeypatch.setitem(SCALED_CRYSTAL_CONFIG, "semicharacter_bound", 1)
    with pytest.raises(BoundExceededError):
        semicharacters(b2_semigroup())


def test_boundary_b2(b2_entry):
    s = b2_entry.semigroup
    boundary = boundary_set(s, b2_entry.scale)
    assert [chi.label(s) for chi in boundary.complement] == ["chi_e22"]
    assert boundary.agree and boundary.lemma_holds and not boundary.empty


def test_boundary_with_empty_ecx(b2_entry):
    boundary = boundary_set(b2_entry.semigroup, b2_entry.scale, ecx=frozenset())
    assert boundary.empty
    assert boundary.lemma_holds


@pytest.mark.parametrize("entry", shipped_catalog(), ids=lambda e: e.name)
def test_boundary_lemma_on_catalog(entry):
    assert boundary_set(entry.semigroup, entry.scale).lemma_holds


def test_transversality(b2_entry):
    s = b2_entry.semigroup
    report = transversality_check(s, b2_entry.scale)
    assert report.holds
    assert report.witnesses == {"e11": "e21", "e22": "e22"}


def test_transversality_failure():
    entry = antichain_with_zero()
    q = entry.semigroup.index("q")
    report = transversality_check(entry.semigroup, entry.scale, frozenset({q}))
    assert not report.holds
    assert report.failures == ["p"]


def test_paterson_groupoid(b2_entry):
    groupoid = paterson(b2_entry.semigroup)
    assert len(groupoid.objects) == 2
    assert len(groupoid) == 4
    report = groupoid.verify()
    assert report.passed and report.arrows == 4


@pytest.mark.parametrize("entry", [b2(2), b2(Fraction(1, 2)), diamond(), symmetric_inverse_monoid(2)], ids=lambda e: e.name)
def test_restriction_certificate(entry):
    certificate = restriction_iso_certificate(entry.semigroup, entry.scale)
    assert certificate.passed, certificate.failure
    assert certificate.restricted_arrows == certificate.crystal_arrows


def test_load_table_round_trip(b2_entry):
    data = json.loads(json.dumps(b2_entry.to_json()))
    semigroup, scale = load_table(data)
    original = b2_entry.semigroup
    assert (semigroup.names, semigroup.table, semigroup.zero) == (original.names, original.table, original.zero)
    assert scale == b2_entry.scale


def test_load_table_errors():
    with pytest.raises(InputError):
        load_table({"elements": ["a"]})
    with pytest.raises(InputError):
        load_catalog({"tables": []})


def test_load_catalog():
    catalog = load_catalog({"semigroups": [b2(3).to_json(), chain(3).to_json()]})
    assert [entry.name for entry in catalog] == ["b2_lambda_3", "chain_3"]
    assert catalog[0].scale[catalog[0].semigroup.index("e12")] == 3
