"""Invariant bundles and equivalence verdicts for monoid maps."""

from barloop.monoids import Exhausted, FiniteMonoid, MonoidMap
from barloop.weqcheck import (
    bundled_complexes,
    bundled_monoids,
    invariants,
    weq_verdict,
)


def test_invariant_bundle_of_idempotent_pair():
    b = invariants(FiniteMonoid.idempotent_pair(), hi=4)
    # nerve is contractible: point homology
    assert b.nerve_homology[0].group() == (1, ())
    for n in range(1, 4):
        assert b.nerve_homology[n].is_zero()
    assert not isinstance(b.completion, Exhausted)
    assert b.completion.order == 1
    assert b.grouplike is False


def test_invariant_bundle_of_cyclic_group():
    b = invariants(FiniteMonoid.cyclic(2), hi=4)
    assert b.nerve_homology[1].group() == (0, (2,))
    assert b.nerve_homology[3].group() == (0, (2,))
    assert b.completion.order == 2
    assert b.grouplike is True


def test_collapse_of_idempotent_pair_is_certified():
    f = MonoidMap.collapse(FiniteMonoid.idempotent_pair())
    v = weq_verdict(f, hi=4)
    assert v.kind == "certified-equivalent"
    assert v.certificate["completion_order"] == 1


def test_collapse_of_cyclic_group_is_distinguished_by_h1():
    f = MonoidMap.collapse(FiniteMonoid.cyclic(2))
    v = weq_verdict(f, hi=4)
    assert v.kind == "distinguished"
    assert v.witness["invariant"] == "nerve_homology"
    assert v.witness["degree"] == 1
    assert v.witness["source"] == "Z/2"


def test_identity_maps_are_certified_on_all_bundled_monoids():
    for name, m in bundled_monoids().items():
        v = weq_verdict(MonoidMap.identity(m), hi=3)
        assert v.kind == "certified-equivalent", (name, v.kind, v.witness)


def test_trivial_self_map_of_cyclic_group_is_distinguished():
    # g -> 1 is a homomorphism z2 -> z2; tables agree, the map does not
    m = FiniteMonoid.cyclic(2)
    f = MonoidMap(m, m, [0, 0]).validate()
    v = weq_verdict(f, hi=4)
    assert v.kind == "distinguished"
    assert v.witness["invariant"] in ("nerve_chain_map", "group_completion_map")


def test_left_zero_collapse_is_certified():
    f = MonoidMap.collapse(FiniteMonoid.left_zero_with_unit(2))
    v = weq_verdict(f, hi=3)
    assert v.kind == "certified-equivalent"


def test_inclusion_of_trivial_into_cyclic_is_distinguished():
    m = FiniteMonoid.trivial()
    z3 = FiniteMonoid.cyclic(3)
    f = MonoidMap(m, z3, [0]).validate()
    v = weq_verdict(f, hi=4)
    assert v.kind == "distinguished"
    assert v.witness["invariant"] == "nerve_homology"


def test_verdicts_are_monotone_in_the_window():
    certified = MonoidMap.collapse(FiniteMonoid.idempotent_pair())
    refuted = MonoidMap.collapse(FiniteMonoid.cyclic(2))
    for hi in (2, 3, 4):
        assert weq_verdict(certified, hi=hi).kind == "certified-equivalent"
        assert weq_verdict(refuted, hi=hi).kind == "distinguished"


def test_bundle_serializes():
    d = invariants(FiniteMonoid.cyclic(2), hi=3).to_json_dict()
    assert d["group_completion"]["status"] == "completed"
    assert d["group_completion"]["order"] == 2
    assert d["grouplike"] is True
    assert d["nerve_homology"]["1"]["torsion"] == ["2"]


def test_verdict_serializes():
    v = weq_verdict(MonoidMap.collapse(FiniteMonoid.cyclic(2)), hi=3)
    d = v.to_json_dict()
    assert d["verdict"] == "distinguished"
    assert d["witness"]["degree"] == 1


def test_bundled_registries():
    ms = bundled_monoids()
    assert set(ms) == {"trivial", "z2", "z3", "z4", "idempotent", "left-zero"}
    ks = bundled_complexes()
    assert "sphere2" in ks and "boundary-delta3-collapsed" in ks
    for k in ks.values():
        assert k.reduced
