"""Loop group levels, fundamental group presentations, and the degree-zero
ring comparison."""

import pytest

from barloop.dgcoalg import chains
from barloop.errors import NotReduced
from barloop.exactlin import homology_window
from barloop.loopgroup import (
    abelianization,
    free_inverse,
    free_reduce,
    group_ring,
    h0_compare,
    kan_loop_group,
    pi1_presentation,
)
from barloop.monoids import FiniteMonoid, group_completion
from barloop.simplicial import (
    boundary_delta3,
    collapsed_boundary_delta3,
    localized_nerve,
    minimal_sphere,
    nerve,
    point,
    rp2_model,
)


def test_free_words_reduce():
    w = free_reduce([("a", 1), ("b", 1), ("b", -1), ("a", -1), ("c", 1)])
    assert w == (("c", 1),)
    assert free_inverse(w) == (("c", -1),)
    assert free_reduce(w + free_inverse(w)) == ()


def test_point_loop_group_is_trivial():
    for level in kan_loop_group(point(), 3):
        assert level.rank() == 0


def test_circle_loop_group_levels():
    levels = kan_loop_group(minimal_sphere(1), 3)
    assert [lv.rank() for lv in levels] == [1, 1, 1, 1]
    assert levels[0].labels == ["t"]
    assert levels[1].labels == ["s1*t"]
    assert levels[2].labels == ["s2*s1*t"]
    # the one generator is sent to the one below by every face
    assert levels[1].faces[0] == [(("t", 1),), (("t", 1),)]
    assert levels[2].faces[0] == [(("s1*t", 1),)] * 3
    # degeneracies shift the tower up
    assert levels[0].degeneracies[0] == [(("s1*t", 1),)]


def test_circle_level_zero_only():
    levels = kan_loop_group(minimal_sphere(1), 0)
    assert len(levels) == 1
    assert levels[0].rank() == 1
    assert levels[0].labels == ["t"]
    assert levels[0].faces == [[]]


def test_sphere_loop_group_levels():
    levels = kan_loop_group(minimal_sphere(2), 2)
    assert [lv.rank() for lv in levels] == [0, 1, 2]
    assert levels[1].labels == ["e"]
    assert set(levels[2].labels) == {"s1*e", "s2*e"}
    # the generator in level 1 has trivial faces: they all land in rank 0
    assert levels[1].faces[0] == [(), ()]


def test_projective_plane_loop_group():
    levels = kan_loop_group(rp2_model(), 1)
    assert levels[0].labels == ["e"]
    assert set(levels[1].labels) == {"sigma", "s1*e"}
    sig = levels[1].labels.index("sigma")
    # d0 [sigma] = [d1 sigma][d0 sigma]^{-1} = e^{-1}, d1 [sigma] = [d2] = e
    assert levels[1].faces[sig] == [(("e", -1),), (("e", 1),)]


def test_nerve_loop_group_ranks_double():
    # one nondegenerate simplex per dimension upstairs gives 2^n downstairs
    levels = kan_loop_group(nerve(FiniteMonoid.cyclic(2)), 3)
    assert [lv.rank() for lv in levels] == [1, 2, 4, 8]


def test_collapsed_boundary_loop_group_validates():
    levels = kan_loop_group(collapsed_boundary_delta3(), 2)
    assert levels[0].rank() == 3
    assert levels[1].rank() == 4 + 3 * 1  # triangles plus s1 of each edge


def test_loop_group_requires_reduced():
    with pytest.raises(NotReduced):
        kan_loop_group(boundary_delta3(), 1)


def test_circle_pi1_is_free_on_one():
    pres = pi1_presentation(minimal_sphere(1))
    assert pres.generators == ["t"]
    assert pres.relations == []


def test_sphere_pi1_is_trivial():
    pres = pi1_presentation(minimal_sphere(2))
    assert pres.generators == []
    comp = group_completion(pres)
    assert comp.order == 1


def test_collapsed_boundary_pi1_is_trivial():
    comp = group_completion(pi1_presentation(collapsed_boundary_delta3()))
    assert comp.order == 1


def test_projective_plane_pi1_has_two_elements():
    pres = pi1_presentation(rp2_model())
    assert ((), ("e", "e")) in pres.relations
    comp = group_completion(pres)
    assert comp.order == 2


def test_cyclic_nerve_pi1_recovers_the_group():
    for n in (2, 3, 4):
        comp = group_completion(pi1_presentation(nerve(FiniteMonoid.cyclic(n))))
        assert comp.order == n


def test_localized_nerve_pi1_inverts_the_edge():
    m = FiniteMonoid.idempotent_pair()
    k = localized_nerve(nerve(m), [(1,)])
    pres = pi1_presentation(k)
    assert "(1,)_inv" in pres.generators
    comp = group_completion(pres)
    assert comp.order == 1  # b idempotent and invertible forces b = 1


def test_localizing_a_group_changes_nothing():
    k = localized_nerve(nerve(FiniteMonoid.cyclic(3)), [(1,)])
    comp = group_completion(pi1_presentation(k))
    assert comp.order == 3


HUREWICZ_CASES = [
    minimal_sphere(1),
    minimal_sphere(2),
    minimal_sphere(3),
    rp2_model(),
    collapsed_boundary_delta3(),
    nerve(FiniteMonoid.trivial()),
    nerve(FiniteMonoid.cyclic(2)),
    nerve(FiniteMonoid.cyclic(3)),
    nerve(FiniteMonoid.cyclic(4)),
    nerve(FiniteMonoid.idempotent_pair()),
    nerve(FiniteMonoid.left_zero_with_unit(2)),
]


def test_abelianized_pi1_matches_first_homology():
    for k in HUREWICZ_CASES:
        ab = abelianization(pi1_presentation(k))
        h1 = homology_window(chains(k, 2).complex)[1]
        assert h1.exact
        assert ab.iso(h1), f"{k}: {ab.describe()} vs {h1.describe()}"


def test_abelianization_of_free_and_torsion_presentations():
    ab = abelianization(pi1_presentation(minimal_sphere(1)))
    assert ab.group() == (1, ())
    ab = abelianization(pi1_presentation(rp2_model()))
    assert ab.group() == (0, (2,))


def test_group_ring_of_the_circle():
    alg, inv = group_ring(pi1_presentation(minimal_sphere(1)))
    assert inv == {"t": "t_inv"}
    assert [lbl for lbl, _ in alg.generators] == ["t", "t_inv"]
    assert all(d == 0 for _, d in alg.generators)


def test_h0_compare_circle():
    cert = h0_compare(minimal_sphere(1))
    assert cert.ok
    assert cert.status == "certified"


def test_h0_compare_sphere():
    cert = h0_compare(minimal_sphere(2))
    assert cert.ok


def test_h0_compare_collapsed_boundary():
    cert = h0_compare(collapsed_boundary_delta3())
    assert cert.ok


def test_h0_compare_projective_plane():
    cert = h0_compare(rp2_model())
    assert cert.ok


def test_loop_group_json_round_trip_shape():
    level = kan_loop_group(minimal_sphere(1), 1)[1]
    d = level.to_json_dict()
    assert d["level"] == 1
    assert d["generators"] == ["s1*t"]
    assert d["faces"] == [[[["t", 1]], [["t", 1]]]]
