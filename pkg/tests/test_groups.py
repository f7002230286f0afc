from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from greenkit.corpus import CORPUS, by_name, cyclic, load_group
from greenkit.errors import InputError, ResourceError
from greenkit.groups import Group, compose, format_cycles, parse_cycles, parse_group_text, perm_inverse

NAMES = list(CORPUS)


def brute_force_subgroups(G):
    """Every subset containing the identity that is closed under products."""
    out = set()
    others = range(1, G.order)
    for r in range(G.order):
        for extra in combinations(others, r):
            s = {0, *extra}
            if all(G.mul(a, b) in s for a in s for b in s):
                out.add(tuple(sorted(s)))
    return out


def test_orders():
    expected = {"C1": 1, "C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6, "C2xC2": 4,
                "S3": 6, "D4": 8, "Q8": 8, "A4": 12, "D6": 12}
    assert {n: by_name(n).order for n in NAMES} == expected


def test_generated_examples():
    assert Group(3, [parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)]).order == 6
    assert Group(1, []).order == 1
    assert Group(4, [parse_cycles("(0 1)(2 3)", 4), parse_cycles("(0 2)(1 3)", 4)]).order == 4


def test_identity_first_and_inverses(groups):
    for n in NAMES:
        G = groups(n)
        assert G.elements[0] == tuple(range(G.degree))
        for g in range(G.order):
            assert G.mul(g, G.inv(g)) == 0


@pytest.mark.parametrize("name", ["C1", "C2", "C4", "C2xC2", "S3", "C6", "D4", "Q8"])
def test_subgroups_match_brute_force(groups, name):
    G = groups(name)
    assert {h.elements for h in G.subgroups()} == brute_force_subgroups(G)


def test_class_counts(groups):
    assert [c.representative.order for c in groups("S3").classes] == [1, 2, 3, 6]
    assert len(groups("C1").classes) == 1
    assert [c.representative.order for c in groups("C2xC2").classes] == [1, 2, 2, 2, 4]
    counts = {n: (len(groups(n).lattice), len(groups(n).classes)) for n in ("S3", "D4", "Q8", "A4", "D6")}
    assert counts == {"S3": (6, 4), "D4": (10, 8), "Q8": (6, 6), "A4": (10, 5), "D6": (16, 10)}


def test_classes_partition_lattice(groups):
    for n in NAMES:
        G = groups(n)
        members = [m.elements for c in G.classes for m in c.conjugates]
        assert sorted(members) == sorted(h.elements for h in G.lattice)


def test_double_cosets_s3(groups):
    G = groups("S3")
    H = G.classes[1].representative
    dc = G.double_cosets(H, H)
    assert sorted(d.size for d in dc) == [2, 4]
    assert sorted(d.intersection.order for d in dc) == [1, 2]


@pytest.mark.parametrize("name", NAMES)
def test_double_cosets_partition(groups, name):
    G = groups(name)
    for H in G.lattice:
        for K in G.lattice:
            dc = G.double_cosets(H, K)
            assert sum(d.size for d in dc) == G.order
            for d in dc:
                assert d.size * d.intersection.order == H.order * K.order


def test_subgroup_bound():
    with pytest.raises(ResourceError):
        by_name("D6").subgroups(bound=8)
    with pytest.raises(ResourceError):
        Group(5, [parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(0 1)", 5)], max_order=48)


def test_bad_permutations():
    with pytest.raises(InputError):
        Group(3, [(0, 0, 1)])
    for text in ("(0 1", "(0 3)", "(0 1)(1 2)", "a b"):
        with pytest.raises(InputError):
            parse_cycles(text, 3)


def test_group_file_parsing(tmp_path):
    text = "# S3\ndegree 3\n(0 1)\n(0 1 2)  # rotation\n"
    G = parse_group_text(text)
    assert G.order == 6
    f = tmp_path / "s3.grp"
    f.write_text(text)
    assert load_group(str(f)).order == 6
    assert parse_group_text(G.to_text()).elements == G.elements
    with pytest.raises(InputError):
        parse_group_text("")
    with pytest.raises(InputError):
        parse_group_text("deg 3\n")
    with pytest.raises(InputError):
        load_group("no-such-group")


def test_subgroup_as_group_keeps_order(groups):
    G = groups("D4")
    for H in G.lattice:
        Hg = H.as_group
        assert [G.position[p] for p in Hg.elements] == list(H.elements)


perm3 = st.permutations(range(5)).map(tuple)


@given(perm3, perm3, perm3)
def test_composition_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(p, perm_inverse(p)) == tuple(range(5))


@given(perm3)
def test_cycle_notation_round_trip(p):
    assert parse_cycles(format_cycles(p), 5) == p


@given(st.sampled_from(NAMES), st.data())
def test_conjugate_and_intersection_are_subgroups(name, data):
    G = by_name(name)
    H = data.draw(st.sampled_from(G.lattice))
    K = data.draw(st.sampled_from(G.lattice))
    g = data.draw(st.integers(0, G.order - 1))
    subs = {h.elements for h in G.lattice}
    assert H.conjugate(g).elements in subs
    assert H.intersect(K).elements in subs
    assert G.class_index(H.conjugate(g)) == G.class_index(H)


def test_cyclic_structure():
    G = cyclic(6)
    assert sorted(G.element_order(g) for g in range(6)) == [1, 2, 3, 3, 6, 6]
