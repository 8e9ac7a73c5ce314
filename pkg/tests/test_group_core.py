import pytest

from app.core.errors import GroupTableError, ResourceCapError, SubgroupError
from app.core.groups import (all_subgroups, build_group, check_group_axioms, conjugate,
                             group_from_table, load_group_file, parse_subgroup_spec,
                             subgroup_closure)

# Latin square with identity 0 and every element self-inverse; order 5 so
# it cannot be a group.
NON_ASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_symmetric_group_s3_ordering(s3):
    assert s3.order == 6
    assert s3.names == ("e", "(12)", "(13)", "(23)", "(123)", "(132)")
    assert s3.identity == 0
    assert s3.mul(s3.element("(123)"), s3.element("(12)")) == s3.element("(13)")
    assert s3.inv(s3.element("(123)")) == s3.element("(132)")
    assert not s3.is_abelian()
    assert s3.center() == (0,)


def test_cyclic_group_z4_ops(z4):
    assert list(z4.elements) == [0, 1, 2, 3]
    assert z4.mul(1, 3) == 0
    assert z4.inv(1) == 3
    assert z4.name(2) == "2"
    assert z4.product([1, 1, 1]) == 3
    assert z4.product([]) == z4.identity


def test_quaternion_units(q8):
    i, j, k = q8.element("i"), q8.element("j"), q8.element("k")
    minus_one = q8.element("-1")
    assert q8.mul(i, j) == k
    assert q8.mul(j, i) == q8.element("-k")
    assert q8.mul(i, i) == minus_one
    assert q8.center() == (q8.element("1"), minus_one)


def test_dihedral_center():
    d4 = build_group("D4")
    assert d4.order == 8
    center = parse_subgroup_spec(d4, "center")
    assert {d4.name(z) for z in center} == {"e", "r2"}
    assert center.normal


def test_conjugate_is_g_inverse_h_g(s3):
    g, h = s3.element("(12)"), s3.element("(123)")
    assert conjugate(s3, g, h) == s3.element("(132)")
    for x in s3.elements:
        assert conjugate(s3, s3.identity, x) == x


def test_subgroup_normality(s3, a3):
    assert a3.members == (0, 4, 5)
    assert a3.normal
    a3.require_normal()

    flip = parse_subgroup_spec(s3, "(12)")
    assert flip.order == 2
    assert not flip.normal
    g, h = flip.witness
    assert conjugate(s3, g, h) not in flip
    with pytest.raises(SubgroupError, match="not normal"):
        flip.require_normal()


def test_subgroup_closure_is_idempotent(s3, a3):
    assert subgroup_closure(s3, a3.members).members == a3.members
    assert subgroup_closure(s3, []).members == (s3.identity,)


def test_all_subgroups_of_s3(s3):
    subs = all_subgroups(s3)
    assert [s.order for s in subs] == [1, 2, 2, 2, 3, 6]
    assert sum(1 for s in subs if s.normal) == 3


def test_parse_subgroup_spec_errors(s3):
    with pytest.raises(SubgroupError):
        parse_subgroup_spec(s3, "(1234)")
    assert parse_subgroup_spec(s3, "trivial").order == 1
    assert parse_subgroup_spec(s3, "all").order == 6


def test_check_group_axioms_reports_witnesses():
    assert check_group_axioms([[0, 1], [1, 0]]) is None
    assert check_group_axioms([[0, 1], [1, 1]]) == ("row is a permutation", (1,))
    assert check_group_axioms([[1, 0], [0, 1]]) == ("identity", ())

    axiom, (a, b, c) = check_group_axioms(NON_ASSOCIATIVE_LOOP)
    t = NON_ASSOCIATIVE_LOOP
    assert axiom == "associativity"
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_group_from_table_rejects_non_group():
    with pytest.raises(GroupTableError, match="associativity"):
        group_from_table(NON_ASSOCIATIVE_LOOP)
    with pytest.raises(GroupTableError):
        group_from_table([[0, 1], [1, 0]], names=["a", "a"])


def test_load_group_file(tmp_path, s3):
    path = tmp_path / "s3.txt"
    path.write_text(s3.to_table_text(), encoding="utf-8")
    loaded = load_group_file(path)
    assert loaded.cayley == s3.cayley
    assert loaded.names == s3.names
    assert loaded.label == "s3"

    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 1\n1 x\n", encoding="utf-8")
    with pytest.raises(GroupTableError, match="non-integer"):
        load_group_file(bad)

    loop = tmp_path / "loop.txt"
    loop.write_text("5\n" + "\n".join(" ".join(map(str, row)) for row in NON_ASSOCIATIVE_LOOP))
    with pytest.raises(GroupTableError, match="associativity"):
        load_group_file(loop)

    with pytest.raises(GroupTableError):
        load_group_file(tmp_path / "missing.txt")


def test_build_group_specs(tmp_path):
    assert build_group("cyclic:4").cayley == build_group("Z4").cayley
    assert build_group("quaternion").order == 8
    with pytest.raises(GroupTableError):
        build_group("T12")
    with pytest.raises(ResourceCapError):
        build_group("S5")
    assert build_group("S5", max_order=120).order == 120

    path = tmp_path / "z2.txt"
    path.write_text("2\n0 1\n1 0\n", encoding="utf-8")
    assert build_group(f"file:{path}").order == 2


def test_permutation_families_follow_right_first_composition():
    from sympy.combinatorics import Permutation

    s4 = build_group("S4")
    assert s4.order == 24
    assert s4.name(s4.identity) == "e"
    a, b = s4.element("(1234)"), s4.element("(12)")
    pa, pb = s4.regular[a], s4.regular[b]
    assert s4.regular[s4.mul(a, b)] == Permutation.rmul(pa, pb)
    # (1234)(12) applies (12) first: 1 -> 2 -> 3, 2 -> 1 -> 2
    assert s4.name(s4.mul(a, b)) == "(134)"


def test_dihedral_relations():
    d5 = build_group("D5")
    r, s = d5.element("r"), d5.element("s")
    assert d5.product([r] * 5) == d5.identity
    assert d5.mul(s, s) == d5.identity
    assert d5.product([s, r, s]) == d5.inv(r)
    assert d5.name(d5.mul(d5.element("r3"), s)) == "r3s"
    assert build_group("D2").is_abelian()


def test_subgroup_counts():
    assert len(all_subgroups(build_group("D4"))) == 10
    q8_subs = all_subgroups(build_group("Q8"))
    assert len(q8_subs) == 6
    assert all(sub.normal for sub in q8_subs)
    assert len(all_subgroups(build_group("Z6"))) == 4


def test_closure_on_table_group(tmp_path):
    path = tmp_path / "z4.txt"
    path.write_text("4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n", encoding="utf-8")
    G = load_group_file(path)
    assert subgroup_closure(G, [2]).members == (0, 2)
    assert subgroup_closure(G, [3]).members == (0, 1, 2, 3)
