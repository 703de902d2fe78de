import random
from fractions import Fraction

import pytest

from conftest import make_g, make_six
from semiam.clifford import (
    CliffordSemigroup,
    ConnectingHom,
    DiagonalSolveError,
    FiniteAbelianGroup,
    NotUnitalError,
    build_clifford,
    clifford_unit_from_skeleton,
    collapse,
    diagonal_solve,
    from_json_dict,
    semigroup_table,
    unit_solve,
)
from semiam.diagonal import diagonal_recursive, verify_diagonal
from semiam.semilattice import chain, from_hasse

G2_MATRIX = (
    (6, -2, -2, Fraction(-1, 2), Fraction(1, 2), -2, 1),
    (-2, 2, 1, Fraction(-1, 2), Fraction(-1, 2), 0, 0),
    (-2, 1, 2, Fraction(-1, 2), Fraction(-1, 2), 0, 0),
    (Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(3, 2), 0, 1, -1),
    (Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), 0, Fraction(1, 2), 0, 0),
    (-2, 0, 0, 1, 0, 2, -1),
    (1, 0, 0, -1, 0, -1, 1),
)


def frozen(rows):
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def test_group_structure():
    z4 = FiniteAbelianGroup([4])
    assert z4.order == 4
    assert z4.add(1, 3) == 0
    assert z4.inverse(1) == 3
    klein = FiniteAbelianGroup([2, 2])
    assert klein.order == 4
    assert klein.element(3) == (1, 1)
    assert klein.add(klein.index((1, 0)), klein.index((0, 1))) == klein.index((1, 1))
    for x in range(4):
        assert klein.add(x, x) == 0
    assert z4.generators() == (1,)
    assert klein.generators() == (klein.index((1, 0)), klein.index((0, 1)))


def test_group_rejects_bad_orders():
    with pytest.raises(ValueError):
        FiniteAbelianGroup([0])
    with pytest.raises(ValueError):
        FiniteAbelianGroup([2, -1])


def test_hom_validity_depends_on_orders():
    z2 = FiniteAbelianGroup([2])
    z4 = FiniteAbelianGroup([4])
    ok = ConnectingHom(z2, z4, [(2,)])
    assert ok.check() is None
    assert ok.apply(1) == 2
    bad = ConnectingHom(z2, z4, [(1,)])
    assert bad.check() is not None


def test_hom_count_is_gcd_per_generator():
    z6 = FiniteAbelianGroup([6])
    z4 = FiniteAbelianGroup([4])
    valid = [
        img
        for img in range(4)
        if ConnectingHom(z6, z4, [(img,)]).check() is None
    ]
    # images of an order-6 generator must be killed by 6 in Z_4: gcd(6,4)=2
    assert valid == [0, 2]


def test_hom_compose_and_same_map():
    z2 = FiniteAbelianGroup([2])
    z4 = FiniteAbelianGroup([4])
    z8 = FiniteAbelianGroup([8])
    f = ConnectingHom(z2, z4, [(2,)])
    g = ConnectingHom(z4, z8, [(2,)])
    h = ConnectingHom.compose(f, g)
    assert h.source is z2 and h.target is z8
    assert h.apply(1) == 4
    assert h.same_map(ConnectingHom(z2, z8, [(4,)]))
    assert not h.same_map(ConnectingHom(z2, z8, [(0,)]))


def test_trivial_hom_kills_everything():
    z4 = FiniteAbelianGroup([4])
    z2 = FiniteAbelianGroup([2])
    t = ConnectingHom.trivial(z4, z2)
    assert t.check() is None
    assert all(t.apply(x) == 0 for x in range(4))


def test_build_rejects_invalid_hom():
    skel = chain(1)
    # top block Z_4 maps onto bottom Z_2: 4 * 1 = 0 mod 2, fine
    ok = build_clifford(
        skel,
        [FiniteAbelianGroup([2]), FiniteAbelianGroup([4])],
        {(1, 0): [(1,)]},
    )
    assert isinstance(ok, CliffordSemigroup)
    # top Z_2 into bottom Z_4 sending the generator to 1: 2 * 1 != 0 mod 4
    bad = build_clifford(
        skel,
        [FiniteAbelianGroup([4]), FiniteAbelianGroup([2])],
        {(1, 0): [(1,)]},
    )
    assert not isinstance(bad, CliffordSemigroup)
    assert bad.violations[0].axiom == "hom_invalid"
    assert bad.violations[0].witness[:2] == (1, 0)


def test_build_rejects_misdirected_hom_pair():
    skel = chain(1)
    z2 = FiniteAbelianGroup([2])
    bad = build_clifford(skel, [z2, z2], {(0, 1): [(0,)]})
    assert not isinstance(bad, CliffordSemigroup)
    assert bad.violations[0].axiom == "hom_pair"


def test_build_rejects_nontransitive_homs():
    skel = chain(2)
    z2 = FiniteAbelianGroup([2])
    homs = {
        (2, 1): [(1,)],
        (1, 0): [(0,)],
        (2, 0): [(1,)],  # disagrees with the two-step route, which kills
    }
    report = build_clifford(skel, [z2, z2, z2], homs)
    assert not isinstance(report, CliffordSemigroup)
    v = report.violations[0]
    assert v.axiom == "hom_transitive"
    assert v.witness == (2, 1, 0)


def test_trivial_groups_reproduce_the_skeleton():
    six = make_six()
    cs = build_clifford(six, [FiniteAbelianGroup([1])] * 6, {})
    assert cs.n == 6
    assert semigroup_table(cs) == six.table
    d = diagonal_solve(cs)
    assert d.entries == diagonal_recursive(six).entries


def test_two_chain_with_sign_group_golden():
    skel = chain(1)
    cs = build_clifford(skel, [FiniteAbelianGroup([1]), FiniteAbelianGroup([2])], {})
    assert semigroup_table(cs) == ((0, 0, 0), (0, 1, 2), (0, 2, 1))
    d = diagonal_solve(cs)
    assert d.entries == frozen(
        (
            (2, Fraction(-1, 2), Fraction(-1, 2)),
            (Fraction(-1, 2), Fraction(1, 2), 0),
            (Fraction(-1, 2), 0, Fraction(1, 2)),
        )
    )
    assert d.am() == 5


def test_single_group_block_diagonal():
    # one idempotent: the plain group algebra; d(g,h) = 1/n when gh = e
    for n in [2, 3, 5]:
        cs = build_clifford(chain(0), [FiniteAbelianGroup([n])], {})
        d = diagonal_solve(cs)
        for g in range(n):
            for h in range(n):
                expect = Fraction(1, n) if cs.mul(g, h) == 0 else Fraction(0)
                assert d.entries[g][h] == expect
        assert d.am() == 1


def test_seven_element_golden():
    cs = make_g(2)
    assert cs.n == 7
    assert cs.labels == ("o", "s1", "s2", "e[s3]", "s3[1]", "s4", "1")
    d = diagonal_solve(cs)
    assert d.entries == frozen(G2_MATRIX)
    assert d.am() == 43
    u = unit_solve(cs)
    assert u.coeffs == (0, 0, 0, 0, 0, 0, 1)
    assert clifford_unit_from_skeleton(cs) == u


def test_collapse_recovers_skeleton_diagonal():
    skel_entries = diagonal_recursive(make_six()).entries
    for n in range(2, 5):
        d = diagonal_solve(make_g(n))
        assert collapse(d).entries == skel_entries


def test_collapse_rejects_plain_semilattices():
    with pytest.raises(TypeError):
        collapse(diagonal_recursive(make_six()))


def test_am_family_closed_form():
    for n in range(2, 7):
        assert diagonal_solve(make_g(n)).am() == 41 + Fraction(4 * (n - 1), n)


def test_unit_acts_as_identity():
    cs = make_g(3)
    u = unit_solve(cs)
    for x in range(cs.n):
        conv = [Fraction(0)] * cs.n
        for s, c in enumerate(u.coeffs):
            if c:
                conv[cs.mul(s, x)] += c
        expect = [Fraction(0)] * cs.n
        expect[x] = Fraction(1)
        assert conv == expect


def test_nontrivial_hom_changes_products():
    # chain o < t, Z_2 at both, identity connecting hom: top products land
    # on shifted bottom elements
    z2 = FiniteAbelianGroup([2])
    cs = build_clifford(chain(1), [z2, z2], {(1, 0): [(1,)]})
    assert isinstance(cs, CliffordSemigroup)
    # ids: 0 = e[o], 1 = o[1], 2 = e[t], 3 = t[1]
    assert cs.mul(3, 0) == 1
    assert cs.mul(3, 1) == 0
    assert cs.mul(3, 3) == 2
    d = diagonal_solve(cs)
    ok, witness = verify_diagonal(d, unit_solve(cs))
    assert ok, witness
    assert d.am() == 5


def test_seeded_instances_verify_and_dominate_skeleton():
    rng = random.Random(91)
    z_choices = [[1], [2], [3], [2, 2]]
    skeletons = [chain(1), chain(2), from_hasse(3, [(0, 1), (0, 2)])]
    for _ in range(12):
        skel = rng.choice(skeletons)
        groups = [FiniteAbelianGroup(rng.choice(z_choices)) for _ in range(skel.n)]
        cs = build_clifford(skel, groups, {})
        assert isinstance(cs, CliffordSemigroup)
        t = semigroup_table(cs)
        for x in range(cs.n):
            for y in range(cs.n):
                assert t[x][y] == t[y][x]
                for z in range(cs.n):
                    assert t[t[x][y]][z] == t[x][t[y][z]]
        d = diagonal_solve(cs)
        ok, witness = verify_diagonal(d, unit_solve(cs))
        assert ok, witness
        skel_d = diagonal_recursive(skel)
        assert collapse(d).entries == skel_d.entries
        assert d.am() >= skel_d.am()


class StubSemigroup:
    """Duck-typed stand-in for feeding raw tables to the solvers."""

    def __init__(self, table):
        self.table = tuple(tuple(r) for r in table)
        self.n = len(table)
        self.canonical_perm = tuple(range(self.n))

    def mul(self, a, b):
        return self.table[a][b]

    def generating_set(self):
        return tuple(range(self.n))


def test_unit_solve_failure_is_loud():
    # everything collapses to one point: no unit can exist
    with pytest.raises(NotUnitalError):
        unit_solve(StubSemigroup([[0, 0], [0, 0]]))


def test_diagonal_solve_failure_is_loud():
    # unital commutative monoid where the non-identity element squares to
    # the zero element: no inverses, so no diagonal exists
    table = ((0, 0, 0), (0, 1, 2), (0, 2, 0))
    stub = StubSemigroup(table)
    assert unit_solve(stub).coeffs == (0, 1, 0)
    with pytest.raises(DiagonalSolveError):
        diagonal_solve(stub)


def test_from_json_dict_roundtrip():
    payload = {
        "skeleton": {"table": [list(r) for r in make_six().table]},
        "groups": [{"cyclic": [1]}, {"cyclic": [1]}, {"cyclic": [1]},
                   {"cyclic": [2]}, {"cyclic": [1]}, {"cyclic": [1]}],
        "homs": [],
    }
    cs = from_json_dict(payload)
    assert isinstance(cs, CliffordSemigroup)
    assert cs.n == 7
    assert diagonal_solve(cs).am() == 43


def test_from_json_dict_reports_errors():
    bad = from_json_dict({"skeleton": {"table": [[0]]}, "groups": []})
    assert not isinstance(bad, CliffordSemigroup)
    assert bad.violations[0].axiom == "groups"
    bad = from_json_dict(
        {"skeleton": {"table": [[0]]}, "groups": [{"cyclic": [0]}]}
    )
    assert bad.violations[0].axiom == "group"
    bad = from_json_dict(
        {
            "skeleton": {"table": [[0, 0], [0, 1]]},
            "groups": [{"cyclic": [2]}, {"cyclic": [2]}],
            "homs": [{"from": "x", "to": 0, "gen_images": [[0]]}],
        }
    )
    assert bad.violations[0].axiom == "hom_entry"
    bad = from_json_dict({"groups": []})
    assert bad.violations[0].axiom == "input"


def test_labels_and_blocks():
    cs = make_g(2)
    assert cs.block_of[4] == 3
    assert cs.member_of[4] == 1
    assert list(cs.block_elements(3)) == [3, 4]
    assert cs.idempotent_of[3] == 3
    assert cs.offset[3] == 3
    assert cs.generating_set() == (0, 1, 2, 3, 4, 5, 6)


def test_generating_set_skips_redundant_members():
    cs = build_clifford(chain(0), [FiniteAbelianGroup([4])], {})
    # identity plus the single cyclic generator, not all four elements
    assert cs.generating_set() == (0, 1)
