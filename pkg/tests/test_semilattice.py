import random

import pytest

from conftest import SIX_COVERS, SIX_LABELS, make_broom, make_six, make_tree
from semiam.semilattice import (
    Semilattice,
    ValidationReport,
    are_isomorphic,
    cayley_embed,
    chain,
    check_table,
    flat,
    flat_with_top,
    from_hasse,
    from_json_dict,
    power_set,
    product,
    validate,
)

# frozen from the cover relation: meets computed by hand on the diagram
SIX_TABLE = (
    (0, 0, 0, 0, 0, 0),
    (0, 1, 0, 1, 0, 1),
    (0, 0, 2, 2, 0, 2),
    (0, 1, 2, 3, 0, 3),
    (0, 0, 0, 0, 4, 4),
    (0, 1, 2, 3, 4, 5),
)


def test_validate_accepts_chain_table():
    s = validate([[0, 0], [0, 1]])
    assert isinstance(s, Semilattice)
    assert s.minimum == 0


def test_validate_idempotency_witness():
    report = validate([[1, 0], [0, 1]])
    assert isinstance(report, ValidationReport)
    assert not report.ok
    assert report.violations[0].axiom == "idempotent"
    assert report.violations[0].witness == (0,)


def test_validate_commutativity_witness():
    report = validate([[0, 0, 0], [1, 1, 1], [0, 1, 2]])
    assert isinstance(report, ValidationReport)
    assert any(
        v.axiom == "commutative" and v.witness == (0, 1) for v in report.violations
    )


def test_validate_associativity_witness():
    # idempotent and commutative, but (0*0)*2 = 1 while 0*(0*2) = 0
    report = validate([[0, 0, 1], [0, 1, 1], [1, 1, 2]])
    assert isinstance(report, ValidationReport)
    assert report.violations[0].axiom == "associative"
    assert report.violations[0].witness == (0, 0, 2)


def test_validate_range_and_shape():
    report = validate([[0, 3], [3, 1]])
    assert not report.ok and report.violations[0].axiom == "range"
    report = validate([[0, 0], [0]])
    assert not report.ok and report.violations[0].axiom == "shape"
    report = validate([])
    assert not report.ok


def test_check_table_matches_validate():
    assert check_table([[0, 0], [0, 1]]).ok
    assert not check_table([[1, 0], [0, 1]]).ok


def test_chain_structure():
    s = chain(3)
    assert s.n == 4
    assert s.minimum == 0
    assert s.top() == 3
    assert s.level == (0, 1, 2, 3)
    assert s.hasse == ((0, 1), (1, 2), (2, 3))
    assert s.canonical_perm == (0, 1, 2, 3)
    assert s.ideal_chain == (
        frozenset({0, 1, 2, 3}),
        frozenset({0, 1, 2}),
        frozenset({0, 1}),
        frozenset({0}),
    )


def test_flat_structure():
    s = flat(3)
    assert s.n == 4
    assert s.minimum == 0
    assert s.top() is None
    assert not s.is_unital()
    assert s.level == (0, 1, 1, 1)
    assert s.maximal() == frozenset({1, 2, 3})


def test_flat_with_top_structure():
    s = flat_with_top(2)
    assert s.n == 4
    assert s.top() == 3
    assert s.level == (0, 1, 1, 2)
    assert s.table == ((0, 0, 0, 0), (0, 1, 0, 1), (0, 0, 2, 2), (0, 1, 2, 3))


def test_power_set_structure():
    s = power_set(3)
    assert s.n == 8
    assert s.minimum == 0
    assert s.top() == 7
    assert s.level == (0, 1, 1, 2, 1, 2, 2, 3)
    # meets really are intersections
    assert s.meet(0b011, 0b110) == 0b010


def test_six_element_lattice(six):
    assert six.table == SIX_TABLE
    assert six.level == (0, 1, 1, 2, 2, 3)
    assert six.canonical_perm == (0, 1, 2, 3, 4, 5)
    assert six.minimum == 0
    assert six.top() == 5
    assert six.ideal_chain == (
        frozenset(range(6)),
        frozenset({0, 1, 2, 3, 4}),
        frozenset({0, 1, 2}),
        frozenset({0}),
    )
    assert six.hasse == tuple(sorted(SIX_COVERS))
    # the load-bearing fact: s3 and s4 meet at the bottom
    assert six.meet(3, 4) == 0


def test_from_hasse_rejects_double_bottom_diamond():
    # 0,1 < 2 and 0,1 < 3: the two bottoms have no common lower bound, and
    # the pair (2,3) has two maximal ones; the scan hits (0,1) first
    report = from_hasse(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert isinstance(report, ValidationReport)
    assert report.violations[0].axiom == "meet"
    assert report.violations[0].witness == (0, 1)
    # adjoin a bottom: now only (2,3) stays meetless
    report = from_hasse(
        5, [(4, 0), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    )
    assert isinstance(report, ValidationReport)
    assert report.violations[0].axiom == "meet"
    assert report.violations[0].witness == (2, 3)


def test_from_hasse_rejects_antichain_and_cycle():
    report = from_hasse(2, [])
    assert not report.ok and report.violations[0].axiom == "meet"
    report = from_hasse(2, [(0, 1), (1, 0)])
    assert not report.ok and report.violations[0].axiom == "cycle"
    report = from_hasse(2, [(0, 5)])
    assert not report.ok and report.violations[0].axiom == "edge"


def test_canonical_prefixes_are_down_closed():
    rng = random.Random(3)
    six = make_six()
    for _ in range(10):
        perm = list(range(6))
        rng.shuffle(perm)
        s = six.relabel(perm)
        levels = [s.level[x] for x in s.canonical_perm]
        assert levels == sorted(levels)
        for k in range(1, s.n + 1):
            prefix = set(s.canonical_perm[:k])
            for x in prefix:
                assert all(y in prefix for y in s.strictly_below[x])


def test_maximal_elements_of_subsets(six):
    assert six.maximal() == frozenset({5})
    assert six.maximal({0, 1, 2, 3, 4}) == frozenset({3, 4})
    assert six.maximal({0, 1, 2}) == frozenset({1, 2})
    assert six.maximal({0}) == frozenset({0})


def test_product_of_chains():
    p = product(chain(1), chain(2))
    assert p.n == 6
    # level of (i, j) is i + j; pairs in row-major order
    assert p.level == (0, 1, 2, 1, 2, 3)
    assert p.minimum == 0
    assert p.table[1 * 3 + 2][1 * 3 + 1] == 1 * 3 + 1
    assert check_table([list(r) for r in p.table]).ok


def test_product_of_two_chains_is_diamond():
    p = product(chain(1), chain(1))
    iso, perm = are_isomorphic(p, power_set(2))
    assert iso
    assert perm is not None


def test_cayley_embed_six(six):
    down = cayley_embed(six)
    assert down == (
        frozenset({0}),
        frozenset({0, 1}),
        frozenset({0, 2}),
        frozenset({0, 1, 2, 3}),
        frozenset({0, 4}),
        frozenset({0, 1, 2, 3, 4, 5}),
    )
    # intersections of images are images of meets
    assert down[3] & down[4] == down[0]


def test_cayley_embed_injective_and_meet_compatible():
    for s in [chain(3), flat(3), flat_with_top(3), power_set(3), make_six()]:
        down = cayley_embed(s)
        assert len(set(down)) == s.n
        for a in range(s.n):
            for b in range(s.n):
                assert down[a] & down[b] == down[s.meet(a, b)]


def test_are_isomorphic_relabelings(six):
    rng = random.Random(5)
    for _ in range(10):
        perm = list(range(6))
        rng.shuffle(perm)
        other = six.relabel(perm)
        iso, found = are_isomorphic(six, other)
        assert iso
        for a in range(6):
            for b in range(6):
                assert found[six.meet(a, b)] == other.meet(found[a], found[b])


def test_are_isomorphic_distinguishes():
    assert are_isomorphic(chain(2), flat(2)) == (False, None)
    assert are_isomorphic(make_tree(), make_broom()) == (False, None)
    assert are_isomorphic(chain(1), chain(2)) == (False, None)


def test_relabel_roundtrip(six):
    perm = [5, 4, 3, 2, 1, 0]
    back = [perm.index(i) for i in range(6)]
    assert six.relabel(perm).relabel(back).table == six.table


def test_labels_must_be_distinct():
    with pytest.raises(ValueError):
        Semilattice([[0, 0], [0, 1]], labels=["x", "x"])


def test_from_json_dict_table_and_hasse():
    s = from_json_dict({"table": [[0, 0], [0, 1]], "labels": ["bot", "top"]})
    assert isinstance(s, Semilattice)
    assert s.labels == ("bot", "top")
    s = from_json_dict({"n": 6, "hasse": [list(e) for e in SIX_COVERS], "labels": SIX_LABELS})
    assert isinstance(s, Semilattice)
    assert s.table == SIX_TABLE


def test_from_json_dict_errors():
    assert not from_json_dict({}).ok
    assert not from_json_dict({"table": "nope"}).ok
    assert not from_json_dict({"n": 2, "hasse": [[0, "x"]]}).ok
    assert not from_json_dict({"table": [[0, 0], [0, 1]], "labels": ["a"]}).ok
    assert not from_json_dict({"table": [[0, 0], [0, 1]], "n": 3}).ok
