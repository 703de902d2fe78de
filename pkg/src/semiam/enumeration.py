"""Catalogues of small semilattices, their amenability spectrum, and the
gap search over small Clifford semigroup instances.

Two independent enumeration strategies back each other up: recursive
extension by a new maximal element, and intersection-closed set families
(the image side of the down-set embedding).  A brute-force table filter
serves as the oracle at the smallest sizes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product as iproduct

from .clifford import (
    CliffordSemigroup,
    ConnectingHom,
    FiniteAbelianGroup,
    build_clifford,
    diagonal_solve,
)
from .diagonal import diagonal_recursive
from .exactlinalg import rat_str
from .moebius import diagonal_via_mobius
from .semilattice import Semilattice, _invariant, check_table


def canonical_table(s: Semilattice) -> tuple:
    """Least relabeled table over invariant-respecting permutations.

    Isomorphisms preserve the per-element invariant, so minimizing over the
    permutations that keep invariant classes aligned is a true canonical
    form, at a tiny fraction of the n! cost.
    """
    n = s.n
    invariants = [_invariant(s, x) for x in range(n)]
    classes: dict = {}
    for x in range(n):
        classes.setdefault(invariants[x], []).append(x)
    ordered = [classes[key] for key in sorted(classes)]
    best = None
    for arrangement in iproduct(*[permutations(cls) for cls in ordered]):
        order = [x for cls in arrangement for x in cls]
        pos = [0] * n
        for k, x in enumerate(order):
            pos[x] = k
        table = tuple(
            tuple(pos[s.table[order[i]][order[j]]] for j in range(n))
            for i in range(n)
        )
        if best is None or table < best:
            best = table
    return best


def _dedup(tables) -> list:
    """Canonicalize raw tables and return the sorted distinct canon tables."""
    seen = set()
    for table in tables:
        seen.add(canonical_table(Semilattice(table)))
    return sorted(seen)


def _down_closed_masks(s: Semilattice):
    """Nonempty down-closed subsets of s, as bitmasks."""
    n = s.n
    down_mask = [0] * n
    for x in range(n):
        for y in range(n):
            if s.leq[y][x]:
                down_mask[x] |= 1 << y
    for mask in range(1, 1 << n):
        if all(
            not (mask >> x & 1) or (down_mask[x] & mask) == down_mask[x]
            for x in range(n)
        ):
            yield mask


def enumerate_by_extension(n: int) -> list:
    """Strategy A: grow by one new maximal element over a down-closed set.

    Removing any maximal element of a semilattice leaves a down-closed
    subsemilattice, so every isomorphism class of size k+1 appears as some
    size-k class extended by one element whose strict down-set is a
    down-closed D such that D meet down(y) has a maximum for every y.
    Returns sorted canonical tables.
    """
    if n < 1:
        return []
    current = [((0,),)]
    for size in range(1, n):
        grown = set()
        for table in current:
            s = Semilattice(table)
            down = [s.down_set(x) for x in range(size)]
            for mask in _down_closed_masks(s):
                d = frozenset(x for x in range(size) if mask >> x & 1)
                meets = []
                ok = True
                for y in range(size):
                    cands = d & down[y]
                    top = None
                    for m in cands:
                        if all(s.leq[r][m] for r in cands):
                            top = m
                            break
                    if top is None:
                        ok = False
                        break
                    meets.append(top)
                if not ok:
                    continue
                new = [list(row) + [meets[i]] for i, row in enumerate(table)]
                new.append([meets[j] for j in range(size)] + [size])
                grown.add(canonical_table(Semilattice(new)))
        current = sorted(grown)
    return list(current)


def enumerate_by_families(n: int) -> list:
    """Strategy B: families {empty} + (n-1) distinct nonempty subsets of an
    (n-1)-point ground set, closed under pairwise intersection.

    Stripping the bottom from every down-set turns any size-n semilattice
    into exactly such a family, and any such family is a semilattice under
    intersection.  Returns sorted canonical tables.
    """
    if n < 1:
        return []
    if n == 1:
        return [((0,),)]
    ground = n - 1
    masks = list(range(1, 1 << ground))
    found = set()
    for chosen in combinations(masks, n - 1):
        family = frozenset(chosen) | {0}
        closed = True
        for a, b in combinations(chosen, 2):
            if a & b not in family:
                closed = False
                break
        if not closed:
            continue
        fam = sorted(family)
        index = {m: i for i, m in enumerate(fam)}
        table = [
            [index[a & b] for b in fam]
            for a in fam
        ]
        found.add(canonical_table(Semilattice(table)))
    return sorted(found)


def enumerate_brute(n: int) -> list:
    """Oracle for small n: filter all symmetric idempotent tables.

    Cost grows as n**(n(n-1)/2); intended for n <= 4.
    """
    if n < 1:
        return []
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = set()
    for values in iproduct(range(n), repeat=len(slots)):
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = i
        for (i, j), v in zip(slots, values):
            table[i][j] = table[j][i] = v
        if check_table(table).ok:
            found.add(canonical_table(Semilattice(table)))
    return sorted(found)


def enumerate_semilattices(n: int) -> list:
    """All isomorphism classes of size n, as Semilattices in canonical form,
    sorted by table."""
    return [Semilattice(t) for t in enumerate_by_extension(n)]


@dataclass
class SpectrumRow:
    size: int
    index: int
    table: tuple
    am: Fraction
    am_mod4: int
    unital: bool
    d_min: Fraction
    lower_bound_ok: bool
    off_top_diagonal_even: bool

    def to_json_dict(self):
        return {
            "size": self.size,
            "index": self.index,
            "table": [list(r) for r in self.table],
            "am": rat_str(self.am),
            "am_mod4": self.am_mod4,
            "unital": self.unital,
            "d_min": rat_str(self.d_min),
            "lower_bound_ok": self.lower_bound_ok,
            "off_top_diagonal_even": self.off_top_diagonal_even,
        }


@dataclass
class SpectrumReport:
    max_size: int
    counts: tuple
    rows: list

    def to_json_dict(self):
        return {
            "max_size": self.max_size,
            "counts": list(self.counts),
            "classes": [r.to_json_dict() for r in self.rows],
        }


def spectrum(max_size: int) -> SpectrumReport:
    """Catalogue every class up to max_size with its amenability data.

    The diagonal is computed by both the recursion and Moebius inversion;
    a mismatch would be a bug, not data, so it raises.
    """
    rows = []
    counts = []
    for size in range(1, max_size + 1):
        reps = enumerate_semilattices(size)
        counts.append(len(reps))
        for idx, s in enumerate(reps):
            d1 = diagonal_recursive(s)
            d2 = diagonal_via_mobius(s)
            if d1.entries != d2.entries:
                raise RuntimeError(
                    f"diagonal engines disagree on size {size} class {idx}"
                )
            am = d1.am()
            top = s.top()
            unital = top is not None
            even = True
            if unital:
                for p in range(s.n):
                    if p != top and d1.entries[p][p].numerator % 2:
                        even = False
            rows.append(
                SpectrumRow(
                    size=size,
                    index=idx,
                    table=s.table,
                    am=am,
                    am_mod4=int(am) % 4 if am.denominator == 1 else -1,
                    unital=unital,
                    d_min=d1.entries[s.minimum][s.minimum],
                    lower_bound_ok=am >= 2 * s.n - 1,
                    off_top_diagonal_even=even,
                )
            )
    return SpectrumReport(max_size, tuple(counts), rows)


@dataclass
class GapInstance:
    skeleton_table: tuple
    orders: tuple
    homs: tuple  # ((s, t, gen_images), ...) for all strict pairs
    size: int
    am: Fraction | None = None

    def key(self):
        return (self.skeleton_table, self.orders, self.homs)

    def to_json_dict(self):
        return {
            "skeleton_table": [list(r) for r in self.skeleton_table],
            "orders": list(self.orders),
            "homs": [
                {"from": s, "to": t, "gen_images": [list(i) for i in imgs]}
                for (s, t, imgs) in self.homs
            ],
            "size": self.size,
            "am": None if self.am is None else rat_str(self.am),
        }


@dataclass
class GapReport:
    skeleton_max_size: int
    max_cyclic_order: int
    instance_count: int
    am_counts: list  # [(Fraction, count)] sorted by value
    violations: list  # GapInstances with 5 < am < 9
    ok: bool = field(init=False)

    def __post_init__(self):
        self.ok = not self.violations

    def min_am_beyond(self, threshold=5) -> Fraction | None:
        beyond = [v for v, _ in self.am_counts if v > threshold]
        return min(beyond) if beyond else None

    def to_json_dict(self):
        return {
            "skeleton_max_size": self.skeleton_max_size,
            "max_cyclic_order": self.max_cyclic_order,
            "instances": self.instance_count,
            "am_counts": [[rat_str(v), c] for v, c in self.am_counts],
            "violations": [v.to_json_dict() for v in self.violations],
            "min_am_above_5": (
                None if self.min_am_beyond() is None else rat_str(self.min_am_beyond())
            ),
            "ok": self.ok,
        }


def _hom_choices(source: FiniteAbelianGroup, target: FiniteAbelianGroup):
    """All gen_images tuples for homomorphisms source -> target."""
    per_gen = []
    for a in source.cyclic_orders:
        valid = []
        for x in range(target.order):
            digits = target.element(x)
            if all((a * d) % k == 0 for d, k in zip(digits, target.cyclic_orders)):
                valid.append(digits)
        per_gen.append(valid)
    return [tuple(choice) for choice in iproduct(*per_gen)]


def _systems_for(skeleton: Semilattice, groups):
    """Consistent full hom systems, enumerated over free cover choices.

    Only cover pairs are free; every longer pair is a composite, and when a
    pair can be composed along different covers all paths must agree.
    """
    cover_pairs = [(b, a) for (a, b) in skeleton.hasse]  # hom source above
    strict_pairs = sorted(
        (
            (s, t)
            for s in range(skeleton.n)
            for t in skeleton.strictly_below[s]
        ),
        key=lambda p: (skeleton.level[p[0]], p[0], p[1]),
    )
    choice_lists = [
        _hom_choices(groups[s], groups[t]) for (s, t) in cover_pairs
    ]
    lower_covers = {
        s: [a for (a, b) in skeleton.hasse if b == s] for s in range(skeleton.n)
    }
    for combo in iproduct(*choice_lists):
        homs = {}
        for (pair, imgs) in zip(cover_pairs, combo):
            homs[pair] = ConnectingHom(groups[pair[0]], groups[pair[1]], imgs)
        consistent = True
        for (s, t) in strict_pairs:
            if (s, t) in homs:
                continue
            candidate = None
            for r in lower_covers[s]:
                if not skeleton.leq[t][r]:
                    continue
                via = ConnectingHom.compose(homs[(s, r)], homs[(r, t)])
                if candidate is None:
                    candidate = via
                elif not candidate.same_map(via):
                    consistent = False
                    break
            if not consistent:
                break
            homs[(s, t)] = candidate
        if consistent:
            yield homs


def gap_instances(skeleton_max_size: int = 3, max_cyclic_order: int = 4,
                  instance_limit: int = 20000) -> list:
    """Every Clifford instance in the search family, in deterministic order."""
    instances = []
    for size in range(1, skeleton_max_size + 1):
        for skel in enumerate_semilattices(size):
            for orders in iproduct(range(1, max_cyclic_order + 1), repeat=size):
                groups = [FiniteAbelianGroup([k]) for k in orders]
                for homs in _systems_for(skel, groups):
                    packed = tuple(
                        sorted(
                            (s, t, homs[(s, t)].gen_images)
                            for (s, t) in homs
                        )
                    )
                    instances.append(
                        GapInstance(
                            skeleton_table=skel.table,
                            orders=orders,
                            homs=packed,
                            size=sum(orders),
                        )
                    )
                    if len(instances) > instance_limit:
                        raise ValueError(
                            f"gap search family exceeds {instance_limit} instances"
                        )
    return instances


def _solve_gap_instance(payload):
    table, orders, homs = payload
    skel = Semilattice(table)
    groups = [FiniteAbelianGroup([k]) for k in orders]
    hom_spec = {(s, t): imgs for (s, t, imgs) in homs}
    built = build_clifford(skel, groups, hom_spec)
    if not isinstance(built, CliffordSemigroup):
        raise RuntimeError(f"search instance failed validation: {built}")
    return diagonal_solve(built).am()


def gap_search(skeleton_max_size: int = 3, max_cyclic_order: int = 4,
               workers: int | None = None, instance_limit: int = 20000) -> GapReport:
    """Solve every instance in the family and report the AM multiset.

    The point: no commutative Clifford semigroup algebra in this family has
    an amenability constant strictly between 5 and 9.  Output is identical
    for any worker count; SEMIAM_WORKERS is read when workers is None.
    """
    if workers is None:
        workers = int(os.environ.get("SEMIAM_WORKERS", "1") or "1")
    instances = gap_instances(skeleton_max_size, max_cyclic_order, instance_limit)
    payloads = [inst.key() for inst in instances]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            ams = list(pool.map(_solve_gap_instance, payloads, chunksize=16))
    else:
        ams = [_solve_gap_instance(p) for p in payloads]
    counts: dict = {}
    violations = []
    for inst, am in zip(instances, ams):
        inst.am = am
        counts[am] = counts.get(am, 0) + 1
        if Fraction(5) < am < Fraction(9):
            violations.append(inst)
    return GapReport(
        skeleton_max_size=skeleton_max_size,
        max_cyclic_order=max_cyclic_order,
        instance_count=len(instances),
        am_counts=sorted(counts.items()),
        violations=violations,
    )
