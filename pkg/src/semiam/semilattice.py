"""Finite meet semilattices presented by explicit meet tables.

A semilattice here is a finite commutative idempotent semigroup.  The table
is the ground truth; the partial order (s <= t iff s*t = s), the minimum,
the ideal chain obtained by repeatedly stripping maximal elements, the level
grading and a canonical element order are all derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct


@dataclass
class Violation:
    axiom: str
    witness: tuple


@dataclass
class ValidationReport:
    ok: bool
    violations: list

    def to_json_dict(self):
        return {
            "ok": self.ok,
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness)}
                for v in self.violations
            ],
        }


def check_table(table) -> ValidationReport:
    """Check shape, range, idempotency, commutativity, associativity.

    Witnesses are element indices: (s,) for idempotency, (s, t) for
    commutativity, (s, t, r) for associativity.
    """
    violations = []
    n = len(table)
    if n == 0:
        return ValidationReport(False, [Violation("shape", ())])
    for i, row in enumerate(table):
        if len(row) != n:
            violations.append(Violation("shape", (i,)))
    if violations:
        return ValidationReport(False, violations)
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                violations.append(Violation("range", (i, j)))
    if violations:
        return ValidationReport(False, violations)
    for s in range(n):
        if table[s][s] != s:
            violations.append(Violation("idempotent", (s,)))
    for s in range(n):
        for t in range(s + 1, n):
            if table[s][t] != table[t][s]:
                violations.append(Violation("commutative", (s, t)))
    if violations:
        return ValidationReport(False, violations)
    for s in range(n):
        for t in range(n):
            st = table[s][t]
            row_st = table[st]
            row_t = table[t]
            for r in range(n):
                if row_st[r] != table[s][row_t[r]]:
                    violations.append(Violation("associative", (s, t, r)))
                    break
            else:
                continue
            break
        else:
            continue
        break
    return ValidationReport(not violations, violations)


class Semilattice:
    """A validated meet table plus everything derived from it.

    Use validate()/from_hasse() to construct from untrusted input; the
    constructor itself assumes the table already passed check_table.
    """

    def __init__(self, table, labels=None):
        self.n = len(table)
        self.table = tuple(tuple(row) for row in table)
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("need one distinct label per element")
        self.labels = tuple(str(x) for x in labels)
        self._derive()

    def _derive(self):
        n, table = self.n, self.table
        self.leq = tuple(
            tuple(table[s][t] == s for t in range(n)) for s in range(n)
        )
        # minimum exists: fold the product over all elements
        m = 0
        for s in range(1, n):
            m = table[m][s]
        self.minimum = m
        self.strictly_above = tuple(
            tuple(t for t in range(n) if self.leq[s][t] and t != s)
            for s in range(n)
        )
        self.strictly_below = tuple(
            tuple(t for t in range(n) if self.leq[t][s] and t != s)
            for s in range(n)
        )
        # ideal chain: strip the maximal elements until nothing is left
        chain = []
        remaining = frozenset(range(n))
        level = [0] * n
        strips = []
        while remaining:
            chain.append(remaining)
            strip = frozenset(
                s
                for s in remaining
                if all(t not in remaining for t in self.strictly_above[s])
            )
            strips.append(strip)
            remaining = remaining - strip
        self.ideal_chain = tuple(chain)
        self.height = len(chain) - 1
        for k, strip in enumerate(strips):
            for s in strip:
                level[s] = self.height - k
        self.level = tuple(level)
        self.canonical_perm = tuple(
            sorted(range(n), key=lambda s: (level[s], s))
        )
        pos = [0] * n
        for k, s in enumerate(self.canonical_perm):
            pos[s] = k
        self.position = tuple(pos)
        # Hasse diagram: t covers s iff s < t with nothing strictly between
        covers = []
        for s in range(n):
            for t in self.strictly_above[s]:
                if not any(
                    self.leq[s][r] and self.leq[r][t]
                    for r in range(n)
                    if r != s and r != t
                ):
                    covers.append((s, t))
        self.hasse = tuple(sorted(covers))

    def meet(self, s: int, t: int) -> int:
        return self.table[s][t]

    # shared protocol with CliffordSemigroup: the semigroup product
    def mul(self, s: int, t: int) -> int:
        return self.table[s][t]

    def le(self, s: int, t: int) -> bool:
        return self.leq[s][t]

    def lt(self, s: int, t: int) -> bool:
        return s != t and self.leq[s][t]

    def down_set(self, s: int) -> frozenset:
        return frozenset(t for t in range(self.n) if self.leq[t][s])

    def up_set(self, s: int) -> frozenset:
        return frozenset(t for t in range(self.n) if self.leq[s][t])

    def top(self):
        """The maximum element, or None when there is none."""
        mx = self.maximal()
        if len(mx) == 1:
            return next(iter(mx))
        return None

    def is_unital(self) -> bool:
        return self.top() is not None

    def maximal(self, subset=None) -> frozenset:
        """Maximal elements of subset (default: the whole semilattice)."""
        if subset is None:
            subset = range(self.n)
        subset = frozenset(subset)
        return frozenset(
            s
            for s in subset
            if all(t not in subset for t in self.strictly_above[s])
        )

    def relabel(self, perm) -> "Semilattice":
        """Image under the bijection old index -> perm[old index]."""
        n = self.n
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        table = [
            [perm[self.table[inv[i]][inv[j]]] for j in range(n)]
            for i in range(n)
        ]
        labels = [self.labels[inv[i]] for i in range(n)]
        return Semilattice(table, labels)

    def __eq__(self, other):
        return isinstance(other, Semilattice) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Semilattice(n={self.n}, labels={list(self.labels)})"


def validate(table, labels=None):
    """Build a Semilattice from a raw table, or report what is wrong."""
    report = check_table(table)
    if not report.ok:
        return report
    return Semilattice(table, labels)


def from_hasse(n: int, covers, labels=None):
    """Build from cover edges (s, t) meaning s < t.

    Fails with a report when the edges contain a cycle or when some pair has
    no greatest common lower bound.
    """
    violations = []
    edges = []
    for e in covers:
        s, t = e
        if not (0 <= s < n and 0 <= t < n) or s == t:
            violations.append(Violation("edge", (s, t)))
        else:
            edges.append((s, t))
    if violations:
        return ValidationReport(False, violations)
    # reflexive-transitive closure, watching for cycles
    leq = [[i == j for j in range(n)] for i in range(n)]
    for s, t in edges:
        leq[s][t] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_i, row_k = leq[i], leq[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                violations.append(Violation("cycle", (i, j)))
    if violations:
        return ValidationReport(False, violations)
    table = [[0] * n for _ in range(n)]
    for s in range(n):
        for t in range(s, n):
            lower = [r for r in range(n) if leq[r][s] and leq[r][t]]
            best = None
            for m in lower:
                if all(leq[r][m] for r in lower):
                    best = m
                    break
            if best is None:
                violations.append(Violation("meet", (s, t)))
            else:
                table[s][t] = table[t][s] = best
    if violations:
        return ValidationReport(False, violations)
    report = check_table(table)
    if not report.ok:  # cannot happen for a true meet operation
        return report
    return Semilattice(table, labels)


def product(a: Semilattice, b: Semilattice) -> Semilattice:
    """Direct product; element (i, j) sits at index i*b.n + j."""
    nb = b.n
    n = a.n * nb
    table = [[0] * n for _ in range(n)]
    for i1, j1 in iproduct(range(a.n), range(nb)):
        p = i1 * nb + j1
        for i2, j2 in iproduct(range(a.n), range(nb)):
            table[p][i2 * nb + j2] = a.table[i1][i2] * nb + b.table[j1][j2]
    labels = [
        f"({a.labels[i]},{b.labels[j]})"
        for i in range(a.n)
        for j in range(nb)
    ]
    return Semilattice(table, labels)


def cayley_embed(s: Semilattice) -> tuple:
    """Down-sets of all elements: an injective map into (subsets, intersection)."""
    return tuple(s.down_set(x) for x in range(s.n))


def _invariant(s: Semilattice, x: int) -> tuple:
    down = s.down_set(x)
    up = s.up_set(x)
    lower_covers = sum(1 for (a, b) in s.hasse if b == x)
    upper_covers = sum(1 for (a, b) in s.hasse if a == x)
    down_levels = tuple(sorted(s.level[y] for y in down))
    return (s.level[x], len(down), len(up), lower_covers, upper_covers, down_levels)


def are_isomorphic(a: Semilattice, b: Semilattice):
    """Return (True, perm) with perm[i in a] = image in b, or (False, None)."""
    if a.n != b.n:
        return False, None
    inv_a = [_invariant(a, x) for x in range(a.n)]
    inv_b = [_invariant(b, x) for x in range(b.n)]
    if sorted(inv_a) != sorted(inv_b):
        return False, None
    n = a.n
    order = sorted(range(n), key=lambda x: a.position[x])
    candidates = {x: [y for y in range(n) if inv_b[y] == inv_a[x]] for x in order}
    perm = [None] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            # meets of x with placed elements are already placed: a meet is
            # strictly below x, so it comes earlier in canonical order
            for x2 in order[:k]:
                if perm[a.table[x][x2]] != b.table[y][perm[x2]]:
                    ok = False
                    break
            if not ok:
                continue
            perm[x] = y
            used[y] = True
            if extend(k + 1):
                return True
            perm[x] = None
            used[y] = False
        return False

    if extend(0):
        return True, tuple(perm)
    return False, None


def from_json_dict(obj):
    """Build from {"table": [[...]]} or {"n": k, "hasse": [[s,t],...]}.

    Both forms take an optional "labels" list.  Returns Semilattice or
    ValidationReport.
    """
    if not isinstance(obj, dict):
        return ValidationReport(False, [Violation("input", ("object",))])
    labels = obj.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)
    ):
        return ValidationReport(False, [Violation("labels", ())])
    if "table" in obj:
        table = obj["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            return ValidationReport(False, [Violation("shape", ())])
        if "n" in obj and obj["n"] != len(table):
            return ValidationReport(False, [Violation("shape", (obj["n"],))])
        if labels is not None and len(labels) != len(set(labels)):
            return ValidationReport(False, [Violation("labels", ())])
        if labels is not None and len(labels) != len(table):
            return ValidationReport(False, [Violation("labels", ())])
        return validate(table, labels)
    if "hasse" in obj:
        n = obj.get("n")
        if not isinstance(n, int) or n < 1:
            return ValidationReport(False, [Violation("shape", ("n",))])
        edges = obj["hasse"]
        if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)
            for e in edges
        ):
            return ValidationReport(False, [Violation("edge", ())])
        if labels is not None and (len(labels) != n or len(set(labels)) != n):
            return ValidationReport(False, [Violation("labels", ())])
        return from_hasse(n, [tuple(e) for e in edges], labels)
    return ValidationReport(False, [Violation("input", ("table or hasse",))])


# specific families used throughout the tests and the command line docs

def chain(n: int) -> Semilattice:
    """Total order 0 < 1 < ... < n (n+1 elements)."""
    return Semilattice(
        [[min(i, j) for j in range(n + 1)] for i in range(n + 1)],
        labels=[str(i) for i in range(n + 1)],
    )


def flat(n: int) -> Semilattice:
    """A zero element below n pairwise incomparable atoms."""
    size = n + 1
    table = [
        [i if i == j else 0 for j in range(size)] for i in range(size)
    ]
    return Semilattice(table, labels=["o"] + [f"a{i}" for i in range(1, n + 1)])


def flat_with_top(n: int) -> Semilattice:
    """flat(n) with a maximum adjoined above everything."""
    size = n + 2
    top = n + 1
    table = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if i == j:
                table[i][j] = i
            elif i == top:
                table[i][j] = j
            elif j == top:
                table[i][j] = i
            else:
                table[i][j] = 0
    labels = ["o"] + [f"a{i}" for i in range(1, n + 1)] + ["1"]
    return Semilattice(table, labels)


def power_set(n: int) -> Semilattice:
    """Subsets of {1..n} under intersection, indexed by bitmask."""
    size = 1 << n
    table = [[i & j for j in range(size)] for i in range(size)]
    labels = [
        "{" + ",".join(str(k + 1) for k in range(n) if i >> k & 1) + "}"
        for i in range(size)
    ]
    return Semilattice(table, labels)
