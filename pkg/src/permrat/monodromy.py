"""Small-degree permutation group engine and the monodromy-pair filter.

Permutations act on {0..n-1} internally and print 1-based.  Subgroup
enumeration is complete: conjugacy class representatives are grown by
one-generator extensions (every class of subgroups is reachable that way)
and then expanded into full conjugacy orbits, so the returned list holds
every subgroup of S_n, not class representatives.  The filter reproduces
the conditions a pair (A, G) of arithmetic/geometric monodromy groups of
an exceptional rational function must satisfy at degree n:

    A transitive (primitive on request, and never A_n or S_n for n >= 5),
    G normal in A, transitive, proper and nontrivial, A/G cyclic, and the
    point stabilizers of A and G share exactly one orbit.

The hard cap n <= 6 keeps the enumeration a desk-scale computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

MAX_DEGREE = 6

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def pmul(p: Perm, q: Perm) -> Perm:
    """Composition: apply q first, then p."""
    return tuple(map(p.__getitem__, q))


def pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def cycle_notation(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) if parts else "()"


def generate(gens: Iterable[Perm], n: int) -> frozenset:
    """Closure of the generators under composition."""
    gens = [g for g in gens]
    elems = {identity_perm(n)}
    frontier = [identity_perm(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


@dataclass(frozen=True)
class Subgroup:
    n: int
    elements: frozenset
    gens: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def sort_key(self):
        return (len(self.elements), tuple(sorted(self.elements)))

    def __repr__(self):
        gtxt = ", ".join(cycle_notation(g) for g in self.gens) or "()"
        return f"<order {self.order}: {gtxt}>"


def symmetric_group(n: int) -> Subgroup:
    if n == 1:
        return Subgroup(1, frozenset({(0,)}), ())
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return Subgroup(n, generate(gens, n), tuple(gens))


def alternating_group(n: int) -> Subgroup:
    elems = frozenset(p for p in symmetric_group(n).elements if _sign(p) == 1)
    gens = _small_generating_set(elems, n)
    return Subgroup(n, elems, gens)


def _sign(p: Perm) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


def _small_generating_set(elems: frozenset, n: int) -> tuple[Perm, ...]:
    gens: list[Perm] = []
    have = {identity_perm(n)}
    for p in sorted(elems):
        if p in have:
            continue
        gens.append(p)
        have = set(generate(gens, n))
        if len(have) == len(elems):
            break
    return tuple(gens)


_SUBGROUP_CACHE: dict[int, list[Subgroup]] = {}


def all_subgroups(n: int) -> list[Subgroup]:
    """Every subgroup of S_n (not just up to conjugacy), n <= MAX_DEGREE.

    Class representatives are produced by one-generator extensions of
    previously found representatives (one coset representative per coset
    suffices, since <H, hg> = <H, g>), and each representative's full
    conjugacy orbit is added.  The result is sorted by (order, elements).
    """
    if n > MAX_DEGREE:
        raise ValueError(f"subgroup enumeration is capped at degree {MAX_DEGREE}")
    if n in _SUBGROUP_CACHE:
        return _SUBGROUP_CACHE[n]
    sym = sorted(symmetric_group(n).elements)
    all_found: dict[frozenset, tuple[Perm, ...]] = {}
    trivial = frozenset({identity_perm(n)})
    queue = [(trivial, ())]
    all_found[trivial] = ()

    def add_orbit(elems: frozenset, gens: tuple[Perm, ...]):
        new_reps = []
        for s in sym:
            si = pinv(s)
            conj = frozenset(pmul(pmul(s, h), si) for h in elems)
            if conj not in all_found:
                cg = tuple(pmul(pmul(s, g), si) for g in gens)
                all_found[conj] = cg
                new_reps.append((conj, cg))
        return new_reps

    add_orbit(trivial, ())
    while queue:
        elems, gens = queue.pop()
        covered = set()
        for g in sym:
            if g in elems or g in covered:
                continue
            covered.update(pmul(h, g) for h in elems)
            new_gens = gens + (g,)
            new_elems = generate(new_gens, n)
            if new_elems not in all_found:
                small = _small_generating_set(new_elems, n)
                all_found[new_elems] = small
                add_orbit(new_elems, small)
                queue.append((new_elems, small))
    out = [Subgroup(n, e, g) for e, g in all_found.items()]
    out.sort(key=Subgroup.sort_key)
    _SUBGROUP_CACHE[n] = out
    return out


# -- predicates -----------------------------------------------------------------


def orbit_of(elems: Iterable[Perm], point: int) -> frozenset:
    orb = {point}
    frontier = [point]
    elems = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in elems:
                y = g[x]
                if y not in orb:
                    orb.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(orb)


def orbits(elems: Iterable[Perm], n: int) -> set[frozenset]:
    elems = list(elems)
    left = set(range(n))
    out = set()
    while left:
        o = orbit_of(elems, min(left))
        out.add(o)
        left -= o
    return out


def is_transitive(G: Subgroup) -> bool:
    return len(orbit_of(G.gens or G.elements, 0)) == G.n


def point_stabilizer(G: Subgroup, point: int = 0) -> Subgroup:
    elems = frozenset(p for p in G.elements if p[point] == point)
    return Subgroup(G.n, elems, _small_generating_set(elems, G.n))


def is_normal(G: Subgroup, A: Subgroup) -> bool:
    if not G.elements <= A.elements:
        return False
    for a in (A.gens or A.elements):
        ai = pinv(a)
        for g in (G.gens or G.elements):
            if pmul(pmul(a, g), ai) not in G.elements:
                return False
    return True


def quotient_is_cyclic(A: Subgroup, G: Subgroup) -> bool:
    """A/G cyclic, decided by hunting a coset whose powers cover A/G."""
    index = len(A.elements) // len(G.elements)
    if index == 1:
        return True
    for a in sorted(A.elements):
        if a in G.elements:
            continue
        cur = a
        k = 1
        while cur not in G.elements:
            cur = pmul(cur, a)
            k += 1
        if k == index:
            return True
    return False


def minimal_block(A: Subgroup, pair: tuple[int, int]) -> frozenset:
    """Smallest block of imprimitivity containing the two points."""
    n = A.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
            return True
        return False

    union(*pair)
    gens = A.gens or tuple(A.elements)
    changed = True
    while changed:
        changed = False
        for g in gens:
            for x in range(n):
                rx = find(x)
                if rx != x and union(g[x], g[rx]):
                    changed = True
    root = find(pair[0])
    return frozenset(x for x in range(n) if find(x) == root)


def is_primitive(A: Subgroup) -> bool:
    """Primitivity via block systems: only trivial blocks contain 0."""
    if not is_transitive(A):
        raise ValueError("primitivity is defined for transitive groups")
    n = A.n
    if n == 1:
        return True
    for other in range(1, n):
        blk = minimal_block(A, (0, other))
        if 1 < len(blk) < n:
            return False
    return True


def is_primitive_by_definition(A: Subgroup) -> bool:
    """Literal reading: no subgroup strictly between A and a point stabilizer."""
    if not is_transitive(A):
        raise ValueError("primitivity is defined for transitive groups")
    stab = point_stabilizer(A, 0)
    for H in all_subgroups(A.n):
        if stab.elements < H.elements < A.elements:
            return False
    return True


# -- the filter -------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPair:
    degree: int
    A: Subgroup
    G: Subgroup
    a_primitive: bool
    a_not_alt_sym: bool


def monodromy_filter(n: int, require_primitive: bool = False) -> list[GroupPair]:
    """All (A, G) satisfying the exceptionality conditions at degree n."""
    if n > MAX_DEGREE:
        raise ValueError(f"filter is capped at degree {MAX_DEGREE}")
    subs = all_subgroups(n)
    alt = alternating_group(n).elements
    sym = symmetric_group(n).elements
    out = []
    for A in subs:
        if not is_transitive(A):
            continue
        if n >= 5 and A.elements in (alt, sym):
            continue
        prim = is_primitive(A)
        if require_primitive and not prim:
            continue
        A1 = point_stabilizer(A)
        a1_orbits = orbits(A1.elements, n)
        for G in subs:
            if G.order <= 1 or G.order >= A.order:
                continue
            if not G.elements <= A.elements:
                continue
            if not is_transitive(G):
                continue
            if not is_normal(G, A):
                continue
            if not quotient_is_cyclic(A, G):
                continue
            G1 = point_stabilizer(G)
            g1_orbits = orbits(G1.elements, n)
            common = sum(1 for o in g1_orbits if o in a1_orbits)
            if common == 1:
                out.append(GroupPair(n, A, G, prim,
                                     not (A.elements in (alt, sym))))
    out.sort(key=lambda p: (p.A.sort_key(), p.G.sort_key()))
    return out
