"""Roots of definite lattices and ADE classification."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..errors import InternalInconsistency, NotDefinite, NotRootGenerated, PreconditionError
from . import intmat
from .core import IntegerLattice, LatticeVector, lattice_from_dual_graph
from .shortvec import definite_vectors


def enumerate_roots(lat: IntegerLattice) -> list[LatticeVector]:
    """All norm -2 vectors of a negative definite lattice, lex sorted."""
    if not lat.is_negative_definite:
        raise NotDefinite("root enumeration needs a negative definite lattice")
    return [lat.vector(x) for x in definite_vectors(lat, norm=-2)]


_ORDER = {"E": 0, "D": 1, "A": 2}


@dataclass(frozen=True)
class ADEType:
    """Multiset of Dynkin components, stored as sorted ``(letter, n)`` pairs."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for letter, n in self.components:
            ok = (letter == "A" and n >= 1) or (letter == "D" and n >= 4) or (letter == "E" and n in (6, 7, 8))
            if not ok:
                raise PreconditionError(f"not a Dynkin type: {letter}{n}")
        comps = tuple(sorted(self.components, key=lambda c: (_ORDER[c[0]], -c[1])))
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, text: str) -> "ADEType":
        parts = [p.strip() for p in text.replace(" ", "").split("+") if p.strip()]
        comps = []
        for p in parts:
            m = re.fullmatch(r"(?:(\d+)\*?)?([ADE])(\d+)", p)
            if not m:
                raise PreconditionError(f"cannot parse Dynkin type {p!r}")
            mult = int(m.group(1) or 1)
            comps.extend([(m.group(2), int(m.group(3)))] * mult)
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    def __str__(self) -> str:
        return "+".join(f"{a}{n}" for a, n in self.components) or "0"


def dynkin_graph(kind: "str | ADEType") -> tuple[list[str], list[tuple[str, str]]]:
    """Vertices and edges of a (possibly disconnected) Dynkin diagram."""
    t = ADEType.parse(kind) if isinstance(kind, str) else kind
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for c, (letter, n) in enumerate(t.components):
        names = [f"{letter}{n}_{c}.{i}" for i in range(1, n + 1)]
        verts.extend(names)
        if letter == "A":
            chain = n
            extra = None
        elif letter == "D":
            chain, extra = n - 1, n - 3  # last node hangs off the second-to-last chain node
        else:
            chain, extra = n - 1, 2  # E: node attached to the third chain node
        for i in range(chain - 1):
            edges.append((names[i], names[i + 1]))
        if extra is not None:
            edges.append((names[extra], names[n - 1]))
    return verts, edges


def dynkin_lattice(kind: "str | ADEType") -> IntegerLattice:
    v, e = dynkin_graph(kind)
    return lattice_from_dual_graph(v, e)


def _height_base(roots: list[tuple[int, ...]]) -> int:
    m = max((abs(c) for r in roots for c in r), default=0)
    return max(10, 2 * m + 1)


def simple_roots(lat: IntegerLattice) -> list[tuple[int, ...]]:
    """Simple roots for the chamber of a generic linear functional.

    The functional is ``x -> sum_i B^i x_i`` with ``B`` larger than twice any
    root coordinate, so it never vanishes on a nonzero root.
    """
    roots = definite_vectors(lat, norm=-2)
    base = _height_base(roots)
    weights = [base**i for i in range(lat.rank)]
    positive = [r for r in roots if sum(w * c for w, c in zip(weights, r)) > 0]
    pos_set = set(positive)
    simple = []
    for r in positive:
        decomposable = False
        for s in positive:
            t = tuple(a - b for a, b in zip(r, s))
            if t in pos_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(r)
    return sorted(simple)


def _classify_component(nodes: list[int], adj: dict[int, set[int]]) -> tuple[str, int]:
    n = len(nodes)
    degs = {v: len(adj[v]) for v in nodes}
    edges = sum(degs.values()) // 2
    if edges != n - 1:
        raise InternalInconsistency("simple-root graph component is not a tree")
    branch = [v for v in nodes if degs[v] >= 3]
    if not branch:
        if max(degs.values(), default=0) > 2:
            raise InternalInconsistency("unexpected vertex degree")
        return ("A", n)
    if len(branch) > 1 or degs[branch[0]] != 3:
        raise InternalInconsistency("simple-root graph is not of ADE shape")
    centre = branch[0]
    legs = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise InternalInconsistency("branching leg")
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return ("D", n)
    if legs == [1, 2, 2]:
        return ("E", 6)
    if legs == [1, 2, 3]:
        return ("E", 7)
    if legs == [1, 2, 4]:
        return ("E", 8)
    raise InternalInconsistency(f"legs {legs} do not define a simply laced Dynkin diagram")


def ade_type(lat: IntegerLattice) -> ADEType:
    """ADE type of a negative definite lattice generated by its roots."""
    if not lat.is_negative_definite:
        raise NotDefinite("ADE type needs a negative definite lattice")
    n = lat.rank
    if not definite_vectors(lat, norm=-2):
        raise NotRootGenerated("lattice has no roots")
    # every root is an integral combination of the simple ones, so the roots
    # generate L exactly when the simple roots form a basis of L
    simple = simple_roots(lat)
    if len(simple) > n:
        raise InternalInconsistency(f"found {len(simple)} simple roots in rank {n}")
    if len(simple) < n or abs(intmat.det([list(r) for r in simple])) != 1:
        raise NotRootGenerated("roots do not generate the lattice")
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            p = lat.inner(simple[i], simple[j])
            if p not in (0, 1):
                raise InternalInconsistency(f"simple roots pair to {p}")
            if p:
                adj[i].add(j)
                adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for v in range(n):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_classify_component(comp, adj))
    return ADEType(tuple(comps))


def root_count(kind: "str | ADEType") -> int:
    """Classical number of roots, used only as a cross-check."""
    t = ADEType.parse(kind) if isinstance(kind, str) else kind
    total = 0
    for letter, n in t.components:
        if letter == "A":
            total += n * (n + 1)
        elif letter == "D":
            total += 2 * n * (n - 1)
        else:
            total += {6: 72, 7: 126, 8: 240}[n]
    return total


def type_counter(t: ADEType) -> Counter:
    return Counter(t.components)


def iter_dynkin_types(max_rank: int) -> Iterable[ADEType]:
    """Every connected Dynkin type of rank at most ``max_rank``."""
    for n in range(1, max_rank + 1):
        yield ADEType((("A", n),))
    for n in range(4, max_rank + 1):
        yield ADEType((("D", n),))
    for n in (6, 7, 8):
        if n <= max_rank:
            yield ADEType((("E", n),))
