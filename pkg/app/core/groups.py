"""
Finite groups as Cayley tables.

Elements are dense indices 0..order-1. The builtin permutation families come
from sympy.combinatorics and compose with the right factor applied first:
(a*b)(i) = a(b(i)), which is Permutation.rmul(a, b) rather than a*b.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import (CyclicGroup, DihedralGroup, Permutation, PermutationGroup,
                                 SymmetricGroup)

from app.core.errors import GroupTableError, ResourceCapError, SubgroupError

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table."""

    order: int
    cayley: Table
    identity: int
    inverse: Tuple[int, ...]
    names: Tuple[str, ...]
    label: str = "G"

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def product(self, elements: Iterable[int]) -> int:
        """Ordered product of a sequence of elements (identity if empty)."""
        result = self.identity
        for element in elements:
            result = self.cayley[result][element]
        return result

    @property
    def elements(self) -> range:
        return range(self.order)

    def name(self, element: int) -> str:
        return self.names[element]

    def element(self, token: str) -> int:
        """
        Look up an element by display name or decimal index.

        Raises:
            KeyError: If the token names no element
        """
        token = token.strip()
        if token in self.names:
            return self.names.index(token)
        if token.isdigit() and int(token) < self.order:
            return int(token)
        raise KeyError(f"Group {self.label} has no element '{token}'")

    def is_abelian(self) -> bool:
        return all(self.cayley[a][b] == self.cayley[b][a]
                   for a in self.elements for b in range(a + 1, self.order))

    def center(self) -> Tuple[int, ...]:
        return tuple(z for z in self.elements
                     if all(self.cayley[z][g] == self.cayley[g][z] for g in self.elements))

    @cached_property
    def regular(self) -> Tuple[Permutation, ...]:
        """Left regular representation: g as the permutation x -> g*x."""
        return tuple(Permutation(list(row)) for row in self.cayley)

    def to_table_text(self) -> str:
        """Serialize to the Cayley-table file format."""
        lines = [str(self.order)]
        lines.extend(" ".join(str(v) for v in row) for row in self.cayley)
        lines.append(" ".join(self.names))
        return "\n".join(lines) + "\n"


def conjugate(G: FiniteGroup, g: int, h: int) -> int:
    """Return g^-1 h g."""
    return G.cayley[G.cayley[G.inverse[g]][h]][g]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup with its normality flag computed at construction."""

    parent: FiniteGroup
    members: Tuple[int, ...]
    label: str = ""
    normal: bool = field(init=False)
    witness: Optional[Tuple[int, int]] = field(init=False, default=None)

    def __post_init__(self):
        member_set = set(self.members)
        witness = None
        for g in self.parent.elements:
            for h in self.members:
                if conjugate(self.parent, g, h) not in member_set:
                    witness = (g, h)
                    break
            if witness:
                break
        object.__setattr__(self, "normal", witness is None)
        object.__setattr__(self, "witness", witness)
        if not self.label:
            names = ",".join(self.parent.name(m) for m in self.members)
            object.__setattr__(self, "label", "{" + names + "}")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, element: int) -> bool:
        return element in self.members

    def __iter__(self):
        return iter(self.members)

    def require_normal(self):
        """
        Raise SubgroupError naming a violating conjugation unless normal.
        """
        if self.normal:
            return
        g, h = self.witness
        G = self.parent
        image = conjugate(G, g, h)
        raise SubgroupError(
            f"{self.label} is not normal in {G.label}: "
            f"{G.name(g)}^-1 {G.name(h)} {G.name(g)} = {G.name(image)} is not a member"
        )


def subgroup_closure(G: FiniteGroup, generators: Iterable[int], label: str = "") -> Subgroup:
    """Smallest subgroup of G containing the generators."""
    gens = sorted(set(generators))
    for g in gens:
        if not 0 <= g < G.order:
            raise KeyError(f"Element index {g} out of range for {G.label}")
    members = {G.identity}
    if gens:
        closure = PermutationGroup([G.regular[g] for g in gens])
        # the regular image of h sends the identity to h
        members.update(perm.array_form[G.identity] for perm in closure.generate())
    return Subgroup(G, tuple(sorted(members)), label)


def all_subgroups(G: FiniteGroup) -> List[Subgroup]:
    """Every subgroup of G, as joins of cyclic subgroups."""
    found = {}
    for g in G.elements:
        sub = subgroup_closure(G, [g])
        found[sub.members] = sub
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for a, b in itertools.combinations(current, 2):
            if set(a.members) <= set(b.members) or set(b.members) <= set(a.members):
                continue
            joined = subgroup_closure(G, a.members + b.members)
            if joined.members not in found:
                found[joined.members] = joined
                changed = True
    return sorted(found.values(), key=lambda s: (s.order, s.members))


# ---------------------------------------------------------------------------
# Table validation
# ---------------------------------------------------------------------------

def check_group_axioms(cayley: Sequence[Sequence[int]]) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """
    Check a square table for the group axioms.

    Returns:
        None if the table is a group, else (axiom, witness tuple)
    """
    n = len(cayley)
    full = set(range(n))
    for i, row in enumerate(cayley):
        if len(row) != n:
            return "square table", (i,)
        if set(row) != full:
            return "row is a permutation", (i,)
    for j in range(n):
        if {cayley[i][j] for i in range(n)} != full:
            return "column is a permutation", (j,)

    identity = None
    for e in range(n):
        if all(cayley[e][g] == g and cayley[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        return "identity", ()

    for a in range(n):
        if not any(cayley[a][b] == identity and cayley[b][a] == identity for b in range(n)):
            return "inverse", (a,)

    for a in range(n):
        row_a = cayley[a]
        for b in range(n):
            ab = row_a[b]
            row_b = cayley[b]
            for c in range(n):
                if cayley[ab][c] != row_a[row_b[c]]:
                    return "associativity", (a, b, c)
    return None


def group_from_table(cayley: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                     label: str = "G") -> FiniteGroup:
    """
    Build a FiniteGroup from a validated table.

    Raises:
        GroupTableError: Naming the failed axiom and the witness
    """
    failure = check_group_axioms(cayley)
    if failure:
        axiom, triple = failure
        raise GroupTableError(f"Table fails group axiom '{axiom}' at {triple}")
    n = len(cayley)
    table = tuple(tuple(int(v) for v in row) for row in cayley)
    identity = next(e for e in range(n) if all(table[e][g] == g for g in range(n)))
    inverse = tuple(next(b for b in range(n) if table[a][b] == identity) for a in range(n))
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise GroupTableError(f"Expected {n} distinct element names, got {len(names)}")
    return FiniteGroup(n, table, identity, inverse, tuple(names), label)


def load_group_file(path) -> FiniteGroup:
    """
    Ingest a Cayley-table file.

    Format: line 1 the order n, then n rows of n indices (row g lists g*h),
    then an optional line of n names.

    Raises:
        GroupTableError: If the file is malformed or not a group
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GroupTableError(f"Cannot read table file {path}: {e}") from e

    lines = [line for line in text.split("\n") if line.strip()]
    if not lines:
        raise GroupTableError(f"{path}: empty table file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise GroupTableError(f"{path}: line 1 must be the group order, got '{lines[0]}'")
    if n < 1:
        raise GroupTableError(f"{path}: group order must be positive")
    if len(lines) < n + 1:
        raise GroupTableError(f"{path}: expected {n} table rows, found {len(lines) - 1}")

    rows = []
    for lineno, line in enumerate(lines[1:n + 1], start=2):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise GroupTableError(f"{path}: line {lineno} has a non-integer entry")
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise GroupTableError(f"{path}: line {lineno} must hold {n} indices in 0..{n - 1}")
        rows.append(row)

    names = None
    if len(lines) > n + 1:
        names = lines[n + 1].split()
    group = group_from_table(rows, names, label=path.stem)
    logger.info("Ingested group %s of order %d from %s", group.label, n, path)
    return group


# ---------------------------------------------------------------------------
# Builtin families
# ---------------------------------------------------------------------------

def _permutation_group(perms: Sequence[Permutation], names: Sequence[str],
                       label: str) -> FiniteGroup:
    """Cayley table of a list of sympy permutations under a(b(i)) composition."""
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[Permutation.rmul(a, b)] for b in perms] for a in perms]
    return group_from_table(table, names, label=label)


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n as the powers of an n-cycle; index k is the k-th power."""
    g = CyclicGroup(n).generators[0]
    return _permutation_group([g ** k for k in range(n)], [str(k) for k in range(n)], f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; index k + n*f stands for r^k s^f."""
    gens = DihedralGroup(n).generators
    rotation, reflection = gens[0], gens[1]
    perms = [Permutation.rmul(rotation ** k, reflection ** f) for f in (0, 1) for k in range(n)]

    def name(k, f):
        rot = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        if f:
            return rot + "s"
        return rot or "e"

    return _permutation_group(perms, [name(k, f) for f in (0, 1) for k in range(n)], f"D{n}")


def _cycle_name(perm: Permutation) -> str:
    if perm.is_Identity:
        return "e"
    sep = "" if perm.size < 10 else " "
    return "".join("(" + sep.join(str(p + 1) for p in cycle) + ")" for cycle in perm.cyclic_form)


def symmetric_group(n: int) -> FiniteGroup:
    """
    Permutations of n points.

    Ordered by number of moved points, then by cycle notation, so S3 is
    e, (12), (13), (23), (123), (132).
    """
    perms = sorted(SymmetricGroup(n).generate(), key=lambda p: (len(p.support()), p.cyclic_form))
    return _permutation_group(perms, [_cycle_name(p) for p in perms], f"S{n}")


# unit products for 1, i, j, k as (sign, unit)
_QUATERNION_UNITS = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def quaternion_group() -> FiniteGroup:
    """Q8 with indices 1, -1, i, -i, j, -j, k, -k."""
    elements = [(sign, unit) for unit in range(4) for sign in (1, -1)]
    index = {el: i for i, el in enumerate(elements)}
    unit_names = ("1", "i", "j", "k")

    def mul(a, b):
        sign, unit = _QUATERNION_UNITS[a[1]][b[1]]
        return (sign * a[0] * b[0], unit)

    table = [[index[mul(a, b)] for b in elements] for a in elements]
    names = [("" if s > 0 else "-") + unit_names[u] for s, u in elements]
    return group_from_table(table, names, label="Q8")


SPEC_PATTERNS = (
    (re.compile(r"^(?:cyclic:|z|c)(\d+)$"), "cyclic"),
    (re.compile(r"^(?:dihedral:|d)(\d+)$"), "dihedral"),
    (re.compile(r"^(?:symmetric:|s)(\d+)$"), "symmetric"),
    (re.compile(r"^(?:quaternion(?::8)?|q8)$"), "quaternion"),
)


def group_order_estimate(family: str, n: int) -> int:
    return {"cyclic": n, "dihedral": 2 * n, "symmetric": math.factorial(n), "quaternion": 8}[family]


def build_group(spec: str, max_order: int = 48) -> FiniteGroup:
    """
    Instantiate a group from a spec string.

    Args:
        spec: 'Z4'/'cyclic:4', 'D4'/'dihedral:4', 'S3'/'symmetric:3',
              'Q8'/'quaternion', or 'file:<path>' for a Cayley-table file
        max_order: Cap on builtin family orders

    Returns:
        FiniteGroup

    Raises:
        GroupTableError: Unknown spec or bad table file
        ResourceCapError: Builtin order above max_order
    """
    text = spec.strip()
    if text.lower().startswith("file:"):
        return load_group_file(text[5:])

    lowered = text.lower()
    for pattern, family in SPEC_PATTERNS:
        match = pattern.match(lowered)
        if not match:
            continue
        n = int(match.group(1)) if match.groups() else 8
        if n < 1 or (family == "dihedral" and n < 2):
            raise GroupTableError(f"Group spec '{spec}' needs a larger parameter")
        order = group_order_estimate(family, n)
        if order > max_order:
            raise ResourceCapError(
                f"Group '{spec}' has order {order}, above the cap of {max_order}")
        if family == "cyclic":
            return cyclic_group(n)
        if family == "dihedral":
            return dihedral_group(n)
        if family == "symmetric":
            return symmetric_group(n)
        return quaternion_group()
    raise GroupTableError(f"Unknown group spec '{spec}'")


def parse_subgroup_spec(G: FiniteGroup, text: str) -> Subgroup:
    """
    Resolve a subgroup spec against G.

    Accepts 'all', 'trivial', 'center', or comma-separated generator names
    (or indices). The closure of the generators is returned.

    Raises:
        SubgroupError: If a generator is not an element of G
    """
    spec = (text or "").strip()
    lowered = spec.lower()
    if lowered in ("all", "g", "whole"):
        return Subgroup(G, tuple(G.elements), G.label)
    if lowered in ("", "trivial", "e", "{e}"):
        return subgroup_closure(G, [], "{e}")
    if lowered in ("center", "centre"):
        return subgroup_closure(G, G.center(), f"Z({G.label})")
    try:
        gens = [G.element(tok) for tok in spec.split(",") if tok.strip()]
    except KeyError as e:
        raise SubgroupError(str(e.args[0])) from e
    label = "<" + ",".join(G.name(g) for g in gens) + ">"
    return subgroup_closure(G, gens, label)
