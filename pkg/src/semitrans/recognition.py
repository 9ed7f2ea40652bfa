"""Recognition of semi-transitively orientable split graphs, with certificates.

The pipeline: build the pairwise-intersection matrix of the independent
vertices' neighborhoods over the clique rows, prune constraint-free columns,
and ask the circular-ones engine for a certificate row permutation.  The
permutation read off as clique positions is a valid labeling (each vertex of
the independent set sees an interval or a wrapped prefix+suffix of positions,
and the pairwise cover conditions hold), from which an explicit orientation is
constructed and re-verified.  A refutation is either the circular-ones failure
itself or, for independent sets of size at most 3, one of the three forbidden
seven-vertex configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional, Sequence

from .graphs import Graph, SplitPartition, split_partition
from .matrices import BinaryMatrix, SizeGuardError, has_circular_ones
from .orient import Orientation, find_shortcut, is_acyclic, is_semi_transitive_orientation


class InternalConsistencyError(AssertionError):
    """A certified pipeline step failed its own re-validation (a bug, never input)."""


@dataclass(frozen=True)
class Labeling:
    """Bijection clique vertices -> positions 1..k, stored as the position order."""

    order: tuple[int, ...]  # order[p-1] = vertex at position p

    def position_of(self, v: int) -> int:
        cached = self.__dict__.get("_pos")
        if cached is None:
            cached = {u: i + 1 for i, u in enumerate(self.order)}
            object.__setattr__(self, "_pos", cached)
        return cached[v]

    @property
    def k(self) -> int:
        return len(self.order)

    def as_dict(self) -> dict[int, int]:
        return {u: i + 1 for i, u in enumerate(self.order)}


@dataclass(frozen=True)
class Shape:
    """Neighborhood of an independent vertex under a labeling.

    kind "interval" means positions [a, b]; kind "wrapped" means
    [1, a] u [b, k] with a < b; kind "empty" has no parameters.
    """

    kind: str
    a: int = 0
    b: int = 0


@dataclass(frozen=True)
class Violation:
    condition: int          # 1 = shape, 2 = interval/wrapped, 3 = wrapped/wrapped
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class LabelingReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Refutation:
    kind: str                       # "circ1p-fail" | "case-a" | "case-b" | "case-c"
    vertices: tuple[int, ...] = ()


@dataclass(frozen=True)
class Decision:
    semi_transitive: bool
    labeling: Optional[Labeling] = None
    orientation: Optional[Orientation] = None
    refutation: Optional[Refutation] = None
    verified: bool = False


def classify_positions(k: int, positions: Sequence[int]) -> Optional[Shape]:
    """Shape of a sorted position set in 1..k, or None if it is neither empty,
    an interval, nor a prefix+suffix pair."""
    if not positions:
        return Shape("empty")
    lo, hi = positions[0], positions[-1]
    if hi - lo + 1 == len(positions):
        return Shape("interval", lo, hi)
    if lo != 1 or hi != k:
        return None
    prefix = 0
    while prefix < len(positions) and positions[prefix] == prefix + 1:
        prefix += 1
    suffix = 0
    while suffix < len(positions) and positions[-1 - suffix] == k - suffix:
        suffix += 1
    if prefix + suffix != len(positions):
        return None
    return Shape("wrapped", prefix, k - suffix + 1)


def shape_of(p: SplitPartition, labeling: Labeling, v: int) -> Optional[Shape]:
    """Classify N(v) of an independent vertex under the labeling (None = violation)."""
    if v not in p.independent:
        raise ValueError(f"{v} is not an independent vertex of the partition")
    positions = sorted(labeling.position_of(u) for u in p.graph.neighbors(v))
    return classify_positions(p.k, positions)


def _pair_ok(u_shape: Shape, v_shape: Shape) -> Optional[int]:
    """Violated condition number for a shape pair, or None if fine."""
    if u_shape.kind == "empty" or v_shape.kind == "empty":
        return None
    if u_shape.kind == "interval" and v_shape.kind == "interval":
        return None
    if u_shape.kind == "wrapped" and v_shape.kind == "wrapped":
        # both prefixes must stop before the other's suffix begins
        if v_shape.a < u_shape.b and u_shape.a < v_shape.b:
            return None
        return 3
    interval = u_shape if u_shape.kind == "interval" else v_shape
    wrapped = v_shape if u_shape.kind == "interval" else u_shape
    if interval.a > wrapped.a or interval.b < wrapped.b:
        return None
    return 2


def validate_labeling(p: SplitPartition, labeling: Labeling) -> LabelingReport:
    """Check the three labeling conditions, reporting each violation found."""
    if sorted(labeling.order) != sorted(p.clique):
        raise ValueError("labeling is not a bijection on the clique")
    shapes: dict[int, Shape] = {}
    violations: list[Violation] = []
    for v in p.independent:
        s = shape_of(p, labeling, v)
        if s is None:
            violations.append(Violation(1, (v,)))
        else:
            shapes[v] = s
    verts = [v for v in p.independent if v in shapes]
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            cond = _pair_ok(shapes[u], shapes[v])
            if cond is not None:
                violations.append(Violation(cond, (u, v)))
    return LabelingReport(not violations, tuple(violations))


def validate_matrix_form(mtx: BinaryMatrix, perm: Sequence[int]) -> bool:
    """Matrix-level validity of a row permutation of a neighborhood matrix:
    (i) every column circular under perm, and (ii) for every column reading
    1^a 0^b 1^c (a, b, c >= 1) no other column has ones at all positions
    a .. a+b+1."""
    if sorted(perm) != list(range(1, mtx.m + 1)):
        raise ValueError("not a permutation of the matrix rows")
    k = mtx.m
    permuted = []
    for col in mtx.columns:
        mask = 0
        for pos, row in enumerate(perm):
            if (col >> (row - 1)) & 1:
                mask |= 1 << pos
        permuted.append(mask)
    full = (1 << k) - 1
    zones = []
    for mask in permuted:
        if mask == 0 or mask == full:
            continue
        comp = full & ~mask
        lowbit = comp & -comp
        rest = comp >> (lowbit.bit_length() - 1)
        if mask & 1 and (mask >> (k - 1)) & 1:
            if rest & (rest + 1) == 0:
                # wrapped column: the zero block plus its two bordering ones
                a = lowbit.bit_length() - 1
                b = comp.bit_count()
                zones.append(((1 << (b + 2)) - 1) << (a - 1))
                continue
            return False
        low1 = mask & -mask
        body = mask >> (low1.bit_length() - 1)
        if body & (body + 1) != 0:
            return False
    # a wrapped column never covers its own zone (the zone interior is its
    # zero block), so every column may be tested against every zone
    for zone in zones:
        for other in permuted:
            if other & zone == zone:
                return False
    return True


def intersection_matrix(p: SplitPartition) -> BinaryMatrix:
    """Characteristic vectors of all pairwise neighborhood intersections.

    k rows in clique order; columns indexed by independent pairs (i, j) with
    i <= j, labeled with the vertex ids.
    """
    masks = _neighborhood_masks(p)
    return intersection_matrix_from_masks(p.k, masks, tuple(p.independent))


def intersection_matrix_from_masks(
    k: int, masks: Sequence[int], ids: Optional[Sequence[int]] = None
) -> BinaryMatrix:
    t = len(masks)
    cols = []
    labels = [] if ids is not None else None
    for i in range(t):
        mi = masks[i]
        for j in range(i, t):
            cols.append(mi & masks[j])
            if labels is not None:
                labels.append((ids[i], ids[j]))
    return BinaryMatrix(k, len(cols), tuple(cols), tuple(labels) if labels is not None else None)


def prune_trivial_columns(mtx: BinaryMatrix) -> BinaryMatrix:
    """Drop columns with at most one 1; they are circular under every permutation."""
    keep = [j for j, c in enumerate(mtx.columns) if c.bit_count() >= 2]
    cols = tuple(mtx.columns[j] for j in keep)
    labels = tuple(mtx.labels[j] for j in keep) if mtx.labels is not None else None
    return BinaryMatrix(mtx.m, len(cols), cols, labels)


def _neighborhood_masks(p: SplitPartition) -> list[int]:
    row = {u: r for r, u in enumerate(p.clique)}
    masks = []
    for v in p.independent:
        m = 0
        for u in p.graph.neighbors(v):
            m |= 1 << row[u]
        masks.append(m)
    return masks


def decide_labeling(k: int, neighborhood_masks: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Decision core: a clique row order making every pairwise intersection
    circularly contiguous, or None.  This is the O(t^2 k) path that bench times."""
    mtx = intersection_matrix_from_masks(k, neighborhood_masks)
    return has_circular_ones(prune_trivial_columns(mtx))


def shapes_under_order(k: int, neighborhood_masks: Sequence[int], row_order: Sequence[int]) -> list[Optional[Shape]]:
    """Shape of every neighborhood mask when clique rows are placed in row_order."""
    pos_of_row = [0] * (k + 1)
    for pos, r in enumerate(row_order, start=1):
        pos_of_row[r] = pos
    out = []
    for mask in neighborhood_masks:
        positions = []
        mm = mask
        while mm:
            low = mm & -mm
            positions.append(pos_of_row[low.bit_length()])
            mm ^= low
        positions.sort()
        out.append(classify_positions(k, positions))
    return out


def validate_shapes(shapes: Sequence[Optional[Shape]]) -> bool:
    if any(s is None for s in shapes):
        return False
    real = [s for s in shapes if s.kind != "empty"]
    for i, u in enumerate(real):
        for v in real[i + 1:]:
            if _pair_ok(u, v) is not None:
                return False
    return True


def construct_orientation(p: SplitPartition, labeling: Labeling) -> Orientation:
    """The explicit orientation certified by a valid labeling.

    Clique edges follow increasing position.  A wrapped vertex receives its
    prefix and feeds its suffix: the opposite choice would close a directed
    cycle through the clique tournament.  Interval vertices are uniformly made
    sources; empty ones stay isolated.
    """
    report = validate_labeling(p, labeling)
    if not report.ok:
        raise ValueError(f"labeling does not satisfy the conditions: {report.violations}")
    pos = labeling.as_dict()
    arcs = set()
    for u, v in combinations(p.clique, 2):
        arcs.add((u, v) if pos[u] < pos[v] else (v, u))
    for v in p.independent:
        s = shape_of(p, labeling, v)
        if s.kind == "empty":
            continue
        if s.kind == "interval":
            for u in p.graph.neighbors(v):
                arcs.add((v, u))
        else:
            for u in p.graph.neighbors(v):
                if pos[u] <= s.a:
                    arcs.add((u, v))
                else:
                    arcs.add((v, u))
    return Orientation(p.graph, frozenset(arcs))


def recognize(p: SplitPartition, verify: bool = True) -> Decision:
    """Full recognition with certificates.

    With verify on (the default) a success decision carries an orientation that
    passed acyclicity and shortcut-freeness.  Failures carry the circular-ones
    refutation, upgraded to a case-tagged seven-vertex witness when the
    independent set has at most three vertices.  verify=False skips building
    the quadratic-size orientation and is meant for scaling measurements of
    the decision core.
    """
    masks = _neighborhood_masks(p)
    perm = decide_labeling(p.k, masks)
    if perm is None:
        if p.t <= 3:
            # small independent sets admit an explicit witness: one of the
            # three forbidden type quadruples must be present
            small = check_small_I(p, verify=False)
            if small.semi_transitive:
                raise InternalConsistencyError(
                    "matrix pipeline rejected an instance the small-I decision accepts"
                )
            return small
        return Decision(False, refutation=Refutation("circ1p-fail"))
    labeling = Labeling(tuple(p.clique[r - 1] for r in perm))
    report = validate_labeling(p, labeling)
    if not report.ok:
        raise InternalConsistencyError(
            f"circular-ones certificate produced an invalid labeling: {report.violations}"
        )
    orientation = None
    if verify:
        orientation = construct_orientation(p, labeling)
        if not is_acyclic(orientation):
            raise InternalConsistencyError("constructed orientation is cyclic")
        witness = find_shortcut(orientation)
        if witness is not None:
            raise InternalConsistencyError(f"constructed orientation has a shortcut: {witness}")
    return Decision(True, labeling=labeling, orientation=orientation, verified=verify)


def enumerate_labelings_oracle(p: SplitPartition, guard: int = 8) -> Optional[Labeling]:
    """Independent oracle: first valid labeling in lexicographic vertex order, or None."""
    if p.k > guard:
        raise SizeGuardError(f"k={p.k} exceeds the labeling oracle guard {guard}")
    masks = _neighborhood_masks(p)
    row_of = {u: r + 1 for r, u in enumerate(p.clique)}
    for order in permutations(sorted(p.clique)):
        shapes = shapes_under_order(p.k, masks, [row_of[u] for u in order])
        if validate_shapes(shapes):
            return Labeling(order)
    return None


_CASE_TAGS = ("a", "b", "c")


def _case_requirements(a: int, b: int, c: int) -> dict[str, list[frozenset[int]]]:
    return {
        "a": [frozenset(), frozenset({a, b}), frozenset({a, c}), frozenset({b, c})],
        "b": [frozenset({a, b, c}), frozenset({a, b}), frozenset({a, c}), frozenset({b, c})],
        "c": [frozenset({a, b, c}), frozenset({a}), frozenset({b}), frozenset({c})],
    }


def _slot_order(i_ids: tuple[int, ...], present: set[frozenset[int]]) -> list[frozenset[int]]:
    """Canonical slot order of the subset types for |I| <= 3, valid whenever
    none of the three forbidden configurations is present."""
    fs = frozenset
    if len(i_ids) == 0:
        return [fs()]
    if len(i_ids) == 1:
        a = i_ids[0]
        return [fs({a}), fs()]
    if len(i_ids) == 2:
        a, b = i_ids
        return [fs({a}), fs({a, b}), fs({b}), fs()]
    a, b, c = i_ids
    abc = fs({a, b, c})
    empty = fs()
    pair_prefs = [fs({a, b}), fs({a, c}), fs({b, c})]
    if abc not in present and empty not in present:
        return [fs({a}), fs({a, b}), fs({b}), fs({b, c}), fs({c}), fs({a, c})]
    missing_pair = next(pr for pr in pair_prefs if pr not in present)
    x, y = sorted(missing_pair)
    (z,) = set(i_ids) - missing_pair
    xz, yz = fs({x, z}), fs({y, z})
    if abc not in present:
        return [fs({x}), xz, fs({z}), yz, fs({y}), empty]
    s = next(w for w in sorted(i_ids) if fs({w}) not in present)
    if s == z:
        return [fs({x}), xz, abc, yz, fs({y}), empty]
    if s == x:
        return [fs({z}), xz, abc, yz, fs({y}), empty]
    return [fs({z}), yz, abc, xz, fs({x}), empty]


def check_small_I(p: SplitPartition, verify: bool = True) -> Decision:
    """Direct decision for independent sets of size at most 3.

    Any independent set of size at most 2 is accepted.  For size 3, clique
    vertices are grouped by their independent-side neighborhood; the graph is
    rejected exactly when one of the three forbidden type quadruples is fully
    present (the witness lists those seven vertices), and otherwise labeled by
    the canonical slot order, duplicates of a type placed consecutively.
    """
    if p.t > 3:
        raise ValueError(f"|I|={p.t} exceeds 3; reduce twins first")
    iset = set(p.independent)
    types = {u: frozenset(p.graph.neighbors(u) & iset) for u in p.clique}
    present = set(types.values())
    if p.t == 3:
        a, b, c = p.independent
        for tag, req in _case_requirements(a, b, c).items():
            if all(r in present for r in req):
                quad = [min(u for u in p.clique if types[u] == r) for r in req]
                witness = tuple(sorted([a, b, c] + quad))
                return Decision(False, refutation=Refutation(f"case-{tag}", witness))
    slots = _slot_order(p.independent, present)
    slot_index = {ty: i for i, ty in enumerate(slots)}
    order = tuple(sorted(p.clique, key=lambda u: (slot_index[types[u]], u)))
    labeling = Labeling(order)
    report = validate_labeling(p, labeling)
    if not report.ok:
        raise InternalConsistencyError(f"slot-order labeling invalid: {report.violations}")
    orientation = None
    if verify:
        orientation = construct_orientation(p, labeling)
        if not is_semi_transitive_orientation(orientation):
            raise InternalConsistencyError("slot-order orientation failed verification")
    return Decision(True, labeling=labeling, orientation=orientation, verified=verify)


def find_forbidden_subgraph(g: Graph) -> Optional[tuple[str, tuple[int, ...]]]:
    """Search for one of the three forbidden seven-vertex configurations.

    Anchors on non-adjacent triples, classifies every other vertex by its
    adjacency into the triple, and looks for a pairwise-adjacent quadruple with
    the required four types.  Returns (case tag, sorted vertex set) for the
    first witness in deterministic order, or None.
    """
    if split_partition(g) is None:
        raise ValueError("not a split graph")
    verts = list(g.vertices())
    for triple in combinations(verts, 3):
        a, b, c = triple
        if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c):
            continue
        tset = {a, b, c}
        by_type: dict[frozenset[int], list[int]] = {}
        for u in verts:
            if u in tset:
                continue
            by_type.setdefault(frozenset(g.neighbors(u) & tset), []).append(u)
        for tag, req in _case_requirements(a, b, c).items():
            pools = [by_type.get(r, []) for r in req]
            if not all(pools):
                continue
            quad = _adjacent_quad(g, pools)
            if quad is not None:
                return f"case-{tag}", tuple(sorted(triple + quad))
    return None


def _adjacent_quad(g: Graph, pools: list[list[int]]) -> Optional[tuple[int, ...]]:
    for u1 in pools[0]:
        for u2 in pools[1]:
            if not g.has_edge(u1, u2):
                continue
            for u3 in pools[2]:
                if not (g.has_edge(u1, u3) and g.has_edge(u2, u3)):
                    continue
                for u4 in pools[3]:
                    if g.has_edge(u1, u4) and g.has_edge(u2, u4) and g.has_edge(u3, u4):
                        return (u1, u2, u3, u4)
    return None


def render_decision(d: Decision, machine: bool = False) -> str:
    """External text form of a decision (plain or key=value record)."""
    if machine:
        lines = [f"outcome={'semi-transitive' if d.semi_transitive else 'not-semi-transitive'}"]
        if d.semi_transitive:
            lines.append("labeling=" + " ".join(f"{u}:{i + 1}" for i, u in enumerate(d.labeling.order)))
            if d.orientation is not None:
                lines.append("orientation=" + " ".join(f"{u}>{v}" for u, v in sorted(d.orientation.arcs)))
            lines.append(f"verified={'true' if d.verified else 'false'}")
        else:
            lines.append(f"witness={d.refutation.kind}")
            if d.refutation.vertices:
                lines.append("vertices=" + " ".join(str(v) for v in d.refutation.vertices))
        return "\n".join(lines) + "\n"
    if d.semi_transitive:
        lines = ["SEMI-TRANSITIVE"]
        lines.append("labeling: " + " ".join(f"{u}:{i + 1}" for i, u in enumerate(d.labeling.order)))
        if d.orientation is not None:
            lines.append("orientation:")
            lines.extend(f"{u} > {v}" for u, v in sorted(d.orientation.arcs))
        return "\n".join(lines) + "\n"
    lines = ["NOT-SEMI-TRANSITIVE"]
    witness = d.refutation.kind
    if d.refutation.vertices:
        witness += " " + " ".join(str(v) for v in d.refutation.vertices)
    lines.append(f"witness: {witness}")
    return "\n".join(lines) + "\n"
