"""Free dimension bookkeeping and the graph algebra engine.

Scalars may be ints, Fractions, :class:`~freeplanar.surd.QuadraticSurd`
values or floats; every routine is written against the common arithmetic
of those types, so exact inputs give exact outputs. ``math.inf`` stands
for an infinite free group parameter and is handled by explicit checks.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .config import tolerance
from .errors import (Disconnected, DomainError, InvalidWeights, NotNormalized, NumericFailure,
                     PartitionInvalid, PFViolated, SchemaInvalid, ShapeUnsupported, TooFewEdges,
                     WeightInvalid)
from .formatting import exact_str, free_group_str, is_exact, is_infinite
from .surd import parse_exact

INF = math.inf


def _num(x):
    """Promote ints to Fractions so divisions stay exact."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    return Fraction(x) if isinstance(x, int) else x


def _zero_like(x) -> bool:
    if isinstance(x, float):
        return abs(x) <= tolerance(1e-12)
    return x == 0


def _positive(x) -> bool:
    if isinstance(x, float):
        return x > tolerance(1e-12)
    return x > 0


# ---------------------------------------------------------------- decompositions

@dataclass(frozen=True)
class FreeGroup:
    """An interpolated free group factor summand L(F_t) of the given trace."""

    t: object
    trace: object

    def describe(self) -> str:
        return free_group_str(self.t)


@dataclass(frozen=True)
class MatrixAtom:
    """M_n with minimal projections of trace ``alpha``; ``n == 1`` is an atom."""

    n: int
    alpha: object

    @property
    def trace(self):
        return self.n * self.alpha

    def describe(self) -> str:
        return f"C_{exact_str(self.alpha)}" if self.n == 1 else f"M_{self.n}[{exact_str(self.alpha)}]"


@dataclass(frozen=True)
class DiffuseHyperfinite:
    trace: object

    def describe(self) -> str:
        return f"R[{exact_str(self.trace)}]"


Summand = Union[FreeGroup, MatrixAtom, DiffuseHyperfinite]


@dataclass(frozen=True)
class FactorDecomposition:
    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        for s in self.summands:
            if not _positive(s.trace):
                raise DomainError(f"summand {s} has nonpositive trace")
            if isinstance(s, FreeGroup) and not is_infinite(s.t) and not s.t > 1:
                raise DomainError(f"free group parameter must exceed 1, got {s.t}")

    def total_trace(self):
        return sum((s.trace for s in self.summands), Fraction(0))

    def atoms(self) -> list:
        return [s.alpha for s in self.summands if isinstance(s, MatrixAtom) and s.n == 1]

    def describe(self) -> str:
        return " ⊕ ".join(s.describe() for s in self.summands) if self.summands else "0"

    def __str__(self):
        return self.describe()


def _require_normalized(dec: FactorDecomposition) -> None:
    total = dec.total_trace()
    if isinstance(total, float):
        if abs(total - 1) > tolerance(1e-9):
            raise NotNormalized(f"total trace {total} != 1")
    elif total != 1:
        raise NotNormalized(f"total trace {exact_str(total)} != 1")


def fdim(dec: FactorDecomposition):
    """1 + sum of trace^2 (t-1) over free group summands - sum of alpha^2 over matrix blocks."""
    _require_normalized(dec)
    value = Fraction(1)
    for s in dec.summands:
        if isinstance(s, FreeGroup):
            if is_infinite(s.t):
                return INF
            value = value + s.trace * s.trace * (s.t - 1)
        elif isinstance(s, MatrixAtom):
            value = value - s.alpha * s.alpha
    return value


def amplify(t, gamma):
    """Parameter of the compression of L(F_t) by a projection of trace gamma."""
    if is_infinite(t):
        return INF
    t, gamma = _num(t), _num(gamma)
    if not _positive(gamma):
        raise DomainError("compression trace must be positive")
    return 1 + (t - 1) / (gamma * gamma)


def dykema_free_product(A: FactorDecomposition, B: FactorDecomposition) -> FactorDecomposition:
    """Free product of two finite-dimensional or diffuse-plus-atoms algebras.

    Supported shapes: two atoms against two atoms; n against m atoms with
    n, m >= 2 and n + m >= 5; one diffuse or free group summand plus atoms
    against at least two atoms. Atoms survive as p_i ^ q_j exactly when
    their traces sum past 1; the rest of the mass is one summand whose
    parameter is fixed by additivity of free dimension.
    """
    _require_normalized(A)
    _require_normalized(B)
    shape_a, shape_b = _shape(A), _shape(B)
    atoms_a = sorted(A.atoms(), reverse=True)
    atoms_b = sorted(B.atoms(), reverse=True)
    if shape_a == "atomic" and shape_b == "atomic":
        n, m = len(atoms_a), len(atoms_b)
        if not ((n == 2 and m == 2) or (n >= 2 and m >= 2 and n + m >= 5)):
            raise ShapeUnsupported(f"{n} atoms against {m} atoms")
    elif shape_a == "mixed" and shape_b == "atomic":
        if len(atoms_b) < 2:
            raise ShapeUnsupported("the atomic side needs at least two atoms")
    elif shape_a == "atomic" and shape_b == "mixed":
        if len(atoms_a) < 2:
            raise ShapeUnsupported("the atomic side needs at least two atoms")
    else:
        raise ShapeUnsupported(f"shapes {shape_a} and {shape_b}")

    surviving = []
    for a in atoms_a:
        for b in atoms_b:
            excess = a + b - 1
            if _positive(excess):
                surviving.append(excess)
    atom_mass = sum(surviving, Fraction(0))
    rest = 1 - atom_mass
    total = fdim(A) + fdim(B)
    summands: list[Summand] = []
    if _positive(rest):
        if is_infinite(total):
            summands.append(FreeGroup(INF, rest))
        else:
            excess = total - 1 + sum((s * s for s in surviving), Fraction(0))
            if _zero_like(excess):
                summands.append(DiffuseHyperfinite(rest))
            elif excess < 0:
                raise DomainError("free dimension bookkeeping went negative")
            else:
                summands.append(FreeGroup(1 + excess / (rest * rest), rest))
    summands.extend(MatrixAtom(1, s) for s in surviving)
    return FactorDecomposition(tuple(summands))


def _shape(dec: FactorDecomposition) -> str:
    big = [s for s in dec.summands if not (isinstance(s, MatrixAtom) and s.n == 1)]
    if not big:
        return "atomic"
    if len(big) == 1 and isinstance(big[0], (FreeGroup, DiffuseHyperfinite)):
        return "mixed"
    return "other"


def atoms(*traces) -> FactorDecomposition:
    """Convenience: a direct sum of one-dimensional summands."""
    return FactorDecomposition(tuple(MatrixAtom(1, t) for t in traces))


# ---------------------------------------------------------------- graphs

@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    color: str | None = None
    multiplicity: int = 1

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass
class WeightedGraph:
    vertices: dict[str, object]
    edges: list[Edge] = field(default_factory=list)
    marked: str = "*"

    def __post_init__(self):
        if not self.vertices:
            raise SchemaInvalid("graph has no vertices")
        if self.marked not in self.vertices:
            raise SchemaInvalid(f"marked vertex {self.marked!r} is not a vertex")
        for v, w in self.vertices.items():
            if is_infinite(w) or not _positive(w):
                raise WeightInvalid(f"weight of {v!r} must be positive, got {w}")
        for e in self.edges:
            if e.u not in self.vertices or e.v not in self.vertices:
                raise SchemaInvalid(f"edge {e.u}-{e.v} has an unknown endpoint")
            if e.multiplicity < 1:
                raise SchemaInvalid("edge multiplicity must be at least 1")

    # structure
    def edge_count(self) -> int:
        return sum(e.multiplicity for e in self.edges)

    def loops(self, v: str) -> int:
        return sum(e.multiplicity for e in self.edges if e.is_loop and e.u == v)

    def neighbors(self, v: str) -> dict[str, int]:
        """Multiplicities n_{v,w} to other vertices."""
        out: dict[str, int] = {}
        for e in self.edges:
            if e.is_loop:
                continue
            if e.u == v:
                out[e.v] = out.get(e.v, 0) + e.multiplicity
            elif e.v == v:
                out[e.u] = out.get(e.u, 0) + e.multiplicity
        return out

    def depths(self) -> dict[str, int]:
        depth = {self.marked: 0}
        queue = deque([self.marked])
        while queue:
            v = queue.popleft()
            for w in self.neighbors(v):
                if w not in depth:
                    depth[w] = depth[v] + 1
                    queue.append(w)
        return depth

    def is_connected(self) -> bool:
        return len(self.depths()) == len(self.vertices)

    def with_weights(self, weights: Mapping[str, object]) -> "WeightedGraph":
        return WeightedGraph({v: weights[v] for v in self.vertices}, list(self.edges), self.marked)

    # serialization
    @classmethod
    def from_json(cls, data, exact: bool = True) -> "WeightedGraph":
        """Build from the JSON schema; *data* may be a dict or JSON text.

        In exact mode integers and numeric strings (``"3/2"``, ``"sqrt2"``)
        become Fractions or QuadraticSurds and decimal literals are read
        exactly; otherwise every weight becomes a float.
        """
        if isinstance(data, str):
            data = json.loads(data)
        try:
            raw_vertices = data["vertices"]
            raw_edges = data.get("edges", [])
            marked = str(data.get("marked", "*"))
            vertices = {}
            for item in raw_vertices:
                vid = str(item["id"])
                if vid in vertices:
                    raise SchemaInvalid(f"duplicate vertex {vid!r}")
                vertices[vid] = _parse_weight(item.get("weight", 1), exact)
            edges = [Edge(str(e["u"]), str(e["v"]), e.get("color"), int(e.get("multiplicity", 1)))
                     for e in raw_edges]
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaInvalid(f"malformed graph document: {exc}") from exc
        return cls(vertices, edges, marked)

    def to_json(self) -> dict:
        from .formatting import json_value
        return {
            "vertices": [{"id": v, "weight": json_value(w)} for v, w in self.vertices.items()],
            "edges": [{"u": e.u, "v": e.v, **({"color": e.color} if e.color else {}),
                       "multiplicity": e.multiplicity} for e in self.edges],
            "marked": self.marked,
        }


def _parse_weight(value, exact: bool):
    if isinstance(value, bool):
        raise WeightInvalid("boolean weight")
    try:
        if exact:
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, float):
                return Fraction(repr(value))
            return parse_exact(str(value))
        if isinstance(value, (int, float)):
            return float(value)
        return float(parse_exact(str(value)))
    except (ValueError, ZeroDivisionError) as exc:
        raise WeightInvalid(f"cannot read weight {value!r}") from exc


def load_graph(path: str, exact: bool = True) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaInvalid(f"{path}: {exc}") from exc
    return WeightedGraph.from_json(data, exact=exact)


# ---------------------------------------------------------------- analysis

@dataclass
class GraphReport:
    graph: WeightedGraph
    gamma: dict[str, object]
    alpha: dict[str, object]
    atoms: dict[str, object]
    decomposition: FactorDecomposition
    t: object
    factor_trace: object
    fdim_additive: object
    fdim_formula: object
    single_edge: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def B(self) -> set[str]:
        return set(self.atoms)


def edge_algebra(graph: WeightedGraph, gamma: Mapping[str, object], edge: Edge) -> FactorDecomposition:
    """The algebra generated by the vertex projections and one edge."""
    summands: list[Summand] = []
    if edge.is_loop:
        summands.append(DiffuseHyperfinite(gamma[edge.u]))
        used = {edge.u}
    else:
        big, small = (edge.u, edge.v) if gamma[edge.u] >= gamma[edge.v] else (edge.v, edge.u)
        summands.append(DiffuseHyperfinite(2 * gamma[small]))
        left = gamma[big] - gamma[small]
        if _positive(left):
            summands.append(MatrixAtom(1, left))
        used = {edge.u, edge.v}
    for v in graph.vertices:
        if v not in used:
            summands.append(MatrixAtom(1, gamma[v]))
    return FactorDecomposition(tuple(summands))


def _normalized(graph: WeightedGraph) -> dict[str, object]:
    total = sum(graph.vertices.values(), Fraction(0))
    return {v: w / total for v, w in graph.vertices.items()}


def fdim_closed_form(graph: WeightedGraph):
    """Free dimension straight from the raw weights.

    1 + (sum over v, w ~ v of n_{v,w} mu_v mu_w - sum mu_v^2) / (sum mu_v)^2,
    the inner double sum running over ordered pairs so that a plain edge is
    counted twice and a loop once.
    """
    mu = graph.vertices
    total = sum(mu.values(), Fraction(0))
    squares = sum((w * w for w in mu.values()), Fraction(0))
    cross = Fraction(0)
    for e in graph.edges:
        if e.is_loop:
            cross = cross + e.multiplicity * mu[e.u] * mu[e.u]
        else:
            cross = cross + 2 * e.multiplicity * mu[e.u] * mu[e.v]
    return 1 + (cross - squares) / (total * total)


def analyze_graph(graph: WeightedGraph) -> GraphReport:
    if not graph.is_connected():
        raise Disconnected("graph is not connected")
    count = graph.edge_count()
    if count == 0:
        raise TooFewEdges("graph has no edges")
    gamma = _normalized(graph)
    alpha = {}
    for v in graph.vertices:
        a = graph.loops(v) * gamma[v]
        for w, n in graph.neighbors(v).items():
            a = a + n * gamma[w]
        alpha[v] = a
    atom_traces = {v: gamma[v] - alpha[v] for v in graph.vertices if _positive(gamma[v] - alpha[v])}

    diagonal = FactorDecomposition(tuple(MatrixAtom(1, g) for g in gamma.values()))
    fdim_d = fdim(diagonal)
    fdim_sum = Fraction(0)
    for e in graph.edges:
        fdim_sum = fdim_sum + e.multiplicity * fdim(edge_algebra(graph, gamma, e))
    additive = fdim_sum - (count - 1) * fdim_d
    formula = fdim_closed_form(graph)

    if count == 1:
        dec = edge_algebra(graph, gamma, graph.edges[0])
        return GraphReport(graph, gamma, alpha, atom_traces, dec, None, None, additive, formula,
                           single_edge=True,
                           notes=["single edge: the edge algebra itself is returned"])

    atom_mass = sum(atom_traces.values(), Fraction(0))
    factor = 1 - atom_mass
    squares = sum((a * a for a in atom_traces.values()), Fraction(0))
    t = 1 + (additive - 1 + squares) / (factor * factor)
    if not t > 1:
        raise NumericFailure(f"solved free group parameter {t} is not above 1")
    summands: list[Summand] = [FreeGroup(t, factor)]
    summands.extend(MatrixAtom(1, atom_traces[v]) for v in graph.vertices if v in atom_traces)
    return GraphReport(graph, gamma, alpha, atom_traces, FactorDecomposition(tuple(summands)),
                       t, factor, additive, formula)


def cutdown(report: GraphReport, v: str):
    """Parameter of the factor part of p_v N(Gamma) p_v."""
    if report.single_edge:
        raise DomainError("a single edge algebra has no free group factor to cut down")
    if v not in report.gamma:
        raise DomainError(f"unknown vertex {v!r}")
    part = report.gamma[v] - report.atoms.get(v, 0)
    return amplify(report.t, part / report.factor_trace)


# ---------------------------------------------------------------- Perron-Frobenius

@dataclass(frozen=True)
class PFResult:
    eigenvalue: float
    weights: dict[str, float]
    residual: float
    iterations: int


def adjacency_matrix(graph: WeightedGraph) -> tuple[list[str], np.ndarray]:
    order = list(graph.vertices)
    where = {v: i for i, v in enumerate(order)}
    A = np.zeros((len(order), len(order)))
    for e in graph.edges:
        i, j = where[e.u], where[e.v]
        if i == j:
            A[i, i] += e.multiplicity
        else:
            A[i, j] += e.multiplicity
            A[j, i] += e.multiplicity
    return order, A


def perron_frobenius(graph: WeightedGraph, max_iter: int = 100_000, tol: float | None = None) -> PFResult:
    """Dominant eigenpair by power iteration on A + I.

    The shift keeps the iteration from oscillating on bipartite graphs.
    Weights are scaled so the marked vertex has weight 1.
    """
    if not graph.is_connected():
        raise Disconnected("graph is not connected")
    tol = tolerance(1e-12) if tol is None else tol
    order, A = adjacency_matrix(graph)
    B = A + np.eye(len(order))
    mark = order.index(graph.marked)
    v = np.ones(len(order))
    for it in range(1, max_iter + 1):
        w = B @ v
        w = w / w[mark]
        lam = float(w @ (A @ w) / (w @ w))
        residual = float(np.max(np.abs(A @ w - lam * w)))
        if residual <= tol:
            return PFResult(lam, {u: float(x) for u, x in zip(order, w)}, residual, it)
        v = w
    raise NumericFailure(f"power iteration did not converge in {max_iter} steps")


# ---------------------------------------------------------------- parameter formulas

def check_pf(graph: WeightedGraph, delta, rel_tol: float = 1e-9) -> None:
    for v, mu in graph.vertices.items():
        rhs = graph.loops(v) * mu
        for w, n in graph.neighbors(v).items():
            rhs = rhs + n * graph.vertices[w]
        lhs = delta * mu
        if is_exact(lhs) and is_exact(rhs):
            ok = lhs == rhs
        else:
            ok = abs(float(lhs) - float(rhs)) <= rel_tol * max(1.0, abs(float(rhs)))
        if not ok:
            raise InvalidWeights(f"weights fail delta*mu = sum n mu at {v!r}")


def global_index(graph: WeightedGraph):
    """Sum of squared weights over vertices at even distance from the marked vertex."""
    depth = graph.depths()
    return sum((graph.vertices[v] ** 2 for v in graph.vertices if depth.get(v, 1) % 2 == 0), Fraction(0))


def gjs_formula(delta, index, k: int = 0):
    """1 + 2 delta^(-2k) (delta - 1) I."""
    delta, index = _num(delta), _num(index)
    if not delta > 1:
        raise DomainError("delta must exceed 1")
    return 1 + 2 * (delta - 1) * index / (delta ** (2 * k))


def gjs_parameter(graph: WeightedGraph, delta, k: int = 0):
    check_pf(graph, delta)
    return gjs_formula(delta, global_index(graph), k)


@dataclass
class ParameterComparison:
    printed: object
    engine: object | None = None
    flag: str | None = None
    extras: dict = field(default_factory=dict)


def compare(printed, engine, tol: float | None = None) -> str:
    tol = tolerance(1e-9) if tol is None else tol
    if is_exact(printed) and is_exact(engine):
        return "CONSISTENT" if printed == engine else "DIVERGENT"
    return "CONSISTENT" if abs(float(printed) - float(engine)) <= tol else "DIVERGENT"


def fc_printed(delta_a, delta_b, index, delta_alpha=1):
    """1 + 2 I delta_alpha^(-2) (delta_a + delta_b - 2)."""
    delta_a, delta_b, index, delta_alpha = map(_num, (delta_a, delta_b, index, delta_alpha))
    return 1 + 2 * index * (delta_a + delta_b - 2) / (delta_alpha * delta_alpha)


def fc_printed_theorem_text(delta_a, delta_b, index, delta_alpha=1):
    """Variant with delta_alpha to the first power, as it appears in one statement."""
    delta_a, delta_b, index, delta_alpha = map(_num, (delta_a, delta_b, index, delta_alpha))
    return 1 + 2 * index * delta_alpha * (delta_a + delta_b - 2)


def fc_engine(graph: WeightedGraph, delta_alpha=1):
    """Cut the graph factor down to the marked vertex, then amplify by delta_alpha."""
    return amplify(cutdown(analyze_graph(graph), graph.marked), delta_alpha)


def fc_parameter(delta_a, delta_b, index, delta_alpha=1, graph: WeightedGraph | None = None) -> ParameterComparison:
    printed = fc_printed(delta_a, delta_b, index, delta_alpha)
    out = ParameterComparison(printed)
    out.extras["printed_first_power"] = fc_printed_theorem_text(delta_a, delta_b, index, delta_alpha)
    if graph is not None:
        out.engine = fc_engine(graph, delta_alpha)
        out.flag = compare(printed, out.engine)
        delta_a, delta_b, index, delta_alpha = map(_num, (delta_a, delta_b, index, delta_alpha))
        out.extras["engine_closed_form"] = 1 + index * (2 * delta_a + 2 * delta_b - 3) / (delta_alpha * delta_alpha)
    return out


def gjs_comparison(delta, index, k: int, graph: WeightedGraph | None = None) -> ParameterComparison:
    printed = gjs_formula(delta, index, k)
    out = ParameterComparison(printed)
    if graph is not None:
        t = cutdown(analyze_graph(graph), graph.marked)
        for _ in range(k):
            t = amplify(t, delta)
        out.engine = t
        out.flag = compare(printed, t)
    return out


# ---------------------------------------------------------------- truncations

def truncate_graph(graph: WeightedGraph, k: int) -> WeightedGraph:
    """Vertices within distance k of the marked vertex, weights inherited."""
    depth = graph.depths()
    keep = {v for v, d in depth.items() if d <= k}
    edges = [e for e in graph.edges if e.u in keep and e.v in keep]
    return WeightedGraph({v: w for v, w in graph.vertices.items() if v in keep}, edges, graph.marked)


def a_infinity_weights(delta, count: int) -> list:
    """mu_0 = 1, mu_1 = delta, mu_{j+1} = delta mu_j - mu_{j-1}."""
    mu = [Fraction(1), delta]
    while len(mu) < count:
        mu.append(delta * mu[-1] - mu[-2])
    return mu[:count]


def a_infinity_family(delta) -> Callable[[int], WeightedGraph]:
    """Depth-k truncations of the half-line graph with its Perron-Frobenius weights."""
    def build(k: int) -> WeightedGraph:
        mu = a_infinity_weights(delta, k + 1)
        for j, m in enumerate(mu):
            if not _positive(m):
                raise InvalidWeights(f"weight {j} is not positive at delta={delta}")
        names = ["*"] + [str(j) for j in range(1, k + 1)]
        edges = [Edge(names[j], names[j + 1]) for j in range(k)]
        return WeightedGraph(dict(zip(names, mu)), edges, "*")
    return build


FAMILIES = {"a_inf": a_infinity_family}


def truncation_sequence(family: Callable[[int], WeightedGraph], k_max: int, k_min: int = 2) -> list:
    """t'_k = cutdown at the marked vertex of the depth-k truncation, k = k_min..k_max."""
    out = []
    for k in range(k_min, k_max + 1):
        g = family(k)
        out.append(cutdown(analyze_graph(g), g.marked))
    return out


# ---------------------------------------------------------------- tri-partite index

@dataclass
class IndexReport:
    index: object
    level_sums: dict[str, object]
    deltas: dict[str, object]
    deviations: dict[str, object]
    levels: dict[str, str]


def _levels(graph: WeightedGraph) -> dict[str, str]:
    step = {("N", "a"): "P", ("P", "a"): "N", ("P", "b"): "M", ("M", "b"): "P"}
    level = {graph.marked: "N"}
    queue = deque([graph.marked])
    adjacency: dict[str, list[tuple[str, str]]] = {v: [] for v in graph.vertices}
    for e in graph.edges:
        if e.is_loop:
            raise PartitionInvalid(f"loop at {e.u!r} in a tri-partite graph")
        if e.color not in ("a", "b"):
            raise PartitionInvalid(f"edge {e.u}-{e.v} needs color a or b")
        adjacency[e.u].append((e.v, e.color))
        adjacency[e.v].append((e.u, e.color))
    while queue:
        v = queue.popleft()
        for w, color in adjacency[v]:
            nxt = step.get((level[v], color))
            if nxt is None:
                raise PartitionInvalid(f"{color}-edge at {level[v]}-level vertex {v!r}")
            if w in level and level[w] != nxt:
                raise PartitionInvalid(f"vertex {w!r} would be on levels {level[w]} and {nxt}")
            if w not in level:
                level[w] = nxt
                queue.append(w)
    if len(level) != len(graph.vertices):
        raise Disconnected("graph is not connected")
    return level


def _colored_sum(graph: WeightedGraph, v: str, color: str):
    total = Fraction(0)
    for e in graph.edges:
        if e.color != color:
            continue
        if e.u == v:
            total = total + e.multiplicity * graph.vertices[e.v]
        elif e.v == v:
            total = total + e.multiplicity * graph.vertices[e.u]
    return total


def global_index_npm(graph: WeightedGraph, delta_a=None, delta_b=None, rel_tol: float = 1e-10) -> IndexReport:
    """Sum of squared weights over the N level, with the P and M sums for comparison."""
    level = _levels(graph)
    mu = graph.vertices
    if delta_a is None:
        delta_a = _infer(graph, level, "a", ("N", "P"))
    if delta_b is None:
        delta_b = _infer(graph, level, "b", ("P", "M"))
    for v, lv in level.items():
        for color, delta, sides in (("a", delta_a, ("N", "P")), ("b", delta_b, ("P", "M"))):
            if lv not in sides or delta is None:
                continue
            lhs, rhs = delta * mu[v], _colored_sum(graph, v, color)
            if is_exact(lhs) and is_exact(rhs):
                ok = lhs == rhs
            else:
                ok = abs(float(lhs) - float(rhs)) <= rel_tol * max(1.0, abs(float(rhs)))
            if not ok:
                raise PFViolated(f"{color}-condition fails at {v!r}: {exact_str(lhs)} vs {exact_str(rhs)}")
    sums = {lv: sum((mu[v] ** 2 for v in mu if level[v] == lv), Fraction(0)) for lv in ("N", "P", "M")}
    deviations = {lv: sums[lv] - sums["N"] for lv in ("P", "M")}
    return IndexReport(sums["N"], sums, {"a": delta_a, "b": delta_b}, deviations, level)


def _infer(graph: WeightedGraph, level: Mapping[str, str], color: str, sides: Sequence[str]):
    for v in graph.vertices:
        if level[v] in sides:
            s = _colored_sum(graph, v, color)
            if s != 0:
                return s / graph.vertices[v]
    return None
