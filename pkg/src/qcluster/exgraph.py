"""Exchange graphs of quantum seeds.

Vertices are clusters: seeds are identified by the set of initial-frame
expansions of their mutable variables, so the slot order is quotiented out.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .seed import QuantumSeed


class BoundExceeded(RuntimeError):
    """Enumeration passed max_vertices (likely an infinite-type seed)."""


@dataclass
class ExchangeGraph:
    initial: QuantumSeed
    vertices: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)  # (src, column, dst), src order then column
    labels: dict = field(default_factory=dict)  # expansion key -> label
    expansions: dict = field(default_factory=dict)  # expansion key -> TorusElement
    order: list = field(default_factory=list)  # expansion keys in discovery order

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_directed_edges(self):
        return len(self.edges)

    def undirected_edges(self):
        seen = set()
        for s, _, t in self.edges:
            seen.add((min(s, t), max(s, t)))
        return sorted(seen)

    def degree(self, v):
        return sum(1 for s, _, _ in self.edges if s == v)

    def frozen_keys(self):
        seed = self.initial
        return [seed.expansions[i].key() for i in seed.frozen_rows]

    def mutable_keys(self):
        keys = set()
        for seed in self.vertices:
            keys.update(seed.expansions[r].key() for r in seed.mutable_rows)
        return [k for k in self.order if k in keys]

    def label(self, key):
        return self.labels[key]

    def cluster_labels(self, v):
        seed = self.vertices[v]
        return [self.labels[seed.expansions[r].key()] for r in seed.mutable_rows]

    def to_dot(self, name="exchange_graph"):
        lines = [f"graph {name} {{", "  node [shape=ellipse];"]
        for v in range(self.n_vertices):
            text = ", ".join(sorted(self.cluster_labels(v)))
            lines.append(f'  v{v} [label="{{{_esc(text)}}}"];')
        grouped = {}
        for s, k, t in self.edges:
            a, b = min(s, t), max(s, t)
            grouped.setdefault((a, b), []).append(f"{s}:{k}")
        for (a, b), dirs in sorted(grouped.items()):
            lines.append(f'  v{a} -- v{b} [label="{_esc(" ".join(dirs))}"];')
        frozen = ", ".join(self.labels[k] for k in self.frozen_keys())
        lines.append(f'  frozen [shape=box, label="frozen: {_esc(frozen)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_adjacency(self):
        return {
            "vertices": [
                {"id": v, "mutable": self.cluster_labels(v)} for v in range(self.n_vertices)
            ],
            "edges": [{"source": s, "direction": k, "target": t} for s, k, t in self.edges],
            "frozen": [self.labels[k] for k in self.frozen_keys()],
        }

    def to_json(self):
        return json.dumps(self.to_adjacency(), indent=2, ensure_ascii=False)


def _esc(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def enumerate_graph(seed: QuantumSeed, max_vertices=10000, labels=None) -> ExchangeGraph:
    """Breadth-first closure of ``seed`` under mutation in every mutable direction."""
    if seed.expansions is None:
        seed = seed.with_initial_expansions()
    seed.compatibility()
    graph = ExchangeGraph(initial=seed)
    labels = dict(labels or {})

    used = set()

    def register(key, element, default):
        if key not in graph.labels:
            name = labels.get(key)
            if name is None:
                name = default
                while name in used:
                    name += "'"
            used.add(name)
            graph.labels[key] = name
            graph.expansions[key] = element
            graph.order.append(key)
        return graph.labels[key]

    for i, name in enumerate(seed.names):
        register(seed.expansions[i].key(), seed.expansions[i], name)
    graph.vertices.append(seed)
    graph.index[seed.mutable_keys()] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        current = graph.vertices[v]
        for k in range(current.n):
            r = current.mutable_rows[k]
            nxt = current.mutate(k)
            key = nxt.expansions[r].key()
            name = register(key, nxt.expansions[r], current.names[r] + "'")
            if name != nxt.names[r]:
                names = list(nxt.names)
                names[r] = name
                nxt = QuantumSeed(tuple(names), nxt.B, nxt.L, nxt.expansions)
            vkey = nxt.mutable_keys()
            target = graph.index.get(vkey)
            if target is None:
                if len(graph.vertices) >= max_vertices:
                    raise BoundExceeded(
                        f"exchange graph has more than {max_vertices} vertices"
                    )
                target = len(graph.vertices)
                graph.vertices.append(nxt)
                graph.index[vkey] = target
                queue.append(target)
            graph.edges.append((v, k, target))
    return graph


def collect_variables(graph: ExchangeGraph):
    """(mutable labels, frozen labels) in discovery order."""
    return (
        [graph.labels[k] for k in graph.mutable_keys()],
        [graph.labels[k] for k in graph.frozen_keys()],
    )


def denominator_vector(expansion, seed: QuantumSeed):
    """d_c = -(minimum exponent of initial mutable variable c over all terms)."""
    out = []
    for r in seed.mutable_rows:
        out.append(-min(a[r] for a in expansion.terms))
    return tuple(out)


def _path_order(principal):
    """Column order along the path if the principal part is an A_n orientation."""
    n = len(principal)
    if n == 0:
        return []
    adj = {a: [] for a in range(n)}
    for a in range(n):
        for b in range(n):
            if principal[a][b]:
                if abs(principal[a][b]) != 1:
                    return None
                adj[a].append(b)
    if sum(len(v) for v in adj.values()) != 2 * (n - 1):
        return None
    if any(len(v) > 2 for v in adj.values()):
        return None
    ends = [a for a in range(n) if len(adj[a]) <= 1]
    start = min(ends)
    order, prev = [start], None
    while len(order) < n:
        nxt = [b for b in adj[order[-1]] if b != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def cluster_type(graph_or_seed):
    """'A<n>' when some vertex's principal part orients a path on n <= 4 nodes."""
    seeds = graph_or_seed.vertices if isinstance(graph_or_seed, ExchangeGraph) else [graph_or_seed]
    for seed in seeds:
        if seed.n > 4:
            break
        if _path_order(seed.B.principal_part()) is not None:
            return f"A{seed.n}"
    return "unclassified"


def almost_positive_roots(seed: QuantumSeed):
    """Negative simple roots and positive roots of A_n, in the seed's column basis.

    Requires the principal part to orient a path; returns None otherwise.
    """
    order = _path_order(seed.B.principal_part())
    if order is None:
        return None
    n = seed.n
    roots = []
    for c in range(n):
        v = [0] * n
        v[c] = -1
        roots.append(tuple(v))
    for i in range(n):
        for j in range(i, n):
            v = [0] * n
            for t in order[i : j + 1]:
                v[t] = 1
            roots.append(tuple(v))
    return roots


def root_labeling(graph: ExchangeGraph):
    """Map each mutable label to its denominator vector."""
    return {
        graph.labels[k]: denominator_vector(graph.expansions[k], graph.initial)
        for k in graph.mutable_keys()
    }


def quiver_dot(seed: QuantumSeed, name="quiver"):
    from .seed import quiver_of

    arrows, frozen = quiver_of(seed.B)
    lines = [f"digraph {name} {{"]
    for i, label in enumerate(seed.names):
        shape = "box" if frozen[i] else "ellipse"
        lines.append(f'  n{i} [label="{_esc(label)}", shape={shape}];')
    for i, j, w in arrows:
        attr = f' [label="{w}"]' if w != 1 else ""
        lines.append(f"  n{i} -> n{j}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
