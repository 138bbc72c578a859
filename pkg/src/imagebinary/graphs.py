"""Small directed-graph helpers: strongly connected components and
reachability.  Graphs are dicts {node: iterable of successor nodes}; nodes
can be any hashable value.  Everything is deterministic given insertion
order.
"""

from __future__ import annotations

from collections import deque

__all__ = ["strongly_connected_components", "reachable_from", "reaches_any", "nodes_on_cycles"]


def strongly_connected_components(graph):
    """Tarjan's algorithm, iterative so deep graphs cannot blow the stack.

    Returns a list of components (each a list of nodes) in reverse
    topological order of the condensation.
    """
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = 0
    for root in graph:
        if root in index:
            continue
        work = [(root, iter(graph.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(graph.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(comp)
    return sccs


def reachable_from(graph, starts):
    """All nodes reachable from the start set, including the starts."""
    seen = set()
    queue = deque()
    for s in starts:
        if s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        node = queue.popleft()
        for succ in graph.get(node, ()):
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return seen


def reaches_any(graph, targets):
    """All nodes from which some target is reachable (targets included)."""
    back = {}
    for node, succs in graph.items():
        for succ in succs:
            back.setdefault(succ, []).append(node)
    return reachable_from(back, targets)


def nodes_on_cycles(graph):
    """Nodes lying on at least one directed cycle (self loops count)."""
    out = set()
    for comp in strongly_connected_components(graph):
        if len(comp) > 1:
            out.update(comp)
        else:
            node = comp[0]
            if node in graph.get(node, ()):
                out.add(node)
    return out
