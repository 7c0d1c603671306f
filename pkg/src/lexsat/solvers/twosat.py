"""2-SAT via strongly connected components of the implication graph."""

from __future__ import annotations

from typing import Iterable, Sequence


def implication_graph(num_vars: int, clauses: Iterable[Sequence[int]]) -> list[list[int]] | None:
    """Adjacency lists over literal nodes, or None if an empty clause is present."""
    graph: list[list[int]] = [[] for _ in range(2 * num_vars)]
    for c in clauses:
        if len(c) == 0:
            return None
        if len(c) == 1:
            a = c[0]
            graph[a ^ 1].append(a)
        elif len(c) == 2:
            a, b = c
            graph[a ^ 1].append(b)
            graph[b ^ 1].append(a)
        else:
            raise ValueError(f"clause with {len(c)} literals is not a 2-CNF clause")
    return graph


def strongly_connected_components(graph: Sequence[Sequence[int]]) -> list[int]:
    """Iterative Tarjan; returns a component id per node."""
    n = len(graph)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, i = work[-1]
            edges = graph[node]
            if i < len(edges):
                work[-1] = (node, i + 1)
                nxt = edges[i]
                if index[nxt] == -1:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, 0))
                elif on_stack[nxt] and index[nxt] < low[node]:
                    low[node] = index[nxt]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == node:
                        break
                ncomp += 1
    return comp


def two_sat_satisfiable(num_vars: int, clauses: Iterable[Sequence[int]]) -> bool:
    graph = implication_graph(num_vars, clauses)
    if graph is None:
        return False
    comp = strongly_connected_components(graph)
    return all(comp[2 * v] != comp[2 * v + 1] for v in range(num_vars))
