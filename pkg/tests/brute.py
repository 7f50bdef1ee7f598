"""Slow reference implementations used as test oracles."""

from itertools import combinations


def adjacency_sets(edges, n):
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def triangles(adj):
    vs = sorted(adj)
    return sum(1 for a, b, c in combinations(vs, 3)
               if b in adj[a] and c in adj[a] and c in adj[b])


def all_cliques(adj):
    """Every nonempty clique, grown in increasing vertex order."""
    vs = sorted(adj)

    def extend(clique, cands):
        yield clique
        for k, v in enumerate(cands):
            yield from extend(clique + [v], [w for w in cands[k + 1:] if w in adj[v]])

    for k, v in enumerate(vs):
        yield from extend([v], [w for w in vs[k + 1:] if w in adj[v]])


def clique_number(adj):
    return max((len(c) for c in all_cliques(adj)), default=0)


def edges_of(graph):
    ep = graph.endpoints.tolist()
    return list(zip(ep[0::2], ep[1::2]))
