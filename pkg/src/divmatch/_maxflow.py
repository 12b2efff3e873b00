"""Small Dinic max-flow used for feasibility checks.

Kept independent of the min-cost solver on purpose: feasibility questions
are answered by this module, optimization by the successive-shortest-path
code, and the two cross-check each other in the test suite.
"""

from collections import deque


class MaxFlow:
    """Dinic's algorithm on a directed graph with integer capacities."""

    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        """Add arc u->v with the given capacity; returns the arc id."""
        a = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[u].append(a)
        self.to.append(u)
        self.cap.append(0)
        self.adj[v].append(a + 1)
        return a

    def flow_on(self, arc: int) -> int:
        """Flow currently routed over the arc returned by add_edge."""
        return self.cap[arc + 1]

    def _bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for a in self.adj[u]:
                v = self.to[a]
                if self.cap[a] > 0 and self.level[v] < 0:
                    self.level[v] = self.level[u] + 1
                    q.append(v)
        return self.level[t] >= 0

    def _dfs(self, u: int, t: int, f: int) -> int:
        if u == t:
            return f
        while self.it[u] < len(self.adj[u]):
            a = self.adj[u][self.it[u]]
            v = self.to[a]
            if self.cap[a] > 0 and self.level[v] == self.level[u] + 1:
                d = self._dfs(v, t, min(f, self.cap[a]))
                if d > 0:
                    self.cap[a] -= d
                    self.cap[a + 1] += d
                    return d
            self.it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                f = self._dfs(s, t, 1 << 62)
                if f == 0:
                    break
                flow += f
        return flow
