from __future__ import annotations


class DisjointSet:
    """Union-find over 0..count-1 with path compression and union by rank."""

    def __init__(self, count: int) -> None:
        self.parent = list(range(count))
        self.rank = [0] * count

    def find(self, element: int) -> int:
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def union(self, first: int, second: int) -> bool:
        root_first = self.find(first)
        root_second = self.find(second)
        if root_first == root_second:
            return False
        if self.rank[root_first] < self.rank[root_second]:
            root_first, root_second = root_second, root_first
        self.parent[root_second] = root_first
        if self.rank[root_first] == self.rank[root_second]:
            self.rank[root_first] += 1
        return True

    def leaders(self) -> tuple[int, ...]:
        """Least element of each element's set."""
        least: dict[int, int] = {}
        for element in range(len(self.parent)):
            least.setdefault(self.find(element), element)
        return tuple(least[self.find(element)] for element in range(len(self.parent)))
