"""Families of translates of one convex body."""

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from pierce4.errors import InvalidGeometry, InvalidInstance
from pierce4.geometry import ConvexPolygon, contains_points
from pierce4.geometry.primitives import as_points, as_vec2


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] on a line."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise InvalidGeometry("interval has lo > hi", {"lo": self.lo, "hi": self.hi})

    def contains(self, t: float) -> bool:
        return self.lo <= t <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


@dataclass(eq=False)
class Instance:
    """Body K and n families of offsets; family i is {K + x : x in families[i]}."""

    body: ConvexPolygon
    families: List[np.ndarray]
    seed: Optional[int] = None
    _offsets: np.ndarray = field(init=False, repr=False)
    _labels: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        families = [as_points(np.asarray(fam, dtype=float).reshape(-1, 2)) for fam in self.families]
        self.families = families
        counts = [len(f) for f in families]
        self._offsets = np.vstack(families) if families else np.zeros((0, 2))
        self._labels = np.repeat(np.arange(len(families)), counts)

    @property
    def n(self) -> int:
        return len(self.families)

    @property
    def offsets(self) -> np.ndarray:
        """All offsets stacked family by family."""
        return self._offsets

    @property
    def labels(self) -> np.ndarray:
        """Family index of each stacked offset."""
        return self._labels

    def translates(self) -> Iterator[Tuple[int, int, np.ndarray]]:
        """(family, member, offset) for every translate."""
        for i, fam in enumerate(self.families):
            for k, x in enumerate(fam):
                yield i, k, x

    def translate(self, family: int, member: int) -> ConvexPolygon:
        return self.body.translated(self.families[family][member])

    def with_member(self, family: int, offset) -> "Instance":
        """Copy with one more translate appended to a family."""
        families = [f.copy() for f in self.families]
        families[family] = np.vstack([families[family], as_vec2(offset)[None, :]])
        return Instance(self.body, families, self.seed)

    def cross_violations(self, tol: float = 1e-9) -> List[Tuple[int, int, int, int]]:
        """(i, a, j, b) for every disjoint pair K+x_a in F_i, K+y_b in F_j with i < j."""
        diff = self.body.difference_body
        bad = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                fi, fj = self.families[i], self.families[j]
                if not len(fi) or not len(fj):
                    continue
                deltas = (fi[:, None, :] - fj[None, :, :]).reshape(-1, 2)
                ok = contains_points(diff, deltas, tol).reshape(len(fi), len(fj))
                for a, b in zip(*np.nonzero(~ok)):
                    bad.append((i, int(a), j, int(b)))
        return bad

    def validate(self, tol: float = 1e-9) -> "Instance":
        """Check the instance invariants; returns self for chaining."""
        if self.n < 2:
            raise InvalidInstance("an instance needs at least two families", {"n": self.n})
        empty = [i for i, f in enumerate(self.families) if len(f) == 0]
        if empty:
            raise InvalidInstance("every family must be nonempty", {"empty_families": empty})
        bad = self.cross_violations(tol)
        if bad:
            raise InvalidInstance(
                "cross-intersection hypothesis fails",
                {"violations": bad[:10], "count": len(bad)},
            )
        return self

    def to_dict(self) -> dict:
        return {
            "body": {"vertices": self.body.to_list()},
            "families": [f.tolist() for f in self.families],
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        body = data["body"]
        vertices = body["vertices"] if isinstance(body, dict) else body
        return cls(ConvexPolygon(vertices), data["families"], data.get("seed"))
