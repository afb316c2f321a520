"""The sign convention and the hyperplane-family container shared by all layers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .pg import Hyperplane, ProjSpace


class Sign(enum.Enum):
    """PLUS reads every upper symbol of a +/- pair (hyperbolic), MINUS the lower (elliptic)."""

    PLUS = "+"
    MINUS = "-"

    @property
    def unit(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @classmethod
    def parse(cls, text: str) -> "Sign":
        text = text.strip().lower()
        if text in ("+", "plus", "hyperbolic"):
            return cls.PLUS
        if text in ("-", "minus", "elliptic"):
            return cls.MINUS
        raise ValueError(f"unknown sign {text!r}; expected '+' or '-'")


@dataclass(frozen=True)
class HyperplaneFamily:
    space: ProjSpace
    sign: Sign
    members: frozenset[Hyperplane]

    def __post_init__(self):
        if self.space.k % 2 == 0:
            raise ValueError(f"families live in odd dimension, got {self.space}")
        if not self.members:
            raise ValueError("a hyperplane family must be nonempty")
        if min(self.space.index_of_vectors(np.array([h.covector for h in self.members]))) < 0:
            raise ValueError("family members must be canonical hyperplanes of the space")

    @classmethod
    def from_indices(cls, space: ProjSpace, sign: Sign, indices: Iterable[int]) -> "HyperplaneFamily":
        hs = space.hyperplanes
        return cls(space, sign, frozenset(hs[int(i)] for i in indices))

    @property
    def n(self) -> int:
        return (self.space.k - 1) // 2

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def indicator(self) -> np.ndarray:
        ind = np.zeros(self.space.num_points, dtype=bool)
        ind[list(self.indices)] = True
        ind.setflags(write=False)
        return ind

    @cached_property
    def indices(self) -> tuple[int, ...]:
        idx = self.space.index_of_vectors(np.array([h.covector for h in self.members]))
        return tuple(sorted(int(i) for i in idx))

    def sorted_members(self) -> list[Hyperplane]:
        return sorted(self.members)
