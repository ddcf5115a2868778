"""Symbolic cardinals: finite values, aleph-null, and the continuum.

Only these three shapes occur in the countable-residue-field setting: a
countable union of finitely generated pieces caps everything at 2^aleph0,
and alpha^aleph0 = 2^aleph0 for countable alpha.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=False)
class SymbolicCardinal:
    kind: str  # "finite" | "aleph0" | "continuum"
    finite_value: int | None = None

    _ORDER = {"finite": 0, "aleph0": 1, "continuum": 2}

    def __post_init__(self):
        if self.kind not in self._ORDER:
            raise ValueError(f"unknown cardinal kind {self.kind!r}")
        if (self.kind == "finite") != (self.finite_value is not None):
            raise ValueError("finite cardinals carry a value, infinite ones do not")
        if self.finite_value is not None and self.finite_value < 0:
            raise ValueError("finite cardinal must be >= 0")

    @staticmethod
    def finite(n: int) -> "SymbolicCardinal":
        return SymbolicCardinal("finite", n)

    def _key(self):
        return (self._ORDER[self.kind], self.finite_value or 0)

    def __lt__(self, other: "SymbolicCardinal") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "SymbolicCardinal") -> bool:
        return self._key() <= other._key()

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.finite_value})"
        return "Aleph0" if self.kind == "aleph0" else "Continuum"


ALEPH0 = SymbolicCardinal("aleph0")
CONTINUUM = SymbolicCardinal("continuum")


def max_cardinal(*values: SymbolicCardinal) -> SymbolicCardinal:
    out = values[0]
    for v in values[1:]:
        if out < v:
            out = v
    return out
