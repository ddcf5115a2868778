"""Exception hierarchy shared by all modlat components."""


class ModlatError(Exception):
    """Base class for all errors raised by modlat."""


class RingConstructionError(ModlatError):
    """A structure-constant table fails one of the ring axioms."""


class NonAssociative(RingConstructionError):
    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(f"multiplication not associative at basis triple {(i, j, k)}")


class NonCommutative(RingConstructionError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"multiplication not commutative at basis pair {(i, j)}")


class NoUnit(RingConstructionError):
    def __init__(self, j: int):
        self.index = j
        super().__init__(f"basis element 0 does not act as unit on basis element {j}")


class MaximalIdealNotNilpotent(RingConstructionError):
    def __init__(self, stabilized_dim: int):
        self.stabilized_dim = stabilized_dim
        super().__init__(
            f"span of non-unit basis elements is not nilpotent "
            f"(power chain stabilizes at dimension {stabilized_dim})"
        )


class TooLarge(ModlatError):
    """A requested ring exceeds the configured basis-size cap."""

    def __init__(self, size: int, cap: int):
        self.size, self.cap = size, cap
        super().__init__(f"basis size {size} exceeds cap {cap}")


class MixedParents(ModlatError):
    """Two ideals or submodules with different parents were combined."""


class BudgetExceeded(ModlatError):
    """An enumeration passed its budget; partial counts are not returned as results."""

    def __init__(self, count_so_far: int, budget: int, what: str = "enumeration"):
        self.count_so_far = count_so_far
        self.budget = budget
        super().__init__(f"{what} exceeded budget {budget} (reached {count_so_far})")


class ActionNotRepresentation(ModlatError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(
            f"action matrices do not satisfy the structure constants at basis pair {(i, j)}"
        )


class NotSubmodule(ModlatError):
    """A vector set is not contained in, or not closed inside, the expected module."""


class DecompositionMismatch(ModlatError):
    """Torsion and ideal-power routes to a primary component disagree (implementation bug)."""


class NotBijective(ModlatError):
    """A canonical map expected to be a bijection failed the rank check (implementation bug)."""


class MultiplePrimes(ModlatError):
    """An operation requiring exactly one associated prime saw a different count."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"expected exactly one associated prime, found {count}")


class NotStabilized(ModlatError):
    """Finite differences of the length sequence did not stabilize at the given depth."""

    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"length sequence not stabilized at depth {depth}; request a deeper tower")


class InconsistentLevels(ModlatError):
    """Tower levels fail the projection-compatibility checks."""


class NotMinimax(ModlatError):
    """The descriptor contains an infinite marker, so the operation is undefined."""


class NotFinitelyGenerated(ModlatError):
    """The descriptor has divisible or localized summands, so it is not finitely generated."""


class UnsupportedSpec(ModlatError):
    """A module spec falls outside the finitely decidable grammar."""


class InvariantViolation(ModlatError):
    """A checked runtime invariant failed."""

    def __init__(self, name: str, detail: str = ""):
        self.name = name
        super().__init__(f"invariant violated: {name}" + (f" ({detail})" if detail else ""))


class ParseError(ModlatError):
    """An input file could not be parsed."""

    def __init__(self, path: str, message: str, line: int | None = None):
        self.path, self.line = path, line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")
