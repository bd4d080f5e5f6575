"""Shared exception types."""


class NotDivisible(ArithmeticError):
    """Exact division failed: no quotient exists in the ring."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


class GroupMismatch(ValueError):
    """Operands belong to different groups."""


class NonAbelianGroup(ValueError):
    """Operation requires an abelian voltage group."""


class NormNotRational(RuntimeError):
    """Galois-norm product had residual root-of-unity components."""


class SchemaError(ValueError):
    """Input document does not match the expected schema."""


class DanglingVertexIndex(SchemaError):
    """Edge endpoint refers to a vertex index outside the graph."""


class DuplicateWeightName(SchemaError):
    """Two edges share a weight name."""


class VoltageKindMismatch(ValueError):
    """Operation requires the other kind of voltage (group vs permutation)."""


class SearchSpaceTooLarge(RuntimeError):
    """Brute-force enumeration would exceed the configured budget."""


class NotEulerian(ValueError):
    """Graph is not connected with in-degree = out-degree everywhere."""


class BlockMismatch(RuntimeError):
    """Triangularization blocks disagree with their direct constructions."""


class ZeroBaseArborescence(ValueError):
    """The chosen root has no arborescences in the base graph."""
