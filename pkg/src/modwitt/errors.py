"""Exception hierarchy shared by all modules."""


class ModWittError(Exception):
    """Base class for every error raised by this package."""


class RingSpecError(ModWittError, ValueError):
    def __init__(self, spec, position, message):
        self.spec = spec
        self.position = position
        super().__init__(f"{message} at position {position} in ring spec {spec!r}")


class NotPNilpotent(ModWittError, ValueError):
    def __init__(self, i, s, value=None):
        self.i, self.s, self.value = i, s, value
        super().__init__(f"entry a[{i},{s}] does not satisfy a^p = 0")


class NonzeroConstantTerm(ModWittError, ValueError):
    pass


class AlgebraMismatch(ModWittError, ValueError):
    pass


class RelationViolated(ModWittError, ValueError):
    def __init__(self, i, s):
        self.i, self.s = i, s
        super().__init__(f"image of generator y[{i},{s}] has nonzero p-th power")


class NotInvertible(ModWittError, ArithmeticError):
    pass


class NotADerivation(ModWittError):
    pass


class NotDerivationAutomorphism(ModWittError, ValueError):
    pass


class InternalDecompositionFailure(ModWittError, AssertionError):
    pass


class NoOrthonormalSystem(ModWittError):
    def __init__(self, achieved_rank, required_rank):
        self.achieved_rank = achieved_rank
        self.required_rank = required_rank
        super().__init__(
            f"no orthonormal system in the monomial net "
            f"(achieved rank {achieved_rank} of {required_rank})"
        )


class DependentEigenvalues(ModWittError, ValueError):
    pass


class InseparableCharPoly(ModWittError):
    def __init__(self, coefficients, message="characteristic polynomial is inseparable"):
        self.coefficients = list(coefficients)
        super().__init__(message)


class IterationCapExceeded(ModWittError, RuntimeError):
    pass
