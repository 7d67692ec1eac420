"""Exception types.

``FormatError`` marks bad input; the ``HypothesisViolation`` family marks a
mathematical precondition that does not hold (non-exact division, singular
symbol, infeasible construction, insufficient spectral order).
"""


class FormatError(ValueError):
    pass


class HypothesisViolation(ArithmeticError):
    pass


class NotExactlyDivisible(HypothesisViolation):
    pass


class SingularSymbol(HypothesisViolation):
    pass


class InfeasibleConstruction(HypothesisViolation):
    def __init__(self, message: str, rank: int, augmented_rank: int):
        super().__init__(message)
        self.rank = rank
        self.augmented_rank = augmented_rank


class InsufficientSpectralOrder(HypothesisViolation):
    def __init__(self, message: str, failed_at: int):
        super().__init__(message)
        self.failed_at = failed_at


class QuadratureError(ArithmeticError):
    pass
