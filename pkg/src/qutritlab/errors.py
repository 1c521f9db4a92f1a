"""Exception types. Every error carries a short machine-readable ``code``."""


class QutritLabError(ValueError):
    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class ShapeError(QutritLabError):
    code = "shape"


class NotHermitianError(QutritLabError):
    code = "not_hermitian"


class ConvergenceError(QutritLabError):
    code = "eig_no_converge"


class RangeError(QutritLabError):
    code = "range"


class NormError(QutritLabError):
    code = "norm"


class NotAStateError(QutritLabError):
    code = "not_a_state"

    @property
    def min_eigenvalue(self) -> float:
        return self.details["min_eigenvalue"]


class MemberError(QutritLabError):
    code = "member"


class NotPureError(QutritLabError):
    code = "not_pure"


class SizeError(QutritLabError):
    code = "size"


class ParityError(QutritLabError):
    code = "parity"
