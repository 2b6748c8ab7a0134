"""Exception hierarchy.

Validation problems (bad input, violated preconditions) derive from
:class:`ValidationError`; numerical breakdowns derive from
:class:`NumericalError`.  The CLI maps the two families to exit codes 1 and 2.
"""


class ModwedgeError(Exception):
    pass


class ValidationError(ModwedgeError, ValueError):
    pass


class NumericalError(ModwedgeError, ArithmeticError):
    pass


class ZeroInput(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotStandard(ValidationError):
    def __init__(self, cyclic_defect, separating_defect):
        self.cyclic_defect = cyclic_defect
        self.separating_defect = separating_defect
        super().__init__(
            f"subspace is not standard (cyclic defect {cyclic_defect}, "
            f"separating defect {separating_defect})"
        )


class IllConditioned(NumericalError):
    def __init__(self, condition_number):
        self.condition_number = condition_number
        super().__init__(f"frame matrix is ill-conditioned (cond = {condition_number:.3e})")


class ModularRelationViolated(ValidationError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"|J Delta J - Delta^-1| = {residual:.3e}")


class NegativeWeight(ValidationError):
    pass


class AsymmetricAtoms(ValidationError):
    pass


class NotInAlgebra(ValidationError):
    pass


class InvarianceViolated(ValidationError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ConeInvarianceViolated(InvarianceViolated):
    pass


class NotSkewHermitian(ValidationError):
    pass


class InvalidRank(ValidationError):
    pass


class NotEuler(ValidationError):
    pass


class UnknownAlgebra(ValidationError):
    pass


class NotLorentz(ValidationError):
    pass


class OffSurface(ValidationError):
    def __init__(self, defect):
        self.defect = defect
        super().__init__(f"point is off the surface (defect {defect:.3e})")


class NotOnQuadric(ValidationError):
    pass


class NotUnimodular(ValidationError):
    pass


class EquivarianceViolated(ValidationError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"|J A J + A| = {residual:.3e}")


class NotUnitary(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class TruncationBudgetExceeded(NumericalError):
    def __init__(self, bound, tol):
        self.bound = bound
        super().__init__(f"truncation tail bound {bound:.3e} exceeds tolerance {tol:.1e}")
