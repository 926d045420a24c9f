"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A test was invoked with parameters violating its precondition.

    Distinct from a composite verdict: the test never ran.
    """


class FactorFound(ArithmeticError):
    """A modular inverse failed, incidentally exposing a factor of n."""

    def __init__(self, n: int, factor: int):
        super().__init__(f"{factor} divides {n}")
        self.n = n
        self.factor = factor


class SearchExhausted(RuntimeError):
    """The parameter search walked past its candidate budget without resolution."""

    def __init__(self, n: int, bound: int):
        super().__init__(f"no usable parameter for {n} among the first {bound} candidates")
        self.n = n
        self.bound = bound
