class ScaledCrystalError(Exception):
    pass


class FamilyMismatchError(ScaledCrystalError):
    def __init__(self, left, right, func) -> None:
        super().__init__(
            f"FamilyMismatchError in function {func}: {left!r} and {right!r} belong to different families"
        )
        self.left = left
        self.right = right


class ConstructionError(ScaledCrystalError):
    def __init__(self, data, func) -> None:
        super().__init__(f"ConstructionError in function {func}: {data}")


class NotEquivalentError(ScaledCrystalError):
    def __init__(self, x, y) -> None:
        super().__init__(f"NotEquivalentError: {x!r} and {y!r} are not ~N-equivalent")
        self.x = x
        self.y = y


class UndecidedEquivalenceError(ScaledCrystalError):
    def __init__(self, x, y, bound) -> None:
        super().__init__(
            f"UndecidedEquivalenceError: no kernel witness for {x!r} ~N {y!r} up to length {bound}"
        )
        self.x = x
        self.y = y
        self.bound = bound


class ClassOverflowError(ScaledCrystalError):
    def __init__(self, count, limit) -> None:
        super().__init__(f"ClassOverflowError: {count} classes exceed the configured limit {limit}")
        self.count = count
        self.limit = limit


class ZeroScaleError(ScaledCrystalError):
    def __init__(self) -> None:
        super().__init__("ZeroScaleError: the zero element has no scale")


class NotIdempotentError(ScaledCrystalError):
    def __init__(self, data) -> None:
        super().__init__(f"NotIdempotentError: {data!r} is not an idempotent")


class ValidationError(ScaledCrystalError):
    def __init__(self, reason, witness) -> None:
        super().__init__(f"ValidationError: {reason}, witness {witness}")
        self.reason = reason
        self.witness = witness


class BoundExceededError(ScaledCrystalError):
    def __init__(self, size, bound, func) -> None:
        super().__init__(f"BoundExceededError in function {func}: size {size} exceeds bound {bound}")
        self.size = size
        self.bound = bound


class DivergentError(ScaledCrystalError):
    def __init__(self, beta, abscissa) -> None:
        super().__init__(
            f"DivergentError: the partition function diverges at beta={beta} (abscissa {abscissa})"
        )
        self.beta = beta
        self.abscissa = abscissa


class NonKernelError(ScaledCrystalError):
    def __init__(self, data) -> None:
        super().__init__(f"NonKernelError: {data!r} is not in ker N")


class NonAbelianKernelError(ScaledCrystalError):
    def __init__(self, data) -> None:
        super().__init__(f"NonAbelianKernelError: ker N of {data} is not abelian")


class UnknownNameError(ScaledCrystalError):
    def __init__(self, name, kind) -> None:
        super().__init__(f"UnknownNameError: unknown {kind} {name!r}")
        self.name = name
        self.kind = kind


class InputError(ScaledCrystalError):
    def __init__(self, data, source) -> None:
        super().__init__(f"InputError in {source}: {data}")
        self.source = source


class CheckProcessingError(ScaledCrystalError):
    def __init__(self, data, func_name, error, stack) -> None:
        super().__init__(
            f"CheckProcessingError in check {func_name}: {data}, Error type {error}\n {stack}"
        )
        self.data = data
        self.func_name = func_name
        self.origin_error = error
        self.stack = stack
