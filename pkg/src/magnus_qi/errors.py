"""Exception types shared across the package."""


class RankError(ValueError):
    """A generator index falls outside 1..rank."""


class StructureError(ValueError):
    """Operands belong to incompatible groups."""


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} (token {position}: {token!r})")
        self.position = position
        self.token = token


class CapacityError(RuntimeError):
    """An exact kernel was asked to exceed its configured size cap."""


class RadiusExceeded(RuntimeError):
    """A bounded search did not find its target within the radius."""
