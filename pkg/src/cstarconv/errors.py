"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Block counts or matrix shapes do not match the owning algebra."""


class PreconditionError(ValueError):
    """An input violates a documented precondition (e.g. not Hermitian)."""


class ConstructionError(ValueError):
    """Structural data (tables, irreps, bialgebras) is internally inconsistent."""


class SchemaError(ValueError):
    """A structured-text input does not conform to its file schema."""
