"""Exception hierarchy shared by all modules."""


class CobError(ValueError):
    """Base class for invalid cobordism data or operations."""


class NotPerfectMatching(CobError):
    pass


class OrientationClash(CobError):
    pass


class LabelMismatch(CobError):
    pass


class IndexOutOfRange(CobError):
    pass


class BoundaryMismatch(CobError):
    pass


class LabelSetMismatch(CobError):
    pass


class PrefixMismatch(CobError):
    pass


class UnknownLabel(CobError):
    pass


class SlotMismatch(CobError):
    pass


class TypeMismatch(ValueError):
    """A morphism was used at the wrong type in a traced or compact instance."""


class CompositionTypeMismatch(TypeMismatch):
    pass


class NotCompact(ValueError):
    """A compact-structure operation was requested on a non-compact category."""


class LawViolation(ValueError):
    """An algebraic law failed; ``law`` names the equation, ``witness`` the elements."""

    def __init__(self, law, witness=None):
        self.law = law
        self.witness = witness
        msg = law if witness is None else f"{law}: {witness!r}"
        super().__init__(msg)
