"""Errors raised by invariant computations.

Input problems (bad vertices, faces that are not faces, permutations that
are not automorphisms) are reported with Django's ``ValidationError``.
Everything below signals a computational condition instead; each carries a
stable ``code`` that ends up in JSON reports.
"""


class EsrError(Exception):
    code = "ESR_ERROR"

    def __init__(self, message, code=None, **details):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.details = details

    def as_dict(self):
        return {"error": self.message, "code": self.code, **self.details}


class ResourceCapExceeded(EsrError):
    code = "RESOURCE_CAP"


class NotPeriodicError(EsrError):
    code = "NOT_PERIODIC"


class LsopConstructionError(EsrError):
    INSUFFICIENT_ISOTYPIC_SPACE = "INSUFFICIENT_ISOTYPIC_SPACE"
    GENERICITY_EXHAUSTED = "GENERICITY_EXHAUSTED"


class QuotientError(EsrError):
    NONVANISHING_TAIL = "NONVANISHING_TAIL"
    TOP_NOT_ONE_DIMENSIONAL = "TOP_NOT_ONE_DIMENSIONAL"


class ComplexAssertionError(EsrError):
    """A cochain complex failed d∘d = 0 or equivariance."""

    code = "COMPLEX_ASSERTION"
