class MsnError(Exception):
    """Base class for every error raised by the toolkit."""


class MsnValidationError(MsnError, ValueError):
    pass


class InvalidEdgeError(MsnValidationError):
    """A loop or a negative weight in an edge record."""

    def __init__(self, message, record=None, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.record = record
        self.line = line


class DuplicateEdgeError(MsnValidationError):
    def __init__(self, source, target, layer):
        super().__init__(f"duplicate edge ({source}, {target}, {layer})")
        self.key = (source, target, layer)


class NormalizationError(MsnValidationError):
    def __init__(self, node, layer):
        super().__init__(
            f"outgoing weights of node {node!r} on layer {layer!r} sum to 0, cannot normalize"
        )
        self.node = node
        self.layer = layer


class ParseError(MsnValidationError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IngestionError(MsnValidationError):
    """Events that cannot be placed on the time axis."""

    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class HistogramRangeError(MsnValidationError):
    def __init__(self, value, last_edge):
        super().__init__(f"value {value!r} is above the last bin edge {last_edge!r}")
        self.value = value


class ContractViolationError(MsnValidationError):
    pass


class DegenerateNetworkError(MsnValidationError):
    pass


class DegenerateFitError(MsnValidationError):
    pass


class InsufficientDataError(MsnValidationError):
    pass


class ConfigurationError(MsnValidationError):
    pass


class NotFoundError(MsnError, KeyError):
    def __str__(self):
        # KeyError quotes its argument, keep plain messages
        return str(self.args[0]) if self.args else ""


class UnknownNodeError(NotFoundError):
    def __init__(self, node):
        super().__init__(f"unknown node {node!r}")
        self.node = node


class UnknownLayerError(NotFoundError):
    def __init__(self, layer):
        super().__init__(f"unknown layer {layer!r}")
        self.layer = layer
