"""Exception hierarchy shared by every package."""


class CapacityLabError(Exception):
    pass


class InvalidArgument(CapacityLabError, ValueError):
    pass


class OracleScaleExceeded(InvalidArgument):
    """The exact path-LP oracle refuses networks above its node cap."""


class RoutingFailure(CapacityLabError):
    def __init__(self, cell, message=None):
        self.cell = cell
        super().__init__(message or f"empty cell {cell} on a routed path")


class UndefinedThroughput(CapacityLabError):
    pass


class SandwichViolation(CapacityLabError):
    def __init__(self, message, dump):
        self.dump = dump
        super().__init__(message)


class NetworkFileError(CapacityLabError):
    def __init__(self, message, byte_offset=None):
        self.byte_offset = byte_offset
        super().__init__(message)


class DisconnectedInstance(CapacityLabError):
    """No connected instance within the retry budget."""
