class LZJDError(Exception):
    pass


class DigestFormatError(LZJDError, ValueError):
    """A digest line could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnsupportedFormatError(DigestFormatError):
    pass


class UnsupportedVersionError(DigestFormatError):
    pass


class CorruptDigestError(DigestFormatError):
    pass


class InvalidNameError(LZJDError, ValueError):
    pass


class IncompatibleDigestsError(LZJDError, ValueError):
    pass


class UndefinedContainmentError(LZJDError, ValueError):
    pass
