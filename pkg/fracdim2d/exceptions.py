import json


class Fracdim2dError(Exception):
    """Base class of all the errors raised by fracdim2d.

    'code' is a stable machine readable identifier,
    'exit_code' is the status returned by the command line tool.
    'parameter' optionally names the offending input.
    """

    code = "error"
    exit_code = 2

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.message = message
        self.parameter = parameter

    def as_dict(self):
        ret = {"code": self.code, "message": self.message}
        if self.parameter:
            ret["parameter"] = self.parameter
        return ret

    def as_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)


class ParameterError(Fracdim2dError):
    code = "parameter"


class DomainError(Fracdim2dError):
    code = "domain"


class CatalogError(Fracdim2dError):
    code = "catalog"


class NumericError(Fracdim2dError):
    code = "numeric"


class ResolutionError(Fracdim2dError):
    code = "resolution"
    exit_code = 3


class SizeError(Fracdim2dError):
    code = "size"
    exit_code = 3


class FitError(Fracdim2dError):
    code = "fit"
    exit_code = 3


class VerificationError(Fracdim2dError):
    code = "verification"
    exit_code = 4
