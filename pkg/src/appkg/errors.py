"""Exception hierarchy shared by the pipeline stages.

Every error carries a machine-readable ``code`` matching the names used in
reports and CLI diagnostics (``UNPARSEABLE_NUMBER``, ``SYNTAX_ERROR`` ...).
"""


class AppKGError(Exception):
    code = "ERROR"

    def __init__(self, message="", code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def detail(self) -> str:
        """The message without the code prefix."""
        return super().__str__()

    def __str__(self):
        msg = self.detail
        return f"{self.code}: {msg}" if msg else self.code
