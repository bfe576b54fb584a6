from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Report:
    """Outcome of a structural check.

    ``witness`` carries the first counterexample found when ``ok`` is false.
    """

    ok: bool
    message: str = ""
    witness: Any = None

    def __bool__(self):
        return self.ok
