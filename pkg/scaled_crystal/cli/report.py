import json
import logging
from dataclasses import dataclass, field
from typing import Optional

logger = logging.getLogger(__name__)

OK = "ok"
VIOLATION = "violation"
ERROR = "error"
EXIT_CODES = {OK: 0, VIOLATION: 1, ERROR: 2}


@dataclass
class Report:
    """
    The machine readable result of one command. ``provenance`` names, for each
    computed quantity, the formula it was computed from.
    """

    command: str
    status: str
    payload: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    witness: Optional[dict] = None

    def __post_init__(self):
        assert self.status in EXIT_CODES, f"unknown status {self.status}"
        if self.status == VIOLATION and self.witness is None:
            raise ValueError(f"{self.command}: a violation report needs a witness")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        data = {
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "provenance": self.provenance,
        }
        if self.witness is not None:
            data["witness"] = self.witness
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False)

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dumps())
            f.write("\n")
        logger.info(f"report written to {path}")


def error_report(command: str, error: Exception) -> Report:
    return Report(command, ERROR, {"error": type(error).__name__, "message": str(error)})
