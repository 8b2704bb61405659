"""Batch SMILES validity checking."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ParseError
from .parser import parse_smiles


@dataclass
class ValidityReport:
    fraction: float
    verdicts: list[bool] = field(default_factory=list)
    errors: list[str | None] = field(default_factory=list)
    empty_batch: bool = False


def check_validity(batch: list[str]) -> ValidityReport:
    """Fraction of parseable SMILES plus per-item verdicts.

    An empty batch yields fraction 0.0 with the ``empty_batch`` warning
    flag set; invalid items are verdicts, never exceptions.
    """
    if not batch:
        return ValidityReport(fraction=0.0, empty_batch=True)
    verdicts: list[bool] = []
    errors: list[str | None] = []
    for text in batch:
        try:
            parse_smiles(text)
        except ParseError as exc:
            verdicts.append(False)
            errors.append(str(exc))
        else:
            verdicts.append(True)
            errors.append(None)
    return ValidityReport(
        fraction=sum(verdicts) / len(verdicts), verdicts=verdicts, errors=errors
    )
