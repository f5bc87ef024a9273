from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """Resource caps for the semi-decision procedures."""

    coset_rows: int = 10**6
    kb_rules: int = 50_000
    kb_steps: int = 10**6


DEFAULT_LIMITS = Limits()
