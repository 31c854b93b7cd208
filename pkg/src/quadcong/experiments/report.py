"""Report records shared by the experiments."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

DEFAULT_THETA = 7 / 64


def check_theta(theta: float) -> float:
    if not 0 <= theta <= 0.5:
        raise ValueError(f"theta must lie in [0, 1/2], got {theta}")
    return float(theta)


@dataclass
class DiscrepancyRow:
    cell: str
    exact_count: float
    main_term: float
    error: float


@dataclass
class ExperimentReport:
    name: str
    parameters: dict
    rows: list[DiscrepancyRow] = field(default_factory=list)
    total_error: float = 0.0
    trivial_bound: float = 0.0
    paper_bound: float = 0.0
    ratio_to_bound: float = 0.0
    runtime: float = field(default=0.0, compare=False)

    CSV_HEADER = ("cell", "exact_count", "main_term", "error")

    def csv_rows(self):
        return [(r.cell, r.exact_count, r.main_term, r.error) for r in self.rows]

    def to_dict(self) -> dict:
        # runtime stays out of the serialized form so reruns are byte-identical
        out = asdict(self)
        del out["runtime"]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        d = dict(d)
        d["rows"] = [DiscrepancyRow(**r) for r in d["rows"]]
        return cls(**d)
