"""Machine-readable reports and their writers"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger

from src.exponents import AdmissibleRange, EmbeddingVerdict, ProblemDims, RegionBoundary
from src.utils.helpers import dumps_exact

CSV_FLOAT_FORMAT = "%.17g"


def _range(r: Optional[AdmissibleRange]) -> Optional[Dict[str, Any]]:
    return r.as_dict() if r is not None else None


@dataclass
class VerdictReport:
    """Everything a verdict run produced, in serialization order"""

    dims: ProblemDims
    status: str
    descriptors: Dict[str, Any]
    theorems: List[Dict[str, str]]
    q1: Optional[Dict[str, Any]]
    q2: Optional[Dict[str, Any]]
    single_space: Optional[Dict[str, Any]]
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    assumptions: List[Dict[str, Any]] = field(default_factory=list)

    @classmethod
    def from_verdict(
        cls,
        verdict: EmbeddingVerdict,
        dims: ProblemDims,
        assumptions: Optional[List[Dict[str, Any]]] = None,
    ) -> "VerdictReport":
        return cls(
            dims=dims,
            status=verdict.status,
            descriptors={"zero": verdict.zero.as_dict(), "infinity": verdict.infinity.as_dict()},
            theorems=[c.as_dict() for c in verdict.citations],
            q1=_range(verdict.q1),
            q2=_range(verdict.q2),
            single_space=_range(verdict.single_space),
            witnesses=[verdict.witness.as_dict()] if verdict.witness else [],
            warnings=list(verdict.warnings),
            assumptions=list(assumptions or []),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dims": {"N": self.dims.N, "p": self.dims.p},
            "status": self.status,
            "descriptors": self.descriptors,
            "theorems": self.theorems,
            "q1": self.q1,
            "q2": self.q2,
            "single_space": self.single_space,
            "witnesses": self.witnesses,
            "warnings": self.warnings,
            "assumptions": self.assumptions,
        }

    def to_json(self) -> str:
        return dumps_exact(self.to_dict())


def write_json(payload: Dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_exact(payload) + "\n")
    logger.info(f"wrote {path}")
    return path


def region_csv(boundary: RegionBoundary) -> str:
    """alpha,q_lower,q_upper with an empty q_upper for unbounded slices"""
    frame = boundary.to_frame()
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, na_rep="", lineterminator="\n")


def write_region(boundary: RegionBoundary, out_dir: Path, prefix: str = "") -> Dict[str, Path]:
    """Write the boundary polylines as CSV and the corner metadata as JSON"""
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{prefix}region.csv"
    csv_path.write_text(region_csv(boundary))
    json_path = write_json(boundary.metadata(), out_dir / f"{prefix}region.json")
    logger.info(f"wrote {csv_path}")
    return {"csv": csv_path, "json": json_path}
