"""Empirical check of the quasi-isometry bounds for the Magnus embedding (B = Z^r).

For each word w the harness computes the F/N' length (flows + Steiner
forest), both wreath-length variants, and checks

    |w| / (2(r+1)) <= |phi(w)|      and      |phi(w)| <= 3 |w|

with exact rationals, together with sum of lamp costs == sum |pi_w(e)| and
|w-bar| <= |w|. Optional breadth-first oracles re-derive both lengths.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .errors import CapacityError
from .flows import flow_of_word
from .geodesic import build_delta_star
from .groups import Lattice
from .kernels import DEFAULT_FOREST_CAP, DEFAULT_TOUR_CAP
from .oracles import EXCEEDS_RADIUS, bfs_geodesic_oracle_fn, bfs_geodesic_oracle_wreath
from .words import Word, free_reduce, random_reduced_word
from .wreath import magnus_embed, sum_lamp_costs, wreath_length_circuit, wreath_length_walk

WORD_MODEL = "length uniform in [0, max_len]; letters uniform over the 2r-1 non-cancelling choices"


@dataclass(frozen=True)
class CampaignConfig:
    rank: int = 2
    samples: int = 100
    max_len: int = 12
    seed: int = 1
    degree: int = 2
    oracle_radius: int = 8
    tour_cap: int = DEFAULT_TOUR_CAP
    forest_cap: int = DEFAULT_FOREST_CAP
    workers: int = 1

    def __post_init__(self):
        if self.rank < 1 or self.samples < 0 or self.max_len < 0:
            raise ValueError("rank must be positive, samples and max_len nonnegative")
        if self.degree != 2:
            raise ValueError("geodesic campaigns run in the free metabelian group (degree 2)")


@dataclass
class QiRecord:
    word: str
    rank: int
    reduced_length: int
    length_fn: int | None = None
    circuit: int | None = None
    walk: int | None = None
    sum_flow: int | None = None
    sum_lamps: int | None = None
    shadow_norm: int | None = None
    oracle_fn: int | str | None = None
    oracle_wreath: int | str | None = None
    oracle_radius: int = 0
    capacity: list[str] = field(default_factory=list)

    @property
    def lower_bound(self) -> Fraction | None:
        return None if self.length_fn is None else Fraction(self.length_fn, 2 * (self.rank + 1))

    @property
    def upper_bound(self) -> int | None:
        return None if self.length_fn is None else 3 * self.length_fn

    def _lower(self, value):
        return None if value is None or self.lower_bound is None else self.lower_bound <= value

    def _upper(self, value):
        return None if value is None or self.upper_bound is None else value <= self.upper_bound

    def checks(self) -> dict[str, bool | None]:
        """Pass flags, recomputed from the stored numbers; None when not computable."""
        oracle_fn_ok = None
        if self.oracle_fn is not None and self.length_fn is not None:
            if self.oracle_fn == EXCEEDS_RADIUS:
                oracle_fn_ok = self.length_fn > self.oracle_radius
            else:
                oracle_fn_ok = self.oracle_fn == self.length_fn
        oracle_wr_ok = None
        if self.oracle_wreath is not None and self.walk is not None:
            if self.oracle_wreath == EXCEEDS_RADIUS:
                oracle_wr_ok = self.walk > self.oracle_radius
            else:
                oracle_wr_ok = self.oracle_wreath == self.walk
        return {
            "lowerWalk": self._lower(self.walk),
            "lowerCircuit": self._lower(self.circuit),
            "upperWalk": self._upper(self.walk),
            "upperCircuit": self._upper(self.circuit),
            "walkLeCircuit": None if self.walk is None or self.circuit is None else self.walk <= self.circuit,
            "lemmaLamps": None if self.sum_lamps is None else self.sum_lamps == self.sum_flow,
            "quotient": None if self.length_fn is None else self.shadow_norm <= self.length_fn,
            "oracleFN": oracle_fn_ok,
            "oracleWreath": oracle_wr_ok,
        }

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks().values())

    def ratio(self, value: int | None) -> Fraction | None:
        if value is None or not self.length_fn:
            return None
        return Fraction(value, self.length_fn)

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["lowerBound"] = None if self.lower_bound is None else str(self.lower_bound)
        out["upperBound"] = self.upper_bound
        out["checks"] = self.checks()
        out["pass"] = self.passed
        return out


def verify_qi(
    w: Word,
    rank: int,
    oracle_radius: int = 0,
    tour_cap: int = DEFAULT_TOUR_CAP,
    forest_cap: int = DEFAULT_FOREST_CAP,
) -> QiRecord:
    group = Lattice(rank)
    w.check_rank(rank)
    rec = QiRecord(str(w), rank, len(free_reduce(w)), oracle_radius=oracle_radius)
    flow = flow_of_word(w, group)
    rec.sum_flow = flow.total_variation()
    try:
        rec.length_fn = build_delta_star(flow, cap=forest_cap).edge_count
    except CapacityError as exc:
        rec.capacity.append(f"forest: {exc}")
    e = magnus_embed(w, group)
    rec.sum_lamps = sum_lamp_costs(e)
    rec.shadow_norm = group.norm(e.shadow)
    for name, fn in (("circuit", wreath_length_circuit), ("walk", wreath_length_walk)):
        try:
            setattr(rec, name, fn(e, cap=tour_cap))
        except CapacityError as exc:
            rec.capacity.append(f"{name}: {exc}")
    if oracle_radius:
        rec.oracle_fn = bfs_geodesic_oracle_fn(w, rank, oracle_radius)
        rec.oracle_wreath = bfs_geodesic_oracle_wreath(e, oracle_radius)
    return rec


def sample_words(cfg: CampaignConfig) -> list[Word]:
    rng = random.Random(cfg.seed)
    return [random_reduced_word(rng, cfg.rank, rng.randint(0, cfg.max_len)) for _ in range(cfg.samples)]


def _verify_one(args) -> QiRecord:
    w, cfg = args
    return verify_qi(w, cfg.rank, cfg.oracle_radius, cfg.tour_cap, cfg.forest_cap)


def _extreme(ratios: list[Fraction], pick) -> str | None:
    return str(pick(ratios)) if ratios else None


def run_campaign(cfg: CampaignConfig) -> dict[str, Any]:
    words = sample_words(cfg)
    jobs = [(w, cfg) for w in words]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            records = list(pool.map(_verify_one, jobs, chunksize=8))
    else:
        records = [_verify_one(j) for j in jobs]

    circuit_ratios = [r.ratio(r.circuit) for r in records if r.ratio(r.circuit) is not None]
    walk_ratios = [r.ratio(r.walk) for r in records if r.ratio(r.walk) is not None]
    failures = [i for i, r in enumerate(records) if not r.passed]
    mismatches = sum(
        1 for r in records for k in ("oracleFN", "oracleWreath") if r.checks()[k] is False
    )
    summary = {
        "samples": len(records),
        "failures": len(failures),
        "failedIndices": failures,
        "capacitySkipped": sum(1 for r in records if r.capacity),
        "oracleMismatches": mismatches,
        "oracleChecked": sum(1 for r in records if r.oracle_fn is not None),
        "minRatioCircuit": _extreme(circuit_ratios, min),
        "maxRatioCircuit": _extreme(circuit_ratios, max),
        "minRatioWalk": _extreme(walk_ratios, min),
        "maxRatioWalk": _extreme(walk_ratios, max),
        "upperConstant": 3,
        "lowerConstant": str(Fraction(1, 2 * (cfg.rank + 1))),
    }
    return {
        "config": asdict(cfg) | {"wordModel": WORD_MODEL},
        "records": [r.to_json() for r in records],
        "summary": summary,
    }


def report_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


CSV_FIELDS = ["word", "rank", "reducedLength", "lengthFN", "circuit", "walk", "ratioCircuit", "ratioWalk", "pass"]


def report_csv(report: dict[str, Any]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in report["records"]:
        fn = r["length_fn"]

        def ratio(v):
            return "" if v is None or not fn else str(Fraction(v, fn))

        writer.writerow([
            r["word"], r["rank"], r["reduced_length"], fn, r["circuit"], r["walk"],
            ratio(r["circuit"]), ratio(r["walk"]), str(r["pass"]).lower(),
        ])
    return buf.getvalue()
