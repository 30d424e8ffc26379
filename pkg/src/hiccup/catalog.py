"""Bundled catalog of hiccup sequences, b-file I/O and cross-checks.

Every entry is checked against up to five independent characterizations:
the recursion, the morphic form, the Beatty form, a continued-fraction
remainder sequence and (for A284753) the Dumont–Thomas numeration.
"""
from __future__ import annotations

import json
import re
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

import mpmath

from .errors import BFileFormatError, NotApplicableError, ParameterError
from .morphisms import hiccup_morphism
from .sequences import DegenerateWarning, HiccupParams, generate_hiccup
from .sturmian import beatty_terms, format_beatty, hiccup_beatty

__all__ = [
    "CatalogEntry",
    "load_catalog",
    "find_entry",
    "IntegerSequence",
    "read_bfile",
    "write_bfile",
    "PASS",
    "FAIL",
    "NOT_APPLICABLE",
    "LegResult",
    "VerificationReport",
    "verify_entry",
    "verify_all",
    "reference_prefixes",
    "reference_formulas",
    "representation_rows",
]

PASS, FAIL, NOT_APPLICABLE = "PASS", "FAIL", "NOT-APPLICABLE"
_ID = re.compile(r"^A[0-9]{6}$")
CFRAC_HORIZON = 1000


def _data(name: str) -> str:
    return resources.files("hiccup").joinpath("data").joinpath(name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class CatalogEntry:
    oeis_id: str
    params: HiccupParams
    notes: str = ""
    recognized: bool = True

    def __post_init__(self):
        if not _ID.match(self.oeis_id):
            raise ParameterError(f"bad OEIS id {self.oeis_id!r}")


def load_catalog() -> list[CatalogEntry]:
    """21 entries already known as hiccup sequences, then 5 not yet recorded as such."""
    raw = json.loads(_data("catalog.json"))
    out = []
    for key, recognized in (("recognized", True), ("unrecognized", False)):
        for item in raw[key]:
            out.append(CatalogEntry(item["oeis_id"], HiccupParams(*item["params"]), item.get("notes", ""), recognized))
    return out


def find_entry(oeis_id: str) -> CatalogEntry:
    for e in load_catalog():
        if e.oeis_id == oeis_id.upper():
            return e
    raise ParameterError(f"{oeis_id} is not in the catalog; known ids: {', '.join(e.oeis_id for e in load_catalog())}")


def reference_prefixes() -> dict[str, dict]:
    return json.loads(_data("reference_prefixes.json"))


def reference_formulas() -> dict[str, list[dict]]:
    return json.loads(_data("reference_formulas.json"))


def representation_rows() -> list[tuple[int, int, str, str]]:
    rows = []
    for line in _data("representations.txt").splitlines():
        if line.strip() and not line.startswith("#"):
            n, a, rn, ra = line.split()
            rows.append((int(n), int(a), rn, ra))
    return rows


# ---------------------------------------------------------------------------
# b-files

class IntegerSequence(list):
    """List of terms remembering the index of its first term."""

    def __init__(self, terms: Iterable[int] = (), offset: int = 1):
        super().__init__(terms)
        self.offset = offset


def read_bfile(text: str) -> IntegerSequence:
    terms, offset, expected = [], 1, None
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) < 2:
            raise BFileFormatError("expected 'n a(n)'", lineno)
        try:
            n, a = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileFormatError(f"non-integer field in {s!r}", lineno) from None
        if expected is None:
            offset = n
        elif n != expected:
            raise BFileFormatError(f"index {n} where {expected} was expected", lineno)
        terms.append(a)
        expected = n + 1
    return IntegerSequence(terms, offset)


def write_bfile(seq: Sequence[int], offset: int | None = None) -> str:
    if offset is None:
        offset = getattr(seq, "offset", 1)
    return "".join(f"{i} {int(a)}\n" for i, a in enumerate(seq, start=offset))


# ---------------------------------------------------------------------------
# verification

@dataclass
class LegResult:
    status: str
    checked: int = 0
    witness: int | None = None
    expected: int | None = None
    got: int | None = None
    reason: str = ""
    conjectural: bool = False

    def __str__(self):
        if self.status == FAIL:
            return f"FAIL({self.witness})"
        return self.status

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, d: dict) -> "LegResult":
        return cls(**d)


def _compare(reference: Sequence[int], got: Sequence[int], start: int = 1, conjectural: bool = False) -> LegResult:
    """Compare ``got`` (terms from index ``start``) with ``reference`` (from index 1)."""
    for k, g in enumerate(got):
        n = start + k
        if n > len(reference):
            break
        if int(g) != reference[n - 1]:
            return LegResult(FAIL, k, n, reference[n - 1], int(g), conjectural=conjectural)
    return LegResult(PASS, min(len(got), len(reference) - start + 1), conjectural=conjectural)


@dataclass
class VerificationReport:
    oeis_id: str
    params: str
    horizon: int
    legs: dict[str, LegResult]
    formulas: dict[str, str] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(leg.status != FAIL for leg in self.legs.values())

    def to_dict(self) -> dict:
        return {
            "oeis_id": self.oeis_id,
            "params": self.params,
            "horizon": self.horizon,
            "legs": {k: v.to_dict() for k, v in self.legs.items()},
            "formulas": dict(self.formulas),
            "elapsed": self.elapsed,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            d["oeis_id"],
            d["params"],
            d["horizon"],
            {k: LegResult.from_dict(v) for k, v in d["legs"].items()},
            dict(d.get("formulas", {})),
            d.get("elapsed", 0.0),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        legs = "  ".join(f"{k}={v}" for k, v in self.legs.items())
        return f"{self.oeis_id} {self.params}: {'PASS' if self.passed else 'FAIL'}  {legs}"


def _morphic_leg(params: HiccupParams, reference: list[int], formulas: dict) -> LegResult:
    form = hiccup_morphism(params)
    formulas["morphism"] = str(form.morphism)
    formulas["seed"] = form.seed
    if not form.coding.is_identity:
        formulas["coding"] = str(form.coding)
    return _compare(reference, form.terms(len(reference)))


def _beatty_leg(params: HiccupParams, reference: list[int], formulas: dict) -> LegResult:
    try:
        bp = hiccup_beatty(params)
    except NotApplicableError as exc:
        return LegResult(NOT_APPLICABLE, reason=str(exc))
    formulas["beatty"] = format_beatty(bp) + (f" for n >= {bp.first_index}" if bp.first_index > 1 else "")
    count = len(reference) - bp.first_index + 1
    return _compare(reference, beatty_terms(bp, count), start=bp.first_index)


def _cfrac_leg(params: HiccupParams, reference: list[int], formulas: dict) -> LegResult:
    from .cfrac import CFracSpec, remainders

    horizon = min(len(reference), CFRAC_HORIZON)
    if tuple(params) == (1, 1, 3, 2):
        spec, shift, conj = CFracSpec.bds(2), Fraction(1, 2), False
        formulas["cfrac"] = "floor(r_n + 1/2), r_n = (2n - 1) + n^2/r_{n+1}, r_1 = 4/pi"
    elif tuple(params) == (1, 1, 2, 1):
        spec, shift, conj = CFracSpec.wythoff(), Fraction(0), True
        formulas["cfrac"] = "floor(s_n), s_n = (n + phi - 1) + n^2/s_{n+1}"
    else:
        return LegResult(NOT_APPLICABLE, reason="no metallic-mean continued fraction is known for these parameters")
    got = []
    for n, r in enumerate(remainders(spec, horizon, 30), start=1):
        with mpmath.workprec(256):
            off = mpmath.mpf(shift.numerator) / shift.denominator
            lo, hi = int(mpmath.floor(r.lower + off)), int(mpmath.floor(r.upper + off))
        if lo != hi:
            return LegResult(FAIL, n - 1, n, reference[n - 1], None, reason="uncertain floor", conjectural=conj)
        got.append(lo)
    return _compare(reference, got, conjectural=conj)


def _numeration_leg(params: HiccupParams, horizon: int) -> LegResult:
    from .numeration import a284753_system, kimberling_bound, kimberling_scan, verify_shifted_pair

    ns = a284753_system()
    rep = verify_shifted_pair(ns, params, horizon - 1)
    if not rep.passed:
        n = min(v for v in rep.witnesses.values() if v is not None)
        return LegResult(FAIL, horizon, n, reason=f"shifted-pair tests failed: {rep.witnesses}")
    scan = kimberling_scan(horizon, kimberling_bound(ns))
    if not scan.within:
        return LegResult(FAIL, horizon, reason="a(n) - (1+sqrt 3)n leaves (-3, 2)")
    return LegResult(PASS, horizon, reason="(0w, w0) pairing, gap tests and -3 < a(n) - (1+sqrt 3)n < 2")


def verify_entry(entry: CatalogEntry, horizon: int = 10_000, cfrac: bool = True, numeration: bool = True) -> VerificationReport:
    """Run every applicable characterization of ``entry`` up to ``horizon``."""
    if horizon < 2:
        raise ParameterError("horizon must be >= 2")
    t0 = time.perf_counter()
    params = entry.params
    formulas: dict[str, str] = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateWarning)
        reference = generate_hiccup(params, horizon)
    legs = {"recursion": LegResult(PASS, horizon)}
    legs["morphic"] = _morphic_leg(params, reference, formulas)
    legs["beatty"] = _beatty_leg(params, reference, formulas)
    if cfrac:
        legs["cfrac"] = _cfrac_leg(params, reference, formulas)
    if numeration and tuple(params) == (0, 2, 4, 2):
        legs["numeration"] = _numeration_leg(params, horizon)
    return VerificationReport(entry.oeis_id, str(params), horizon, legs, formulas, round(time.perf_counter() - t0, 4))


def _verify_star(args):
    return verify_entry(*args)


def verify_all(horizon: int = 10_000, jobs: int = 1, entries: Sequence[CatalogEntry] | None = None) -> list[VerificationReport]:
    """Reports in catalog order; ``jobs > 1`` uses worker processes."""
    entries = list(load_catalog() if entries is None else entries)
    if jobs <= 1:
        return [verify_entry(e, horizon) for e in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_star, [(e, horizon) for e in entries]))
