"""Domain records, dataset validation, and the exclusion rules.

The assessable population is defined in two ordered steps: researchers with
too few years on faculty are dropped first, then institutions whose remaining
faculty is too small. Both thresholds live in :class:`AssessmentConfig`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    DataViolation,
    DuplicateResearcherId,
    EmptyPopulation,
    MalformedAuthorList,
    MissingBaseline,
    UnknownResearcherRef,
    ValidationErrors,
)


class Rank(Enum):
    ASSISTANT = "Assistant"
    ASSOCIATE = "Associate"
    FULL = "Full"


class WeightingScheme(Enum):
    """How co-author credit is split: by byline position or uniformly."""

    LIFE_SCIENCE = "life_science"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class ResearcherRecord:
    researcher_id: str
    institution_id: str
    field_code: str
    rank: Rank
    years_active: int

    def __post_init__(self):
        if self.years_active < 0:
            raise ValueError(f"years_active must be >= 0, got {self.years_active}")


@dataclass(frozen=True)
class AuthorSlot:
    """One byline position. ``researcher_id`` is None for authors outside
    the assessed population; ``institution_id`` is the affiliation on this
    publication."""

    position: int
    researcher_id: str | None
    institution_id: str

    def __post_init__(self):
        if self.position < 1:
            raise ValueError(f"position must be >= 1, got {self.position}")


@dataclass(frozen=True)
class PublicationRecord:
    publication_id: str
    year: int
    subject_category: str
    citations: int
    authors: tuple[AuthorSlot, ...]

    def __post_init__(self):
        if self.citations < 0:
            raise ValueError(f"citations must be >= 0, got {self.citations}")
        object.__setattr__(self, "authors", tuple(self.authors))


@dataclass(frozen=True)
class CitationBaseline:
    """Mean citations of cited publications, keyed by (year, subject category)."""

    entries: dict[tuple[int, str], float]

    def __post_init__(self):
        for key, mean in self.entries.items():
            if mean <= 0:
                raise ValueError(f"baseline mean for {key} must be > 0, got {mean}")

    def lookup(self, year: int, subject_category: str) -> float:
        try:
            return self.entries[(year, subject_category)]
        except KeyError:
            raise MissingBaseline(year, subject_category) from None

    def __contains__(self, key: tuple[int, str]) -> bool:
        return key in self.entries


DEFAULT_SALARY_COEFFICIENTS = {
    Rank.ASSISTANT: 1.0,
    Rank.ASSOCIATE: 1.4,
    Rank.FULL: 2.0,
}


@dataclass(frozen=True)
class AssessmentConfig:
    period_start: int = 2008
    period_end: int = 2012
    min_years_active: int = 3
    min_faculty: int = 5
    salary_coefficients: dict[Rank, float] = field(
        default_factory=lambda: dict(DEFAULT_SALARY_COEFFICIENTS)
    )
    band_z_levels: tuple[float, ...] = (2.0, 3.0)
    delta_bracket: tuple[float, float] = (1e-9, 10.0)
    skewness_tolerance: float = 1e-9
    weighting_scheme: WeightingScheme = WeightingScheme.LIFE_SCIENCE
    # Mean of all individuals is the least-squares-consistent grand mean;
    # "group_means" switches to the unweighted mean of institution means.
    grand_mean_mode: str = "individuals"
    # The shift is tuned on pooled individual values by default;
    # "institution_means" tunes it on the institution means instead.
    skewness_target: str = "individuals"

    def __post_init__(self):
        if self.period_end < self.period_start:
            raise ValueError("period_end must be >= period_start")
        if self.min_years_active < 1:
            raise ValueError("min_years_active must be >= 1")
        if self.min_faculty < 1:
            raise ValueError("min_faculty must be >= 1")
        for rank in Rank:
            coeff = self.salary_coefficients.get(rank)
            if coeff is None or coeff <= 0:
                raise ValueError(f"salary coefficient for {rank.value} must be > 0")
        levels = tuple(self.band_z_levels)
        if len(levels) < 2 or any(z <= 0 for z in levels):
            raise ValueError("band_z_levels needs at least two positive levels")
        if any(b >= a for a, b in zip(levels[1:], levels)):
            raise ValueError("band_z_levels must be strictly increasing")
        object.__setattr__(self, "band_z_levels", levels)
        lo, hi = self.delta_bracket
        if not (0 < lo < hi):
            raise ValueError("delta_bracket must be a positive increasing interval")
        if self.skewness_tolerance <= 0:
            raise ValueError("skewness_tolerance must be > 0")
        if self.grand_mean_mode not in ("individuals", "group_means"):
            raise ValueError(f"unknown grand_mean_mode {self.grand_mean_mode!r}")
        if self.skewness_target not in ("individuals", "institution_means"):
            raise ValueError(f"unknown skewness_target {self.skewness_target!r}")

    @property
    def period_length(self) -> int:
        return self.period_end - self.period_start + 1

    @property
    def inner_z(self) -> float:
        return self.band_z_levels[0]

    @property
    def outer_z(self) -> float:
        return self.band_z_levels[-1]


@dataclass
class ValidatedDataset:
    researchers: tuple[ResearcherRecord, ...]
    publications: tuple[PublicationRecord, ...]
    baselines: CitationBaseline

    def __post_init__(self):
        self.researchers = tuple(self.researchers)
        self.publications = tuple(self.publications)
        by_researcher: dict[str, list[PublicationRecord]] = {}
        for pub in self.publications:
            for slot in pub.authors:
                if slot.researcher_id is not None:
                    by_researcher.setdefault(slot.researcher_id, []).append(pub)
        self._publications_by_researcher = {
            rid: tuple(pubs) for rid, pubs in by_researcher.items()
        }

    def publications_for(self, researcher_id: str) -> tuple[PublicationRecord, ...]:
        return self._publications_by_researcher.get(researcher_id, ())


@dataclass
class AssessablePopulation:
    """Researchers kept after the exclusion rules, grouped by institution."""

    researchers: tuple[ResearcherRecord, ...]
    dropped_researchers: int
    dropped_institutions: int

    def __post_init__(self):
        self.researchers = tuple(self.researchers)
        groups: dict[str, list[ResearcherRecord]] = {}
        for rec in self.researchers:
            groups.setdefault(rec.institution_id, []).append(rec)
        self.institutions: dict[str, tuple[ResearcherRecord, ...]] = {
            inst: tuple(members) for inst, members in sorted(groups.items())
        }


def validate_dataset(
    researchers: list[ResearcherRecord],
    publications: list[PublicationRecord],
    baselines: CitationBaseline,
) -> ValidatedDataset:
    """Check cross-record consistency and collect every violation found.

    Raises :class:`ValidationErrors` carrying all problems; on success returns
    a dataset holding exactly the input records. Inputs are never mutated.
    """
    errors: list[DataViolation] = []

    seen: set[str] = set()
    flagged: set[str] = set()
    for rec in researchers:
        if rec.researcher_id in seen and rec.researcher_id not in flagged:
            errors.append(DuplicateResearcherId(rec.researcher_id))
            flagged.add(rec.researcher_id)
        seen.add(rec.researcher_id)

    known_ids = {rec.researcher_id for rec in researchers}
    missing_baselines: set[tuple[int, str]] = set()
    for pub in publications:
        errors.extend(_author_list_violations(pub, known_ids))
        key = (pub.year, pub.subject_category)
        if key not in baselines and key not in missing_baselines:
            missing_baselines.add(key)
            errors.append(MissingBaseline(pub.year, pub.subject_category))

    if errors:
        raise ValidationErrors(errors)
    return ValidatedDataset(tuple(researchers), tuple(publications), baselines)


def _author_list_violations(
    pub: PublicationRecord, known_ids: set[str]
) -> list[DataViolation]:
    errors: list[DataViolation] = []
    if not pub.authors:
        errors.append(MalformedAuthorList(pub.publication_id, "empty author list"))
        return errors
    for i, slot in enumerate(pub.authors):
        if slot.position != i + 1:
            errors.append(
                MalformedAuthorList(
                    pub.publication_id,
                    f"author positions must run 1..{len(pub.authors)} in byline "
                    f"order; slot {i} has position {slot.position}",
                )
            )
            break
    listed = [s.researcher_id for s in pub.authors if s.researcher_id is not None]
    duplicated = {rid for rid in listed if listed.count(rid) > 1}
    for rid in sorted(duplicated):
        errors.append(
            MalformedAuthorList(
                pub.publication_id, f"researcher {rid!r} occupies multiple author slots"
            )
        )
    for rid in listed:
        if rid not in known_ids and rid not in duplicated:
            errors.append(UnknownResearcherRef(pub.publication_id, rid))
    return errors


def apply_exclusions(dataset, config: AssessmentConfig) -> AssessablePopulation:
    """Drop short-tenure researchers, then undersized institutions, in that order.

    Accepts anything exposing a ``researchers`` sequence, so applying it to its
    own output is a no-op on membership (idempotence).
    """
    researchers = tuple(dataset.researchers)
    kept = [r for r in researchers if r.years_active >= config.min_years_active]
    dropped_researchers = len(researchers) - len(kept)

    sizes: dict[str, int] = {}
    for rec in kept:
        sizes[rec.institution_id] = sizes.get(rec.institution_id, 0) + 1
    large_enough = {inst for inst, n in sizes.items() if n >= config.min_faculty}
    dropped_institutions = len(sizes) - len(large_enough)

    final = tuple(r for r in kept if r.institution_id in large_enough)
    if not final:
        raise EmptyPopulation(
            "no institution meets the faculty-size threshold after exclusions"
        )
    return AssessablePopulation(final, dropped_researchers, dropped_institutions)
