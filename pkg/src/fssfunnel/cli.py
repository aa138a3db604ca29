"""Batch entry point: parse CSV inputs, run the assessment, write artifacts.

Input files (UTF-8, comma-separated, RFC 4180 quoting, header row required):

    researchers.csv   researcher_id,institution_id,field_code,rank,years_active
    publications.csv  publication_id,year,subject_category,citations,authors
    baselines.csv     year,subject_category,mean_citations

The ``authors`` cell packs the ordered byline into one field as
``position:researcher_id:institution_id`` slots joined by ``;``, with ``-``
for authors outside the assessed population, e.g. ``1:r0001:u01;2:-:ext07``.
Identifiers must not contain ``:`` or ``;``.

The optional config file is flat ``key=value`` text; unknown keys are errors.
Exit codes: 0 success, 1 parse/validation failure, 2 I/O failure, 3 pipeline
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    AssessmentError,
    IoError,
    ParseError,
    ValidationErrors,
    YearsOutOfRange,
)
from .funnel import FunnelReport, build_funnel_report, qq_max_deviation
from .indicator import fractional_weights, researcher_fss
from .model import (
    AssessmentConfig,
    AuthorSlot,
    CitationBaseline,
    PublicationRecord,
    Rank,
    ResearcherRecord,
    WeightingScheme,
    apply_exclusions,
    validate_dataset,
)
from .render import PlotStyle, render_caterpillar_svg, render_funnel_svg, render_qq_svg

RESEARCHER_HEADER = ["researcher_id", "institution_id", "field_code", "rank", "years_active"]
PUBLICATION_HEADER = ["publication_id", "year", "subject_category", "citations", "authors"]
BASELINE_HEADER = ["year", "subject_category", "mean_citations"]

RANK_CAVEAT = (
    "Point ranks ignore sampling uncertainty; differences between institutions "
    "inside the confidence bands are not statistically meaningful."
)

_RANK_BY_NAME = {r.value.lower(): r for r in Rank}


@dataclass(frozen=True)
class RunRequest:
    researchers_path: str
    publications_path: str
    baselines_path: str
    config_path: str | None
    report_path: str
    funnel_svg_path: str | None = None
    qq_svg_path: str | None = None
    caterpillar_svg_path: str | None = None
    quiet: bool = False


# ---------------------------------------------------------------------------
# input parsing
# ---------------------------------------------------------------------------


def _read_rows(path: str, expected_header: list[str]):
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
    except OSError as exc:
        raise IoError(path, exc.strerror or str(exc)) from exc
    if not rows:
        raise ParseError(path, 1, expected_header[0], "file is empty; header row required")
    if rows[0] != expected_header:
        raise ParseError(
            path, 1, ",".join(rows[0]),
            f"expected header {','.join(expected_header)}",
        )
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(expected_header):
            raise ParseError(
                path, line, expected_header[0],
                f"expected {len(expected_header)} fields, got {len(row)}",
            )
        yield line, row


def _parse_int(path: str, line: int, column: str, text: str, minimum: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(path, line, column, f"not an integer: {text!r}") from None
    if value < minimum:
        raise ParseError(path, line, column, f"must be >= {minimum}, got {value}")
    return value


def read_researchers_csv(path: str) -> list[ResearcherRecord]:
    records = []
    seen: dict[str, int] = {}
    for line, row in _read_rows(path, RESEARCHER_HEADER):
        rid, inst, field_code, rank_text, years_text = row
        if rid in seen:
            raise ParseError(
                path, line, "researcher_id",
                f"duplicate researcher id {rid!r} (first seen on line {seen[rid]})",
            )
        seen[rid] = line
        rank = _RANK_BY_NAME.get(rank_text.strip().lower())
        if rank is None:
            raise ParseError(
                path, line, "rank",
                f"expected one of Assistant/Associate/Full, got {rank_text!r}",
            )
        years = _parse_int(path, line, "years_active", years_text, 0)
        records.append(ResearcherRecord(rid, inst, field_code, rank, years))
    return records


def _parse_author_cell(path: str, line: int, cell: str) -> tuple[AuthorSlot, ...]:
    slots = []
    for part in cell.split(";"):
        fields = part.split(":")
        if len(fields) != 3:
            raise ParseError(
                path, line, "authors",
                f"slot {part!r} is not position:researcher_id:institution_id",
            )
        pos_text, rid, inst = (f.strip() for f in fields)
        position = _parse_int(path, line, "authors", pos_text, 1)
        if not inst:
            raise ParseError(path, line, "authors", f"slot {part!r} has no institution")
        slots.append(AuthorSlot(position, None if rid == "-" else rid, inst))
    slots.sort(key=lambda s: s.position)
    return tuple(slots)


def read_publications_csv(path: str) -> list[PublicationRecord]:
    records = []
    for line, row in _read_rows(path, PUBLICATION_HEADER):
        pid, year_text, category, citations_text, authors_cell = row
        year = _parse_int(path, line, "year", year_text, 0)
        citations = _parse_int(path, line, "citations", citations_text, 0)
        authors = _parse_author_cell(path, line, authors_cell)
        records.append(PublicationRecord(pid, year, category, citations, authors))
    return records


def read_baselines_csv(path: str) -> CitationBaseline:
    entries: dict[tuple[int, str], float] = {}
    for line, row in _read_rows(path, BASELINE_HEADER):
        year_text, category, mean_text = row
        year = _parse_int(path, line, "year", year_text, 0)
        try:
            mean = float(mean_text)
        except ValueError:
            raise ParseError(
                path, line, "mean_citations", f"not a number: {mean_text!r}"
            ) from None
        if not math.isfinite(mean) or mean <= 0:
            raise ParseError(path, line, "mean_citations", f"must be > 0, got {mean}")
        key = (year, category)
        if key in entries:
            raise ParseError(path, line, "year", f"duplicate baseline entry {key}")
        entries[key] = mean
    return CitationBaseline(entries)


_CONFIG_KEYS = {
    "period_start", "period_end", "min_years_active", "min_faculty",
    "salary_coefficient_assistant", "salary_coefficient_associate",
    "salary_coefficient_full", "band_z_levels", "delta_bracket",
    "skewness_tolerance", "weighting_scheme", "grand_mean_mode",
    "skewness_target",
}


def parse_config_file(path: str) -> AssessmentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(path, exc.strerror or str(exc)) from exc

    raw: dict[str, tuple[int, str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ParseError(path, line_no, stripped, "expected key=value")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ParseError(path, line_no, key, "unknown configuration key")
        if key in raw:
            raise ParseError(path, line_no, key, "key given twice")
        raw[key] = (line_no, value.strip())

    def number(key: str, convert, default):
        if key not in raw:
            return default
        line_no, value = raw[key]
        try:
            return convert(value)
        except ValueError:
            raise ParseError(path, line_no, key, f"bad value {value!r}") from None

    def float_list(key: str, default):
        if key not in raw:
            return default
        line_no, value = raw[key]
        try:
            return tuple(float(part) for part in value.split(","))
        except ValueError:
            raise ParseError(path, line_no, key, f"bad value {value!r}") from None

    def choice(key: str, allowed: dict, default):
        if key not in raw:
            return default
        line_no, value = raw[key]
        if value not in allowed:
            raise ParseError(
                path, line_no, key, f"expected one of {sorted(allowed)}, got {value!r}"
            )
        return allowed[value]

    defaults = AssessmentConfig()
    salary = dict(defaults.salary_coefficients)
    salary[Rank.ASSISTANT] = number("salary_coefficient_assistant", float, salary[Rank.ASSISTANT])
    salary[Rank.ASSOCIATE] = number("salary_coefficient_associate", float, salary[Rank.ASSOCIATE])
    salary[Rank.FULL] = number("salary_coefficient_full", float, salary[Rank.FULL])

    bracket = float_list("delta_bracket", defaults.delta_bracket)
    if len(bracket) != 2:
        line_no, value = raw["delta_bracket"]
        raise ParseError(path, line_no, "delta_bracket", f"expected two values, got {value!r}")

    try:
        return AssessmentConfig(
            period_start=number("period_start", int, defaults.period_start),
            period_end=number("period_end", int, defaults.period_end),
            min_years_active=number("min_years_active", int, defaults.min_years_active),
            min_faculty=number("min_faculty", int, defaults.min_faculty),
            salary_coefficients=salary,
            band_z_levels=float_list("band_z_levels", defaults.band_z_levels),
            delta_bracket=tuple(bracket),
            skewness_tolerance=number("skewness_tolerance", float, defaults.skewness_tolerance),
            weighting_scheme=choice(
                "weighting_scheme",
                {s.value: s for s in WeightingScheme},
                defaults.weighting_scheme,
            ),
            grand_mean_mode=choice(
                "grand_mean_mode",
                {"individuals": "individuals", "group_means": "group_means"},
                defaults.grand_mean_mode,
            ),
            skewness_target=choice(
                "skewness_target",
                {"individuals": "individuals", "institution_means": "institution_means"},
                defaults.skewness_target,
            ),
        )
    except ValueError as exc:
        raise ParseError(path, 1, "config", str(exc)) from None


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------


def _config_payload(config: AssessmentConfig) -> dict:
    return {
        "period_start": config.period_start,
        "period_end": config.period_end,
        "min_years_active": config.min_years_active,
        "min_faculty": config.min_faculty,
        "salary_coefficients": {
            rank.value: config.salary_coefficients[rank] for rank in Rank
        },
        "band_z_levels": list(config.band_z_levels),
        "delta_bracket": list(config.delta_bracket),
        "skewness_tolerance": config.skewness_tolerance,
        "weighting_scheme": config.weighting_scheme.value,
        "grand_mean_mode": config.grand_mean_mode,
        "skewness_target": config.skewness_target,
    }


def report_payload(report: FunnelReport) -> dict:
    """JSON-ready dict with fixed key order and full-precision floats."""
    institutions = []
    for summary in report.summaries:
        institutions.append(
            {
                "id": summary.institution_id,
                "size": summary.size,
                "mean_original": summary.mean_original,
                "mean_transformed": summary.mean_transformed,
                "classification": summary.classification.value,
                "inner_band": {
                    "z": summary.inner_band.level_z,
                    "lower": summary.inner_band.lower,
                    "upper": summary.inner_band.upper,
                },
                "outer_band": {
                    "z": summary.outer_band.level_z,
                    "lower": summary.outer_band.lower,
                    "upper": summary.outer_band.upper,
                },
                "rank_with_caveat": {
                    "rank": report.rankings[summary.institution_id],
                    "caveat": RANK_CAVEAT,
                },
            }
        )
    return {
        "config": _config_payload(report.config),
        "transform": {
            "delta": report.transform.delta,
            "achieved_skewness": report.transform.achieved_skewness,
            "converged": report.transform.converged,
        },
        "fit": {
            "grand_mean": report.fit.grand_mean,
            "pooled_sd": report.fit.pooled_sd,
            "total_n": report.fit.total_n,
            "group_count": report.fit.group_count,
        },
        "institutions": institutions,
        "diagnostics": {
            "qq_points": [list(pair) for pair in (report.qq_points or ())],
            "qq_max_abs_deviation": None
            if not report.qq_points
            else qq_max_deviation(report.qq_points),
            "size_slope": None
            if report.size_slope is None
            else {
                "slope": report.size_slope[0],
                "standard_error": report.size_slope[1],
            },
        },
    }


def emit_report(report: FunnelReport, destination: str | None = None) -> str:
    """Serialize the report; when a destination is given, write atomically."""
    text = json.dumps(report_payload(report), indent=2, allow_nan=False) + "\n"
    if destination is not None:
        _write_text(destination, text)
    return text


def _write_text(destination: str, text: str) -> None:
    path = Path(destination)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        raise IoError(str(destination), exc.strerror or str(exc)) from exc


# ---------------------------------------------------------------------------
# assessment run
# ---------------------------------------------------------------------------


def run_assessment(request: RunRequest) -> int:
    try:
        researchers = read_researchers_csv(request.researchers_path)
        publications = read_publications_csv(request.publications_path)
        baselines = read_baselines_csv(request.baselines_path)
        config = (
            parse_config_file(request.config_path)
            if request.config_path
            else AssessmentConfig()
        )
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        dataset = _validate_with_period(researchers, publications, baselines, config)
    except ValidationErrors as exc:
        for violation in exc.errors:
            print(f"error: {violation}", file=sys.stderr)
        return 1

    try:
        population = apply_exclusions(dataset, config)
        scores = [
            researcher_fss(
                rec, dataset.publications_for(rec.researcher_id), baselines, config
            )
            for rec in population.researchers
        ]
        report = build_funnel_report(population, scores, config)
        outputs = {request.report_path: emit_report(report)}
        style = PlotStyle()
        if request.funnel_svg_path:
            outputs[request.funnel_svg_path] = render_funnel_svg(report, style)
        if request.qq_svg_path:
            outputs[request.qq_svg_path] = render_qq_svg(report, style)
        if request.caterpillar_svg_path:
            outputs[request.caterpillar_svg_path] = render_caterpillar_svg(
                report, style, config.inner_z
            )
    except AssessmentError as exc:
        print(f"error: pipeline failed: {exc}", file=sys.stderr)
        return 3

    try:
        for destination, text in outputs.items():
            _write_text(destination, text)
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if not request.quiet:
        flagged = sum(
            1 for s in report.summaries if s.classification.value != "within"
        )
        print(
            f"assessed {report.fit.total_n} researchers in "
            f"{report.fit.group_count} institutions "
            f"(dropped {population.dropped_researchers} researchers, "
            f"{population.dropped_institutions} institutions); "
            f"delta={report.transform.delta:.6g} "
            f"converged={report.transform.converged}; "
            f"{flagged} institution(s) outside the inner bands"
        )
        for destination in outputs:
            print(f"wrote {destination}")
    return 0


def _validate_with_period(researchers, publications, baselines, config):
    period_errors = [
        YearsOutOfRange(r.researcher_id, r.years_active, config.period_length)
        for r in researchers
        if r.years_active > config.period_length
    ]
    try:
        dataset = validate_dataset(researchers, publications, baselines)
    except ValidationErrors as exc:
        raise ValidationErrors(period_errors + exc.errors) from None
    if period_errors:
        raise ValidationErrors(period_errors)
    return dataset


# ---------------------------------------------------------------------------
# synthetic dataset generation
# ---------------------------------------------------------------------------


def solve_shifted_lognormal(mean: float, sd: float, skewness: float):
    """Parameters (theta, mu, sigma) of theta + LogNormal(mu, sigma) matching
    the requested mean, SD, and (positive) skewness."""
    if sd <= 0 or skewness <= 0:
        raise ValueError("sd and skewness must be positive")
    target = skewness**2

    def excess(w: float) -> float:
        return (w + 2.0) ** 2 * (w - 1.0) - target

    lo, hi = 1.0 + 1e-12, 2.0
    while excess(hi) < 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) <= 0:
            lo = mid
        else:
            hi = mid
    w = 0.5 * (lo + hi)

    sigma = math.sqrt(math.log(w))
    scale = sd / math.sqrt(w * (w - 1.0))
    theta = mean - scale * math.sqrt(w)
    return theta, math.log(scale), sigma


def draw_fss_sample(
    rng: np.random.Generator, count: int, mean: float, sd: float, skewness: float
) -> np.ndarray:
    """Shifted-lognormal draws clipped at zero (mirrors nil-productivity cases)."""
    theta, mu, sigma = solve_shifted_lognormal(mean, sd, skewness)
    values = theta + np.exp(rng.normal(mu, sigma, size=count))
    return np.clip(values, 0.0, None)


def _institution_sizes(
    rng: np.random.Generator, count: int, size_min: int, size_max: int, total: int
) -> list[int]:
    total = min(max(total, count * size_min), count * size_max)
    raw = np.exp(rng.normal(0.0, 0.55, size=count))
    sizes = np.clip(
        np.round(raw * total / raw.sum()).astype(int), size_min, size_max
    )
    while sizes.sum() != total:
        index = int(rng.integers(count))
        if sizes.sum() < total and sizes[index] < size_max:
            sizes[index] += 1
        elif sizes.sum() > total and sizes[index] > size_min:
            sizes[index] -= 1
    return [int(s) for s in sizes]


_RANKS = (Rank.ASSISTANT, Rank.ASSOCIATE, Rank.FULL)
_RANK_PROBS = (0.35, 0.40, 0.25)


def generate_synthetic_dataset(
    out_dir: str,
    institutions: int = 42,
    size_min: int = 5,
    size_max: int = 61,
    total_researchers: int = 877,
    mean: float = 0.25,
    sd: float = 0.34,
    skewness: float = 3.1,
    institution_effect_sd: float = 0.0,
    seed: int = 12345,
    config: AssessmentConfig = AssessmentConfig(),
) -> dict[str, str]:
    """Write a researchers/publications/baselines/config fixture under out_dir.

    Each researcher's publications are reverse-engineered so the pipeline
    reproduces a target productivity drawn from the requested distribution:
    the researcher sits at a random byline position among unassessed
    co-authors, and citation counts are rounded to hit the target through the
    positional weight, salary coefficient, and years active.
    """
    if institutions < 1:
        raise ValueError("institutions must be >= 1")
    if not (1 <= size_min <= size_max):
        raise ValueError("need 1 <= size_min <= size_max")
    rng = np.random.default_rng(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    years = list(range(config.period_start, config.period_end + 1))
    baselines = {year: round(float(rng.uniform(8.0, 25.0)), 2) for year in years}
    category = "Biochemistry"

    sizes = _institution_sizes(rng, institutions, size_min, size_max, total_researchers)
    targets = draw_fss_sample(rng, sum(sizes), mean, sd, skewness)

    researcher_rows = []
    publication_rows = []
    index = 0
    pub_serial = 0
    for j, size in enumerate(sizes, start=1):
        inst = f"u{j:02d}"
        effect = (
            math.exp(rng.normal(0.0, institution_effect_sd))
            if institution_effect_sd > 0
            else 1.0
        )
        for _ in range(size):
            index += 1
            rid = f"r{index:04d}"
            rank = _RANKS[rng.choice(len(_RANKS), p=_RANK_PROBS)]
            salary = config.salary_coefficients[rank]
            tenure = int(rng.integers(config.min_years_active, config.period_length + 1))
            researcher_rows.append([rid, inst, category, rank.value, str(tenure)])

            target = float(targets[index - 1]) * effect
            pub_serial = _append_publications(
                publication_rows, rng, rid, inst, target, salary, tenure,
                years, baselines, category, pub_serial,
            )

    paths = {
        "researchers": str(out / "researchers.csv"),
        "publications": str(out / "publications.csv"),
        "baselines": str(out / "baselines.csv"),
        "config": str(out / "config.txt"),
    }
    _write_csv(paths["researchers"], RESEARCHER_HEADER, researcher_rows)
    _write_csv(paths["publications"], PUBLICATION_HEADER, publication_rows)
    _write_csv(
        paths["baselines"],
        BASELINE_HEADER,
        [[str(year), category, f"{baselines[year]:g}"] for year in years],
    )
    _write_text(
        paths["config"],
        "\n".join(
            [
                "# synthetic fixture configuration",
                f"period_start={config.period_start}",
                f"period_end={config.period_end}",
                f"min_years_active={config.min_years_active}",
                f"min_faculty={config.min_faculty}",
            ]
        )
        + "\n",
    )
    return paths


def _append_publications(
    rows, rng, rid, inst, target, salary, tenure, years, baselines, category, serial
) -> int:
    if target <= 0:
        if rng.random() < 0.5:
            return serial  # no publications at all
        serial += 1
        byline = _random_byline(rng, rid, inst)
        rows.append(
            [f"p{serial:05d}", str(int(rng.choice(years))), category, "0",
             _format_byline(byline)]
        )
        return serial

    pub_count = int(rng.integers(1, 4))
    shares = rng.random(pub_count)
    shares = shares / shares.sum()
    budget = target * salary * tenure
    for share in shares:
        serial += 1
        byline = _random_byline(rng, rid, inst)
        position = next(
            i for i, slot in enumerate(byline) if slot.researcher_id == rid
        )
        weight = fractional_weights(byline)[position]
        year = int(rng.choice(years))
        citations = max(0, round(share * budget * baselines[year] / weight))
        rows.append(
            [f"p{serial:05d}", str(year), category, str(citations),
             _format_byline(byline)]
        )
    return serial


def _random_byline(rng, rid, inst) -> tuple[AuthorSlot, ...]:
    count = int(rng.integers(1, 9))
    position = int(rng.integers(count))
    slots = []
    for i in range(count):
        if i == position:
            slots.append(AuthorSlot(i + 1, rid, inst))
        else:
            slots.append(AuthorSlot(i + 1, None, f"ext{int(rng.integers(1, 30)):02d}"))
    # Force some intra-mural bylines so both weighting rules are exercised.
    if count >= 2 and rng.random() < 0.3:
        first, last = slots[0], slots[-1]
        if first.researcher_id is None:
            slots[0] = AuthorSlot(1, None, last.institution_id)
        elif last.researcher_id is None:
            slots[-1] = AuthorSlot(count, None, first.institution_id)
    return tuple(slots)


def _format_byline(slots) -> str:
    return ";".join(
        f"{s.position}:{s.researcher_id or '-'}:{s.institution_id}" for s in slots
    )


def _write_csv(destination: str, header: list[str], rows) -> None:
    path = Path(destination)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except OSError as exc:
        raise IoError(str(destination), exc.strerror or str(exc)) from exc


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fssfunnel",
        description=(
            "Compute per-researcher productivity, aggregate it per institution, "
            "and assess institutional differences with funnel-plot confidence bands."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    assess = sub.add_parser("assess", help="run the assessment on CSV inputs")
    assess.add_argument("--researchers", required=True)
    assess.add_argument("--publications", required=True)
    assess.add_argument("--baselines", required=True)
    assess.add_argument("--config")
    assess.add_argument("--report", required=True, help="output JSON path")
    assess.add_argument("--funnel-svg")
    assess.add_argument("--qq-svg")
    assess.add_argument("--caterpillar-svg")
    assess.add_argument("--quiet", action="store_true")

    synth = sub.add_parser("synth", help="generate a synthetic CSV fixture")
    synth.add_argument("--out-dir", required=True)
    synth.add_argument("--institutions", type=int, default=42)
    synth.add_argument("--size-min", type=int, default=5)
    synth.add_argument("--size-max", type=int, default=61)
    synth.add_argument("--total", type=int, default=877)
    synth.add_argument("--mean", type=float, default=0.25)
    synth.add_argument("--sd", type=float, default=0.34)
    synth.add_argument("--skewness", type=float, default=3.1)
    synth.add_argument("--institution-effect-sd", type=float, default=0.0)
    synth.add_argument("--seed", type=int, default=12345)
    synth.add_argument("--quiet", action="store_true")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "assess":
        request = RunRequest(
            researchers_path=args.researchers,
            publications_path=args.publications,
            baselines_path=args.baselines,
            config_path=args.config,
            report_path=args.report,
            funnel_svg_path=args.funnel_svg,
            qq_svg_path=args.qq_svg,
            caterpillar_svg_path=args.caterpillar_svg,
            quiet=args.quiet,
        )
        return run_assessment(request)

    try:
        paths = generate_synthetic_dataset(
            args.out_dir,
            institutions=args.institutions,
            size_min=args.size_min,
            size_max=args.size_max,
            total_researchers=args.total,
            mean=args.mean,
            sd=args.sd,
            skewness=args.skewness,
            institution_effect_sd=args.institution_effect_sd,
            seed=args.seed,
        )
    except (IoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        for name, path in paths.items():
            print(f"wrote {name}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
