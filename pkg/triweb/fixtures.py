# Named presentations: one factory for the CLI, the tests and the docs

import logging
from functools import lru_cache
from pathlib import Path

from triweb.diffset import presentation_from_difference_set, singer_difference_set, standardize
from triweb.errors import ValidationError
from triweb.presentation import builtin_exotic_15_1, degenerate, import_json

logger = logging.getLogger(__name__)

FANO_BASE = (7, 2, (0, 1, 3))
Q4_BASE = (21, 4, (0, 1, 4, 14, 16))
Q7_STANDARD = (57, 7, (1, 6, 7, 9, 19, 38, 42, 49))

# (name, presentation name, characteristic)
FIXTURE_MATRIX = [
    ("15.1/p2", "builtin:15.1", 2),
    ("q4-diffset/p3", "diffset:21:4:0,1,4,14,16", 3),
    ("q7-diffset/p2", "diffset:57:7:1,6,7,9,19,38,42,49", 2),
    ("q7-diffset/p3", "diffset:57:7:1,6,7,9,19,38,42,49", 3),
    ("degenerate-3/char0", "degenerate:3", 0),
    ("degenerate-4/char0", "degenerate:4", 0),
    ("degenerate-5/char0", "degenerate:5", 0),
]

NEGATIVE_CONTROLS = [("fano/p2", "fano", 2)]


def create_diffset_presentation(N, q, D):
    """Standardise D first, then build T' and its mirror"""
    dset = standardize(N, q, D)
    return presentation_from_difference_set(dset.N, dset.q, dset.D)


def create_fano_presentation():
    return create_diffset_presentation(*FANO_BASE)


def create_singer_presentation(q):
    dset = singer_difference_set(q)
    return presentation_from_difference_set(dset.N, dset.q, dset.D)


def create_degenerate_presentation(N):
    return degenerate(N)


def _parse_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ValidationError(f"expected a comma-separated list of integers, got '{text}'") from e


@lru_cache(maxsize=None)
def _named(spec):
    kind, _, rest = spec.partition(":")
    if spec in ("builtin:15.1", "15.1"):
        return builtin_exotic_15_1()
    if spec == "fano":
        return create_fano_presentation()
    if kind == "singer" and rest:
        return create_singer_presentation(int(rest))
    if kind == "degenerate" and rest:
        return create_degenerate_presentation(int(rest))
    if kind == "diffset" and rest:
        parts = rest.split(":")
        if len(parts) != 3:
            raise ValidationError("difference-set presentations are named diffset:N:q:d1,d2,...")
        return create_diffset_presentation(int(parts[0]), int(parts[1]), _parse_ints(parts[2]))
    return None


def resolve_presentation(spec):
    """Fixture name (builtin:15.1, fano, singer:q, diffset:N:q:D, degenerate:N) or JSON path"""
    try:
        tp = _named(spec)
    except ValueError as e:
        if isinstance(e, ValidationError):
            raise
        raise ValidationError(f"malformed presentation name '{spec}': {e}") from e
    if tp is not None:
        return tp
    path = Path(spec)
    if path.is_file():
        logger.info("loading presentation from %s", path)
        return import_json(path.read_bytes())
    raise ValidationError(f"unknown presentation '{spec}'")
