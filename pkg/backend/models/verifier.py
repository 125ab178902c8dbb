"""Runs registry entries and turns their checks into reports."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..api.schemas import Report
from ..core.cache import cache_manager
from ..core.config import settings
from ..core.errors import ConfigError, ConsistencyError, EngineError
from .checks import Check, first_difference, perturbed
from .identities import EVIDENCE, get_entry, registry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_ENGINE = 3


def _perturb_first(checks: List[Check]) -> List[Check]:
    """Plant a one-coefficient discrepancy in the first right-hand side"""
    if not checks:
        return checks
    first = checks[0]
    return [Check(first.label, first.lhs, perturbed(first.rhs, first.window), first.window)] + checks[1:]


def verify(identity_id: str, overrides: Optional[Mapping[str, Optional[int]]] = None,
           perturb: bool = False) -> Report:
    """Build and compare both sides of one registry entry.

    Unknown ids and bad windows raise ``ConfigError``; engine errors during
    the build or the comparison end up in the report's ``error`` field.
    """
    entry = get_entry(identity_id)
    windows = entry.windows(overrides)
    start = time.perf_counter()
    first_diff, count, error = None, 0, None
    try:
        checks = entry.builder(windows)
        if perturb:
            try:
                checks = _perturb_first(checks)
            except TypeError as e:
                raise ConsistencyError(f"cannot plant a discrepancy in {identity_id}: {e}") from e
        count = len(checks)
        for check in checks:
            first_diff = first_difference(check)
            if first_diff is not None:
                break
    except EngineError as e:
        error = f"{type(e).__name__}: {e}"
        logger.error("%s raised %s", identity_id, error)
    elapsed = int((time.perf_counter() - start) * 1000)
    passed = error is None and first_diff is None
    if not passed and entry.status == EVIDENCE:
        logger.warning("%s: no supporting evidence at %s", identity_id, windows.as_dict())
    logger.info("%s %s in %d ms", identity_id, "passed" if passed else "failed", elapsed)
    return Report(
        id=identity_id,
        status=entry.status,
        passed=passed,
        windows=windows.as_dict(),
        checks=count,
        first_diff=first_diff,
        elapsed_ms=elapsed,
        engine_version=settings.ENGINE_VERSION,
        notes=entry.notes or None,
        error=error,
    )


def _verify_job(job: Tuple[str, Dict[str, Optional[int]], bool, Optional[str]]) -> Report:
    identity_id, overrides, perturb, cache_dir = job
    if cache_dir is not None:
        cache_manager.configure(cache_dir=cache_dir)
    try:
        return verify(identity_id, overrides, perturb)
    finally:
        cache_manager.flush()


def run_all(ids: Sequence[str], overrides: Optional[Mapping[str, Mapping[str, Optional[int]]]] = None,
            jobs: int = 1, perturb: bool = False, cache_dir: Optional[str] = None) -> List[Report]:
    """Verify ``ids`` in order, optionally across ``jobs`` worker processes"""
    known = registry()
    unknown = [i for i in ids if i not in known]
    if unknown:
        raise ConfigError(f"unknown identity id {', '.join(unknown)}")
    overrides = overrides or {}
    work = [(i, dict(overrides.get(i, {})), perturb, cache_dir) for i in ids]
    for i, o, _, _ in work:
        known[i].windows(o)
    if jobs <= 1 or len(work) <= 1:
        return [_verify_job(job) for job in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_job, work))


def exit_code(reports: Sequence[Report]) -> int:
    """0 when every theorem entry passed; evidence entries never count"""
    gating = [r for r in reports if r.status != EVIDENCE]
    if any(r.error for r in gating):
        return EXIT_ENGINE
    if any(not r.passed for r in gating):
        return EXIT_FAILED
    return EXIT_OK
