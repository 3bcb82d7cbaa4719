import logging
import concurrent.futures
from .base import parse
from .fetch import fetch, DEFAULT_ATTEMPTS
from ..model import ConcentrometerError


logger = logging.getLogger(__name__)


class IngestReport:
    """ What happened to each source for one day. `failed` holds
        `(source_id, error)` pairs.
    """
    def __init__(self, date):
        self.date = date
        self.stored = []
        self.skipped = []
        self.failed = []

    @property
    def ok(self):
        return not self.failed

    def __repr__(self):
        return 'IngestReport(%s, stored=%d, skipped=%d, failed=%d)' % (
            self.date, len(self.stored), len(self.skipped), len(self.failed))


def ingest_day(specs, date, mode, store, fixture_dir=None, overwrite=False,
               workers=4, timeout=None, attempts=DEFAULT_ATTEMPTS):
    report = IngestReport(date)

    todo = []
    for spec in specs:
        if not overwrite and store.has(date, spec.metric):
            logger.info("Skipping '%s': %s already stored for %s." %
                        (spec.source_id, spec.metric.value, date))
            report.skipped.append(spec.source_id)
        else:
            todo.append(spec)

    # Fetch concurrently, but parse and write in declaration order.
    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [
            (spec, pool.submit(fetch, spec, mode, date, fixture_dir=fixture_dir,
                               timeout=timeout, attempts=attempts))
            for spec in todo]

        for spec, future in futures:
            try:
                res = future.result()
                snapshot = parse(spec, res.payload, date, res.fetched_at)
                store.write(snapshot, overwrite=overwrite)
            except (ConcentrometerError, OSError) as ex:
                logger.error("Failed to ingest '%s' for %s: %s" %
                             (spec.source_id, date, ex))
                report.failed.append((spec.source_id, ex))
                continue
            logger.info("Stored %s for %s from '%s' (%s)." %
                        (spec.metric.value, date, spec.source_id, res.mode))
            report.stored.append(spec.source_id)

    if report.failed:
        logger.warning("%d source(s) failed for %s: %s" %
                       (len(report.failed), date,
                        ', '.join(s for s, _ in report.failed)))
    return report
