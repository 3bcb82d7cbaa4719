import logging
from .utils import today
from ..sources.base import load_source_specs, uncovered_metrics
from ..sources.ingest import ingest_day


logger = logging.getLogger(__name__)


def ingest(ctx):
    cfg = ctx.cfg
    specs = load_source_specs(ctx.config, ctx.args.source)
    if not specs:
        logger.warning("No sources defined in the configuration. "
                       "Nothing to do!")
        return 0
    if not ctx.args.source:
        for m in uncovered_metrics(specs, ctx.registry):
            logger.warning("No source defined for metric: %s" % m.value)

    date = cfg.date or today()
    logger.info("Ingesting %d source(s) for %s (%s mode)." %
                (len(specs), date, cfg.mode))
    report = ingest_day(
        specs, date, cfg.mode, ctx.store,
        fixture_dir=cfg.fixture_dir,
        overwrite=ctx.args.overwrite,
        workers=cfg.workers,
        timeout=cfg.timeout,
        attempts=cfg.attempts)

    logger.info("%d stored, %d skipped, %d failed." %
                (len(report.stored), len(report.skipped), len(report.failed)))
    for source_id, err in report.failed:
        logger.error("  %s: %s" % (source_id, err))
    ctx.ingest_report = report
    return 0 if report.ok else 1
