import logging
import datetime
from ..model import InvalidArgumentError, MetricKind
from ..timeseries import IndexFamily, latest_contiguous_range


logger = logging.getLogger(__name__)


def get_date_range(ctx):
    if ctx.cfg.range:
        return ctx.cfg.range
    dates = ctx.store.getDates()
    if not dates:
        raise InvalidArgumentError("The snapshot store is empty.")
    start, end = latest_contiguous_range(dates)
    logger.debug("Using latest stored range: %s..%s" % (start, end))
    return start, end


def get_date(ctx, metrics=None):
    if ctx.cfg.date:
        return ctx.cfg.date
    dates = set()
    for m in (metrics or [None]):
        dates.update(ctx.store.getDates(m))
    if not dates:
        raise InvalidArgumentError("The snapshot store is empty.")
    return max(dates)


def get_distribution_metrics(ctx):
    registry = ctx.registry
    if not ctx.cfg.metrics:
        return registry.distributionMetrics()
    for m in ctx.cfg.metrics:
        if registry.kind(m) != MetricKind.DISTRIBUTION:
            raise InvalidArgumentError(
                "Metric %s isn't a distribution metric." % m.value)
    return ctx.cfg.metrics


def get_families(ctx):
    names = getattr(ctx.args, 'family', None)
    if not names:
        return list(IndexFamily)
    return [IndexFamily.parse(n) for n in names]


def today():
    return datetime.datetime.now(datetime.timezone.utc).date()
