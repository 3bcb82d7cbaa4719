import logging
from .utils import get_date_range, get_families
from ..emit import emit
from ..report import (
        InsufficientDataError, averages_table, index_series_chart,
        index_stats_table, jsd_table, master_chart, scalars_table)


logger = logging.getLogger(__name__)


def _optional(name, make):
    try:
        return make()
    except InsufficientDataError as ex:
        logger.warning("Skipping the %s table: %s" % (name, ex))
        return None


def make_report(ctx):
    cfg = ctx.cfg
    registry = ctx.registry
    start, end = get_date_range(ctx)
    families = get_families(ctx)
    terminal = (cfg.format == 'terminal')
    logger.info("Reporting on %s..%s" % (start, end))

    averages = averages_table(ctx.store, start, end, registry,
                              epsilon=cfg.epsilon)
    jsd = _optional('JSD', lambda: jsd_table(
        ctx.store, end, registry, start_date=start))
    scalars = _optional('scalars', lambda: scalars_table(
        ctx.store, start, end, registry))
    ctx.scalars = scalars

    if terminal:
        for table in (averages, jsd, scalars):
            if table is not None:
                emit(table, 'terminal', color=cfg.color)
        return 0

    emit(averages, 'csv', cfg.outputPath('averages', 'csv'))
    stats = index_stats_table(ctx.store, start, end, registry,
                              families=families, epsilon=cfg.epsilon)
    emit(stats, 'csv', cfg.outputPath('stats', 'csv'))
    if jsd is not None:
        emit(jsd, 'csv', cfg.outputPath('jsd', 'csv'))
    if scalars is not None:
        emit(scalars, 'csv', cfg.outputPath('scalars', 'csv'))

    master = master_chart(ctx.store, families, registry, start, end,
                          exclusions=cfg.exclusions, epsilon=cfg.epsilon)
    emit(master, 'csv', cfg.outputPath('master', 'csv'))
    emit(master, 'svg', cfg.outputPath('master', 'svg'))

    for family in families:
        chart = index_series_chart(
            ctx.store, family, start, end, registry.distributionMetrics(),
            epsilon=cfg.epsilon)
        emit(chart, 'svg', cfg.outputPath('series-%s' % family.value, 'svg'))
    return 0
