import logging
from .utils import (
        get_date, get_date_range, get_distribution_metrics, get_families)
from ..emit import emit
from ..report import (
        InsufficientDataError, index_series_chart, indices_table,
        jsd_intervals_table, jsd_table, lorenz_curve, master_chart,
        scalars_table)


logger = logging.getLogger(__name__)


def show_indices(ctx):
    cfg = ctx.cfg
    metrics = get_distribution_metrics(ctx)

    if cfg.range or ctx.args.rolling or ctx.args.family:
        start, end = get_date_range(ctx)
        for family in get_families(ctx):
            chart = index_series_chart(
                ctx.store, family, start, end, metrics,
                epsilon=cfg.epsilon, rolling=ctx.args.rolling)
            emit(chart, cfg.format,
                 cfg.outputPath('series-%s' % family.value), color=cfg.color)
        return 0

    date = get_date(ctx, metrics)
    if not cfg.metrics:
        metrics = [m for m in metrics if ctx.store.has(date, m)]
    table = indices_table(ctx.store, date, metrics, epsilon=cfg.epsilon,
                          registry=ctx.registry)
    emit(table, cfg.format, cfg.outputPath('indices-%s' % date),
         color=cfg.color)
    ctx.artifact = table

    try:
        scalars = scalars_table(ctx.store, date, date, ctx.registry)
    except InsufficientDataError:
        logger.debug("No scalar metrics stored for %s." % date)
    else:
        emit(scalars, cfg.format, cfg.outputPath('scalars-%s' % date),
             color=cfg.color)
        ctx.scalars = scalars
    return 0


def show_jsd(ctx):
    cfg = ctx.cfg
    metrics = get_distribution_metrics(ctx)
    if cfg.range:
        start, end = cfg.range
        table = jsd_table(ctx.store, end, ctx.registry, start_date=start,
                          metrics=metrics)
        name = 'jsd-%s-%s' % (start, end)
    else:
        date = get_date(ctx, metrics)
        table = jsd_intervals_table(ctx.store, date, metrics)
        name = 'jsd-%s' % date
    emit(table, cfg.format, cfg.outputPath(name), color=cfg.color)
    ctx.artifact = table
    return 0


def show_master(ctx):
    cfg = ctx.cfg
    start, end = get_date_range(ctx)
    if cfg.exclusions:
        logger.info("Excluding from the master index: %s" %
                    ', '.join(m.value for m in cfg.exclusions))
    chart = master_chart(
        ctx.store, get_families(ctx), ctx.registry, start, end,
        exclusions=cfg.exclusions, epsilon=cfg.epsilon,
        count=ctx.args.subsample)
    emit(chart, cfg.format, cfg.outputPath('master'), color=cfg.color)
    ctx.artifact = chart
    return 0


def show_lorenz(ctx):
    cfg = ctx.cfg
    metrics = get_distribution_metrics(ctx)
    if len(metrics) != 1:
        logger.warning("Only drawing the first of %d metrics." % len(metrics))
    metric = metrics[0]
    date = get_date(ctx, [metric])
    curve = lorenz_curve(ctx.store, date, metric)
    emit(curve, cfg.format,
         cfg.outputPath('lorenz-%s-%s' % (metric.value, date)),
         color=cfg.color)
    ctx.artifact = curve
    return 0
