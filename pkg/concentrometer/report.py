""" Presentation artifacts computed from a snapshot store.

    Every artifact exposes `header()` and `rows()` for tabular output,
    and chart artifacts also expose `chartLines()` for SVG output (see
    `emit.py`).
"""
import math
import logging
import collections
import numpy as np
from .model import (
        ConcentrometerError, InvalidArgumentError, MetricId, MetricRegistry)
from .indices import DEFAULT_EPSILON, lorenz_points
from .timeseries import (
        IndexFamily, family_value, index_report, index_series, jsd_between,
        jsd_intervals, master_series, rolling_mean, subsample, date_range,
        JSD_HORIZONS)


logger = logging.getLogger(__name__)


class InsufficientDataError(ConcentrometerError):
    pass


HEAT_BANDS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


def heat_band(value):
    """ Band 0 (green, least concentrated) to 4 (red). """
    if not (0 <= value <= 1):
        raise InvalidArgumentError("Heat value out of [0, 1]: %r" % value)
    return min(int(value * 5), len(HEAT_BANDS) - 2)


AVERAGE_FAMILIES = (
    IndexFamily.GINI, IndexFamily.HHI, IndexFamily.SHANNON,
    IndexFamily.ATKINSON)


class AveragesRow:
    def __init__(self, metric, title, means, coverage):
        self.metric = metric
        self.title = title
        self.means = means
        self.coverage = coverage

    def bands(self):
        return [heat_band(self.means[f]) for f in AVERAGE_FAMILIES]


class AveragesTable:
    KIND = 'table'

    def __init__(self, start, end, rows, epsilon):
        self.start = start
        self.end = end
        self.rows_ = list(rows)
        self.epsilon = epsilon

    @property
    def days(self):
        return (self.end - self.start).days + 1

    def header(self):
        return ['metric'] + [f.value for f in AVERAGE_FAMILIES] + ['coverage']

    def rows(self):
        return [[r.metric.value] + [r.means[f] for f in AVERAGE_FAMILIES] +
                [r.coverage] for r in self.rows_]

    def heatColumns(self):
        return list(range(1, 1 + len(AVERAGE_FAMILIES)))

    @property
    def footnote(self):
        return ("Atkinson index with epsilon=%g; Amount Staked by Pool uses "
                "epsilon lowered by the largest pool's daily share." %
                self.epsilon)


def averages_table(store, start, end, registry, epsilon=DEFAULT_EPSILON):
    """ Mean of each daily index per distribution metric over a date range.
        Missing days are left out of the means and counted in the
        `coverage` column.
    """
    days = list(date_range(start, end))
    rows = []
    for metric in registry.distributionMetrics():
        sums = collections.defaultdict(list)
        coverage = 0
        for day in days:
            if not store.has(day, metric):
                continue
            d = store.read(day, metric).distribution
            for f in AVERAGE_FAMILIES:
                sums[f].append(family_value(f, metric, d, epsilon))
            coverage += 1
        if coverage == 0:
            logger.debug("No %s data between %s and %s." %
                         (metric.value, start, end))
            continue
        means = dict((f, min(1.0, max(0.0, math.fsum(v) / len(v))))
                     for f, v in sums.items())
        rows.append(AveragesRow(metric, registry.title(metric), means, coverage))

    if not rows:
        raise InsufficientDataError(
            "No snapshots stored between %s and %s." % (start, end))
    return AveragesTable(start, end, rows, epsilon)


class IndexStatsTable:
    """ Spread of each daily index series over a date range, one row per
        metric and family.
    """
    KIND = 'table'

    def __init__(self, start, end, rows):
        self.start = start
        self.end = end
        self.rows_ = list(rows)

    def header(self):
        return ['metric', 'family', 'days', 'min', 'max', 'median', 'mean',
                'std']

    def rows(self):
        return [list(r) for r in self.rows_]


def index_stats_table(store, start, end, registry, families=AVERAGE_FAMILIES,
                      epsilon=DEFAULT_EPSILON):
    rows = []
    for metric in registry.distributionMetrics():
        for family in families:
            family = IndexFamily.parse(family)
            points = index_series(store, metric, family, start, end, epsilon)
            values = np.array([v for _, v in points if v is not None])
            if values.size == 0:
                continue
            rows.append((metric.value, family.value, int(values.size),
                         float(values.min()), float(values.max()),
                         float(np.median(values)), float(values.mean()),
                         float(values.std())))
    if not rows:
        raise InsufficientDataError(
            "No snapshots stored between %s and %s." % (start, end))
    return IndexStatsTable(start, end, rows)


class ScalarsTable:
    KIND = 'table'

    def __init__(self, rows):
        self.rows_ = list(rows)

    def header(self):
        return ['date', 'metric', 'title', 'value']

    def rows(self):
        return [[day.isoformat(), m.value, title, value]
                for day, m, title, value in self.rows_]


def scalars_table(store, start, end, registry):
    """ Stored values of the scalar metrics (effective inflation, staked
        supply) for every day of a range.
    """
    rows = []
    for day in date_range(start, end):
        for metric in registry.scalarMetrics():
            if store.has(day, metric):
                rows.append((day, metric, registry.title(metric),
                             store.read(day, metric).payload))
    if not rows:
        raise InsufficientDataError(
            "No scalar metrics stored between %s and %s." % (start, end))
    return ScalarsTable(rows)


class JsdTable:
    KIND = 'table'

    def __init__(self, rows):
        self.rows_ = list(rows)

    def header(self):
        return ['metric', 'title', 'first', 'last', 'jsd']

    def rows(self):
        return [[m.value, title, first.isoformat(), last.isoformat(),
                 format_jsd(value)]
                for m, title, first, last, value in self.rows_]


def format_jsd(value):
    return '%.7f' % value


def jsd_table(store, end_date, registry, start_date=None, metrics=None):
    """ JSD between the first and last stored day of every distribution
        metric, in registry order, or of the given `metrics` only.
    """
    if metrics is None:
        metrics = registry.distributionMetrics()
    rows = []
    for metric in metrics:
        metric = MetricId.parse(metric)
        dates = [d for d in store.getDates(metric)
                 if d <= end_date and (start_date is None or d >= start_date)]
        if len(dates) < 2:
            logger.debug("Not enough %s data for a JSD row." % metric.value)
            continue
        first, last = dates[0], dates[-1]
        rows.append((metric, registry.title(metric), first, last,
                     jsd_between(store, metric, first, last)))
    if not rows:
        raise InsufficientDataError(
            "JSD needs at least 2 stored days for a metric up to %s." %
            end_date)
    return JsdTable(rows)


class JsdIntervals:
    KIND = 'table'

    def __init__(self, end_date, intervals, horizons=JSD_HORIZONS):
        self.end_date = end_date
        self.intervals = intervals
        self.horizons = tuple(horizons)

    def header(self):
        return ['metric'] + ['%d-day' % h for h in self.horizons]

    def rows(self):
        return [[m.value] + [None if v[h] is None else format_jsd(v[h])
                             for h in self.horizons]
                for m, v in self.intervals.items()]


def jsd_intervals_table(store, end_date, metrics):
    intervals = collections.OrderedDict()
    for metric in metrics:
        intervals[metric] = jsd_intervals(store, metric, end_date)
    return JsdIntervals(end_date, intervals)


# Registry headline index names to family columns.
HEADLINE_FAMILIES = {
    'gini': IndexFamily.GINI,
    'hhi': IndexFamily.HHI,
}


class IndicesTable:
    """ All indices of some metrics on one day, one row per metric.

        The `headline` column repeats the index the registry prefers for
        that metric: Gini for ownership, HHI for infrastructure markets.
    """
    KIND = 'table'

    def __init__(self, date, reports, headlines=None):
        self.date = date
        self.reports = list(reports)
        self.headlines = headlines or {}

    def header(self):
        if not self.reports:
            return ['metric', 'headline']
        return ['metric', 'headline'] + [n for n, _ in self.reports[0].items()]

    def rows(self):
        rows = []
        for r in self.reports:
            family = self.headlines.get(r.metric)
            rows.append([r.metric.value, family.value if family else None] +
                        [v for _, v in r.items()])
        return rows

    def headlineValue(self, metric):
        metric = MetricId.parse(metric)
        for r in self.reports:
            if r.metric == metric and metric in self.headlines:
                return r.familyValue(self.headlines[metric])
        return None


def indices_table(store, date, metrics, epsilon=DEFAULT_EPSILON,
                  registry=None):
    if registry is None:
        registry = MetricRegistry()
    reports = []
    headlines = {}
    for metric in metrics:
        reports.append(index_report(store.read(date, metric), epsilon))
        preferred = registry.info(metric).preferred_index
        if preferred in HEADLINE_FAMILIES:
            headlines[MetricId.parse(metric)] = HEADLINE_FAMILIES[preferred]
    return IndicesTable(date, reports, headlines)


class LorenzCurve:
    KIND = 'lorenz'

    def __init__(self, metric, date, points):
        self.metric = metric
        self.date = date
        self.points = list(points)

    @property
    def title(self):
        return "Lorenz curve, %s, %s" % (self.metric.value, self.date)

    def header(self):
        return ['population', 'resource']

    def rows(self):
        return [[x, y] for x, y in self.points]


def lorenz_curve(store, date, metric):
    metric = MetricId.parse(metric)
    d = store.read(date, metric).distribution
    return LorenzCurve(metric, date, lorenz_points(d))


class SeriesChart:
    """ One index family over time, one line per metric. """
    KIND = 'series'

    def __init__(self, family, series, rolling=None):
        self.family = IndexFamily.parse(family)
        self.series = collections.OrderedDict(series)
        self.rolling = rolling

    @property
    def title(self):
        title = "%s by metric" % self.family.value
        if self.rolling:
            title += " (%d-day rolling mean)" % self.rolling
        return title

    @property
    def ylabel(self):
        return self.family.value

    def header(self):
        return ['date', 'metric', self.family.value]

    def rows(self):
        return [[day.isoformat(), m.value, v]
                for m, points in self.series.items()
                for day, v in points]

    def chartLines(self):
        return [('series-%s' % m.value, m.value, points)
                for m, points in self.series.items()]


def index_series_chart(store, family, start, end, metrics,
                       epsilon=DEFAULT_EPSILON, rolling=None):
    series = collections.OrderedDict()
    for metric in metrics:
        points = index_series(store, metric, family, start, end, epsilon)
        if not points:
            continue
        if rolling:
            points = rolling_mean(points, rolling)
        series[metric] = points
    if not series:
        raise InsufficientDataError(
            "No snapshots stored between %s and %s." % (start, end))
    return SeriesChart(family, series, rolling)


class MasterChart:
    """ Master index series, one line per index family. """
    KIND = 'master'

    def __init__(self, series, count=None):
        self.series = list(series)
        self.count = count

    title = "Master index"
    ylabel = "master index"

    def _points(self, s):
        points = [(p.date, p) for p in s]
        if self.count:
            points = subsample(points, self.count)
        return points

    def header(self):
        return ['date', 'family', 'value', 'geomean', 'beta_min', 'beta_max',
                'metrics', 'missing', 'note']

    def rows(self):
        rows = []
        for s in self.series:
            for day, p in self._points(s):
                rows.append([
                    day.isoformat(), s.family.value, p.value, p.geomean,
                    p.beta_min, p.beta_max, len(p.metrics),
                    ' '.join(m.value for m in p.missing), p.note])
        return rows

    def chartLines(self):
        return [('series-%s' % s.family.value, s.family.value,
                 [(day, p.value) for day, p in self._points(s)])
                for s in self.series]


def master_chart(store, families, registry, start, end, exclusions=None,
                 epsilon=DEFAULT_EPSILON, count=None):
    series = [master_series(store, f, registry, start, end,
                            exclusions=exclusions, epsilon=epsilon)
              for f in families]
    if not any(len(s) for s in series):
        raise InsufficientDataError(
            "No snapshots stored between %s and %s." % (start, end))
    return MasterChart(series, count)
