import enum
import math
import logging
import datetime
import collections
from .model import (
        ConcentrometerError, InvalidArgumentError, MetricId, MetricKind,
        metric_kind, proportions)
from .indices import (
        AtkinsonParams, DEFAULT_EPSILON,
        gini, gini_from_lorenz, hhi, hhi_classify, shannon, shannon_normalized,
        atkinson, adjusted_aversion, tail_ratios, nakamoto_coefficient,
        jsd_normalized)


logger = logging.getLogger(__name__)


class DegenerateRangeError(ConcentrometerError):
    pass


class IndexFamily(enum.Enum):
    GINI = 'gini'
    HHI = 'hhi-rescaled'
    SHANNON = 'shannon-normalized'
    ATKINSON = 'atkinson'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise InvalidArgumentError("Unknown index family: %s" % value)


def _check_distribution_metric(metric):
    metric = MetricId.parse(metric)
    if metric_kind(metric) != MetricKind.DISTRIBUTION:
        raise InvalidArgumentError(
            "Metric %s isn't a distribution metric." % metric.value)
    return metric


def date_range(start, end):
    if start > end:
        raise InvalidArgumentError(
            "Empty date range: %s..%s" % (start.isoformat(), end.isoformat()))
    day = start
    while day <= end:
        yield day
        day += datetime.timedelta(days=1)


def atkinson_epsilon_for(metric, distribution, epsilon=DEFAULT_EPSILON):
    """ Inequality aversion to use for a metric on a given day.

        Staked-by-pool lowers the aversion by the largest pool's share.
    """
    if MetricId.parse(metric) == MetricId.STAKED_BY_POOL:
        largest = max(proportions(distribution))
        if largest < 1:
            return adjusted_aversion(epsilon, largest)
        logger.debug("Single pool holds everything, not adjusting aversion.")
    return epsilon


def family_value(family, metric, distribution, epsilon=DEFAULT_EPSILON):
    family = IndexFamily.parse(family)
    if family == IndexFamily.GINI:
        return gini(distribution)
    if family == IndexFamily.HHI:
        return hhi(distribution)
    if family == IndexFamily.SHANNON:
        if len(distribution) < 2:
            return 0.0
        return shannon_normalized(distribution)
    eps = atkinson_epsilon_for(metric, distribution, epsilon)
    return float(atkinson(distribution, AtkinsonParams(eps)))


class IndexReport:
    """ All index values for one metric on one day. """
    def __init__(self, snapshot, epsilon=DEFAULT_EPSILON):
        d = snapshot.distribution
        self.date = snapshot.date
        self.metric = snapshot.metric
        self.entities = len(d)
        self.gini = gini(d)
        self.gini_lorenz = gini_from_lorenz(d)
        self.hhi = hhi(d)
        self.hhi_class = hhi_classify(self.hhi)
        self.shannon = shannon(d)
        self.shannon_normalized = family_value(
                IndexFamily.SHANNON, self.metric, d)
        self.atkinson_epsilon = atkinson_epsilon_for(self.metric, d, epsilon)
        value = atkinson(d, AtkinsonParams(self.atkinson_epsilon))
        self.atkinson = float(value)
        self.atkinson_at_limit = value.at_limit
        self.tail_ratios = tail_ratios(d)
        self.nakamoto_half = nakamoto_coefficient(d, 0.5)
        self.nakamoto_third = nakamoto_coefficient(d, 1 / 3)

    def familyValue(self, family):
        family = IndexFamily.parse(family)
        return {
            IndexFamily.GINI: self.gini,
            IndexFamily.HHI: self.hhi,
            IndexFamily.SHANNON: self.shannon_normalized,
            IndexFamily.ATKINSON: self.atkinson}[family]

    def items(self):
        return [
            ('gini', self.gini),
            ('gini-lorenz', self.gini_lorenz),
            ('hhi-rescaled', self.hhi),
            ('hhi-class', self.hhi_class.value),
            ('shannon', self.shannon),
            ('shannon-normalized', self.shannon_normalized),
            ('atkinson', self.atkinson),
            ('atkinson-epsilon', self.atkinson_epsilon),
            ('atkinson-at-limit', self.atkinson_at_limit),
            ('palma', self.tail_ratios.palma),
            ('p90p10', self.tail_ratios.p90p10),
            ('p50p10', self.tail_ratios.p50p10),
            ('nakamoto-50', self.nakamoto_half),
            ('nakamoto-33', self.nakamoto_third),
            ('entities', self.entities)]


def index_report(snapshot, epsilon=DEFAULT_EPSILON):
    return IndexReport(snapshot, epsilon)


def jsd_between(store, metric, d1, d2):
    metric = _check_distribution_metric(metric)
    p = store.read(d1, metric).distribution
    q = store.read(d2, metric).distribution
    return jsd_normalized(p, q)


JSD_HORIZONS = (1, 30, 60, 90)


def jsd_intervals(store, metric, end_date, horizons=JSD_HORIZONS):
    metric = _check_distribution_metric(metric)
    res = collections.OrderedDict()
    for days in horizons:
        start = end_date - datetime.timedelta(days=days)
        if store.has(start, metric) and store.has(end_date, metric):
            res[days] = jsd_between(store, metric, start, end_date)
        else:
            logger.debug("No %d-day JSD for %s at %s." %
                         (days, metric.value, end_date.isoformat()))
            res[days] = None
    return res


class MasterIndexInput:
    def __init__(self, date, family, values, weights, included=None):
        self.date = date
        self.family = IndexFamily.parse(family)
        self.values = dict(values)
        self.weights = dict(weights)
        if included is None:
            included = list(self.values)
        self.included = list(included)

        for metric in self.included:
            if metric not in self.values or metric not in self.weights:
                raise InvalidArgumentError(
                    "Included metric needs both a value and a weight: %s" %
                    getattr(metric, 'value', metric))
            beta = self.values[metric]
            if not (0 <= beta <= 1):
                raise InvalidArgumentError(
                    "Index value out of [0, 1] for %s: %r" %
                    (getattr(metric, 'value', metric), beta))

        weight_sum = math.fsum(self.weights[m] for m in self.included)
        if self.included and abs(weight_sum - 1.0) > 1e-12:
            raise InvalidArgumentError(
                "Included weights must sum to 1, got: %r" % weight_sum)


MasterIndexValue = collections.namedtuple(
        'MasterIndexValue', ['value', 'geomean', 'beta_min', 'beta_max'])

# Floor for each geometric mean factor, so that a zero index value
# doesn't collapse the whole product.
FACTOR_FLOOR = 1e-9


def master_index(inp):
    """ Normalized weighted geometric mean of one index family across
        metrics:

            ((prod (beta_i * omega_i * 100))^(1/n) - min(beta))
            / ((max(beta) - min(beta)) * 10^-2)

        The geometric mean and the min/max are on different scales; the
        value is only meaningful relative to the same index on other days.
    """
    n = len(inp.included)
    if n < 2:
        raise InvalidArgumentError(
            "Master index needs at least 2 metrics, got %d." % n)

    betas = [inp.values[m] for m in inp.included]
    beta_min = min(betas)
    beta_max = max(betas)
    if beta_max == beta_min:
        raise DegenerateRangeError(
            "All %d metrics have the same %s value (%r) on %s." %
            (n, inp.family.value, beta_min, inp.date))

    logs = [math.log(max(inp.values[m] * inp.weights[m] * 100, FACTOR_FLOOR))
            for m in inp.included]
    geomean = math.exp(math.fsum(logs) / n)
    value = (geomean - beta_min) / ((beta_max - beta_min) * 10 ** -2)
    return MasterIndexValue(value, geomean, beta_min, beta_max)


class MasterPoint:
    def __init__(self, date, value, geomean, beta_min, beta_max, metrics,
                 missing, note=None):
        self.date = date
        self.value = value
        self.geomean = geomean
        self.beta_min = beta_min
        self.beta_max = beta_max
        self.metrics = metrics
        self.missing = missing
        self.note = note

    @property
    def flagged(self):
        return bool(self.missing) or self.value is None


class MasterSeries:
    def __init__(self, family, points, exclusions=()):
        self.family = IndexFamily.parse(family)
        self.points = list(points)
        self.exclusions = tuple(exclusions)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def values(self):
        return [p.value for p in self.points]


def master_series(store, family, registry, start, end, exclusions=None,
                  epsilon=DEFAULT_EPSILON):
    family = IndexFamily.parse(family)
    exclusions = [MetricId.parse(m) for m in (exclusions or ())]
    metrics = registry.masterMetrics(exclusions)

    points = []
    for day in date_range(start, end):
        present = [m for m in metrics if store.has(day, m)]
        missing = [m for m in metrics if m not in present]
        if not present:
            logger.debug("No master index data on %s." % day.isoformat())
            continue
        if missing:
            logger.info("Missing %s on %s, renormalizing weights." %
                        (', '.join(m.value for m in missing), day.isoformat()))

        values = {}
        for m in present:
            d = store.read(day, m).distribution
            values[m] = family_value(family, m, d, epsilon)

        note = None
        value = geomean = beta_min = beta_max = None
        try:
            weights = registry.normalizedWeights(present)
            inp = MasterIndexInput(day, family, values, weights, present)
            value, geomean, beta_min, beta_max = master_index(inp)
        except (InvalidArgumentError, DegenerateRangeError) as ex:
            logger.warning("No %s master index on %s: %s" %
                           (family.value, day.isoformat(), ex))
            note = str(ex)

        points.append(MasterPoint(day, value, geomean, beta_min, beta_max,
                                  present, missing, note))

    return MasterSeries(family, points, exclusions)


def index_series(store, metric, family, start, end, epsilon=DEFAULT_EPSILON):
    """ Per-day values of one index family for one metric. Days without
        a snapshot are left out.
    """
    metric = _check_distribution_metric(metric)
    points = []
    for day in date_range(start, end):
        if not store.has(day, metric):
            continue
        d = store.read(day, metric).distribution
        points.append((day, family_value(family, metric, d, epsilon)))
    return points


def rolling_mean(points, window):
    if window < 1:
        raise InvalidArgumentError("Rolling window must be at least 1.")
    res = []
    for i, (day, _) in enumerate(points):
        chunk = [v for _, v in points[max(0, i - window + 1):i + 1]]
        res.append((day, math.fsum(chunk) / len(chunk)))
    return res


def subsample(points, count):
    """ Evenly spaced subsample of `points`, keeping the first and last.
    """
    if count < 2:
        raise InvalidArgumentError("Subsample needs at least 2 points.")
    n = len(points)
    if n <= count:
        return list(points)
    indices = sorted(set(round(i * (n - 1) / (count - 1))
                         for i in range(count)))
    return [points[i] for i in indices]


def latest_contiguous_range(dates):
    dates = sorted(set(dates))
    if not dates:
        raise InvalidArgumentError("No stored days.")
    end = start = dates[-1]
    for day in reversed(dates[:-1]):
        if start - day != datetime.timedelta(days=1):
            break
        start = day
    return start, end


class ScalarEconomics:
    def __init__(self, issuance, burned, total_supply, staked=0.0):
        for name, val in (('issuance', issuance), ('burned', burned),
                          ('total supply', total_supply), ('staked', staked)):
            if val < 0:
                raise InvalidArgumentError(
                    "Negative %s: %r" % (name, val))
        if staked > total_supply:
            raise InvalidArgumentError(
                "Staked amount exceeds total supply: %r > %r" %
                (staked, total_supply))
        self.issuance = float(issuance)
        self.burned = float(burned)
        self.total_supply = float(total_supply)
        self.staked = float(staked)


DAYS_PER_YEAR = 365


def effective_inflation(e, period_days):
    """ Annualized net issuance as a fraction of supply. Negative when
        more ETH was burned than issued.
    """
    if e.total_supply <= 0:
        raise InvalidArgumentError("Total supply must be positive.")
    if period_days < 1:
        raise InvalidArgumentError(
            "Period must be at least one day, got: %r" % period_days)
    net = (e.issuance - e.burned) / e.total_supply
    return net * (DAYS_PER_YEAR / period_days)


def staked_percentage(e):
    if e.total_supply <= 0:
        raise InvalidArgumentError("Total supply must be positive.")
    return e.staked / e.total_supply
