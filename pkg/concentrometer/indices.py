""" Inequality, concentration and diversity indices.

All functions take a `ShareDistribution` (or proportion vectors, for the
divergences) and are pure. Natural logarithms are used throughout, with
the usual `0 * ln(0) = 0` convention.
"""
import enum
import math
import logging
import collections
import numpy as np
from .model import (
        InvalidArgumentError, InvalidDistributionError, align)


logger = logging.getLogger(__name__)


def _positive_total(values):
    total = values.sum()
    if total <= 0:
        raise InvalidDistributionError(
            "Index is undefined on an all-zero distribution.")
    return total


def gini(d):
    """ Gini index, computed from the empirical mean difference of the
        values, i.e. `sum_ij |x_i - x_j| / (2 n^2 mu)`.

        The double sum is evaluated through the sorted form
        `2 * sum_i (2i - n - 1) x_(i)`, which is exactly the same sum.
    """
    x = np.sort(d.toArray())
    total = _positive_total(x)
    n = x.size
    ranks = np.arange(1, n + 1)
    value = float(np.sum((2 * ranks - n - 1) * x) / (n * total))
    return min(max(value, 0.0), 1.0)


def lorenz_points(d):
    x = np.sort(d.toArray())
    _positive_total(x)
    n = x.size
    cumulative = np.concatenate(([0.0], np.cumsum(x)))
    resource = cumulative / cumulative[-1]
    population = np.arange(n + 1) / n
    return [(float(p), float(r)) for p, r in zip(population, resource)]


def gini_from_lorenz(d):
    """ Gini index as `1 - 2 * integral(L)`, with the area under the
        Lorenz curve summed as trapezoids.
    """
    points = np.array(lorenz_points(d))
    x, y = points[:, 0], points[:, 1]
    area = np.sum(np.diff(x) * (y[1:] + y[:-1]) / 2.0)
    return float(1.0 - 2.0 * area)


def hhi(d):
    """ Herfindahl-Hirschman index rescaled to (0, 1] by dividing by 10^4.
    """
    q = d.toArray()
    q = q / _positive_total(q)
    return min(float(np.sum(q * q)), 1.0)


class HhiClass(enum.Enum):
    UNCONCENTRATED = 'unconcentrated'
    MODERATELY_CONCENTRATED = 'moderately-concentrated'
    HIGHLY_CONCENTRATED = 'highly-concentrated'


HHI_MODERATE_THRESHOLD = 1500
HHI_HIGH_THRESHOLD = 2500


def hhi_classify(theta):
    if not (0 < theta <= 1):
        raise InvalidArgumentError(
            "Rescaled HHI must be in (0, 1], got: %r" % theta)

    # Undo the rescaling; rounding keeps 0.15 and 0.25 on their bands.
    unscaled = round(theta * 10 ** 4, 6)
    if unscaled < HHI_MODERATE_THRESHOLD:
        return HhiClass.UNCONCENTRATED
    if unscaled <= HHI_HIGH_THRESHOLD:
        return HhiClass.MODERATELY_CONCENTRATED
    return HhiClass.HIGHLY_CONCENTRATED


def shannon(d):
    q = d.toArray()
    q = q / _positive_total(q)
    q = q[q > 0]
    return float(-np.sum(q * np.log(q)))


def shannon_normalized(d):
    n = len(d)
    if n < 2:
        raise InvalidArgumentError(
            "Normalized Shannon index needs at least 2 categories.")
    # Rounding can push a uniform distribution a hair above 1.
    return min(shannon(d) / math.log(n), 1.0)


DEFAULT_EPSILON = 0.5


class AtkinsonParams:
    def __init__(self, epsilon=DEFAULT_EPSILON):
        try:
            epsilon = float(epsilon)
        except (TypeError, ValueError):
            raise InvalidArgumentError("Invalid inequality aversion: %r" % epsilon)
        if not math.isfinite(epsilon) or epsilon <= 0:
            raise InvalidArgumentError(
                "Inequality aversion must be positive, got: %r" % epsilon)
        self.epsilon = epsilon

    def __repr__(self):
        return 'AtkinsonParams(epsilon=%r)' % self.epsilon


class AtkinsonValue(float):
    """ An Atkinson index value. `at_limit` is set when a zero holder
        with `epsilon >= 1` forced the value to 1.
    """
    def __new__(cls, value, at_limit=False):
        obj = float.__new__(cls, value)
        obj.at_limit = at_limit
        return obj


def atkinson(d, params=None):
    if params is None:
        params = AtkinsonParams()
    elif not isinstance(params, AtkinsonParams):
        params = AtkinsonParams(params)
    eps = params.epsilon

    y = d.toArray()
    mu = _positive_total(y) / y.size

    if eps >= 1 and np.any(y == 0):
        logger.debug("Zero holder with epsilon=%s, using the limit value." % eps)
        return AtkinsonValue(1.0, at_limit=True)

    if eps == 1:
        geomean = math.exp(math.fsum(np.log(y)) / y.size)
        value = 1.0 - geomean / mu
    else:
        power = 1.0 - eps
        mean_power = np.mean((y / mu) ** power)
        value = 1.0 - mean_power ** (1.0 / power)

    return AtkinsonValue(min(max(value, 0.0), 1.0))


def adjusted_aversion(base, omega):
    """ Scales an inequality aversion parameter down by a share `omega`,
        i.e. `base * (1 - omega)`.
    """
    if base <= 0:
        raise InvalidArgumentError(
            "Base inequality aversion must be positive: %r" % base)
    if not (0 <= omega < 1):
        raise InvalidArgumentError(
            "Aversion adjustment must be in [0, 1), got: %r" % omega)
    return base * (1.0 - omega)


def percentile(values, p):
    """ Percentile by linear interpolation at rank `i = p (N + 1) / 100`.

        Ranks below the first value or above the last one are clamped.
    """
    if not (0 < p < 100):
        raise InvalidArgumentError("Percentile must be in (0, 100): %r" % p)
    v = sorted(values)
    n = len(v)
    if n == 0:
        raise InvalidArgumentError("Can't take a percentile of no values.")

    i = p * (n + 1) / 100
    if i <= 1:
        return float(v[0])
    if i >= n:
        return float(v[-1])

    whole = int(math.floor(i))
    frac = i - whole
    if frac == 0:
        return float(v[whole - 1])
    return float(v[whole - 1] + frac * (v[whole] - v[whole - 1]))


TailRatios = collections.namedtuple('TailRatios', ['palma', 'p90p10', 'p50p10'])


def _prorated_sum(ordered, count):
    whole = int(math.floor(count))
    frac = count - whole
    total = math.fsum(ordered[:whole])
    if frac > 0 and whole < len(ordered):
        total += frac * ordered[whole]
    return total


def _ratio(num, den):
    if den == 0:
        return None
    return num / den


def tail_ratios(d):
    values = sorted(d.quantities)
    if not any(v > 0 for v in values):
        raise InvalidDistributionError(
            "Tail ratios are undefined on an all-zero distribution.")
    n = len(values)

    # Entity counts are prorated: 10% of 15 entities is 1.5 entities.
    top = _prorated_sum(values[::-1], n * 10 / 100)
    bottom = _prorated_sum(values, n * 40 / 100)

    p10 = percentile(values, 10)
    return TailRatios(
        palma=_ratio(top, bottom),
        p90p10=_ratio(percentile(values, 90), p10),
        p50p10=_ratio(percentile(values, 50), p10))


def nakamoto_coefficient(d, threshold=0.5):
    """ Minimum number of entities whose combined share exceeds
        `threshold`.
    """
    if not (0 < threshold < 1):
        raise InvalidArgumentError(
            "Threshold must be in (0, 1), got: %r" % threshold)
    q = d.toArray()
    q = np.sort(q / _positive_total(q))[::-1]
    running = 0.0
    for count, share in enumerate(q, start=1):
        running += share
        if running > threshold:
            return count
    return len(q)


def kl_divergence(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise InvalidArgumentError(
            "KL divergence needs equal-length vectors: %d vs %d" %
            (p.size, q.size))
    support = p > 0
    if np.any(q[support] <= 0):
        raise InvalidArgumentError(
            "KL divergence is undefined where q is zero and p isn't.")
    return float(np.sum(p[support] * np.log(p[support] / q[support])))


def jsd_vectors(p, q):
    """ Jensen-Shannon divergence of two aligned proportion vectors,
        normalized by its upper bound ln(2).
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    m = (p + q) / 2.0
    raw = 0.5 * kl_divergence(p, m) + 0.5 * kl_divergence(q, m)
    return min(max(raw / math.log(2), 0.0), 1.0)


def jsd_normalized(p, q):
    pv, qv = align(p, q)
    return jsd_vectors(pv, qv)
