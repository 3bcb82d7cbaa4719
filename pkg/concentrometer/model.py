import enum
import math
import logging
import datetime
import numpy as np


logger = logging.getLogger(__name__)


class ConcentrometerError(Exception):
    pass


class InvalidArgumentError(ConcentrometerError, ValueError):
    pass


class InvalidDistributionError(ConcentrometerError, ValueError):
    pass


class ConfigError(ConcentrometerError):
    pass


class ShareDistribution:
    """ Labeled nonnegative quantities for one metric on one day.

        Entries keep their original order. Zero quantities are kept
        because they count as members of the population.
    """
    def __init__(self, entries):
        if isinstance(entries, dict):
            entries = entries.items()

        labels = set()
        checked = []
        for label, quantity in entries:
            if not isinstance(label, str):
                raise InvalidDistributionError(
                    "Distribution labels must be text, got: %r" % (label,))
            if label in labels:
                raise InvalidDistributionError(
                    "Duplicate label in distribution: %s" % label)
            try:
                quantity = float(quantity)
            except (TypeError, ValueError):
                raise InvalidDistributionError(
                    "Quantity for '%s' isn't a number: %r" % (label, quantity))
            if not math.isfinite(quantity) or quantity < 0:
                raise InvalidDistributionError(
                    "Quantity for '%s' must be finite and nonnegative: %r" %
                    (label, quantity))
            labels.add(label)
            checked.append((label, quantity))

        if not checked:
            raise InvalidDistributionError("Distribution has no entries.")
        if not any(q > 0 for _, q in checked):
            raise InvalidDistributionError(
                "Distribution has no positive quantity.")

        self._entries = tuple(checked)

    @property
    def entries(self):
        return self._entries

    @property
    def labels(self):
        return tuple(l for l, _ in self._entries)

    @property
    def quantities(self):
        return tuple(q for _, q in self._entries)

    @property
    def total(self):
        return math.fsum(self.quantities)

    def toArray(self):
        return np.array(self.quantities, dtype=float)

    def get(self, label, default=None):
        for l, q in self._entries:
            if l == label:
                return q
        return default

    def scaled(self, factor):
        if factor <= 0:
            raise InvalidArgumentError(
                "Scale factor must be positive: %r" % factor)
        return ShareDistribution([(l, q * factor) for l, q in self._entries])

    def toDict(self):
        return dict(self._entries)

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other):
        if not isinstance(other, ShareDistribution):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return 'ShareDistribution(%r)' % (list(self._entries),)


def proportions(d):
    quantities = d.toArray()
    total = quantities.sum()
    if total <= 0:
        raise InvalidDistributionError(
            "Can't compute proportions of an all-zero distribution.")
    return list(quantities / total)


def align(p, q):
    """ Returns the proportion vectors of `p` and `q` over the union of
        their labels, in lexicographic label order. Labels missing from
        one side get a zero proportion.
    """
    p_shares = dict(zip(p.labels, proportions(p)))
    q_shares = dict(zip(q.labels, proportions(q)))
    labels = sorted(set(p_shares) | set(q_shares))
    pv = np.array([p_shares.get(l, 0.0) for l in labels])
    qv = np.array([q_shares.get(l, 0.0) for l in labels])
    return pv, qv


SYNTH_KINDS = ('uniform', 'monopoly', 'two-society-A', 'two-society-B',
               'pareto-like')

# Tail index of the heavy-tailed synthetic distribution.
PARETO_SHAPE = 1.16


def synth(kind, n, seed=0):
    if n < 2:
        raise InvalidArgumentError(
            "Synthetic distributions need at least 2 entities, got %d." % n)

    if kind == 'uniform':
        quantities = [1.0] * n
    elif kind == 'monopoly':
        quantities = [1.0] + [0.0] * (n - 1)
    elif kind == 'two-society-A':
        holders = n // 2
        quantities = [1.0] * holders + [0.0] * (n - holders)
    elif kind == 'two-society-B':
        quantities = [0.5] + [0.5 / (n - 1)] * (n - 1)
    elif kind == 'pareto-like':
        rng = np.random.default_rng(seed)
        quantities = list(rng.pareto(PARETO_SHAPE, n) + 1.0)
    else:
        raise InvalidArgumentError("Unknown synthetic distribution: %s" % kind)

    width = len(str(n - 1))
    return ShareDistribution(
        [('entity-%s' % str(i).zfill(width), q)
         for i, q in enumerate(quantities)])


class MetricKind(enum.Enum):
    DISTRIBUTION = 'distribution'
    SCALAR = 'scalar'


class MetricId(enum.Enum):
    CONSENSUS_NODES_BY_CLIENT = 'consensus-nodes-by-client'
    CONSENSUS_NODES_BY_COUNTRY = 'consensus-nodes-by-country'
    EXECUTION_NODES_BY_CLIENT = 'execution-nodes-by-client'
    EXECUTION_NODES_BY_COUNTRY = 'execution-nodes-by-country'
    NATIVE_ASSET_DISTRIBUTION = 'native-asset-distribution'
    STAKED_BY_POOL = 'staked-by-pool'
    BLOCKS_BY_BUILDER = 'blocks-by-builder'
    BLOCKS_BY_RELAY = 'blocks-by-relay'
    USEROPS_BY_BUNDLER = 'userops-by-bundler'
    WALLETS_BY_DEPLOYER = 'wallets-by-deployer'
    ROLLUPS_BY_TVL = 'rollups-by-tvl'
    STABLECOINS_BY_TVL = 'stablecoins-by-tvl'
    EFFECTIVE_INFLATION_RATE = 'effective-inflation-rate'
    STAKED_SUPPLY_PERCENTAGE = 'staked-supply-percentage'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise InvalidArgumentError("Unknown metric: %s" % value)


class MetricInfo:
    def __init__(self, metric, title, weight, kind, in_master_index,
                 preferred_index):
        self.metric = metric
        self.title = title
        self.weight = weight
        self.kind = kind
        self.in_master_index = in_master_index
        self.preferred_index = preferred_index

    def withWeight(self, weight):
        return MetricInfo(self.metric, self.title, weight, self.kind,
                          self.in_master_index, self.preferred_index)


M = MetricId
D = MetricKind.DISTRIBUTION
S = MetricKind.SCALAR

DEFAULT_METRICS = (
    MetricInfo(M.CONSENSUS_NODES_BY_CLIENT, "Consensus Nodes by Client",
               1.0, D, True, 'gini'),
    MetricInfo(M.CONSENSUS_NODES_BY_COUNTRY, "Consensus Nodes by Country",
               1.0, D, True, 'gini'),
    MetricInfo(M.EXECUTION_NODES_BY_CLIENT, "Execution Nodes by Client",
               1.0, D, True, 'gini'),
    MetricInfo(M.EXECUTION_NODES_BY_COUNTRY, "Execution Nodes by Country",
               1.0, D, True, 'gini'),
    MetricInfo(M.NATIVE_ASSET_DISTRIBUTION, "Native Assets by Address",
               1.0, D, True, 'gini'),
    MetricInfo(M.STAKED_BY_POOL, "Amount Staked by Pool",
               1.0, D, True, 'gini'),
    MetricInfo(M.BLOCKS_BY_BUILDER, "Blocks by Builder",
               0.7, D, True, 'hhi'),
    MetricInfo(M.BLOCKS_BY_RELAY, "Blocks by Relays",
               0.7, D, True, 'hhi'),
    MetricInfo(M.USEROPS_BY_BUNDLER, "User Operations by Bundler",
               0.2, D, True, 'hhi'),
    MetricInfo(M.WALLETS_BY_DEPLOYER, "Wallets by Deployer",
               0.2, D, True, 'hhi'),
    MetricInfo(M.ROLLUPS_BY_TVL, "Rollups by Tvl",
               0.5, D, True, 'gini'),
    MetricInfo(M.STABLECOINS_BY_TVL, "Stablecoins by Tvl",
               0.3, D, True, 'gini'),
    MetricInfo(M.EFFECTIVE_INFLATION_RATE, "Effective Inflation Rate",
               0.0, S, False, None),
    MetricInfo(M.STAKED_SUPPLY_PERCENTAGE, "Percentage of Supply Staked",
               0.0, S, False, None),
)

del M, D, S


def metric_kind(metric):
    metric = MetricId.parse(metric)
    for info in DEFAULT_METRICS:
        if info.metric == metric:
            return info.kind
    raise InvalidArgumentError("Unknown metric: %s" % metric)


class MetricRegistry:
    def __init__(self, infos=DEFAULT_METRICS):
        self._infos = tuple(infos)
        self._by_id = dict((i.metric, i) for i in self._infos)
        for info in self._infos:
            if info.weight < 0:
                raise ConfigError(
                    "Negative weight for metric: %s" % info.metric.value)
            if info.kind == MetricKind.SCALAR and info.in_master_index:
                raise ConfigError(
                    "Scalar metric can't be in the master index: %s" %
                    info.metric.value)

    def __iter__(self):
        return iter(self._infos)

    def __contains__(self, metric):
        return metric in self._by_id

    def info(self, metric):
        return self._by_id[MetricId.parse(metric)]

    def weight(self, metric):
        return self.info(metric).weight

    def kind(self, metric):
        return self.info(metric).kind

    def title(self, metric):
        return self.info(metric).title

    def metrics(self):
        return [i.metric for i in self._infos]

    def distributionMetrics(self):
        return [i.metric for i in self._infos
                if i.kind == MetricKind.DISTRIBUTION]

    def scalarMetrics(self):
        return [i.metric for i in self._infos
                if i.kind == MetricKind.SCALAR]

    def masterMetrics(self, exclusions=None):
        exclusions = set(exclusions or ())
        return [i.metric for i in self._infos
                if i.in_master_index and i.metric not in exclusions]

    def normalizedWeights(self, metrics=None):
        if metrics is None:
            metrics = self.masterMetrics()
        total = math.fsum(self.weight(m) for m in metrics)
        if total <= 0:
            raise InvalidArgumentError(
                "Can't normalize weights summing to zero for: %s" %
                ', '.join(m.value for m in metrics))
        return dict((m, self.weight(m) / total) for m in metrics)

    def withWeights(self, overrides):
        """ Returns a new registry with the given metric weights replaced.
        """
        parsed = {}
        for name, weight in overrides.items():
            try:
                metric = MetricId.parse(name)
            except InvalidArgumentError:
                raise ConfigError("Weight override for unknown metric: %s" % name)
            if self.kind(metric) != MetricKind.DISTRIBUTION:
                raise ConfigError(
                    "Can't set a weight on scalar metric: %s" % metric.value)
            try:
                weight = float(weight)
            except (TypeError, ValueError):
                raise ConfigError(
                    "Invalid weight for %s: %r" % (metric.value, weight))
            if not math.isfinite(weight) or weight < 0:
                raise ConfigError(
                    "Invalid weight for %s: %r" % (metric.value, weight))
            parsed[metric] = weight

        infos = []
        for info in self._infos:
            if info.metric in parsed:
                logger.debug("Overriding weight of %s: %s -> %s" %
                             (info.metric.value, info.weight,
                              parsed[info.metric]))
                info = info.withWeight(parsed[info.metric])
            infos.append(info)
        return MetricRegistry(infos)


class Snapshot:
    """ One day's recorded value for one metric. """
    def __init__(self, date, metric, payload, source, fetched_at):
        metric = MetricId.parse(metric)
        if isinstance(date, datetime.datetime):
            date = date.date()
        if not isinstance(date, datetime.date):
            raise InvalidArgumentError("Snapshot date must be a date: %r" % date)

        kind = metric_kind(metric)
        if kind == MetricKind.DISTRIBUTION:
            if not isinstance(payload, ShareDistribution):
                raise InvalidArgumentError(
                    "Metric %s needs a distribution payload." % metric.value)
        else:
            if isinstance(payload, ShareDistribution) or isinstance(payload, bool):
                raise InvalidArgumentError(
                    "Metric %s needs a scalar payload." % metric.value)
            payload = float(payload)
            if not math.isfinite(payload):
                raise InvalidArgumentError(
                    "Scalar payload for %s must be finite." % metric.value)

        if fetched_at.tzinfo is None:
            fetched_at = fetched_at.replace(tzinfo=datetime.timezone.utc)

        self._date = date
        self._metric = metric
        self._payload = payload
        self._source = source
        self._fetched_at = fetched_at

    @property
    def date(self):
        return self._date

    @property
    def metric(self):
        return self._metric

    @property
    def payload(self):
        return self._payload

    @property
    def source(self):
        return self._source

    @property
    def fetched_at(self):
        return self._fetched_at

    @property
    def kind(self):
        if isinstance(self._payload, ShareDistribution):
            return MetricKind.DISTRIBUTION
        return MetricKind.SCALAR

    @property
    def distribution(self):
        if self.kind != MetricKind.DISTRIBUTION:
            raise InvalidArgumentError(
                "Snapshot for %s holds a scalar value." % self._metric.value)
        return self._payload

    def _key(self):
        return (self._date, self._metric, self._payload, self._source,
                self._fetched_at)

    def __eq__(self, other):
        if not isinstance(other, Snapshot):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return 'Snapshot(%s, %s, source=%s)' % (
            self._date.isoformat(), self._metric.value, self._source)
