import json
import logging
from ..model import (
        ConcentrometerError, ConfigError, MetricId, MetricKind,
        ShareDistribution, Snapshot, metric_kind)


logger = logging.getLogger(__name__)


class ParseError(ConcentrometerError):
    def __init__(self, source_id, offset, message):
        super().__init__("Can't parse payload from '%s' at byte %d: %s" %
                         (source_id, offset, message))
        self.source_id = source_id
        self.offset = offset


class SchemaMismatchError(ConcentrometerError):
    def __init__(self, source_id, message):
        super().__init__("Payload from '%s' doesn't match its schema: %s" %
                         (source_id, message))
        self.source_id = source_id


class SourceSpec:
    """ Where and how to get one metric's daily data. """
    def __init__(self, source_id, metric, endpoint, parser_id,
                 cadence='daily', options=None):
        self.source_id = source_id
        self.metric = MetricId.parse(metric)
        self.endpoint = endpoint
        self.parser_id = parser_id
        self.cadence = cadence
        self.options = dict(options or {})

    def getOption(self, name, fallback=None):
        return self.options.get(name, fallback)

    @property
    def api_key_env(self):
        return self.options.get('api_key_env')

    def __repr__(self):
        return 'SourceSpec(%s, %s, %s)' % (
            self.source_id, self.metric.value, self.parser_id)


class Parser:
    PARSER_TYPE = 'unknown'

    def __init__(self, spec):
        self.spec = spec

    @property
    def source_id(self):
        return self.spec.source_id

    def getConfigItem(self, name, fallback=None):
        return self.spec.getOption(name, fallback)

    def parsePayload(self, obj):
        raise NotImplementedError()

    def renderPayload(self, payload):
        raise NotImplementedError()

    def schemaError(self, message):
        return SchemaMismatchError(self.source_id, message)

    def require(self, obj, *path):
        cur = obj
        for key in path:
            if isinstance(key, int):
                ok = isinstance(cur, list) and len(cur) > key
            else:
                ok = isinstance(cur, dict) and key in cur
            if not ok:
                raise self.schemaError("missing field '%s'" %
                                       '.'.join(str(k) for k in path))
            cur = cur[key]
        return cur

    def requireNumber(self, value, what):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.schemaError("%s isn't a number: %r" % (what, value))
        return value

    def makeDistribution(self, pairs):
        merged = {}
        for label, quantity in pairs:
            label = str(label)
            quantity = self.requireNumber(quantity, "quantity for '%s'" % label)
            if label in merged:
                logger.warning("Merging duplicate label '%s' from '%s'." %
                               (label, self.source_id))
                merged[label] += quantity
            else:
                merged[label] = quantity
        if not merged:
            raise self.schemaError("no entries")
        return ShareDistribution(list(merged.items()))


def _get_parser_types():
    from .migalabs import MigaLabsParser
    from .ethernodes import EthernodesParser
    from .messari import MessariParser
    from .dune import DuneParser
    from .mevboost import MevBoostParser
    from .l2beat import L2BeatParser
    from .llama import LlamaParser
    from .economics import UltrasoundParser, BeaconchainParser
    parser_types = [
        MigaLabsParser,
        EthernodesParser,
        MessariParser,
        DuneParser,
        MevBoostParser,
        L2BeatParser,
        LlamaParser,
        UltrasoundParser,
        BeaconchainParser]
    return dict([(p.PARSER_TYPE, p) for p in parser_types])


def get_parser(spec):
    parser_class = _get_parser_types().get(spec.parser_id)
    if not parser_class:
        raise ConfigError("Unknown parser type: %s" % spec.parser_id)
    return parser_class(spec)


def decode_payload(spec, payload):
    try:
        text = payload.decode('utf8')
    except UnicodeDecodeError as err:
        raise ParseError(spec.source_id, err.start, "invalid UTF-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        offset = len(text[:err.pos].encode('utf8'))
        raise ParseError(spec.source_id, offset, err.msg)


def parse(spec, payload, date, fetched_at):
    obj = decode_payload(spec, payload)
    parser = get_parser(spec)
    value = parser.parsePayload(obj)

    kind = metric_kind(spec.metric)
    if kind == MetricKind.DISTRIBUTION and not isinstance(value, ShareDistribution):
        raise SchemaMismatchError(
            spec.source_id, "parser '%s' didn't produce a distribution" %
            spec.parser_id)
    return Snapshot(date, spec.metric, value, spec.source_id, fetched_at)


def _get_source_section_names(config):
    return [sn for sn in config.sections() if sn.startswith('source:')]


def load_source_specs(config, names=None):
    parser_types = _get_parser_types()

    specs = []
    for sec_name in _get_source_section_names(config):
        source_id = sec_name[len('source:'):]
        if names and source_id not in names:
            continue

        items = dict(config.items(sec_name))
        if items.pop('enabled', 'true').lower() in ('false', 'no', 'off', '0'):
            logger.debug("Skipping disabled source: %s" % source_id)
            continue

        parser_id = items.pop('type', None)
        if not parser_id:
            raise ConfigError("No parser type specified for: %s" % source_id)
        if parser_id not in parser_types:
            raise ConfigError("Unknown parser type: %s" % parser_id)
        metric = items.pop('metric', None)
        if not metric:
            raise ConfigError("No metric specified for: %s" % source_id)
        try:
            metric = MetricId.parse(metric)
        except ConcentrometerError:
            raise ConfigError("Unknown metric '%s' for source: %s" %
                              (metric, source_id))
        url = items.pop('url', None)
        if not url:
            raise ConfigError("No URL specified for: %s" % source_id)

        logger.debug("Loading source '%s' for '%s'." % (source_id, metric.value))
        specs.append(SourceSpec(source_id, metric, url, parser_id,
                                cadence=items.pop('cadence', 'daily'),
                                options=items))

    if names:
        unknown = set(names) - set(s.source_id for s in specs)
        if unknown:
            raise ConfigError("No such source: %s" % ', '.join(sorted(unknown)))
    return specs


def uncovered_metrics(specs, registry):
    covered = set(s.metric for s in specs)
    return [m for m in registry.distributionMetrics() if m not in covered]
