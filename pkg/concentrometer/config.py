import os
import os.path
import logging
import datetime
import configparser
import dateparser
from .model import ConfigError, InvalidArgumentError, MetricId, MetricRegistry
from .indices import DEFAULT_EPSILON
from .sources.fetch import DEFAULT_TIMEOUT, get_timeout


logger = logging.getLogger(__name__)


def load_config(config_path=None):
    xdg_config_home = os.getenv('XDG_CONFIG_HOME',
                                os.path.expanduser('~/.config'))
    config = configparser.ConfigParser(interpolation=None)
    config_paths = [
        os.path.join(os.path.dirname(__file__), 'default.cfg'),
        os.path.join(xdg_config_home, 'concentrometer/concentrometer.cfg')
    ]
    if config_path:
        if not os.path.isfile(config_path):
            raise ConfigError("No such configuration file: %s" % config_path)
        config_paths.append(config_path)
    loaded = config.read(config_paths, encoding='utf8')
    logger.debug("Loaded configuration from: %s" % ', '.join(loaded))
    return config


def parse_date(text):
    if isinstance(text, datetime.date):
        return text
    dt = dateparser.parse(text, settings={'DATE_ORDER': 'YMD'})
    if dt is None:
        raise InvalidArgumentError("Can't parse date: %s" % text)
    return dt.date()


def parse_range(text):
    """ Parses `D1..D2` into a pair of dates. """
    parts = text.split('..')
    if len(parts) != 2 or not all(p.strip() for p in parts):
        raise InvalidArgumentError(
            "Date ranges are written as 'START..END', got: %s" % text)
    start, end = parse_date(parts[0].strip()), parse_date(parts[1].strip())
    if start > end:
        raise InvalidArgumentError("Empty date range: %s" % text)
    return start, end


def parse_metric_list(values):
    """ Metrics from repeated and/or comma-separated arguments. """
    metrics = []
    for v in values or ():
        for name in v.split(','):
            name = name.strip()
            if name:
                metrics.append(MetricId.parse(name))
    return metrics


def load_weights_file(path):
    """ Reads weight overrides from an INI file with a `[weights]`
        section of `<metric-id> = <weight>` lines.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, 'r', encoding='utf8') as fp:
            parser.read_file(fp)
    except OSError as ex:
        raise ConfigError("Can't read weights file '%s': %s" % (path, ex))
    except configparser.Error as ex:
        raise ConfigError("Invalid weights file '%s': %s" % (path, ex))
    if not parser.has_section('weights'):
        raise ConfigError("No [weights] section in: %s" % path)
    return dict(parser.items('weights'))


def _store_uri(value):
    if '://' in value:
        return value
    return 'jsonl://' + os.path.abspath(value)


class CliConfig:
    """ Settings for one command, from the configuration files with
        command-line flags on top.
    """
    def __init__(self, args, config, cfg_dir=None):
        self.cfg_dir = cfg_dir

        store = getattr(args, 'store', None)
        if store:
            config.set('store', 'uri', _store_uri(store))
        self.store_uri = config.get('store', 'uri', fallback=None)

        self.fixture_dir = (getattr(args, 'fixtures', None) or
                            self._path(config.get('fetch', 'fixtures',
                                                  fallback=None)))
        self.mode = (getattr(args, 'mode', None) or
                     config.get('fetch', 'mode', fallback='fixture'))
        # The environment wins over the configuration files.
        self.timeout = get_timeout(
            config.getfloat('fetch', 'timeout', fallback=DEFAULT_TIMEOUT))
        self.attempts = config.getint('fetch', 'attempts', fallback=3)
        self.workers = config.getint('fetch', 'workers', fallback=4)

        date = getattr(args, 'date', None)
        self.date = parse_date(date) if date else None
        date_range = getattr(args, 'range', None)
        self.range = parse_range(date_range) if date_range else None

        self.metrics = parse_metric_list(getattr(args, 'metric', None))
        self.exclusions = parse_metric_list(getattr(args, 'exclude', None))

        epsilon = getattr(args, 'epsilon', None)
        if epsilon is None:
            epsilon = config.getfloat('indices', 'epsilon',
                                      fallback=DEFAULT_EPSILON)
        if not epsilon > 0:
            raise ConfigError("Epsilon must be positive, got: %r" % epsilon)
        self.epsilon = epsilon

        overrides = {}
        if config.has_section('weights'):
            overrides.update(config.items('weights'))
        weights_path = getattr(args, 'weights', None)
        if weights_path:
            overrides.update(load_weights_file(weights_path))
        self.registry = MetricRegistry()
        if overrides:
            self.registry = self.registry.withWeights(overrides)

        self.output_dir = (getattr(args, 'output_dir', None) or
                           self._path(config.get('output', 'dir', fallback='.')))
        self.format = (getattr(args, 'format', None) or
                       config.get('output', 'format', fallback='csv'))
        self.color = not getattr(args, 'no_color', False)

    def _path(self, path):
        if path and self.cfg_dir and not os.path.isabs(path):
            return os.path.join(self.cfg_dir, path)
        return path

    def outputPath(self, name, ext=None):
        if self.format == 'terminal' and ext is None:
            return None
        os.makedirs(self.output_dir, exist_ok=True)
        return os.path.join(self.output_dir, '%s.%s' % (name, ext or self.format))
