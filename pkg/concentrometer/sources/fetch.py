import os
import os.path
import time
import logging
import datetime
import requests
from ..model import ConcentrometerError, InvalidArgumentError


logger = logging.getLogger(__name__)


MODES = ('live', 'fixture')
DEFAULT_TIMEOUT = 30
DEFAULT_ATTEMPTS = 3
MAX_BACKOFF = 30
TIMEOUT_ENV = 'CONCENTROMETER_HTTP_TIMEOUT'


class FetchError(ConcentrometerError):
    pass


class SourceUnavailableError(FetchError):
    def __init__(self, source_id, trace):
        super().__init__("Source '%s' unavailable after %d attempt(s): %s" %
                         (source_id, len(trace), '; '.join(trace)))
        self.source_id = source_id
        self.trace = list(trace)


class FixtureMissingError(FetchError):
    def __init__(self, source_id, path):
        super().__init__("No fixture for '%s': %s" % (source_id, path))
        self.source_id = source_id
        self.path = path


class FetchResult:
    def __init__(self, payload, fetched_at, mode, location, trace=None):
        self.payload = payload
        self.fetched_at = fetched_at
        self.mode = mode
        self.location = location
        self.trace = list(trace or [])


def fixture_path(fixture_dir, source_id, date):
    return os.path.join(fixture_dir, source_id, '%s.json' % date.isoformat())


def get_timeout(default=DEFAULT_TIMEOUT):
    val = os.getenv(TIMEOUT_ENV)
    if not val:
        return default
    try:
        return float(val)
    except ValueError:
        raise InvalidArgumentError(
            "Invalid %s value: %s" % (TIMEOUT_ENV, val))


def effective_mode(spec, mode):
    """ Sources that need an API key fall back to fixtures without one. """
    if mode == 'live' and spec.api_key_env and not os.getenv(spec.api_key_env):
        logger.warning("No %s set, using fixtures for source '%s'." %
                       (spec.api_key_env, spec.source_id))
        return 'fixture'
    return mode


def fetch(spec, mode, date, fixture_dir=None, timeout=None,
          attempts=DEFAULT_ATTEMPTS):
    if mode not in MODES:
        raise InvalidArgumentError("Unknown fetch mode: %s" % mode)

    mode = effective_mode(spec, mode)
    if mode == 'fixture':
        return _fetch_fixture(spec, date, fixture_dir)
    if timeout is None:
        timeout = get_timeout()
    return _fetch_live(spec, timeout, attempts)


def _fetch_fixture(spec, date, fixture_dir):
    if not fixture_dir:
        raise InvalidArgumentError("Fixture mode needs a fixture directory.")
    path = fixture_path(fixture_dir, spec.source_id, date)
    try:
        with open(path, 'rb') as fp:
            payload = fp.read()
    except FileNotFoundError:
        raise FixtureMissingError(spec.source_id, path)

    logger.debug("Read %d bytes of fixture for '%s' from: %s" %
                 (len(payload), spec.source_id, path))
    fetched_at = datetime.datetime.combine(
        date, datetime.time(0, 0), tzinfo=datetime.timezone.utc)
    return FetchResult(payload, fetched_at, 'fixture', path)


def _fetch_live(spec, timeout, attempts):
    headers = {'Accept': 'application/json'}
    if spec.api_key_env:
        headers['X-Dune-API-Key'] = os.getenv(spec.api_key_env)

    trace = []
    for attempt in range(1, attempts + 1):
        logger.debug("GET %s (attempt %d/%d)" % (spec.endpoint, attempt, attempts))
        try:
            res = requests.get(spec.endpoint, headers=headers, timeout=timeout)
        except requests.RequestException as ex:
            trace.append("attempt %d: %s" % (attempt, ex))
        else:
            if res.status_code == 200:
                return FetchResult(
                    res.content,
                    datetime.datetime.now(datetime.timezone.utc),
                    'live', spec.endpoint, trace)
            trace.append("attempt %d: HTTP %d" % (attempt, res.status_code))
            if res.status_code != 429 and res.status_code < 500:
                raise SourceUnavailableError(spec.source_id, trace)

        if attempt < attempts:
            delay = min(2 ** (attempt - 1), MAX_BACKOFF)
            logger.warning("Fetching '%s' failed (%s), retrying in %ds." %
                           (spec.source_id, trace[-1], delay))
            time.sleep(delay)

    raise SourceUnavailableError(spec.source_id, trace)
