import io
import os
import os.path
import logging
import datetime
import configparser
import pytest
import concentrometer.main
from concentrometer.model import ShareDistribution, Snapshot
from concentrometer.store.memory import MemoryStore


logger = logging.getLogger(__name__)


FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')
FIXTURE_DATE = datetime.date(2023, 5, 23)
DEFAULT_CFG = os.path.join(os.path.dirname(concentrometer.main.__file__),
                           'default.cfg')


@pytest.fixture
def fixture_dir():
    return FIXTURES_DIR


@pytest.fixture
def default_config():
    config = configparser.ConfigParser(interpolation=None)
    config.read(DEFAULT_CFG)
    return config


@pytest.fixture
def store():
    return MemoryStore()


@pytest.fixture
def snapshot_factory():
    return SnapshotFactory()


class SnapshotFactory:
    """ Builds snapshots with a fixed fetch time. """
    def make(self, date, metric, entries, source='test'):
        if isinstance(entries, (list, dict)):
            payload = ShareDistribution(entries)
        else:
            payload = entries
        fetched_at = datetime.datetime.combine(
            date, datetime.time(0, 0), tzinfo=datetime.timezone.utc)
        return Snapshot(date, metric, payload, source, fetched_at)

    def fill(self, store, metric, start, values_by_day):
        """ Writes one snapshot per day starting at `start`. """
        for i, entries in enumerate(values_by_day):
            day = start + datetime.timedelta(days=i)
            store.write(self.make(day, metric, entries))


@pytest.fixture
def cli(tmp_path, monkeypatch):
    monkeypatch.setenv('XDG_CONFIG_HOME', str(tmp_path / 'xdg'))
    monkeypatch.delenv('DUNE_API_KEY', raising=False)
    monkeypatch.delenv('CONCENTROMETER_HTTP_TIMEOUT', raising=False)
    return CliRunner(tmp_path)


class CliRunner:
    def __init__(self, tmp_path):
        self.tmp_path = tmp_path
        self.store_dir = str(tmp_path / 'snapshots')
        self.output_dir = str(tmp_path / 'out')
        self._cfgtxt = """
[store]
uri=jsonl://%s

[fetch]
fixtures=%s
""" % (self.store_dir, FIXTURES_DIR)
        self._pre_hooks = []

    def setConfig(self, cfgtxt):
        self._cfgtxt = cfgtxt
        return self

    def appendConfig(self, cfgtxt):
        self._cfgtxt += cfgtxt
        return self

    def appendSourceConfig(self, source_id, parser_type, metric, **options):
        cfgtxt = '\n[source:%s]\n' % source_id
        cfgtxt += 'type=%s\n' % parser_type
        cfgtxt += 'metric=%s\n' % metric
        cfgtxt += 'url=https://example.org/%s\n' % source_id
        for n, v in options.items():
            cfgtxt += '%s=%s\n' % (n, v)
        return self.appendConfig(cfgtxt)

    def disableSource(self, source_id):
        return self.appendConfig('\n[source:%s]\nenabled=false\n' % source_id)

    def writeFile(self, name, contents):
        path = self.tmp_path / name
        path.write_text(contents, encoding='utf8')
        return str(path)

    def preExecHook(self, hook):
        self._pre_hooks.append(hook)

    def run(self, *args):
        pre_args = ['-v', '--no-color']
        if self._cfgtxt:
            cfgpath = self.writeFile('concentrometer.cfg', self._cfgtxt)
            logger.info("Created temporary configuration file: %s" % cfgpath)
            pre_args += ['-c', cfgpath]

        captured = io.StringIO()
        handler = logging.StreamHandler(captured)
        handler.setLevel(logging.INFO)
        app_logger = logging.getLogger('concentrometer')
        app_logger.addHandler(handler)

        main_ctx = None
        main_res = None

        def pre_exec_hook(ctx):
            for h in self._pre_hooks:
                h(ctx)

        def post_exec_hook(ctx, res):
            nonlocal main_ctx, main_res
            main_ctx = ctx
            main_res = res

        concentrometer.main.pre_exec_hook = pre_exec_hook
        concentrometer.main.post_exec_hook = post_exec_hook

        args = pre_args + list(args)
        logger.info("Running command: %s" % list(args))
        try:
            exit_code = concentrometer.main._unsafe_main(args)
        finally:
            concentrometer.main.pre_exec_hook = None
            concentrometer.main.post_exec_hook = None
            app_logger.removeHandler(handler)

        self.log = captured.getvalue()
        return main_ctx, exit_code
