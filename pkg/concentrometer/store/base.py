import os.path
import json
import logging
import datetime
import threading
import urllib.parse
import dateutil.parser
from ..model import (
        ConcentrometerError, MetricId, MetricKind, ShareDistribution,
        Snapshot, metric_kind)


logger = logging.getLogger(__name__)


SCHEMA_VERSION = 1


class MissingDataError(ConcentrometerError):
    def __init__(self, date, metric):
        super().__init__("No %s snapshot stored for %s." %
                         (metric.value, date.isoformat()))
        self.date = date
        self.metric = metric


class SnapshotExistsError(ConcentrometerError):
    def __init__(self, date, metric):
        super().__init__("A %s snapshot already exists for %s." %
                         (metric.value, date.isoformat()))
        self.date = date
        self.metric = metric


class StoreFormatError(ConcentrometerError):
    pass


def snapshot_to_record(snapshot):
    rec = {
        'schema_version': SCHEMA_VERSION,
        'date': snapshot.date.isoformat(),
        'metric': snapshot.metric.value,
        'kind': snapshot.kind.value,
    }
    if snapshot.kind == MetricKind.DISTRIBUTION:
        rec['entries'] = [{'label': l, 'quantity': q}
                          for l, q in snapshot.payload]
    else:
        rec['value'] = snapshot.payload
    rec['source'] = snapshot.source
    rec['fetched_at'] = snapshot.fetched_at.isoformat()
    return rec


def record_to_snapshot(rec):
    version = rec.get('schema_version')
    if version != SCHEMA_VERSION:
        raise StoreFormatError(
            "Unsupported snapshot schema version: %r" % version)
    try:
        metric = MetricId.parse(rec['metric'])
        kind = MetricKind(rec['kind'])
        if kind != metric_kind(metric):
            raise StoreFormatError(
                "Record kind '%s' doesn't match metric %s." %
                (kind.value, metric.value))
        if kind == MetricKind.DISTRIBUTION:
            payload = ShareDistribution(
                [(e['label'], e['quantity']) for e in rec['entries']])
        else:
            payload = rec['value']
        return Snapshot(
            datetime.date.fromisoformat(rec['date']),
            metric,
            payload,
            rec['source'],
            dateutil.parser.isoparse(rec['fetched_at']))
    except KeyError as err:
        raise StoreFormatError("Snapshot record is missing: %s" % err)


def serialize_snapshot(snapshot):
    return json.dumps(snapshot_to_record(snapshot), ensure_ascii=False,
                      separators=(',', ':'))


def deserialize_snapshot(line):
    return record_to_snapshot(json.loads(line))


class SnapshotStore:
    """ Snapshots keyed by (date, metric).

        Writes are append-only: writing over an existing key needs the
        `overwrite` flag, and the newest record wins on reads.
    """
    def __init__(self):
        self._lock = threading.Lock()

    def has(self, date, metric):
        raise NotImplementedError()

    def read(self, date, metric):
        raise NotImplementedError()

    def write(self, snapshot, overwrite=False):
        with self._lock:
            if not overwrite and self.has(snapshot.date, snapshot.metric):
                raise SnapshotExistsError(snapshot.date, snapshot.metric)
            self._doWrite(snapshot)

    def _doWrite(self, snapshot):
        raise NotImplementedError()

    def getKeys(self):
        raise NotImplementedError()

    def getDates(self, metric=None):
        if metric is not None:
            metric = MetricId.parse(metric)
        return sorted(set(d for d, m in self.getKeys()
                          if metric is None or m == metric))

    def getMetrics(self):
        return sorted(set(m for _, m in self.getKeys()), key=lambda m: m.value)

    def __len__(self):
        return len(self.getKeys())


def load_store(config, cfg_dir):
    store_uri = config.get('store', 'uri', fallback=None)
    if not store_uri:
        raise ConcentrometerError("No snapshot store configured!")

    res = urllib.parse.urlparse(store_uri)
    if res.scheme == 'jsonl':
        from .jsonl import JsonlStore
        root = res.netloc + res.path
        if cfg_dir and not os.path.isabs(root):
            root = os.path.join(cfg_dir, root)
        return JsonlStore(root)
    elif res.scheme == 'memory':
        from .memory import MemoryStore
        return MemoryStore()

    raise ConcentrometerError("Unknown store URI: %s" % store_uri)
