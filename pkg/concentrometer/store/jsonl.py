import os
import os.path
import logging
from .base import (
        SnapshotStore, MissingDataError, serialize_snapshot,
        deserialize_snapshot)
from ..model import MetricId


logger = logging.getLogger(__name__)


class JsonlStore(SnapshotStore):
    """ Stores snapshots as one JSON record per line, in files named
        `<root>/<metric>/<YYYY-MM>.jsonl`.
    """
    def __init__(self, root):
        super().__init__()
        self.root = root
        self._snapshots = {}
        self._load()

    def _load(self):
        if not os.path.isdir(self.root):
            logger.debug("Snapshot store doesn't exist yet: %s" % self.root)
            return

        count = 0
        for metric_dir in sorted(os.listdir(self.root)):
            dirpath = os.path.join(self.root, metric_dir)
            if not os.path.isdir(dirpath):
                continue
            for name in sorted(os.listdir(dirpath)):
                if not name.endswith('.jsonl'):
                    continue
                path = os.path.join(dirpath, name)
                with open(path, 'r', encoding='utf8') as fp:
                    for line in fp:
                        line = line.strip()
                        if not line:
                            continue
                        snapshot = deserialize_snapshot(line)
                        # Later lines supersede earlier ones.
                        key = (snapshot.date, snapshot.metric)
                        self._snapshots[key] = snapshot
                        count += 1
        logger.debug("Loaded %d snapshot records from: %s" % (count, self.root))

    def getPath(self, date, metric):
        metric = MetricId.parse(metric)
        return os.path.join(self.root, metric.value,
                            '%04d-%02d.jsonl' % (date.year, date.month))

    def has(self, date, metric):
        return (date, MetricId.parse(metric)) in self._snapshots

    def read(self, date, metric):
        metric = MetricId.parse(metric)
        try:
            return self._snapshots[(date, metric)]
        except KeyError:
            raise MissingDataError(date, metric)

    def _doWrite(self, snapshot):
        path = self.getPath(snapshot.date, snapshot.metric)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        line = serialize_snapshot(snapshot)
        logger.debug("Appending %s snapshot for %s to: %s" %
                     (snapshot.metric.value, snapshot.date, path))
        with open(path, 'a', encoding='utf8', newline='\n') as fp:
            fp.write(line + '\n')
        # Keep what a fresh load would return.
        self._snapshots[(snapshot.date, snapshot.metric)] = \
            deserialize_snapshot(line)

    def getKeys(self):
        return list(self._snapshots)
