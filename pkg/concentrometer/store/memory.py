from .base import SnapshotStore, MissingDataError
from ..model import MetricId


class MemoryStore(SnapshotStore):
    def __init__(self):
        super().__init__()
        self._snapshots = {}

    def has(self, date, metric):
        return (date, MetricId.parse(metric)) in self._snapshots

    def read(self, date, metric):
        metric = MetricId.parse(metric)
        try:
            return self._snapshots[(date, metric)]
        except KeyError:
            raise MissingDataError(date, metric)

    def _doWrite(self, snapshot):
        self._snapshots[(snapshot.date, snapshot.metric)] = snapshot

    def getKeys(self):
        return list(self._snapshots)
