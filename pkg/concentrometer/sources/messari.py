import bisect
from .base import Parser


# Balance bucket edges, in ETH. A balance falls in the bucket whose
# lower edge is the greatest edge not above it.
BALANCE_EDGES = (0.01, 0.1, 1, 10, 100, 1000, 10000, 100000)
BALANCE_BUCKETS = (
    '<0.01', '0.01-0.1', '0.1-1', '1-10', '10-100', '100-1k', '1k-10k',
    '10k-100k', '>100k')


def balance_bucket(balance):
    return BALANCE_BUCKETS[bisect.bisect_right(BALANCE_EDGES, balance)]


class MessariParser(Parser):
    """ Native asset holdings, bucketed by address balance.

        Schema: `{"data": {"balances": [{"balance": 12.5, "addresses": 40},
        ...]}}`, each row giving a number of addresses holding a balance.
        The stored distribution has one entry per balance bucket (all
        buckets, including empty ones) with the total ETH held in it.
    """
    PARSER_TYPE = 'messari'

    def parsePayload(self, obj):
        rows = self.require(obj, 'data', 'balances')
        if not isinstance(rows, list):
            raise self.schemaError("'data.balances' isn't a list")
        if not rows:
            raise self.schemaError("no balances")

        held = dict((b, 0.0) for b in BALANCE_BUCKETS)
        for row in rows:
            balance = self.requireNumber(self.require(row, 'balance'), "balance")
            addresses = self.requireNumber(
                self.require(row, 'addresses'), "address count")
            if balance < 0 or addresses < 0:
                raise self.schemaError("negative balance row: %r" % row)
            held[balance_bucket(balance)] += balance * addresses
        return self.makeDistribution((b, held[b]) for b in BALANCE_BUCKETS)

    def renderPayload(self, payload):
        # One row per holder; the labels of `payload` are not kept.
        return {'data': {'balances': [
            {'balance': q, 'addresses': 1} for _, q in payload]}}
