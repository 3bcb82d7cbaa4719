from .base import Parser


class EthernodesParser(Parser):
    """ Execution node counts, by client or by country.

        Schema: `{"data": [{"key": "geth", "value": 5200}, ...]}`.
    """
    PARSER_TYPE = 'ethernodes'

    def parsePayload(self, obj):
        rows = self.require(obj, 'data')
        if not isinstance(rows, list):
            raise self.schemaError("'data' isn't a list")
        pairs = []
        for row in rows:
            pairs.append((self.require(row, 'key'), self.require(row, 'value')))
        return self.makeDistribution(pairs)

    def renderPayload(self, payload):
        return {'data': [{'key': l, 'value': q} for l, q in payload]}
