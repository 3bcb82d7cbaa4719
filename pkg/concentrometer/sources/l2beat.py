from .base import Parser


class L2BeatParser(Parser):
    """ Total value locked per rollup.

        Schema: `{"projects": [{"name": "Arbitrum One", "tvl": 5.1e9}, ...]}`.
    """
    PARSER_TYPE = 'l2beat'

    def parsePayload(self, obj):
        rows = self.require(obj, 'projects')
        if not isinstance(rows, list):
            raise self.schemaError("'projects' isn't a list")
        return self.makeDistribution(
            (self.require(row, 'name'), self.require(row, 'tvl'))
            for row in rows)

    def renderPayload(self, payload):
        return {'projects': [{'name': l, 'tvl': q} for l, q in payload]}
