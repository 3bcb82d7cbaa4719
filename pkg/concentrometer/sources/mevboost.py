from .base import Parser


class MevBoostParser(Parser):
    """ Blocks delivered through mev-boost, by builder or by relay.

        Schema: `{"<table>": [{"name": "beaverbuild", "blocks": 1800}, ...]}`
        where `<table>` is the `table` option of the source (`builders` or
        `relays`).
    """
    PARSER_TYPE = 'mevboost'

    @property
    def table(self):
        return self.getConfigItem('table', 'builders')

    def parsePayload(self, obj):
        rows = self.require(obj, self.table)
        if not isinstance(rows, list):
            raise self.schemaError("'%s' isn't a list" % self.table)
        return self.makeDistribution(
            (self.require(row, 'name'), self.require(row, 'blocks'))
            for row in rows)

    def renderPayload(self, payload):
        return {self.table: [{'name': l, 'blocks': q} for l, q in payload]}
