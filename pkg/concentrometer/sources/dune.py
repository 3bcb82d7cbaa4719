from .base import Parser


class DuneParser(Parser):
    """ Results of a Dune query.

        Schema: `{"result": {"rows": [{...}, ...]}}`, where each row has
        the columns named by the `label_column` and `value_column` options
        of the source.
    """
    PARSER_TYPE = 'dune'

    @property
    def label_column(self):
        return self.getConfigItem('label_column', 'label')

    @property
    def value_column(self):
        return self.getConfigItem('value_column', 'value')

    def parsePayload(self, obj):
        rows = self.require(obj, 'result', 'rows')
        if not isinstance(rows, list):
            raise self.schemaError("'result.rows' isn't a list")
        return self.makeDistribution(
            (self.require(row, self.label_column),
             self.require(row, self.value_column))
            for row in rows)

    def renderPayload(self, payload):
        return {'result': {'rows': [
            {self.label_column: l, self.value_column: q}
            for l, q in payload]}}
