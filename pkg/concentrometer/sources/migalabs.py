from .base import Parser


class MigaLabsParser(Parser):
    """ Consensus node counts, by client or by country.

        Schema: a JSON object mapping each client (or country) name to its
        node count, e.g. `{"lighthouse": 3100, "prysm": 2900}`.
    """
    PARSER_TYPE = 'migalabs'

    def parsePayload(self, obj):
        if not isinstance(obj, dict):
            raise self.schemaError("expected an object of node counts")
        if not obj:
            raise self.schemaError("missing node counts")
        return self.makeDistribution(obj.items())

    def renderPayload(self, payload):
        return dict(payload.entries)
