from .base import Parser
from ..model import InvalidArgumentError
from ..timeseries import ScalarEconomics, effective_inflation, staked_percentage


class _EconomicsParser(Parser):
    def makeEconomics(self, **kwargs):
        for name, val in kwargs.items():
            self.requireNumber(val, name)
        try:
            return ScalarEconomics(**kwargs)
        except InvalidArgumentError as ex:
            raise self.schemaError(str(ex))


class UltrasoundParser(_EconomicsParser):
    """ Supply changes over a period, for the effective inflation rate.

        Schema: `{"issuance": 2700.5, "burned": 3100.2,
        "total_supply": 120218472, "period_days": 30}`.
    """
    PARSER_TYPE = 'ultrasound'

    def parsePayload(self, obj):
        e = self.makeEconomics(
            issuance=self.require(obj, 'issuance'),
            burned=self.require(obj, 'burned'),
            total_supply=self.require(obj, 'total_supply'))
        period = self.requireNumber(self.require(obj, 'period_days'), 'period_days')
        try:
            return effective_inflation(e, period)
        except InvalidArgumentError as ex:
            raise self.schemaError(str(ex))

    def renderPayload(self, payload):
        e, period_days = payload
        return {'issuance': e.issuance, 'burned': e.burned,
                'total_supply': e.total_supply, 'period_days': period_days}


class BeaconchainParser(_EconomicsParser):
    """ Staked ETH against total supply.

        Schema: `{"staked": 24932109, "total_supply": 120218472}`.
    """
    PARSER_TYPE = 'beaconchain'

    def parsePayload(self, obj):
        e = self.makeEconomics(
            issuance=0, burned=0,
            total_supply=self.require(obj, 'total_supply'),
            staked=self.require(obj, 'staked'))
        try:
            return staked_percentage(e)
        except InvalidArgumentError as ex:
            raise self.schemaError(str(ex))

    def renderPayload(self, payload):
        return {'staked': payload.staked, 'total_supply': payload.total_supply}
