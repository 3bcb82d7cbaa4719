from .base import Parser


class LlamaParser(Parser):
    """ Stablecoin supply circulating on one chain.

        Schema (DefiLlama stablecoins list):
        `{"peggedAssets": [{"symbol": "USDT", "chainCirculating":
        {"Ethereum": {"current": {"peggedUSD": 3.9e10}}}}, ...]}`.

        Assets that don't circulate on the chain are kept with zero.
    """
    PARSER_TYPE = 'llama'

    @property
    def chain(self):
        return self.getConfigItem('chain', 'Ethereum')

    def parsePayload(self, obj):
        assets = self.require(obj, 'peggedAssets')
        if not isinstance(assets, list):
            raise self.schemaError("'peggedAssets' isn't a list")

        pairs = []
        for asset in assets:
            symbol = self.require(asset, 'symbol')
            chains = self.require(asset, 'chainCirculating')
            on_chain = chains.get(self.chain) if isinstance(chains, dict) else None
            if on_chain is None:
                pairs.append((symbol, 0))
                continue
            pairs.append((symbol, self.require(on_chain, 'current', 'peggedUSD')))
        return self.makeDistribution(pairs)

    def renderPayload(self, payload):
        return {'peggedAssets': [
            {'symbol': l,
             'chainCirculating': {self.chain: {'current': {'peggedUSD': q}}}}
            for l, q in payload]}
