import os
import os.path
import json
import zlib
import logging
import datetime
import numpy as np
from .base import get_parser
from .fetch import fixture_path
from ..model import InvalidArgumentError, MetricId, ShareDistribution
from ..timeseries import ScalarEconomics


logger = logging.getLogger(__name__)


ENTITY_LABELS = {
    MetricId.CONSENSUS_NODES_BY_CLIENT: [
        'Prysm', 'Lighthouse', 'Teku', 'Nimbus', 'Lodestar', 'Grandine'],
    MetricId.CONSENSUS_NODES_BY_COUNTRY: [
        'United States', 'Germany', 'France', 'Finland', 'Singapore',
        'United Kingdom', 'Canada', 'Japan', 'Netherlands', 'Ireland',
        'Australia', 'South Korea', 'Switzerland', 'Poland', 'Brazil'],
    MetricId.EXECUTION_NODES_BY_CLIENT: [
        'geth', 'nethermind', 'erigon', 'besu', 'reth'],
    MetricId.EXECUTION_NODES_BY_COUNTRY: [
        'United States', 'Germany', 'Finland', 'France', 'Singapore',
        'Netherlands', 'United Kingdom', 'Canada', 'Japan', 'Russia',
        'Ireland', 'China'],
    MetricId.STAKED_BY_POOL: [
        'Lido', 'Coinbase', 'Binance', 'Kraken', 'Rocket Pool', 'Figment',
        'Staked.us', 'Stakefish', 'Bitcoin Suisse', 'Frax Finance',
        'Stakewise', 'Other'],
    MetricId.BLOCKS_BY_BUILDER: [
        'builder0x69', 'beaverbuild', 'flashbots', 'rsync-builder',
        'bloXroute', 'Manta-builder', 'eth-builder', 'blocknative',
        'titan', 'lightspeedbuilder'],
    MetricId.BLOCKS_BY_RELAY: [
        'Flashbots', 'Ultra Sound', 'bloXroute Max Profit',
        'bloXroute Regulated', 'Agnostic Gnosis', 'Aestus', 'Manifold',
        'Eden', 'Blocknative'],
    MetricId.USEROPS_BY_BUNDLER: [
        'Stackup', 'Biconomy', 'Alchemy', 'Pimlico', 'Candide',
        'Etherspot', 'unknown'],
    MetricId.WALLETS_BY_DEPLOYER: [
        'Safe', 'Biconomy', 'ZeroDev', 'Argent', 'Ambire', 'Alchemy',
        'Coinbase', 'unknown'],
    MetricId.ROLLUPS_BY_TVL: [
        'Arbitrum One', 'OP Mainnet', 'zkSync Era', 'dYdX', 'Polygon zkEVM',
        'Starknet', 'Loopring', 'Metis', 'Immutable X', 'Base'],
    MetricId.STABLECOINS_BY_TVL: [
        'USDT', 'USDC', 'DAI', 'BUSD', 'TUSD', 'FRAX', 'USDP', 'LUSD',
        'GUSD', 'PYUSD'],
}

NATIVE_ASSET_HOLDERS = 400

# Metrics whose leading entity loses its share on a regime shift.
SHIFTING_METRICS = (
    MetricId.BLOCKS_BY_BUILDER,
    MetricId.BLOCKS_BY_RELAY,
    MetricId.ROLLUPS_BY_TVL)

# Quantities are drawn on these scales and stored as integers.
SCALES = {
    MetricId.CONSENSUS_NODES_BY_CLIENT: 9000,
    MetricId.CONSENSUS_NODES_BY_COUNTRY: 9000,
    MetricId.EXECUTION_NODES_BY_CLIENT: 7000,
    MetricId.EXECUTION_NODES_BY_COUNTRY: 7000,
    MetricId.STAKED_BY_POOL: 19000000,
    MetricId.BLOCKS_BY_BUILDER: 7000,
    MetricId.BLOCKS_BY_RELAY: 7000,
    MetricId.USEROPS_BY_BUNDLER: 40000,
    MetricId.WALLETS_BY_DEPLOYER: 25000,
    MetricId.ROLLUPS_BY_TVL: 10000000000,
    MetricId.STABLECOINS_BY_TVL: 120000000000,
}

SUPPLY = 120200000
DAILY_ISSUANCE = 2600
PERIOD_DAYS = 30


def _rng(seed, source_id, *extra):
    return np.random.default_rng(
        [seed, zlib.crc32(source_id.encode('utf8'))] + list(extra))


def _base_weights(spec, seed, n):
    # Stable across days, biggest first so the first label leads.
    w = _rng(seed, spec.source_id).pareto(1.16, n) + 1
    return np.sort(w)[::-1]


def synthetic_distribution(spec, seed, day_index, shifted=False):
    if spec.metric == MetricId.NATIVE_ASSET_DISTRIBUTION:
        labels = ['holder-%03d' % i for i in range(NATIVE_ASSET_HOLDERS)]
        balances = _rng(seed, spec.source_id, day_index).pareto(
            0.9, NATIVE_ASSET_HOLDERS) * 0.05
        return ShareDistribution(
            [(l, round(float(b), 6)) for l, b in zip(labels, balances)])

    labels = ENTITY_LABELS[spec.metric]
    base = _base_weights(spec, seed, len(labels))
    jitter = _rng(seed, spec.source_id, day_index).uniform(0.9, 1.1, len(labels))
    weights = base * jitter
    if shifted:
        weights[0] = 0.0
    weights = weights / weights.sum() * SCALES[spec.metric]
    return ShareDistribution(
        [(l, int(round(w))) for l, w in zip(labels, weights)])


def synthetic_scalar(spec, seed, day_index):
    rng = _rng(seed, spec.source_id, day_index)
    if spec.parser_id == 'ultrasound':
        issuance = DAILY_ISSUANCE * PERIOD_DAYS * rng.uniform(0.95, 1.05)
        burned = DAILY_ISSUANCE * PERIOD_DAYS * rng.uniform(0.7, 1.4)
        return (ScalarEconomics(round(issuance, 2), round(burned, 2), SUPPLY),
                PERIOD_DAYS)
    staked = SUPPLY * rng.uniform(0.15, 0.2)
    return ScalarEconomics(0, 0, SUPPLY, staked=round(staked))


def write_synthetic_corpus(specs, start, days, fixture_dir, seed=0,
                           shift_day=None):
    """ Writes `days` days of fixture payloads for every source, starting
        at `start`, and returns the written paths.

        With `shift_day` (a day index), the leading builder, relay and
        rollup drop to zero from that day on.
    """
    if days < 1:
        raise InvalidArgumentError("Need at least one day, got: %d" % days)
    if shift_day is not None and not (0 <= shift_day < days):
        raise InvalidArgumentError(
            "Shift day must be within the %d generated days." % days)

    paths = []
    for spec in specs:
        parser = get_parser(spec)
        for i in range(days):
            date = start + datetime.timedelta(days=i)
            if spec.metric in ENTITY_LABELS or \
                    spec.metric == MetricId.NATIVE_ASSET_DISTRIBUTION:
                shifted = (shift_day is not None and i >= shift_day and
                           spec.metric in SHIFTING_METRICS)
                payload = synthetic_distribution(spec, seed, i, shifted)
            else:
                payload = synthetic_scalar(spec, seed, i)

            path = fixture_path(fixture_dir, spec.source_id, date)
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, 'w', encoding='utf8', newline='\n') as fp:
                json.dump(parser.renderPayload(payload), fp, indent=1,
                          ensure_ascii=False)
                fp.write('\n')
            paths.append(path)
        logger.debug("Wrote %d days of fixtures for '%s'." %
                     (days, spec.source_id))

    logger.info("Wrote %d fixture files under: %s" % (len(paths), fixture_dir))
    return paths
