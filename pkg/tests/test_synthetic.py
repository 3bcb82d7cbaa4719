import os
import datetime
import filecmp
import pytest
from concentrometer.model import InvalidArgumentError, MetricId
from concentrometer.sources.base import load_source_specs, parse
from concentrometer.sources.fetch import fetch
from concentrometer.sources.synthetic import write_synthetic_corpus


START = datetime.date(2023, 5, 23)


def _read(spec, date, fixture_dir):
    res = fetch(spec, 'fixture', date, fixture_dir=fixture_dir)
    return parse(spec, res.payload, date, res.fetched_at).distribution


def test_corpus_layout(default_config, tmp_path):
    specs = load_source_specs(default_config)
    paths = write_synthetic_corpus(specs, START, 3, str(tmp_path), seed=1)
    assert len(paths) == 36
    assert os.path.exists(str(tmp_path / 'mevboost-builders' / '2023-05-25.json'))
    for spec in specs:
        for i in range(3):
            day = START + datetime.timedelta(days=i)
            assert len(_read(spec, day, str(tmp_path))) >= 1


def test_corpus_is_deterministic(default_config, tmp_path):
    specs = load_source_specs(default_config)
    write_synthetic_corpus(specs, START, 2, str(tmp_path / 'a'), seed=5)
    write_synthetic_corpus(specs, START, 2, str(tmp_path / 'b'), seed=5)
    write_synthetic_corpus(specs, START, 2, str(tmp_path / 'c'), seed=6)
    for spec in specs:
        name = os.path.join(spec.source_id, '2023-05-24.json')
        assert filecmp.cmp(str(tmp_path / 'a' / name),
                           str(tmp_path / 'b' / name), shallow=False)
    name = os.path.join('mevboost-builders', '2023-05-24.json')
    assert not filecmp.cmp(str(tmp_path / 'a' / name),
                           str(tmp_path / 'c' / name), shallow=False)


def test_corpus_regime_shift(default_config, tmp_path):
    specs = load_source_specs(default_config)
    write_synthetic_corpus(specs, START, 4, str(tmp_path), shift_day=2)
    by_metric = dict((s.metric, s) for s in specs)

    builders = by_metric[MetricId.BLOCKS_BY_BUILDER]
    before = _read(builders, START + datetime.timedelta(days=1), str(tmp_path))
    after = _read(builders, START + datetime.timedelta(days=2), str(tmp_path))
    leader = before.labels[0]
    assert before.get(leader) > 0
    assert after.get(leader) == 0

    clients = by_metric[MetricId.CONSENSUS_NODES_BY_CLIENT]
    after = _read(clients, START + datetime.timedelta(days=3), str(tmp_path))
    assert after.quantities[0] > 0


def test_corpus_scalar_sources(tmp_path):
    import configparser
    config = configparser.ConfigParser(interpolation=None)
    config.read_string("""
[source:inflation]
type=ultrasound
metric=effective-inflation-rate
url=https://example.org/inflation

[source:staked]
type=beaconchain
metric=staked-supply-percentage
url=https://example.org/staked
""")
    specs = load_source_specs(config)
    write_synthetic_corpus(specs, START, 2, str(tmp_path))
    for spec in specs:
        res = fetch(spec, 'fixture', START, fixture_dir=str(tmp_path))
        s = parse(spec, res.payload, START, res.fetched_at)
        assert -1 < s.payload < 1


@pytest.mark.parametrize("days, shift_day", [(0, None), (5, 5), (5, -1)])
def test_corpus_invalid(default_config, tmp_path, days, shift_day):
    specs = load_source_specs(default_config)
    with pytest.raises(InvalidArgumentError):
        write_synthetic_corpus(specs, START, days, str(tmp_path),
                               shift_day=shift_day)
