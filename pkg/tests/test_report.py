import io
import os
import re
import csv
import datetime
import xml.etree.ElementTree as ET
import pytest
from concentrometer.model import (
        InvalidArgumentError, MetricId, MetricRegistry)
from concentrometer.timeseries import IndexFamily, index_report
from concentrometer.emit import EmitError, emit, render_csv, render_terminal
from concentrometer.report import (
        AVERAGE_FAMILIES, InsufficientDataError, averages_table, heat_band,
        index_series_chart, index_stats_table, indices_table, jsd_table,
        lorenz_curve, master_chart, scalars_table)


START = datetime.date(2023, 5, 23)
B = MetricId.BLOCKS_BY_BUILDER
R = MetricId.BLOCKS_BY_RELAY


def _day(i):
    return START + datetime.timedelta(days=i)


def _reparse(path):
    with open(path, 'r', encoding='utf8', newline='') as fp:
        return list(csv.reader(fp))


def _fill_all(store, snapshot_factory, days, changed=None):
    registry = MetricRegistry()
    for j, metric in enumerate(registry.distributionMetrics()):
        base = dict(('e%d' % k, (k + 1) ** (j % 3)) for k in range(j + 2))
        for i in range(days):
            entries = base
            if metric == changed and i >= days // 2:
                entries = dict(base, e0=100)
            store.write(snapshot_factory.make(_day(i), metric, entries))
    return registry


@pytest.mark.parametrize("value, band", [
    (0.0, 0), (0.19, 0), (0.2, 1), (0.45, 2), (0.6, 3), (0.99, 4), (1.0, 4)])
def test_heat_band(value, band):
    assert heat_band(value) == band


def test_heat_band_monotone():
    values = [i / 1000 for i in range(1001)]
    bands = [heat_band(v) for v in values]
    assert bands == sorted(bands)
    with pytest.raises(InvalidArgumentError):
        heat_band(1.2)


def test_averages_single_day(store, snapshot_factory):
    s = snapshot_factory.make(START, B, {'a': 5, 'b': 3, 'c': 1})
    store.write(s)
    table = averages_table(store, START, START, MetricRegistry())
    assert len(table.rows_) == 1
    row = table.rows_[0]
    report = index_report(s)
    assert row.means[IndexFamily.GINI] == report.gini
    assert row.means[IndexFamily.HHI] == report.hhi
    assert row.means[IndexFamily.SHANNON] == report.shannon_normalized
    assert row.means[IndexFamily.ATKINSON] == report.atkinson
    assert row.coverage == 1


def test_averages_constant_and_alternating(store, snapshot_factory):
    snapshot_factory.fill(store, B, START, [{'a': 3, 'b': 1}] * 90)
    snapshot_factory.fill(store, R, START,
                          [{'a': 1, 'b': 1}, {'a': 1, 'b': 0}] * 45)
    table = averages_table(store, START, _day(89), MetricRegistry())
    rows = dict((r.metric, r) for r in table.rows_)
    assert rows[B].means[IndexFamily.HHI] == pytest.approx(0.625)
    assert rows[R].means[IndexFamily.HHI] == pytest.approx(0.75)
    assert rows[R].means[IndexFamily.GINI] == pytest.approx(0.25)
    assert rows[B].coverage == 90


def test_averages_coverage(store, snapshot_factory):
    snapshot_factory.fill(store, B, START, [{'a': 3, 'b': 1}] * 3)
    table = averages_table(store, START, _day(9), MetricRegistry())
    assert table.rows_[0].coverage == 3
    assert table.days == 10
    assert [r.metric for r in table.rows_] == [B]


def test_averages_errors(store, snapshot_factory):
    with pytest.raises(InvalidArgumentError):
        averages_table(store, _day(2), _day(0), MetricRegistry())
    with pytest.raises(InsufficientDataError):
        averages_table(store, START, _day(2), MetricRegistry())


def test_averages_csv(store, snapshot_factory, tmp_path):
    _fill_all(store, snapshot_factory, 3)
    table = averages_table(store, START, _day(2), MetricRegistry())
    path = emit(table, 'csv', str(tmp_path / 'averages.csv'))
    rows = _reparse(path)
    assert rows[0] == ['metric', 'gini', 'hhi-rescaled', 'shannon-normalized',
                       'atkinson', 'coverage']
    assert len(rows) == 13
    for parsed, row in zip(rows[1:], table.rows()):
        assert parsed[0] == row[0]
        assert [float(v) for v in parsed[1:5]] == row[1:5]
        assert int(parsed[5]) == row[5]
    with open(path, 'rb') as fp:
        assert fp.readline().endswith(b'\r\n')


def test_averages_terminal(store, snapshot_factory):
    _fill_all(store, snapshot_factory, 2)
    table = averages_table(store, START, _day(1), MetricRegistry())
    colored = render_terminal(table, color=True)
    plain = render_terminal(table, color=False)
    assert '\x1b[' in colored
    assert '\x1b[' not in plain
    assert 'epsilon=0.5' in plain
    assert 'blocks-by-builder' in plain


def test_jsd_table_constant(store, snapshot_factory):
    registry = _fill_all(store, snapshot_factory, 4)
    table = jsd_table(store, _day(3), registry)
    rows = table.rows()
    assert [r[0] for r in rows] == [
        m.value for m in registry.distributionMetrics()]
    assert all(r[4] == '0.0000000' for r in rows)


def test_jsd_table_step_change(store, snapshot_factory):
    registry = _fill_all(store, snapshot_factory, 6, changed=B)
    rows = jsd_table(store, _day(5), registry).rows()
    nonzero = [r[0] for r in rows if r[4] != '0.0000000']
    assert nonzero == ['blocks-by-builder']
    value = [r[4] for r in rows if r[0] == 'blocks-by-builder'][0]
    assert len(value.split('.')[1]) == 7


def test_jsd_table_insufficient(store, snapshot_factory):
    registry = _fill_all(store, snapshot_factory, 1)
    with pytest.raises(InsufficientDataError):
        jsd_table(store, START, registry)


def test_lorenz_csv(store, snapshot_factory, tmp_path):
    store.write(snapshot_factory.make(START, B, {'a': 1, 'b': 1}))
    curve = lorenz_curve(store, START, B)
    path = emit(curve, 'csv', str(tmp_path / 'lorenz.csv'))
    rows = _reparse(path)
    assert rows[0] == ['population', 'resource']
    assert [(float(x), float(y)) for x, y in rows[1:]] == [
        (0, 0), (0.5, 0.5), (1, 1)]


def test_indices_headline(store, snapshot_factory):
    P = MetricId.STAKED_BY_POOL
    store.write(snapshot_factory.make(START, B, {'a': 3, 'b': 1}))
    store.write(snapshot_factory.make(START, P, {'a': 3, 'b': 1}))
    table = indices_table(store, START, [B, P])
    header = table.header()
    assert header[:3] == ['metric', 'headline', 'gini']
    assert [r[1] for r in table.rows()] == ['hhi-rescaled', 'gini']
    assert table.headlineValue(B) == pytest.approx(0.625)
    assert table.headlineValue(P) == pytest.approx(0.25)


def _series_ids(path):
    tree = ET.parse(path)
    return set(el.get('id') for el in tree.iter()
               if (el.get('id') or '').startswith('series-'))


def test_master_svg(store, snapshot_factory, tmp_path):
    registry = _fill_all(store, snapshot_factory, 5, changed=B)
    chart = master_chart(store, list(IndexFamily), registry, START, _day(4))
    first = emit(chart, 'svg', str(tmp_path / 'master1.svg'))
    second = emit(chart, 'svg', str(tmp_path / 'master2.svg'))
    assert _series_ids(first) == set(
        'series-%s' % f.value for f in IndexFamily)
    with open(first, 'rb') as fp1, open(second, 'rb') as fp2:
        assert fp1.read() == fp2.read()


def test_master_csv(store, snapshot_factory):
    registry = _fill_all(store, snapshot_factory, 5, changed=B)
    chart = master_chart(store, [IndexFamily.GINI], registry, START, _day(4),
                         exclusions=[MetricId.USEROPS_BY_BUNDLER,
                                     MetricId.WALLETS_BY_DEPLOYER])
    rows = list(csv.reader(io.StringIO(render_csv(chart))))
    assert rows[0][:3] == ['date', 'family', 'value']
    assert len(rows) == 6
    assert all(r[6] == '10' for r in rows[1:])


def test_series_svg(store, snapshot_factory, tmp_path):
    _fill_all(store, snapshot_factory, 3)
    chart = index_series_chart(store, 'gini', START, _day(2), [B, R],
                               rolling=2)
    path = emit(chart, 'svg', str(tmp_path / 'series.svg'))
    assert _series_ids(path) == {'series-blocks-by-builder',
                                 'series-blocks-by-relay'}


def test_tables_are_not_charts(store, snapshot_factory, tmp_path):
    store.write(snapshot_factory.make(START, B, {'a': 1, 'b': 3}))
    table = averages_table(store, START, START, MetricRegistry())
    with pytest.raises(InvalidArgumentError):
        emit(table, 'svg', str(tmp_path / 'averages.svg'))
    with pytest.raises(InvalidArgumentError):
        emit(table, 'pdf', str(tmp_path / 'averages.pdf'))


def test_unwritable_path(store, snapshot_factory, tmp_path):
    store.write(snapshot_factory.make(START, B, {'a': 1, 'b': 3}))
    table = averages_table(store, START, START, MetricRegistry())
    path = os.path.join(str(tmp_path), 'missing-dir', 'averages.csv')
    with pytest.raises(EmitError):
        emit(table, 'csv', path)


def test_average_families_order():
    assert [f.value for f in AVERAGE_FAMILIES] == [
        'gini', 'hhi-rescaled', 'shannon-normalized', 'atkinson']


def test_jsd_table_metrics(store, snapshot_factory):
    registry = _fill_all(store, snapshot_factory, 6, changed=B)
    rows = jsd_table(store, _day(5), registry, metrics=['blocks-by-builder',
                                                        R]).rows()
    assert [r[0] for r in rows] == ['blocks-by-builder', 'blocks-by-relay']
    with pytest.raises(InvalidArgumentError):
        jsd_table(store, _day(5), registry, metrics=['blocks-by-nobody'])


def test_lorenz_svg_vertices(store, snapshot_factory, tmp_path):
    store.write(snapshot_factory.make(START, B, {'a': 1, 'b': 2, 'c': 5}))
    curve = lorenz_curve(store, START, B)
    path = emit(curve, 'svg', str(tmp_path / 'lorenz.svg'))
    group = [el for el in ET.parse(path).iter()
             if el.get('id') == 'series-lorenz'][0]
    lines = [el for el in group.iter() if el.tag.endswith('path')]
    assert len(lines) == 1
    # One straight segment between consecutive points, no steps.
    assert len(re.findall('[ML]', lines[0].get('d'))) == len(curve.points)
    assert len(curve.points) == 4


def test_index_stats(store, snapshot_factory):
    snapshot_factory.fill(store, B, START, [{'a': 3, 'b': 1}] * 90)
    snapshot_factory.fill(store, R, START,
                          [{'a': 1, 'b': 1}, {'a': 1, 'b': 0}] * 45)
    table = index_stats_table(store, START, _day(89), MetricRegistry(),
                              families=[IndexFamily.GINI, 'hhi-rescaled'])
    assert table.header() == ['metric', 'family', 'days', 'min', 'max',
                              'median', 'mean', 'std']
    rows = dict(((r[0], r[1]), r[2:]) for r in table.rows())
    assert sorted(rows) == [
        ('blocks-by-builder', 'gini'), ('blocks-by-builder', 'hhi-rescaled'),
        ('blocks-by-relay', 'gini'), ('blocks-by-relay', 'hhi-rescaled')]

    days, lo, hi, median, mean, std = rows[('blocks-by-builder',
                                            'hhi-rescaled')]
    assert days == 90
    assert lo == hi == median == mean == pytest.approx(0.625)
    assert std == pytest.approx(0.0, abs=1e-12)

    days, lo, hi, median, mean, std = rows[('blocks-by-relay', 'hhi-rescaled')]
    assert (lo, hi) == pytest.approx((0.5, 1.0))
    assert median == pytest.approx(0.75)
    assert mean == pytest.approx(0.75)
    assert std == pytest.approx(0.25)

    days, lo, hi, median, mean, std = rows[('blocks-by-relay', 'gini')]
    assert (lo, hi, median, std) == pytest.approx((0.0, 0.5, 0.25, 0.25))


def test_index_stats_partial_coverage(store, snapshot_factory):
    snapshot_factory.fill(store, B, START, [{'a': 3, 'b': 1}] * 3)
    table = index_stats_table(store, START, _day(9), MetricRegistry(),
                              families=[IndexFamily.GINI])
    row = table.rows()[0]
    assert row[:3] == ['blocks-by-builder', 'gini', 3]
    assert row[3:] == pytest.approx([0.25, 0.25, 0.25, 0.25, 0.0])
    with pytest.raises(InsufficientDataError):
        index_stats_table(store, _day(10), _day(12), MetricRegistry())


def test_scalars_table(store, snapshot_factory):
    S = MetricId.STAKED_SUPPLY_PERCENTAGE
    INF = MetricId.EFFECTIVE_INFLATION_RATE
    store.write(snapshot_factory.make(START, S, 0.2))
    store.write(snapshot_factory.make(_day(2), S, 0.25))
    store.write(snapshot_factory.make(_day(2), INF, -0.009))
    store.write(snapshot_factory.make(START, B, {'a': 3, 'b': 1}))
    registry = MetricRegistry()
    table = scalars_table(store, START, _day(2), registry)
    assert table.header() == ['date', 'metric', 'title', 'value']
    assert [(r[0], r[1], r[3]) for r in table.rows()] == [
        ('2023-05-23', 'staked-supply-percentage', 0.2),
        ('2023-05-25', 'effective-inflation-rate', -0.009),
        ('2023-05-25', 'staked-supply-percentage', 0.25)]
    assert table.rows()[0][2] == registry.title(S)

    rows = list(csv.reader(io.StringIO(render_csv(table))))
    assert float(rows[2][3]) == -0.009
    with pytest.raises(InsufficientDataError):
        scalars_table(store, _day(3), _day(4), registry)
