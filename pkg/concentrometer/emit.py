import io
import csv
import sys
import math
import logging
import matplotlib
matplotlib.use('Agg')
import matplotlib.dates  # NOQA
import matplotlib.pyplot as plt  # NOQA
from humanfriendly.tables import format_pretty_table  # NOQA
from humanfriendly.terminal import ansi_wrap  # NOQA
from .model import ConcentrometerError, InvalidArgumentError  # NOQA
from .report import heat_band  # NOQA


logger = logging.getLogger(__name__)


FORMATS = ('csv', 'svg', 'terminal')

# 256-color codes, green to red.
HEAT_COLORS = (46, 154, 226, 208, 196)

SVG_RC = {
    'svg.hashsalt': 'concentrometer',
    'svg.fonttype': 'none',
    'path.simplify': False,
}


class EmitError(ConcentrometerError):
    pass


def format_cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit(artifact, fmt, path=None, color=True):
    """ Writes an artifact to `path` as CSV or SVG, or to `path` (or
        standard output) as a terminal table.
    """
    if fmt not in FORMATS:
        raise InvalidArgumentError("Unknown output format: %s" % fmt)
    if fmt != 'terminal' and not path:
        raise InvalidArgumentError("Format '%s' needs an output path." % fmt)

    try:
        if fmt == 'csv':
            _emit_csv(artifact, path)
        elif fmt == 'svg':
            _emit_svg(artifact, path)
        else:
            _emit_terminal(artifact, path, color)
    except OSError as ex:
        raise EmitError("Can't write %s output to '%s': %s" % (fmt, path, ex))
    if path:
        logger.info("Wrote %s to: %s" % (fmt, path))
    return path


def render_csv(artifact):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\r\n')
    writer.writerow(artifact.header())
    for row in artifact.rows():
        writer.writerow([format_cell(v) for v in row])
    return out.getvalue()


def _emit_csv(artifact, path):
    with open(path, 'w', encoding='utf8', newline='') as fp:
        fp.write(render_csv(artifact))


def render_terminal(artifact, color=True):
    heat = set(getattr(artifact, 'heatColumns', lambda: [])())
    rows = []
    for row in artifact.rows():
        cells = []
        for i, v in enumerate(row):
            text = ('%.4f' % v) if isinstance(v, float) else format_cell(v)
            if color and i in heat and v is not None:
                text = ansi_wrap(text, color=HEAT_COLORS[heat_band(v)])
            cells.append(text)
        rows.append(cells)
    text = format_pretty_table(rows, artifact.header())
    footnote = getattr(artifact, 'footnote', None)
    if footnote:
        text += '\n' + footnote
    return text + '\n'


def _emit_terminal(artifact, path, color):
    text = render_terminal(artifact, color=color)
    if path:
        with open(path, 'w', encoding='utf8') as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _emit_svg(artifact, path):
    """ Draws chart artifacts with matplotlib. Each line is written as a
        `<path>` inside a `<g id="series-...">` group, or `equality` for
        the diagonal of a Lorenz chart.
    """
    if artifact.KIND == 'table':
        raise InvalidArgumentError(
            "Tables can't be emitted as SVG, use 'csv' or 'terminal'.")

    with matplotlib.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(8, 4.5))
        try:
            if artifact.KIND == 'lorenz':
                _plot_lorenz(ax, artifact)
            else:
                _plot_lines(ax, artifact)
            fig.tight_layout()
            fig.savefig(path, format='svg',
                        metadata={'Date': None, 'Creator': None})
        finally:
            plt.close(fig)


def _plot_lorenz(ax, artifact):
    xs = [x for x, _ in artifact.points]
    ys = [y for _, y in artifact.points]
    equality, = ax.plot([0, 1], [0, 1], linestyle='--', color='grey',
                        label='equality')
    equality.set_gid('equality')
    curve, = ax.plot(xs, ys, label='lorenz')
    curve.set_gid('series-lorenz')
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("cumulative share of population")
    ax.set_ylabel("cumulative share of resource")
    ax.set_title(artifact.title)
    ax.legend(loc='upper left')


def _plot_lines(ax, artifact):
    for gid, label, points in artifact.chartLines():
        days = [d for d, _ in points]
        values = [math.nan if v is None else v for _, v in points]
        line, = ax.plot(days, values, marker='.', label=label)
        line.set_gid(gid)

    locator = matplotlib.dates.AutoDateLocator()
    ax.xaxis.set_major_locator(locator)
    ax.xaxis.set_major_formatter(matplotlib.dates.ConciseDateFormatter(locator))
    ax.set_xlabel("date")
    ax.set_ylabel(artifact.ylabel)
    ax.set_title(artifact.title)
    ax.legend(loc='best', fontsize='small')
