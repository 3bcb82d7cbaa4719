import os.path
import logging
import argparse
import coloredlogs


logger = logging.getLogger(__name__)


class ExecutionContext:
    def __init__(self, args, config, cfg, store):
        self.args = args
        self.config = config
        self.cfg = cfg
        self.store = store
        self.artifact = None
        self.ingest_report = None
        self.paths = None
        self.scalars = None

    @property
    def registry(self):
        return self.cfg.registry


def _add_store_args(parser):
    parser.add_argument(
        '--store',
        help="Snapshot store to use: a directory, or a 'jsonl://' or "
             "'memory://' URI.")


def _add_output_args(parser, formats=('csv', 'svg', 'terminal')):
    parser.add_argument(
        '-o', '--output-dir',
        help="Directory where output files are written.")
    parser.add_argument(
        '--format',
        choices=formats,
        help="Output format.")


def _add_analysis_args(parser):
    parser.add_argument(
        '--range',
        help="Date range, as 'START..END'. Defaults to the latest run of "
             "consecutive stored days.")
    parser.add_argument(
        '--epsilon',
        type=float,
        help="Inequality aversion of the Atkinson index.")


def _setup_ingest(parser):
    def _run(ctx):
        from .commands.ingest import ingest
        return ingest(ctx)

    _add_store_args(parser)
    parser.add_argument(
        '--date',
        help="The day to ingest. Defaults to today (UTC).")
    parser.add_argument(
        '--mode',
        choices=['live', 'fixture'],
        help="Fetch from the live sources or from recorded fixtures.")
    parser.add_argument(
        '--fixtures',
        help="Fixture directory, laid out as <source-id>/<date>.json.")
    parser.add_argument(
        '-s', '--source',
        action='append',
        help="Only ingest the given source(s).")
    parser.add_argument(
        '--overwrite',
        action='store_true',
        help="Replace snapshots already stored for that day.")
    parser.set_defaults(func=_run)


def _setup_indices(parser):
    def _run(ctx):
        from .commands.analyze import show_indices
        return show_indices(ctx)

    def _check(args):
        charted = args.range or args.rolling or args.family
        if args.format == 'svg' and not charted:
            parser.error("--format svg needs --range, --rolling or --family, "
                         "a single day's indices are a table.")

    _add_store_args(parser)
    _add_output_args(parser)
    _add_analysis_args(parser)
    parser.add_argument(
        '--date',
        help="The day to compute indices for. Defaults to the latest "
             "stored day.")
    parser.add_argument(
        '-m', '--metric',
        action='append',
        help="Only the given metric(s).")
    parser.add_argument(
        '--family',
        action='append',
        help="Index family to chart over a range: gini, hhi-rescaled, "
             "shannon-normalized, atkinson.")
    parser.add_argument(
        '--rolling',
        type=int,
        help="Chart a trailing mean over this many days.")
    parser.set_defaults(func=_run, check=_check)


def _setup_jsd(parser):
    def _run(ctx):
        from .commands.analyze import show_jsd
        return show_jsd(ctx)

    _add_store_args(parser)
    _add_output_args(parser, formats=('csv', 'terminal'))
    parser.add_argument(
        '--date',
        help="End day of the 1, 30, 60 and 90 day intervals. Defaults "
             "to the latest stored day.")
    parser.add_argument(
        '--range',
        help="Compare the first and last stored days within 'START..END' "
             "instead.")
    parser.add_argument(
        '-m', '--metric',
        action='append',
        help="Only the given metric(s).")
    parser.set_defaults(func=_run)


def _setup_master(parser):
    def _run(ctx):
        from .commands.analyze import show_master
        return show_master(ctx)

    _add_store_args(parser)
    _add_output_args(parser)
    _add_analysis_args(parser)
    parser.add_argument(
        '--family',
        action='append',
        help="Index family (repeatable). Defaults to all four.")
    parser.add_argument(
        '-x', '--exclude',
        action='append',
        help="Leave the given metric(s) out of the master index.")
    parser.add_argument(
        '--weights',
        help="File with metric weight overrides.")
    parser.add_argument(
        '--subsample',
        type=int,
        help="Only keep this many evenly spaced days.")
    parser.set_defaults(func=_run)


def _setup_report(parser):
    def _run(ctx):
        from .commands.report import make_report
        return make_report(ctx)

    _add_store_args(parser)
    _add_analysis_args(parser)
    parser.add_argument(
        '-o', '--output-dir',
        help="Directory where report files are written.")
    parser.add_argument(
        '--format',
        choices=['files', 'terminal'],
        help="Write CSV and SVG files, or print the tables.")
    parser.add_argument(
        '--family',
        action='append',
        help="Index family (repeatable). Defaults to all four.")
    parser.add_argument(
        '-x', '--exclude',
        action='append',
        help="Leave the given metric(s) out of the master index.")
    parser.add_argument(
        '--weights',
        help="File with metric weight overrides.")
    parser.set_defaults(func=_run)


def _setup_lorenz(parser):
    def _run(ctx):
        from .commands.analyze import show_lorenz
        return show_lorenz(ctx)

    _add_store_args(parser)
    _add_output_args(parser)
    parser.add_argument(
        '-m', '--metric',
        action='append',
        required=True,
        help="The metric to draw.")
    parser.add_argument(
        '--date',
        help="The day to draw. Defaults to the latest stored day.")
    parser.set_defaults(func=_run)


def _setup_synth(parser):
    def _run(ctx):
        from .commands.synth import make_corpus
        return make_corpus(ctx)

    parser.add_argument(
        '-o', '--output-dir',
        required=True,
        help="Directory where the fixture corpus is written.")
    parser.add_argument(
        '--start',
        default='2023-05-23',
        help="First day of the corpus.")
    parser.add_argument(
        '--days',
        type=int,
        default=90,
        help="Number of days to generate.")
    parser.add_argument(
        '--seed',
        type=int,
        default=0,
        help="Random seed.")
    parser.add_argument(
        '--shift-day',
        type=int,
        help="Day index from which the leading builder, relay and rollup "
             "lose their share.")
    parser.add_argument(
        '-s', '--source',
        action='append',
        help="Only generate fixtures for the given source(s).")
    parser.set_defaults(func=_run)


commands = {
    'ingest': {
        'help': "Fetch and store one day of snapshots.",
        'setup': _setup_ingest,
    },
    'indices': {
        'help': "Compute inequality indices for stored snapshots.",
        'setup': _setup_indices,
    },
    'jsd': {
        'help': "Jensen-Shannon divergence between stored days.",
        'setup': _setup_jsd,
    },
    'master': {
        'help': "Compute the master index series.",
        'setup': _setup_master,
    },
    'report': {
        'help': "Write the averages table, JSD table and charts.",
        'setup': _setup_report,
    },
    'lorenz': {
        'help': "Compute the Lorenz curve of a stored snapshot.",
        'setup': _setup_lorenz,
    },
    'synth': {
        'help': "Generate a synthetic fixture corpus.",
        'setup': _setup_synth,
    },
}


has_debug_logging = False
pre_exec_hook = None
post_exec_hook = None


def _unsafe_main(args=None):
    parser = argparse.ArgumentParser('concentrometer')
    parser.add_argument(
        '-v', '--verbose',
        action='store_true',
        help="Print debug messages.")
    parser.add_argument(
        '--no-color',
        action='store_true',
        help="Don't use pretty colors.")
    parser.add_argument(
        '-c', '--config',
        help="Configuration file to load.")

    subparsers = parser.add_subparsers()
    for cn, cd in commands.items():
        cp = subparsers.add_parser(cn, help=cd.get('help'))
        cd['setup'](cp)

    args = parser.parse_args(args)
    if getattr(args, 'check', None):
        args.check(args)

    global has_debug_logging
    has_debug_logging = args.verbose

    if not args.no_color:
        coloredlogs.install()

    loglvl = logging.DEBUG if args.verbose else logging.INFO
    root_logger = logging.getLogger()
    root_logger.setLevel(loglvl)
    for handler in root_logger.handlers:
        handler.setLevel(loglvl)

    # These are very chatty in debug mode.
    for name, lvl in (('urllib3', logging.INFO),
                      ('matplotlib', logging.WARNING)):
        logging.getLogger(name).setLevel(lvl)

    if not getattr(args, 'func', None):
        parser.print_help()
        return 2

    logger.debug("Loading configuration.")
    from .config import load_config, CliConfig
    config = load_config(args.config)
    cfg_dir = os.path.dirname(args.config) if args.config else None
    cfg = CliConfig(args, config, cfg_dir)

    logger.debug("Initializing snapshot store.")
    from .store.base import load_store
    store = load_store(config, cfg_dir)

    ctx = ExecutionContext(args, config, cfg, store)

    if pre_exec_hook:
        pre_exec_hook(ctx)

    res = args.func(ctx)

    if post_exec_hook:
        post_exec_hook(ctx, res)

    if isinstance(res, int):
        return res
    return 0


def main():
    try:
        res = _unsafe_main()
    except Exception as ex:
        if has_debug_logging:
            raise
        logger.error(ex)
        res = 1

    import sys
    sys.exit(res)


if __name__ == '__main__':
    main()
