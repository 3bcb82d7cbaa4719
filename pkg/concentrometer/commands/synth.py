import logging
from ..config import parse_date
from ..sources.base import load_source_specs
from ..sources.synthetic import write_synthetic_corpus


logger = logging.getLogger(__name__)


def make_corpus(ctx):
    args = ctx.args
    specs = load_source_specs(ctx.config, args.source)
    start = parse_date(args.start)
    paths = write_synthetic_corpus(
        specs, start, args.days, ctx.cfg.output_dir,
        seed=args.seed, shift_day=args.shift_day)
    ctx.paths = paths
    return 0
