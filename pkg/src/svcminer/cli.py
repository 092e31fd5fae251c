"""Command line interface: the run, stats and fixture subcommands.

Exit codes: 0 success, 1 usage error, 2 input format or I/O error,
3 empty statistical universe.
"""

import argparse
import logging
import sys
from pathlib import Path

from svcminer.errors import EmptyUniverseError, FormatError
from svcminer.extract import ExtractionConfig
from svcminer.fixtures import (
    FixtureSpec,
    generate_fixture,
    generate_malformed_fixture,
)
from svcminer.pipeline import PipelineConfig, run_pipeline, stage_stats
from svcminer.rank import RankingParams
from svcminer.stats import Measure

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_EMPTY = 3

log = logging.getLogger("svcminer")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; we reserve 2 for bad input."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_RUN_DEFAULTS = {
    "labels1": "obj,dobj",
    "labels2": "obj,dobj",
    "verb_pos": "VERB",
    "noun_pos": "NOUN",
    "content_pos": "NOUN,VERB,ADJ,ADV",
    "x": "local-mi",
    "y": "oe",
    "alpha": 1.0,
    "beta": 1.0,
    "delta": 1.0,
    "min_freq": 2,
    "out": "svc-out",
    "jobs": 1,
    "strict": False,
    "dump_tuples": False,
    "dump_scores": False,
}

_BOOL_KEYS = ("strict", "dump_tuples", "dump_scores")


def _add_input_options(sub):
    sub.add_argument("--l1", required=True, help="language code of side 1")
    sub.add_argument("--l2", required=True, help="language code of side 2")
    sub.add_argument("--conllu1", required=True,
                     help="CoNLL-U file for the L1 side")
    sub.add_argument("--conllu2", required=True,
                     help="CoNLL-U file for the L2 side")
    sub.add_argument("--align", required=True,
                     help="Pharaoh alignment file (0-based i-j pairs)")
    sub.add_argument("--config", help="key=value defaults file; command line "
                                      "flags override it")
    sub.add_argument("--labels1", help="comma-separated L1 object labels")
    sub.add_argument("--labels2", help="comma-separated L2 object labels")
    sub.add_argument("--verb-pos", dest="verb_pos",
                     help="comma-separated verb POS tags")
    sub.add_argument("--noun-pos", dest="noun_pos",
                     help="comma-separated noun POS tags")
    sub.add_argument("--content-pos", dest="content_pos",
                     help="comma-separated content-word POS tags")
    sub.add_argument("--strict", action="store_const", const=True,
                     default=None, help="abort on the first input defect")
    sub.add_argument("--jobs", type=int, help="extraction worker processes")


def _add_ranking_options(sub):
    measures = [m.value for m in Measure]
    sub.add_argument("--x", choices=measures,
                     help="interlingual association measure")
    sub.add_argument("--y", choices=measures,
                     help="intralingual association measure")
    sub.add_argument("--alpha", type=float, help="weight of the L1 score")
    sub.add_argument("--beta", type=float, help="weight of the L2 score")
    sub.add_argument("--delta", type=float, help="damping of the q ratio")
    sub.add_argument("--min-freq", dest="min_freq", type=int,
                     help="minimum tuple frequency")
    sub.add_argument("--out", help="output directory")
    sub.add_argument("--dump-tuples", dest="dump_tuples",
                     action="store_const", const=True, default=None,
                     help="also write the per-instance tuple TSV")
    sub.add_argument("--dump-scores", dest="dump_scores",
                     action="store_const", const=True, default=None,
                     help="also write the three score TSVs")


def build_parser():
    parser = _Parser(prog="svc-miner", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full mining pipeline")
    _add_input_options(run)
    _add_ranking_options(run)

    stats = sub.add_parser("stats", help="report per-stage counts only")
    _add_input_options(stats)
    _add_ranking_options(stats)  # accepted for flag parity with run

    fixture = sub.add_parser("fixture",
                             help="generate a deterministic test corpus")
    fixture.add_argument("--seed", type=int, default=42)
    fixture.add_argument("--pairs", type=int, default=200)
    fixture.add_argument("--out", required=True)
    fixture.add_argument("--malformed", action="store_true",
                         help="seed ten input defects instead of the "
                              "expected-ranking file")
    return parser


def _parse_config_file(path):
    values = {}
    for line_no, raw in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"expected key=value, found {line!r}",
                              line_no, str(path))
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _setting(args, file_values, key):
    """Command line beats config file beats built-in default."""
    cli_value = getattr(args, key, None)
    if cli_value is not None:
        return cli_value
    if key in file_values:
        raw = file_values[key]
        default = _RUN_DEFAULTS[key]
        if key in _BOOL_KEYS:
            return raw.lower() in ("1", "true", "yes", "on")
        return type(default)(raw)
    return _RUN_DEFAULTS[key]


def _label_set(value):
    labels = frozenset(part.strip() for part in value.split(",")
                       if part.strip())
    if not labels:
        raise ValueError(f"empty label set {value!r}")
    return labels


def _pipeline_config(args):
    file_values = _parse_config_file(args.config) if args.config else {}
    unknown = set(file_values) - set(_RUN_DEFAULTS)
    if unknown:
        raise ValueError(
            f"unknown config keys: {', '.join(sorted(unknown))}")
    get = lambda key: _setting(args, file_values, key)

    extraction = ExtractionConfig(
        l1_object_labels=_label_set(get("labels1")),
        l2_object_labels=_label_set(get("labels2")),
        verb_pos=_label_set(get("verb_pos")),
        noun_pos=_label_set(get("noun_pos")),
        content_pos=_label_set(get("content_pos")),
    )
    ranking = RankingParams(
        x=Measure.from_string(get("x")),
        y=Measure.from_string(get("y")),
        alpha=get("alpha"),
        beta=get("beta"),
        delta=get("delta"),
        min_freq=get("min_freq"),
    )
    return PipelineConfig(
        l1=args.l1, l2=args.l2, conllu1=args.conllu1, conllu2=args.conllu2,
        align=args.align, out_dir=get("out"), extraction=extraction,
        ranking=ranking, strict=get("strict"), dump_tuples=get("dump_tuples"),
        dump_scores=get("dump_scores"), jobs=get("jobs"))


def _cmd_run(args):
    config = _pipeline_config(args)
    result = run_pipeline(config)
    for path in result.output_files:
        log.info("wrote %s", path)
    return EXIT_OK


def _cmd_stats(args):
    config = _pipeline_config(args)
    stats, _ = stage_stats(config)
    for name, value in stats.as_rows():
        print(f"{name}\t{value}")
    return EXIT_OK


def _cmd_fixture(args):
    if args.malformed:
        paths, manifest = generate_malformed_fixture(args.out, seed=args.seed,
                                                     n_pairs=args.pairs)
        log.info("seeded %d defects", len(manifest))
    else:
        _, _, paths = generate_fixture(
            FixtureSpec(seed=args.seed, n_pairs=args.pairs), args.out)
    for path in paths.values():
        log.info("wrote %s", path)
    return EXIT_OK


_COMMANDS = {"run": _cmd_run, "stats": _cmd_stats, "fixture": _cmd_fixture}


def main(argv=None):
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        log.error("input format: %s", exc)
        return EXIT_FORMAT
    except EmptyUniverseError as exc:
        log.error("empty universe: %s", exc)
        return EXIT_EMPTY
    except OSError as exc:
        log.error("i/o: %s", exc)
        return EXIT_FORMAT
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
