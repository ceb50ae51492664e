import argparse
import logging
import sys

from centrality import Measure, compute_measure
from clustering import clcc_values
from distributions import alpha_sweep, default_histogram_edges, fit_exp_decay, histogram
from dynamics import DAY, activity_profile, combination_table, partition_windows, window_activity_counts
from errors import MsnError
from io_msn import get_log_level, get_thread_count
from network import DedupPolicy, build_network, layer_sizes, normalize_out_weights
from neighbourhoods import Variant, multi_layered_neighbourhood, neighbourhood
from reader import parse_edge_file, parse_instant, parse_roster_file, parse_values_file
from util.report_writer import ReportWriter, build_measure_report

# =========== CONFIGURATION ===========

WINDOW_COUNT = 5                 # Number of time windows
WINDOW_LENGTH_DAYS = 90          # Length of one window, in days
DEDUP_POLICY = "sum"             # How repeated (source, target, layer) rows merge
DEFAULT_VARIANT = "any"          # Multi-layered neighbourhood used by clcc / cdc / sweep / windows
HISTOGRAM_EDGES = default_histogram_edges()
LOG_FORMAT = "[%(levelname)s] %(message)s"

# =====================================

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

METRICS = {
    "dc": Measure.DC,
    "idc": Measure.IDC,
    "odc": Measure.ODC,
    "clcc": None,
    "cdc": Measure.CDC,
    "cdc-in": Measure.CDC_IN,
    "cdc-out": Measure.CDC_OUT,
}
for _version in (1, 2, 3):
    METRICS[f"mdc{_version}"] = Measure(f"MDC{_version}")
    METRICS[f"mdc{_version}-in"] = Measure(f"MDC{_version}In")
    METRICS[f"mdc{_version}-out"] = Measure(f"MDC{_version}Out")

logger = logging.getLogger("mlsn")


# ----------------------------------------------------------------------
#                           ARGUMENT PARSING
# ----------------------------------------------------------------------

def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def instant(text):
    try:
        return parse_instant(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mlsn", description="Multi-layered social network analysis."
    )
    parser.add_argument("--verbose", action="store_true", help="log progress at INFO level")
    parser.add_argument("--debug", action="store_true", help="log progress at DEBUG level")

    edges = argparse.ArgumentParser(add_help=False)
    edges.add_argument("--edges", required=True, metavar="F", help="edge-list CSV")
    edges.add_argument("--dedup", choices=[p.value for p in DedupPolicy], default=DEDUP_POLICY)
    edges.add_argument("--no-header", action="store_true", help="edge file has no header row")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    variant = argparse.ArgumentParser(add_help=False)
    variant.add_argument("--variant", choices=[v.value for v in Variant], default=DEFAULT_VARIANT)

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    cmd = commands.add_parser("neighbourhood", parents=[edges, output, variant],
                              help="multi-layered or per-layer neighbourhood of a node")
    cmd.add_argument("--node", required=True)
    cmd.add_argument("--alpha", type=positive_int)
    cmd.add_argument("--layer", help="per-layer neighbourhood N(x, l) instead")

    cmd = commands.add_parser("measure", parents=[edges, output, variant], help="one measure for every node")
    cmd.add_argument("--metric", required=True, choices=list(METRICS))
    cmd.add_argument("--alpha", type=positive_int)
    cmd.add_argument("--layer")
    cmd.add_argument("--normalize", action="store_true", help="normalize outgoing weights first")
    cmd.add_argument("--weighted", action="store_true", help="weighted degree for dc / idc / odc")
    cmd.add_argument("--format", choices=("csv", "json"), default="csv")

    cmd = commands.add_parser("sweep", parents=[edges, output, variant], help="per-alpha node counts")
    cmd.add_argument("--max-alpha", required=True, type=positive_int)

    cmd = commands.add_parser("windows", parents=[edges, output, variant], help="window-combination counts")
    cmd.add_argument("--start", type=instant, help="epoch seconds or ISO-8601 (default: earliest event)")
    cmd.add_argument("--length", type=positive_float, default=WINDOW_LENGTH_DAYS, metavar="DAYS")
    cmd.add_argument("--count", type=positive_int, default=WINDOW_COUNT)
    cmd.add_argument("--alpha", type=positive_int, nargs="+", required=True)
    cmd.add_argument("--roster", metavar="FILE", help="extra node ids, one per line")
    cmd.add_argument("--per-window", action="store_true", help="active nodes per window instead of combinations")

    cmd = commands.add_parser("hist", parents=[output], help="histogram with cumulative percentages")
    cmd.add_argument("--values", required=True, metavar="F")
    cmd.add_argument("--edges-list", type=float, nargs="+", metavar="E")
    cmd.add_argument("--format", choices=("csv", "json"), default="json")

    cmd = commands.add_parser("fit", parents=[output], help="exponential decay fit of ranked values")
    cmd.add_argument("--values", required=True, metavar="F")
    cmd.add_argument("--method", choices=("loglinear", "nonlinear"), default="loglinear")

    commands.add_parser("layers", parents=[edges, output], help="number of relations per layer")
    return parser


# ----------------------------------------------------------------------
#                           COMMANDS
# ----------------------------------------------------------------------

def load_network(args):
    events = parse_edge_file(args.edges, has_header=not args.no_header)
    net = build_network(events, args.dedup)
    logger.info("Network: %d nodes, %d layers, %d edges", net.m, len(net.layers), net.edge_count)
    return net


def run_neighbourhood(args, parser):
    if args.layer is None and args.alpha is None:
        parser.error("neighbourhood requires --alpha or --layer")
    net = load_network(args)
    if args.layer is not None:
        members = neighbourhood(net, args.node, args.layer)
        return ReportWriter.nodeset_json(args.node, members, layer=args.layer)
    members = multi_layered_neighbourhood(net, args.node, args.alpha, args.variant)
    return ReportWriter.nodeset_json(args.node, members, alpha=args.alpha, variant=args.variant)


def run_measure(args, parser):
    measure = METRICS[args.metric]
    needs_alpha = measure is None or measure.needs_alpha
    if needs_alpha and args.alpha is None:
        parser.error(f"--metric {args.metric} requires --alpha")
    degree_family = measure is not None and measure.family == "DC"
    if args.layer is not None and not degree_family:
        parser.error(f"--layer applies to dc / idc / odc only, not {args.metric}")
    if args.weighted and not degree_family:
        parser.error(f"--weighted applies to dc / idc / odc only, not {args.metric}")

    net = load_network(args)
    if args.normalize:
        net = normalize_out_weights(net)

    if measure is None:
        rows = zip(net.nodes, clcc_values(net, args.alpha, args.variant).tolist())
        report = build_measure_report("CLCC", args.alpha, rows)
    else:
        results = compute_measure(net, measure, args.alpha, args.layer, args.variant, args.weighted)
        alpha = args.alpha if needs_alpha else None
        report = build_measure_report(measure.value, alpha, ((r.node, r.value) for r in results))

    if args.format == "json":
        return ReportWriter.measure_json(report)
    return ReportWriter.measure_csv(report)


def run_sweep(args, parser):
    net = load_network(args)
    return ReportWriter.sweep_csv(alpha_sweep(net, args.max_alpha, args.variant))


def run_windows(args, parser):
    events = parse_edge_file(args.edges, has_header=not args.no_header)
    start = args.start
    if start is None:
        stamps = [event.timestamp for event in events if event.timestamp is not None]
        start = min(stamps) if stamps else 0.0
        logger.info("Windows start at the earliest event, %s", start)

    roster = parse_roster_file(args.roster) if args.roster else ()
    part = partition_windows(events, start, args.length * DAY, args.count, args.dedup)
    if args.per_window:
        counts = [window_activity_counts(activity_profile(part, alpha, args.variant)) for alpha in args.alpha]
        return ReportWriter.window_activity_csv(part, args.alpha, counts)
    table = combination_table(part, args.alpha, args.variant, roster)
    return ReportWriter.windows_csv(table)


def run_hist(args, parser):
    values = parse_values_file(args.values)
    hist = histogram(values, args.edges_list or HISTOGRAM_EDGES)
    if args.format == "csv":
        return ReportWriter.histogram_csv(hist)
    return ReportWriter.histogram_json(hist)


def run_fit(args, parser):
    values = parse_values_file(args.values)
    return ReportWriter.fit_json(fit_exp_decay(values, args.method))


def run_layers(args, parser):
    return ReportWriter.layers_csv(layer_sizes(load_network(args)))


COMMANDS = {
    "neighbourhood": run_neighbourhood,
    "measure": run_measure,
    "sweep": run_sweep,
    "windows": run_windows,
    "hist": run_hist,
    "fit": run_fit,
    "layers": run_layers,
}


# ----------------------------------------------------------------------
#                           ENTRY POINTS
# ----------------------------------------------------------------------

def run_cli(argv=None) -> int:
    """Run one command; returns 0 on success, 1 on a failed analysis, 2 on bad usage."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger()
    previous_level = root.level
    root.addHandler(handler)

    try:
        if args.debug:
            root.setLevel(logging.DEBUG)
        elif args.verbose:
            root.setLevel(logging.INFO)
        else:
            root.setLevel(get_log_level())
        logger.debug("Using up to %d worker threads", get_thread_count())

        text = COMMANDS[args.command](args, parser)
        if args.output:
            ReportWriter.write(args.output, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    except (MsnError, OSError) as e:
        logger.error("%s", e)
        return EXIT_FAILURE
    finally:
        root.removeHandler(handler)
        root.setLevel(previous_level)


def main():
    try:
        code = run_cli()
    except KeyboardInterrupt:
        logger.warning("Interrupted by user.")
        code = EXIT_FAILURE
    sys.exit(code)


if __name__ == "__main__":
    main()
