#!/usr/bin/env python3
"""
Consecutive Pattern Kit - command-line front end
Avoider counts, cluster tables, growth-rate brackets, classification,
non-overlapping census and verification suites with machine-readable output.

Data goes to stdout; logs go to stderr.
Exit codes: 0 pass, 1 verification failure, 2 usage or parse error, 3 resource guard.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from components import run_config
from components.cache_manager import CacheManager
from components.cluster import cluster_table
from components.egf import avoider_counts, default_order
from components.equivalence_classifier import EquivalenceClassifier
from components.errors import CpkError, DomainError, InvalidInputError, ResourceLimitError
from components.growth_analyzer import GrowthAnalyzer
from components.nonoverlap_census import NonOverlapCensus
from components.perm_core import Pattern, count_avoiders_bruteforce
from components.reference_values import reference_values
from components.report_persistence import DEFAULT_FIXTURES_FILE, ReportWriter, save_reference_values
from components.run_config import RunConfig
from components.theorem_verifier import TheoremVerifier

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

SUITES = ('table1', 'theorems', 'inequalities', 'derivative', 'anomaly-pair')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpk", description="Exact cluster-method toolkit for consecutive permutation patterns.")
    parser.add_argument('--threads', type=int, default=None,
                        help="worker processes (default: CPK_THREADS or 1)")
    parser.add_argument('--format', choices=('json', 'csv'), default='json')
    parser.add_argument('--brute-guard', type=int, default=RunConfig.brute_guard,
                        help="largest n for brute-force enumeration")
    parser.add_argument('--seed-tables', nargs='?', const=DEFAULT_FIXTURES_FILE, default=None,
                        metavar='PATH', help="write the reference-value fixtures and exit")
    parser.add_argument('--log-level', default=None, help="overrides CPK_LOG_LEVEL")

    # Subcommands also accept --format after the command name.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('json', 'csv'), default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest='command')

    avoiders = sub.add_parser('avoiders', parents=[common], help="avoider counts alpha_n")
    avoiders.add_argument('pattern')
    avoiders.add_argument('--max-n', type=int, default=RunConfig.max_n)
    avoiders.add_argument('--method', choices=('cluster', 'brute', 'both'), default='cluster')

    clusters = sub.add_parser('clusters', parents=[common], help="cluster numbers r_{n,k}")
    clusters.add_argument('pattern')
    clusters.add_argument('--max-n', type=int, default=RunConfig.max_n)
    clusters.add_argument('--max-k', type=int, default=3)

    growth = sub.add_parser('growth', parents=[common], help="bracket for the inverse growth rate")
    growth.add_argument('pattern')
    growth.add_argument('--k', type=int, default=None)
    growth.add_argument('--tol', default=RunConfig.tolerance)
    growth.add_argument('--certified', action=argparse.BooleanOptionalAction, default=True)

    classify = sub.add_parser('classify', parents=[common], help="c-Wilf classes of one length")
    classify.add_argument('--length', type=int, required=True)
    classify.add_argument('--max-n', type=int, default=None)

    census = sub.add_parser('census', parents=[common], help="non-overlapping pattern census")
    census.add_argument('--length', type=int, required=True)

    verify = sub.add_parser('verify', parents=[common], help="run a verification suite")
    verify.add_argument('--suite', choices=SUITES, required=True)
    verify.add_argument('--length', type=int, default=4)

    return parser


def _cache() -> Optional[CacheManager]:
    return CacheManager(run_config.CACHE_DIR) if run_config.CACHE_DIR else None


def cmd_avoiders(args, config: RunConfig, writer: ReportWriter) -> int:
    sigma = Pattern.parse(args.pattern)
    max_n = args.max_n
    if args.method == 'brute' and max_n > config.brute_guard:
        raise ResourceLimitError(f"--max-n {max_n} exceeds brute-force guard {config.brute_guard}")

    cluster_values = avoider_counts(sigma, max_n, threads=config.threads) if args.method != 'brute' else None
    rows: List[Dict] = []
    for n in range(max_n + 1):
        row: Dict = {'n': n}
        if cluster_values is not None:
            row['alpha'] = cluster_values[n]
        if args.method != 'cluster':
            if n <= config.brute_guard:
                brute = count_avoiders_bruteforce(sigma, n, max_n=config.brute_guard,
                                                  threads=config.threads)
                row['brute'] = brute
                if cluster_values is not None:
                    row['match'] = brute == cluster_values[n]
            else:
                row['brute'] = None
                row['match'] = None
            if args.method == 'brute':
                row['alpha'] = row['brute']
        rows.append(row)

    columns = ['n', 'alpha'] + (['brute', 'match'] if args.method == 'both' else [])
    table = [[('' if row.get(c) is None else row.get(c)) for c in columns] for row in rows]
    report = {'pattern': str(sigma), 'method': args.method, 'rows': rows}
    sys.stdout.write(writer.render(report, table, columns))
    mismatched = any(row.get('match') is False for row in rows)
    return EXIT_FAIL if mismatched else EXIT_PASS


def cmd_clusters(args, config: RunConfig, writer: ReportWriter) -> int:
    sigma = Pattern.parse(args.pattern)
    table = cluster_table(sigma, args.max_n, args.max_k, cache=_cache(), threads=config.threads)
    sys.stdout.write(writer.render(table, table.rows(), ['pattern', 'n', 'k', 'r']))
    return EXIT_PASS


def cmd_growth(args, config: RunConfig, writer: ReportWriter) -> int:
    sigma = Pattern.parse(args.pattern)
    analyzer = GrowthAnalyzer(config.tolerance_value)
    bracket = analyzer.bracket_growth_rate(sigma, args.k, config.tolerance_value,
                                           certified=args.certified)
    data = bracket.to_dict()
    columns = ['pattern', 'lo', 'hi', 'mode', 'status', 'K', 'tol']
    sys.stdout.write(writer.render(bracket, [[data[c] for c in columns]], columns))
    return EXIT_PASS


def cmd_classify(args, config: RunConfig, writer: ReportWriter) -> int:
    classifier = EquivalenceClassifier(cache=_cache(), threads=config.threads)
    N = args.max_n if args.max_n is not None else default_order(args.length)
    report = classifier.classify(args.length, N)
    sys.stdout.write(writer.render(report, report.rows(), ['m', 'representative', 'member']))
    return EXIT_PASS


def cmd_census(args, config: RunConfig, writer: ReportWriter) -> int:
    report = NonOverlapCensus().census(args.length)
    sys.stdout.write(writer.render(report, report.rows(), ['m', 'a', 'b', 'd2', 'witness']))
    return EXIT_PASS if report.status == 'pass' else EXIT_FAIL


def cmd_verify(args, config: RunConfig, writer: ReportWriter) -> int:
    verifier = TheoremVerifier(
        analyzer=GrowthAnalyzer(config.tolerance_value),
        classifier=EquivalenceClassifier(cache=_cache(), threads=config.threads),
        max_depth=config.cluster_depth)
    suite = args.suite
    if suite == 'table1':
        report = verifier.verify_table1()
    elif suite == 'theorems':
        report = verifier.verify_theorem_orderings(args.length)
    elif suite == 'inequalities':
        report = verifier.verify_inequality_suite(args.length)
    elif suite == 'derivative':
        report = verifier.verify_derivative_suite(args.length)
    else:
        report = verifier.verify_anomaly_pair()
    rows = [[suite, args.length, report['status']]]
    sys.stdout.write(writer.render(report, rows, ['suite', 'length', 'status']))
    return EXIT_PASS if report['status'] == 'pass' else EXIT_FAIL


COMMANDS = {
    'avoiders': cmd_avoiders,
    'clusters': cmd_clusters,
    'growth': cmd_growth,
    'classify': cmd_classify,
    'census': cmd_census,
    'verify': cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run_config.setup_logging(args.log_level)

    try:
        if args.seed_tables:
            ok = save_reference_values(reference_values(), args.seed_tables)
            return EXIT_PASS if ok else EXIT_FAIL
        if not args.command:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE

        config = RunConfig.from_args(args)
        writer = ReportWriter(config.format)
        return COMMANDS[args.command](args, config, writer)
    except ResourceLimitError as e:
        logger.error(f"Resource guard: {str(e)}")
        return EXIT_RESOURCE
    except (InvalidInputError, DomainError) as e:
        logger.error(f"Invalid input: {str(e)}")
        return EXIT_USAGE
    except CpkError as e:
        logger.error(f"Error: {str(e)}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
