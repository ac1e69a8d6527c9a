"""
Command line entry point: ``cherrytree <command> ...`` or ``python -m cherrytree <command> ...``.

Every command prints machine-parseable `key value` lines on stdout; human-readable messages go to stderr through
logging. Exit codes: 0 on success (a condition holds, or no certificate was found), 1 when a violation or a
certificate is found or re-validated, 2 on invalid input, 3 on internal errors.

Basic usage: ``cherrytree gen planted --out v.cheg && cherrytree oracle v.cheg``
"""
from __future__ import annotations


from collections import Counter
import argparse
import logging
import sys


from .codes import verify_strong_ldc, StrongLdcInstance
from .default_config import (
    BRUTE_FORCE_MAX_EDGES,
    DEFAULT_ROOT_ATTEMPTS,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    EXHAUSTIVE_LIMIT,
)
from .exporters import CertificateExporter, CHEGExporter, SLDCExporter
from .generators import (
    GenConfig,
    hadamard_strong_ldc,
    hypercube_two_query_instance,
    planted_violation_instance,
    random_colored_hypergraph,
)
from .gf2 import brute_force_condition_ii, check_condition_ii, minimize_witness
from .helpers import format_fraction, InconsistencyError, parse_fraction
from .hypergraphs import Augmentation, validate
from .parsers import load_hypergraph, read_certificate, read_file
from .signatures import build_signature_graph, claim22_chain, claim22_lower_bound, claim24_max_ratio, exact_edge_count
from .witnesses import (
    Certificate,
    density_report,
    find_violation,
    two_query_signatures,
    validate_certificate,
    WitnessConfig,
)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


class UsageError(ValueError):
    """
    Bad command line.
    """


class ArgumentParser(argparse.ArgumentParser):
    """
    Raises instead of exiting, so that every invalid input goes through the same exit code.
    """

    def error(self, message):
        raise UsageError(message)


def _positive(text) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"`{text}` must be a positive integer.")
    return value


def _fraction(text):
    try:
        return parse_fraction(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="cherrytree", description=__doc__.split("\n\n")[0])
    parser.add_argument("--verbose", "-v", action="store_true", help="Log debug messages on stderr.")
    commands = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    commands.required = True

    gen = commands.add_parser("gen", help="Generate an instance.")
    kinds = gen.add_subparsers(dest="kind", parser_class=ArgumentParser)
    kinds.required = True
    hadamard = kinds.add_parser("hadamard", help="Strong LDC on the Hadamard code, as .sldc.")
    hadamard.add_argument("--k", type=_positive, required=True)
    hadamard.add_argument("--delta", type=_fraction, default=None, help="Density every matching must reach.")
    planted = kinds.add_parser("planted", help="Four-edge violation, as .cheg.")
    rand = kinds.add_parser("random", help="Random linear colored hypergraph, as .cheg.")
    rand.add_argument("--n", type=_positive, required=True)
    rand.add_argument("--k", type=_positive, required=True)
    rand.add_argument("--delta", type=_fraction, required=True)
    hypercube = kinds.add_parser("hypercube", help="Hypercube with dimension colors, as 2-uniform .cheg.")
    hypercube.add_argument("--k", type=_positive, required=True)
    for sub in (hadamard, rand):
        sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    for sub in (hadamard, planted, rand, hypercube):
        sub.add_argument("--out", required=True)

    valid = commands.add_parser("validate", help="Check a .cheg hypergraph or a .sldc strong LDC.")
    valid.add_argument("input")
    valid.add_argument("--delta", type=_fraction, default=None)
    valid.add_argument("--exhaustive-limit", type=int, default=EXHAUSTIVE_LIMIT)

    oracle = commands.add_parser("oracle", help="Decide the even-coloring condition over GF(2).")
    oracle.add_argument("input")
    oracle.add_argument("--brute-force", action="store_true", help="Cross-check by enumeration.")
    oracle.add_argument("--max-edges", type=_positive, default=BRUTE_FORCE_MAX_EDGES)
    oracle.add_argument("--minimize", action="store_true", help="Shrink the witness greedily.")
    oracle.add_argument("--cert-out", default=None, help="Also save the witness as a .cert file.")

    siggraph = commands.add_parser("siggraph", help="Signature graph statistics.")
    siggraph.add_argument("input")
    siggraph.add_argument("--seed", type=int, default=DEFAULT_SEED)

    witness = commands.add_parser("witness", help="Search a certificate through rainbow trees.")
    witness.add_argument("input")
    witness.add_argument("--seed", type=int, default=DEFAULT_SEED)
    witness.add_argument("--roots", type=_positive, default=DEFAULT_ROOT_ATTEMPTS)
    witness.add_argument("--degree-threshold", type=_positive, default=None)
    witness.add_argument("--growth", type=_fraction, default=None)
    witness.add_argument("--workers", type=_positive, default=DEFAULT_WORKERS)
    witness.add_argument("--cert-out", default=None, help="Also save the certificate as a .cert file.")

    check = commands.add_parser("check", help="Re-validate a saved certificate against a hypergraph.")
    check.add_argument("input")
    check.add_argument("certificate")

    demo = commands.add_parser("demo2q", help="Two-query signatures on a hypercube or a 2-uniform .cheg.")
    source = demo.add_mutually_exclusive_group(required=True)
    source.add_argument("input", nargs="?")
    source.add_argument("--k", type=_positive)
    demo.add_argument("--source", type=int, default=0)

    stats = commands.add_parser("stats", help="Counts, degrees and density of a hypergraph.")
    stats.add_argument("input")

    return parser


def _emit(key, *values) -> None:
    print(" ".join([key] + [str(value) for value in values]))


def _ok(flag) -> str:
    return "ok" if flag else "FAIL"


def _export(args, value) -> None:
    CertificateExporter(sys.stdout)(value)
    if args.cert_out:
        exporter = CertificateExporter(args.cert_out)
        exporter(value)
        _emit("saved", exporter.filename)


def gen(args) -> int:
    if args.kind == "hadamard":
        _emit("seed", args.seed)
        instance = hadamard_strong_ldc(args.k, GenConfig(seed=args.seed, target_delta=args.delta))
        exporter = SLDCExporter(args.out)
        exporter(instance)
        _emit("k", instance.k)
        _emit("n", instance.n)
        _emit("delta", format_fraction(instance.delta))
    else:
        if args.kind == "planted":
            H = planted_violation_instance()
        elif args.kind == "random":
            _emit("seed", args.seed)
            H = random_colored_hypergraph(args.n, args.k, args.delta, GenConfig(seed=args.seed))
        else:
            H = hypercube_two_query_instance(args.k)
        exporter = CHEGExporter(args.out)
        exporter(H)
        _emit("n", H.n)
        _emit("k", H.k)
        _emit("m", H.m)
    _emit("out", exporter.filename)
    return EXIT_OK


def validate_command(args) -> int:
    value = read_file(args.input)
    if isinstance(value, StrongLdcInstance):
        if args.delta is not None:
            value = StrongLdcInstance(value.code, value.matchings, args.delta)
        verdict = verify_strong_ldc(value, exhaustive_limit=args.exhaustive_limit)
        _emit("structural", _ok(verdict.structural_ok))
        _emit("algebraic", _ok(verdict.algebraic_ok))
        _emit("exhaustive", "skipped" if verdict.exhaustive_ok is None else _ok(verdict.exhaustive_ok))
        _emit("degenerate", "yes" if verdict.degenerate else "no")
        report = verdict.structure
        for failure in verdict.failures:
            _emit("failure", f"color={failure.color}", "triple", *failure.triple)
        ok = verdict.ok
    else:
        report = validate(value, delta=args.delta)
        _emit("linear", _ok(report.linear))
        _emit("matchings", _ok(report.matchings_ok))
        ok = report.ok
    _emit("delta", format_fraction(report.achieved_delta))
    for finding in report.violations:
        _emit("finding", finding.kind, *finding.edges)
    return EXIT_OK if ok else EXIT_FOUND


def _require_valid(H) -> None:
    report = validate(H)
    if not report.ok:
        raise ValueError(f"Invalid hypergraph: {report.violations[0].message}")


def oracle(args) -> int:
    H = load_hypergraph(args.input)
    _require_valid(H)
    verdict = check_condition_ii(H)
    if args.brute_force:
        if brute_force_condition_ii(H, max_edges=args.max_edges).holds != verdict.holds:
            raise InconsistencyError("Elimination and enumeration disagree.")
        _emit("brute_force", "agrees")
    if verdict.holds:
        _emit("condition_ii", "holds")
        return EXIT_OK
    if args.minimize:
        verdict = minimize_witness(H, verdict)
    _emit("condition_ii", "violated")
    _export(args, ("violation", verdict.violating_color, verdict.witness.support()))
    return EXIT_FOUND


def siggraph(args) -> int:
    H = load_hypergraph(args.input)
    _require_valid(H)
    _emit("seed", args.seed)
    G = build_signature_graph(H)
    exact = len(G.edges) == exact_edge_count(H)
    _emit("sig_vertices", len(G.vertices))
    _emit("sig_edges", len(G.edges))
    _emit("exact_identity", _ok(exact))
    _emit("claim24_max_ratio", format_fraction(claim24_max_ratio(G, seed=args.seed)))
    return EXIT_OK if exact else EXIT_INTERNAL


def witness(args) -> int:
    options = {"seed": args.seed, "root_attempts": args.roots, "workers": args.workers}
    if args.degree_threshold is not None:
        options["degree_threshold"] = args.degree_threshold
    if args.growth is not None:
        options["growth_factor"] = args.growth
    cfg = WitnessConfig(**options)
    H = load_hypergraph(args.input)
    _require_valid(H)
    _emit("seed", args.seed)
    result = find_violation(H, cfg)
    if isinstance(result, Certificate):
        if not validate_certificate(H, result):
            raise InconsistencyError("Returned certificate does not validate.")
        _export(args, ("certificate", result.odd_color, result.edges))
        _emit("verified", "ok")
        return EXIT_FOUND
    _emit("not-found", f"roots={result.roots_tried}", f"depth_max={result.depth_max}")
    return EXIT_OK


def check(args) -> int:
    H = load_hypergraph(args.input)
    _require_valid(H)
    kind, color, edges = read_certificate(args.certificate)
    cert = Certificate(Augmentation.from_indices(H, edges), color)
    verified = validate_certificate(H, cert)
    _emit("kind", kind)
    _emit("verified", _ok(verified))
    return EXIT_FOUND if verified else EXIT_OK


def demo2q(args) -> int:
    graph = hypercube_two_query_instance(args.k) if args.k is not None else load_hypergraph(args.input)
    _require_valid(graph)
    result = two_query_signatures(graph, args.source)
    _emit("reached", len(result.signatures))
    _emit("distinct", result.distinct)
    if result.consistent:
        _emit("consistent", "yes")
        return EXIT_OK
    _emit("consistent", "no")
    cert = result.inconsistency
    CertificateExporter(sys.stdout)(("violation", cert.odd_color, cert.edges))
    return EXIT_FOUND


def stats(args) -> int:
    """
    Counts, degree histogram, the cherry counting chain, its lower bound when it applies, and the density report.
    """
    H = load_hypergraph(args.input)
    report = validate(H)
    _emit("n", H.n)
    _emit("k", H.k)
    _emit("m", H.m)
    _emit("delta", format_fraction(report.achieved_delta))
    for d, count in sorted(Counter(H.degrees().tolist()).items()):
        _emit("degree", d, count)
    if H.uniformity != 3 or not report.linear:
        return EXIT_OK

    chain = claim22_chain(H)
    _emit("degree_sum", chain.degree_sum)
    _emit("degree_square_sum", chain.degree_square_sum)
    _emit("cauchy_schwarz", format_fraction(chain.cauchy_schwarz))
    _emit("chain_bound", format_fraction(chain.chain_bound))
    _emit("cherry_edges", chain.exact)
    if report.achieved_delta * H.k >= 1:
        _emit("claim22_bound", claim22_lower_bound(H.n, H.k, report.achieved_delta))

    density = density_report(H)
    exact = density.sig_edges == chain.exact
    _emit("exact_identity", _ok(exact))
    _emit("avg_sig_degree", format_fraction(density.average_degree))
    _emit("log2_n", f"{density.log_n:.6f}")
    _emit("density_ratio", f"{density.density_ratio:.6f}")
    _emit("default_threshold", density.default_threshold)
    return EXIT_OK if exact else EXIT_INTERNAL


COMMANDS = {
    "gen": gen,
    "validate": validate_command,
    "oracle": oracle,
    "siggraph": siggraph,
    "witness": witness,
    "check": check,
    "demo2q": demo2q,
    "stats": stats,
}


def _configure_logging(verbose) -> None:
    root = logging.getLogger("cherrytree")
    if not any(getattr(handler, "_cherrytree", False) for handler in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._cherrytree = True
        root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def run(argv=None) -> int:
    """
    Parse the arguments, run the command, and map failures to exit codes.

    :param argv: Arguments without the program name.
    :type argv: list[str], default sys.argv[1:].
    :return: The exit code.
    :rtype: int
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INVALID
    _configure_logging(args.verbose)

    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as error:
        print(f"error: {' '.join(str(error).split())}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as error:
        logger.debug("Internal error", exc_info=True)
        print(f"internal error: {type(error).__name__}: {' '.join(str(error).split())}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
