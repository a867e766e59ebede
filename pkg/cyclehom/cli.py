# -*- coding: utf-8 -*-

"""Command-line front end.

Reports are JSON on stdout. The exit status of ``solve`` and ``oracle``
is 0 for "yes" and 1 for "no"; usage and precondition errors exit with 2
and a failed internal assertion with 3.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import csv
import enum
import io
import json
import logging
import multiprocessing
import os
import sys

import docopt
import monotonic
import six

import cyclehom.dimacs
import cyclehom.graph
import cyclehom.hardness
import cyclehom.instance
import cyclehom.oracle
import cyclehom.reductions
import cyclehom.solvers
import cyclehom.solvers.poly
import cyclehom.solvers.subexp
import cyclehom.solvers.trianglefree


log = logging.getLogger(__name__)
_USAGE = """
Usage:
  {program} solve INSTANCE [--alg=ALG] [--target-file=FILE] [--cap=N]
            [--force] [--emit-tree=FILE] [--verbose]
  {program} reduce INSTANCE [--verbose]
  {program} classify K D
  {program} generate-hard --cnf=FILE --k=K [--out=FILE] [--verbose]
  {program} generate-random --n=N (--k=K | --target-file=FILE) [--p=P]
            [--min-diameter=D] [--max-diameter=D] [--density=X]
            [--planted] [--noise=X] [--seed=S] [--out=FILE] [--verbose]
  {program} oracle INSTANCE [--cap=N] [--force] [--verbose]
  {program} bench (--instances=DIR | --count=C --n=N --k=K) [--alg=ALG]
            [--p=P] [--max-diameter=D] [--density=X] [--planted]
            [--seed=S] [--cap=N] [--check] [--jobs=N]
            [--out=FILE] [--verbose]
  {program} (-h | --help)

Arguments:
  INSTANCE      Instance JSON file.
  K             Cycle parameter; the target is C_(2K+1).
  D             Diameter bound.

Options:
  -h --help             Show this help.
  --alg=ALG             One of auto, poly, subexp, c5, trifree or oracle.
                        [default: auto]
  --target-file=FILE    Target JSON file replacing the instance's target.
  --cap=N               Largest instance the oracle accepts. [default: 14]
  --force               Run the oracle above its cap.
  --emit-tree=FILE      Write the subexponential recursion tree as JSON.
  --cnf=FILE            3-CNF formula in DIMACS format.
  --out=FILE            Write output here instead of stdout.
  --n=N                 Number of vertices.
  --count=C             Number of random instances.
  --p=P                 Edge probability. [default: 0.3]
  --min-diameter=D      Smallest accepted diameter. [default: 0]
  --max-diameter=D      Largest accepted diameter.
  --density=X           Probability of a colour joining a list.
                        [default: 1.0]
  --planted             Sample graphs that map to the target.
  --noise=X             Extra edge probability for planted graphs.
                        [default: 0.0]
  --seed=S              Random seed. [default: 0]
  --instances=DIR       Directory of instance JSON files.
  --check               Compare every answer against the oracle.
  --jobs=N              Worker processes for bench. [default: 1]
  --verbose             Log progress to stderr.

When --alg is auto the algorithm follows from the complexity of the
(k, diameter) cell. Cells with no known algorithm fall back to the
oracle with a warning.
"""

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_ASSERTION = 3
ANSWER_YES = "yes"
ANSWER_NO = "no"
ALGORITHMS = ("auto", "poly", "subexp", "c5", "trifree", "oracle")
BENCH_COLUMNS = ("instance", "n", "k", "d", "algorithm", "answer",
                 "wall_time", "nodes_expanded", "root_mu", "agreement")
_SOLVERS = {
    "poly": cyclehom.solvers.poly.PolySolver,
    "subexp": cyclehom.solvers.subexp.SubexpSolver,
    "c5": cyclehom.solvers.subexp.C5Solver,
    "trifree": cyclehom.solvers.trianglefree.TriangleFreeSolver,
}


class UsageError(ValueError):
    """Raised for invalid command-line values."""


class Verdict(enum.Enum):
    """Complexity of ``Hom(C_{2k+1})`` on diameter-``d`` graphs."""

    POLY = "poly"
    SUBEXP = "subexp"
    ETH_HARD = "eth_hard"
    OPEN = "open"


_ComplexityCell = collections.namedtuple(
    "_ComplexityCell", ("k", "d", "verdict"))


class ComplexityCell(_ComplexityCell):
    """One cell of the complexity table."""

    __slots__ = ()

    def __repr__(self):
        return "<{} k = {}, d = {}: {}>".format(
            self.__class__.__name__, self.k, self.d, self.verdict.value)

    def as_dict(self):
        return {"k": self.k, "d": self.d, "verdict": self.verdict.value}


def classify(k, d):
    """Classify ``Hom(C_{2k+1})`` on graphs of diameter ``d``.

    :raises UsageError: unless ``k >= 1`` and ``d >= 2``.
    """
    if k < 1 or d < 2:
        raise UsageError("Need k >= 1 and d >= 2; got k = {}, d = {}".format(
            k, d))
    if k >= 2 and d <= k + 1:
        verdict = Verdict.POLY
    elif (k >= 2 and d == k + 2) or (k == 2 and d == 5) \
            or (k == 1 and d in (2, 3)):
        verdict = Verdict.SUBEXP
    elif d >= 2 * k + 2 or (k == 1 and d >= 4):
        verdict = Verdict.ETH_HARD
    else:
        verdict = Verdict.OPEN
    return ComplexityCell(k, d, verdict)


def instance_diameter(instance):
    """Get the largest diameter over the connected components."""
    return max([cyclehom.graph.diameter(component)
                for component in (instance.graph.subgraph(vertices)
                                  for vertices in instance.graph.components())]
               or [0])


def choose_algorithm(instance, diameter=None):
    """Pick the solver ``--alg auto`` runs.

    :returns: a two-item tuple of the algorithm name and a warning, which
        is ``None`` unless the oracle is used as a fallback.
    """
    if diameter is None:
        diameter = instance_diameter(instance)
    target = instance.target
    if isinstance(target, cyclehom.instance.GeneralTarget):
        if (target.triangle_free and diameter <= 2 and target.size
                <= cyclehom.solvers.trianglefree.MAX_TARGET_SIZE):
            return "trifree", None
        return "oracle", ("No algorithm for this target at diameter {}; "
                          "using the oracle".format(diameter))
    k = target.k
    if k >= 2 and diameter <= k + 1:
        return "poly", None
    if k >= 2 and diameter == k + 2:
        return "subexp", None
    if k == 2 and diameter == 5:
        return "c5", None
    cell = classify(k, max(diameter, 2))
    return "oracle", ("No algorithm implemented for k = {}, d = {} ({}); "
                      "using the oracle".format(k, diameter,
                                                cell.verdict.value))


def _read(path):
    with io.open(path, encoding="utf-8") as file_:
        return file_.read()


def _write(path, text):
    if path is None:
        print(text)
        return
    with io.open(path, "w", encoding="utf-8") as file_:
        file_.write(six.text_type(text))


def load_instance(path, target_file=None):
    """Read an instance file, optionally replacing its target.

    :returns: a two-item tuple of the instance and its landmarks.
    """
    text = _read(path)
    if target_file is None:
        return cyclehom.instance.load_instance(text)
    try:
        data = json.loads(text)
        target = json.loads(_read(target_file))
    except ValueError as exc:
        six.raise_from(cyclehom.instance.InstanceError(
            "Invalid JSON: {}".format(exc)), exc)
    data.pop("k", None)
    data["target"] = target
    return cyclehom.instance.load_instance(json.dumps(data))


def run_solver(instance, algorithm, cap=cyclehom.oracle.DEFAULT_CAP,
               force=False, record_tree=False):
    """Run one algorithm and build the report.

    :returns: a two-item tuple of the report dict and the solver used,
        which is ``None`` for the oracle.
    """
    warnings = []
    diameter = instance_diameter(instance)
    if algorithm == "auto":
        algorithm, warning = choose_algorithm(instance, diameter)
        if warning is not None:
            log.warning(warning)
            warnings.append(warning)
    start = monotonic.monotonic()
    solver = None
    stats = cyclehom.solvers.SolverStats()
    if algorithm == "oracle":
        witness = cyclehom.oracle.brute_force_lhom(instance, cap, force)
    elif algorithm in _SOLVERS:
        if algorithm in ("subexp", "c5"):
            solver = _SOLVERS[algorithm](stats, record_tree=record_tree)
        else:
            solver = _SOLVERS[algorithm](stats)
        witness = solver.solve(instance)
    else:
        raise UsageError("Unknown algorithm {!r}; pick one of {}".format(
            algorithm, ", ".join(ALGORITHMS)))
    elapsed = monotonic.monotonic() - start
    report = {
        "answer": ANSWER_NO if witness is None else ANSWER_YES,
        "witness": None if witness is None else witness.as_json(),
        "algorithm": algorithm,
        "diameter": diameter,
        "timings": {"total": elapsed, "solver": stats.elapsed},
        "reductions": stats.reductions,
        "guesses_tried": stats.guesses_tried,
        "nodes_expanded": stats.nodes_expanded,
        "root_mu": stats.root_mu,
        "warnings": warnings,
    }
    return report, solver


def _exit_code(report):
    return EXIT_YES if report["answer"] == ANSWER_YES else EXIT_NO


def solve(arguments):
    """Handle ``solve``."""
    instance, _ = load_instance(arguments["INSTANCE"],
                                arguments["--target-file"])
    tree_path = arguments["--emit-tree"]
    report, solver = run_solver(
        instance, arguments["--alg"], _natural(arguments["--cap"], "--cap"),
        arguments["--force"], record_tree=tree_path is not None)
    if tree_path is not None:
        tree = getattr(solver, "tree", None)
        if tree is None:
            log.warning("%s records no recursion tree", report["algorithm"])
            tree = []
        _write(tree_path, cyclehom.solvers.subexp.dump_tree(tree))
    print(json.dumps(report, sort_keys=True))
    return _exit_code(report)


def reduce_(arguments):
    """Handle ``reduce``: print the reduced instance and changelog."""
    instance, _ = load_instance(arguments["INSTANCE"])
    outcome = cyclehom.reductions.reduce_exhaustively(instance)
    report = {"changelog": [change.as_dict()
                            for change in outcome.changelog]}
    if outcome.is_no:
        report["answer"] = ANSWER_NO
        report["rule"] = outcome.rule.value
        exit_code = EXIT_NO
    else:
        report["instance"] = outcome.instance.as_dict()
        exit_code = EXIT_YES
    print(json.dumps(report, sort_keys=True))
    return exit_code


def oracle(arguments):
    """Handle ``oracle``."""
    instance, _ = load_instance(arguments["INSTANCE"])
    report, _ = run_solver(instance, "oracle",
                           _natural(arguments["--cap"], "--cap"),
                           arguments["--force"])
    print(json.dumps(report, sort_keys=True))
    return _exit_code(report)


def generate_hard(arguments):
    """Handle ``generate-hard``."""
    formula = cyclehom.hardness.CnfFormula.from_dimacs(
        _read(arguments["--cnf"]))
    gadget = cyclehom.hardness.build_hardness_instance(
        formula, _natural(arguments["--k"], "--k"))
    if not cyclehom.hardness.check_radius(gadget):
        log.warning("Gadget exceeds the radius bound")
    _write(arguments["--out"], cyclehom.instance.dump_instance(
        gadget.instance(), gadget.landmarks))
    return EXIT_YES


def _natural(value, option):
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        six.raise_from(UsageError(
            "{} must be an integer; got {!r}".format(option, value)), exc)
    if number < 0:
        raise UsageError("{} must not be negative".format(option))
    return number


def _real(value, option):
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        six.raise_from(UsageError(
            "{} must be a number; got {!r}".format(option, value)), exc)


def generator_config(arguments, seed=None):
    """Build a :class:`cyclehom.oracle.GeneratorConfig` from options."""
    target = None
    if arguments.get("--target-file"):
        target = cyclehom.instance.GeneralTarget.from_dict(
            json.loads(_read(arguments["--target-file"])))
    max_diameter = arguments.get("--max-diameter")
    return cyclehom.oracle.GeneratorConfig(
        n=_natural(arguments["--n"], "--n"),
        p=_real(arguments["--p"], "--p"),
        k=_natural(arguments["--k"] or 2, "--k"),
        target=target,
        min_diameter=_natural(arguments.get("--min-diameter") or 0,
                              "--min-diameter"),
        max_diameter=None if max_diameter is None
        else _natural(max_diameter, "--max-diameter"),
        density=_real(arguments["--density"], "--density"),
        seed=_natural(arguments["--seed"], "--seed") if seed is None
        else seed,
        planted=arguments["--planted"],
        noise=_real(arguments.get("--noise") or 0.0, "--noise"),
    )


def generate_random(arguments):
    """Handle ``generate-random``."""
    instance = cyclehom.oracle.random_instance(generator_config(arguments))
    _write(arguments["--out"], cyclehom.instance.dump_instance(instance))
    return EXIT_YES


def _bench_instances(arguments):
    directory = arguments["--instances"]
    if directory is not None:
        for name in sorted(os.listdir(directory)):
            if name.endswith(".json"):
                instance, _ = cyclehom.instance.load_instance(
                    _read(os.path.join(directory, name)))
                yield name, instance
        return
    first = _natural(arguments["--seed"], "--seed")
    for offset in six.moves.range(_natural(arguments["--count"], "--count")):
        seed = first + offset
        yield "seed-{}".format(seed), cyclehom.oracle.random_instance(
            generator_config(arguments, seed))


def bench_row(name, instance, algorithm="auto", check=False,
              cap=cyclehom.oracle.DEFAULT_CAP):
    """Solve one instance and describe it as a bench row.

    :returns: a dict keyed by :data:`BENCH_COLUMNS`.
    """
    row = dict.fromkeys(BENCH_COLUMNS, "")
    row.update(instance=name, n=instance.graph.order,
               k=getattr(instance.target, "k", ""))
    try:
        report, _ = run_solver(instance, algorithm, cap)
    except (cyclehom.solvers.SolverError,
            cyclehom.oracle.OracleError) as exc:
        log.warning("%s failed: %s", name, exc)
        row.update(d=instance_diameter(instance),
                   algorithm=algorithm, answer="error")
        return row
    row.update(d=report["diameter"], algorithm=report["algorithm"],
               answer=report["answer"],
               wall_time="{:.6f}".format(report["timings"]["total"]),
               nodes_expanded=report["nodes_expanded"],
               root_mu="" if report["root_mu"] is None
               else report["root_mu"])
    if check:
        try:
            expected = cyclehom.oracle.brute_force_lhom(instance, cap)
        except cyclehom.oracle.CapExceeded:
            row["agreement"] = "skipped"
        else:
            answer = ANSWER_NO if expected is None else ANSWER_YES
            row["agreement"] = "match" if answer == report["answer"] \
                else "mismatch"
    return row


def _isolated_bench_row(job):
    # Runs in a worker process; the instance travels as JSON.
    name, text, algorithm, check, cap = job
    instance, _ = cyclehom.instance.load_instance(text)
    return bench_row(name, instance, algorithm, check, cap)


def bench_rows(instances, algorithm="auto", check=False,
               cap=cyclehom.oracle.DEFAULT_CAP, jobs=1):
    """Solve instances and describe each as a row.

    With a single job the instances are solved one after another in this
    process, which keeps runs deterministic. Otherwise each instance is
    solved in a separate worker process of a pool of ``jobs`` processes.
    Rows come back in input order either way.

    :param instances: iterable of ``(name, instance)`` pairs.
    :param jobs: number of worker processes.

    :returns: a list of dicts keyed by :data:`BENCH_COLUMNS`.
    """
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if jobs == 1:
        return [bench_row(name, instance, algorithm, check, cap)
                for name, instance in instances]
    work = [(name, cyclehom.instance.dump_instance(instance),
             algorithm, check, cap) for name, instance in instances]
    log.info("Solving %d instances with %d processes", len(work), jobs)
    # One task per worker before it is replaced.
    pool = multiprocessing.Pool(jobs, maxtasksperchild=1)
    try:
        return pool.map(_isolated_bench_row, work, chunksize=1)
    finally:
        pool.close()
        pool.join()


def bench(arguments):
    """Handle ``bench``: write one CSV row per instance.

    Exits with 3 if ``--check`` found a disagreement.
    """
    rows = bench_rows(_bench_instances(arguments), arguments["--alg"],
                      arguments["--check"],
                      _natural(arguments["--cap"], "--cap"),
                      _natural(arguments["--jobs"], "--jobs"))
    output = six.StringIO()
    writer = csv.DictWriter(output, BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if arguments["--out"] is None:
        sys.stdout.write(output.getvalue())
    else:
        _write(arguments["--out"], output.getvalue())
    if any(row["agreement"] == "mismatch" for row in rows):
        return EXIT_ASSERTION
    return EXIT_YES


def classify_command(arguments):
    """Handle ``classify``."""
    cell = classify(_natural(arguments["K"], "K"), _natural(arguments["D"], "D"))
    print(json.dumps(cell.as_dict(), sort_keys=True))
    return EXIT_YES


_COMMANDS = (
    ("solve", solve),
    ("reduce", reduce_),
    ("classify", classify_command),
    ("generate-hard", generate_hard),
    ("generate-random", generate_random),
    ("oracle", oracle),
    ("bench", bench),
)


def _main(argv=None):
    """Command-line entry-point.

    :param argv: command line options.

    :returns: the process exit status.
    """
    try:
        arguments = docopt.docopt(_USAGE.format(program="cyclehom"), argv)
    except docopt.DocoptExit as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if arguments.get("--verbose"):
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
    else:
        logging.disable(logging.CRITICAL)
    command = next(handler for name, handler in _COMMANDS if arguments[name])
    try:
        return command(arguments)
    except cyclehom.solvers.StructuralAssertionFailed as exc:
        print("Internal assertion failed: {}".format(exc), file=sys.stderr)
        return EXIT_ASSERTION
    except (cyclehom.solvers.SolverError,
            cyclehom.oracle.OracleError,
            cyclehom.instance.InstanceError,
            cyclehom.dimacs.DimacsError,
            cyclehom.hardness.MalformedFormula,
            cyclehom.graph.GraphError,
            UsageError,
            IOError, OSError) as exc:
        print("Error: {}".format(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(_main())
