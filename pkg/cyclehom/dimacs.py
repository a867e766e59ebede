# -*- coding: utf-8 -*-

"""
    Reads and writes CNF formulas in the DIMACS text format.

    API designed to mirror that of the built-in JSON module: ``loads``
    parses a string and ``dumps`` produces one.

    Literals are non-zero integers; ``-x`` is the negation of variable
    ``x``. Clauses are terminated by ``0`` and may span lines.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import six


class DimacsError(ValueError):
    """Raised when DIMACS text cannot be parsed."""


def loads(src):
    """Parse DIMACS CNF text.

    Comment lines (``c ...``) and ``%`` trailers are skipped.

    :raises DimacsError: if the problem line is missing or malformed, a
        literal is out of range, or the clause count disagrees with the
        problem line.

    :returns: a two-item tuple of the variable count and a list of
        clauses, each a tuple of literals in input order.
    """
    variable_count = None
    declared_clauses = None
    clauses = []
    current = []
    for line_number, line in enumerate(src.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            fields = line.split()
            if (variable_count is not None or len(fields) != 4
                    or fields[1] != "cnf"):
                raise DimacsError(
                    "Bad problem line {}: {!r}".format(line_number, line))
            try:
                variable_count, declared_clauses = \
                    int(fields[2]), int(fields[3])
            except ValueError as exc:
                six.raise_from(DimacsError(
                    "Bad problem line {}: {!r}".format(line_number, line)),
                    exc)
            continue
        if variable_count is None:
            raise DimacsError("Clause before problem line")
        for token in line.split():
            try:
                literal = int(token)
            except ValueError as exc:
                six.raise_from(DimacsError(
                    "Bad literal {!r} on line {}".format(token, line_number)),
                    exc)
            if literal == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(literal) > variable_count:
                raise DimacsError(
                    "Literal {} out of range on line {}".format(
                        literal, line_number))
            else:
                current.append(literal)
    if variable_count is None:
        raise DimacsError("Missing problem line")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != declared_clauses:
        raise DimacsError("Problem line declares {} clauses but {} "
                          "given".format(declared_clauses, len(clauses)))
    return variable_count, clauses


def dumps(variable_count, clauses, comments=()):
    """Format a formula as DIMACS CNF text."""
    lines = ["c {}".format(comment) for comment in comments]
    lines.append("p cnf {} {}".format(variable_count, len(clauses)))
    for clause in clauses:
        lines.append(" ".join(str(literal) for literal in clause) + " 0")
    return "\n".join(lines) + "\n"
