#!/usr/bin/env python3
"""Solve emitted LP-format decision models with scipy's MILP solver.

Usage:
  lp_milp_check.py --probe            exit 0 iff a MILP solver is importable
  lp_milp_check.py FILE [FILE ...]    print the optimum (0 or 1) per file

Only the LP subset produced by the toolkit's emitter is understood: a
"Maximize" section with objective x, "Subject To" rows using <= or =,
a "Binary" block, and "End".
"""

import sys


def parse_lp(text):
    lines = text.splitlines()
    section = None
    rows = []
    binaries = []
    for line in lines:
        stripped = line.strip()
        if stripped == "Maximize":
            section = "obj"
            continue
        if stripped == "Subject To":
            section = "rows"
            continue
        if stripped == "Binary":
            section = "bin"
            continue
        if stripped == "End":
            break
        if not stripped:
            continue
        if section == "rows":
            if line.startswith("    "):  # continuation of the previous row
                rows[-1] += " " + stripped
            else:
                rows.append(stripped)
        elif section == "bin":
            binaries.append(stripped)

    parsed_rows = []
    for row in rows:
        name, expr = row.split(":", 1)
        tokens = expr.split()
        sense = None
        rhs = None
        coeffs = {}
        sign = 1.0
        pending = 1.0
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if tok in ("<=", ">=", "="):
                sense = tok
                rhs = float(tokens[i + 1])
                break
            if tok == "+":
                sign, pending = 1.0, 1.0
            elif tok == "-":
                sign, pending = -1.0, 1.0
            else:
                try:
                    pending = float(tok)
                except ValueError:
                    coeffs[tok] = coeffs.get(tok, 0.0) + sign * pending
                    sign, pending = 1.0, 1.0
            i += 1
        if sense is None:
            raise ValueError(f"row without sense: {name}")
        parsed_rows.append((coeffs, sense, rhs))
    return parsed_rows, binaries


def solve(path):
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    with open(path) as handle:
        rows, binaries = parse_lp(handle.read())
    index = {name: k for k, name in enumerate(binaries)}
    n = len(binaries)
    c = np.zeros(n)
    c[index["x"]] = -1.0  # maximize x

    constraints = []
    for coeffs, sense, rhs in rows:
        a = np.zeros(n)
        for name, value in coeffs.items():
            a[index[name]] += value
        if sense == "<=":
            constraints.append(LinearConstraint(a[None, :], -np.inf, rhs))
        elif sense == ">=":
            constraints.append(LinearConstraint(a[None, :], rhs, np.inf))
        else:
            constraints.append(LinearConstraint(a[None, :], rhs, rhs))

    result = milp(
        c,
        constraints=constraints,
        bounds=Bounds(0, 1),
        integrality=np.ones(n),
    )
    if result.status != 0:
        raise RuntimeError(f"solver status {result.status} on {path}")
    return int(round(-result.fun))


def main(argv):
    if len(argv) >= 2 and argv[1] == "--probe":
        try:
            from scipy.optimize import milp  # noqa: F401
        except Exception:
            return 1
        return 0
    if len(argv) < 2:
        print(__doc__, file=sys.stderr)
        return 2
    for path in argv[1:]:
        print(solve(path))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
