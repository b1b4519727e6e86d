#!/usr/bin/env python3
"""Solve an LP/MIP file with HiGHS and print the optimal objective.

Prints "objective <value>" on success. Exits 2 when highspy is missing and
3 when the model does not solve to optimality.
"""
import sys

try:
    import highspy
except ImportError:
    print("highspy not available", file=sys.stderr)
    sys.exit(2)


def main(path, time_limit=None):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if time_limit:
        h.setOptionValue("time_limit", float(time_limit))
    if h.readModel(path) != highspy.HighsStatus.kOk:
        print("cannot read " + path, file=sys.stderr)
        return 3
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        print("status " + h.modelStatusToString(h.getModelStatus()), file=sys.stderr)
        return 3
    print("objective %.9g" % h.getInfo().objective_function_value)
    return 0


if __name__ == "__main__":
    if len(sys.argv) not in (2, 3):
        print("usage: solve_lp.py MODEL.lp [TIME_LIMIT_S]", file=sys.stderr)
        sys.exit(1)
    sys.exit(main(*sys.argv[1:]))
