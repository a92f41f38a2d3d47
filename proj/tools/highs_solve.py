#!/usr/bin/env python3
"""External backend adapter for HiGHS.

    valveuc solve inst --backend external \
        --solver-cmd "python3 tools/highs_solve.py {mps} {sol} --gap {gap} --time {time}"
"""
import argparse
import math
import os
import sys

import highspy


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mps")
    ap.add_argument("sol")
    ap.add_argument("--gap", type=float, default=0.0)
    ap.add_argument("--time", type=float, default=math.inf)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", args.verbose)
    h.setOptionValue("threads", 1)
    if h.readModel(args.mps) != highspy.HighsStatus.kOk:
        print("cannot read " + args.mps, file=sys.stderr)
        return 1
    h.setOptionValue("mip_rel_gap", max(args.gap, 0.0))
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    if math.isfinite(args.time):
        h.setOptionValue("time_limit", max(args.time, 1.0))

    lp = h.getLp()
    names = list(lp.col_names_)
    start = os.path.join(os.path.dirname(args.mps), "start.sol")
    if os.path.exists(start):
        index = {n: i for i, n in enumerate(names)}
        values = [0.0] * len(names)
        with open(start) as f:
            for line in f:
                parts = line.split()
                if len(parts) == 2 and parts[0] in index:
                    values[index[parts[0]]] = float(parts[1])
        sol = highspy.HighsSolution()
        sol.col_value = values
        sol.value_valid = True
        h.setSolution(sol)

    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kInfeasible:
        print("infeasible", file=sys.stderr)
        return 3
    info = h.getInfo()
    if info.primal_solution_status != 2:  # feasible point available
        print("no feasible solution: " + h.modelStatusToString(status), file=sys.stderr)
        return 2

    x = h.getSolution().col_value
    with open(args.sol, "w") as f:
        f.write("# bound %.17g\n" % info.mip_dual_bound)
        for n, v in zip(names, x):
            f.write("%s %.17g\n" % (n, v))
    return 0


if __name__ == "__main__":
    sys.exit(main())
