#!/usr/bin/env python3
# Copyright 2026 The evplace Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Solves a fixed-format MPS file with scipy's HiGHS backend.

Usage: mps_solve.py INPUT.mps OUTPUT.json [--time-limit SECONDS] [--gap FRACTION]

Reads the MPS subset this toolkit emits (N/L/G/E rows, INTORG markers, RHS,
empty RANGES, LO/UP/FX/FR/MI/PL/BV bounds) and writes a JSON solution:
{"status": ..., "objective": ..., "dual_bound": ..., "variables": {...}}.
"""

import argparse
import json
import math
import sys

import numpy as np
from scipy import optimize, sparse


def parse_mps(path):
    rows = []  # (name, sense) excluding the objective
    obj_row = None
    cols = {}  # name -> {row_name: coef}
    integer = {}
    order = []
    rhs = {}
    bounds = {}  # name -> [lo, up]
    section = None
    in_integer = False
    with open(path) as f:
        for raw in f:
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("*"):
                continue
            if line[0] not in " \t":
                section = line.split()[0]
                continue
            fields = line.split()
            if section == "ROWS":
                sense, name = fields[0], fields[1]
                if sense == "N":
                    if obj_row is None:
                        obj_row = name
                    continue
                rows.append((name, sense))
            elif section == "COLUMNS":
                if len(fields) >= 3 and fields[1] == "'MARKER'":
                    in_integer = fields[2] == "'INTORG'"
                    continue
                name = fields[0]
                if name not in cols:
                    cols[name] = {}
                    integer[name] = in_integer
                    order.append(name)
                for i in range(1, len(fields) - 1, 2):
                    cols[name][fields[i]] = float(fields[i + 1])
            elif section == "RHS":
                for i in range(1, len(fields) - 1, 2):
                    rhs[fields[i]] = float(fields[i + 1])
            elif section == "RANGES":
                raise ValueError("RANGES entries are not supported")
            elif section == "BOUNDS":
                kind, name = fields[0], fields[2]
                if name not in bounds:
                    bounds[name] = [0.0, math.inf]
                value = float(fields[3]) if len(fields) > 3 else None
                if kind == "LO":
                    bounds[name][0] = value
                elif kind == "UP":
                    bounds[name][1] = value
                elif kind == "FX":
                    bounds[name] = [value, value]
                elif kind == "FR":
                    bounds[name] = [-math.inf, math.inf]
                elif kind == "MI":
                    bounds[name][0] = -math.inf
                elif kind == "PL":
                    bounds[name][1] = math.inf
                elif kind == "BV":
                    bounds[name] = [0.0, 1.0]
                else:
                    raise ValueError(f"unsupported bound type {kind}")
    if obj_row is None:
        raise ValueError("no objective row")
    return rows, obj_row, cols, integer, order, rhs, bounds


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mps")
    ap.add_argument("out")
    ap.add_argument("--time-limit", type=float, default=None)
    ap.add_argument("--gap", type=float, default=None)
    args = ap.parse_args()

    rows, obj_row, cols, integer, order, rhs, bounds = parse_mps(args.mps)
    n = len(order)
    col_index = {name: j for j, name in enumerate(order)}
    c = np.zeros(n)
    lo = np.zeros(n)
    up = np.full(n, math.inf)
    integrality = np.zeros(n)
    for name, j in col_index.items():
        c[j] = cols[name].get(obj_row, 0.0)
        if name in bounds:
            lo[j], up[j] = bounds[name]
        integrality[j] = 1 if integer[name] else 0

    data, ri, ci = [], [], []
    bl = np.full(len(rows), -math.inf)
    bu = np.full(len(rows), math.inf)
    row_index = {rname: i for i, (rname, _) in enumerate(rows)}
    for i, (rname, sense) in enumerate(rows):
        b = rhs.get(rname, 0.0)
        if sense in ("L", "E"):
            bu[i] = b
        if sense in ("G", "E"):
            bl[i] = b
    for name, entries in cols.items():
        j = col_index[name]
        for rname, coef in entries.items():
            if rname == obj_row:
                continue
            data.append(coef)
            ri.append(row_index[rname])
            ci.append(j)

    constraints = None
    if rows:
        a = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))
        constraints = optimize.LinearConstraint(a, bl, bu)

    options = {}
    if args.time_limit is not None:
        options["time_limit"] = args.time_limit
    if args.gap is not None:
        options["mip_rel_gap"] = args.gap
    res = optimize.milp(
        c,
        constraints=constraints,
        bounds=optimize.Bounds(lo, up),
        integrality=integrality,
        options=options,
    )

    status_map = {0: "optimal", 1: "feasible", 2: "infeasible", 3: "unbounded"}
    status = status_map.get(res.status, "error")
    out = {"status": status}
    if res.x is not None:
        out["objective"] = float(res.fun)
        dual = getattr(res, "mip_dual_bound", None)
        out["dual_bound"] = float(dual) if dual is not None else float(res.fun)
        out["variables"] = {name: float(res.x[col_index[name]]) for name in order}
    elif status == "error":
        print(res.message, file=sys.stderr)
        return 1
    with open(args.out, "w") as f:
        json.dump(out, f, indent=1, sort_keys=True)
        f.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
