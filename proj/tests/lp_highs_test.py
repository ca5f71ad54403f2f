#!/usr/bin/env python3
# Copyright 2026 The softrect Authors
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

"""Loads exported LP files into HiGHS and compares its optima with softrect.

Usage: lp_highs_test.py PATH_TO_SOFTRECT
Exits 77 (skipped) when the highspy module is unavailable.
"""

import json
import math
import os
import subprocess
import sys
import tempfile

try:
    import highspy
except ImportError:
    print("highspy not available, skipping")
    sys.exit(77)

BINARY = sys.argv[1]
TOL = 1e-6


def run(*args, rc=0):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True)
    if proc.returncode != rc:
        sys.exit(f"{args}: rc {proc.returncode}\n{proc.stderr}")
    return proc.stdout


def highs_solve(lp_path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    status = h.readModel(lp_path)
    if status != highspy.HighsStatus.kOk:
        sys.exit(f"HiGHS rejected {lp_path}: {status}")
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kInfeasible:
        return None, None
    if status != highspy.HighsModelStatus.kOptimal:
        sys.exit(f"{lp_path}: unexpected status {h.modelStatusToString(status)}")
    lp = h.getLp()
    values = dict(zip(lp.col_names_, h.getSolution().col_value))
    return h.getInfo().objective_function_value, values


def check_with_softrect(lp_path, values, tmp):
    sol = os.path.join(tmp, "highs.sol")
    with open(sol, "w") as f:
        for name, v in values.items():
            f.write(f"{name} {round(v) if name.startswith(('x_', 'y_')) else repr(v)}\n")
    run("check", "--model", lp_path, "--solution", sol)


def export(tmp, inst, model, *extra):
    path = os.path.join(tmp, f"{model}.lp")
    run("export-mip", "--in", inst, "--model", model, "--out", path, *extra)
    return path


def expect(label, got, want):
    if abs(got - want) > TOL * max(1.0, abs(want)):
        sys.exit(f"{label}: HiGHS {got} != expected {want}")
    print(f"ok  {label}: {got:.10g}")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        micro = os.path.join(tmp, "micro.json")
        with open(micro, "w") as f:
            json.dump({"version": 1, "name": "micro", "L1": "2", "L2": "2",
                       "areas": ["1", "1", "2"]}, f)

        for cuts in ((), ("--cuts",)):
            lp = export(tmp, micro, "peri-max", *cuts)
            obj, values = highs_solve(lp)
            expect(f"micro peri-max {'with' if cuts else 'without'} cuts", obj, 17 / 3)
            check_with_softrect(lp, values, tmp)

        obj, values = highs_solve(export(tmp, micro, "aspect-reform"))
        expect("micro aspect-reform", obj, 1 / math.sqrt(2))

        obj, _ = highs_solve(export(tmp, micro, "aspect-decision", "--phi", "2"))
        if obj is None:
            sys.exit("micro aspect-decision at 2 should be feasible")
        print("ok  micro aspect-decision feasible at 2")
        obj, _ = highs_solve(export(tmp, micro, "aspect-decision", "--phi", "1.5"))
        if obj is not None:
            sys.exit("micro aspect-decision at 1.5 should be infeasible")
        print("ok  micro aspect-decision infeasible at 1.5")

        for seed in range(6):
            inst = os.path.join(tmp, f"g{seed}.json")
            run("gen", "--class", ("U", "MU", "MN")[seed % 3], "--n", "5", "--seed", str(seed),
                "--out", inst)
            want = json.loads(run("solve", "--in", inst, "--objective", "peri-max", "--json"))
            lp = export(tmp, inst, "peri-max", "--cuts")
            obj, values = highs_solve(lp)
            expect(f"seed {seed} peri-max", obj, want["value"])
            check_with_softrect(lp, values, tmp)

            aspect = json.loads(run("solve", "--in", inst, "--objective", "aspect", "--json"))
            phi = aspect["value_exact"]
            feasible, _ = highs_solve(export(tmp, inst, "aspect-decision", "--phi", phi))
            if feasible is None:
                sys.exit(f"seed {seed}: decision infeasible at the optimum {phi}")
            below = f"{aspect['value'] * (1 - 1e-3)!r}"
            infeasible, _ = highs_solve(export(tmp, inst, "aspect-decision", "--phi", below))
            if infeasible is not None:
                sys.exit(f"seed {seed}: decision feasible below the optimum at {below}")
            print(f"ok  seed {seed} aspect-decision brackets {aspect['value']:.10g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
