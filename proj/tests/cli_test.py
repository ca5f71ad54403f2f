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

"""End-to-end checks of the softrect command line.

Usage: cli_test.py PATH_TO_SOFTRECT
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
import xml.etree.ElementTree as ET

BINARY = None

MICRO = {"version": 1, "name": "micro", "L1": "2", "L2": "2", "areas": ["1", "1", "2"]}


def run(*args, check_rc=None):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True)
    if check_rc is not None and proc.returncode != check_rc:
        raise AssertionError(
            f"{args}: rc {proc.returncode} != {check_rc}\nstdout: {proc.stdout}\nstderr: {proc.stderr}")
    return proc


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name
        self.micro = self.path("micro.json")
        with open(self.micro, "w") as f:
            json.dump(MICRO, f)

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def solve_json(self, *args):
        return json.loads(run("solve", *args, "--json", check_rc=0).stdout)

    def test_solve_peri_sum_micro(self):
        out = self.solve_json("--in", self.micro, "--objective", "peri-sum")
        self.assertEqual(out["value_exact"], "14")
        self.assertEqual(out["partition"], [[1, 2], [3]])
        text = run("solve", "--in", self.micro, "--objective", "peri-sum", check_rc=0).stdout
        self.assertIn("value: 14\n", text)
        self.assertIn("partition: {{1,2},{3}}\n", text)

    def test_solve_aspect_binary_search_micro(self):
        out = self.solve_json("--in", self.micro, "--objective", "aspect", "--method", "binsearch")
        self.assertEqual(out["value"], 2.0)
        self.assertEqual(out["stats"]["iterations"], 7)
        self.assertEqual(out["stats"]["gap"], 0.01)
        self.assertLess(out["stats"]["phi_up"] - out["stats"]["phi_low"], 0.01)

    def test_solve_peri_max_methods_agree(self):
        bb = self.solve_json("--in", self.micro, "--objective", "peri-max")
        brute = self.solve_json("--in", self.micro, "--objective", "peri-max", "--method", "brute")
        self.assertEqual(bb["value_exact"], "17/3")
        self.assertEqual(brute["value_exact"], "17/3")

    def test_usage_errors(self):
        run("solve", "--in", self.micro, "--objective", "peri-max", "--method", "clws", check_rc=2)
        run("solve", "--in", self.micro, "--objective", "peri-sum", "--method", "bb", check_rc=2)
        run("solve", "--in", self.micro, "--objective", "peri-sum", "--frobnicate", check_rc=2)
        run("solve", "--in", self.micro, "--objective", "volume", check_rc=2)
        run("nonsense", check_rc=2)
        run(check_rc=2)
        run("export-mip", "--in", self.micro, "--model", "aspect-decision", check_rc=2)
        run("export-mip", "--in", self.micro, "--model", "peri-max", "--phi", "2", check_rc=2)
        run("export-mip", "--in", self.micro, "--model", "aspect-decision", "--phi", "0.5",
            check_rc=2)

    def test_validation_errors(self):
        bad = self.path("bad.json")
        with open(bad, "w") as f:
            json.dump({**MICRO, "areas": ["1", "1", "1"]}, f)
        proc = run("solve", "--in", bad, "--objective", "peri-sum", check_rc=3)
        self.assertIn("area-sum mismatch", proc.stderr)
        self.assertEqual(proc.stdout, "")
        with open(bad, "w") as f:
            f.write("{not json")
        run("solve", "--in", bad, "--objective", "peri-sum", check_rc=3)
        run("solve", "--in", self.path("missing.json"), "--objective", "peri-sum", check_rc=3)
        part = self.path("p.json")
        with open(part, "w") as f:
            f.write("[[1,2],[2,3]]")
        proc = run("eval", "--in", self.micro, "--partition", part, check_rc=3)
        self.assertIn("rectangle 2 appears twice", proc.stderr)

    def test_solve_eval_round_trip(self):
        for seed, cls in ((1, "U"), (2, "MU"), (3, "MN")):
            inst = self.path(f"g{seed}.json")
            run("gen", "--class", cls, "--n", "7", "--seed", str(seed), "--out", inst, check_rc=0)
            for objective, method in (("peri-sum", "clws"), ("peri-max", "bb"),
                                      ("aspect", "bb"), ("aspect", "binsearch")):
                part = self.path("part.json")
                out = self.solve_json("--in", inst, "--objective", objective, "--method", method,
                                      "--partition-out", part)
                ev = json.loads(run("eval", "--in", inst, "--partition", part, "--objective",
                                    objective, "--json", check_rc=0).stdout)
                self.assertEqual(ev["value_exact"], out["value_exact"])
                self.assertEqual(ev["partition"], out["partition"])

    def test_determinism(self):
        a = run("gen", "--class", "MN", "--n", "10", "--seed", "77", check_rc=0).stdout
        b = run("gen", "--class", "MN", "--n", "10", "--seed", "77", check_rc=0).stdout
        self.assertEqual(a, b)
        self.assertEqual(json.loads(a)["meta"]["prng"], "mt19937_64")
        inst = self.path("d.json")
        with open(inst, "w") as f:
            f.write(a)
        lp1 = run("export-mip", "--in", inst, "--model", "aspect-reform", check_rc=0).stdout
        lp2 = run("export-mip", "--in", inst, "--model", "aspect-reform", check_rc=0).stdout
        self.assertEqual(lp1, lp2)
        s1 = self.solve_json("--in", inst, "--objective", "aspect", "--method", "binsearch")
        s2 = self.solve_json("--in", inst, "--objective", "aspect", "--method", "binsearch")
        for s in (s1, s2):
            del s["stats"]["time_s"]
        self.assertEqual(s1, s2)

    def test_export_counts_rows(self):
        lp = self.path("m.lp")
        run("export-mip", "--in", self.micro, "--model", "peri-max", "--cuts", "--out", lp,
            check_rc=0)
        with open(lp) as f:
            lines = f.read().splitlines()
        rows = lines[lines.index("Subject To") + 1:lines.index("Bounds")]
        self.assertEqual(len([r for r in rows if r.startswith(" ") and ":" in r]), 86)
        self.assertIn("\\ cuts: yes", lines)

    def test_check(self):
        lp = self.path("m.lp")
        run("export-mip", "--in", self.micro, "--model", "peri-max", "--cuts", "--out", lp,
            check_rc=0)
        values = {f"x_{i}_{k}": 0 for i in range(1, 4) for k in range(1, 4)}
        values.update({f"w_{i}_{k}": 0 for i in range(1, 4) for k in range(1, 4)})
        values.update({"y_1": 1, "y_2": 1, "y_3": 0, "x_1_1": 1, "x_2_1": 1, "x_3_2": 1,
                       "w_1_1": 1, "w_2_1": 1, "w_3_2": 2, "phi": 6})
        sol = self.path("m.sol")

        def write(vals):
            with open(sol, "w") as f:
                f.write("# hand-made solution\n")
                for k, v in vals.items():
                    f.write(f"{k} {v}\n")

        write(values)
        out = json.loads(run("check", "--model", lp, "--solution", sol, "--json",
                             check_rc=0).stdout)
        self.assertTrue(out["feasible"])
        self.assertEqual(out["objective"], 6.0)
        write({**values, "phi": "5.9"})
        out = json.loads(run("check", "--model", lp, "--solution", sol, "--json",
                             check_rc=1).stdout)
        # Only rectangle 3 (2 x 1, perimeter 6) exceeds 5.9.
        self.assertEqual([v["name"] for v in out["violations"]], ["perim_3_2"])
        write({**values, "phi": "3.9"})
        out = json.loads(run("check", "--model", lp, "--solution", sol, "--json",
                             check_rc=1).stdout)
        self.assertEqual(sorted(v["name"] for v in out["violations"]),
                         ["perim_1_1", "perim_2_1", "perim_3_2"])
        write({**values, "z_1": 0})
        run("check", "--model", lp, "--solution", sol, check_rc=3)

    def test_time_limit_exit_code(self):
        inst = self.path("big.json")
        run("gen", "--class", "U", "--n", "60", "--seed", "5", "--out", inst, check_rc=0)
        proc = run("solve", "--in", inst, "--objective", "peri-max", "--time-limit", "0.2",
                   "--json", check_rc=4)
        out = json.loads(proc.stdout)
        self.assertEqual(out["stats"]["status"], "time-limit")
        self.assertLessEqual(out["stats"]["lb"], out["stats"]["ub"])

    def test_bench(self):
        bench_dir = self.path("bench")
        os.mkdir(bench_dir)
        for seed in range(3):
            run("gen", "--class", "U", "--n", "6", "--seed", str(seed), "--out",
                os.path.join(bench_dir, f"i{seed}.json"), check_rc=0)
        csv_path = self.path("bench.csv")
        run("bench", "--dir", bench_dir, "--solvers", "clws,aspect-binsearch", "--time-limit",
            "10", "--jobs", "2", "--out", csv_path, check_rc=0)
        with open(csv_path) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], "name,n,solver,nodes,time_s,lb,ub,iters,status")
        self.assertEqual(len(lines), 7)
        names = [line.split(",")[0] for line in lines[1:]]
        self.assertEqual(names, ["U-6-0", "U-6-0", "U-6-1", "U-6-1", "U-6-2", "U-6-2"])
        for line in lines[1:]:
            fields = line.split(",")
            self.assertEqual(fields[8], "optimal")
            if fields[2] == "clws":
                self.assertEqual(fields[5], fields[6])
                self.assertEqual(fields[7], "")
        run("bench", "--dir", bench_dir, "--solvers", "cplex", check_rc=2)

    def test_render(self):
        part = self.path("p.json")
        with open(part, "w") as f:
            f.write("[[1,2],[3]]")
        svg_path = self.path("m.svg")
        run("render", "--in", self.micro, "--partition", part, "--out", svg_path, check_rc=0)
        root = ET.parse(svg_path).getroot()
        ns = {"s": "http://www.w3.org/2000/svg"}
        self.assertEqual(len(root.findall(".//s:rect[@class='cell']", ns)), 3)
        self.assertEqual(len(root.findall(".//s:line[@class='hcut']", ns)), 1)
        self.assertEqual(len(root.findall(".//s:line[@class='vcut']", ns)), 1)
        self.assertEqual(len(root.findall(".//s:text", ns)), 3)
        again = run("render", "--in", self.micro, "--partition", part, check_rc=0).stdout
        with open(svg_path) as f:
            self.assertEqual(f.read(), again)


if __name__ == "__main__":
    BINARY = sys.argv.pop(1)
    unittest.main(verbosity=2)
