#!/usr/bin/env python3
# Copyright 2026 The smc-samplers Authors
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
"""Independent recomputation of the planner substitution examples.

Writes planner_golden.json, or with --check compares against it.
"""

import argparse
import json
import math
import pathlib
import sys


def ceil(x):
    return int(math.ceil(x))


def tau(xi, omega, gamma):
    return ceil(math.log(omega / xi) / gamma)


def standard_moments(eps, eta, T, gamma, chi):
    M = ceil(math.log(8.0 * T / (eta * eta)) * max(18.0 * chi, 1.0 / (2.0 * eps * eps)))
    P = tau(eta / (2.0 * M * T), 2.0, gamma)
    return {"M": M, "P": [P], "J": 1, "cost": T * M * P}


def wastefree_moments(eps, eta, T, M, gamma):
    a = 128.0 / gamma * math.log(32.0 * M * T / eta)
    b = 128.0 / (gamma * eps * eps) * math.log(64.0 * T / eta)
    P = ceil(max(a, b))
    return {"M": M, "P": [P], "J": 1, "cost": T * M * P, "branches": [a, b]}


def greedy_moments(eps, eta, T, M, gamma):
    early = ceil(128.0 / gamma * math.log(32.0 * M * T / eta))
    last = ceil(128.0 / (gamma * eps * eps) * math.log(64.0 * T / eta))
    P = [early] * T + [last]
    return {"M": M, "P": P, "J": 1, "cost": M * sum(P[1:])}


def wastefree_z(eps, T, gamma, M=1):
    P = ceil(2560.0 * T * T * T / (gamma * eps * eps))
    side = ceil(32.0 * math.log(64.0 * M * T) / gamma)
    return {"M": 1, "P": [P], "J": 1, "cost": T * P, "side": side}


def medians_j(T, eta):
    return 12 * ceil(math.log(T / eta)) + 1


def medians_z(eps, eta, T, gamma):
    J = medians_j(T, eta)
    P = ceil(2560.0 * T * T / (eps * eps * gamma))
    return {"M": 1, "P": [P], "J": J, "cost": J * T * P}


def standard_z(eps, eta, T, gamma, variant, c=64.0):
    if variant == "means":
        M, J = ceil(64.0 * T * T * T / (eps * eps)), 1
    else:
        M, J = ceil(c * T * T / (eps * eps)), medians_j(T, eta)
    P = tau(1.0 / (M * T), 2.0, gamma)
    return {"M": M, "P": [P], "J": J, "cost": J * T * M * P}


def golden():
    e = math.e
    cases = [
        {"op": "mixing_time", "args": {"xi": 0.01, "omega": 2.0, "gamma": 0.1},
         "value": tau(0.01, 2.0, 0.1)},
        {"op": "mixing_time", "args": {"xi": 2.0, "omega": 2.0, "gamma": 0.3},
         "value": tau(2.0, 2.0, 0.3)},
        {"op": "mixing_time", "args": {"xi": 0.01, "omega": 2.0, "gamma": 1.0},
         "value": tau(0.01, 2.0, 1.0)},
        {"op": "standard_moments",
         "args": {"epsilon": 1.0, "eta": 0.25, "T": 1, "gamma": 0.1, "chi_bar_sq": 2.0},
         "value": standard_moments(1.0, 0.25, 1, 0.1, 2.0)},
        {"op": "wastefree_moments",
         "args": {"epsilon": 0.3, "eta": 0.25, "T": 10, "M": 4, "gamma": 0.1},
         "value": wastefree_moments(0.3, 0.25, 10, 4, 0.1)},
        {"op": "greedy_moments",
         "args": {"epsilon": 0.3, "eta": 0.25, "T": 10, "M": 4, "gamma": 0.1},
         "value": greedy_moments(0.3, 0.25, 10, 4, 0.1)},
        {"op": "greedy_moments",
         "args": {"epsilon": 1.0, "eta": 0.25, "T": 1, "M": 4, "gamma": 0.1},
         "value": greedy_moments(1.0, 0.25, 1, 4, 0.1)},
        {"op": "wastefree_z", "args": {"epsilon": 2.0, "eta": 0.25, "T": 1, "M": 1, "gamma": 1.0},
         "value": wastefree_z(2.0, 1, 1.0)},
        {"op": "wastefree_z", "args": {"epsilon": 0.5, "eta": 0.25, "T": 3, "M": 1, "gamma": 0.5},
         "value": wastefree_z(0.5, 3, 0.5)},
        {"op": "medians_z", "args": {"epsilon": 0.5, "eta": 1.0 / e, "T": 1, "gamma": 0.5},
         "value": medians_z(0.5, 1.0 / e, 1, 0.5)},
        {"op": "medians_z", "args": {"epsilon": 0.5, "eta": 2.0 / e, "T": 2, "gamma": 0.5},
         "value": medians_z(0.5, 2.0 / e, 2, 0.5)},
        {"op": "standard_z_means", "args": {"epsilon": 1.0, "eta": 0.25, "T": 2, "gamma": 0.1},
         "value": standard_z(1.0, 0.25, 2, 0.1, "means")},
        {"op": "standard_z_medians", "args": {"epsilon": 1.0, "eta": 0.25, "T": 2, "gamma": 0.1},
         "value": standard_z(1.0, 0.25, 2, 0.1, "medians")},
    ]
    return {"cases": cases}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true", help="compare with the frozen file")
    parser.add_argument("--file", default=str(pathlib.Path(__file__).with_name("planner_golden.json")))
    args = parser.parse_args()
    fresh = golden()
    if args.check:
        frozen = json.loads(pathlib.Path(args.file).read_text())
        if frozen != json.loads(json.dumps(fresh)):
            print("planner golden values differ from the frozen file", file=sys.stderr)
            return 1
        print(f"{len(fresh['cases'])} planner golden cases match")
        return 0
    pathlib.Path(args.file).write_text(json.dumps(fresh, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
