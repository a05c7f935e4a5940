#!/usr/bin/env python3
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plot a `secest sweep` CSV: expected error variances against mu."""

import argparse
import csv
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", help="output of `secest sweep`")
    parser.add_argument("-o", "--output", default="sweep.png")
    args = parser.parse_args()

    with open(args.csv, newline="") as f:
        rows = list(csv.DictReader(f))
    mu = [float(r["mu"]) for r in rows]
    col = lambda name: [float(r[name]) for r in rows]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(mu, col("expected_legit"), label="legitimate user")
    ax.plot(mu, col("expected_eaves"), label="eavesdropper")
    ax.axhline(float(rows[0]["p_op"]), color="k", lw=0.8, label="open loop")
    if "mc_legit" in rows[0]:
        ax.errorbar(mu, col("mc_legit"), yerr=col("mc_legit_ci"), fmt=".", ms=3, label="MC legitimate")
        ax.errorbar(mu, col("mc_eaves"), yerr=col("mc_eaves_ci"), fmt=".", ms=3, label="MC eavesdropper")
    mu_op = float(rows[0]["mu_op"])
    if not math.isnan(mu_op):
        ax.axvline(mu_op, color="gray", ls=":", label=f"mu_op = {mu_op:.3f}")
    ax.set_xlabel("mu")
    ax.set_ylabel("expected error variance")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
