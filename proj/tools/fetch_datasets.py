#!/usr/bin/env python3
# Copyright 2026 The fermiml Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Export the WBC and Digits benchmark datasets as plain CSV.

Uses the copies bundled with scikit-learn, so no network access is needed.
Writes data/wbc.csv and data/digits.csv (features first, integer `label`
column last) plus the small golden subsets under tests/data/.
"""
import argparse
import csv
import pathlib

from sklearn.datasets import load_breast_cancer, load_digits


def write(path, features, labels, names):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(names) + ["label"])
        for row, label in zip(features, labels):
            w.writerow([repr(float(v)) for v in row] + [int(label)])


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(root / "data"))
    ap.add_argument("--golden", default=str(root / "tests" / "data"))
    args = ap.parse_args()
    out, golden = pathlib.Path(args.out), pathlib.Path(args.golden)

    wbc = load_breast_cancer()
    names = [n.replace(" ", "_") for n in wbc.feature_names]
    write(out / "wbc.csv", wbc.data, wbc.target, names)
    # every 12th row keeps both classes in a 48-row subset
    write(golden / "wbc_small.csv", wbc.data[::12], wbc.target[::12], names)

    digits = load_digits()
    names = [f"px{i}" for i in range(digits.data.shape[1])]
    write(out / "digits.csv", digits.data, digits.target, names)
    write(golden / "digits_small.csv", digits.data[:40], digits.target[:40], names)


if __name__ == "__main__":
    main()
