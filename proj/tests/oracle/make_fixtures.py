# SPDX-License-Identifier: Apache-2.0
#
# cransim: downlink simulator for clustered cloud-RAN antenna domains
# Copyright (C) 2026 The cransim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Independent reference values and greedy-loop fixtures for the C++ test suite.

Run from the repository root:  python3 tests/oracle/make_fixtures.py
Writes tests/fixtures/oracle.json. The file is committed; tests only read it.
"""

import json
import math
from pathlib import Path

import numpy as np


def path_loss_db(d, slope=37.6):
    return 36.3 + slope * math.log10(d)


def rician(k):
    return math.sqrt(k / (k + 1.0)), math.sqrt(1.0 / (2.0 * k + 2.0))


def associate(mag2, n_rrh, per_rrh):
    """mag2[n][k]: channel metric of user k toward RRH n."""
    n_users = len(mag2[0]) if n_rrh else 0
    unassigned = list(range(n_users))
    served = []
    for n in range(n_rrh):
        ranked = sorted(unassigned, key=lambda k: (-mag2[n][k], k))
        take = ranked[:per_rrh]
        served.append(take)
        unassigned = [k for k in unassigned if k not in take]
    return served


def cluster(score, n_rrh, n_clusters, size):
    """score[i][j] (i <= j) summed over the members of a candidate set."""
    def value(members):
        m = sorted(members)
        return sum(score[a][b] for i, a in enumerate(m) for b in m[i:])

    left = list(range(n_rrh))
    out = []
    for c in range(n_clusters):
        if len(left) == size:
            out.append(sorted(left))
            left = []
            break
        cur = []
        while len(cur) < size:
            best, best_val = None, None
            for r in left:
                v = value(cur + [r])
                if best_val is None or v > best_val:
                    best, best_val = r, v
            cur.append(best)
            left.remove(best)
        out.append(sorted(cur))
    return out


def main():
    rng = np.random.default_rng(20260516)
    fx = {}
    fx["path_loss_db"] = {str(d): path_loss_db(d) for d in (1, 10, 100)}
    fx["rician"] = {str(k): list(rician(k)) for k in (0.0, 1.0, 3.0)}
    fx["tx_corr_within_lag2"] = 0.5 ** 2
    fx["tx_corr_across_dmin"] = (0.5 ** 4) ** math.ceil(1.0)
    fx["rx_corr_2p5_dmin"] = 0.5 ** math.ceil(2.5)
    fx["mean_path_gain_1m"] = 10 ** (-36.3 / 10)
    fx["adjusted_k48_pf100"] = 100.0 * (14000.0 - 48 * 100.0) / 14000.0
    fx["sum_rate_1_3"] = math.log2(2.0) + math.log2(4.0)

    assoc = []
    for i in range(60):
        n_rrh = int(rng.integers(1, 7))
        m = int(rng.integers(1, 4))
        j = int(rng.integers(1, m + 1))
        k = int(rng.integers(0, n_rrh * j + 1))
        re = rng.integers(-3, 4, size=(k, n_rrh * m))
        im = rng.integers(-3, 4, size=(k, n_rrh * m))
        mag2 = [[int(sum(re[u, n * m + a] ** 2 + im[u, n * m + a] ** 2 for a in range(m))) for u in range(k)]
                for n in range(n_rrh)]
        assoc.append({"n_rrh": n_rrh, "m_ant": m, "per_rrh": j, "re": re.tolist(), "im": im.tolist(),
                      "served": associate(mag2, n_rrh, j)})
    fx["association"] = assoc

    clus = []
    shapes = [(2, 1), (4, 2), (6, 2), (6, 3), (6, 1), (6, 6), (3, 1), (4, 1)]
    for i in range(64):
        n_rrh, size = shapes[i % len(shapes)]
        raw = rng.integers(0, 6, size=(n_rrh, n_rrh))
        score = np.triu(raw).tolist()
        clus.append({"n_rrh": n_rrh, "cluster_size": size, "score": score,
                     "clusters": cluster(score, n_rrh, n_rrh // size, size)})
    fx["clustering"] = clus

    out = Path(__file__).resolve().parent.parent / "fixtures" / "oracle.json"
    out.write_text(json.dumps(fx, indent=1) + "\n")


if __name__ == "__main__":
    main()
