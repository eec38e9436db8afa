"""Shadow-set persistence: JSON Lines, one record per line.

Line 1 header: {"version": 1, "n": ..., "T": ..., "seed": ..., "state_desc":
..., "noise": {...}}; then per record {"t": ..., "b": "0101...",
"u": [[theta, phi, lam] x n]}.  The outcome string is written qubit-0
first; angles carry 17 significant digits for lossless round trips.
"""
from __future__ import annotations

import json

import numpy as np

from .records import ShadowSet

FORMAT_VERSION = 1


def save(shadow: ShadowSet, path) -> None:
    prov = shadow.provenance
    header = {
        "version": FORMAT_VERSION,
        "n": shadow.n_qubits,
        "T": shadow.n_records,
        "seed": prov.get("seed"),
        "state_desc": prov.get("state_desc", ""),
        "noise": prov.get("noise", {}),
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for t in range(shadow.n_records):
            rec = {
                "t": t,
                "b": "".join(str(int(b)) for b in shadow.outcomes[t]),
                "u": [[format(a, ".17g") for a in qubit] for qubit in shadow.angles[t]],
            }
            fh.write(json.dumps(rec) + "\n")


def load(path) -> ShadowSet:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError("empty shadow file")
    header = json.loads(lines[0])
    if header.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported shadow file version {header.get('version')}")
    n = int(header["n"])
    n_records = int(header["T"])
    if len(lines) - 1 != n_records:
        raise ValueError("record count does not match header")
    angles = np.empty((n_records, n, 3))
    outcomes = np.empty((n_records, n), dtype=np.uint8)
    for line in lines[1:]:
        rec = json.loads(line)
        t = int(rec["t"])
        bits = rec["b"]
        if len(bits) != n or len(rec["u"]) != n:
            raise ValueError("record does not match header qubit count")
        outcomes[t] = [int(c) for c in bits]
        angles[t] = [[float(v) for v in qubit] for qubit in rec["u"]]
    provenance = {"seed": header.get("seed"), "state_desc": header.get("state_desc"),
                  "noise": header.get("noise", {})}
    return ShadowSet(n, angles, outcomes, provenance)
