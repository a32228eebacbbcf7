"""Compare the compiled and pure-Python term-dictionary kernels.

The backend is fixed at import time by QUASIMAP_BACKEND, so each
measurement runs in a subprocess.  Two workloads: raw sparse polynomial
products, and a full correlator evaluation through the residue engine.
"""

import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from quasimap import backend
from quasimap.polys import MultiPoly, VarSpace
from quasimap.mirror import disk_invariant_cp2
from quasimap.rational import Rat

space = VarSpace(("z0", "z1", "z2"))

def poly_workload():
    a = MultiPoly.one(space)
    base = (
        MultiPoly.var(space, "z0", 1)
        + MultiPoly.var(space, "z1", 1).scale(Rat(2))
        + MultiPoly.var(space, "z2", 1).scale(Rat(-3))
    )
    for _ in range(13):
        a = a * base
    return a * a

def disk_workload():
    return disk_invariant_cp2(3)

out = {"backend": backend.BACKEND_NAME}
t0 = time.perf_counter(); poly_workload(); out["poly_s"] = time.perf_counter() - t0
t0 = time.perf_counter(); disk_workload(); out["disk_s"] = time.perf_counter() - t0
print(json.dumps(out))
"""


def measure(backend_name):
    env = dict(os.environ, QUASIMAP_BACKEND=backend_name)
    env.pop("QUASIMAP_CACHE_DIR", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER], env=env, capture_output=True, text=True
    )
    if proc.returncode:
        raise RuntimeError(proc.stderr)
    return json.loads(proc.stdout)


def main():
    rows = [measure(name) for name in ("cython", "python")]
    print("%-10s %12s %12s" % ("backend", "poly [s]", "disk [s]"))
    for row in rows:
        print("%-10s %12.4f %12.4f" % (row["backend"], row["poly_s"], row["disk_s"]))
    if rows[0]["backend"] == rows[1]["backend"]:
        print("note: compiled backend unavailable; both runs used the fallback")
    else:
        print(
            "speedup: poly x%.2f, disk x%.2f"
            % (rows[1]["poly_s"] / rows[0]["poly_s"], rows[1]["disk_s"] / rows[0]["disk_s"])
        )


if __name__ == "__main__":
    main()
