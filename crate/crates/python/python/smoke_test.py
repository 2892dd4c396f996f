"""Smoke test for the fedvr_py extension.

    pip install --no-build-isolation ./crates/python
    python crates/python/python/smoke_test.py
"""

import math

import fedvr_py as fv


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    if not ok:
        raise SystemExit(1)


grid = fv.LobattoGrid(8)
check("weights sum", abs(sum(grid.weights) - 2.0) < 1e-14)
d = grid.diff_matrix()
slope = [sum(row[j] * x for j, x in enumerate(grid.nodes)) for row in d]
check("D on x", max(abs(s - 1.0) for s in slope) < 1e-12)

morse = fv.fedvr_phase_shift(fv.Potential.morse(), k=0.5, r_max=100.0, n=20)
err = morse.tan_delta_integral - fv.TAN_DELTA_MORSE
check("morse", abs(err) < 1e-8, f"{err:.2e}")

ws = fv.fedvr_phase_shift(fv.Potential.woods_saxon(), r_max=20.0)
check("woods-saxon", abs(ws.tan_delta_integral - fv.TAN_DELTA_WOODS_SAXON) < 1e-8)

free = fv.fedvr_phase_shift(fv.Potential.free(), r_max=20.0, n=12)
check("free", abs(free.tan_delta_match) < 1e-12)
r, psi = free.wavefunction[-1]
check("free wave", abs(psi - math.sin(0.5 * r)) < 1e-10)

num = fv.numerov_phase_shift(fv.Potential.morse(), points=6400)
check("numerov", abs(num.tan_delta_integral - fv.TAN_DELTA_MORSE) < 1e-5, f"{num.tan_delta_integral:.10f}")

nl = fv.nonlocal_phase_shift(fv.Potential.woods_saxon(), beta=0.85, n=130)
check("nonlocal", nl.consistency < 1e-6, f"{nl.tan_delta_match:.8f}")

check("A4", abs(fv.roundoff_bound_nonlocal(130, 15.0) / 1.4e-8 - 1) < 0.05)

try:
    fv.fedvr_phase_shift(fv.Potential.morse(), n=3)
except ValueError as e:
    check("bad order raises", True, str(e))
else:
    check("bad order raises", False)
