"""Synthesize metacyclic Fourier circuits and print the extracted phases as
multiples of 1/m (every phase is an m-th root of unity).

    python3 scripts/metacyclic_phases.py 2,5,4,0 3,7,2,0 2,8,7,4 3,9,4,3
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from qkron.group_ft import apply_phase_correction, synth_metacyclic_ft, verify

DEFAULT_GROUPS = ["2,5,4,0", "3,7,2,0", "2,8,7,4", "3,9,4,3", "2,12,5,6"]


@dataclass
class Config:
    groups: list = field(default_factory=lambda: list(DEFAULT_GROUPS))
    tol: float = 1e-10


def describe(params, tol):
    q, m, r, s = params
    res = synth_metacyclic_ft(q, m, r, s, tol=tol)
    steps = np.round(np.angle(res.extracted_phases) / (2 * np.pi) * m).astype(int) % m
    fixed = verify(apply_phase_correction(res), tol)
    return {
        "params": params,
        "order": q * m,
        "layout": res.circuit.layout.dims,
        "nontrivial_phases": int(np.count_nonzero(steps)),
        "phase_steps": steps.tolist(),
        "corrected_deviation": fixed.max_deviation,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("groups", nargs="*", default=DEFAULT_GROUPS, help="q,m,r,s tuples")
    p.add_argument("--tol", type=float, default=1e-10)
    cfg = Config(**vars(p.parse_args()))
    for text in cfg.groups:
        params = tuple(int(t) for t in text.split(","))
        d = describe(params, cfg.tol)
        print(f"metacyclic{d['params']} order {d['order']} layout {d['layout']}: "
              f"{d['nontrivial_phases']} non-unit phases, corrected deviation {d['corrected_deviation']:.2e}")
        print(f"  phase exponents k (phase = exp(2 pi i k / m)): {d['phase_steps']}")


if __name__ == "__main__":
    main()
