"""Gate counts of the radix-2 DFT circuit against n^2.

    python3 scripts/dft_gate_scaling.py --max-qubits 10
"""

import argparse
import json
from dataclasses import asdict, dataclass

from qkron.circuit import gate_count, simulate
from qkron.oracles import dft_matrix
from qkron.tensor import max_abs
from qkron.transforms import synth_dft


@dataclass
class Config:
    min_qubits: int = 2
    max_qubits: int = 8
    check_matrix_up_to: int = 8


def run(cfg: Config) -> list[dict]:
    rows = []
    for n in range(cfg.min_qubits, cfg.max_qubits + 1):
        circ = synth_dft([2] * n)
        rep = gate_count(circ)
        row = {
            "qubits": n,
            "gates": rep.total,
            "phase_pairs": rep.counts["phase_pair"],
            "estimate": rep.controlled_op_estimate,
            "estimate_over_n2": round(rep.controlled_op_estimate / n ** 2, 4),
        }
        if n <= cfg.check_matrix_up_to:
            row["max_deviation"] = float(f"{max_abs(simulate(circ) - dft_matrix(2 ** n)):.3e}")
        rows.append(row)
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, value in asdict(Config()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=value)
    cfg = Config(**vars(p.parse_args()))
    print(f"{'n':>3} {'gates':>6} {'phase':>6} {'estimate':>9} {'est/n^2':>8} {'max dev':>10}")
    for row in run(cfg):
        print(f"{row['qubits']:>3} {row['gates']:>6} {row['phase_pairs']:>6} {row['estimate']:>9} "
              f"{row['estimate_over_n2']:>8} {row.get('max_deviation', '-'):>10}")
    print(json.dumps(asdict(cfg)))


if __name__ == "__main__":
    main()
