"""Command-line front end.

Verbs::

    qkron synth SPEC [--out PATH] [--inline-dft F1,F2,...]
    qkron verify CIRCUIT SPEC [--tol T] [--up-to-phase]
    qkron matrix SPEC [--out PATH]
    qkron gatecount CIRCUIT

``SPEC`` is a transform or group, e.g. ``haar 3``, ``haar --qubits 3``,
``walsh 4``, ``dft 8 --factors 2,4``, ``d4 8``, ``d4wavelet 4``,
``shuffle 2 3`` or ``group metacyclic 3 7 2 0``.

Exit status: 0 success, 1 verification mismatch, 2 usage, parse, I/O or
dimension errors, 3 group or transform constraint violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import oracles, transforms
from .circuit import Circuit, CircuitError, gate_count, simulate
from .group_ft import compare, synth_group_ft
from .groups import ConstraintError, fourier_oracle, parse_group_spec
from .serialize import deserialize, serialize
from .tensor import DEFAULT_TOL, ShapeError, shuffle_matrix, write_matrix_text

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CONSTRAINT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Target:
    """A parsed transform or group spec."""
    kind: str
    args: tuple
    factors: tuple | None = None
    group: object = None

    def oracle(self) -> np.ndarray:
        k, a = self.kind, self.args
        if k == "haar":
            return oracles.haar_matrix(a[0])
        if k == "walsh":
            return oracles.walsh_matrix(a[0])
        if k == "dft":
            return oracles.dft_matrix(a[0])
        if k == "d4":
            return oracles.d4_scaling_matrix(a[0])
        if k == "shuffle":
            return shuffle_matrix(*a)
        if k == "d4wavelet":
            n = a[0]
            scaling = {i: oracles.d4_scaling_matrix(1 << i) for i in range(2, n + 1)}
            return oracles.wavelet_matrix(scaling, 2, n - 2)
        return fourier_oracle(self.group).matrix

    def synth(self) -> Circuit:
        k, a = self.kind, self.args
        if k == "haar":
            return transforms.synth_haar(a[0])
        if k == "walsh":
            return transforms.synth_walsh(a[0])
        if k == "dft":
            return transforms.synth_dft(self.factors or transforms.prime_factors(a[0]) or [a[0]])
        if k == "d4":
            return transforms.synth_d4_scaling(a[0])
        if k == "shuffle":
            return transforms.synth_shuffle(*a)
        if k == "d4wavelet":
            return transforms.synth_wavelet(transforms.d4_family(), a[0] - 2)
        return synth_group_ft(self.group).circuit


_ARITY = {"haar": 1, "walsh": 1, "dft": 1, "d4": 1, "d4wavelet": 1, "shuffle": 2}


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t)
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def parse_target(tokens, qubits=None, factors=None) -> Target:
    if not tokens:
        raise UsageError("missing transform spec")
    kind, rest = tokens[0], list(tokens[1:])
    if kind == "group":
        try:
            group = parse_group_spec(rest)
        except ConstraintError:
            raise
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return Target("group", tuple(rest), group=group)
    if kind not in _ARITY:
        raise UsageError(f"unknown transform {kind!r}")
    if qubits is not None:
        if kind not in ("haar", "walsh", "d4wavelet"):
            raise UsageError("--qubits applies to haar, walsh and d4wavelet")
        rest = [str(qubits)] + rest
    if len(rest) != _ARITY[kind]:
        raise UsageError(f"{kind} takes {_ARITY[kind]} integer parameter(s)")
    try:
        args = tuple(int(t) for t in rest)
    except ValueError as exc:
        raise UsageError(f"bad parameters for {kind}: {rest}") from exc
    fac = _int_list(factors) if factors else None
    if fac is not None and kind != "dft":
        raise UsageError("--factors applies to dft only")
    if fac is not None and int(np.prod(fac)) != args[0]:
        raise UsageError(f"factors {fac} do not multiply to {args[0]}")
    return Target(kind, args, fac)


def _domain(fn):
    """Run a builder, reporting rejected parameters as constraint violations."""
    try:
        return fn()
    except (ConstraintError, UsageError):
        raise
    except ValueError as exc:
        raise ConstraintError(str(exc)) from exc


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(path, "w") as fh:
        fh.write(text)


def _read_circuit(path: str) -> Circuit:
    try:
        with open(path) as fh:
            return deserialize(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except CircuitError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_synth(ns) -> int:
    target = parse_target(ns.spec, ns.qubits, ns.factors)
    circ = _domain(target.synth)
    if ns.inline_dft:
        circ = transforms.inline_dft(circ, _int_list(ns.inline_dft))
    _write(serialize(circ), ns.out)
    return EXIT_OK


def cmd_verify(ns) -> int:
    circ = _read_circuit(ns.circuit)
    target = parse_target(ns.spec, ns.qubits, ns.factors)
    oracle = _domain(target.oracle)
    try:
        passed, dev, phases = compare(simulate(circ), oracle, ns.up_to_phase, ns.tol)
    except ShapeError as exc:
        raise UsageError(str(exc)) from exc
    report = {
        "spec": " ".join(ns.spec),
        "dimension": oracle.shape[0],
        "equivalence": "up_to_phase" if ns.up_to_phase else "exact",
        "passed": passed,
        "max_deviation": _fmt(dev),
        "gate_counts": gate_count(circ).as_dict(),
    }
    if phases is not None:
        report["phases"] = [f"{_fmt(z.real)},{_fmt(z.imag)}" for z in phases]
    print(json.dumps(report, indent=1))
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_matrix(ns) -> int:
    target = parse_target(ns.spec, ns.qubits, ns.factors)
    _write(write_matrix_text(_domain(target.oracle)), ns.out)
    return EXIT_OK


def cmd_gatecount(ns) -> int:
    rep = gate_count(_read_circuit(ns.circuit))
    print(json.dumps(rep.as_dict(), indent=1))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qkron", description="Synthesize and verify transform circuits.")
    sub = p.add_subparsers(dest="verb", required=True)

    def spec_opts(sp):
        sp.add_argument("--qubits", type=int, help="qubit count for haar, walsh and d4wavelet")
        sp.add_argument("--factors", help="radix factor list for dft, e.g. 2,4")

    s = sub.add_parser("synth", help="write a circuit document")
    s.add_argument("spec", nargs="+")
    spec_opts(s)
    s.add_argument("--out")
    s.add_argument("--inline-dft", help="expand F_N payload gates into radix-split DFTs over these factors")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="compare a circuit with an oracle")
    v.add_argument("circuit")
    v.add_argument("spec", nargs="+")
    spec_opts(v)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--up-to-phase", action="store_true")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix", help="write an oracle matrix")
    m.add_argument("spec", nargs="+")
    spec_opts(m)
    m.add_argument("--out")
    m.set_defaults(func=cmd_matrix)

    g = sub.add_parser("gatecount", help="count gates in a circuit document")
    g.add_argument("circuit")
    g.set_defaults(func=cmd_gatecount)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return ns.func(ns)
    except ConstraintError as exc:
        print(f"constraint violated: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
