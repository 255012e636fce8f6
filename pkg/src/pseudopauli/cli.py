"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
error, 3 file I/O error, 4 numerical overflow.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import pauli, verification
from .circuits import CircuitParamsS, CircuitParamsT, build_HT, build_LS, derivative_check, evolve, write_csv
from .errors import GridTooCoarse, PseudoPauliError
from .pseudofermion import PseudofermionParams
from .report import Check, all_passed, render, write_summary
from .xbasis import commutant_dimension, decompose, decompose_HT, decompose_LS, gamma_sets, x_matrices

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_OVERFLOW = 0, 1, 2, 3, 4

COMMANDS = {
    "verify": {"scope"},
    "group": {"file", "preset", "list"},
    "decompose": {"target", "alpha", "mu", "gamma", "b", "d", "r", "path"},
    "commutant": {"indices"},
    "simulate": {"system", "alpha", "mu", "gamma", "b", "d", "r", "psi0", "t_end", "steps"},
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    seed: int = verification.DEFAULT_SEED

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        unknown = set(self.params) - COMMANDS[self.command]
        if unknown:
            raise UsageError(f"unknown keys for {self.command}: {sorted(unknown)}")


_REAL = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def _real(text: str, whole: str) -> float:
    if not _REAL.fullmatch(text):
        raise UsageError(f"bad complex number {whole!r}")
    return float(text)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (no whitespace)."""
    if not text.endswith("i"):
        return complex(_real(text, text), 0.0)
    body = text[:-1]
    # split at the last sign that is neither leading nor part of an exponent
    cut = max((k for k, ch in enumerate(body) if ch in "+-" and k > 0 and body[k - 1] not in "eE"), default=0)
    re_text, im_text = body[:cut], body[cut:]
    im = {"": 1.0, "+": 1.0, "-": -1.0}.get(im_text)
    if im is None:
        im = _real(im_text, text)
    return complex(_real(re_text, text) if re_text else 0.0, im)


def format_complex(z: complex) -> str:
    z = complex(z)
    re_, im = z.real + 0.0, z.imag + 0.0
    return f"{re_:.12g}{'-' if im < 0 else '+'}{abs(im):.12g}i"


def read_matrix_file(path: str | Path) -> np.ndarray:
    entries = [e.strip() for e in Path(path).read_text().replace("\n", ",").split(",") if e.strip()]
    if len(entries) != 16:
        raise UsageError(f"{path}: expected 16 entries, got {len(entries)}")
    return np.array([parse_complex(e) for e in entries]).reshape(4, 4)


# ---------------------------------------------------------------------------

def cmd_verify(cfg: RunConfig, out) -> int:
    checks = verification.run(cfg.params.get("scope", "all"), cfg.seed)
    out.write(render(checks))
    if cfg.output_path:
        write_summary(checks, cfg.output_path)
    return EXIT_OK if all_passed(checks) else EXIT_FAIL


def _preset(name: str) -> list[pauli.PauliElement]:
    if name == "p1":
        return pauli.standard_generators(1)
    if name == "p2":
        return pauli.standard_generators(2)
    if name == "x1-x6":
        return list(x_matrices().pauli_ids[:6])
    gmu, gnu = gamma_sets(PseudofermionParams(np.pi / 2, 0.0, 1.0))
    return pauli.elements_from_matrices(gmu if name == "gamma-mu" else gnu)


def cmd_group(cfg: RunConfig, out) -> int:
    p = cfg.params
    gens = pauli.read_generators(p["file"]) if p.get("file") else _preset(p.get("preset") or "p2")
    G = pauli.generate_group(gens)
    out.write(f"generators {' '.join(pauli.format_pauli(g) for g in gens)}\n")
    out.write(f"order {G.order}\n")
    if p.get("list"):
        for e in G.sorted():
            out.write(pauli.format_pauli(e) + "\n")
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, out, err) -> int:
    p = cfg.params
    target = p["target"]
    if target == "LS":
        dec = decompose_LS(p["alpha"], p["mu"], p["gamma"])
    elif target == "HT":
        dec = decompose_HT(p["b"], p["d"], p["r"])
    else:
        if not p.get("path"):
            raise UsageError("decompose file needs a path")
        dec = decompose(read_matrix_file(p["path"]))

    for k, c in enumerate(dec.coefficients, 1):
        out.write(f"coef {k} {format_complex(c)}\n")
    out.write(f"residual {dec.residual:.3e}\n")
    out.write(f"nonzero_slots {','.join(str(k) for k in sorted(dec.nonzero_slots()))}\n")
    if dec.printed:
        for k, (got, printed, diff) in dec.slot_diffs().items():
            shown = "0" if printed is None else format_complex(printed)
            out.write(f"slot {k} computed {format_complex(got)} printed {shown} diff {diff:.3e}\n")
        worst = max(diff for _, _, diff in dec.slot_diffs().values())
        status = "PASS" if worst <= 1e-12 else "INFO"
        out.write(Check(f"{target}_printed_coefficients", status, worst).line() + "\n")
    if dec.residual > 1e-8:
        err.write(f"warning: target is not in the span of X1..X12 (residual {dec.residual:.3e})\n")
    return EXIT_OK


def cmd_commutant(cfg: RunConfig, out) -> int:
    X = x_matrices()
    idx = cfg.params.get("indices") or list(range(1, 13))
    if any(not 1 <= j <= 12 for j in idx):
        raise UsageError("indices must lie in 1..12")
    dim, basis = commutant_dimension([X[j] for j in idx])
    out.write(f"matrices {','.join(str(j) for j in idx)}\n")
    out.write(f"equations {16 * len(idx)}\n")
    out.write(f"dimension {dim}\n")
    for n, B in enumerate(basis, 1):
        out.write(f"basis {n}\n")
        for row in B:
            out.write("  " + " ".join(repr(z) for z in row) + "\n")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, out, err) -> int:
    p = cfg.params
    steps, t_end = p["steps"], p["t_end"]
    if steps < 2 or not t_end > 0:
        raise UsageError("need --steps >= 2 and --t-end > 0")
    if not cfg.output_path:
        raise UsageError("simulate needs --out")
    if p["system"] == "S":
        L = build_LS(CircuitParamsS(p["alpha"], p["mu"], p["gamma"]))
    else:
        # i dPsi/dt = H_T Psi
        L = -1j * build_HT(CircuitParamsT(p["b"], p["d"], p["r"]))
    psi0 = [parse_complex(s) for s in p["psi0"].split(",")]
    if len(psi0) != 4:
        raise UsageError("--psi0 needs 4 comma-separated complex values")
    times = np.linspace(0.0, t_end, steps)
    try:
        traj = evolve(L, psi0, times)
    except OverflowError as exc:
        err.write(f"overflow: {exc}\n")
        return EXIT_OVERFLOW
    try:
        write_csv(traj, cfg.output_path)
    except OSError as exc:
        err.write(f"cannot write {cfg.output_path}: {exc}\n")
        return EXIT_IO
    out.write(f"wrote {len(times)} rows to {cfg.output_path}\n")
    try:
        out.write(f"derivative_check_residual {derivative_check(traj, L):.3e}\n")
    except GridTooCoarse as exc:
        out.write(f"derivative_check_residual n/a ({exc})\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def _indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudopauli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("scope", nargs="?", default="all", choices=["all", *verification.SUITES])
    v.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)
    v.add_argument("--summary", dest="output_path", help="also write a comma-separated summary here")

    g = sub.add_parser("group", help="generate a Pauli group from generators")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--file", help="one element per line, e.g. -iYX")
    src.add_argument("--preset", choices=["p1", "p2", "x1-x6", "gamma-mu", "gamma-nu"])
    g.add_argument("--list", action="store_true", help="print every element")

    d = sub.add_parser("decompose", help="coefficients in the X1..X12 basis")
    d.add_argument("target", choices=["LS", "HT", "file"])
    d.add_argument("path", nargs="?")
    for name in ("alpha", "mu", "gamma", "b", "d", "r"):
        d.add_argument(f"--{name}", type=float, default=0.0)

    c = sub.add_parser("commutant", help="exact commutant of a subset of X1..X12")
    c.add_argument("--indices", type=_indices, help="comma-separated, default all twelve")

    s = sub.add_parser("simulate", help="write a trajectory as CSV")
    s.add_argument("system", choices=["S", "T"])
    for name in ("alpha", "mu", "gamma", "b", "d", "r"):
        s.add_argument(f"--{name}", type=float, default=0.0)
    s.add_argument("--psi0", required=True, help="4 complex values, e.g. 1,0,0.5-2i,0")
    s.add_argument("--t-end", type=float, required=True)
    s.add_argument("--steps", type=int, required=True, help="number of grid points")
    s.add_argument("--out", dest="output_path")
    s.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "output_path", "seed")}
    return RunConfig(ns.command, params, getattr(ns, "output_path", None),
                     getattr(ns, "seed", verification.DEFAULT_SEED))


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = config_from_args(ns)
        if cfg.command == "verify":
            return cmd_verify(cfg, out)
        if cfg.command == "group":
            return cmd_group(cfg, out)
        if cfg.command == "decompose":
            return cmd_decompose(cfg, out, err)
        if cfg.command == "commutant":
            return cmd_commutant(cfg, out)
        return cmd_simulate(cfg, out, err)
    except (UsageError, PseudoPauliError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
