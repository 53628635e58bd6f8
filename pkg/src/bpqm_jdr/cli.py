"""Command-line front end: sweeps, link budgets, circuit emission and single runs."""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from . import capacity, receiver, transduction
from .channel import channel_from_mean_photon, helstrom_binary_error
from .circuit import build_first_bit_circuit, build_full_circuit, emit_qasm, parse_qasm
from .config import SweepConfig, dump_config, load_config
from .simulator import kernels, run_density, run_exact, sample
from .tree_code import classical_bound

REFERENCE_FULL_COUNT = 81

DECODER_COLUMNS = [
    "N", "bpqm_first_bit", "bpqm_block", "classical_helstrom_first", "classical_helstrom_block",
    "classical_homodyne_block", "srm_limit", "jdr_first", "jdr_block", "mode", "shots", "seed",
]
TRANSDUCTION_COLUMNS = [
    "N", "helstrom", "ipp_error", "optimal_phi_error", "pnr_error_n1", "pnr_error_n2", "pnr_error_n5",
]
LINK_COLUMNS = [
    "link", "eta", "N", "holevo", "achievable_rate", "c1_helstrom", "c1_homodyne", "ratio_homodyne", "ratio_helstrom",
]


def _fmt(value) -> str:
    if isinstance(value, float):
        return "%.12g" % value
    return "" if value is None else str(value)


def _write_csv(out: str, columns, rows, meta: dict) -> None:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    _write_text(out, buf.getvalue())


def _write_text(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _decoder_row(args) -> dict:
    cfg, index, N = args
    N = float(N)
    seed = cfg.seed + index
    noise = cfg.noise if cfg.mode != "exact" else None
    if cfg.mode == "sampled" and not (cfg.p1 or cfg.p2 or cfg.prep_fail):
        noise = None
    first = receiver.evaluate(N, "first_bit", cfg.mode, noise, cfg.shots, seed).error
    block = receiver.evaluate(N, "block", cfg.mode, noise, cfg.shots, seed, cfg.style).error
    p0 = transduction.herald_prob_ipp(math.sqrt(N))
    return {
        "N": N,
        "bpqm_first_bit": first,
        "bpqm_block": block,
        "classical_helstrom_first": classical_bound(N, "helstrom", "first_bit"),
        "classical_helstrom_block": classical_bound(N, "helstrom", "block"),
        "classical_homodyne_block": classical_bound(N, "homodyne", "block"),
        "srm_limit": receiver.srm_block_limit(N),
        "jdr_first": receiver.compose_herald(p0, first),
        "jdr_block": receiver.compose_herald(p0, block),
        "mode": cfg.mode,
        "shots": cfg.shots if cfg.mode == "sampled" else "",
        "seed": seed if cfg.mode == "sampled" else "",
    }


def _pnr_errors(beta: float, orders=(1, 2, 5)) -> list[float]:
    # warm-start each order at the previous optimum so the column stays monotone
    out = []
    previous_phi = None
    for k in orders:
        phi, err = transduction.optimize_phi(beta, k)
        if previous_phi is not None:
            err = min(err, transduction.pnr_receiver_error(beta, previous_phi, k))
        if out:
            err = min(err, out[-1])
        out.append(err)
        previous_phi = phi
    return out


def _transduction_row(args) -> dict:
    _, _, N = args
    N = float(N)
    beta = math.sqrt(N)
    ipp = transduction.overall_error_n0(beta, transduction.phi_inner_product_preserving(beta))
    _, optimal = transduction.optimize_phi(beta, 0)
    n1, n2, n5 = _pnr_errors(beta)
    return {
        "N": N,
        "helstrom": helstrom_binary_error(channel_from_mean_photon(N).sigma),
        "ipp_error": ipp,
        "optimal_phi_error": optimal,
        "pnr_error_n1": n1,
        "pnr_error_n2": n2,
        "pnr_error_n5": n5,
    }


def _sweep(cfg: SweepConfig, row_fn) -> list[dict]:
    tasks = [(cfg, i, N) for i, N in enumerate(cfg.grid())]
    if cfg.jobs == 1:
        return [row_fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(row_fn, tasks))


def _meta(cfg: SweepConfig, **extra) -> dict:
    meta = {
        "command": cfg.command,
        "grid": f"{'log' if cfg.log else 'linear'} {cfg.n_min!r}..{cfg.n_max!r} x{cfg.points}",
        "seed": cfg.seed,
    }
    meta.update(extra)
    return meta


def cmd_sweep_decoder(cfg: SweepConfig) -> int:
    rows = _sweep(cfg, _decoder_row)
    noise = "" if cfg.mode == "exact" else f"p1={cfg.p1!r} p2={cfg.p2!r} prep_fail={cfg.prep_fail!r}"
    _write_csv(cfg.out, DECODER_COLUMNS, rows, _meta(cfg, mode=cfg.mode, noise=noise, style=cfg.style))
    return 0


def cmd_sweep_transduction(cfg: SweepConfig) -> int:
    rows = _sweep(cfg, _transduction_row)
    _write_csv(cfg.out, TRANSDUCTION_COLUMNS, rows, _meta(cfg))
    return 0


def cmd_link_budget(cfg: SweepConfig) -> int:
    rows = capacity.link_budget_table(cfg.links)
    meta = {"command": cfg.command, "constants": "CODATA 2018 h and c"}
    _write_csv(cfg.out, LINK_COLUMNS, rows, meta)
    return 0


def cmd_emit_circuit(cfg: SweepConfig) -> int:
    theta = channel_from_mean_photon(cfg.n).theta
    if cfg.kind == "first_bit":
        circuit = build_first_bit_circuit(theta)
    elif cfg.kind == "full":
        circuit = build_full_circuit(theta, cfg.style)
    else:
        raise ValueError(f"kind must be 'first_bit' or 'full', got {cfg.kind!r}")
    _write_text(cfg.out, emit_qasm(circuit))
    report = sys.stderr if cfg.out == "-" else sys.stdout
    print(f"two-qubit gates: {circuit.two_qubit_count}", file=report)
    if cfg.kind == "full":
        print(f"note: reference hardware decoder uses {REFERENCE_FULL_COUNT} two-qubit gates", file=report)
    return 0


def cmd_simulate(cfg: SweepConfig, qasm: str | None = None, codeword: str | None = None) -> int:
    if qasm is None:
        result = receiver.evaluate(cfg.n, "first_bit" if cfg.kind == "first_bit" else "block", cfg.mode,
                                   cfg.noise if cfg.mode != "exact" else None, cfg.shots, cfg.seed, cfg.style)
        rows = [{"codeword": "".join(map(str, bits)), "error": err} for bits, err in result.per_codeword.items()]
        rows.append({"codeword": "average", "error": result.error})
        meta = {"command": cfg.command, "kind": cfg.kind, "N": repr(cfg.n), "mode": cfg.mode, "seed": cfg.seed,
                "two_qubit_gates": result.two_qubit_gates, "backend": kernels.BACKEND}
        _write_csv(cfg.out, ["codeword", "error"], rows, meta)
        return 0
    with open(qasm, encoding="utf-8") as fh:
        circuit = parse_qasm(fh.read())
    bits = [int(b) for b in (codeword or "0" * circuit.num_qubits)]
    if len(bits) != circuit.num_qubits:
        raise ValueError(f"codeword needs {circuit.num_qubits} bits, got {codeword!r}")
    init = [receiver.symbol_state(channel_from_mean_photon(cfg.n).theta, b) for b in bits]
    if cfg.mode == "exact":
        dist = run_exact(circuit, init).distribution()
    elif cfg.mode == "noisy":
        dist = run_density(circuit, init, cfg.noise)
    else:
        dist = {r: c / cfg.shots for r, c in sample(circuit, init, cfg.shots, cfg.seed, cfg.noise).items()}
    rows = [{"record": "".join(map(str, r)), "probability": float(p)} for r, p in dist.items()]
    _write_csv(cfg.out, ["record", "probability"], rows, {"command": cfg.command, "qasm": qasm, "mode": cfg.mode})
    return 0


COMMANDS = {
    "sweep-decoder": cmd_sweep_decoder,
    "sweep-transduction": cmd_sweep_transduction,
    "link-budget": cmd_link_budget,
    "emit-circuit": cmd_emit_circuit,
    "simulate": cmd_simulate,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    # every default is None so that unset flags fall through to the config file
    p.add_argument("--config", help="INI file with a [run] section (and optional [link.<name>] sections)")
    p.add_argument("--dump-config", action="store_true", help="print the effective config and exit")
    p.add_argument("--out", help="output path, '-' for standard output (default)")
    p.add_argument("--seed", type=lambda s: int(s, 0), help="RNG seed (default 0xC0DE)")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-min", type=float)
    p.add_argument("--n-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--log", action=argparse.BooleanOptionalAction, default=None, help="log-spaced grid (default)")
    p.add_argument("--jobs", type=int, help="worker processes for grid points")


def _add_engine(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=["exact", "noisy", "sampled"])
    p.add_argument("--p1", type=float, help="1-qubit depolarizing probability")
    p.add_argument("--p2", type=float, help="2-qubit depolarizing probability")
    p.add_argument("--prep-fail", type=float, help="per-qubit preparation failure probability")
    p.add_argument("--shots", type=int)
    p.add_argument("--style", choices=["multiplexed", "per_gate"], help="how the full decoder selects on the check qubit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpqm-jdr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sweep-decoder", help="decoder error curves over an N grid")
    _add_common(p), _add_grid(p), _add_engine(p)
    p = sub.add_parser("sweep-transduction", help="single-symbol receiver errors over an N grid")
    _add_common(p), _add_grid(p)
    p = sub.add_parser("link-budget", help="received photons and rates for the built-in links")
    _add_common(p)
    p = sub.add_parser("emit-circuit", help="write a decoder circuit as OpenQASM 2.0")
    _add_common(p)
    p.add_argument("--kind", choices=["first_bit", "full"])
    p.add_argument("--n", type=float, help="received mean photon number")
    p.add_argument("--style", choices=["multiplexed", "per_gate"])
    p = sub.add_parser("simulate", help="run one decoder (or a QASM file) at a single N")
    _add_common(p), _add_engine(p)
    p.add_argument("--kind", choices=["first_bit", "full"])
    p.add_argument("--n", type=float, help="received mean photon number")
    p.add_argument("--qasm", help="simulate this QASM file instead of a built-in decoder")
    p.add_argument("--codeword", help="input bits for --qasm, e.g. 110")
    return parser


_CONFIG_KEYS = ("n_min", "n_max", "points", "log", "mode", "p1", "p2", "prep_fail", "shots", "seed", "out",
                "jobs", "kind", "n", "style")


def resolve_config(ns: argparse.Namespace) -> SweepConfig:
    cfg = load_config(ns.config) if ns.config else SweepConfig()
    overrides = {k: getattr(ns, k, None) for k in _CONFIG_KEYS}
    return cfg.updated(command=ns.command, **overrides)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
        if ns.dump_config:
            sys.stdout.write(dump_config(cfg))
            return 0
        if ns.command == "simulate":
            return cmd_simulate(cfg, ns.qasm, ns.codeword)
        return COMMANDS[ns.command](cfg)
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"bpqm-jdr {ns.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
