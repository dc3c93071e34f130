"""Command-line driver and result records.

    airydet det --symbol shifted_gauss:t=0.25 --alpha 2,4,8 --out det.csv --format csv

Every run produces a ResultRecord: the echoed inputs, a flat map of named
outputs, per-output error estimates, and a table with one row per sweep
point (what the CSV format writes).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import os
import sys
import time
import traceback
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import detasym, kernels, rmt_mc
from .operator_disc import NODES_PER_PANEL, PANEL_LENGTH, build_grid, default_airy_grid, discretize_airy_operator
from .symbols import parse_symbol

__version__ = "0.1.0"

COMMANDS = ("det", "asymptotics", "wh-compare", "mc-gue", "kernel-check", "char-fn")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

# CSV columns are a function of the command only.
TABLE_COLUMNS = {
    "det": ("alpha", "log_det", "predicted", "residual", "grid_change"),
    "asymptotics": ("x", "G", "G_variance"),
    "wh-compare": ("c2_fourier", "c2_wiener_hopf", "gap", "wiener_hopf_trace"),
    "mc-gue": ("alpha", "n_samples", "mean", "variance", "skewness", "excess_kurtosis",
               "std_err_mean", "predicted_mean", "predicted_variance"),
    "kernel-check": ("n_matrix", "edge_scaling_deviation", "kernel_identity_deviation"),
    "char-fn": ("alpha", "s", "re_log_phi", "im_log_phi", "re_predicted", "im_predicted", "error"),
}

G_SAMPLE_STRIDE = 16


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class NumericFailure(RuntimeError):
    def __init__(self, module: str, exc: BaseException):
        super().__init__(f"numeric failure in {module}: {type(exc).__name__}: {exc}")
        self.module = module


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    symbol: str = "shifted_gauss:t=0.25,shift=1.0"
    alphas: tuple = (2.0, 4.0, 8.0)
    n_matrix: int = 400
    n_samples: int = 2000
    seed: int = 0
    nodes: int | None = None
    window: tuple | None = None
    s_values: tuple = (0.25, 0.5)
    output_path: str | None = None
    fmt: str = "json"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError("command", f"unknown command {self.command!r}")
        try:
            parse_symbol(self.symbol)
        except ValueError as exc:
            raise ConfigError("symbol", str(exc)) from None
        if not self.alphas or any(not (math.isfinite(a) and a > 0) for a in self.alphas):
            raise ConfigError("alpha", "alpha values must be finite and strictly positive")
        if not 2 <= self.n_matrix <= 10_000:
            raise ConfigError("n_matrix", "must be in [2, 10000]")
        if self.command == "mc-gue" and self.n_samples < 100:
            raise ConfigError("n_samples", "must be >= 100")
        if self.nodes is not None and self.nodes < 2:
            raise ConfigError("nodes", "nodes per panel must be >= 2")
        if self.window is not None:
            a, b = self.window
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise ConfigError("window", "need finite a < b")
        if any(not math.isfinite(s) for s in self.s_values):
            raise ConfigError("s", "s values must be finite")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("format", "must be json or csv")

    def inputs(self) -> dict:
        """Canonical echo of every field that affects the numbers."""
        return {
            "command": self.command,
            "symbol": parse_symbol(self.symbol).label(),
            "alphas": [float(a) for a in self.alphas],
            "n_matrix": int(self.n_matrix),
            "n_samples": int(self.n_samples),
            "seed": int(self.seed),
            "nodes": None if self.nodes is None else int(self.nodes),
            "window": None if self.window is None else [float(v) for v in self.window],
            "s_values": [float(s) for s in self.s_values],
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.inputs(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class ResultRecord:
    command: str
    inputs: dict
    outputs: dict
    error_estimates: dict
    columns: list
    rows: list
    wall_time_ms: float
    version: str
    config_hash: str

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def config_from_record(record: ResultRecord | dict) -> ExperimentConfig:
    """Rebuild the config that produced a record from its inputs echo."""
    inp = record.inputs if isinstance(record, ResultRecord) else record["inputs"]
    return ExperimentConfig(
        command=inp["command"],
        symbol=inp["symbol"],
        alphas=tuple(inp["alphas"]),
        n_matrix=inp["n_matrix"],
        n_samples=inp["n_samples"],
        seed=inp["seed"],
        nodes=inp["nodes"],
        window=None if inp["window"] is None else tuple(inp["window"]),
        s_values=tuple(inp["s_values"]),
    )


def _key(name: str, **params) -> str:
    return name + "".join(f"[{k}={v!r}]" for k, v in params.items())


def _airy_grid(cfg: ExperimentConfig, f, alpha: float, scale: int = 1):
    per = (cfg.nodes or NODES_PER_PANEL) * scale
    if cfg.window is None:
        return default_airy_grid(f, alpha, per)
    a, b = cfg.window
    return build_grid((a, b), per * math.ceil((b - a) / PANEL_LENGTH), "composite_gl")


def _run_det(cfg, f, out, err, rows):
    c1, c2 = detasym.compute_c1(f), detasym.compute_c2(f)
    out["c1"], out["c2"] = c1, c2
    for a in cfg.alphas:
        ld = detasym.log_det(discretize_airy_operator(f, a, _airy_grid(cfg, f, a)))
        ld2 = detasym.log_det(discretize_airy_operator(f, a, _airy_grid(cfg, f, a, 2)))
        pred = c1 * a**1.5 + c2
        res = abs(ld - pred)
        out[_key("log_det", alpha=a)] = ld
        out[_key("predicted", alpha=a)] = pred
        out[_key("residual", alpha=a)] = res
        err[_key("log_det", alpha=a)] = abs(ld2 - ld)
        rows.append([a, ld, pred, res, abs(ld2 - ld)])


def _run_asymptotics(cfg, f, out, err, rows):
    c = detasym.asymptotic_constants(f)
    out.update(c1=c.c1, c2=c.c2, variance=c.variance)
    err.update(c1=c.quad_error_est, c2=c.quad_error_est)
    if f.is_zero:
        return
    gf = detasym.compute_g_function(f)
    gv = detasym.compute_g_function(f, transform=None)
    err["G_imag"] = gf.imag_residual
    for i in range(0, gf.grid.size, G_SAMPLE_STRIDE):
        rows.append([float(gf.grid[i]), float(gf.values[i]), float(gv.values[i])])


def _run_wh(cfg, f, out, err, rows):
    c2f, ef = detasym.compute_c2(f, return_error=True)
    c2w, ew = detasym.wiener_hopf_c2_check(f, return_error=True)
    tr = detasym.wiener_hopf_trace(f)
    out.update(c2_fourier=c2f, c2_wiener_hopf=c2w, gap=abs(c2f - c2w), wiener_hopf_trace=tr)
    err.update(c2_fourier=ef, c2_wiener_hopf=ew)
    rows.append([c2f, c2w, abs(c2f - c2w), tr])


def _run_mc(cfg, f, out, err, rows):
    stats = rmt_mc.edge_statistics(f, cfg.alphas, cfg.n_matrix, cfg.n_samples, cfg.seed)
    var_pred = detasym.edge_variance(f)
    for j, a in enumerate(cfg.alphas):
        s = rmt_mc.summarize(stats[:, j], detasym.edge_mean(f, a), var_pred)
        vals = dataclasses.asdict(s)
        for k, v in vals.items():
            out[_key(k, alpha=a)] = float(v)
        err[_key("mean", alpha=a)] = s.std_err_mean
        rows.append([a] + [float(vals[c]) for c in TABLE_COLUMNS["mc-gue"][1:]])


def _run_kernel_check(cfg, f, out, err, rows):
    ident = kernels.kernel_identity_deviation()
    edge = kernels.edge_scaling_deviation(cfg.n_matrix)
    out.update(kernel_identity_deviation=ident, edge_scaling_deviation=edge)
    rows.append([cfg.n_matrix, edge, ident])


def _run_char_fn(cfg, f, out, err, rows):
    for a in cfg.alphas:
        for s in cfg.s_values:
            lp = rmt_mc.char_function_log(f, s, a)
            pred = rmt_mc.gaussian_log_char(f, s, a)
            e = abs(lp - pred)
            out[_key("re_log_phi", alpha=a, s=s)] = lp.real
            out[_key("im_log_phi", alpha=a, s=s)] = lp.imag
            out[_key("error", alpha=a, s=s)] = e
            rows.append([a, s, lp.real, lp.imag, pred.real, pred.imag, e])


_DISPATCH = {
    "det": _run_det,
    "asymptotics": _run_asymptotics,
    "wh-compare": _run_wh,
    "mc-gue": _run_mc,
    "kernel-check": _run_kernel_check,
    "char-fn": _run_char_fn,
}


def _failing_module(exc: BaseException) -> str:
    pkg = os.path.dirname(os.path.abspath(__file__))
    name = "airydet"
    for frame in traceback.extract_tb(exc.__traceback__):
        if os.path.dirname(os.path.abspath(frame.filename)) == pkg:
            name = "airydet." + Path(frame.filename).stem
    return name


def run_command(cfg: ExperimentConfig) -> ResultRecord:
    cfg.validate()
    f = parse_symbol(cfg.symbol)
    out: dict = {}
    err: dict = {}
    rows: list = []
    t0 = time.perf_counter()
    try:
        _DISPATCH[cfg.command](cfg, f, out, err, rows)
    except ConfigError:
        raise
    except ValueError as exc:
        # preconditions checked inside the numerical modules (windows, sup-norm bounds)
        raise ConfigError(_failing_module(exc), str(exc)) from exc
    except (ArithmeticError, FloatingPointError, RuntimeError, np.linalg.LinAlgError) as exc:
        raise NumericFailure(_failing_module(exc), exc) from exc
    wall = 1e3 * (time.perf_counter() - t0)
    return ResultRecord(
        command=cfg.command,
        inputs=cfg.inputs(),
        outputs={k: float(v) for k, v in out.items()},
        error_estimates={k: float(v) for k, v in err.items()},
        columns=list(TABLE_COLUMNS[cfg.command]),
        rows=[[float(v) for v in r] for r in rows],
        wall_time_ms=wall,
        version=__version__,
        config_hash=cfg.config_hash(),
    )


def record_to_json(record: ResultRecord) -> str:
    # json writes floats with repr, the shortest string that round-trips exactly
    return json.dumps(record.as_dict(), sort_keys=True, indent=1, allow_nan=True)


def record_to_csv(record: ResultRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(record.columns)
    for r in record.rows:
        w.writerow(["%.17g" % v for v in r])
    return buf.getvalue()


def emit(record: ResultRecord, fmt: str = "json", path=None) -> str:
    """Serialize and write to ``path`` (stdout when None).  Returns the text."""
    if fmt not in ("json", "csv"):
        raise ValueError("format must be json or csv")
    text = record_to_json(record) + "\n" if fmt == "json" else record_to_csv(record)
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
    return text


def load_record(path) -> ResultRecord:
    return ResultRecord(**json.loads(Path(path).read_text()))


def load_table(path) -> tuple[list, np.ndarray]:
    """CSV table back as (columns, float array)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        cols = next(reader)
        data = [[float(v) for v in row] for row in reader]
    return cols, np.array(data, dtype=np.float64).reshape(len(data), len(cols))


def _floats(text: str, field_name: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(field_name, f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="airydet", description="Airy-kernel Fredholm determinants and GUE edge statistics.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--symbol", default=ExperimentConfig.symbol, help="family[:key=value,...], e.g. gauss:t=0.25")
    p.add_argument("--alpha", default="2,4,8", help="comma-separated alpha values")
    p.add_argument("--n-matrix", type=int, default=400)
    p.add_argument("--n-samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nodes", type=int, default=None, help="quadrature nodes per panel")
    p.add_argument("--window", default=None, help="truncation window a,b")
    p.add_argument("--s", default="0.25,0.5", help="characteristic-function arguments")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    window = None
    if ns.window is not None:
        window = _floats(ns.window, "window")
        if len(window) != 2:
            raise ConfigError("window", "expected two numbers a,b")
    return ExperimentConfig(
        command=ns.command,
        symbol=ns.symbol,
        alphas=_floats(ns.alpha, "alpha"),
        n_matrix=ns.n_matrix,
        n_samples=ns.n_samples,
        seed=ns.seed,
        nodes=ns.nodes,
        window=window,
        s_values=_floats(ns.s, "s"),
        output_path=ns.out,
        fmt=ns.format,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = config_from_args(ns)
        record = run_command(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NUMERIC
    try:
        emit(record, cfg.fmt, cfg.output_path)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
