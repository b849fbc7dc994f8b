"""Command-line front end: ``wigner``, ``pnd``, ``tc`` and ``verify``.

Exit codes: 0 success, 1 tolerance breach, 2 usage error, 3 accuracy failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import AccuracyError
from .evolution import Channel, ChannelParams, evolve_closed, evolve_wigner, positivity_time
from .oracle import evolve_density, oracle_n_max, pnd_from_density, wigner_from_density
from .photon import default_n_cut, evolved_mean_photon, pnd_evolved, pnd_pacs_closed
from .states import Coherent, Number, Pacs, Thermal, fock_density

EXIT_TOL = 1
EXIT_USAGE = 2
EXIT_ACCURACY = 3


def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` literals such as ``1.0+0.5i``, ``-2i`` or ``0.3``."""
    s = text.strip().replace(" ", "")
    try:
        return complex(s.replace("i", "j")) if s else 0j
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from exc


def parse_axis(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"axis must be MIN:MAX:COUNT, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2 or not hi > lo:
        raise argparse.ArgumentTypeError(f"axis needs MAX > MIN and COUNT >= 2: {text!r}")
    return lo, hi, n


def parse_grid(text: str):
    """``XMIN:XMAX:NX[,YMIN:YMAX:NY]``; the y axis defaults to the x axis."""
    axes = text.split(",")
    if len(axes) > 2:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}")
    x = parse_axis(axes[0])
    y = parse_axis(axes[1]) if len(axes) == 2 else x
    return x, y


@dataclass
class RunConfig:
    state: object
    channel: ChannelParams
    grid: tuple = ((-3.0, 3.0, 61), (-3.0, 3.0, 61))
    method: str = "closed"
    out: Path | None = None
    std_normalization: bool = False
    tol: float = 1e-5
    compare: str | None = None
    extras: dict = field(default_factory=dict)

    def echo(self) -> dict:
        st = self.state
        state = {"kind": type(st).__name__.lower()}
        for name in ("n", "m", "nbar"):
            if hasattr(st, name):
                state[name] = getattr(st, name)
        if hasattr(st, "z"):
            state["z"] = [st.z.real, st.z.imag]
        ch = self.channel
        return {
            "state": state,
            "channel": {"kind": ch.kind.value, "kappa": ch.kappa, "g": ch.g,
                        "nbar": ch.nbar, "t": ch.t},
            "grid": {"x": list(self.grid[0]), "y": list(self.grid[1])},
            "method": self.method,
            "tol": self.tol,
        }


def _state_from_args(args):
    kind = args.state
    if kind == "number":
        return Number(args.n)
    if kind == "coherent":
        return Coherent(args.z)
    if kind == "pacs":
        return Pacs(args.m, args.z)
    nbar = args.state_nbar if args.state_nbar is not None else args.nbar
    return Thermal(nbar)


def _channel_from_args(args) -> ChannelParams:
    kind = Channel(args.channel)
    if kind is Channel.DAMPING:
        return ChannelParams.damping(args.kappa, args.t)
    if kind is Channel.LASER:
        return ChannelParams.laser(args.kappa, args.g, args.t)
    return ChannelParams.thermal(args.kappa, args.nbar, args.t)


def config_from_args(args) -> RunConfig:
    return RunConfig(
        state=_state_from_args(args),
        channel=_channel_from_args(args),
        grid=args.grid,
        method=args.method,
        out=Path(args.out) if args.out else None,
        std_normalization=args.std_normalization,
        tol=args.tol,
        compare=getattr(args, "compare", None),
    )


def grid_points(grid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-major (y outer) grid: returns ``(x, y, alpha)`` with alpha of shape (ny, nx)."""
    (x0, x1, nx), (y0, y1, ny) = grid
    xs = np.linspace(x0, x1, nx)
    ys = np.linspace(y0, y1, ny)
    return xs, ys, xs[None, :] + 1j * ys[:, None]


def evaluate(method: str, state, channel: ChannelParams, alpha) -> np.ndarray:
    """Wigner values at ``alpha`` (1/2-normalised) by the chosen route."""
    if method == "closed":
        return np.asarray(evolve_closed(state, channel, alpha), dtype=float)
    if method == "quadrature":
        return np.asarray(evolve_wigner(state, channel, alpha), dtype=float)
    if method == "oracle":
        rho = evolve_density(fock_density(state, oracle_n_max(state, channel)), channel)
        return np.asarray(wigner_from_density(rho, alpha), dtype=float)
    raise ValueError(f"unknown method {method!r}")


def _amplification_warning(channel: ChannelParams, stream) -> None:
    loss, gain = channel.rates()
    if gain > loss:
        print(f"warning: net amplification (gain {gain:g} > loss {loss:g}); "
              "oracle cutoff grows like exp(2(g-kappa)t)", file=stream)


def format_wigner_csv(alpha: np.ndarray, values: np.ndarray) -> str:
    buf = io.StringIO()
    buf.write("alpha_re,alpha_im,w\n")
    for a, w in zip(alpha.ravel(), values.ravel()):
        buf.write(f"{a.real:.17g},{a.imag:.17g},{w:.17g}\n")
    return buf.getvalue()


def _write(out: Path | None, text: str, stdout) -> None:
    if out is None:
        stdout.write(text)
    else:
        out.write_text(text)


def cmd_wigner(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    _amplification_warning(cfg.channel, stderr)
    _, _, alpha = grid_points(cfg.grid)
    values = evaluate(cfg.method, cfg.state, cfg.channel, alpha)
    diagnostics: dict = {}
    compare = cfg.compare
    if compare is None and cfg.method == "closed":
        compare = "quadrature"
    if compare and compare != cfg.method:
        ref = evaluate(compare, cfg.state, cfg.channel, alpha)
        diagnostics["compare_method"] = compare
        diagnostics["max_abs_diff"] = float(np.max(np.abs(values - ref)))
    if not np.all(np.isfinite(values)):
        print("error: non-finite Wigner values", file=stderr)
        return EXIT_ACCURACY
    scale = 2.0 if cfg.std_normalization else 1.0
    _write(cfg.out, format_wigner_csv(alpha, scale * values), stdout)
    if cfg.out is not None:
        meta = {
            "tool_version": __version__,
            "config": cfg.echo(),
            "normalization": "unit (integral 1)" if cfg.std_normalization
            else "half (integral 1/2)",
            "shape": [int(alpha.shape[0]), int(alpha.shape[1])],
            "diagnostics": diagnostics,
        }
        cfg.out.with_suffix(".json").write_text(json.dumps(meta, indent=2, sort_keys=True))
    elif diagnostics:
        print(json.dumps(diagnostics), file=stderr)
    return 0


def _closed_available(state) -> bool:
    return isinstance(state, (Number, Coherent, Pacs))


def pnd_table(cfg: RunConfig, n_cut: int):
    """Columns of the photon-number table: dict of name -> array."""
    st, ch = cfg.state, cfg.channel
    cols = {"n": np.arange(n_cut)}
    if _closed_available(st):
        m, z = ((st.n, 0j) if isinstance(st, Number) else
                (0, st.z) if isinstance(st, Coherent) else (st.m, st.z))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cols["p_closed"] = np.array([pnd_pacs_closed(m, z, ch, n) for n in range(n_cut)])
    cols["p_quadrature"] = pnd_evolved(st, ch, n_cut).probs
    rho = evolve_density(fock_density(st, max(oracle_n_max(st, ch), n_cut)), ch)
    cols["p_oracle"] = pnd_from_density(rho, n_cut).probs
    return cols


def cmd_pnd(cfg: RunConfig, n_cut: int | None = None, stdout=sys.stdout, stderr=sys.stderr) -> int:
    _amplification_warning(cfg.channel, stderr)
    if n_cut is None:
        n_cut = default_n_cut(evolved_mean_photon(cfg.state, cfg.channel))
    cols = pnd_table(cfg, n_cut)
    names = [k for k in ("p_closed", "p_quadrature", "p_oracle") if k in cols]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n"] + names)
    for i in range(n_cut):
        writer.writerow([i] + [f"{cols[k][i]:.17g}" for k in names])
    writer.writerow(["sum"] + [f"{cols[k].sum():.17g}" for k in names])
    _write(cfg.out, buf.getvalue(), stdout)
    worst = 0.0
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            worst = max(worst, float(np.max(np.abs(cols[a] - cols[b]))))
    if worst > cfg.tol:
        print(f"error: columns disagree by {worst:.3e} (> tol {cfg.tol:g})", file=stderr)
        return EXIT_TOL
    return 0


def cmd_tc(nbar: float, verify: bool = False, m: int = 1, z: complex = 1.0,
           stdout=sys.stdout) -> int:
    from .verify import positivity_grid_min

    tc = positivity_time(nbar)
    stdout.write(f"kappa_t_c = {tc:.6f}\n")
    if verify:
        report = {}
        for factor in (0.5, 1.0, 1.2):
            report[f"{factor:g}tc"] = positivity_grid_min(m, z, nbar, factor * tc)
        for key, val in report.items():
            stdout.write(f"min W at {key}: {val:.6e}\n")
    return 0


def cmd_verify(quick: bool = False, strict: bool = False, out: Path | None = None,
               stdout=sys.stdout) -> int:
    from .verify import run_verify

    report = run_verify(quick=quick, strict=strict)
    text = json.dumps(report, indent=2)
    _write(out, text + "\n", stdout)
    return 0 if report["ok"] else EXIT_TOL


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", choices=["number", "coherent", "pacs", "thermal"], default="pacs")
    p.add_argument("--n", type=int, default=0, help="number-state photon number")
    p.add_argument("--z", type=parse_complex, default=0j, help="coherent amplitude, e.g. 1.0+0.5i")
    p.add_argument("--m", type=int, default=1, help="photon-added order")
    p.add_argument("--nbar", type=float, default=0.0,
                   help="bath occupation (thermal channel); also the thermal state's nbar")
    p.add_argument("--state-nbar", type=float, default=None,
                   help="thermal initial state occupation when it differs from --nbar")
    p.add_argument("--channel", choices=[c.value for c in Channel], default="damping")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--method", choices=["closed", "quadrature", "oracle"], default="closed")
    p.add_argument("--grid", type=parse_grid, default=parse_grid("-3:3:61"))
    p.add_argument("--std-normalization", action="store_true",
                   help="scale Wigner values to integrate to 1")
    p.add_argument("--out", default=None)
    p.add_argument("--tol", type=float, default=1e-5)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wigner-channels", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pw = sub.add_parser("wigner", help="evolved Wigner function on a grid")
    _common(pw)
    pw.add_argument("--compare", choices=["closed", "quadrature", "oracle"], default=None,
                    help="second method whose max-abs-diff goes into the sidecar")

    pp = sub.add_parser("pnd", help="photon-number distribution table")
    _common(pp)
    pp.add_argument("--n-cut", type=int, default=None)

    pt = sub.add_parser("tc", help="positivity threshold time")
    pt.add_argument("--nbar", type=float, default=0.0)
    pt.add_argument("--verify", action="store_true")
    pt.add_argument("--m", type=int, default=1)
    pt.add_argument("--z", type=parse_complex, default=1.0 + 0j)

    pv = sub.add_parser("verify", help="closed form / quadrature / oracle cross-validation")
    pv.add_argument("--quick", action="store_true", help="damping-only subset")
    pv.add_argument("--strict", action="store_true",
                    help="let the thermal-bath closed-form suite fail the run")
    pv.add_argument("--out", default=None)
    return parser


# Values of these flags may start with "-" (e.g. "--grid -3:3:61", "--z -1i").
_SIGNED_VALUE_FLAGS = ("--grid", "--z")


def _join_signed_values(argv: list[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _SIGNED_VALUE_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(_join_signed_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        if args.command == "tc":
            if args.nbar < 0:
                parser.error("--nbar must be non-negative")
            return cmd_tc(args.nbar, args.verify, args.m, args.z, stdout=stdout)
        if args.command == "verify":
            return cmd_verify(args.quick, args.strict, Path(args.out) if args.out else None,
                              stdout=stdout)
        try:
            cfg = config_from_args(args)
        except ValueError as exc:
            parser.error(str(exc))
        if args.command == "wigner":
            try:
                return cmd_wigner(cfg, stdout=stdout, stderr=stderr)
            except ValueError as exc:
                parser.error(str(exc))
        return cmd_pnd(cfg, args.n_cut, stdout=stdout, stderr=stderr)
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
