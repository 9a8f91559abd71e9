"""Parameter sweeps over (initial state, Rindler angle, filter strength).

A sweep is described by a :class:`SweepConfig`, loadable from an INI-style
``key = value`` file, and produces one row per grid point with every
requested measure.  Output is a deterministic CSV: fixed column order,
17-significant-digit floats, ``\\n`` line endings, so identical configs
give byte-identical files.

Grid points whose post-selection succeeds with probability (numerically)
zero are retained with the ``degenerate`` flag set and blank measure
columns.
"""

import configparser
import io
from dataclasses import dataclass

import numpy as np

from .channel import R_MAX, AccelerationSpec
from .errors import ConfigError, DegenerateOutcome, UnknownPreset
from .localops import MeasurementStrengths, REVERSE, WEAK
from .measures import MeasuresReport, compute_report
from .pipeline import restrict_to_ladder, run_protocol
from .states import parse_state_preset
from .tensor import DensityMatrix

TWO_QUBIT = "two_qubit"
TWO_QUTRIT = "two_qutrit"

ALL_EQUAL = "all_equal"
WEAK_REVERSE_SPLIT = "weak_reverse_split"
INDEPENDENT = "independent"
_TIE_POLICIES = (ALL_EQUAL, WEAK_REVERSE_SPLIT, INDEPENDENT)

FULL_SECTOR = "full_4dim"
PROJECTED_SECTOR = "projected_3dim"

MEASURE_COLUMNS = ("neg_raw", "E_norm", "I_a", "I_b", "I_coh_std", "I_coh_lit",
                   "p_success")

_REPORT_FIELDS = {
    "neg_raw": "negativity_raw",
    "E_norm": "entanglement_normalized",
    "I_a": "info_accelerated_bits",
    "I_b": "info_inertial_bits",
    "I_coh_std": "coherent_info_standard_bits",
    "I_coh_lit": "coherent_info_literal_bits",
    "p_success": "success_probability",
}


def parse_grid(text: str, field_name: str = "grid") -> tuple[float, ...]:
    """Parse ``start:stop:steps`` (inclusive linspace) or ``v1, v2, ...``."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [p.strip() for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError("expected start:stop:steps")
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1:
                raise ValueError(f"steps must be >= 1, got {steps}")
            if start > stop:
                raise ValueError(f"start {start} > stop {stop}")
            if steps == 1:
                return (start,)
            return tuple(float(v) for v in np.linspace(start, stop, steps))
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse grid {text!r}: {exc}", field=field_name) from exc


@dataclass(frozen=True)
class SweepConfig:
    """Fully resolved sweep description.

    ``r_grid`` and ``strength_grid`` are explicit value tuples (the config
    file may give them as ``start:stop:steps``).  ``initial_state`` may
    list several presets; each is swept in turn and labelled in the output.
    The scalar fields at the bottom feed the untied policies:
    ``weak_reverse_split`` drives every weak strength from the grid and
    every reversing strength from ``beta``; ``independent`` drives party
    a's weak strength from the grid and the rest from ``alpha_b`` /
    ``beta_a`` / ``beta_b``.
    """

    system: str
    initial_state: tuple[str, ...]
    r_grid: tuple[float, ...]
    strength_grid: tuple[float, ...]
    tie_policy: str = ALL_EQUAL
    phi: float = 0.0
    measures: tuple[str, ...] = MEASURE_COLUMNS
    normalization_mode: str = "normalized"
    qutrit_compare_sector: str = FULL_SECTOR
    beta: float = 0.0
    alpha_b: float = 0.0
    beta_a: float = 0.0
    beta_b: float = 0.0

    def __post_init__(self):
        if self.system not in (TWO_QUBIT, TWO_QUTRIT):
            raise ConfigError(f"unknown system {self.system!r}", field="system")
        states = tuple(self.initial_state) if not isinstance(self.initial_state, str) \
            else (self.initial_state,)
        if not states:
            raise ConfigError("need at least one initial state", field="initial_state")
        want = (3, 3) if self.system == TWO_QUTRIT else (2, 2)
        for s in states:
            try:
                rho = parse_state_preset(s)
            except UnknownPreset as exc:
                raise ConfigError(str(exc), field="initial_state") from exc
            if rho.dims != want:
                raise ConfigError(
                    f"state {s!r} has dims {rho.dims}, system {self.system} needs {want}",
                    field="initial_state",
                )
        object.__setattr__(self, "initial_state", states)
        r_vals = tuple(float(v) for v in self.r_grid)
        if not r_vals:
            raise ConfigError("empty r grid", field="r_grid")
        for v in r_vals:
            if v < -1e-12 or v > R_MAX + 1e-12:
                raise ConfigError(f"r={v} outside [0, pi/4]", field="r_grid")
        object.__setattr__(self, "r_grid", r_vals)
        s_vals = tuple(float(v) for v in self.strength_grid)
        if not s_vals:
            raise ConfigError("empty strength grid", field="strength_grid")
        for v in s_vals:
            if v < 0.0 or v > 1.0:
                raise ConfigError(f"strength {v} outside [0, 1]", field="strength_grid")
        object.__setattr__(self, "strength_grid", s_vals)
        if self.tie_policy not in _TIE_POLICIES:
            raise ConfigError(f"unknown tie policy {self.tie_policy!r}", field="tie_policy")
        meas = tuple(self.measures)
        for m in meas:
            if m not in MEASURE_COLUMNS:
                raise ConfigError(f"unknown measure {m!r}", field="measures")
        if not meas:
            raise ConfigError("empty measure list", field="measures")
        object.__setattr__(self, "measures", meas)
        if self.normalization_mode not in ("raw", "normalized"):
            raise ConfigError(
                f"normalization_mode must be raw|normalized, got {self.normalization_mode!r}",
                field="normalization_mode",
            )
        if self.qutrit_compare_sector not in (FULL_SECTOR, PROJECTED_SECTOR):
            raise ConfigError(
                f"qutrit_compare_sector must be {FULL_SECTOR}|{PROJECTED_SECTOR}",
                field="qutrit_compare_sector",
            )
        for name in ("phi", "beta", "alpha_b", "beta_a", "beta_b"):
            v = float(getattr(self, name))
            if name != "phi" and not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name}={v} outside [0, 1]", field=name)
            object.__setattr__(self, name, v)

    @property
    def levels(self) -> int:
        return 2 if self.system == TWO_QUTRIT else 1

    def strength_columns(self) -> tuple[str, ...]:
        if self.levels == 1:
            return ("alpha_a", "alpha_b", "beta_a", "beta_b")
        return ("alpha_a1", "alpha_a2", "alpha_b1", "alpha_b2",
                "beta_a1", "beta_a2", "beta_b1", "beta_b2")

    def point_strengths(self, value: float
                        ) -> tuple[MeasurementStrengths, MeasurementStrengths]:
        n = self.levels
        if self.tie_policy == ALL_EQUAL:
            w = MeasurementStrengths(WEAK, (value,) * n, (value,) * n)
            r = MeasurementStrengths(REVERSE, (value,) * n, (value,) * n)
        elif self.tie_policy == WEAK_REVERSE_SPLIT:
            w = MeasurementStrengths(WEAK, (value,) * n, (value,) * n)
            r = MeasurementStrengths(REVERSE, (self.beta,) * n, (self.beta,) * n)
        else:
            w = MeasurementStrengths(WEAK, (value,) * n, (self.alpha_b,) * n)
            r = MeasurementStrengths(REVERSE, (self.beta_a,) * n, (self.beta_b,) * n)
        return w, r


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point."""

    state: str
    i_r: int
    i_strength: int
    r: float
    strengths: tuple[float, ...]
    report: MeasuresReport | None
    degenerate: bool = False


def _evaluate_point(rho0: DensityMatrix, config: SweepConfig, r: float,
                    value: float) -> MeasuresReport:
    weak, reverse = config.point_strengths(value)
    result = run_protocol(rho0, weak, reverse, AccelerationSpec(r, config.phi))
    state = result.final
    if (config.system == TWO_QUTRIT
            and config.qutrit_compare_sector == PROJECTED_SECTOR):
        state, _ = restrict_to_ladder(state, renormalize=True)
    return compute_report(state, result.p_success)


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate every grid point, in deterministic (state, r, strength) order."""
    rows = []
    for label in config.initial_state:
        rho0 = parse_state_preset(label)
        for i_r, r in enumerate(config.r_grid):
            for i_s, value in enumerate(config.strength_grid):
                weak, reverse = config.point_strengths(value)
                strengths = weak.party_a_levels + weak.party_b_levels \
                    + reverse.party_a_levels + reverse.party_b_levels
                try:
                    report = _evaluate_point(rho0, config, r, value)
                    rows.append(SweepRow(label, i_r, i_s, r, strengths, report))
                except DegenerateOutcome:
                    rows.append(SweepRow(label, i_r, i_s, r, strengths, None,
                                         degenerate=True))
    return rows


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def rows_to_csv(rows, config: SweepConfig) -> str:
    """Render sweep rows as deterministic CSV text."""
    cols = (("state", "i_r", "i_s", "r") + config.strength_columns()
            + config.measures + ("degenerate",))
    out = io.StringIO()
    out.write(",".join(cols) + "\n")
    for row in rows:
        cells = [row.state, str(row.i_r), str(row.i_strength), _fmt(row.r)]
        cells += [_fmt(v) for v in row.strengths]
        if row.report is None:
            cells += ["" for _ in config.measures]
        else:
            cells += [_fmt(getattr(row.report, _REPORT_FIELDS[m]))
                      for m in config.measures]
        cells.append("1" if row.degenerate else "0")
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def config_to_text(config: SweepConfig) -> str:
    """Serialise a config back to the INI form accepted by ``load_config``."""
    lines = ["[sweep]"]
    lines.append(f"system = {config.system}")
    lines.append(f"initial_state = {', '.join(config.initial_state)}")
    lines.append(f"r_grid = {', '.join(_fmt(v) for v in config.r_grid)}")
    lines.append(f"strength_grid = {', '.join(_fmt(v) for v in config.strength_grid)}")
    lines.append(f"tie_policy = {config.tie_policy}")
    lines.append(f"phi = {_fmt(config.phi)}")
    lines.append(f"measures = {', '.join(config.measures)}")
    lines.append(f"normalization_mode = {config.normalization_mode}")
    lines.append(f"qutrit_compare_sector = {config.qutrit_compare_sector}")
    for name in ("beta", "alpha_b", "beta_a", "beta_b"):
        lines.append(f"{name} = {_fmt(getattr(config, name))}")
    return "\n".join(lines) + "\n"


_LIST_FIELDS = {"initial_state", "measures"}
_FLOAT_FIELDS = {"phi", "beta", "alpha_b", "beta_a", "beta_b"}
_GRID_FIELDS = {"r_grid", "strength_grid"}
_STR_FIELDS = {"system", "tie_policy", "normalization_mode", "qutrit_compare_sector"}
_REQUIRED = ("system", "initial_state", "r_grid", "strength_grid")


def config_from_mapping(mapping: dict) -> SweepConfig:
    """Build a validated config from string key/value pairs."""
    kwargs = {}
    for key, raw in mapping.items():
        key = key.strip()
        value = raw.strip()
        if key in _GRID_FIELDS:
            kwargs[key] = parse_grid(value, field_name=key)
        elif key in _LIST_FIELDS:
            kwargs[key] = tuple(p.strip() for p in value.split(",") if p.strip())
        elif key in _FLOAT_FIELDS:
            try:
                kwargs[key] = float(value)
            except ValueError as exc:
                raise ConfigError(f"bad float {value!r}", field=key) from exc
        elif key in _STR_FIELDS:
            kwargs[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}", field=key)
    for req in _REQUIRED:
        if req not in kwargs:
            raise ConfigError(f"missing required key {req!r}", field=req)
    return SweepConfig(**kwargs)


def load_config(path: str, overrides: dict | None = None) -> SweepConfig:
    """Load a config file (single ``[sweep]`` section) with CLI overrides."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError(f"malformed config file {path}: {exc}", line=line) from exc
    if not parser.has_section("sweep"):
        raise ConfigError("config file needs a [sweep] section")
    mapping = dict(parser.items("sweep"))
    if overrides:
        mapping.update(overrides)
    return config_from_mapping(mapping)


# --------------------------------------------------------------------------
# Figure presets.  Surfaces sample an 80 x 80 (r, strength) grid; line
# figures sample 81 points in r at a few fixed strengths.

_R_SURFACE = f"0:{R_MAX!r}:80"
_S_SURFACE = "0:0.98:80"
_R_LINE = f"0:{R_MAX!r}:81"


@dataclass(frozen=True)
class FigureInfo:
    """Plotting hints for one preset (not part of the sweep contract)."""

    kind: str                     # 'surface' | 'lines'
    focus: tuple[str, ...]        # measures the generated script plots
    group_by: str = "state"      # line grouping: 'state' | 'strength'


_PRESETS: dict[str, tuple[dict, FigureInfo]] = {
    "fig1a": (dict(system=TWO_QUBIT, initial_state="singlet",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("E_norm",))),
    "fig1b": (dict(system=TWO_QUBIT, initial_state="werner:0.7",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("E_norm",))),
    "fig2a": (dict(system=TWO_QUTRIT, initial_state="qutrit:1",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("E_norm",))),
    "fig2b": (dict(system=TWO_QUTRIT, initial_state="qutrit:0.5",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("E_norm",))),
    "fig3a": (dict(system=TWO_QUBIT, initial_state="singlet",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("I_coh_std",))),
    "fig3b": (dict(system=TWO_QUBIT, initial_state="singlet",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("I_a",))),
    "fig4a": (dict(system=TWO_QUBIT, initial_state="singlet, werner:0.7",
                   r_grid=_R_LINE, strength_grid="0.5"),
              FigureInfo("lines", ("I_a", "I_b"), group_by="state")),
    "fig4b": (dict(system=TWO_QUBIT, initial_state="singlet",
                   r_grid=_R_LINE, strength_grid="0.5, 0.8, 0.9"),
              FigureInfo("lines", ("I_coh_std", "I_a"), group_by="strength")),
    "fig5a": (dict(system=TWO_QUTRIT, initial_state="qutrit:1",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("I_coh_std",))),
    "fig5b": (dict(system=TWO_QUTRIT, initial_state="qutrit:1",
                   r_grid=_R_SURFACE, strength_grid=_S_SURFACE),
              FigureInfo("surface", ("I_a",))),
    "fig6a": (dict(system=TWO_QUTRIT, initial_state="qutrit:1, qutrit:0.5",
                   r_grid=_R_LINE, strength_grid="0.5"),
              FigureInfo("lines", ("I_a", "I_b"), group_by="state")),
    "fig6b": (dict(system=TWO_QUTRIT, initial_state="qutrit:1",
                   r_grid=_R_LINE, strength_grid="0.5, 0.8, 0.9"),
              FigureInfo("lines", ("I_coh_std", "I_a"), group_by="strength")),
}

FIGURE_PRESETS = tuple(sorted(_PRESETS))


def figure_preset(name: str) -> SweepConfig:
    """Resolved sweep config of a named figure preset."""
    try:
        raw, _ = _PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown figure preset {name!r}; choose from {', '.join(FIGURE_PRESETS)}"
        ) from None
    return config_from_mapping(dict(raw))


def figure_info(name: str) -> FigureInfo:
    if name not in _PRESETS:
        raise UnknownPreset(f"unknown figure preset {name!r}")
    return _PRESETS[name][1]


def plot_script(name: str, csv_name: str) -> str:
    """Matplotlib script (text) that renders a preset's CSV to a PNG.

    The script is a standalone artifact: it re-reads the CSV next to it, so
    regenerating the plot needs only matplotlib.
    """
    config = figure_preset(name)
    info = figure_info(name)
    e_col = "E_norm" if config.normalization_mode == "normalized" else "neg_raw"
    focus = tuple(e_col if m in ("E_norm", "neg_raw") else m for m in info.focus)
    header = (
        '"""Auto-generated plotting script; regenerate with '
        f"'unruhlab figure {name}'.\"\"\"\n"
        "import csv\n"
        "import os\n"
        "from collections import defaultdict\n\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n\n"
        "HERE = os.path.dirname(os.path.abspath(__file__))\n"
        f"CSV = os.path.join(HERE, {csv_name!r})\n"
        f"FOCUS = {focus!r}\n"
        f"KIND = {info.kind!r}\n"
        f"GROUP_BY = {info.group_by!r}\n"
        f"OUT = os.path.join(HERE, {name + '.png'!r})\n\n"
        "rows = []\n"
        "with open(CSV, newline='') as fh:\n"
        "    for rec in csv.DictReader(fh):\n"
        "        if rec['degenerate'] == '1':\n"
        "            continue\n"
        "        rows.append(rec)\n\n"
    )
    surface = (
        "fig = plt.figure(figsize=(7, 5))\n"
        "ax = fig.add_subplot(projection='3d')\n"
        "measure = FOCUS[0]\n"
        "rs = sorted({float(r['r']) for r in rows})\n"
        "ss = sorted({float(r[[k for k in r if k.startswith('alpha_a')][0]])\n"
        "             for r in rows})\n"
        "grid = {(float(r['r']),\n"
        "         float(r[[k for k in r if k.startswith('alpha_a')][0]])):\n"
        "        float(r[measure]) for r in rows}\n"
        "import numpy as np\n"
        "R, S = np.meshgrid(rs, ss, indexing='ij')\n"
        "Z = np.array([[grid.get((rv, sv), np.nan) for sv in ss] for rv in rs])\n"
        "ax.plot_surface(R, S, Z, cmap='viridis')\n"
        "ax.set_xlabel('r')\n"
        "ax.set_ylabel('strength')\n"
        "ax.set_zlabel(measure)\n"
        "fig.savefig(OUT, dpi=150)\n"
    )
    lines = (
        "fig, ax = plt.subplots(figsize=(7, 5))\n"
        "strength_col = [k for k in rows[0] if k.startswith('alpha_a')][0]\n"
        "series = defaultdict(list)\n"
        "for rec in rows:\n"
        "    key = rec['state'] if GROUP_BY == 'state' else rec[strength_col]\n"
        "    for measure in FOCUS:\n"
        "        series[(key, measure)].append((float(rec['r']),\n"
        "                                       float(rec[measure])))\n"
        "for (key, measure), pts in sorted(series.items()):\n"
        "    pts.sort()\n"
        "    ax.plot([p[0] for p in pts], [p[1] for p in pts],\n"
        "            label=f'{measure} ({key})')\n"
        "ax.set_xlabel('r')\n"
        "ax.set_ylabel('bits')\n"
        "ax.legend()\n"
        "fig.savefig(OUT, dpi=150)\n"
    )
    return header + (surface if info.kind == "surface" else lines)
