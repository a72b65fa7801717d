"""Plot-specification builders and the matplotlib renderer.

Every figure is first reduced to a JSON-serializable specification (panel
layout, series labels and data).  Rendering identical CSV input yields an
identical specification; image bytes are backend business.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .reader import PlotDataError, read_sweep_csv

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8")
PANEL_QUANTITIES = ("R", "L", "U", "C")
_PANEL_LABELS = ("(a)", "(b)", "(c)", "(d)")


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: which CSV, which figure layout, where to write."""

    input_csv: str
    figure_id: str
    output_image: str


def _style(config: str, multi_config: bool) -> str:
    return "dashed" if (multi_config and config == "IQN") else "solid"


def _series(label: str, style: str, x: np.ndarray, y: np.ndarray) -> dict:
    order = np.argsort(x, kind="stable")
    return {"label": label, "style": style,
            "x": x[order].tolist(), "y": y[order].tolist()}


def _dynamics_spec(figure_id: str, data: dict) -> dict:
    configs = sorted(set(data["config"]))
    g_vals = sorted(set(data["g"].tolist()))
    p_vals = sorted(set(data["p"].tolist()))
    panels = []
    for label, quantity in zip(_PANEL_LABELS, PANEL_QUANTITIES):
        series = []
        for config in configs:
            for g in g_vals:
                for p in p_vals:
                    mask = ((data["config"] == config) & (data["g"] == g)
                            & (data["p"] == p))
                    if not mask.any():
                        continue
                    parts = []
                    if len(configs) > 1:
                        parts.append(config)
                    if len(g_vals) > 1:
                        parts.append(f"g={g:g}")
                    if len(p_vals) > 1:
                        parts.append(f"p={p:g}")
                    name = ", ".join(parts) or f"g={g:g}, p={p:g}"
                    series.append(_series(name, _style(config, len(configs) > 1),
                                          data["tau"][mask], data[quantity][mask]))
        panels.append({"label": label, "kind": "lines", "title": f"{label} {quantity}",
                       "xlabel": "tau", "ylabel": quantity, "series": series})
    return {"figure_id": figure_id, "layout": [2, 2], "panels": panels}


def _purity_spec(data: dict) -> dict:
    configs = sorted(set(data["config"]))
    taus = np.unique(data["tau"])
    picks = sorted({int(round(q * (len(taus) - 1))) for q in (0.25, 0.5, 0.75, 1.0)})
    slices = [float(taus[i]) for i in picks]
    panels = []
    for label, quantity in zip(_PANEL_LABELS, PANEL_QUANTITIES):
        series = []
        for config in configs:
            for tau in slices:
                mask = (data["config"] == config) & (data["tau"] == tau)
                if not mask.any():
                    continue
                parts = ([config] if len(configs) > 1 else []) + [f"tau={tau:g}"]
                series.append(_series(", ".join(parts), _style(config, len(configs) > 1),
                                      data["p"][mask], data[quantity][mask]))
        panels.append({"label": label, "kind": "lines", "title": f"{label} {quantity}",
                       "xlabel": "p", "ylabel": quantity, "series": series})
    return {"figure_id": "fig8", "layout": [2, 2], "panels": panels}


def _witness_grid(data: dict, fixed: str, fixed_value: float, sweep: str) -> dict:
    """Heatmap of EW over (tau, sweep values) at one fixed parameter value."""
    mask = data[fixed] == fixed_value
    taus = np.unique(data["tau"][mask])
    values = np.unique(data[sweep][mask])
    cell = {(s, t): e for s, t, e in zip(data[sweep][mask], data["tau"][mask],
                                         data["EW"][mask])}
    grid = []
    for v in values:
        row = []
        for t in taus:
            if (v, t) not in cell:
                raise PlotDataError(
                    f"incomplete (tau, {sweep}) grid at {fixed}={fixed_value:g}")
            row.append(cell[(v, t)])
        grid.append(row)
    return {"x": taus.tolist(), "y": values.tolist(), "z": grid}


def _witness_spec(data: dict) -> dict:
    lams = np.unique(data["lambda"])
    ps = np.unique(data["p"])
    p_ref = float(ps.max())
    lam_ref = 1.0 if 1.0 in lams else float(lams[len(lams) // 2])

    curves_lam = []
    for lam in lams:
        mask = (data["p"] == p_ref) & (data["lambda"] == lam)
        if mask.any():
            curves_lam.append(_series(f"lambda={lam:g}", "solid",
                                      data["tau"][mask], data["EW"][mask]))
    curves_p = []
    for p in ps:
        mask = (data["p"] == p) & (data["lambda"] == lam_ref)
        if mask.any():
            curves_p.append(_series(f"p={p:g}", "solid",
                                    data["tau"][mask], data["EW"][mask]))
    heat_lam = _witness_grid(data, "p", p_ref, "lambda")
    heat_p = _witness_grid(data, "lambda", lam_ref, "p")
    panels = [
        {"label": "(a)", "kind": "lines", "title": f"(a) EW per lambda (p={p_ref:g})",
         "xlabel": "t", "ylabel": "EW", "series": curves_lam},
        {"label": "(b)", "kind": "heatmap", "title": f"(b) EW over (t, lambda) (p={p_ref:g})",
         "xlabel": "t", "ylabel": "lambda", **heat_lam},
        {"label": "(c)", "kind": "lines", "title": f"(c) EW per p (lambda={lam_ref:g})",
         "xlabel": "t", "ylabel": "EW", "series": curves_p},
        {"label": "(d)", "kind": "heatmap", "title": f"(d) EW over (t, p) (lambda={lam_ref:g})",
         "xlabel": "t", "ylabel": "p", **heat_p},
    ]
    return {"figure_id": "fig2", "layout": [2, 2], "panels": panels}


def build_plot_spec(figure_id: str, data: dict) -> dict:
    if figure_id not in FIGURE_IDS:
        raise PlotDataError(f"unknown figure id {figure_id!r} "
                            f"(choose from {', '.join(FIGURE_IDS)})")
    if figure_id == "fig2":
        return _witness_spec(data)
    if figure_id == "fig8":
        return _purity_spec(data)
    return _dynamics_spec(figure_id, data)


def plot_spec_json(spec: dict) -> str:
    """Canonical serialization used by the determinism contract."""
    return json.dumps(spec, sort_keys=True, separators=(",", ":"))


def _render_spec(spec: dict, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    rows, cols = spec["layout"]
    fig, axes = plt.subplots(rows, cols, figsize=(11, 8))
    for ax, panel in zip(axes.ravel(), spec["panels"]):
        if panel["kind"] == "lines":
            for s in panel["series"]:
                ax.plot(s["x"], s["y"], label=s["label"],
                        linestyle={"solid": "-", "dashed": "--"}[s["style"]])
            if panel["series"]:
                ax.legend(fontsize=7)
        else:
            mesh = ax.pcolormesh(panel["x"], panel["y"], panel["z"], shading="auto")
            fig.colorbar(mesh, ax=ax)
        ax.set_title(panel["title"], fontsize=10)
        ax.set_xlabel(panel["xlabel"])
        ax.set_ylabel(panel["ylabel"])
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render(spec: FigureSpec) -> str:
    """Validate the CSV, build the plot specification and write the image.

    Nothing is written if validation fails; the input is never modified.
    """
    data = read_sweep_csv(spec.input_csv)
    plot_spec = build_plot_spec(spec.figure_id, data)
    _render_spec(plot_spec, spec.output_image)
    return spec.output_image
