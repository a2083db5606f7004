"""Tiny dependency-free SVG line charts for the benchmark reports."""

from __future__ import annotations

from pathlib import Path

import numpy as np

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 40, 50


def _scale(values, lo, hi, out_lo, out_hi):
    if hi <= lo:
        hi = lo + 1.0
    return out_lo + (np.asarray(values, dtype=float) - lo) * (out_hi - out_lo) / (hi - lo)


def line_chart(path, title, x, series, x_label="", y_label=""):
    """Write a line chart to ``path``.

    ``series`` maps a label to either a y-array or a (y, yerr) pair; error
    bands are drawn as translucent polygons.  NaN segments are skipped.
    """
    x = np.asarray(x, dtype=float)
    ys, errs = {}, {}
    for label, val in series.items():
        if isinstance(val, tuple):
            ys[label] = np.asarray(val[0], dtype=float)
            errs[label] = np.asarray(val[1], dtype=float)
        else:
            ys[label] = np.asarray(val, dtype=float)
            errs[label] = None
    all_y = []
    for label in ys:
        y = ys[label]
        e = errs[label] if errs[label] is not None else 0.0
        all_y.append(y + e)
        all_y.append(y - e)
    all_y = np.concatenate([np.atleast_1d(a) for a in all_y])
    all_y = all_y[np.isfinite(all_y)]
    if len(all_y) == 0 or len(x) == 0:
        ylo, yhi = 0.0, 1.0
    else:
        ylo, yhi = float(all_y.min()), float(all_y.max())
        if yhi == ylo:
            ylo, yhi = ylo - 0.5, yhi + 0.5
    xlo, xhi = (float(x.min()), float(x.max())) if len(x) else (0.0, 1.0)

    def px(v):
        return _scale(v, xlo, xhi, _ML, _W - _MR)

    def py(v):
        return _scale(v, ylo, yhi, _H - _MB, _MT)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
    ]
    for t in np.linspace(xlo, xhi, 5):
        xp = float(px(t))
        parts.append(f'<line x1="{xp}" y1="{_H - _MB}" x2="{xp}" y2="{_H - _MB + 5}" stroke="black"/>')
        parts.append(f'<text x="{xp}" y="{_H - _MB + 18}" text-anchor="middle">{t:.3g}</text>')
    for t in np.linspace(ylo, yhi, 5):
        yp = float(py(t))
        parts.append(f'<line x1="{_ML - 5}" y1="{yp}" x2="{_ML}" y2="{yp}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{yp + 4}" text-anchor="end">{t:.4g}</text>')
    if x_label:
        parts.append(f'<text x="{_W / 2}" y="{_H - 10}" text-anchor="middle">{x_label}</text>')
    if y_label:
        parts.append(
            f'<text x="18" y="{_H / 2}" text-anchor="middle" '
            f'transform="rotate(-90 18 {_H / 2})">{y_label}</text>'
        )

    for k, label in enumerate(ys):
        color = _COLORS[k % len(_COLORS)]
        y = ys[label]
        err = errs[label]
        finite = np.isfinite(y) & np.isfinite(x)
        if err is not None:
            band_ok = finite & np.isfinite(err)
            if band_ok.any():
                xs_b = px(x[band_ok])
                up = py(y[band_ok] + err[band_ok])
                dn = py(y[band_ok] - err[band_ok])
                pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(xs_b, up))
                pts += " " + " ".join(
                    f"{a:.2f},{b:.2f}" for a, b in zip(xs_b[::-1], dn[::-1])
                )
                parts.append(f'<polygon points="{pts}" fill="{color}" fill-opacity="0.15"/>')
        if finite.any():
            pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px(x[finite]), py(y[finite])))
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        ly = _MT + 14 * (k + 1)
        parts.append(f'<line x1="{_W - _MR - 120}" y1="{ly}" x2="{_W - _MR - 100}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{_W - _MR - 95}" y="{ly + 4}">{label}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
