"""Static SVG figure of the de Sitter wedge in dS^2 with modular-flow orbits.

Chart: a point (x_0, x_1, x_2) of dS^2 is drawn at (theta, tau) with
x_1 + i x_2 = sqrt(1 + x_0^2) e^{i theta} and tau = arctan x_0. In these
coordinates the wedge x_1 > |x_0| is |sin tau| < cos theta.
"""
from __future__ import annotations

from dataclasses import dataclass

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from . import causal


@dataclass(frozen=True)
class PlotConfig:
    orbits: int = 6
    t_max: float = 2.5
    samples: int = 121
    seed: int = 0


def orbit_seeds(config: PlotConfig):
    """Points (0, cos a, sin a) of the wedge on the x_0 = 0 circle, a drawn from the seed."""
    rng = np.random.default_rng(config.seed)
    angles = np.sort(rng.uniform(-1.3, 1.3, config.orbits))
    return [np.array([0.0, np.cos(a), np.sin(a)]) for a in angles]


def modular_orbits(config: PlotConfig):
    """Orbits t -> exp(t h) x of the boost in the (0,1)-plane, as (t, points) arrays."""
    ts = np.linspace(-config.t_max, config.t_max, config.samples)
    out = []
    for x in orbit_seeds(config):
        out.append((ts, np.array([causal.boost(3, t) @ x for t in ts])))
    return out


def chart(points):
    points = np.atleast_2d(points)
    return np.arctan2(points[:, 2], points[:, 1]), np.arctan(points[:, 0])


def plot_ds2(config: PlotConfig, path):
    """Write the SVG; returns the orbits that were drawn."""
    orbits = modular_orbits(config)
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    th = np.linspace(-np.pi / 2, np.pi / 2, 301)
    edge = np.arcsin(np.clip(np.cos(th), 0, 1))
    ax.fill_between(th, -edge, edge, color="#c6dbef", linewidth=0, label="wedge")
    for k, (_, pts) in enumerate(orbits):
        theta, tau = chart(pts)
        (line,) = ax.plot(theta, tau, color="#08519c", linewidth=1.2)
        line.set_gid(f"orbit-{k}")
    ax.set_xlim(-np.pi, np.pi)
    ax.set_ylim(-np.pi / 2, np.pi / 2)
    ax.set_xlabel("theta")
    ax.set_ylabel("arctan x0")
    ax.set_title("dS^2 wedge and modular flow orbits")
    with matplotlib.rc_context({"svg.hashsalt": "modwedge", "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return orbits
