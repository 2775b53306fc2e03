"""Refinement studies for the finite-difference connection and the holonomy integrator."""
import numpy as np

from biconn import frames, holonomy, lie, samples
from biconn.fields import BIPair, Grid


def order(errors):
    e = np.asarray(errors)
    return np.log2(e[:-1] / e[1:])


def frame_study(levels=(9, 17, 33)):
    w01 = lie.basis_pairs(3).index((0, 1))
    errs, tors, metric = [], [], []
    for N in levels:
        grid = Grid.uniform((1, N, N, N), (0, 1, 0, 0), (0, 2, 1, 1))
        F = samples.frame_from_function(3, grid, samples.rindler_coframe(3, np.exp))
        w = frames.spin_connection_from_frame(F)
        errs.append(np.abs(w.values[w01, 0] - np.exp(samples.sample_coordinates(grid)[1])).max())
        twisted = samples.twisted_coframe(3)
        G = samples.frame_from_function(3, grid, twisted)
        wt = frames.spin_connection_from_frame(G)
        tors.append(frames.torsion_residual(G, wt, samples.exact_coframe_derivatives(grid, twisted)))
        metric.append(frames.metric_compatibility_residual(G, wt))
    print("grid points      ", list(levels))
    print("w^01_t error      ", errs, "orders", order(errs))
    print("torsion residual  ", tors, "orders", order(tors))
    print("metric residual   ", metric, "orders", order(metric))


def holonomy_study(sides=(0.1, 0.05, 0.025)):
    grid = Grid.uniform((1, 9, 9, 9), (0, 0, 0, 0), (0, 1, 1, 1))
    x = np.stack(grid.mesh())
    rng = np.random.default_rng(0)
    A = rng.normal(size=(3, 4))[:, :, None, None, None, None] + np.einsum(
        "kmr,r...->km...", rng.normal(size=(3, 4, 4)), x)
    pair = BIPair(3, 0.0, A, np.zeros((3, 4) + grid.dims), grid)
    p0 = np.array([0.0, 0.4, 0.45, 0.5])
    F = holonomy.curvature_at(pair, p0, 1, 2)
    errs = [np.abs(holonomy.holonomy(pair, holonomy.square_loop(p0, 1, 2, h)) - (np.eye(2) - h * h * F)).max()
            for h in sides]
    print("small-loop error  ", errs, "orders", order(errs))


if __name__ == "__main__":
    frame_study()
    holonomy_study()
