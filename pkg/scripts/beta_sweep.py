"""Holonomy traces of A(beta) around one loop in the twisted sample frame.

Nothing about the shape of the curve is claimed; this just prints it.
"""
import numpy as np

from biconn import frames, holonomy, samples
from biconn.fields import Grid

N = 33
grid = Grid.uniform((1, N, N, N), (0, 0, 0, 0), (0, 1, 1, 1))
frame = samples.frame_from_function(3, grid, samples.twisted_coframe(3))
omega = frames.spin_connection_from_frame(frame)
loop = holonomy.square_loop([0, 0.2, 0.2, 0.5], 1, 2, 0.6, steps_per_side=64)
sweep = holonomy.compare_holonomies(omega, np.linspace(-2, 2, 9), loop)
print(sweep.to_csv(), end="")
