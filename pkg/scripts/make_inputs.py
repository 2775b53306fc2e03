"""Write sample frame and loop files for the ``biconn pipeline`` command.

    python scripts/make_inputs.py rindler --points 33 --out rindler.json
    python scripts/make_inputs.py loop --corner 0 1.2 0.2 0.3 --side 0.5 --out loop.json
"""
import argparse
import json

from biconn import fields, frames, holonomy, samples


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("kind", choices=["identity", "rindler", "twisted", "loop"])
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--points", type=int, default=17)
    parser.add_argument("--corner", type=float, nargs="+", default=[0.0, 1.2, 0.2, 0.3])
    parser.add_argument("--side", type=float, default=0.5)
    parser.add_argument("--plane", type=int, nargs=2, default=[1, 2])
    parser.add_argument("--steps", type=int, default=32, help="segments per side of the loop")
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    if args.kind == "loop":
        loop = holonomy.square_loop(args.corner, *args.plane, args.side, args.steps)
        with open(args.out, "w") as fh:
            json.dump(loop.to_json(), fh)
        return

    n, N = args.n, args.points
    # t is a symmetry direction for every sample frame: one grid point along it
    grid = fields.Grid.uniform((1,) + (N,) * n, (0.0, 1.0) + (0.0,) * (n - 1), (0.0, 2.0) + (1.0,) * (n - 1))
    fn = {"identity": samples.identity_coframe, "rindler": samples.rindler_coframe,
          "twisted": samples.twisted_coframe}[args.kind](n)
    fields.write_json(args.out, frames.frame_to_json(samples.frame_from_function(n, grid, fn)))


if __name__ == "__main__":
    main()
