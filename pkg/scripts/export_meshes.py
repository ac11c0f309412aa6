#!/usr/bin/env python3
"""Export OBJ meshes of the singularity normal forms into ./meshes/.

Higher-dimensional forms are projected to a chosen coordinate triple,
which is recorded in the OBJ provenance comment.
"""

import argparse
import os

from tanvar.classify import SingularityClass, normal_form
from tanvar.mesh import sample_map, write_obj

EXPORTS = [
    ("cuspidal-edge", SingularityClass.CUSPIDAL_EDGE, 3, (1, 2, 3)),
    ("folded-umbrella", SingularityClass.FOLDED_UMBRELLA, 3, (1, 2, 3)),
    ("swallowtail", SingularityClass.SWALLOWTAIL, 3, (1, 2, 3)),
    ("mond-surface", SingularityClass.MOND_SURFACE, 3, (1, 2, 3)),
    ("open-swallowtail", SingularityClass.OPEN_SWALLOWTAIL, 4, (1, 2, 4)),
    ("open-mond-surface", SingularityClass.OPEN_MOND_SURFACE, 4, (1, 2, 4)),
    ("open-folded-umbrella", SingularityClass.OPEN_FOLDED_UMBRELLA, 4, (1, 2, 4)),
    ("unfurled-mond-surface", SingularityClass.UNFURLED_MOND_SURFACE, 4, (1, 2, 4)),
    ("generic-folded-pleat", SingularityClass.GENERIC_FOLDED_PLEAT, 3, (1, 2, 3)),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="meshes")
    parser.add_argument("--grid", type=int, default=50)
    parser.add_argument("--extent", type=float, default=1.0)
    args = parser.parse_args()

    os.makedirs(args.out, exist_ok=True)
    for slug, sing, ambient, coords in EXPORTS:
        form = normal_form(sing, ambient)
        mesh = sample_map(
            form.chart_st,
            coords=coords,
            s_range=(-args.extent, args.extent),
            t_range=(-args.extent, args.extent),
            grid=args.grid,
            provenance=f"{slug} normal form, coords {coords}",
        )
        path = os.path.join(args.out, f"{slug}.obj")
        write_obj(mesh, path)
        print(f"wrote {path} ({len(mesh.vertices)} vertices)")


if __name__ == "__main__":
    main()
