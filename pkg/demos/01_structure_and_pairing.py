"""Tour of the built-in algebra catalog: validation, layers, the pairing.

Each entry is a nilpotent Lie algebra with an abelian complex structure,
described purely by the structure constants of the mixed brackets
[Xbar_k, X_j].  Validation checks the Jacobi identity, runs the lower
central series, and computes the center and the layer decomposition of
the (1,0) part.  For the 2-step entries the contraction of the central
dual form gives a square matrix whose rank separates the families: it is
nondegenerate for heisenberg-ext / double-heisenberg / p4n2 and has rank
n+1 (out of 2n+2) for w4n6.
"""

from nilpoisson import d_rho_matrix, validate
from nilpoisson.catalog import parse_catalog_name
from nilpoisson.sparse import rank

NAMES = [
    "torus:2",
    "heisenberg-ext:1",
    "heisenberg-ext:2",
    "double-heisenberg:1,1",
    "p4n2:1",
    "w4n6:0",
    "w4n6:1",
]


def show(name):
    spec = parse_catalog_name(name)
    report = validate(spec)
    print(f"{spec.name}")
    print(f"  labels      : {', '.join(spec.labels)}")
    print(f"  real dim    : {spec.dim_l}")
    print(f"  step        : {report.step}")
    center = ", ".join(spec.label(i) for i in report.center_indices)
    print(f"  center      : {center}  (dim {report.dim_center})")
    for level, indices in enumerate(report.t_layer_indices, start=1):
        names = ", ".join(spec.label(i) for i in indices)
        print(f"  layer t_{level}   : {names}")
    if report.dim_center == 1 and report.step == 2:
        v_index = report.center_indices[0]
        pairing = d_rho_matrix(spec, v_index, report)
        print(f"  pairing     : {pairing.rows}x{pairing.cols}, rank {rank(pairing)}")
        for r in range(pairing.rows):
            row = "  ".join(f"{pairing.entry(r, c)!s:>6}" for c in range(pairing.cols))
            print(f"      [ {row} ]")
    print()


if __name__ == "__main__":
    for name in NAMES:
        show(name)
