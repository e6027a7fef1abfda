"""Deforming the differential by an integrable (0,2) class.

Take the degenerate-pairing algebra with the good Poisson structure
Lambda = V ^ T2, and deform the total differential by the bracket with
Omega_bar = rho_bar ^ wbar^1.  The class is dbar_Lambda-closed and
brackets to zero with itself, so delta = dbar_Lambda + [Omega_bar, -]
still squares to zero -- but its degree-one kernel shrinks: T1, which was
closed, now maps to (1/2) wbar^1 ^ wbar^2.  The kernel on K^1 collapses to
the center plus all the dual forms, and the cohomology genuinely changes;
the deformation is not a gauge artifact.
"""

from nilpoisson import ExteriorComplex, GradedElement, deformed_complex, total_cohomology, wedge
from nilpoisson.catalog import w_family
from nilpoisson.expressions import ExpressionContext, format_multivector


def run(n):
    cx = ExteriorComplex(w_family(n))
    context = ExpressionContext(cx.spec, cx.report)
    v = cx.n
    lam = wedge(GradedElement.vector(v), GradedElement.vector(2))
    omega = wedge(GradedElement.form(v), GradedElement.form(1))
    print(f"{cx.spec.name}:  Lambda = V^T2,  Omega_bar = rho_bar^w1_bar")

    def delta(x):
        return cx.dbar(x) + cx.schouten(lam, x) + cx.schouten(omega, x)

    for index, label in ((1, "T1"), (2, "T2"), (v, "V")):
        image = delta(GradedElement.vector(index))
        rendered = format_multivector(image, context) if image else "0"
        print(f"  delta {label:<3} = {rendered}")

    cap = min(cx.dim_l, 6)
    undeformed = total_cohomology(cx, lam, max_degree=cap)
    deformed = deformed_complex(cx, lam, omega, max_degree=cap)
    print(f"  kernel of delta on K^1: dimension {deformed.k1_kernel_dim}")
    for element in deformed.k1_kernel:
        print(f"    {format_multivector(element, context)}")
    print(f"  dim H^1 before deformation: {undeformed[1]}")
    print(f"  dim H^1 after  deformation: {deformed.dims[1]}")
    print()


if __name__ == "__main__":
    run(0)
    run(1)
