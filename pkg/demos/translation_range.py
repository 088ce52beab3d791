"""Which operators on the algebra come from convolution?

Operators induced by functionals through the coproduct (right-convolution
operators, and in particular every associated semigroup map) are cut out
among all linear maps by equivalent conditions: commuting with every
left-convolution operator, intertwining the coproduct, or being rebuilt
from their counit compression.  The demo measures these residuals for maps
on functions over S3 that are, and are not, of convolution form.
"""

import numpy as np

import cstarconv as cc
from cstarconv.sampling import random_functional, random_generating_functional

rng = np.random.default_rng(12)
b = cc.function_bialgebra(cc.s3_group())
alg = b.algebra

gamma = random_generating_functional(b, rng)
sg = cc.associated_semigroup(b, gamma)

candidates = {
    "identity": cc.LinearMap.identity(alg),
    "associated P_1": sg.operator_at(1.0),
    "associated P_0.1": sg.operator_at(0.1),
    "right convolution by a random functional": cc.right_convolution_operator(
        b, random_functional(alg, rng)
    ),
    "left convolution by a point mass": cc.left_convolution_operator(
        b, alg.functional_from_dual_coords(np.eye(alg.dim)[3])
    ),
    "multiplication by an indicator": cc.LinearMap(
        alg, alg, cc.left_multiplication_matrix(alg, alg.from_coords(np.eye(alg.dim)[0]))
    ),
    "random dense map": cc.LinearMap(
        alg,
        alg,
        rng.standard_normal((alg.dim, alg.dim)) + 1j * rng.standard_normal((alg.dim, alg.dim)),
    ),
}

print(f"{'map':<42} {'commutation':>12} {'strong inv':>12} {'weak inv':>12}  of R-form?")
for name, t_map in candidates.items():
    row = (
        cc.commutation_residual(b, t_map),
        cc.strong_invariance_residual(b, t_map),
        cc.weak_invariance_residual(b, t_map),
    )
    verdict = cc.is_right_convolution_operator(b, t_map, tol=1e-9)
    print(f"{name:<42} {row[0]:>12.2e} {row[1]:>12.2e} {row[2]:>12.2e}  {verdict}")

print()
print("note: the commutation column measures commutators against every")
print("left-convolution operator; on functions over the nonabelian S3 the")
print("dual convolution algebra is noncommutative, so a left convolution by")
print("a point mass fails it (and with it the invariance conditions).")

recovered = cc.recover_functional(b, sg.operator_at(1.0))
gap = cc.functional_norm(recovered - cc.convolution_exp(b, gamma, 1.0))
print(f"\nrecovering the state from P_1 through the counit: gap {gap:.2e}")
