"""Subspace deviation metrics: d, D, delta, the chordal line metric, and the
transversality angle lambda.

Walks through the zoo of distance-like functions on subspaces of R^n, first
on hand-picked configurations where the values are known in closed form,
then against a brute-force sphere-grid oracle on random pairs.
"""

import math

import numpy as np

from stratkit import (
    ProjectiveLine,
    dist_D,
    dist_d,
    dist_delta,
    dist_projective,
    dist_vec,
    intersect,
    lambda_angle,
    orthonormalize,
)
from stratkit.fixtures import oracle_distance_extrema, random_subspace

print("== one-sided deviation d, symmetrized D, minimal deviation delta ==")
theta = 0.3
L1 = orthonormalize([[math.cos(theta), math.sin(theta)]])
L2 = orthonormalize([[1.0, 0.0]])
print(f"two lines at angle {theta}: d = {dist_d(L1, L2):.6f} (sin {theta} = {math.sin(theta):.6f})")

plane = orthonormalize([[1, 0, 0], [0, 1, 0]])
line_in = orthonormalize([[1, 0, 0]])
print(f"line inside a plane:   d(line, plane) = {dist_d(line_in, plane):.1e}  (containment)")
print(f"                       d(plane, line) = {dist_d(plane, line_in):.6f}  (the plane sticks out fully)")
print(f"                       D = {dist_D(plane, line_in):.6f}")

diag = orthonormalize([[1, 1, 0]])
print(f"diagonal vs x-axis:    delta = {dist_delta(diag, line_in):.6f} (1/sqrt(2) = {1/math.sqrt(2):.6f})")

print()
print("== unit vectors: the sine of the angle to a subspace ==")
v = np.array([0.6, 0.8])
print(f"d((3/5, 4/5), x-axis) = {dist_vec(v, L2):.6f}  (the 3-4-5 triangle)")

print()
print("== projective lines: chordal metric sandwiches the sine metric ==")
a = ProjectiveLine([1.0, 0.0])
b = ProjectiveLine([0.0, 1.0])
dt = dist_projective(a, b)
ds = dist_d(a.subspace(), b.subspace())
print(f"orthogonal lines: chordal = {dt:.6f}, sine = {ds:.6f}, "
      f"chordal/sqrt2 = {dt/math.sqrt(2):.6f} <= sine <= chordal")

print()
print("== intersections and the transversality angle ==")
xy = orthonormalize([[1, 0, 0], [0, 1, 0]])
xz = orthonormalize([[1, 0, 0], [0, 0, 1]])
J = intersect(xy, xz)
print(f"xy-plane meet xz-plane: dimension {J.dim}, direction {J.basis.ravel().round(12)}")
print(f"lambda(xy, xz) = {lambda_angle(xy, xz):.6f}  (dihedral angle pi/2)")

th = 0.4
tilted = orthonormalize([[math.cos(th), math.sin(th)]])
print(f"lambda of two lines at {th}: {lambda_angle(L2, tilted):.6f} "
      f"(sin {th} = {math.sin(th):.6f})")

print()
print("== brute-force oracle cross-check on random pairs ==")
rng = np.random.default_rng(1)
for trial in range(3):
    P = random_subspace(4, 2, rng)
    Q = random_subspace(4, 2, rng)
    lo, hi, bound = oracle_distance_extrema(P, Q, mesh=2e-3)
    print(f"random planes in R^4: d = {dist_d(P, Q):.6f} vs grid sup {hi:.6f} "
          f"(within {bound:.1e});  delta = {dist_delta(P, Q):.6f} vs grid inf {lo:.6f}")
