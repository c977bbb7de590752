"""Check the limit components against literal sums over the integers.

The exact pipeline computes the T -> infinity leading order.  Here the same
ratio is evaluated as a finite sum: sieve lambda(k), d_r(k), Lambda(n) up to
K = T / log(T)^2, build the coefficients a_k, and sum the quadratic forms.
Convergence is logarithmically slow (the sine kernel's argument carries a
log K / log T factor), so this is a trend check, not an equality: the
deviation shrinks as T grows.
"""

import math

from zetagaps import (
    CoeffScheme,
    FracPoly,
    build_tables,
    dr_mean_square_trend,
    finite_h,
    h_value,
    mertens_deficit,
)

scheme = CoeffScheme(
    r=1.0,
    f1=FracPoly.from_coeffs([1.0]),
    f1t=FracPoly.zero(),
    P=FracPoly.zero(),
)
c = 0.6
h_lim = h_value(scheme, c).h
print(f"f1 = 1 scheme at c = {c}: limit value h = {h_lim:.8f}")

print(f"\n{'T':>8} {'K':>8} {'h_finite':>12} {'|dev|/|h|':>10} {'logK/logT':>10}")
for t_param in (1e4, 1e5, 1e6, 1e7):
    h_fin, num, den = finite_h(scheme, c, t_param)
    k_len = int(t_param / math.log(t_param) ** 2)
    print(
        f"{t_param:>8.0e} {k_len:>8d} {h_fin:>12.8f} "
        f"{abs(h_fin - h_lim) / abs(h_lim):>10.4f} "
        f"{math.log(k_len) / math.log(t_param):>10.4f}"
    )

print("\nprime log-sum deficit sum_{p<=y} log(p)/p - log(y) (bounded, ~ -1.33):")
for y in (10**3, 10**4, 10**5, 10**6):
    print(f"  y = {y:>8d}: {mertens_deficit(y):+.6f}")

print("\nmean-square normalization sum_{k<=x} d_r(k)^2/k / log(x)^(r^2), r = 1.18:")
tables = build_tables(1.18, 10**6)
for x, ratio in dr_mean_square_trend(1.18, [10**4, 10**5, 10**6], tables=tables):
    print(f"  x = {x:>8d}: {ratio:.6f}")
print("(stabilization of the ratio estimates the leading mean-square constant)")
