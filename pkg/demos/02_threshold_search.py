"""Locate the certification threshold c* where h(c) crosses 1.

h(c) - 1 is increasing through a single sign change on the working window,
so a coarse grid scan brackets the crossing and bisection sharpens it.  The
returned endpoint always satisfies h > 1, so it is a certified bound.  On
the strongest built-in scheme this lands just below 0.515396.
"""

from zetagaps import bracket_scan, get_preset, h_value, threshold_c

preset = get_preset("table1-row3")
scheme = preset.scheme

print("grid scan of h(c) on [0.512, 0.520]:")
c = 0.512
while c <= 0.520 + 1e-12:
    h = h_value(scheme, c).h
    marker = " <-- first h > 1" if h > 1 and h_value(scheme, c - 0.001).h <= 1 else ""
    print(f"  c = {c:.3f}   h = {h:.8f}{marker}")
    c += 0.001

bracket = bracket_scan(scheme, 0.50, 0.53, 0.001)
print(f"\nsign-change bracket: {bracket}")

c_star = threshold_c(scheme, bracket, tol=1e-7)
print(f"bisected threshold:  c* = {c_star:.9f}")
print(f"h(c*) = {h_value(scheme, c_star).h:.12f}  (> 1, certified)")
print(f"\nc* = {c_star:.9f} <= 0.515396 reproduces the headline gap bound.")
