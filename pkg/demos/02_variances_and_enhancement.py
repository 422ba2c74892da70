"""Walkthrough: collective quadrature variances and the enhancement claim.

The collective quadratures X1 = sum Q_i / sqrt(2n), X2 = sum P_i / sqrt(2n)
end up with variances exp(-4 lambda)/4 and exp(+4 lambda)/4, independent
of the mode count.  The standard two-mode squeezed vacuum only reaches
exp(-2 lambda)/4, so the ring coupling squeezes twice as hard in the
exponent.  Both variance routes (literal matrix sums and the closed form)
are computed and compared here.
"""
import math

from nmodesqueeze import build_coupling, build_kernel, variances_closed, variances_matrix_sum

print(f"{'n':>3} {'lambda':>7} {'varX1 (sum)':>14} {'varX1 (closed)':>15} "
      f"{'varX2 (sum)':>14} {'product':>10}")
for n in (2, 3, 4, 6, 8):
    for lam in (0.0, 0.1, 0.5):
        pair = variances_matrix_sum(build_kernel(build_coupling(n), lam))
        closed = variances_closed(lam)
        print(f"{n:>3} {lam:>7.2f} {pair.varX1:>14.9f} {closed.varX1:>15.9f} "
              f"{pair.varX2:>14.9f} {pair.varX1 * pair.varX2:>10.6f}")
print()
print("The matrix-sum values match the closed form for every n, and the")
print("uncertainty product stays pinned at 1/16 =", 1 / 16)
print()

# Enhancement against the standard two-mode squeezed vacuum of equal lambda.
print(f"{'lambda':>7} {'ring varX1':>13} {'standard varX1':>15} {'ratio':>8}")
for lam in (0.1, 0.5, 1.0):
    ring = variances_closed(lam).varX1
    standard = math.exp(-2 * lam) / 4
    print(f"{lam:>7.2f} {ring:>13.9f} {standard:>15.9f} {ring / standard:>8.4f}")
print()
print("The ratio is exp(-2 lambda) < 1: the ring-coupled operator always")
print("squeezes the collective quadrature below the standard value.")
