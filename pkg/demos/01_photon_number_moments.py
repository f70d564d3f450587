"""Photon-number moments of a coherent state, two ways.

The m-th moment <(a^dag a)^m> of a coherent state is a polynomial in the
mean photon number mu whose coefficients are Stirling numbers of the second
kind.  This script tabulates the closed form against a direct summation of
the Poisson series and shows the ratio g = f(2m)/f(m)^2 that controls where
the optimal probe weight sits.
"""


from phasebounds import coherent_number_moment, moment_via_poisson_sum, second_moment_ratio, stirling2

print("Stirling triangle rows (the polynomial coefficients):")
for m in range(0, 5):
    print(f"  m={m}:", [stirling2(m, k) for k in range(m + 1)])

print("\nlow-order polynomials:  f(1) = mu,  f(2) = mu + mu^2,  f(4) = mu + 7 mu^2 + 6 mu^3 + mu^4")

print("\nclosed form vs Poisson series (tail tolerance 1e-12):")
print(f"{'m':>3} {'mu':>6} {'closed form':>18} {'series':>18} {'rel diff':>10}")
for m in (1, 2, 4, 8, 12):
    for mu in (0.5, 2.0, 9.0):
        closed = coherent_number_moment(m, mu)
        series = moment_via_poisson_sum(m, mu, tail_tol=1e-12 * max(1.0, closed))
        rel = abs(closed - series) / max(1.0, closed)
        print(f"{m:>3} {mu:>6} {closed:>18.10g} {series:>18.10g} {rel:>10.1e}")

print("\nmoment ratio g = f(2m)/f(m)^2  (tends to 1 as mu grows):")
for m in (1, 2):
    row = [f"{second_moment_ratio(m, mu):8.5f}" for mu in (0.25, 1.0, 4.0, 16.0, 100.0)]
    print(f"  m={m}: ", "  ".join(row))
