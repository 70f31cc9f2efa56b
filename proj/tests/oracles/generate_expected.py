#!/usr/bin/env python3
"""Generate tests/expected_values.hpp.

Every frozen constant in the C++ test suite is derived here with mpmath at
60-digit working precision, using algorithms independent of the C++ code:

  * the triangle-lengths fiber solve uses plain bisection on the scaled
    collar residual (no Newton, no shared code),
  * curve lengths use adaptive Gauss-Legendre quadrature (mpmath.quad),
  * matrix traces use exact mpmath matrix products,
  * closed-form values (depths, boundary half-lengths, conversion images)
    are evaluated directly from their defining formulas.

The script asserts the cross-identities it relies on before printing, so a
regression in the derivations fails loudly instead of freezing bad numbers.

Usage:  python3 tests/oracles/generate_expected.py > tests/expected_values.hpp
"""

from mpmath import mp, mpf, cosh, sinh, tanh, acosh, asinh, coth, exp, log, sqrt, quad, matrix

mp.dps = 60


# ---------------------------------------------------------------- helpers

def residual(a, b, c):
    return cosh(a) ** 2 + cosh(b) ** 2 + cosh(c) ** 2 - 2 * cosh(a) * cosh(b) * cosh(c)


def residual_scaled(a, b, c):
    return residual(a, b, c) / (cosh(a) * cosh(b) * cosh(c))


def delta_invert(x, y):
    x, y = mpf(x), mpf(y)
    if x >= abs(y):
        return (x / 2, (x + y) / 4, (x - y) / 4)
    if y >= max(mpf(0), x):
        return (y / 2, (3 * y - x) / 4, (y - x) / 4)
    assert y <= 0 and x + y <= 0
    return (-y / 2, -(x + y) / 4, -(x + 3 * y) / 4)


def project_pi(a, b, c):
    return (4 * a - 2 * b - 2 * c, 2 * b - 2 * c)


def fiber(x, y, s):
    a = (x + 2 * s) / 6
    b = (s - a) / 2 + y / 4
    c = (s - a) / 2 - y / 4
    return a, b, c


def h_invert(x, y, dps=60, iters=260):
    """Bisection on s = a+b+c along the fiber of pi over (x, y).

    The scaled residual near the root involves cancellation at the scale of
    cosh(a)cosh(b)cosh(c), so callers with large coordinates must raise dps
    to roughly 0.45*(a+b+c) digits plus margin.
    """
    with mp.workdps(dps):
        x, y = mpf(x), mpf(y)
        sd = sum(delta_invert(x, y))
        lo, hi = sd, sd + 4
        glo = residual_scaled(*fiber(x, y, lo))
        assert glo > 0, "scaled residual must be positive at the cone"
        while residual_scaled(*fiber(x, y, hi)) > 0:
            hi += (hi - lo)
        for _ in range(iters):
            mid = (lo + hi) / 2
            if residual_scaled(*fiber(x, y, mid)) > 0:
                lo = mid
            else:
                hi = mid
        s = (lo + hi) / 2
        t = fiber(x, y, s)
        assert abs(residual_scaled(*t)) < mpf(10) ** -55
        return t


def holonomy(a, b, c):
    p = (cosh(c) - exp(-a) * cosh(b)) / sinh(a)
    s = 2 * cosh(b) - p
    A = matrix([[exp(a), 0], [0, exp(-a)]])
    B = matrix([[p, 1], [p * s - 1, s]])
    return A, B, p, s


def commutator_trace(a, b, c):
    A, B, _, _ = holonomy(a, b, c)
    M = A * B * A ** -1 * B ** -1
    return M[0, 0] + M[1, 1]


def fn_triangle(l, t):
    return (l, acosh(cosh(t) * coth(l)), acosh(cosh(l - t) * coth(l)))


def metric_EFG(a, b, c, y):
    q = 1 / (sinh(a) * sinh(b))
    sign = 1 if cosh(c) >= cosh(a) * cosh(b) else -1
    E = a ** 2 + (a / sinh(a)) ** 2 * (sinh(b * y) / sinh(b)) ** 2
    F = sign * a * b * sqrt(1 - q ** 2)
    G = b ** 2
    return E, F, G


def segment_length(a, b, c, P, Q):
    (x0, y0), (x1, y1) = P, Q
    dx, dy = mpf(x1) - x0, mpf(y1) - y0

    def speed(r):
        E, F, G = metric_EFG(a, b, c, y0 + r * dy)
        return sqrt(E * dx ** 2 + 2 * F * dx * dy + G * dy ** 2)

    return quad(speed, [0, 1])


def section_radius(C, phi):
    """Radius r such that centroid + r*d(phi) lies on the collar surface;
    the image point under pi is r*(cos phi, sin phi)."""
    C = mpf(C)
    from mpmath import cos, sin
    d = (cos(phi) / 6, -cos(phi) / 12 + sin(phi) / 4, -cos(phi) / 12 - sin(phi) / 4)
    cen = (C / 3, C / 3, C / 3)

    def g(r):
        p = tuple(cen[i] + r * d[i] for i in range(3))
        return residual_scaled(*p)

    assert g(0) < 0, "centroid must be inside the section"
    pos = [i for i in range(3) if d[i] > 0]
    r_hi = min((C / 2 - C / 3) / d[i] for i in pos)  # ray meets the cone here
    lo, hi = mpf(0), r_hi
    assert g(hi) > 0  # residual is exactly 1 on the cone
    for _ in range(240):
        mid = (lo + hi) / 2
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------- derivations

sym_a = acosh(mpf(3) / 2)
sym_s = 3 * sym_a

# the symmetric point really is the fiber solution over the origin
sa, sb, sc = h_invert(0, 0)
assert abs(sa - sym_a) < mpf(10) ** -55

res_111 = residual(1, 1, 1)

# exact identity: the collar expression equals 1 everywhere on the cone
# (the check at a point of scale S needs ~0.45*S extra digits to survive the
# cancellation against cosh products of size e^S)
for (x, y) in [(6, -2), (2, 2), (-3, -1), (0.5, 0.25)]:
    assert abs(residual(*delta_invert(x, y)) - 1) < mpf(10) ** -50
with mp.workdps(720):
    assert abs(residual(*delta_invert(1000, 250)) - 1) < mpf(10) ** -50

fn10 = fn_triangle(mpf(1), mpf(0))
assert abs(residual(*fn10)) < mpf(10) ** -55
fn10_x, fn10_y = project_pi(*fn10)

fnh = fn_triangle(mpf(1), mpf("0.5"))
assert abs(residual(*fnh)) < mpf(10) ** -55
fnh_x, fnh_y = project_pi(*fnh)

kappa_1 = asinh(1 / sinh(1))
assert abs(kappa_1 - fn10[1]) < mpf(10) ** -55  # b at zero twist equals the depth
kappa_sym = asinh(1 / sinh(sym_a))
assert abs(kappa_sym - log(sqrt(5))) < mpf(10) ** -55
kappa_5 = asinh(1 / sinh(5))

h_1 = coth(1)
h_sym = sym_a * coth(sym_a)

# metric values at the symmetric point
q_sym = 1 / sinh(sym_a) ** 2
assert abs(q_sym - mpf(4) / 5) < mpf(10) ** -55
sym_F = -sym_a ** 2 * sqrt(1 - q_sym ** 2)       # sign -1: cosh c = 3/2 < 9/4
assert abs(abs(sym_F) - sym_a ** 2 * mpf(3) / 5) < mpf(10) ** -55
sym_E_y05 = metric_EFG(sym_a, sym_a, sym_a, mpf("0.5"))[0]
sym_diag_len = segment_length(sym_a, sym_a, sym_a, (0, -1), (2, 1))

# holonomy at the symmetric point and the trace identities
A, B, sym_p, sym_s_entry = holonomy(sym_a, sym_a, sym_a)
assert abs(A[0, 0] + A[1, 1] - 3) < mpf(10) ** -55
assert abs(B[0, 0] + B[1, 1] - 3) < mpf(10) ** -55
C_ = A * B
assert abs(C_[0, 0] + C_[1, 1] - 3) < mpf(10) ** -55
assert abs(commutator_trace(sym_a, sym_a, sym_a) + 2) < mpf(10) ** -50

comm_111 = commutator_trace(1, 1, 1)
assert abs(comm_111 - (4 * res_111 - 2)) < mpf(10) ** -50  # tr[A,B] + 2 = 4*residual

# fiber solves frozen for the buried-Newton cross-checks
hinv_6m2 = h_invert(6, -2)
hinv_60m20 = h_invert(60, -20)
hinv_2p2 = h_invert(2, 2)
hinv_05m025 = h_invert("0.5", "-0.25")
hinv_0p01 = h_invert(0, "0.1")

# the (0, 0.1) point is the regression witness for the cross-term sign:
# BOTH orderings (a,b,c) and (a,c,b) are minus-sign there.
a0, b0, c0 = hinv_0p01
assert cosh(c0) < cosh(a0) * cosh(b0)
assert cosh(b0) < cosh(a0) * cosh(c0)

# ray-limit goldens for the direction (6,-2), word beta: b(t)/t
raybeta_t1 = hinv_6m2[1]
raybeta_t10 = hinv_60m20[1] / 10
# at t = 100 the surface-to-cone gap is ~e^{-200}: check it vanishes at double precision
g100 = h_invert(600, -200, dps=700)
assert abs(g100[1] / 100 - 1) < mpf(10) ** -60

# large point for the log-scale trace stress test: (300,-100) solves to
# (150, 50, 100) + O(e^{-100}), i.e. exactly those doubles
g50 = h_invert(300, -100, dps=350)
assert abs(g50[0] - 150) < mpf(10) ** -40
assert abs(g50[1] - 50) < mpf(10) ** -40
assert abs(g50[2] - 100) < mpf(10) ** -40

# cross-section radii (image point is r*(cos phi, sin phi))
cross_r_C3 = section_radius(3, 0)
cross_r_C4 = section_radius(4, 0)
cross_r_C5 = section_radius(5, 0)
assert cross_r_C3 < cross_r_C4 < cross_r_C5  # nesting at angle 0
from mpmath import pi as mp_pi
cross_r_C4_a90 = section_radius(4, mp_pi / 2)

# degeneration gap at (l, tau) = (1, 0.5)
fnx, fny = fnh_x, fnh_y
dt_tri = (mpf(1), mpf("0.5"), mpf("0.5"))
dtx, dty = project_pi(*dt_tri)
degen_gap_1_05 = sqrt((fnx - dtx) ** 2 + (fny - dty) ** 2)


def foliation_sign(a, b, c):
    """+1 iff c = a + b (checked first, so ties go +1), else c = |a - b|."""
    if abs(a + b - c) <= mpf(10) ** -50:
        return 1
    assert abs(abs(a - b) - c) <= mpf(10) ** -50
    return -1


def annulus_defect(x, y, height, dps=60, iters=260):
    """Operator norm of ds^2 - omega^2 at the given height, where ds^2 uses
    the collar-surface fiber over (x, y) and omega the cone fiber."""
    with mp.workdps(dps):
        th = h_invert(x, y, dps=dps, iters=iters)
        td = delta_invert(x, y)
        A = td[0]
        B = foliation_sign(*td) * td[1]
        E, F, G = metric_EFG(*th, mpf(height))
        u, w, v = E - A ** 2, F - A * B, G - B ** 2
        mid, rad = (u + v) / 2, sqrt(((u - v) / 2) ** 2 + w ** 2)
        return max(abs(mid + rad), abs(mid - rad))


defect_6m2_y0 = annulus_defect(6, -2, 0)
defect_6m2_y1 = annulus_defect(6, -2, 1)
defect_origin_y0 = annulus_defect(0, 0, 0)
# at t = 100 along the same ray the two fibers merge (gap ~ e^{-599}) and the
# strip term in E dies (~ (a/sinh a)^2), so the defect collapses entirely;
# the bisection count caps the resolvable gap at 4/2^iters, hence iters=600
assert annulus_defect(600, -200, 1, dps=700, iters=600) < mpf(10) ** -100

# trace of the product holonomy at the off-surface triple (1,1,1): generic
# word oracle (on the surface this trace would be 2cosh(c) instead)
Ah, Bh, _, _ = holonomy(1, 1, 1)
ABh = Ah * Bh
tr_ab_111 = ABh[0, 0] + ABh[1, 1]
tri = hinv_6m2
Ao, Bo, _, _ = holonomy(*tri)
ABo = Ao * Bo
assert abs(ABo[0, 0] + ABo[1, 1] - 2 * cosh(tri[2])) < mpf(10) ** -50


# ---------------------------------------------------------------- emission

def emit(name, value, comment=""):
    d = float(value)
    body = f"inline constexpr double {name} = {d!r};"
    print(f"{body}{('  // ' + comment) if comment else ''}")


print("// Expected values for the test suite.")
print("// Generated by tests/oracles/generate_expected.py (mpmath, 60-digit precision).")
print("// Regenerate with: python3 tests/oracles/generate_expected.py > tests/expected_values.hpp")
print("#pragma once")
print()
print("namespace expected {")
print()
emit("sym_a", sym_a, "arccosh(3/2): side of the symmetric collar-surface point")
emit("sym_s", sym_s, "perimeter a+b+c at the symmetric point")
emit("residual_111", res_111, "collar residual of (1,1,1): 3cosh^2(1) - 2cosh^3(1)")
emit("comm_trace_111", comm_111, "commutator trace of the (1,1,1) pair (= 4*residual - 2)")
print()
emit("fn10_b", fn10[1], "arccosh(coth 1):    b of the (l,tau) = (1,0) conversion")
emit("fn10_c", fn10[2], "arccosh(cosh1*coth1): c of the same")
emit("fn10_x", fn10_x)
emit("fn10_y", fn10_y)
emit("fnh_b", fnh[1], "(l,tau) = (1, 0.5)")
emit("fnh_c", fnh[2])
emit("fnh_x", fnh_x)
emit("fnh_y", fnh_y)
emit("degen_gap_1_05", degen_gap_1_05, "|fn image - dt image| in the plane at (l,tau)=(1,0.5)")
print()
emit("kappa_1", kappa_1, "collar depth at a = 1 (equals fn10_b: zero-twist b is the depth)")
emit("kappa_sym", kappa_sym, "depth at the symmetric point = ln(sqrt 5)")
emit("kappa_5", kappa_5, "depth at a = 5")
emit("h_1", h_1, "boundary half-length coth(1) at a = 1")
emit("h_sym", h_sym, "boundary half-length a*coth(a) at the symmetric point")
print()
emit("sym_F", sym_F, "metric cross-coefficient at the symmetric point (sign -1)")
emit("sym_E_y05", sym_E_y05, "E at height y = 0.5, symmetric point")
emit("sym_diag_len", sym_diag_len, "length of the segment (0,-1) -> (2,1), symmetric point")
print()
emit("sym_p", sym_p, "holonomy B[0][0] at the symmetric point")
emit("sym_s_entry", sym_s_entry, "holonomy B[1][1] at the symmetric point")
print()
for nm, tri in [("hinv_6m2", hinv_6m2), ("hinv_60m20", hinv_60m20),
                ("hinv_2p2", hinv_2p2), ("hinv_05m025", hinv_05m025),
                ("hinv_0p01", hinv_0p01)]:
    emit(nm + "_a", tri[0])
    emit(nm + "_b", tri[1])
    emit(nm + "_c", tri[2])
print()
emit("raybeta_t1", raybeta_t1, "b(t)/t at t=1 along the ray through (6,-2)")
emit("raybeta_t10", raybeta_t10, "b(t)/t at t=10")
print()
emit("cross_r_C3", cross_r_C3, "cross-section radius at angle 0, perimeter C=3")
emit("cross_r_C4", cross_r_C4)
emit("cross_r_C5", cross_r_C5)
emit("cross_r_C4_a90", cross_r_C4_a90, "C=4 radius at angle pi/2")
print()
emit("defect_6m2_y0", defect_6m2_y0, "|ds^2 - omega^2| opnorm over (6,-2) at height 0")
emit("defect_6m2_y1", defect_6m2_y1, "same at height 1")
emit("defect_origin_y0", defect_origin_y0, "over the origin the form is zero: norm of ds^2 itself")
emit("tr_ab_111", tr_ab_111, "trace of A*B for the off-surface triple (1,1,1)")
print()
print("}  // namespace expected")
