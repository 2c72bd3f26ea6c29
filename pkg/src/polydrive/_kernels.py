"""Numba-compiled integration kernels.

One Dormand-Prince 5(4) stepper for the Schroedinger equation (state
vectors) and one for the Lindblad master equation (density matrices), both
with PI step-size control and cubic-Hermite dense output at the requested
grid times.  The Hamiltonian arrives in the structured form produced by
models.TimeDependentModel:

    H(t) = a(t) * D + S + Omega e^{i delta t} U + H.c.(U term),
    a(t) = base + two_omega * sum_{n=1}^{N} cos(n * spacing * t).

Status codes: 0 ok, 1 step underflow, 2 NaN/Inf detected.
"""

import math

import numpy as np
from numba import njit

# Dormand-Prince 5(4) tableau
C2, C3, C4, C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# difference between the 5th- and embedded 4th-order weights
E1, E3, E4, E5, E6, E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

# PI controller exponents and clamps
ALPHA = 0.7 / 5.0
BETA = 0.4 / 5.0
FAC_MIN = 0.2
FAC_MAX = 5.0
SAFETY = 0.9
H_UNDERFLOW = 1e-14


@njit(cache=True)
def _comb_amp(t, base, two_omega, spacing, npairs):
    a = base
    for n in range(1, npairs + 1):
        a += two_omega * math.cos(n * spacing * t)
    return a


@njit(cache=True)
def _sch_rhs(t, y, ham):
    drive, static, up, up_dag, has_static, has_up, base, two_om, spacing, npairs, rabi, delta = ham
    a = _comb_amp(t, base, two_om, spacing, npairs)
    out = a * np.dot(drive, y)
    if has_static:
        out = out + np.dot(static, y)
    if has_up:
        ph = rabi * complex(math.cos(delta * t), math.sin(delta * t))
        out = out + ph * np.dot(up, y) + ph.conjugate() * np.dot(up_dag, y)
    return -1j * out


@njit(cache=True)
def _sup_rhs(t, y, out, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta):
    """Flattened-Liouvillian matvec: out = (a(t) dsup + csup [+ phase terms]) y."""
    n = y.shape[0]
    a = _comb_amp(t, base, two_om, spacing, npairs)
    if has_up:
        ph = rabi * complex(math.cos(delta * t), math.sin(delta * t))
        phc = ph.conjugate()
        for i in range(n):
            s = 0.0 + 0.0j
            for j in range(n):
                s += (a * dsup[i, j] + csup[i, j] + ph * upsup[i, j] + phc * dnsup[i, j]) * y[j]
            out[i] = s
    else:
        for i in range(n):
            s = 0.0 + 0.0j
            for j in range(n):
                s += (a * dsup[i, j] + csup[i, j]) * y[j]
            out[i] = s


@njit(cache=True)
def integrate_sch(y0, grid, ham, rtol, atol, h0, hmax, renorm_tol):
    d = y0.shape[0]
    ngrid = grid.shape[0]
    states = np.zeros((ngrid, d), dtype=np.complex128)
    t = grid[0]
    tend = grid[ngrid - 1]
    y = y0.copy()
    states[0, :] = y
    gi = 1
    k1 = _sch_rhs(t, y, ham)
    h = h0
    errprev = 1.0e-4
    nsteps = 0
    nrej = 0
    maxdrift = 0.0
    status = 0
    while t < tend:
        if h > hmax:
            h = hmax
        last = False
        if t + h >= tend:
            h = tend - t
            last = True
        if h < H_UNDERFLOW:
            if last:
                break
            status = 1
            break
        k2 = _sch_rhs(t + C2 * h, y + h * (A21 * k1), ham)
        k3 = _sch_rhs(t + C3 * h, y + h * (A31 * k1 + A32 * k2), ham)
        k4 = _sch_rhs(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3), ham)
        k5 = _sch_rhs(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4), ham)
        k6 = _sch_rhs(
            t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5), ham
        )
        y5 = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
        k7 = _sch_rhs(t + h, y5, ham)
        errsum = 0.0
        for i in range(d):
            e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            ay = abs(y[i])
            ay5 = abs(y5[i])
            sc = atol + rtol * (ay if ay > ay5 else ay5)
            q = abs(e) / sc
            errsum += q * q
        err = math.sqrt(errsum / d)
        if not math.isfinite(err):
            status = 2
            break
        if err <= 1.0:
            tn = t + h
            while gi < ngrid - 1 and grid[gi] <= tn:
                s = (grid[gi] - t) / h
                s2 = s * s
                s3 = s2 * s
                w_y0 = 2.0 * s3 - 3.0 * s2 + 1.0
                w_f0 = (s3 - 2.0 * s2 + s) * h
                w_y1 = -2.0 * s3 + 3.0 * s2
                w_f1 = (s3 - s2) * h
                for i in range(d):
                    states[gi, i] = w_y0 * y[i] + w_f0 * k1[i] + w_y1 * y5[i] + w_f1 * k7[i]
                gi += 1
            t = tend if last else tn
            y = y5
            k1 = k7
            nsteps += 1
            nrm2 = 0.0
            for i in range(d):
                nrm2 += y[i].real * y[i].real + y[i].imag * y[i].imag
            drift = abs(nrm2 - 1.0)
            if drift > maxdrift:
                maxdrift = drift
            if drift > renorm_tol:
                inv = 1.0 / math.sqrt(nrm2)
                y = y * inv
                k1 = k1 * inv
            if err < 1e-10:
                err = 1e-10
            fac = SAFETY * err ** (-ALPHA) * errprev ** BETA
            if fac > FAC_MAX:
                fac = FAC_MAX
            if fac < FAC_MIN:
                fac = FAC_MIN
            errprev = err
            h = h * fac
        else:
            nrej += 1
            fac = SAFETY * err ** (-0.2)
            if fac < 0.1:
                fac = 0.1
            if fac > 1.0:
                fac = 1.0
            h = h * fac
    if status == 0:
        while gi < ngrid:
            states[gi, :] = y
            gi += 1
    return states, status, nsteps, nrej, maxdrift


@njit(cache=True)
def integrate_lin(
    rho0_flat, d, grid, dsup, csup, upsup, dnsup, has_up,
    base, two_om, spacing, npairs, rabi, delta,
    rtol, atol, h0, hmax, renorm_tol,
):
    n = rho0_flat.shape[0]
    ngrid = grid.shape[0]
    states = np.zeros((ngrid, n), dtype=np.complex128)
    t = grid[0]
    tend = grid[ngrid - 1]
    y = rho0_flat.copy()
    states[0, :] = y
    gi = 1
    k1 = np.zeros(n, dtype=np.complex128)
    k2 = np.zeros(n, dtype=np.complex128)
    k3 = np.zeros(n, dtype=np.complex128)
    k4 = np.zeros(n, dtype=np.complex128)
    k5 = np.zeros(n, dtype=np.complex128)
    k6 = np.zeros(n, dtype=np.complex128)
    k7 = np.zeros(n, dtype=np.complex128)
    ytmp = np.zeros(n, dtype=np.complex128)
    y5 = np.zeros(n, dtype=np.complex128)
    _sup_rhs(t, y, k1, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
    h = h0
    errprev = 1.0e-4
    nsteps = 0
    nrej = 0
    maxdrift = 0.0
    status = 0
    while t < tend:
        if h > hmax:
            h = hmax
        last = False
        if t + h >= tend:
            h = tend - t
            last = True
        if h < H_UNDERFLOW:
            if last:
                break
            status = 1
            break
        for i in range(n):
            ytmp[i] = y[i] + h * (A21 * k1[i])
        _sup_rhs(t + C2 * h, ytmp, k2, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
        for i in range(n):
            ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
        _sup_rhs(t + C3 * h, ytmp, k3, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
        for i in range(n):
            ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
        _sup_rhs(t + C4 * h, ytmp, k4, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
        for i in range(n):
            ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
        _sup_rhs(t + C5 * h, ytmp, k5, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
        for i in range(n):
            ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
        _sup_rhs(t + h, ytmp, k6, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
        for i in range(n):
            y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
        _sup_rhs(t + h, y5, k7, dsup, csup, upsup, dnsup, has_up, base, two_om, spacing, npairs, rabi, delta)
        errsum = 0.0
        for i in range(n):
            e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            ay = abs(y[i])
            ay5 = abs(y5[i])
            sc = atol + rtol * (ay if ay > ay5 else ay5)
            q = abs(e) / sc
            errsum += q * q
        err = math.sqrt(errsum / n)
        if not math.isfinite(err):
            status = 2
            break
        if err <= 1.0:
            tn = t + h
            while gi < ngrid - 1 and grid[gi] <= tn:
                s = (grid[gi] - t) / h
                s2 = s * s
                s3 = s2 * s
                w_y0 = 2.0 * s3 - 3.0 * s2 + 1.0
                w_f0 = (s3 - 2.0 * s2 + s) * h
                w_y1 = -2.0 * s3 + 3.0 * s2
                w_f1 = (s3 - s2) * h
                for i in range(n):
                    states[gi, i] = w_y0 * y[i] + w_f0 * k1[i] + w_y1 * y5[i] + w_f1 * k7[i]
                gi += 1
            t = tend if last else tn
            # re-symmetrize: Hermiticity drift must not compound
            for i in range(d):
                for j in range(i, d):
                    v = 0.5 * (y5[i * d + j] + y5[j * d + i].conjugate())
                    y[i * d + j] = v
                    y[j * d + i] = v.conjugate()
            for i in range(n):
                k1[i] = k7[i]
            nsteps += 1
            tr = 0.0
            for i in range(d):
                tr += y[i * d + i].real
            drift = abs(tr - 1.0)
            if drift > maxdrift:
                maxdrift = drift
            if drift > renorm_tol:
                inv = 1.0 / tr
                for i in range(n):
                    y[i] = y[i] * inv
                    k1[i] = k1[i] * inv
            if err < 1e-10:
                err = 1e-10
            fac = SAFETY * err ** (-ALPHA) * errprev ** BETA
            if fac > FAC_MAX:
                fac = FAC_MAX
            if fac < FAC_MIN:
                fac = FAC_MIN
            errprev = err
            h = h * fac
        else:
            nrej += 1
            fac = SAFETY * err ** (-0.2)
            if fac < 0.1:
                fac = 0.1
            if fac > 1.0:
                fac = 1.0
            h = h * fac
    if status == 0:
        while gi < ngrid:
            states[gi, :] = y
            gi += 1
    return states, status, nsteps, nrej, maxdrift
