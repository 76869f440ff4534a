# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled gain kernels; mirrors skybeam.kernels.reference.

Uniform excitation uses the closed-form Dirichlet magnitude
|sin(count*psi/2) / sin(psi/2)| per axis instead of summing phasors, which
is what makes large arrays (e.g. 128x2) cheap.  Tapered excitation falls
back to an explicit phasor recurrence.
"""
from libc.math cimport cos, fabs, fmod, log10, sin, sqrt

import numpy as np

cdef double DEG = 0.017453292519943295
cdef double TWO_PI = 6.283185307179586
cdef double AF_FLOOR = 1e-12


cdef inline double _wrap180(double a) noexcept nogil:
    a = fmod(a + 180.0, 360.0)
    if a < 0.0:
        a += 360.0
    return a - 180.0


cdef inline double _elem_db(double theta, double phi, double g0, double bw,
                            double sll, double fbr) noexcept nogil:
    cdef double av, ah, att
    phi = _wrap180(phi)
    av = 12.0 * ((theta - 90.0) / bw) * ((theta - 90.0) / bw)
    ah = 12.0 * (phi / bw) * (phi / bw)
    if av > sll:
        av = sll
    if ah > sll:
        ah = sll
    att = av + ah
    if att > fbr:
        att = fbr
    return g0 - att


cdef inline double _axis_mag_uniform(double psi, int count) noexcept nogil:
    cdef double s = sin(0.5 * psi)
    if fabs(s) < 1e-12:
        return <double> count
    return fabs(sin(0.5 * count * psi) / s)


cdef inline double _axis_mag_amps(double psi, const double[::1] amps) noexcept nogil:
    cdef double re = 0.0, im = 0.0
    cdef double c = 1.0, s = 0.0
    cdef double cr = cos(psi), sr = sin(psi), tc
    cdef Py_ssize_t i
    for i in range(amps.shape[0]):
        re += amps[i] * c
        im += amps[i] * s
        tc = c * cr - s * sr
        s = c * sr + s * cr
        c = tc
    return sqrt(re * re + im * im)


def element_gain_db(const double[::1] theta_deg, const double[::1] phi_deg,
                    double max_gain_dbi, double hpbw_deg,
                    double side_lobe_floor_db, double front_back_db):
    cdef Py_ssize_t size = theta_deg.shape[0]
    out = np.empty(size, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(size):
            o[i] = _elem_db(theta_deg[i], phi_deg[i], max_gain_dbi, hpbw_deg,
                            side_lobe_floor_db, front_back_db)
    return out


def array_factor_mag(const double[::1] theta_deg, const double[::1] phi_deg,
                     const double[::1] steer_theta_deg, const double[::1] steer_phi_deg,
                     int m, int n, double dz_wl, double dy_wl,
                     amps_z=None, amps_y=None):
    cdef Py_ssize_t size = theta_deg.shape[0]
    out = np.empty(size, dtype=np.float64)
    cdef double[::1] o = out
    cdef bint uz = amps_z is None
    cdef bint uy = amps_y is None
    cdef double[::1] az = np.ascontiguousarray(amps_z, dtype=np.float64) if not uz else np.empty(0)
    cdef double[::1] ay = np.ascontiguousarray(amps_y, dtype=np.float64) if not uy else np.empty(0)
    cdef double th, ph, psi_z, psi_y, sz, sy
    cdef Py_ssize_t i
    with nogil:
        for i in range(size):
            th = theta_deg[i] * DEG
            ph = phi_deg[i] * DEG
            psi_z = TWO_PI * dz_wl * (cos(th) - cos(steer_theta_deg[i] * DEG))
            psi_y = TWO_PI * dy_wl * (sin(th) * sin(ph)
                                      - sin(steer_theta_deg[i] * DEG) * sin(steer_phi_deg[i] * DEG))
            sz = _axis_mag_uniform(psi_z, m) if uz else _axis_mag_amps(psi_z, az)
            sy = _axis_mag_uniform(psi_y, n) if uy else _axis_mag_amps(psi_y, ay)
            o[i] = sz * sy
    return out


def composite_gain_db(const double[::1] theta_deg, const double[::1] phi_deg,
                      const double[::1] steer_theta_deg, const double[::1] steer_phi_deg,
                      int m, int n, double dz_wl, double dy_wl,
                      amps_z, amps_y,
                      double max_gain_dbi, double hpbw_deg,
                      double side_lobe_floor_db, double front_back_db):
    cdef Py_ssize_t size = theta_deg.shape[0]
    out = np.empty(size, dtype=np.float64)
    cdef double[::1] o = out
    cdef bint uz = amps_z is None
    cdef bint uy = amps_y is None
    cdef double[::1] az = np.ascontiguousarray(amps_z, dtype=np.float64) if not uz else np.empty(0)
    cdef double[::1] ay = np.ascontiguousarray(amps_y, dtype=np.float64) if not uy else np.empty(0)
    cdef double norm = 10.0 * log10(<double> (m * n))
    cdef double th, ph, psi_z, psi_y, sz, sy, af
    cdef Py_ssize_t i
    with nogil:
        for i in range(size):
            th = theta_deg[i] * DEG
            ph = phi_deg[i] * DEG
            psi_z = TWO_PI * dz_wl * (cos(th) - cos(steer_theta_deg[i] * DEG))
            psi_y = TWO_PI * dy_wl * (sin(th) * sin(ph)
                                      - sin(steer_theta_deg[i] * DEG) * sin(steer_phi_deg[i] * DEG))
            sz = _axis_mag_uniform(psi_z, m) if uz else _axis_mag_amps(psi_z, az)
            sy = _axis_mag_uniform(psi_y, n) if uy else _axis_mag_amps(psi_y, ay)
            af = sz * sy
            if af < AF_FLOOR:
                af = AF_FLOOR
            o[i] = (_elem_db(theta_deg[i], phi_deg[i], max_gain_dbi, hpbw_deg,
                             side_lobe_floor_db, front_back_db)
                    + 20.0 * log10(af) - norm)
    return out
