# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Gauss-Hermite smoothing of closed-form PACS Wigner functions.

Per axis the evolved field integrates N(x0; x/sqrt(eta), v) exp(-2(x0-c)^2)
times a polynomial, with v = sigma/eta.  The two Gaussians combine into
Z(x) N(x0; mu, v/(1+4v)), with mu = (x/sqrt(eta) + 4cv)/(1+4v) and
Z(x) = exp(-2(x/sqrt(eta) - c)^2/(1+4v)) / sqrt(1+4v), so the nodes are
placed against the combined weight and the remaining factor

    pref * poly(X),  X = |2 beta - alpha|^2

is a polynomial of degree 4 per axis.  X separates over the axes, so
exponentials are computed once per axis point and the inner double loop is
pure multiply-add.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, sqrt, M_PI

cnp.import_array()


cdef void _axis_tables(const double[::1] xs, double centre, double inv_sqrt_eta,
                       double v, const double[::1] nodes,
                       const double[::1] weights, double[:, ::1] gauss,
                       double[:, ::1] lag) noexcept nogil:
    cdef Py_ssize_t i, k
    cdef double x, mu, z, x0, u
    cdef double wide = 1.0 + 4.0 * v
    cdef double spread = sqrt(2.0 * v / wide)
    cdef double norm = 1.0 / sqrt(M_PI * wide)
    for i in range(xs.shape[0]):
        x = xs[i] * inv_sqrt_eta
        u = x - centre
        z = norm * exp(-2.0 * u * u / wide)
        mu = (x + 4.0 * centre * v) / wide
        for k in range(nodes.shape[0]):
            x0 = mu + spread * nodes[k]
            gauss[i, k] = weights[k] * z
            u = 2.0 * x0 - centre
            lag[i, k] = u * u


def convolve_pacs_grid(const double[::1] qs, const double[::1] ps,
                       double alpha_re, double alpha_im,
                       double pref, double c0, double c1, double c2,
                       double sqrt_eta, double sigma,
                       const double[::1] nodes, const double[::1] weights):
    """Evolved field on the tensor grid qs x ps, shape (len(qs), len(ps))."""
    cdef Py_ssize_t nq = qs.shape[0], npp = ps.shape[0], nk = nodes.shape[0]
    cdef Py_ssize_t i, j, k, l
    cdef double eta = sqrt_eta * sqrt_eta
    cdef double v = sigma / eta
    cdef double scale = pref / eta
    cdef double acc, inner, x, gk, ak

    gq_arr = np.empty((nq, nk))
    aq_arr = np.empty((nq, nk))
    gp_arr = np.empty((npp, nk))
    ap_arr = np.empty((npp, nk))
    out_arr = np.empty((nq, npp))
    cdef double[:, ::1] gq = gq_arr, aq = aq_arr, gp = gp_arr, ap = ap_arr
    cdef double[:, ::1] out = out_arr

    with nogil:
        _axis_tables(qs, alpha_re, 1.0 / sqrt_eta, v, nodes, weights, gq, aq)
        _axis_tables(ps, alpha_im, 1.0 / sqrt_eta, v, nodes, weights, gp, ap)
        for i in range(nq):
            for j in range(npp):
                acc = 0.0
                for k in range(nk):
                    gk = gq[i, k]
                    if gk == 0.0:
                        continue
                    ak = aq[i, k]
                    inner = 0.0
                    for l in range(nk):
                        x = ak + ap[j, l]
                        inner = inner + gp[j, l] * (c0 + x * (c1 + c2 * x))
                    acc = acc + gk * inner
                out[i, j] = scale * acc
    return out_arr


def convolve_pacs_points(const double[::1] qs, const double[::1] ps,
                         double alpha_re, double alpha_im,
                         double pref, double c0, double c1, double c2,
                         double sqrt_eta, double sigma,
                         const double[::1] nodes, const double[::1] weights):
    """Evolved field at the paired points (qs[i], ps[i])."""
    cdef Py_ssize_t n = qs.shape[0], nk = nodes.shape[0]
    cdef Py_ssize_t i, k, l
    cdef double eta = sqrt_eta * sqrt_eta
    cdef double v = sigma / eta
    cdef double scale = pref / eta
    cdef double acc, inner, x, gk, ak

    gq_arr = np.empty((n, nk))
    aq_arr = np.empty((n, nk))
    gp_arr = np.empty((n, nk))
    ap_arr = np.empty((n, nk))
    out_arr = np.empty(n)
    cdef double[:, ::1] gq = gq_arr, aq = aq_arr, gp = gp_arr, ap = ap_arr
    cdef double[::1] out = out_arr

    with nogil:
        _axis_tables(qs, alpha_re, 1.0 / sqrt_eta, v, nodes, weights, gq, aq)
        _axis_tables(ps, alpha_im, 1.0 / sqrt_eta, v, nodes, weights, gp, ap)
        for i in range(n):
            acc = 0.0
            for k in range(nk):
                gk = gq[i, k]
                if gk == 0.0:
                    continue
                ak = aq[i, k]
                inner = 0.0
                for l in range(nk):
                    x = ak + ap[i, l]
                    inner = inner + gp[i, l] * (c0 + x * (c1 + c2 * x))
                acc = acc + gk * inner
            out[i] = scale * acc
    return out_arr
