"""Pure-numpy twin of ``_kernels.pyx``; same quadrature, same signatures."""
import numpy as np

_CHUNK = 2048


def _axis_tables(xs, centre, inv_sqrt_eta, v, nodes, weights):
    # nodes against the product of smoothing and state Gaussians
    wide = 1.0 + 4.0 * v
    x = xs * inv_sqrt_eta
    z = np.exp(-2.0 * (x - centre) ** 2 / wide) / np.sqrt(np.pi * wide)
    mu = (x + 4.0 * centre * v) / wide
    x0 = mu[:, None] + np.sqrt(2.0 * v / wide) * nodes[None, :]
    gauss = z[:, None] * weights[None, :]
    lag = (2.0 * x0 - centre) ** 2
    return gauss, lag


def _tables(qs, ps, alpha_re, alpha_im, sqrt_eta, sigma, nodes, weights):
    eta = sqrt_eta * sqrt_eta
    v = sigma / eta
    gq, aq = _axis_tables(qs, alpha_re, 1.0 / sqrt_eta, v, nodes, weights)
    gp, ap = _axis_tables(ps, alpha_im, 1.0 / sqrt_eta, v, nodes, weights)
    return eta, gq, aq, gp, ap


def convolve_pacs_grid(qs, ps, alpha_re, alpha_im, pref, c0, c1, c2,
                       sqrt_eta, sigma, nodes, weights):
    qs = np.ascontiguousarray(qs, dtype=float)
    ps = np.ascontiguousarray(ps, dtype=float)
    eta, gq, aq, gp, ap = _tables(qs, ps, alpha_re, alpha_im, sqrt_eta, sigma,
                                  np.asarray(nodes), np.asarray(weights))
    out = np.empty((qs.size, ps.size))
    for i in range(qs.size):
        x = aq[i][None, :, None] + ap[:, None, :]
        inner = np.einsum("jkl,jl->jk", c0 + x * (c1 + c2 * x), gp)
        out[i] = inner @ gq[i]
    return out * (pref / eta)


def convolve_pacs_points(qs, ps, alpha_re, alpha_im, pref, c0, c1, c2,
                         sqrt_eta, sigma, nodes, weights):
    qs = np.ascontiguousarray(qs, dtype=float)
    ps = np.ascontiguousarray(ps, dtype=float)
    eta, gq, aq, gp, ap = _tables(qs, ps, alpha_re, alpha_im, sqrt_eta, sigma,
                                  np.asarray(nodes), np.asarray(weights))
    out = np.empty(qs.size)
    for start in range(0, qs.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        x = aq[sl, :, None] + ap[sl, None, :]
        inner = np.einsum("ikl,il->ik", c0 + x * (c1 + c2 * x), gp[sl])
        out[sl] = np.einsum("ik,ik->i", inner, gq[sl])
    return out * (pref / eta)
