"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

The Jacobi solver runs the same cyclic sweep on every matrix of the stack at
once, so a θ-sweep of a few thousand small matrices stays vectorized.
"""
import numpy as np


def eigvalsh_batch(stack, tol=1e-13, max_sweeps=100):
    h = np.array(stack, dtype=np.complex128, copy=True)
    if h.ndim != 3 or h.shape[1] != h.shape[2]:
        raise ValueError("expected a (B, n, n) stack")
    nb, n, _ = h.shape
    fro = np.sqrt(np.sum(np.abs(h) ** 2, axis=(1, 2)))
    thresh = tol * np.maximum(fro, 1.0)
    sweeps = np.full(nb, -1, dtype=np.int64)
    iu = np.triu_indices(n, 1)
    done = np.zeros(nb, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(2.0 * np.sum(np.abs(h[:, iu[0], iu[1]]) ** 2, axis=1))
        newly = (~done) & (off <= thresh)
        sweeps[newly] = sweep
        done |= newly
        if done.all() or sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                hpq = h[:, p, q]
                r = np.abs(hpq)
                active = r >= 1e-300
                if not active.any():
                    continue
                rs = np.where(active, r, 1.0)
                e = np.where(active, hpq / rs, 1.0)
                a = h[:, p, p].real.copy()
                b = h[:, q, q].real.copy()
                theta = (b - a) / (2.0 * rs)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta == 0.0, 1.0, t)
                t = np.where(active, t, 0.0)
                cs = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * cs
                g_qp = -sn * np.conj(e)
                g_qq = cs * np.conj(e)
                col_p = h[:, :, p].copy()
                col_q = h[:, :, q].copy()
                h[:, :, p] = col_p * cs[:, None] + col_q * g_qp[:, None]
                h[:, :, q] = col_p * sn[:, None] + col_q * g_qq[:, None]
                row_p = h[:, p, :].copy()
                row_q = h[:, q, :].copy()
                h[:, p, :] = cs[:, None] * row_p + np.conj(g_qp)[:, None] * row_q
                h[:, q, :] = sn[:, None] * row_p + np.conj(g_qq)[:, None] * row_q
                h[:, p, q] = np.where(active, 0.0, h[:, p, q])
                h[:, q, p] = np.where(active, 0.0, h[:, q, p])
                h[:, p, p] = np.where(active, a - t * rs, h[:, p, p])
                h[:, q, q] = np.where(active, b + t * rs, h[:, q, q])
    vals = np.sort(np.diagonal(h, axis1=1, axis2=2).real, axis=1)
    return vals, sweeps


def clip_convex(poly, normals, offsets, slack=1e-12):
    src = np.asarray(poly, dtype=np.complex128).copy()
    normals = np.asarray(normals, dtype=np.complex128)
    offsets = np.asarray(offsets, dtype=np.float64)
    for nrm, c in zip(normals, offsets):
        count = len(src)
        if count == 0:
            break
        d = (np.conj(nrm) * src).real - c
        nxt = np.roll(src, -1)
        dn = np.roll(d, -1)
        keep = d <= slack
        if count > 1:
            cross = ((d < -slack) & (dn > slack)) | ((d > slack) & (dn < -slack))
        else:
            cross = np.zeros(count, dtype=bool)
        if keep.all():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(cross, d / np.where(cross, d - dn, 1.0), 0.0)
        hits = src + (nxt - src) * s
        # interleave kept vertex i then the crossing on edge i -> i+1
        slots = np.empty(2 * count, dtype=np.complex128)
        mask = np.empty(2 * count, dtype=bool)
        slots[0::2] = src
        slots[1::2] = hits
        mask[0::2] = keep
        mask[1::2] = cross
        out = slots[mask]
        if len(out) == 0:
            src = out
            break
        gap = np.abs(np.diff(out)) > slack
        out = out[np.concatenate(([True], gap))]
        if len(out) > 1 and abs(out[-1] - out[0]) <= slack:
            out = out[:-1]
        src = out
    return src.copy()
