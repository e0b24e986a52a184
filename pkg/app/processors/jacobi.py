"""
Autosolver simétrico por rotaciones de Jacobi (pivote máximo)

Oráculo independiente de Cardano y respaldo cuando la fórmula cerrada pierde precisión.
"""

from typing import Tuple

import numpy as np


def jacobi_eigh(matrix: np.ndarray, rel_tol: float = 1e-15, max_sweeps: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """
    Autovalores ascendentes y autovectores (columnas) de una matriz real simétrica.

    Itera rotaciones sobre el mayor elemento fuera de la diagonal hasta que queda
    por debajo de rel_tol·‖A‖_F.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("Se requiere una matriz cuadrada")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise ValueError("La matriz no es simétrica")

    n = a.shape[0]
    v = np.eye(n)
    threshold = rel_tol * max(np.linalg.norm(a), np.finfo(float).tiny)

    for _ in range(max_sweeps * n * n):
        off = np.abs(np.triu(a, k=1))
        p, q = np.unravel_index(np.argmax(off), off.shape)
        apq = a[p, q]
        if abs(apq) <= threshold:
            break

        app, aqq = a[p, p], a[q, q]
        tau = (aqq - app) / (2.0 * apq)
        if tau >= 0.0:
            t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
        else:
            t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
        c = 1.0 / np.sqrt(1.0 + t * t)
        s = t * c

        for i in range(n):
            if i != p and i != q:
                aip, aiq = a[i, p], a[i, q]
                a[i, p] = a[p, i] = aip * c - aiq * s
                a[i, q] = a[q, i] = aiq * c + aip * s
        a[p, p] = app - t * apq
        a[q, q] = aqq + t * apq
        a[p, q] = a[q, p] = 0.0

        vp, vq = v[:, p].copy(), v[:, q].copy()
        v[:, p] = vp * c - vq * s
        v[:, q] = vq * c + vp * s

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
