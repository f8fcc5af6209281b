"""Vectorised numpy kernels; the fallback for the compiled ``_kernels`` module."""
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def sift_indices(base, pos, tinv_pad, strides, perms):
    """Element index of each row of ``perms`` in the chain order, ``-1`` if not a member."""
    G = np.array(perms, dtype=np.int64, copy=True)
    n, d = G.shape
    idx = np.zeros(n, dtype=np.int64)
    ok = np.ones(n, dtype=bool)
    for i in range(len(base)):
        u = pos[i, G[:, base[i]]]
        bad = u < 0
        if bad.any():
            ok &= ~bad
            u = np.where(bad, 0, u)
        idx += u * strides[i]
        G = np.take_along_axis(tinv_pad[i][u], G, axis=1)
    ok &= (G == np.arange(d)).all(axis=1)
    idx[~ok] = -1
    return idx


def orbit_labels(maps):
    """Orbit ids of the group generated by the index permutations in ``maps``.

    Orbits are numbered by their smallest member, in increasing order.
    """
    maps = np.asarray(maps, dtype=np.int64)
    n = maps.shape[1]
    if maps.shape[0] == 0:
        return np.arange(n, dtype=np.int64)
    rows = np.tile(np.arange(n, dtype=np.int64), maps.shape[0])
    cols = maps.reshape(-1)
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # renumber by first occurrence
    _, first = np.unique(comp, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(order.size)
    return remap[comp].astype(np.int64)
