# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometry kernels.

C twin of ``fourd.geom._kernels_py`` — same functions, same contract,
same arithmetic order so results agree to the last ulp wherever the
compiler does not contract expressions.
"""
from libc.stdlib cimport free, malloc
from libc.math cimport sqrt

BACKEND_NAME = "c"


cdef double* _copy_doubles(object seq, Py_ssize_t n) except NULL:
    cdef double* buf = <double*> malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            buf[i] = seq[i]
    except Exception:
        free(buf)
        raise
    return buf


def ring_signed_area(coords):
    """Shoelace signed area of a closed flat ring (CCW positive)."""
    cdef Py_ssize_t m = len(coords)
    cdef double* c = _copy_doubles(coords, m)
    cdef Py_ssize_t n = m // 2
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(n - 1):
        acc += c[2 * i] * c[2 * i + 3] - c[2 * i + 2] * c[2 * i + 1]
    free(c)
    return 0.5 * acc


def polyline_length(coords):
    """Total length of a flat path (perimeter when the path is a closed ring)."""
    cdef Py_ssize_t m = len(coords)
    cdef double* c = _copy_doubles(coords, m)
    cdef Py_ssize_t n = m // 2
    cdef double acc = 0.0
    cdef double dx, dy
    cdef Py_ssize_t i
    for i in range(n - 1):
        dx = c[2 * i + 2] - c[2 * i]
        dy = c[2 * i + 3] - c[2 * i + 1]
        acc += sqrt(dx * dx + dy * dy)
    free(c)
    return acc


cdef inline double _pseg_dist2(double px, double py, double ax, double ay,
                               double bx, double by) nogil:
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double d2 = dx * dx + dy * dy
    cdef double t, ex, ey
    if d2 <= 0.0:
        ex = px - ax
        ey = py - ay
        return ex * ex + ey * ey
    t = ((px - ax) * dx + (py - ay) * dy) / d2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    ex = px - (ax + t * dx)
    ey = py - (ay + t * dy)
    return ex * ex + ey * ey


def point_in_ring(double px, double py, coords, double tol=0.0):
    """Locate a point against a closed flat ring.

    Returns 2 if within ``tol`` of the boundary, else 1 inside / 0 outside
    by crossing parity.
    """
    cdef Py_ssize_t m = len(coords)
    cdef double* c = _copy_doubles(coords, m)
    cdef Py_ssize_t n = m // 2
    cdef double tol2 = tol * tol
    cdef bint inside = False
    cdef double x0, y0, x1, y1, xint
    cdef Py_ssize_t i
    for i in range(n - 1):
        x0 = c[2 * i]
        y0 = c[2 * i + 1]
        x1 = c[2 * i + 2]
        y1 = c[2 * i + 3]
        if tol > 0.0 and _pseg_dist2(px, py, x0, y0, x1, y1) <= tol2:
            free(c)
            return 2
        if (y0 > py) != (y1 > py):
            xint = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if px < xint:
                inside = not inside
    free(c)
    return 1 if inside else 0


cdef inline void _project_onto(list acc, double ax, double ay, double dx,
                               double dy, double seg_len, double px,
                               double py, double eps):
    cdef double d2 = dx * dx + dy * dy
    cdef double t = ((px - ax) * dx + (py - ay) * dy) / d2
    if t * seg_len > eps and (1.0 - t) * seg_len > eps:
        acc.append(t)


def segment_split_params(segs, double eps):
    """All-pairs split parameters for a set of segments.

    Same contract as the pure-Python twin: per segment, the strictly
    interior ``t`` parameters where other segments cross, touch, or
    collinearly overlap it.
    """
    cdef Py_ssize_t m = len(segs)
    cdef double* s = _copy_doubles(segs, m)
    cdef Py_ssize_t n = m // 4
    cdef list out = [[] for _ in range(n)]
    cdef double* lens = <double*> malloc(n * sizeof(double))
    if lens == NULL:
        free(s)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef double dx, dy
    for i in range(n):
        dx = s[4 * i + 2] - s[4 * i]
        dy = s[4 * i + 3] - s[4 * i + 1]
        lens[i] = sqrt(dx * dx + dy * dy)

    cdef double li, lj, ax, ay, dix, diy, cx, cy, djx, djy
    cdef double da, db, den, ex, ey, t, u
    cdef list oi, oj
    for i in range(n):
        li = lens[i]
        if li <= eps:
            continue
        ax = s[4 * i]
        ay = s[4 * i + 1]
        dix = s[4 * i + 2] - ax
        diy = s[4 * i + 3] - ay
        oi = <list> out[i]
        for j in range(i + 1, n):
            lj = lens[j]
            if lj <= eps:
                continue
            cx = s[4 * j]
            cy = s[4 * j + 1]
            djx = s[4 * j + 2] - cx
            djy = s[4 * j + 3] - cy

            da = ((cx - ax) * diy - (cy - ay) * dix) / li
            if da < 0.0:
                da = -da
            db = ((cx + djx - ax) * diy - (cy + djy - ay) * dix) / li
            if db < 0.0:
                db = -db
            if da <= eps and db <= eps:
                oj = <list> out[j]
                _project_onto(oi, ax, ay, dix, diy, li, cx, cy, eps)
                _project_onto(oi, ax, ay, dix, diy, li, cx + djx, cy + djy, eps)
                _project_onto(oj, cx, cy, djx, djy, lj, ax, ay, eps)
                _project_onto(oj, cx, cy, djx, djy, lj, ax + dix, ay + diy, eps)
                continue

            den = dix * djy - diy * djx
            if den == 0.0:
                continue
            ex = cx - ax
            ey = cy - ay
            t = (ex * djy - ey * djx) / den
            u = (ex * diy - ey * dix) / den
            if t * li < -eps or (t - 1.0) * li > eps:
                continue
            if u * lj < -eps or (u - 1.0) * lj > eps:
                continue
            if t * li > eps and (1.0 - t) * li > eps:
                oi.append(t)
            if u * lj > eps and (1.0 - u) * lj > eps:
                (<list> out[j]).append(u)
    free(lens)
    free(s)
    return out


def mesh_signed_volume(positions, indices):
    """Divergence-theorem volume of a triangle mesh (positive when outward)."""
    cdef Py_ssize_t mp = len(positions)
    cdef Py_ssize_t mi = len(indices)
    cdef double* p = _copy_doubles(positions, mp)
    cdef long* idx = <long*> malloc(mi * sizeof(long))
    if idx == NULL:
        free(p)
        raise MemoryError()
    cdef Py_ssize_t k
    try:
        for k in range(mi):
            idx[k] = indices[k]
    except Exception:
        free(idx)
        free(p)
        raise
    cdef double acc = 0.0
    cdef long i0, i1, i2
    cdef double x0, y0, z0, x1, y1, z1, x2, y2, z2
    for k in range(0, mi, 3):
        i0 = 3 * idx[k]
        i1 = 3 * idx[k + 1]
        i2 = 3 * idx[k + 2]
        x0 = p[i0]; y0 = p[i0 + 1]; z0 = p[i0 + 2]
        x1 = p[i1]; y1 = p[i1 + 1]; z1 = p[i1 + 2]
        x2 = p[i2]; y2 = p[i2 + 1]; z2 = p[i2 + 2]
        acc += (x0 * (y1 * z2 - z1 * y2)
                - y0 * (x1 * z2 - z1 * x2)
                + z0 * (x1 * y2 - y1 * x2))
    free(idx)
    free(p)
    return acc / 6.0
