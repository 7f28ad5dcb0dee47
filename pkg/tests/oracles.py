"""Plain-loop reference implementations used as independent test oracles.

Nothing here imports the package's numerical code; only the literal
formulas written out with Python floats and loops.
"""

import math


def tx(bits, d, e_elec=50e-9, eps_fs=10e-12, eps_mp=0.0013e-12):
    d0 = math.sqrt(eps_fs / eps_mp)
    if d < d0:
        return bits * e_elec + bits * eps_fs * d ** 2
    return bits * e_elec + bits * eps_mp * d ** 4


def dist(a, b):
    return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2)


def memberships(points, centroids, m):
    """u_ij = 1 / sum_k (d_ij / d_ik)^(2/(m-1)), with the coincident-point limit."""
    out = []
    for x in points:
        ds = [dist(x, c) for c in centroids]
        zeros = [j for j, d in enumerate(ds) if d == 0]
        if zeros:
            out.append([1 / len(zeros) if j in zeros else 0.0 for j in range(len(centroids))])
            continue
        row = []
        for j in range(len(centroids)):
            s = 0.0
            for k in range(len(centroids)):
                s += (ds[j] / ds[k]) ** (2 / (m - 1))
            row.append(1 / s)
        out.append(row)
    return out


def objective(points, centroids, u, m):
    total = 0.0
    for i, x in enumerate(points):
        for j, c in enumerate(centroids):
            total += u[i][j] ** m * dist(x, c) ** 2
    return total


def centroids_from(points, u, m):
    out = []
    for j in range(len(u[0])):
        wx = wy = ws = 0.0
        for i, x in enumerate(points):
            w = u[i][j] ** m
            wx += w * x[0]
            wy += w * x[1]
            ws += w
        out.append((wx / ws, wy / ws))
    return out


def fcm(points, init, m=2.0, tol=1e-12, max_iter=10_000):
    c = [tuple(p) for p in init]
    for _ in range(max_iter):
        u = memberships(points, c, m)
        new = centroids_from(points, u, m)
        shift = max(dist(a, b) for a, b in zip(c, new))
        c = new
        if shift < tol:
            break
    return c


def fitness(points, centroids, sink, bits=4096):
    total = 0.0
    for x in points:
        best_j, best_d = None, None
        for j, c in enumerate(centroids):
            d = dist(x, c)
            if best_d is None or d < best_d:
                best_j, best_d = j, d
        total += tx(bits, best_d) + tx(bits, dist(centroids[best_j], sink))
    return total / len(points)


def expected_round_energy(points, u, centroids, sink, m, bits=4096, e_da=5e-9):
    total = 0.0
    for i, x in enumerate(points):
        for j, c in enumerate(centroids):
            total += u[i][j] ** m * (tx(bits, dist(x, c)) + bits * e_da)
    for c in centroids:
        total += tx(bits, dist(c, sink))
    return total


def sample_sd(xs):
    mu = sum(xs) / len(xs)
    return math.sqrt(sum((x - mu) ** 2 for x in xs) / (len(xs) - 1))
