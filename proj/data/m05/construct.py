#!/usr/bin/env python3
"""Build the M0,5 example: the ambient fan X_5, a refinement containing the
tropical moduli fan as a subfan, the tropical cocycle and the psi class data.

Usage: construct.py [--out DIR] [--torweight PATH]

With --torweight the psi weight on the refined fan is computed by
`torweight forgetful` and written as psi_weight.json.
"""

import argparse
import itertools
import json
import pathlib
import subprocess
import sys

import sympy

N_POINTS = 5
K = 5  # the marked point defining X_k and f_k
POINTS = range(1, N_POINTS + 1)
PAIRS = list(itertools.combinations(POINTS, 2))


def split_vector(part):
    """Distance vector of the tree with one bounded edge separating part."""
    part = set(part)
    return [1 if (i in part) != (j in part) else 0 for i, j in PAIRS]


def lattice_coordinates():
    """Coordinates of v_I in Q_n = R^pairs / phi(R^n), basis v_ij (i,j != k)."""
    phi = [[1 if a in (i, j) else 0 for a in POINTS] for i, j in PAIRS]
    basis_pairs = [p for p in PAIRS if K not in p][:-1]
    cols = [list(c) for c in zip(*phi)] + [split_vector(p) for p in basis_pairs]
    a = sympy.Matrix(cols).T
    assert a.rank() == len(PAIRS), "basis does not complete the image of phi"
    coords = {}
    for p in PAIRS:
        x = a.LUsolve(sympy.Matrix(split_vector(p)))
        c = list(x[N_POINTS:])
        assert all(v.is_integer for v in c), f"v_{p} is not in the lattice spanned by the basis"
        coords[p] = [int(v) for v in c]
    return coords, basis_pairs


def compatible(p, q):
    return not set(p) & set(q)


def split_name(p):
    rest = [a for a in POINTS if a not in p]
    return "".join(map(str, p)) + "|" + "".join(map(str, rest))


def containing_face(rays, cone, w):
    """Rays of the face of a simplicial cone whose relative interior holds w."""
    m = sympy.Matrix([rays[r] for r in cone]).T
    if m.rank() < len(cone):
        return None
    x = m.LUsolve(sympy.Matrix(w))
    if any(v < 0 for v in x):
        return None
    return tuple(r for r, v in zip(cone, x) if v != 0)


def stellar(rays, cones, w):
    """Stellar subdivision of a simplicial fan at the primitive vector w."""
    tau = None
    for c in cones:
        tau = containing_face(rays, c, w)
        if tau is not None:
            break
    assert tau is not None, "vector outside the support"
    new = len(rays)
    rays = rays + [w]
    out = []
    for c in cones:
        if not set(tau) <= set(c):
            out.append(c)
            continue
        for t in tau:
            out.append(tuple(sorted([r for r in c if r != t] + [new])))
    return rays, out


def key(cone):
    return ",".join(str(r) for r in sorted(cone))


def faces(cone):
    for k in range(len(cone) + 1):
        yield from itertools.combinations(sorted(cone), k)


def rat(x):
    x = sympy.Rational(x)
    return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"


def exp_pl_data(rays, cones, values, scale):
    """Per maximal cone the exponent m with <m, v_r> = scale * values[r]."""
    out = {}
    for c in cones:
        m = sympy.Matrix([rays[r] for r in c])
        b = sympy.Matrix([scale * values[r] for r in c])
        x = m.LUsolve(b)
        out[key(c)] = [{"coeff": "1", "exp": [rat(v) for v in x]}]
    return out


def dump(path, obj):
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent))
    ap.add_argument("--torweight", default=None)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    coords, basis_pairs = lattice_coordinates()
    dim = len(basis_pairs)

    # X_k: rays v_ij with i, j != k, maximal cones all (C(n-1,2) - 1)-subsets
    xk_pairs = [p for p in PAIRS if K not in p]
    xk_rays = [coords[p] for p in xk_pairs]
    assert [sum(col) for col in zip(*xk_rays)] == [0] * dim
    xk_cones = [tuple(c) for c in itertools.combinations(range(len(xk_rays)), dim)]

    # f_k is 1 on every ray of X_k; it is linear on the cones of X_k, so on
    # the refinement it takes the values of its linear extension
    xk_f = {r: 1 for r in range(len(xk_rays))}

    # the remaining tropical rays v_ik sit inside cones of X_k; subdivide
    rays, cones = list(xk_rays), list(xk_cones)
    ray_pair = {r: p for r, p in enumerate(xk_pairs)}
    for p in PAIRS:
        if K in p:
            rays, cones = stellar(rays, cones, coords[p])
            ray_pair[len(rays) - 1] = p

    def extend(r):
        c = next(c for c in xk_cones if containing_face(xk_rays, c, rays[r]) is not None)
        m = sympy.Matrix([xk_rays[i] for i in c])
        b = sympy.Matrix([xk_f[i] for i in c])
        return sum(a * b for a, b in zip(m.LUsolve(b), rays[r]))

    f = {r: extend(r) for r in range(len(rays))}
    for r, p in ray_pair.items():
        if K not in p:
            assert f[r] == 1

    all_cones = set()
    for c in cones:
        all_cones.update(faces(c))
    pair_ray = {p: r for r, p in ray_pair.items()}
    trop = [()] + [(pair_ray[p],) for p in PAIRS]
    for p, q in itertools.combinations(PAIRS, 2):
        if compatible(p, q):
            c = tuple(sorted((pair_ray[p], pair_ray[q])))
            assert c in all_cones, f"tropical cone {c} is not a cone of the refinement"
            trop.append(c)
    assert len(trop) == 1 + 10 + 15

    scale = sympy.Rational(-1, 6)
    dump(out / "xk_fan.json", {"dim": dim, "rays": xk_rays, "max_cones": [list(c) for c in xk_cones]})
    dump(out / "fan.json", {"dim": dim, "rays": rays, "max_cones": [list(c) for c in cones]})
    dump(out / "xk_f.json", {"ray_values": {str(r): rat(v) for r, v in xk_f.items()}})
    dump(out / "f.json", {"ray_values": {str(r): rat(v) for r, v in f.items()}})
    dump(out / "xk_psi.pexp.json", {"cones": exp_pl_data(xk_rays, xk_cones, xk_f, scale)})
    dump(out / "psi.pexp.json", {"cones": exp_pl_data(rays, cones, f, scale)})
    dump(out / "trop_weight.json", {"values": {key(c): 1 for c in trop}, "rational": False})
    dump(
        out / "membership.json",
        {
            "marked_point": K,
            "basis": [split_name(p) for p in basis_pairs],
            "rays": [{"index": r, "split": split_name(ray_pair[r])} for r in range(len(rays))],
            "cones": [
                {"cone": key(c), "in_trop": c in set(trop)}
                for c in sorted(all_cones, key=lambda c: (len(c), c))
            ],
        },
    )

    if args.torweight:
        res = subprocess.run(
            [args.torweight, "forgetful", "--fan", str(out / "fan.json"), "--pexp", str(out / "psi.pexp.json"),
             "--out", str(out / "psi_weight.json")],
            check=False,
        )
        if res.returncode != 0:
            sys.exit(res.returncode)


if __name__ == "__main__":
    main()
