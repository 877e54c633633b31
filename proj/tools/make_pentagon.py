#!/usr/bin/env python3
"""Write the cluster category of type A2 as a twinheart JSON fixture.

Indecomposables are the five diagonals of a pentagon, X_k = (2k, 2k+2)
with vertices mod 5. In this labelling the AR quiver is the cycle
X_0 -> X_1 -> ... -> X_4 -> X_0, every mesh has a single middle term, so
hom(X_i, X_j) is one-dimensional exactly when j is i or i+1 and the
composite of two consecutive arrows is zero. The shift is the AR
translation X_i -> X_{i-2}. Cones are left to the exact_completion
procedure.

Usage: make_pentagon.py OUT.json
"""
import json
import sys

N = 5


def hom_dim(i, j):
    return 1 if (j - i) % N in (0, 1) else 0


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "fixtures/pentagon.json"
    names = ["X%d(%d,%d)" % (k, (2 * k) % N, (2 * k + 2) % N) for k in range(N)]
    dims = [[hom_dim(i, j) for j in range(N)] for i in range(N)]
    comp = []
    for i in range(N):
        for j in range(N):
            for k in range(N):
                size = dims[j][k] * dims[i][j] * dims[i][k]
                if size == 0:
                    continue
                # only composites involving an identity survive
                comp.append({"ijk": [i, j, k], "tensor": [1 if (i == j or j == k) else 0]})
    shift = [(i - 2) % N for i in range(N)]
    mats = []
    for i in range(N):
        for j in range(N):
            if dims[i][j]:
                mats.append({"ij": [i, j], "rows": 1, "cols": 1, "data": [1]})
    doc = {
        "format": "twinheart/1",
        "p": 2,
        "indecomposables": names,
        "hom_dims": dims,
        "composition": comp,
        "identities": [[1] for _ in range(N)],
        "shift": {"perm": shift, "matrices": mats},
        "cone_procedure": {"name": "exact_completion", "params": {}},
        "cone_table": [],
    }
    with open(out, "w") as fh:
        fh.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
