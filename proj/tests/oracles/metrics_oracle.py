#!/usr/bin/env python3
"""Threshold-sweep oracle for the evaluation goldens, in exact rationals.

Boxes are (x, y, w, h); None means absent. Prints each score as a fraction and
as a float; the C++ tests freeze these values.
"""
from fractions import Fraction as F
import math


def iou(a, b):
    ix = max(F(0), min(a[0] + a[2], b[0] + b[2]) - max(a[0], b[0]))
    iy = max(F(0), min(a[1] + a[3], b[1] + b[3]) - max(a[1], b[1]))
    inter = ix * iy
    return inter / (a[2] * a[3] + b[2] * b[3] - inter)


def center(b):
    return (b[0] + b[2] / 2, b[1] + b[3] / 2)


def sweep(pred, gt):
    succ_t = [F(k, 50) for k in range(51)]
    prec_t = [F(k) for k in range(51)]
    norm_t = [F(k, 200) for k in range(101)]
    succ = [0] * len(succ_t)
    prec = [0] * len(prec_t)
    norm = [0] * len(norm_t)
    for p, g in zip(pred, gt):
        if g is None:
            hit = p is None
            for arr in (succ, prec, norm):
                for i in range(len(arr)):
                    arr[i] += hit
            continue
        if p is None:
            continue
        o = iou(p, g)
        for i, t in enumerate(succ_t):
            succ[i] += (o > 0) if t == 0 else (o >= t)
        (pcx, pcy), (gcx, gcy) = center(p), center(g)
        # distances compared squared to stay exact
        d2 = (pcx - gcx) ** 2 + (pcy - gcy) ** 2
        n2 = ((pcx - gcx) / g[2]) ** 2 + ((pcy - gcy) / g[3]) ** 2
        for i, t in enumerate(prec_t):
            prec[i] += d2 <= t * t
        for i, t in enumerate(norm_t):
            norm[i] += n2 <= t * t
    n = len(gt)
    auc = F(sum(succ), n * len(succ_t))
    p20 = F(prec[20], n)
    npauc = F(sum(norm), n * len(norm_t))
    return auc, p20, npauc


def show(name, pred, gt):
    auc, p20, npauc = sweep(pred, gt)
    print(f"{name}: success_auc={auc} ({float(auc)!r}) precision_20={p20} ({float(p20)!r}) "
          f"norm_precision_auc={npauc} ({float(npauc)!r})")


G = (F(0), F(0), F(10), F(10))

print("unit squares offset by 0.5:", iou((F(0), F(0), F(1), F(1)), (F(1, 2), F(0), F(1), F(1))))

# IoUs 1, 1/3, 0; center errors 0, 5, 20
show("three_frame", [G, (F(5), F(0), F(10), F(10)), (F(20), F(0), F(10), F(10))], [G, G, G])

# absent conventions: hit, hallucinated box, missed target, plus two scored frames
show("absent_mix",
     [None, G, None, (F(2), F(1), F(10), F(10)), (F(0), F(0), F(20), F(10))],
     [None, None, G, G, G])
