"""Reproduce the worked examples: q-boost sharpness, bump counterexample, field verdicts."""

import argparse
import json
import math

import numpy as np

from dopplerspin import clifford_rep as cr
from dopplerspin import doppler as dp
from dopplerspin import field_analysis as fa
from dopplerspin import krein_core as kc
from dopplerspin import spin_lift as sl


def qboost_example(rapidities):
    q = len(rapidities)
    ms, s1, s2, _ = dp.qboost(q, q, rapidities)
    r = dp.dsf(ms, s1, s2)
    rep = cr.build_gamma_rep(ms.sig, [int(v) for v in np.diag(ms.g)])
    space = kc.KreinProductSpace.from_rep(rep)
    lr = sl.lift_norm(space, kc.fundamental_symmetry(space, s2), sl.lift(rep, r.polar), r.norm_lambda)
    return {"rapidities": list(rapidities), "dsf": r.dsf, "lift_norm": lr.lift_norm,
            "expected_lift_norm": math.exp(sum(rapidities) / 2),
            "lower_bound": lr.lower_bound, "upper_bound": lr.upper_bound}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--width", type=float, default=0.01)
    args = ap.parse_args()
    out = {"qboost": qboost_example([0.3, 0.7])}
    out["bump"] = [dict(zip(("y0", "eta_norm_sq", "n_norm_sq"), (y0, *fa.counterexample_norms(y0, args.width))))
                   | {"cosh_y0": math.cosh(y0)} for y0 in (0.0, 1.0, 2.0, 3.0)]
    demo = fa.divergent_field_demo(20.0)
    out["divergent_fit"] = demo["fits"]
    out["verdicts"] = {}
    for name, fn in fa.SWEEP_PRESETS.items():
        rep = fn()
        out["verdicts"][name] = {"verdict": rep.verdict, "sup_dsf": rep.sup_dsf}
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
