"""Genus bounds and fiberedness: searched SL(2, F_p) representations on the
trefoil (fibered) and on 5_2 (not fibered).

    python demos/fiberedness.py
"""

from twistalex.representations import rep_search_sl2_fp
from twistalex.table import load_bundled_table
from twistalex.torsion import alexander_torsion, fibered_check, genus_bound, twisted_torsion

table = {r.name: r for r in load_bundled_table()}

for name in ("3_1", "5_2", "8_20"):
    rec = table[name]
    P = rec.presentation()
    tau = alexander_torsion(P)
    print(f"{name}: genus {rec.genus}, fibered {rec.fibered}")
    print(f"  classical {tau.render()}  bound {genus_bound(tau)}")
    reps = rep_search_sl2_fp(P, 7, 6)
    for rep in reps[:3]:
        tw = twisted_torsion(P, rep)
        print(f"  F_7 rep: deg {tw.degree()} monic {tw.is_monic()}  bound {genus_bound(tw, 2)}")
    verdict = fibered_check(P, rec.genus, reps)
    print(f"  verdict: {verdict}" + (f" ({verdict.reasons[-1]})" if verdict.reasons else ""))
