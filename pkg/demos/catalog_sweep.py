"""Cross-check every bundled catalog entry and list the derived formulas."""
import time

from hiccup import verify_all

t0 = time.perf_counter()
reports = verify_all(5000)
print(f"verified {len(reports)} entries to n=5000 in {time.perf_counter() - t0:.1f}s\n")
for rep in reports:
    legs = " ".join(f"{k}={v.status}" for k, v in rep.legs.items())
    print(f"{rep.oeis_id}  {rep.params:<10} {legs}")
    for k in ("morphism", "beatty"):
        if k in rep.formulas:
            print(f"           {k}: {rep.formulas[k]}")
