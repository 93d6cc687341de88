"""Build C_4 wr C_2, look at its distinguished subgroups and classify every subgroup class."""

from collections import Counter

from wreathbrauer.permgroup import subgroups_up_to_conjugacy
from wreathbrauer.wreathed import (
    build_wreathed, check_q8_subgroups, classify_subgroup, q8_subgroups,
)

W = build_wreathed(2)
print(f"|P| = {W.P.order}, |P0| = {W.P0.order}, |Z(P)| = {W.Z.order}")
print(f"a = {W.a}\nb = {W.b}\nt = {W.t}")

# Every quaternion subgroup is P-conjugate to the canonical one; the check
# returns the conjugating witnesses it verified.
print(f"Q_8 subgroups: {len(q8_subgroups(W))}")
print("Q_8 check:", check_q8_subgroups(W).to_dict()["passed"])

reps = subgroups_up_to_conjugacy(W.P)
tags = Counter(classify_subgroup(W, Q).label for Q in reps)
print(f"{len(reps)} subgroup classes:")
for label, count in sorted(tags.items()):
    print(f"  {label:<28} {count}")
