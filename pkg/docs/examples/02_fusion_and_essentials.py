"""The fusion system of (C_4 x C_4) : S_3 on its wreathed Sylow 2-subgroup."""

from wreathbrauer import catalog
from wreathbrauer.fusion import (
    automizer, build_fusion, essential_subgroups, realized_essential_families, saturation_report,
)

mg = catalog.load("c4c4-s3")
W = mg.wreathed
F = build_fusion(mg.group, W.P)

rep = saturation_report(F)
print(f"{rep['classes']} F-classes, saturated: {rep['saturated']}")

# The base subgroup P0 picks up an automorphism of order 3 from S_3, so its
# F-automizer is not a 2-group and P0 is essential.
for Q in essential_subgroups(F):
    A = automizer(F, Q)
    print(f"essential subgroup of order {Q.order}: |Aut_F(Q)| = {A.order}")
print("realized essential families:", realized_essential_families(F, W))
