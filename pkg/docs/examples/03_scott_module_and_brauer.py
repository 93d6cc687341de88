"""Decompose a permutation module over GF(2), extract its Scott summand and take Brauer quotients."""

from wreathbrauer import catalog
from wreathbrauer.modrep import brauer_model, decompose, is_local, perm_module, scott_module, vertex

mg = catalog.load("c4c4-s3")
G, W = mg.group, mg.wreathed

# k[G/P0] has dimension 6 and splits into three summands of dimension 2.
M = perm_module(G, W.P0)
print(f"dim k[G/P0] = {M.dim}, summands {sorted(S.dim for S in decompose(M))}")

# The Scott module Sc(G, P0) is the summand containing the trivial quotient.
S = scott_module(G, W.P0)
print(f"dim Sc(G, P0) = {S.dim}, End/J local: {is_local(S.endomorphism_algebra)}")
print(f"vertex order {vertex(S).order} (|P0| = {W.P0.order})")

# For a permutation module the Brauer quotient at Q is spanned by the Q-fixed cosets.
for Q in (W.Z, W.P0, W.P):
    B = brauer_model(M, Q)
    print(f"|Q| = {Q.order:>2}: dim k[G/P0](Q) = {B.dim}")
